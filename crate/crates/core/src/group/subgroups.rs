//! Subgroup landmarks: center, derived and Frattini subgroups, socle, agemo
//! subgroups, centralizers, abelian invariants and the lower central series.

use std::collections::BTreeSet;

use super::{Group, GroupElement, GroupLike};
use crate::error::{Error, Result};

/// A subgroup stored as an explicit, sorted element-index set, with
/// generators and (for abelian subgroups) the cyclic-order multiset.
#[derive(Clone, Debug)]
pub struct SubgroupData {
    generators: Vec<u32>,
    elements: Vec<u32>, // sorted indices into the ambient group
    abelian_invariants: Option<Vec<u64>>,
}

impl SubgroupData {
    pub(crate) fn from_indices(group: &Group, mut elements: Vec<u32>) -> SubgroupData {
        elements.sort_unstable();
        elements.dedup();
        debug_assert!(elements.contains(&0));
        let generators = elements.clone();
        let abelian_invariants = abelian_invariants(group, &elements);
        SubgroupData {
            generators,
            elements,
            abelian_invariants,
        }
    }

    pub(crate) fn generated(group: &Group, generators: &[u32]) -> SubgroupData {
        let elements = closure(group, generators);
        let abelian_invariants = abelian_invariants(group, &elements);
        SubgroupData {
            generators: generators.to_vec(),
            elements,
            abelian_invariants,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element_indices(&self) -> &[u32] {
        &self.elements
    }

    pub fn generator_indices(&self) -> &[u32] {
        &self.generators
    }

    pub fn elements<'g>(&'g self, group: &'g Group) -> impl Iterator<Item = GroupElement> + 'g {
        self.elements.iter().map(|&i| group.elem(i))
    }

    pub fn contains(&self, group: &Group, g: GroupElement) -> bool {
        self.contains_idx(group.idx(g))
    }

    pub fn contains_idx(&self, idx: u32) -> bool {
        self.elements.binary_search(&idx).is_ok()
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian_invariants.is_some()
    }

    /// Cyclic orders of a direct-product decomposition, descending; `None`
    /// for non-abelian subgroups.
    pub fn abelian_invariants(&self) -> Option<&[u64]> {
        self.abelian_invariants.as_deref()
    }

    /// Exponent: the largest element order (a power of two).
    pub fn exponent(&self, group: &Group) -> u64 {
        self.elements
            .iter()
            .map(|&i| group.order_of_idx(i))
            .max()
            .unwrap_or(1)
    }

    /// Agemo subgroup generated by the 2^r-th powers; the subgroup must be
    /// abelian (then the power set is already closed under products).
    pub fn agemo(&self, group: &Group, r: u32) -> Result<SubgroupData> {
        if !self.is_abelian() {
            return Err(Error::NonAbelianAgemo);
        }
        let pow = 1u64 << r;
        let powers: Vec<u32> = self
            .elements
            .iter()
            .map(|&i| group.pow_idx(i, pow))
            .collect();
        Ok(SubgroupData::generated(group, &powers))
    }
}

/// Closure of a generator set under multiplication (finite 2-group, so
/// inverses come for free).
pub(crate) fn closure(group: &impl GroupLike, generators: &[u32]) -> Vec<u32> {
    let mut seen = vec![false; group.order()];
    seen[0] = true;
    let mut members = vec![0u32];
    let mut frontier = vec![0u32];
    let gens: Vec<u32> = {
        let mut g: BTreeSet<u32> = generators.iter().copied().collect();
        g.remove(&0);
        g.into_iter().collect()
    };
    while let Some(e) = frontier.pop() {
        for &g in &gens {
            for prod in [group.mul_idx(e, g), group.mul_idx(g, e)] {
                if !seen[prod as usize] {
                    seen[prod as usize] = true;
                    members.push(prod);
                    frontier.push(prod);
                }
            }
        }
    }
    members.sort_unstable();
    members
}

fn is_abelian_set(group: &Group, elements: &[u32]) -> bool {
    elements.iter().all(|&a| {
        elements
            .iter()
            .all(|&b| group.mul_idx(a, b) == group.mul_idx(b, a))
    })
}

/// Invariant multiset by repeated maximal-order peeling: in a finite abelian
/// 2-group an element of maximal order generates a direct factor, and the
/// quotient carries the remaining invariants.
fn abelian_invariants(group: &Group, elements: &[u32]) -> Option<Vec<u64>> {
    if !is_abelian_set(group, elements) {
        return None;
    }
    let mut invariants = Vec::new();
    // Work with cosets over the ambient group the whole way down: maintain a
    // list of current coset representatives and the subgroup N being factored
    // out (as a sorted set of ambient indices).
    let mut reps: Vec<u32> = elements.to_vec();
    let mut kernel: Vec<u32> = vec![0];
    while reps.len() > 1 {
        // Order of a coset gN in G/N: least 2^e with g^(2^e) in N.
        let coset_order = |g: u32| -> u64 {
            let mut t = g;
            let mut ord = 1u64;
            while kernel.binary_search(&t).is_err() {
                t = group.mul_idx(t, t);
                ord *= 2;
            }
            ord
        };
        let (&best, best_ord) = reps
            .iter()
            .map(|g| (g, coset_order(*g)))
            .max_by_key(|&(g, ord)| (ord, std::cmp::Reverse(*g)))
            .expect("non-trivial quotient");
        invariants.push(best_ord);
        // Enlarge the kernel by <best> and keep one representative per coset.
        let mut new_kernel: BTreeSet<u32> = BTreeSet::new();
        for &k in &kernel {
            let mut t = k;
            loop {
                new_kernel.insert(t);
                t = group.mul_idx(t, best);
                if new_kernel.contains(&t) {
                    break;
                }
            }
        }
        kernel = new_kernel.into_iter().collect();
        let mut seen: BTreeSet<u32> = BTreeSet::new();
        let mut new_reps = Vec::new();
        for &g in &reps {
            // Canonical coset tag: least element of gN.
            let tag = kernel
                .iter()
                .map(|&k| group.mul_idx(g, k))
                .min()
                .expect("kernel non-empty");
            if seen.insert(tag) {
                new_reps.push(tag);
            }
        }
        reps = new_reps;
    }
    Some(invariants)
}

impl Group {
    /// Center: elements commuting with both generators.
    pub fn center(&self) -> &SubgroupData {
        self.center_cache.get_or_init(|| {
            let (xi, yi) = (self.idx(self.x()), self.idx(self.y()));
            let members: Vec<u32> = (0..self.group_order() as u32)
                .filter(|&g| {
                    self.mul_idx(g, xi) == self.mul_idx(xi, g)
                        && self.mul_idx(g, yi) == self.mul_idx(yi, g)
                })
                .collect();
            SubgroupData::from_indices(self, members)
        })
    }

    /// Derived subgroup: normal closure of [y, x].
    pub fn derived(&self) -> &SubgroupData {
        self.derived_cache.get_or_init(|| {
            let (xi, yi) = (self.idx(self.x()), self.idx(self.y()));
            let mut members = closure(self, &[self.comm_idx(yi, xi)]);
            // Close under conjugation by the generators.
            loop {
                let mut new = Vec::new();
                for &g in &members {
                    for c in [self.conj_idx(g, xi), self.conj_idx(g, yi)] {
                        if members.binary_search(&c).is_err() {
                            new.push(c);
                        }
                    }
                }
                if new.is_empty() {
                    break;
                }
                members.extend(new);
                members = closure(self, &members);
            }
            SubgroupData {
                generators: vec![self.comm_idx(yi, xi)],
                elements: members.clone(),
                abelian_invariants: abelian_invariants(self, &members),
            }
        })
    }

    /// Frattini subgroup: for a 2-group, generated by squares and commutators.
    pub fn frattini(&self) -> &SubgroupData {
        self.frattini_cache.get_or_init(|| {
            let mut gens: Vec<u32> = (0..self.group_order() as u32)
                .map(|g| self.mul_idx(g, g))
                .collect();
            gens.extend_from_slice(self.derived().element_indices());
            SubgroupData::generated(self, &gens)
        })
    }

    /// Socle: subgroup generated by the central involutions.
    pub fn socle(&self) -> &SubgroupData {
        self.socle_cache.get_or_init(|| {
            let gens: Vec<u32> = self
                .center()
                .element_indices()
                .iter()
                .copied()
                .filter(|&g| g != 0 && self.mul_idx(g, g) == 0)
                .collect();
            SubgroupData::generated(self, &gens)
        })
    }

    /// The non-trivial central involutions (socle minus identity).
    pub fn central_involutions(&self) -> Vec<GroupElement> {
        self.socle()
            .element_indices()
            .iter()
            .filter(|&&g| g != 0)
            .map(|&g| self.elem(g))
            .collect()
    }

    /// Nilpotency class via the lower central series.
    pub fn nilpotency_class(&self) -> u32 {
        let (xi, yi) = (self.idx(self.x()), self.idx(self.y()));
        let mut current: Vec<u32> = (0..self.group_order() as u32).collect();
        let mut class = 0u32;
        loop {
            if current.len() == 1 {
                return class;
            }
            class += 1;
            let mut gens = Vec::new();
            for &g in &current {
                gens.push(self.comm_idx(g, xi));
                gens.push(self.comm_idx(g, yi));
            }
            let next = closure(self, &gens);
            debug_assert!(next.len() < current.len(), "series must descend");
            current = next;
        }
    }

    /// Coclass log2|G| - class.
    pub fn coclass(&self) -> u32 {
        (self.params().n + self.params().m + self.params().l) - self.nilpotency_class()
    }

    /// The landmark subgroups by name: center, derived, frattini, socle.
    /// Agemo subgroups are reached through [`SubgroupData::agemo`] on any
    /// abelian entry (typically the center).
    pub fn named_subgroups(&self) -> std::collections::BTreeMap<&'static str, &SubgroupData> {
        std::collections::BTreeMap::from([
            ("center", self.center()),
            ("derived", self.derived()),
            ("frattini", self.frattini()),
            ("socle", self.socle()),
        ])
    }

    /// Abelianization G/D(G) invariants.
    pub fn abelianization(&self) -> Vec<u64> {
        let q = super::concrete::ConcreteGroup::quotient(self, self.derived().element_indices())
            .expect("derived subgroup is normal");
        q.abelian_invariants()
            .expect("abelianization is abelian")
    }
}

#[cfg(test)]
mod tests {
    use super::super::{Family, Group, GroupParams};
    use super::*;

    fn d(family: Family, n: u32, m: u32, l: u32) -> Group {
        Group::new(GroupParams::family(family, n, m, l).unwrap()).unwrap()
    }

    #[test]
    fn center_types_follow_family() {
        // D1(4,3,2): C8 x C4 x C2; D5(4,3,2): C16 x C4.
        let g = d(Family::D1, 4, 3, 2);
        assert_eq!(g.center().abelian_invariants().unwrap(), &[8, 4, 2]);
        let g = d(Family::D5, 4, 3, 2);
        assert_eq!(g.center().abelian_invariants().unwrap(), &[16, 4]);
    }

    #[test]
    fn center_generated_by_squares_and_w() {
        for (f, n, m, l) in [
            (Family::D1, 3, 2, 2),
            (Family::D3, 3, 2, 2),
            (Family::D6, 2, 2, 3),
        ] {
            let g = d(f, n, m, l);
            let x2 = g.idx(g.multiply(g.x(), g.x()));
            let y2 = g.idx(g.multiply(g.y(), g.y()));
            let w = g.idx(g.w());
            let gen = SubgroupData::generated(&g, &[x2, y2, w]);
            assert_eq!(gen.element_indices(), g.center().element_indices());
        }
    }

    #[test]
    fn socle_of_d3() {
        let g = d(Family::D3, 3, 1, 2);
        assert_eq!(g.socle().abelian_invariants().unwrap(), &[2, 2]);
    }

    #[test]
    fn derived_is_generated_by_z() {
        let g = d(Family::D4, 3, 2, 2);
        let zc = SubgroupData::generated(&g, &[g.idx(g.z())]);
        assert_eq!(zc.element_indices(), g.derived().element_indices());
        // D(G) meets Z(G) in <w>.
        let meet: Vec<u32> = g
            .derived()
            .element_indices()
            .iter()
            .filter(|i| g.center().contains_idx(**i))
            .copied()
            .collect();
        assert_eq!(meet, vec![0, g.idx(g.w())]);
    }

    #[test]
    fn frattini_index_four() {
        for f in [Family::D1, Family::D2, Family::D5] {
            let g = d(f, 3, 2, 2);
            assert_eq!(g.frattini().order() * 4, g.group_order() as usize);
            let x2 = g.idx(g.multiply(g.x(), g.x()));
            let y2 = g.idx(g.multiply(g.y(), g.y()));
            let explicit = SubgroupData::generated(&g, &[x2, y2, g.idx(g.z())]);
            assert_eq!(explicit.element_indices(), g.frattini().element_indices());
        }
    }

    #[test]
    fn coclass_matches_parameters() {
        for (f, n, m, l) in [
            (Family::D1, 2, 2, 2),
            (Family::D2, 3, 2, 2),
            (Family::D5, 2, 2, 3),
            (Family::D6, 1, 1, 3),
        ] {
            let g = d(f, n, m, l);
            assert_eq!(g.nilpotency_class(), l + 1);
            assert_eq!(g.coclass(), n + m - 1);
        }
    }

    #[test]
    fn abelianization_type() {
        let g = d(Family::D6, 3, 2, 2);
        assert_eq!(g.abelianization(), vec![8, 4]);
    }

    #[test]
    fn exponent_and_centralizer_of_derived() {
        let g = d(Family::D1, 4, 3, 2);
        let dset: Vec<_> = g.derived().elements(&g).collect();
        let c = g.centralizer(&dset);
        assert_eq!(c.exponent(&g), 16);
        let h = d(Family::D2, 4, 3, 2);
        let dset: Vec<_> = h.derived().elements(&h).collect();
        let c = h.centralizer(&dset);
        assert_eq!(c.exponent(&h), 8);
        assert!(c.is_abelian());
        assert_eq!(c.order() * 2, h.group_order() as usize);
    }

    #[test]
    fn agemo_on_center() {
        let g = d(Family::D5, 3, 2, 2);
        // x^8 = w, so fourth powers of the center hit <w>.
        let a = g.center().agemo(&g, 2).unwrap();
        assert_eq!(a.element_indices(), &[0, g.idx(g.w())]);
        let a3 = g.center().agemo(&g, 3).unwrap();
        assert_eq!(a3.order(), 1);
    }

    #[test]
    fn agemo_rejects_nonabelian() {
        let g = d(Family::D1, 2, 2, 2);
        let whole = SubgroupData::from_indices(&g, (0..64).collect());
        assert!(whole.agemo(&g, 1).is_err());
    }
}
