//! Coset-table groups: carriers for quotients G/N with opaque element ids.

use super::{Group, GroupElement, GroupLike};
use crate::error::{Error, Result};

/// A finite group given by its multiplication table. Element 0 is the
/// identity.
pub struct ConcreteGroup {
    order: usize,
    table: Vec<u16>, // row-major order x order
    frattini_coset: Option<Vec<u8>>, // 0 = Frattini; lazily None until asked
}

impl ConcreteGroup {
    /// Quotient of `group` by the normal subgroup with the given sorted
    /// element indices.
    pub fn quotient(group: &Group, normal: &[u32]) -> Result<ConcreteGroup> {
        let n = group.group_order() as usize;
        debug_assert!(normal.windows(2).all(|w| w[0] < w[1]));
        // Normality check: closed under conjugation by the generators.
        let (xi, yi) = (group.idx(group.x()), group.idx(group.y()));
        for &g in normal {
            if normal.binary_search(&group.conj_idx(g, xi)).is_err()
                || normal.binary_search(&group.conj_idx(g, yi)).is_err()
            {
                return Err(Error::InvalidParams(
                    "subgroup is not normal; no quotient".into(),
                ));
            }
        }
        let q_order = n / normal.len();
        if q_order > u16::MAX as usize {
            return Err(Error::BudgetExceeded(format!(
                "quotient order {q_order} too large for a coset table"
            )));
        }
        // Tag every element with its coset id; representatives in index order,
        // identity coset first.
        let mut coset_of = vec![u16::MAX; n];
        let mut reps: Vec<u32> = Vec::with_capacity(q_order);
        for g in 0..n as u32 {
            if coset_of[g as usize] != u16::MAX {
                continue;
            }
            let id = reps.len() as u16;
            reps.push(g);
            for &k in normal {
                coset_of[group.mul_idx(g, k) as usize] = id;
            }
        }
        debug_assert_eq!(reps.len(), q_order);
        debug_assert_eq!(reps[0], 0);
        let mut table = vec![0u16; q_order * q_order];
        for (i, &gi) in reps.iter().enumerate() {
            for (j, &gj) in reps.iter().enumerate() {
                table[i * q_order + j] = coset_of[group.mul_idx(gi, gj) as usize];
            }
        }
        Ok(ConcreteGroup {
            order: q_order,
            table,
            frattini_coset: None,
        })
    }

    /// Quotient by the cyclic subgroup generated by a central involution.
    pub fn quotient_by(group: &Group, w: GroupElement) -> Result<ConcreteGroup> {
        let wi = group.idx(w);
        if wi == 0 || !group.socle().contains_idx(wi) {
            return Err(Error::NotCentralInvolution);
        }
        let mut normal = vec![0, wi];
        normal.sort_unstable();
        Self::quotient(group, &normal)
    }

    pub fn abelian_invariants(&self) -> Option<Vec<u64>> {
        // Peeling as for subgroups, but over the coset table.
        for a in 0..self.order as u32 {
            for b in 0..self.order as u32 {
                if self.mul_idx(a, b) != self.mul_idx(b, a) {
                    return None;
                }
            }
        }
        let mut invariants = Vec::new();
        let mut reps: Vec<u32> = (0..self.order as u32).collect();
        let mut kernel: Vec<u32> = vec![0];
        while reps.len() > 1 {
            let coset_order = |g: u32| -> u64 {
                let mut t = g;
                let mut ord = 1u64;
                while kernel.binary_search(&t).is_err() {
                    t = self.mul_idx(t, t);
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
            let mut new_kernel = std::collections::BTreeSet::new();
            for &k in &kernel {
                let mut t = k;
                loop {
                    new_kernel.insert(t);
                    t = self.mul_idx(t, best);
                    if new_kernel.contains(&t) {
                        break;
                    }
                }
            }
            kernel = new_kernel.into_iter().collect();
            let mut seen = std::collections::BTreeSet::new();
            let mut new_reps = Vec::new();
            for &g in &reps {
                let tag = kernel
                    .iter()
                    .map(|&k| self.mul_idx(g, k))
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

    /// Frattini cosets (squares and commutators) and an O(1) two-generation
    /// test via the Burnside basis theorem. Only meaningful for 2-generated
    /// groups, where the index is 4.
    pub fn frattini_coset_map(&mut self) -> &[u8] {
        if self.frattini_coset.is_none() {
            let mut gens: Vec<u32> = (0..self.order as u32)
                .map(|g| self.mul_idx(g, g))
                .collect();
            for a in 0..self.order as u32 {
                for b in 0..self.order as u32 {
                    gens.push(self.comm_idx(a, b));
                }
            }
            let frat = super::subgroups::closure(self, &gens);
            let mut coset = vec![u8::MAX; self.order];
            let mut next = 0u8;
            for g in 0..self.order as u32 {
                if coset[g as usize] != u8::MAX {
                    continue;
                }
                let id = next;
                next += 1;
                for &k in &frat {
                    coset[self.mul_idx(g, k) as usize] = id;
                }
            }
            self.frattini_coset = Some(coset);
        }
        self.frattini_coset.as_deref().expect("just initialized")
    }

    pub fn two_generated(&mut self) -> bool {
        let map = self.frattini_coset_map();
        map.iter().max().copied() == Some(3)
    }
}

impl GroupLike for ConcreteGroup {
    fn order(&self) -> usize {
        self.order
    }

    fn mul_idx(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize] as u32
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
    fn quotient_by_w_halves_order() {
        let g = d(Family::D1, 3, 1, 2);
        let q = ConcreteGroup::quotient_by(&g, g.w()).unwrap();
        assert_eq!(q.order(), 32);
    }

    #[test]
    fn quotient_rejects_noncentral() {
        let g = d(Family::D1, 3, 1, 2);
        // y is an involution but not central at m = 1.
        assert!(ConcreteGroup::quotient_by(&g, g.y()).is_err());
        assert!(ConcreteGroup::quotient_by(&g, GroupElement::IDENTITY).is_err());
    }

    #[test]
    fn central_quotient_invariant_free() {
        let g = d(Family::D2, 3, 2, 2);
        let q = ConcreteGroup::quotient(&g, g.center().element_indices()).unwrap();
        // Dihedral of order 8: non-abelian.
        assert_eq!(q.order(), 8);
        assert!(q.abelian_invariants().is_none());
    }
}
