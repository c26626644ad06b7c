//! Brute-force isomorphism testing against presentations, quotient
//! recognition, and the maximal-quotient tables.
//!
//! A pair (g, h) of a group Q satisfying the defining relations of a
//! presentation P extends to a homomorphism from the P-presented group onto
//! <g, h> (von Dyck); when <g, h> = Q and the orders agree, it is an
//! isomorphism. Two-generated targets make the search over ordered pairs
//! complete.

use std::collections::{BTreeMap, BTreeSet};

use super::concrete::ConcreteGroup;
use super::params::{Family, Mode, Theta, FAMILIES};
use super::{Group, GroupLike};
use crate::error::{Error, Result};

/// Default search guard for brute-force isomorphism and recognition.
pub const DEFAULT_MAX_ORDER: u64 = 4096;
pub const DEFAULT_RECOGNIZE_ORDER: u64 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaxClassKind {
    Dihedral,
    Semidihedral,
    Quaternion,
}

impl std::fmt::Display for MaxClassKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MaxClassKind::Dihedral => write!(f, "D"),
            MaxClassKind::Semidihedral => write!(f, "SD"),
            MaxClassKind::Quaternion => write!(f, "Q"),
        }
    }
}

/// A finite presentation on two generators whose relations can be evaluated
/// inside any group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Presentation {
    /// x^(2^n) = z^(r 2^(l-1)), y^(2^m) = x^(s 2^m) z^(t 2^(l-1)),
    /// z^(2^l) = 1, [y,x] = z, [z,x] = [z,y] = z^-2.
    Dice {
        family: Family,
        n: u32,
        m: u32,
        l: u32,
    },
    /// Same relations for a raw theta.
    RawTheta {
        theta: Theta,
        n: u32,
        m: u32,
        l: u32,
    },
    /// Standard presentations of the maximal-class 2-groups of order
    /// 2^log2_order.
    MaximalClass {
        kind: MaxClassKind,
        log2_order: u32,
    },
}

impl Presentation {
    pub fn order(&self) -> u64 {
        match self {
            Presentation::Dice { n, m, l, .. } | Presentation::RawTheta { n, m, l, .. } => {
                1u64 << (n + m + l)
            }
            Presentation::MaximalClass { log2_order, .. } => 1u64 << log2_order,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Presentation::Dice { family, n, m, l } => format!("{family}({n},{m},{l})"),
            Presentation::RawTheta { theta, n, m, l } => format!(
                "G[{},{},{}]({n},{m},{l})",
                theta.r, theta.s, theta.t
            ),
            Presentation::MaximalClass { kind, log2_order } => {
                format!("{kind}{}", 1u64 << log2_order)
            }
        }
    }

    /// Do (g, h) satisfy all defining relations?
    pub fn holds(&self, gr: &impl GroupLike, g: u32, h: u32) -> bool {
        match *self {
            Presentation::Dice { family, n, m, l } => {
                dice_relations(gr, g, h, family.theta(), n, m, l)
            }
            Presentation::RawTheta { theta, n, m, l } => dice_relations(gr, g, h, theta, n, m, l),
            Presentation::MaximalClass { kind, log2_order } => {
                let k = log2_order;
                debug_assert!(k >= 3);
                let b_sq = gr.pow_idx(h, 1 << (k - 1));
                if b_sq != 0 {
                    return false;
                }
                let a_sq = gr.mul_idx(g, g);
                let a_sq_ok = match kind {
                    MaxClassKind::Dihedral | MaxClassKind::Semidihedral => a_sq == 0,
                    MaxClassKind::Quaternion => a_sq == gr.pow_idx(h, 1 << (k - 2)),
                };
                if !a_sq_ok {
                    return false;
                }
                let conj = gr.conj_idx(h, g);
                match kind {
                    MaxClassKind::Dihedral | MaxClassKind::Quaternion => conj == gr.inv_idx(h),
                    MaxClassKind::Semidihedral => conj == gr.pow_idx(h, (1 << (k - 2)) - 1),
                }
            }
        }
    }
}

fn dice_relations(gr: &impl GroupLike, g: u32, h: u32, theta: Theta, n: u32, m: u32, l: u32) -> bool {
    let zc = gr.comm_idx(h, g);
    if gr.pow_idx(zc, 1 << l) != 0 {
        return false;
    }
    let half = 1u64 << (l - 1);
    if gr.pow_idx(g, 1 << n) != gr.pow_idx(zc, theta.r as u64 * half) {
        return false;
    }
    let rhs = gr.mul_idx(
        gr.pow_idx(g, theta.s << m),
        gr.pow_idx(zc, theta.t as u64 * half),
    );
    if gr.pow_idx(h, 1 << m) != rhs {
        return false;
    }
    let zi = gr.inv_idx(zc);
    let z_minus2 = gr.mul_idx(zi, zi);
    gr.comm_idx(zc, g) == z_minus2 && gr.comm_idx(zc, h) == z_minus2
}

/// Search ordered pairs lexicographically for a generating pair satisfying
/// the presentation; `generates` must implement the two-generation test.
fn find_pair(
    gr: &impl GroupLike,
    pres: &Presentation,
    generates: impl Fn(u32, u32) -> bool,
) -> Option<(u32, u32)> {
    let n = gr.order() as u32;
    for g in 0..n {
        for h in 0..n {
            if generates(g, h) && pres.holds(gr, g, h) {
                return Some((g, h));
            }
        }
    }
    None
}

/// Is the parametrized group `a` isomorphic to the group presented by `b`?
/// Complete for the two-generated presentations used here.
pub fn brute_force_isomorphic(a: &Group, b: &Presentation, max_order: u64) -> Result<bool> {
    if a.group_order() != b.order() {
        return Err(Error::OrderMismatch(format!(
            "|A| = {} but |B| = {}",
            a.group_order(),
            b.order()
        )));
    }
    if a.group_order() > max_order {
        return Err(Error::BudgetExceeded(format!(
            "order {} exceeds the brute-force bound {max_order}",
            a.group_order()
        )));
    }
    Ok(find_pair(a, b, |g, h| a.generates(g, h)).is_some())
}

/// Convenience: both sides as parametrized groups.
pub fn brute_force_groups(a: &Group, b: &Group, max_order: u64) -> Result<bool> {
    let p = b.params();
    let pres = Presentation::RawTheta {
        theta: p.theta,
        n: p.n,
        m: p.m,
        l: p.l,
    };
    brute_force_isomorphic(a, &pres, max_order)
}

/// Presentation match for a concrete (coset-table) group; generation is
/// checked by closure, relations first. Used for small groups such as central
/// quotients.
pub fn matches_presentation(q: &ConcreteGroup, pres: &Presentation) -> bool {
    if q.order() as u64 != pres.order() {
        return false;
    }
    let n = q.order() as u32;
    for g in 0..n {
        for h in 0..n {
            if pres.holds(q, g, h)
                && super::subgroups::closure(q, &[g, h]).len() == q.order()
            {
                return true;
            }
        }
    }
    false
}

/// Candidates that match a quotient: for each presentation with the right
/// order, search for a generating pair satisfying its relations. Returns the
/// indices of matching candidates.
pub fn recognize(
    q: &mut ConcreteGroup,
    candidates: &[Presentation],
    max_order: u64,
) -> Result<Vec<usize>> {
    if q.order() as u64 > max_order {
        return Err(Error::BudgetExceeded(format!(
            "quotient order {} exceeds the recognition bound {max_order}",
            q.order()
        )));
    }
    for c in candidates {
        if c.order() != q.order() as u64 {
            return Err(Error::OrderMismatch(format!(
                "candidate {} has order {}, quotient has {}",
                c.label(),
                c.order(),
                q.order()
            )));
        }
    }
    if !q.two_generated() {
        return Ok(Vec::new());
    }
    let coset = q.frattini_coset_map().to_vec();
    let generates =
        |g: u32, h: u32| -> bool {
            let (cg, ch) = (coset[g as usize], coset[h as usize]);
            cg != 0 && ch != 0 && cg != ch
        };
    let mut out = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        if find_pair(q, c, generates).is_some() {
            out.push(i);
        }
    }
    Ok(out)
}

/// The family presentations admissible at a parameter triple: all six while
/// n > m (pairwise non-isomorphic); only D1, D5, D6 at n = m with l >= 2
/// (homocyclic abelianization collapses D2 onto D1 and D3, D4 onto D5);
/// all six at l = 1 where labels are undefined and every matching
/// presentation is reported.
pub fn candidate_families(n: u32, m: u32, l: u32) -> Vec<Family> {
    if n > m || l == 1 {
        FAMILIES.to_vec()
    } else {
        vec![Family::D1, Family::D5, Family::D6]
    }
}

/// Rows of the maximal-quotient tables: for every central involution w, the
/// quotient G/<w> is recognized against the admissible families at the three
/// parameter triples (n-1, m, l), (n, m-1, l), (n, m, l-1).
pub fn maximal_quotient_table(
    g: &Group,
    max_order: u64,
) -> Result<BTreeMap<(u32, u32, u32), BTreeSet<Family>>> {
    Ok(maximal_quotient_matches(g, max_order)?
        .into_iter()
        .fold(BTreeMap::new(), |mut acc, per_quotient| {
            for (triple, fam) in per_quotient {
                acc.entry(triple).or_insert_with(BTreeSet::new).insert(fam);
            }
            acc
        }))
}

/// Per-quotient recognition results: one entry per central involution, each
/// listing every (triple, family) whose presentation matches.
pub fn maximal_quotient_matches(
    g: &Group,
    max_order: u64,
) -> Result<Vec<Vec<((u32, u32, u32), Family)>>> {
    let p = *g.params();
    if p.n < 2 {
        return Err(Error::InvalidParams(
            "maximal-quotient tables need n >= 2".into(),
        ));
    }
    let mut triples = Vec::new();
    if p.n > p.m {
        triples.push((p.n - 1, p.m, p.l));
    }
    if p.m >= 2 {
        triples.push((p.n, p.m - 1, p.l));
    }
    if p.l >= 2 {
        triples.push((p.n, p.m, p.l - 1));
    }
    let mut out = Vec::new();
    for w in g.central_involutions() {
        let mut q = ConcreteGroup::quotient_by(g, w)?;
        let mut matches = Vec::new();
        for &(n, m, l) in &triples {
            let fams = candidate_families(n, m, l);
            let pres: Vec<Presentation> = fams
                .iter()
                .map(|&family| Presentation::Dice { family, n, m, l })
                .collect();
            for i in recognize(&mut q, &pres, max_order)? {
                matches.push(((n, m, l), fams[i]));
            }
        }
        out.push(matches);
    }
    Ok(out)
}

/// Is the D?(n', m', l') parameter triple admissible for a group at all
/// (used when interpreting recognize output)?
pub fn triple_mode(l: u32) -> Mode {
    if l >= 2 {
        Mode::Standard
    } else {
        Mode::Degenerate
    }
}

#[cfg(test)]
mod tests {
    use super::super::params::GroupParams;
    use super::*;

    fn d(family: Family, n: u32, m: u32, l: u32) -> Group {
        Group::new(GroupParams::family(family, n, m, l).unwrap()).unwrap()
    }

    fn pres(family: Family, n: u32, m: u32, l: u32) -> Presentation {
        Presentation::Dice { family, n, m, l }
    }

    #[test]
    fn trichotomy_at_222() {
        let g1 = d(Family::D1, 2, 2, 2);
        assert!(brute_force_isomorphic(&g1, &pres(Family::D2, 2, 2, 2), 4096).unwrap());
        let g3 = d(Family::D3, 2, 2, 2);
        assert!(brute_force_isomorphic(&g3, &pres(Family::D4, 2, 2, 2), 4096).unwrap());
        assert!(brute_force_isomorphic(&g3, &pres(Family::D5, 2, 2, 2), 4096).unwrap());
        let g5 = d(Family::D5, 2, 2, 2);
        assert!(!brute_force_isomorphic(&g5, &pres(Family::D6, 2, 2, 2), 4096).unwrap());
        assert!(!brute_force_isomorphic(&g1, &pres(Family::D5, 2, 2, 2), 4096).unwrap());
        assert!(!brute_force_isomorphic(&g1, &pres(Family::D6, 2, 2, 2), 4096).unwrap());
    }

    #[test]
    fn maximal_class_isomorphisms() {
        let q16 = Presentation::MaximalClass {
            kind: MaxClassKind::Quaternion,
            log2_order: 4,
        };
        assert!(brute_force_isomorphic(&d(Family::D6, 1, 1, 2), &q16, 4096).unwrap());
        let d16 = Presentation::MaximalClass {
            kind: MaxClassKind::Dihedral,
            log2_order: 4,
        };
        assert!(brute_force_isomorphic(&d(Family::D1, 1, 1, 2), &d16, 4096).unwrap());
        let sd16 = Presentation::MaximalClass {
            kind: MaxClassKind::Semidihedral,
            log2_order: 4,
        };
        assert!(brute_force_isomorphic(&d(Family::D5, 1, 1, 2), &sd16, 4096).unwrap());
        assert!(!brute_force_isomorphic(&d(Family::D1, 1, 1, 2), &q16, 4096).unwrap());
    }

    #[test]
    fn corner_cases_degenerate() {
        for n in [2u32, 3] {
            let p = GroupParams::family_in_mode(Family::D1, n, 1, 1, Mode::Degenerate).unwrap();
            let g = Group::new(p).unwrap();
            let d2 = Presentation::Dice {
                family: Family::D2,
                n,
                m: 1,
                l: 1,
            };
            assert!(!brute_force_isomorphic(&g, &d2, 4096).unwrap());
        }
    }

    #[test]
    fn raw_theta_reduces_to_canonical() {
        // G_(0,2,0)(4,2,2) is isomorphic to D1(4,2,2).
        let raw = Group::new(
            GroupParams::from_theta(Theta { r: 0, s: 2, t: 0 }, 4, 2, 2).unwrap(),
        )
        .unwrap();
        assert!(brute_force_isomorphic(&raw, &pres(Family::D1, 4, 2, 2), 4096).unwrap());
        assert!(!brute_force_isomorphic(&raw, &pres(Family::D2, 4, 2, 2), 4096).unwrap());
    }

    #[test]
    fn order_mismatch_and_budget() {
        let g = d(Family::D1, 2, 2, 2);
        assert!(brute_force_isomorphic(&g, &pres(Family::D1, 3, 2, 2), 4096).is_err());
        assert!(brute_force_isomorphic(&g, &pres(Family::D1, 2, 2, 2), 32).is_err());
    }

    #[test]
    fn quotient_table_d2_432() {
        let g = d(Family::D2, 4, 3, 2);
        let table = maximal_quotient_table(&g, 1024).unwrap();
        let get = |t: (u32, u32, u32)| -> Vec<Family> {
            table.get(&t).map(|s| s.iter().copied().collect()).unwrap_or_default()
        };
        assert_eq!(get((3, 3, 2)), vec![Family::D1, Family::D6]);
        assert_eq!(get((4, 2, 2)), vec![Family::D2, Family::D4]);
        // Degenerate column: labels at l = 1 may legitimately coincide, but
        // D2 must be among the matches.
        assert!(get((4, 3, 1)).contains(&Family::D2));
    }

    #[test]
    fn quotient_table_d5_312() {
        let g = d(Family::D5, 3, 1, 2);
        let table = maximal_quotient_table(&g, 1024).unwrap();
        // Only the (n, m, l-1) triple appears: the socle is <w>.
        assert_eq!(table.len(), 1);
        assert!(table[&(3, 1, 1)].contains(&Family::D1));
        assert!(!table[&(3, 1, 1)].contains(&Family::D2));
    }
}
