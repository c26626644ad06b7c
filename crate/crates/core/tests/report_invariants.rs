//! Report-level invariants: the verified-isomorphism verdict appears exactly
//! for the D1/D2 pair with n > m > l, and group-isomorphic pairs always have
//! identical fingerprints.

use modiso_core::group::iso;
use modiso_core::report::{distinguish_pair_with, fingerprint_with, Outcome};
use modiso_core::{FieldSpec, Group, GroupParams, FAMILIES};

fn canonical_triples(max_log: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for n in 1..=max_log {
        for m in 1..=n {
            for l in 2..=max_log {
                if n + m + l <= max_log {
                    out.push((n, m, l));
                }
            }
        }
    }
    out
}

#[test]
fn verified_isomorphism_exactly_for_d1_d2_beyond_l() {
    let field = FieldSpec::gf2();
    for (n, m, l) in canonical_triples(9) {
        let families: Vec<_> = FAMILIES
            .iter()
            .copied()
            .filter(|f| f.canonical_at(n, m))
            .collect();
        for (i, &fa) in families.iter().enumerate() {
            for &fb in &families[i + 1..] {
                let pa = GroupParams::family(fa, n, m, l).unwrap();
                let pb = GroupParams::family(fb, n, m, l).unwrap();
                let v = distinguish_pair_with(pa, pb, field, 4096).unwrap();
                let is_verified =
                    matches!(v.outcome, Outcome::IsomorphicAlgebrasVerified { .. });
                let should_be = (fa.index(), fb.index()) == (1, 2) && n > m && m > l;
                assert_eq!(
                    is_verified, should_be,
                    "{fa} vs {fb} at ({n},{m},{l}): {:?}",
                    v.outcome
                );
                if let Outcome::IsomorphicAlgebrasVerified {
                    hom_rank,
                    order,
                    groups_nonisomorphic,
                } = v.outcome
                {
                    assert_eq!(hom_rank as u64, order);
                    assert_eq!(groups_nonisomorphic, Some(true));
                }
            }
        }
    }
}

#[test]
fn isomorphic_groups_have_identical_fingerprints() {
    let field = FieldSpec::gf2();
    for (n, m, l) in canonical_triples(8) {
        let families: Vec<_> = FAMILIES
            .iter()
            .copied()
            .filter(|f| f.canonical_at(n, m))
            .collect();
        for (i, &fa) in families.iter().enumerate() {
            for &fb in &families[i + 1..] {
                let ga = Group::new(GroupParams::family(fa, n, m, l).unwrap()).unwrap();
                let gb = Group::new(GroupParams::family(fb, n, m, l).unwrap()).unwrap();
                let same = iso::brute_force_groups(&ga, &gb, 4096).unwrap();
                if !same {
                    continue;
                }
                let ra = fingerprint_with(*ga.params(), field, false, 0).unwrap();
                let rb = fingerprint_with(*gb.params(), field, false, 0).unwrap();
                assert_eq!(ra.center, rb.center, "{fa} vs {fb} at ({n},{m},{l})");
                assert_eq!(ra.socle, rb.socle);
                assert_eq!(ra.abelianization, rb.abelianization);
                assert_eq!(
                    ra.kuelshammer_square_classes,
                    rb.kuelshammer_square_classes
                );
                assert_eq!(ra.quillen_rank, rb.quillen_rank);
                assert_eq!(ra.kernel_sizes, rb.kernel_sizes);
                assert_eq!(ra.coclass, rb.coclass);
                assert_eq!(
                    ra.centralizer_of_derived_exponent,
                    rb.centralizer_of_derived_exponent
                );
            }
        }
    }
}
