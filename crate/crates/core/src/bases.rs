//! The crossed generators inside F·D2 realizing F·D1 = F·D2, and the
//! executable instances of the group-base congruences.
//!
//! Inside the group algebra of D2(n, m, l) = <a, b, c>, the units
//! x = a, y = b + a + 1, z = [y, x] satisfy the defining relations of
//! D1(n, m, l) whenever n >= m > l >= 2. Extending a |-> x, b |-> y to the
//! monomial basis gives a linear map whose full rank certifies the algebra
//! isomorphism; for n > m the groups themselves are non-isomorphic.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Algebra, AlgebraElement};
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::group::{Family, Group, GroupParams};
use crate::linalg::{Echelon, GfVec};

/// The crossed generators in F·D2(n, m, l) and the construction data.
pub struct CrossedBase {
    algebra: Arc<Algebra>,
    n: u32,
    m: u32,
    l: u32,
    xhat: AlgebraElement,
    yhat: AlgebraElement,
    zhat: AlgebraElement,
}

/// Outcome of checking the six D1 relations on the crossed generators.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RelationChecks {
    pub x_power: bool,
    pub y_power: bool,
    pub z_power: bool,
    pub comm_yx_is_z: bool,
    pub comm_zx_inverts_square: bool,
    pub comm_zy_inverts_square: bool,
}

impl RelationChecks {
    pub fn all(&self) -> bool {
        self.x_power
            && self.y_power
            && self.z_power
            && self.comm_yx_is_z
            && self.comm_zx_inverts_square
            && self.comm_zy_inverts_square
    }

    pub fn as_list(&self) -> [(&'static str, bool); 6] {
        [
            ("x^(2^n) = 1", self.x_power),
            ("y^(2^m) = 1", self.y_power),
            ("z^(2^l) = 1", self.z_power),
            ("[y, x] = z", self.comm_yx_is_z),
            ("[z, x] = z^-2", self.comm_zx_inverts_square),
            ("[z, y] = z^-2", self.comm_zy_inverts_square),
        ]
    }
}

/// Build the crossed base x = a, y = b + a + 1, z = [y, x] in F·D2(n, m, l).
/// The construction needs valid D2 parameters (n > m); the isomorphism claim
/// additionally needs m > l >= 2, which `verify_relations` checks.
pub fn crossed_base(n: u32, m: u32, l: u32, field: FieldSpec) -> Result<CrossedBase> {
    let params = GroupParams::family(Family::D2, n, m, l)?;
    let group = Arc::new(Group::new(params)?);
    let algebra = Algebra::new(group, field);
    let g = algebra.group();
    let a = algebra.embed(g.x());
    let b = algebra.embed(g.y());
    let xhat = a.clone();
    let yhat = {
        let mut v = algebra.add(&b, &a);
        v = algebra.add(&v, &algebra.one());
        v
    };
    for (name, u) in [("x", &xhat), ("y", &yhat)] {
        if !algebra.is_unit(u) {
            return Err(Error::Unsupported(format!(
                "crossed generator {name} is not a unit; arithmetic is broken"
            )));
        }
    }
    let zhat = algebra.unit_commutator(&yhat, &xhat)?;
    if !algebra.is_unit(&zhat) {
        return Err(Error::Unsupported(
            "crossed generator z is not a unit; arithmetic is broken".into(),
        ));
    }
    Ok(CrossedBase {
        algebra,
        n,
        m,
        l,
        xhat,
        yhat,
        zhat,
    })
}

impl CrossedBase {
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn parameters(&self) -> (u32, u32, u32) {
        (self.n, self.m, self.l)
    }

    pub fn xhat(&self) -> &AlgebraElement {
        &self.xhat
    }

    pub fn yhat(&self) -> &AlgebraElement {
        &self.yhat
    }

    pub fn zhat(&self) -> &AlgebraElement {
        &self.zhat
    }

    /// Check the six defining relations of D1(n, m, l) on the crossed
    /// generators by exact algebra arithmetic.
    pub fn verify_relations(&self) -> RelationChecks {
        let a = &self.algebra;
        let one = a.one();
        let x_power = a.power(&self.xhat, 1 << self.n) == one;
        let y_power = a.power(&self.yhat, 1 << self.m) == one;
        let z_power = a.power(&self.zhat, 1 << self.l) == one;
        let comm_yx_is_z = a
            .unit_commutator(&self.yhat, &self.xhat)
            .map(|c| c == self.zhat)
            .unwrap_or(false);
        // z^-1 as z^(2^l - 1) when z_power holds, else the generic inverse.
        let z_inv = if z_power {
            a.power(&self.zhat, (1u64 << self.l) - 1)
        } else {
            match a.unit_inverse(&self.zhat) {
                Ok(v) => v,
                Err(_) => return RelationChecks {
                    x_power,
                    y_power,
                    z_power,
                    comm_yx_is_z,
                    comm_zx_inverts_square: false,
                    comm_zy_inverts_square: false,
                },
            }
        };
        let z_minus2 = a.mul(&z_inv, &z_inv);
        let comm = |u: &AlgebraElement, v: &AlgebraElement| -> Option<AlgebraElement> {
            a.unit_commutator(u, v).ok()
        };
        let comm_zx_inverts_square = comm(&self.zhat, &self.xhat)
            .map(|c| c == z_minus2)
            .unwrap_or(false);
        let comm_zy_inverts_square = comm(&self.zhat, &self.yhat)
            .map(|c| c == z_minus2)
            .unwrap_or(false);
        RelationChecks {
            x_power,
            y_power,
            z_power,
            comm_yx_is_z,
            comm_zx_inverts_square,
            comm_zy_inverts_square,
        }
    }

    /// Rank of the linear map sending each D1 normal form x^a y^b z^c to
    /// xhat^a yhat^b zhat^c. Rank |G| certifies bijectivity, hence the
    /// algebra isomorphism. Errors unless all relations verify.
    pub fn hom_rank(&self) -> Result<usize> {
        if !self.verify_relations().all() {
            return Err(Error::RelationsNotVerified);
        }
        Ok(hom_rank_for(
            &self.algebra,
            (&self.xhat, &self.yhat, &self.zhat),
            (self.n, self.m, self.l),
        ))
    }
}

/// Rank of the map x^a y^b z^c -> u^a v^b w^c for unit images (u, v, w) and
/// source normal-form ranges (2^n, 2^m, 2^l). Columns are generated in source
/// index order, reusing cached powers: one left multiplication per step.
pub fn hom_rank_for(
    alg: &Algebra,
    (u, v, w): (&AlgebraElement, &AlgebraElement, &AlgebraElement),
    (n, m, l): (u32, u32, u32),
) -> usize {
    let dim = alg.dim();
    let mut span = Echelon::new(alg.field(), dim);
    // Plane of columns for fixed a: all v^b w^c images, advanced by one
    // left multiplication with u per a-step.
    let mut plane: Vec<AlgebraElement> = Vec::with_capacity(1 << (m + l));
    let mut wc = alg.one();
    for c in 0..(1u32 << l) {
        if c > 0 {
            wc = alg.mul(&wc, w);
        }
        plane.push(wc.clone());
    }
    for b in 1..(1u32 << m) {
        let base = plane[((b - 1) << l) as usize..(b << l) as usize].to_vec();
        for col in base {
            plane.push(alg.mul(v, &col));
        }
    }
    for _a in 0..(1u32 << n) {
        for col in plane.iter() {
            span.insert(col.coeffs().clone());
        }
        if span.rank() == dim {
            return dim;
        }
        for col in plane.iter_mut() {
            *col = alg.mul(u, col);
        }
    }
    span.rank()
}

/// Leading Jennings coefficients of a prospective base pair (A, B) modulo
/// Delta^3, the residual check U in Delta^3, and the derived scalars
/// lambda = alpha_A beta_B + alpha_B beta_A, mu = lambda(1 + alpha_A + alpha_B),
/// nu = lambda(1 + beta_A + beta_B).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BaseProfile {
    pub alpha_a: u8,
    pub beta_a: u8,
    pub gamma_a: u8,
    pub delta_a: u8,
    pub xi_a: u8,
    pub eta_a: u8,
    pub alpha_b: u8,
    pub beta_b: u8,
    pub gamma_b: u8,
    pub delta_b: u8,
    pub xi_b: u8,
    pub eta_b: u8,
    pub lambda: u8,
    pub mu: u8,
    pub nu: u8,
}

/// Read the profile of (A, B) from Jennings coordinates. Both must lie in
/// the augmentation ideal; the remainder after stripping the weight <= 2
/// part must lie in Delta^3 (checked).
pub fn base_profile(alg: &Algebra, a: &AlgebraElement, b: &AlgebraElement) -> Result<BaseProfile> {
    let basis = alg.jennings()?;
    let p = alg.group().params();
    if p.m < 2 {
        return Err(Error::Unsupported(
            "base profiles need n >= m >= 2 (Y^2 must be a basis monomial)".into(),
        ));
    }
    let read = |u: &AlgebraElement| -> Result<[u8; 6]> {
        let coords = basis.coords(u);
        if coords.get(basis.position(0, 0, 0, 0)) != 0 {
            return Err(Error::NotInSubspace(
                "profile input must lie in the augmentation ideal".into(),
            ));
        }
        let out = [
            coords.get(basis.position(1, 0, 0, 0)), // alpha: X
            coords.get(basis.position(0, 1, 0, 0)), // beta: Y
            coords.get(basis.position(1, 1, 0, 0)), // gamma: XY
            coords.get(basis.position(0, 0, 1, 0)), // delta: Z
            coords.get(basis.position(2, 0, 0, 0)), // xi: X^2
            coords.get(basis.position(0, 2, 0, 0)), // eta: Y^2
        ];
        // Residual: everything else must have weight >= 3.
        let trunc = basis.truncate_coords(&coords, 3);
        let mut residual = trunc;
        for (i, &(r, s, t, w)) in [
            (1u32, 0u32, 0u32, 0u32),
            (0, 1, 0, 0),
            (1, 1, 0, 0),
            (0, 0, 1, 0),
            (2, 0, 0, 0),
            (0, 2, 0, 0),
        ]
        .iter()
        .enumerate()
        {
            let pos = basis.position(r, s, t, w);
            if residual.get(pos) != out[i] {
                return Err(Error::NotInSubspace(
                    "unexpected weight <= 2 coordinate outside the profile".into(),
                ));
            }
            residual.set(pos, 0);
        }
        if !residual.is_zero() {
            return Err(Error::NotInSubspace(
                "residual of the profile is not in Delta^3".into(),
            ));
        }
        Ok(out)
    };
    let [alpha_a, beta_a, gamma_a, delta_a, xi_a, eta_a] = read(a)?;
    let [alpha_b, beta_b, gamma_b, delta_b, xi_b, eta_b] = read(b)?;
    let f = alg.field();
    let lambda = f.add(f.mul(alpha_a, beta_b), f.mul(alpha_b, beta_a));
    let mu = f.mul(lambda, f.add(1, f.add(alpha_a, alpha_b)));
    let nu = f.mul(lambda, f.add(1, f.add(beta_a, beta_b)));
    Ok(BaseProfile {
        alpha_a,
        beta_a,
        gamma_a,
        delta_a,
        xi_a,
        eta_a,
        alpha_b,
        beta_b,
        gamma_b,
        delta_b,
        xi_b,
        eta_b,
        lambda,
        mu,
        nu,
    })
}

/// Executable instances of the group-base congruences on the crossed base.
#[derive(Clone, Debug, Serialize)]
pub struct BaseLemmaReport {
    pub profile: BaseProfile,
    /// gamma_A = gamma_B = 0.
    pub gammas_vanish: bool,
    /// C = 1 + z satisfies C = lambda Z + mu XZ + nu YZ mod Delta^4.
    pub c_congruence: bool,
    /// A^(2^n) and B^(2^n) match their leading terms modulo
    /// Z(FG) ∩ [FG, FG].
    pub a_power_congruence: bool,
    pub b_power_congruence: bool,
    /// On the companion base (x, y+x+1) in F·D1, the relation
    /// b^(2^m) = a^(2^m) holds and forces equal phi-images.
    pub companion_power_relation: bool,
    pub companion_phi_images_match: bool,
    /// C-congruence stability under random Delta^3 perturbations of A and B.
    pub perturbation_passes: u32,
    pub perturbation_trials: u32,
}

impl BaseLemmaReport {
    pub fn all(&self) -> bool {
        self.gammas_vanish
            && self.c_congruence
            && self.a_power_congruence
            && self.b_power_congruence
            && self.companion_power_relation
            && self.companion_phi_images_match
            && self.perturbation_passes == self.perturbation_trials
    }
}

/// C-congruence: C + lambda Z + mu XZ + nu YZ lies in Delta^4, where C is
/// the unit commutator of the (possibly perturbed) pair plus one.
fn c_congruence_holds(
    alg: &Algebra,
    a_unit: &AlgebraElement,
    b_unit: &AlgebraElement,
    profile: &BaseProfile,
) -> Result<bool> {
    let basis = alg.jennings()?;
    let c_unit = alg.unit_commutator(b_unit, a_unit)?;
    let mut c = alg.add(&c_unit, &alg.one());
    let z = basis.monomial_element(alg, 0, 0, 1, 0);
    let xz = basis.monomial_element(alg, 1, 0, 1, 0);
    let yz = basis.monomial_element(alg, 0, 1, 1, 0);
    c = alg.add(&c, &alg.scale(profile.lambda, &z));
    c = alg.add(&c, &alg.scale(profile.mu, &xz));
    c = alg.add(&c, &alg.scale(profile.nu, &yz));
    Ok(basis.in_ideal_power(&c, 4))
}

/// Run the executable group-base checks on the crossed base, plus
/// `trials` random Delta^3 perturbations (fixed seed for reproducibility).
pub fn base_lemma_checks(base: &CrossedBase, trials: u32, seed: u64) -> Result<BaseLemmaReport> {
    let alg = base.algebra();
    let basis = alg.jennings()?;
    let f = alg.field();
    let (n, m, _l) = base.parameters();
    let one = alg.one();
    let a_def = alg.add(&base.xhat, &one); // A = 1 + xhat
    let b_def = alg.add(&base.yhat, &one); // B = 1 + yhat
    let profile = base_profile(alg, &a_def, &b_def)?;
    let gammas_vanish = profile.gamma_a == 0 && profile.gamma_b == 0;
    let c_congruence = c_congruence_holds(alg, &base.xhat, &base.yhat, &profile)?;

    // A^(2^n) + alpha_A^(2^n) X^(2^n) + beta_A^(2^n) Y^(2^n) must lie in
    // Z(FG) ∩ [FG, FG]; same for B.
    let span = alg.center_commutator_span();
    let two_n = 1u64 << n;
    let cap_x = basis.monomial_element(alg, 1, 0, 0, 0);
    let cap_y = basis.monomial_element(alg, 0, 1, 0, 0);
    let x_2n = alg.power(&cap_x, two_n);
    let y_2n = alg.power(&cap_y, two_n);
    let power_congruence = |u: &AlgebraElement, alpha: u8, beta: u8| -> bool {
        let mut t = alg.power(u, two_n);
        t = alg.add(&t, &alg.scale(f.pow(alpha, two_n), &x_2n));
        t = alg.add(&t, &alg.scale(f.pow(beta, two_n), &y_2n));
        span.contains(t.coeffs())
    };
    let a_power_congruence = power_congruence(&a_def, profile.alpha_a, profile.beta_a);
    let b_power_congruence = power_congruence(&b_def, profile.alpha_b, profile.beta_b);

    // Companion base (a, b) = (x, y + x + 1) inside F·D1(n, m, l): its
    // D2-type relation b^(2^m) = a^(2^m) holds and demands equal phi-images
    // of A' = 1 + a and B' = 1 + b.
    let (companion_power_relation, companion_phi_images_match) = {
        let d1 = Arc::new(Group::new(GroupParams::family(Family::D1, n, m, _l)?)?);
        let amb = Algebra::new(d1, f);
        let g1 = amb.group();
        let a_c = amb.embed(g1.x());
        let b_c = {
            let mut v = amb.add(&amb.embed(g1.y()), &amb.embed(g1.x()));
            v = amb.add(&v, &amb.one());
            v
        };
        let two_m = 1u64 << m;
        let rel = amb.power(&a_c, two_m) == amb.power(&b_c, two_m);
        let basis1 = amb.jennings()?;
        let a_prime = amb.add(&a_c, &amb.one());
        let b_prime = amb.add(&b_c, &amb.one());
        let phi_of = |u: &AlgebraElement| -> GfVec {
            let p = amb.power(u, two_m);
            basis1.truncate_coords(&basis1.coords(&p), 1 + two_m)
        };
        (rel, phi_of(&a_prime) == phi_of(&b_prime))
    };

    // Perturbation stability of the C-congruence: A' = A + v_A, B' = B + v_B
    // with v in Delta^3 leaves lambda, mu, nu unchanged.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let delta3_positions: Vec<usize> = (0..alg.dim())
        .filter(|&i| basis.weight_of_monomial(i) >= 3)
        .collect();
    let random_delta3 = |rng: &mut ChaCha8Rng| -> AlgebraElement {
        let mut v = GfVec::zeros(f, alg.dim());
        for &i in &delta3_positions {
            let c = rng.gen_range(0..f.order()) as u8;
            if c != 0 {
                v.add_scaled(basis.expansion(i), c);
            }
        }
        alg.from_vec(v)
    };
    let mut perturbation_passes = 0u32;
    for _ in 0..trials {
        let va = random_delta3(&mut rng);
        let vb = random_delta3(&mut rng);
        let a_unit = alg.add(&base.xhat, &va);
        let b_unit = alg.add(&base.yhat, &vb);
        let a_p = alg.add(&a_def, &va);
        let b_p = alg.add(&b_def, &vb);
        let prof = base_profile(alg, &a_p, &b_p)?;
        debug_assert_eq!(prof.lambda, profile.lambda);
        if c_congruence_holds(alg, &a_unit, &b_unit, &prof)? {
            perturbation_passes += 1;
        }
    }

    Ok(BaseLemmaReport {
        profile,
        gammas_vanish,
        c_congruence,
        a_power_congruence,
        b_power_congruence,
        companion_power_relation,
        companion_phi_images_match,
        perturbation_passes,
        perturbation_trials: trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn yhat_square_expansion() {
        // y^2 = b^2 + a^2 + ab + abc + 1 in F·D2.
        let base = crossed_base(4, 3, 2, FieldSpec::gf2()).unwrap();
        let alg = base.algebra();
        let g = alg.group();
        let y2 = alg.mul(base.yhat(), base.yhat());
        let mut expect = alg.embed(g.multiply(g.y(), g.y()));
        expect = alg.add(&expect, &alg.embed(g.multiply(g.x(), g.x())));
        let ab = g.multiply(g.x(), g.y());
        expect = alg.add(&expect, &alg.embed(ab));
        expect = alg.add(&expect, &alg.embed(g.multiply(ab, g.z())));
        expect = alg.add(&expect, &alg.one());
        assert_eq!(y2, expect);
        assert_eq!(alg.augmentation(base.yhat()), 1);
    }

    #[test]
    fn relations_hold_at_432() {
        let base = crossed_base(4, 3, 2, FieldSpec::gf2()).unwrap();
        let checks = base.verify_relations();
        assert!(checks.all(), "{checks:?}");
    }

    #[test]
    fn identity_base_has_full_rank() {
        // The identity images x, y, z in F·D1 give a rank-|G| map.
        let g = Arc::new(
            Group::new(GroupParams::family(Family::D1, 3, 2, 2).unwrap()).unwrap(),
        );
        let alg = Algebra::new(g, FieldSpec::gf2());
        let (x, y, z) = (
            alg.embed(alg.group().x()),
            alg.embed(alg.group().y()),
            alg.embed(alg.group().z()),
        );
        assert_eq!(hom_rank_for(&alg, (&x, &y, &z), (3, 2, 2)), alg.dim());
    }

    #[test]
    fn crossed_base_profile() {
        let base = crossed_base(4, 3, 2, FieldSpec::gf2()).unwrap();
        let alg = base.algebra();
        let a = alg.add(base.xhat(), &alg.one());
        let b = alg.add(base.yhat(), &alg.one());
        let p = base_profile(alg, &a, &b).unwrap();
        assert_eq!(
            (p.alpha_a, p.beta_a, p.gamma_a),
            (1, 0, 0)
        );
        assert_eq!(
            (p.alpha_b, p.beta_b, p.gamma_b),
            (1, 1, 0)
        );
        assert_eq!((p.lambda, p.mu, p.nu), (1, 1, 0));
    }

    #[test]
    fn base_lemma_checks_pass_with_small_trials() {
        let base = crossed_base(4, 3, 2, FieldSpec::gf2()).unwrap();
        let report = base_lemma_checks(&base, 3, 12345).unwrap();
        assert!(report.all(), "{report:?}");
    }
}
