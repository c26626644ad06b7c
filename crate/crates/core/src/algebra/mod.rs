//! Exact group-algebra arithmetic over GF(2^k).
//!
//! An algebra element is a dense coefficient vector indexed by the group's
//! normal forms, bit-packed per field bit-plane. The augmentation ideal is
//! the Jacobson radical; its complement is the unit group.

pub mod gamma;
pub mod jennings;

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::group::{Group, GroupElement, GroupLike};
use crate::linalg::{Echelon, GfVec};

static CTX_COUNTER: AtomicU64 = AtomicU64::new(1);

/// The group algebra FG for one (group, field) pair. Construction is cheap;
/// the Jennings basis and filtration spans are built on first use and cached.
pub struct Algebra {
    group: Arc<Group>,
    field: FieldSpec,
    ctx: u64,
    mul_table: Vec<u8>,
    jennings_cache: OnceLock<jennings::JenningsBasis>,
    center_comm_cache: OnceLock<Echelon>,
    gamma_cache: Mutex<Vec<Option<Arc<Echelon>>>>,
}

/// Coefficient vector over GF(2^k) indexed by group normal forms.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    ctx: u64,
    pub(crate) coeffs: GfVec,
}

impl AlgebraElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn coeffs(&self) -> &GfVec {
        &self.coeffs
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.support_len()
    }
}

impl std::fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AlgebraElement{:?}", self.coeffs)
    }
}

impl Algebra {
    pub fn new(group: Arc<Group>, field: FieldSpec) -> Arc<Algebra> {
        let k = field.degree() as usize;
        let order = 1usize << k;
        let mut mul_table = vec![0u8; order * order];
        for a in 0..order {
            for b in 0..order {
                mul_table[(a << k) | b] = field.mul(a as u8, b as u8);
            }
        }
        Arc::new(Algebra {
            group,
            field,
            ctx: CTX_COUNTER.fetch_add(1, Ordering::Relaxed),
            mul_table,
            jennings_cache: OnceLock::new(),
            center_comm_cache: OnceLock::new(),
            gamma_cache: Mutex::new(Vec::new()),
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.group.group_order() as usize
    }

    #[inline]
    fn fmul(&self, a: u8, b: u8) -> u8 {
        self.mul_table[((a as usize) << self.field.degree()) | b as usize]
    }

    fn check(&self, u: &AlgebraElement) {
        assert_eq!(
            u.ctx, self.ctx,
            "algebra element used with a different group/field context"
        );
    }

    fn wrap(&self, coeffs: GfVec) -> AlgebraElement {
        AlgebraElement {
            ctx: self.ctx,
            coeffs,
        }
    }

    /// Wrap a coefficient vector (length |G|, same field) as an element.
    pub fn from_vec(&self, coeffs: GfVec) -> AlgebraElement {
        assert_eq!(coeffs.len(), self.dim(), "coefficient vector length");
        assert_eq!(coeffs.field(), self.field, "coefficient field");
        self.wrap(coeffs)
    }

    pub fn zero(&self) -> AlgebraElement {
        self.wrap(GfVec::zeros(self.field, self.dim()))
    }

    pub fn one(&self) -> AlgebraElement {
        self.embed(GroupElement::IDENTITY)
    }

    pub fn embed(&self, g: GroupElement) -> AlgebraElement {
        let mut v = GfVec::zeros(self.field, self.dim());
        v.set(self.group.idx(g) as usize, 1);
        self.wrap(v)
    }

    pub fn add(&self, u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
        self.check(u);
        self.check(v);
        let mut out = u.coeffs.clone();
        out.add_assign(&v.coeffs);
        self.wrap(out)
    }

    pub fn add_assign(&self, u: &mut AlgebraElement, v: &AlgebraElement) {
        self.check(u);
        self.check(v);
        u.coeffs.add_assign(&v.coeffs);
    }

    pub fn scale(&self, alpha: u8, u: &AlgebraElement) -> AlgebraElement {
        self.check(u);
        let mut out = u.coeffs.clone();
        out.scale(alpha);
        self.wrap(out)
    }

    /// Convolution over the group multiplication.
    pub fn mul(&self, u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
        self.check(u);
        self.check(v);
        let su = u.coeffs.support();
        let sv = v.coeffs.support();
        let mut out = GfVec::zeros(self.field, self.dim());
        for &gi in &su {
            let cg = u.coeffs.get(gi);
            let g = self.group.elem(gi as u32);
            for &hi in &sv {
                let idx = self
                    .group
                    .idx(self.group.multiply(g, self.group.elem(hi as u32)));
                out.add_at(idx as usize, self.fmul(cg, v.coeffs.get(hi)));
            }
        }
        self.wrap(out)
    }

    /// Square-and-multiply powering (powers of a single element commute).
    pub fn power(&self, u: &AlgebraElement, mut e: u64) -> AlgebraElement {
        self.check(u);
        let mut base = u.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Lie commutator [u, v] = uv + vu.
    pub fn lie_commutator(&self, u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
        let mut uv = self.mul(u, v);
        let vu = self.mul(v, u);
        uv.coeffs.add_assign(&vu.coeffs);
        uv
    }

    /// Group-style commutator of units, u^-1 v^-1 u v.
    pub fn unit_commutator(
        &self,
        u: &AlgebraElement,
        v: &AlgebraElement,
    ) -> Result<AlgebraElement> {
        let ui = self.unit_inverse(u)?;
        let vi = self.unit_inverse(v)?;
        Ok(self.mul(&self.mul(&ui, &vi), &self.mul(u, v)))
    }

    /// Coefficient sum; the kernel of this map is the augmentation ideal.
    pub fn augmentation(&self, u: &AlgebraElement) -> u8 {
        self.check(u);
        u.coeffs.coeff_sum()
    }

    pub fn is_unit(&self, u: &AlgebraElement) -> bool {
        self.augmentation(u) != 0
    }

    /// Inverse of a unit u = alpha(1 + R) with R nilpotent:
    /// u^-1 = alpha^-1 (1 + R + R^2 + ...) truncated at nilpotency.
    pub fn unit_inverse(&self, u: &AlgebraElement) -> Result<AlgebraElement> {
        let aug = self.augmentation(u);
        if aug == 0 {
            return Err(Error::NotAUnit);
        }
        let ainv = self.field.inv(aug)?;
        let mut r = self.scale(ainv, u);
        r.coeffs.add_at(0, 1); // subtract 1 at the identity coordinate
        let mut acc = self.one();
        let mut term = r.clone();
        let mut steps = 0usize;
        while !term.is_zero() {
            acc.coeffs.add_assign(&term.coeffs);
            term = self.mul(&term, &r);
            steps += 1;
            assert!(
                steps <= self.dim(),
                "augmentation ideal must be nilpotent within dim steps"
            );
        }
        Ok(self.scale(ainv, &acc))
    }

    /// Sum over the conjugacy class of g; central by construction.
    pub fn class_sum(&self, g: GroupElement) -> AlgebraElement {
        let mut v = GfVec::zeros(self.field, self.dim());
        for &i in self.group.class_of(self.group.idx(g)) {
            v.set(i as usize, 1);
        }
        self.wrap(v)
    }

    /// Basis of F Z(G) (embedded center elements) and a basis of
    /// Z(FG) ∩ [FG, FG] (class sums of non-central elements); together they
    /// decompose the center of FG.
    pub fn center_decomposition(&self) -> (Vec<AlgebraElement>, Vec<AlgebraElement>) {
        let central = self.group.center();
        let group_part: Vec<AlgebraElement> = central
            .element_indices()
            .iter()
            .map(|&i| self.embed(self.group.elem(i)))
            .collect();
        let comm_part: Vec<AlgebraElement> = self
            .group
            .conjugacy_classes()
            .iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let mut v = GfVec::zeros(self.field, self.dim());
                for &i in c {
                    v.set(i as usize, 1);
                }
                self.wrap(v)
            })
            .collect();
        (group_part, comm_part)
    }

    /// Echelonized span of Z(FG) ∩ [FG, FG].
    pub fn center_commutator_span(&self) -> &Echelon {
        self.center_comm_cache.get_or_init(|| {
            let (_, comm) = self.center_decomposition();
            let mut e = Echelon::new(self.field, self.dim());
            e.insert_all(comm.into_iter().map(|u| u.coeffs));
            e
        })
    }

    /// Span of Gamma^j where Gamma = Delta(D(G)) FG = Z·FG, computed as the
    /// iterated ideal product Gamma^j = Gamma^(j-1) · Gamma with Gamma
    /// spanned by the right multiples h(1+z), h in G.
    pub fn gamma_power_span(&self, j: u32) -> Arc<Echelon> {
        assert!(j >= 1);
        {
            let cache = self.gamma_cache.lock().expect("gamma cache lock");
            if let Some(Some(e)) = cache.get(j as usize - 1) {
                return e.clone();
            }
        }
        let n = self.dim();
        let zi = self.group.idx(self.group.z());
        let span = if j == 1 {
            let mut e = Echelon::new(self.field, n);
            for h in 0..n as u32 {
                let mut v = GfVec::zeros(self.field, n);
                v.set(h as usize, 1);
                v.set(self.group.mul_idx(h, zi) as usize, 1);
                // h + hz may cancel only if hz = h, impossible for z != 1.
                e.insert(v);
            }
            Arc::new(e)
        } else {
            let prev = self.gamma_power_span(j - 1);
            let mut e = Echelon::new(self.field, n);
            for b in prev.rows() {
                for h in 0..n as u32 {
                    // (b h)(1 + z): translate b by h, then right-multiply by Z.
                    let mut bh = GfVec::zeros(self.field, n);
                    for i in b.support() {
                        bh.add_at(self.group.mul_idx(i as u32, h) as usize, b.get(i));
                    }
                    let mut cand = bh.clone();
                    for i in bh.support() {
                        cand.add_at(self.group.mul_idx(i as u32, zi) as usize, bh.get(i));
                    }
                    e.insert(cand);
                }
            }
            Arc::new(e)
        };
        let mut cache = self.gamma_cache.lock().expect("gamma cache lock");
        if cache.len() < j as usize {
            cache.resize(j as usize, None);
        }
        cache[j as usize - 1] = Some(span.clone());
        span
    }

    /// Does F(agemo_r(Z(G))) equal agemo_r(Z(FG))? Returns the verdict plus
    /// both spans' dimensions. Only stated (and accepted) for r >= l.
    pub fn agemo_center_equality(&self, r: u32) -> Result<AgemoCenterCheck> {
        let l = self.group.params().l;
        if r < l {
            return Err(Error::AgemoRange { r, l });
        }
        // Left side: the span of the subgroup agemo_r(Z(G)).
        let group_side = self.group.center().agemo(self.group(), r)?;
        let mut lhs = Echelon::new(self.field, self.dim());
        for &i in group_side.element_indices() {
            let mut v = GfVec::zeros(self.field, self.dim());
            v.set(i as usize, 1);
            lhs.insert(v);
        }
        // Right side: subalgebra generated by 2^r-th powers of a center
        // basis (embedded central elements plus non-central class sums).
        let (zg, comm) = self.center_decomposition();
        let mut rhs = Echelon::new(self.field, self.dim());
        rhs.insert(self.one().coeffs);
        let pow = 1u64 << r;
        let mut gens = Vec::new();
        for b in zg.iter().chain(comm.iter()) {
            let p = self.power(b, pow);
            if rhs.insert(p.coeffs.clone()) {
                gens.push(p);
            }
        }
        // Close under products (Z(FG) is commutative, so one round suffices;
        // loop until stable as a safeguard).
        let mut basis: Vec<AlgebraElement> = rhs
            .rows()
            .iter()
            .map(|v| self.from_vec(v.clone()))
            .collect();
        loop {
            let mut grew = false;
            let mut new_rows = Vec::new();
            for a in &basis {
                for b in &basis {
                    let p = self.mul(a, b);
                    if rhs.insert(p.coeffs.clone()) {
                        new_rows.push(p);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
            basis.extend(new_rows);
        }
        Ok(AgemoCenterCheck {
            equal: lhs.same_span(&rhs),
            group_side_dim: lhs.rank(),
            algebra_side_dim: rhs.rank(),
        })
    }
}

/// Outcome of the agemo-center comparison.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct AgemoCenterCheck {
    pub equal: bool,
    pub group_side_dim: usize,
    pub algebra_side_dim: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Family, GroupParams};

    fn alg(family: Family, n: u32, m: u32, l: u32, k: u8) -> Arc<Algebra> {
        let g = Group::new(GroupParams::family(family, n, m, l).unwrap()).unwrap();
        Algebra::new(Arc::new(g), FieldSpec::new(k).unwrap())
    }

    #[test]
    fn embedding_is_multiplicative() {
        let a = alg(Family::D2, 3, 2, 2, 1);
        let g = a.group();
        for (p, q) in [
            (g.x(), g.y()),
            (g.y(), g.z()),
            (g.multiply(g.x(), g.y()), g.z()),
        ] {
            let lhs = a.mul(&a.embed(p), &a.embed(q));
            let rhs = a.embed(g.multiply(p, q));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn augmentation_of_group_elements_is_one() {
        let a = alg(Family::D1, 2, 2, 2, 2);
        for g in a.group().elements().step_by(5) {
            assert_eq!(a.augmentation(&a.embed(g)), 1);
        }
        let x = a.embed(a.group().x());
        let one = a.one();
        let mut s = a.add(&x, &one); // X = x + 1
        assert_eq!(a.augmentation(&s), 0);
        assert!(!a.is_unit(&s));
        s.coeffs.add_at(0, 1);
        assert!(a.is_unit(&s));
    }

    #[test]
    fn unit_inverse_of_one_plus_z() {
        // (1+Z)^-1 = 1 + Z + Z^2 + ... + Z^(2^l - 1), i.e. the inverse of the
        // group element-like unit 1 + Z where Z = z + 1: 1 + Z = z, and
        // z^-1 = z^(2^l - 1).
        let a = alg(Family::D1, 2, 2, 2, 1);
        let z = a.embed(a.group().z());
        let inv = a.unit_inverse(&z).unwrap();
        assert_eq!(a.mul(&z, &inv), a.one());
        assert_eq!(inv, a.embed(a.group().power(a.group().z(), -1)));
        // And a genuinely non-trivial unit.
        let u = {
            let x = a.embed(a.group().x());
            let y = a.embed(a.group().y());
            let mut v = a.add(&x, &y);
            v.coeffs.add_at(0, 1);
            v
        };
        let ui = a.unit_inverse(&u).unwrap();
        assert_eq!(a.mul(&u, &ui), a.one());
        assert_eq!(a.mul(&ui, &u), a.one());
    }

    #[test]
    fn class_sum_is_central() {
        let a = alg(Family::D2, 3, 2, 2, 1);
        let g = a.group();
        let xy = g.multiply(g.x(), g.y());
        let cs = a.class_sum(xy);
        assert_eq!(cs.support_len(), 2);
        for h in [g.x(), g.y(), g.z()] {
            let e = a.embed(h);
            assert_eq!(a.mul(&cs, &e), a.mul(&e, &cs));
        }
    }

    #[test]
    fn center_dimensions() {
        let a = alg(Family::D1, 2, 2, 2, 1);
        let (zg, comm) = a.center_decomposition();
        assert_eq!(zg.len(), a.group().center().order());
        assert_eq!(
            zg.len() + comm.len(),
            a.group().class_count()
        );
        // Direct sum: joint rank equals the sum of ranks.
        let mut e = Echelon::new(a.field(), a.dim());
        for v in zg.iter().chain(comm.iter()) {
            assert!(e.insert(v.coeffs.clone()));
        }
    }

    #[test]
    fn lie_commutator_xy_is_central() {
        // [X, Y] = xy + yx is a class sum, hence central.
        let a = alg(Family::D4, 3, 2, 2, 2);
        let g = a.group();
        let cap_x = a.add(&a.embed(g.x()), &a.one());
        let cap_y = a.add(&a.embed(g.y()), &a.one());
        let c = a.lie_commutator(&cap_x, &cap_y);
        for h in g.elements().step_by(11) {
            let e = a.embed(h);
            assert_eq!(a.mul(&c, &e), a.mul(&e, &c));
        }
        // [X, Y] = (1 + X + Y + XY) Z.
        let cap_z = a.add(&a.embed(g.z()), &a.one());
        let mut paren = a.one();
        paren = a.add(&paren, &cap_x);
        paren = a.add(&paren, &cap_y);
        paren = a.add(&paren, &a.mul(&cap_x, &cap_y));
        assert_eq!(c, a.mul(&paren, &cap_z));
    }

    #[test]
    fn agemo_center_examples() {
        // D1(2,2,2), r = 2: both sides are F·1.
        let a = alg(Family::D1, 2, 2, 2, 1);
        let chk = a.agemo_center_equality(2).unwrap();
        assert!(chk.equal);
        assert_eq!(chk.group_side_dim, 1);
        // D5(3,2,2), r = 2: agemo_2(Z(G)) = <w>.
        let a = alg(Family::D5, 3, 2, 2, 1);
        let chk = a.agemo_center_equality(2).unwrap();
        assert!(chk.equal);
        assert_eq!(chk.group_side_dim, 2);
        assert!(a.agemo_center_equality(1).is_err());
    }

    #[test]
    fn class_sum_powers_vanish() {
        // (class sum of non-central g)^(2^r) = 0 for r >= l.
        let a = alg(Family::D3, 3, 2, 2, 1);
        let g = a.group();
        for c in g.conjugacy_classes() {
            if c.len() == 1 {
                continue;
            }
            let cs = a.class_sum(g.elem(c[0]));
            assert!(a.power(&cs, 4).is_zero());
        }
    }

    #[test]
    fn gamma_is_a_two_sided_ideal() {
        let a = alg(Family::D1, 2, 2, 2, 1);
        let g1 = a.gamma_power_span(1);
        assert_eq!(g1.rank(), a.dim() - a.dim() / (1 << a.group().params().l));
        let g = a.group();
        let cap_x = a.add(&a.embed(g.x()), &a.one());
        let cap_y = a.add(&a.embed(g.y()), &a.one());
        for row in g1.rows() {
            let u = a.from_vec(row.clone());
            for s in [&cap_x, &cap_y] {
                assert!(g1.contains(&a.mul(&u, s).coeffs));
                assert!(g1.contains(&a.mul(s, &u).coeffs));
            }
        }
    }
}
