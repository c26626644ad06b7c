//! The weighted monomial basis of the augmentation-ideal filtration.
//!
//! With X = x+1, Y = y+1, Z = z+1, W = w+1 for w = z^(2^(l-1)), the products
//! X^r Y^s Z^t W^u over 0 <= r < 2^n, 0 <= s < 2^m, 0 <= t < 2^(l-1),
//! 0 <= u <= 1 form a basis of FG, and those of weight r + s + 2t + qu >= k
//! form a basis of Delta^k. The weight q of W depends on the family:
//! 2^l for D1/D2, 2^max(m,l) for D3/D4, 2^max(n,l) for D5/D6.

use serde::Serialize;

use super::{Algebra, AlgebraElement};
use crate::error::{Error, Result};
use crate::group::GroupLike;
use crate::linalg::{invert_rows, transpose_rows, Echelon, GfVec};

/// Monomial exponents (r, s, t, u) with weight r + s + 2t + q u.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct JenningsMonomial {
    pub r: u32,
    pub s: u32,
    pub t: u32,
    pub u: u32,
}

impl JenningsMonomial {
    pub fn weight(&self, q: u64) -> u64 {
        self.r as u64 + self.s as u64 + 2 * self.t as u64 + q * self.u as u64
    }
}

/// The full monomial basis with change-of-basis matrices in both directions.
pub struct JenningsBasis {
    q: u64,
    monomials: Vec<JenningsMonomial>, // sorted by (weight, r, s, t, u)
    weights: Vec<u64>,
    expansions: Vec<GfVec>,  // expansion of each monomial over group coords
    minv_rows: Vec<GfVec>,   // rows of M^{-1}; coords(v)[i] = minv_rows[i] . v
    index: Vec<usize>,       // packed key -> sorted position
    key_shift: (u32, u32),   // (m, l-1) bit widths for packing
}

impl Algebra {
    /// The Jennings-style basis for this algebra; needs l >= 2 and a
    /// canonical family label (q is defined per family).
    pub fn jennings(&self) -> Result<&JenningsBasis> {
        let p = self.group().params();
        if p.l < 2 {
            return Err(Error::JenningsUnavailable(format!(
                "l = {} (the basis is stated for l >= 2)",
                p.l
            )));
        }
        if !p.is_canonical() {
            return Err(Error::JenningsUnavailable(format!(
                "{} is not a canonical family presentation",
                p.label()
            )));
        }
        Ok(self.jennings_cache.get_or_init(|| self.build_jennings()))
    }

    fn build_jennings(&self) -> JenningsBasis {
        let g = self.group();
        let p = *g.params();
        let family = p.family.expect("canonical params carry a family");
        let q: u64 = match family.index() {
            1 | 2 => 1u64 << p.l,
            3 | 4 => 1u64 << p.m.max(p.l),
            _ => 1u64 << p.n.max(p.l),
        };
        let (tn, tm, tl1) = (1u32 << p.n, 1u32 << p.m, 1u32 << (p.l - 1));
        let n_dim = self.dim();

        // Expand all monomials X^r Y^s Z^t W^u by incremental right
        // multiplication with the sparse factors X, Y, Z, W.
        let right_mul_one_plus = |v: &GfVec, e: u32| -> GfVec {
            let mut out = v.clone();
            for i in v.support() {
                out.add_at(g.mul_idx(i as u32, e) as usize, v.get(i));
            }
            out
        };
        let (xi, yi, zi, wi) = (
            g.idx(g.x()),
            g.idx(g.y()),
            g.idx(g.z()),
            g.idx(g.w()),
        );
        let mut keyed: Vec<GfVec> = Vec::with_capacity(n_dim);
        let mut one = GfVec::zeros(self.field, n_dim);
        one.set(0, 1);
        let mut xr = one.clone();
        for r in 0..tn {
            if r > 0 {
                xr = right_mul_one_plus(&xr, xi);
            }
            let mut ys = xr.clone();
            for s in 0..tm {
                if s > 0 {
                    ys = right_mul_one_plus(&ys, yi);
                }
                let mut zt = ys.clone();
                for t in 0..tl1 {
                    if t > 0 {
                        zt = right_mul_one_plus(&zt, zi);
                    }
                    keyed.push(zt.clone());
                    keyed.push(right_mul_one_plus(&zt, wi));
                }
            }
        }

        // Sort monomials by (weight, r, s, t, u); keep the key -> position map.
        let key = |mono: &JenningsMonomial| -> usize {
            ((((mono.r << p.m) | mono.s) << (p.l - 1) | mono.t) << 1 | mono.u) as usize
        };
        let mut monos: Vec<JenningsMonomial> = Vec::with_capacity(n_dim);
        for r in 0..tn {
            for s in 0..tm {
                for t in 0..tl1 {
                    for u in 0..2 {
                        monos.push(JenningsMonomial { r, s, t, u });
                    }
                }
            }
        }
        monos.sort_by_key(|mo| (mo.weight(q), mo.r, mo.s, mo.t, mo.u));
        let mut index = vec![0usize; n_dim];
        let mut expansions = Vec::with_capacity(n_dim);
        let mut weights = Vec::with_capacity(n_dim);
        for (pos, mo) in monos.iter().enumerate() {
            index[key(mo)] = pos;
            expansions.push(keyed[key(mo)].clone());
            weights.push(mo.weight(q));
        }

        let inv = invert_rows(self.field, &expansions)
            .expect("Jennings monomials form a basis of FG");
        let minv_rows = transpose_rows(self.field, &inv);
        JenningsBasis {
            q,
            monomials: monos,
            weights,
            expansions,
            minv_rows,
            index,
            key_shift: (p.m, p.l - 1),
        }
    }
}

impl JenningsBasis {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn monomials(&self) -> &[JenningsMonomial] {
        &self.monomials
    }

    pub fn weight_of_monomial(&self, i: usize) -> u64 {
        self.weights[i]
    }

    /// Position of the monomial with the given exponents.
    pub fn position(&self, r: u32, s: u32, t: u32, u: u32) -> usize {
        let (m, l1) = self.key_shift;
        self.index[((((r << m) | s) << l1 | t) << 1 | u) as usize]
    }

    /// Expansion of the monomial at a sorted position, over group coords.
    pub fn expansion(&self, i: usize) -> &GfVec {
        &self.expansions[i]
    }

    pub fn monomial_element(&self, alg: &Algebra, r: u32, s: u32, t: u32, u: u32) -> AlgebraElement {
        alg.from_vec(self.expansions[self.position(r, s, t, u)].clone())
    }

    /// Coordinates of an element in the monomial basis.
    pub fn coords(&self, u: &AlgebraElement) -> GfVec {
        let v = &u.coeffs;
        let mut out = GfVec::zeros(v.field(), v.len());
        for (i, row) in self.minv_rows.iter().enumerate() {
            let c = row.dot(v);
            if c != 0 {
                out.set(i, c);
            }
        }
        out
    }

    /// Minimal weight in the support of u; None for u = 0 (weight +infinity).
    pub fn weight(&self, u: &AlgebraElement) -> Option<u64> {
        let coords = self.coords(u);
        coords
            .support()
            .into_iter()
            .map(|i| self.weights[i])
            .min()
    }

    /// u in Delta^k (true for u = 0 at any k).
    pub fn in_ideal_power(&self, u: &AlgebraElement, k: u64) -> bool {
        self.weight(u).is_none_or(|w| w >= k)
    }

    /// Number of monomials of weight exactly k = dim Delta^k/Delta^(k+1).
    pub fn dim_layer(&self, k: u64) -> usize {
        // weights is sorted ascending.
        let lo = self.weights.partition_point(|&w| w < k);
        let hi = self.weights.partition_point(|&w| w <= k);
        hi - lo
    }

    pub fn max_weight(&self) -> u64 {
        *self.weights.last().expect("non-empty basis")
    }

    /// Echelonized span of the weight >= k monomials (the basis of Delta^k).
    pub fn weight_span(&self, field: crate::gf::FieldSpec, k: u64) -> Echelon {
        let lo = self.weights.partition_point(|&w| w < k);
        let mut e = Echelon::new(field, self.expansions[0].len());
        e.insert_all(self.expansions[lo..].iter().cloned());
        e
    }

    /// Truncate monomial coordinates to weights < cutoff (zero the rest).
    pub fn truncate_coords(&self, coords: &GfVec, cutoff: u64) -> GfVec {
        let mut out = coords.clone();
        let lo = self.weights.partition_point(|&w| w < cutoff);
        for i in lo..self.weights.len() {
            if out.get(i) != 0 {
                out.set(i, 0);
            }
        }
        out
    }
}

/// phi(alpha X + beta Y + Delta^2): the 2^m-th power map into
/// Delta^(2^m)/Delta^(1+2^m), returned as monomial coordinates truncated at
/// weight 1 + 2^m. Computed by honest powering; the closed form is a test
/// target, not the implementation.
pub fn phi_eval(alg: &Algebra, alpha: u8, beta: u8) -> Result<GfVec> {
    let basis = alg.jennings()?;
    let g = alg.group();
    let cap_x = basis.monomial_element(alg, 1, 0, 0, 0);
    let cap_y = basis.monomial_element(alg, 0, 1, 0, 0);
    let u = alg.add(&alg.scale(alpha, &cap_x), &alg.scale(beta, &cap_y));
    let p = alg.power(&u, 1u64 << g.params().m);
    let coords = basis.coords(&p);
    Ok(basis.truncate_coords(&coords, 1 + (1u64 << g.params().m)))
}

/// The closed form alpha^(2^m) X^(2^m) + beta^(2^m) Y^(2^m)
/// + (alpha beta)^(2^(m-1)) Z^(2^(m-1)), truncated the same way.
pub fn phi_closed_form(alg: &Algebra, alpha: u8, beta: u8) -> Result<GfVec> {
    let basis = alg.jennings()?;
    let f = alg.field();
    let m = alg.group().params().m;
    let cap_x = basis.monomial_element(alg, 1, 0, 0, 0);
    let cap_y = basis.monomial_element(alg, 0, 1, 0, 0);
    let cap_z = basis.monomial_element(alg, 0, 0, 1, 0);
    let two_m = 1u64 << m;
    let mut acc = alg.scale(f.pow(alpha, two_m), &alg.power(&cap_x, two_m));
    acc = alg.add(&acc, &alg.scale(f.pow(beta, two_m), &alg.power(&cap_y, two_m)));
    acc = alg.add(
        &acc,
        &alg.scale(
            f.pow(f.mul(alpha, beta), two_m / 2),
            &alg.power(&cap_z, two_m / 2),
        ),
    );
    let coords = basis.coords(&acc);
    Ok(basis.truncate_coords(&coords, 1 + two_m))
}

/// |K(G)|: the number of (alpha, beta) in F^2 with phi = 0.
pub fn phi_kernel_size(alg: &Algebra) -> Result<u64> {
    let f = alg.field();
    let mut count = 0u64;
    for alpha in f.elements() {
        for beta in f.elements() {
            if phi_eval(alg, alpha, beta)?.is_zero() {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Independent oracle: Delta^k as the span of k-fold products of the left
/// ideal generators, Delta = FG·X + FG·Y. Returns the spans for
/// k = 0, 1, ..., k_max in one pass; used to validate the weight basis.
pub fn delta_product_spans(alg: &Algebra, k_max: u32) -> Vec<Echelon> {
    let g = alg.group();
    let n = alg.dim();
    let (xi, yi) = (g.idx(g.x()), g.idx(g.y()));
    let gen_from = |b: &GfVec, h: u32, e: u32| -> GfVec {
        // (b h)(1 + e): right-translate by h then right-multiply by 1 + e.
        let mut bh = GfVec::zeros(alg.field(), n);
        for i in b.support() {
            bh.add_at(g.mul_idx(i as u32, h) as usize, b.get(i));
        }
        let mut out = bh.clone();
        for i in bh.support() {
            out.add_at(g.mul_idx(i as u32, e) as usize, bh.get(i));
        }
        out
    };
    let mut one = GfVec::zeros(alg.field(), n);
    one.set(0, 1);
    let mut span = Echelon::new(alg.field(), n);
    span.insert(one);
    let mut out = vec![span];
    for k in 1..=k_max {
        let prev = &out[k as usize - 1];
        let mut next = Echelon::new(alg.field(), n);
        for b in prev.rows() {
            for h in 0..n as u32 {
                next.insert(gen_from(b, h, xi));
                next.insert(gen_from(b, h, yi));
            }
        }
        out.push(next);
        if out[k as usize].rank() == 0 {
            break;
        }
    }
    out
}
