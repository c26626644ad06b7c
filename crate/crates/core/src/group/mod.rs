//! Exact arithmetic in the two-generated 2-groups with dihedral central
//! quotient.
//!
//! Elements are normal forms x^a y^b z^c with 0 <= a < 2^n, 0 <= b < 2^m,
//! 0 <= c < 2^l. Multiplication is a closed-form collector for the relations
//! [y, x] = z, z^x = z^-1, z^y = z^-1 plus the power-folding rules
//! x^(2^n) = z^(r*2^(l-1)) and y^(2^m) = x^(s*2^m) z^(t*2^(l-1)).

pub mod classes;
pub mod concrete;
pub mod iso;
pub mod params;
pub mod subgroups;

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
pub use params::{reduce_theta, Family, GroupParams, Mode, Theta, FAMILIES};
use subgroups::SubgroupData;

/// Normal-form exponent triple (a, b, c), meaning x^a y^b z^c.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupElement {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { a: 0, b: 0, c: 0 };

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

impl std::fmt::Display for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "x^{} y^{} z^{}", self.a, self.b, self.c)
    }
}

/// Minimal multiplicative interface shared by parametrized groups and coset
/// table groups; element handles are dense indices 0..order with 0 = identity.
pub trait GroupLike {
    fn order(&self) -> usize;
    fn mul_idx(&self, a: u32, b: u32) -> u32;

    fn pow_idx(&self, g: u32, mut e: u64) -> u32 {
        let mut base = g;
        let mut acc = 0u32; // identity
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_idx(acc, base);
            }
            base = self.mul_idx(base, base);
            e >>= 1;
        }
        acc
    }

    /// Least power of two 2^e with g^(2^e) = 1.
    fn order_of_idx(&self, g: u32) -> u64 {
        let mut t = g;
        let mut ord = 1u64;
        while t != 0 {
            t = self.mul_idx(t, t);
            ord *= 2;
            debug_assert!(ord as usize <= 2 * self.order());
        }
        ord
    }

    fn inv_idx(&self, g: u32) -> u32 {
        self.pow_idx(g, self.order_of_idx(g) - 1)
    }

    /// Commutator [g, h] = g^-1 h^-1 g h.
    fn comm_idx(&self, g: u32, h: u32) -> u32 {
        let gi = self.inv_idx(g);
        let hi = self.inv_idx(h);
        self.mul_idx(self.mul_idx(gi, hi), self.mul_idx(g, h))
    }

    /// Conjugate g^h = h^-1 g h.
    fn conj_idx(&self, g: u32, h: u32) -> u32 {
        self.mul_idx(self.mul_idx(self.inv_idx(h), g), h)
    }
}

/// One group G_theta(n, m, l), immutable after construction. Landmark
/// subgroups and the class partition are computed lazily and cached.
pub struct Group {
    params: GroupParams,
    two_n: u32,
    two_m: u32,
    two_l: u32,
    order: u64,
    pub(crate) center_cache: OnceLock<SubgroupData>,
    pub(crate) derived_cache: OnceLock<SubgroupData>,
    pub(crate) frattini_cache: OnceLock<SubgroupData>,
    pub(crate) socle_cache: OnceLock<SubgroupData>,
    pub(crate) classes_cache: OnceLock<Vec<Vec<u32>>>,
    inv_cache: OnceLock<Vec<u32>>,
}

impl Group {
    /// Construct the group and validate the structural claims that back all
    /// later computation: |G| = 2^(n+m+l), the derived subgroup is cyclic of
    /// order 2^l generated by z, and (for l >= 2) the central quotient is
    /// dihedral of order 2^(l+1).
    pub fn new(params: GroupParams) -> Result<Group> {
        let g = Group {
            params,
            two_n: 1u32 << params.n,
            two_m: 1u32 << params.m,
            two_l: 1u32 << params.l,
            order: params.order(),
            center_cache: OnceLock::new(),
            derived_cache: OnceLock::new(),
            frattini_cache: OnceLock::new(),
            socle_cache: OnceLock::new(),
            classes_cache: OnceLock::new(),
            inv_cache: OnceLock::new(),
        };
        g.validate()?;
        Ok(g)
    }

    pub fn params(&self) -> &GroupParams {
        &self.params
    }

    pub fn group_order(&self) -> u64 {
        self.order
    }

    pub fn family(&self) -> Option<Family> {
        self.params.family
    }

    pub fn x(&self) -> GroupElement {
        GroupElement { a: 1, b: 0, c: 0 }
    }

    pub fn y(&self) -> GroupElement {
        GroupElement { a: 0, b: 1, c: 0 }
    }

    pub fn z(&self) -> GroupElement {
        GroupElement { a: 0, b: 0, c: 1 }
    }

    /// The central involution w = z^(2^(l-1)).
    pub fn w(&self) -> GroupElement {
        GroupElement {
            a: 0,
            b: 0,
            c: self.two_l / 2,
        }
    }

    pub fn contains(&self, g: GroupElement) -> bool {
        g.a < self.two_n && g.b < self.two_m && g.c < self.two_l
    }

    pub fn idx(&self, g: GroupElement) -> u32 {
        debug_assert!(self.contains(g));
        (g.a << (self.params.m + self.params.l)) | (g.b << self.params.l) | g.c
    }

    pub fn elem(&self, idx: u32) -> GroupElement {
        GroupElement {
            a: idx >> (self.params.m + self.params.l),
            b: (idx >> self.params.l) & (self.two_m - 1),
            c: idx & (self.two_l - 1),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order as u32).map(|i| self.elem(i))
    }

    /// Normal form of the product gh.
    pub fn multiply(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        debug_assert!(self.contains(g) && self.contains(h));
        // Collect x^a1 y^b1 z^c1 x^a2 y^b2 z^c2: moving z^c1 past x^a2 flips
        // its sign per parity of a2; moving y^b1 past x^a2 emits z^(b1*a2 mod 2);
        // the accumulated z-power then flips past y^b2.
        let cross = (g.b & h.a & 1) as i64;
        let sign_a = if h.a & 1 == 1 { -1i64 } else { 1 };
        let sign_b = if h.b & 1 == 1 { -1i64 } else { 1 };
        let mut c = (cross + g.c as i64 * sign_a) * sign_b + h.c as i64;
        let mut a = g.a + h.a;
        let mut b = g.b + h.b;
        let half_l = (self.two_l / 2) as i64;
        if b >= self.two_m {
            b -= self.two_m;
            a += (self.params.theta.s as u32) << self.params.m;
            c += self.params.theta.t as i64 * half_l;
        }
        while a >= self.two_n {
            a -= self.two_n;
            c += self.params.theta.r as i64 * half_l;
        }
        GroupElement {
            a,
            b,
            c: c.rem_euclid(self.two_l as i64) as u32,
        }
    }

    pub fn power(&self, g: GroupElement, e: i64) -> GroupElement {
        if e >= 0 {
            self.elem(self.pow_idx(self.idx(g), e as u64))
        } else {
            let inv = self.inverse(g);
            self.elem(self.pow_idx(self.idx(inv), (-e) as u64))
        }
    }

    pub fn inverse(&self, g: GroupElement) -> GroupElement {
        self.elem(self.inv_idx(self.idx(g)))
    }

    /// [g, h] = g^-1 h^-1 g h.
    pub fn commutator(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        self.elem(self.comm_idx(self.idx(g), self.idx(h)))
    }

    /// g^h = h^-1 g h.
    pub fn conjugate(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        self.elem(self.conj_idx(self.idx(g), self.idx(h)))
    }

    /// Least power of two 2^e with g^(2^e) = 1.
    pub fn element_order(&self, g: GroupElement) -> u64 {
        self.order_of_idx(self.idx(g))
    }

    /// Frattini-quotient coordinates (a mod 2, b mod 2). Since
    /// Frat(G) = <x^2, y^2, z> has index 4, a pair generates G exactly when
    /// the images form a basis of C2 x C2 (Burnside basis theorem).
    pub fn frattini_image(&self, g: u32) -> u8 {
        let e = self.elem(g);
        ((e.a & 1) | ((e.b & 1) << 1)) as u8
    }

    pub fn generates(&self, g: u32, h: u32) -> bool {
        let (ig, ih) = (self.frattini_image(g), self.frattini_image(h));
        ig != 0 && ih != 0 && ig != ih
    }

    fn validate(&self) -> Result<()> {
        let x = self.x();
        let y = self.y();
        let z = self.z();
        // Defining relations in the constructed normal forms.
        let rel = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidParams(format!(
                    "construction self-check failed: {what} in {}",
                    self.params.label()
                )))
            }
        };
        let half = (self.two_l / 2) as i64;
        rel(
            self.power(x, self.two_n as i64)
                == self.power(z, self.params.theta.r as i64 * half),
            "x^(2^n) = z^(r*2^(l-1))",
        )?;
        let rhs = self.multiply(
            self.power(x, (self.params.theta.s << self.params.m) as i64),
            self.power(z, self.params.theta.t as i64 * half),
        );
        rel(self.power(y, self.two_m as i64) == rhs, "y^(2^m) relation")?;
        rel(
            self.power(z, self.two_l as i64).is_identity(),
            "z^(2^l) = 1",
        )?;
        rel(self.commutator(y, x) == z, "[y, x] = z")?;
        rel(self.commutator(z, x) == self.power(z, -2), "[z, x] = z^-2")?;
        rel(self.commutator(z, y) == self.power(z, -2), "[z, y] = z^-2")?;
        // x^2 and y^2 are central.
        let x2 = self.multiply(x, x);
        let y2 = self.multiply(y, y);
        for s in [x2, y2] {
            rel(
                self.multiply(s, x) == self.multiply(x, s)
                    && self.multiply(s, y) == self.multiply(y, s),
                "squares of generators central",
            )?;
        }
        // Derived subgroup is <z>, cyclic of order 2^l, and meets the center
        // in <w> of order 2.
        let derived = self.derived();
        rel(
            derived.order() == self.two_l as usize
                && derived.contains(self, z)
                && self.element_order(z) == self.two_l as u64,
            "derived subgroup cyclic of order 2^l generated by z",
        )?;
        if self.params.l >= 2 {
            let center = self.center();
            let dz: Vec<u32> = derived
                .element_indices()
                .iter()
                .filter(|i| center.element_indices().contains(i))
                .copied()
                .collect();
            rel(dz.len() == 2, "D(G) meets Z(G) in a group of order 2")?;
            // Central quotient is dihedral of order 2^(l+1).
            let q = concrete::ConcreteGroup::quotient(self, center.element_indices())?;
            rel(
                q.order() as u64 * center.order() as u64 == self.order,
                "|Z(G)| * |G/Z(G)| = |G|",
            )?;
            let dihedral = iso::Presentation::MaximalClass {
                kind: iso::MaxClassKind::Dihedral,
                log2_order: self.params.l + 1,
            };
            rel(
                iso::matches_presentation(&q, &dihedral),
                "central quotient dihedral of order 2^(l+1)",
            )?;
        }
        Ok(())
    }

    /// Centralizer of a set of elements.
    pub fn centralizer(&self, set: &[GroupElement]) -> SubgroupData {
        let members: Vec<u32> = (0..self.order as u32)
            .filter(|&g| {
                set.iter().all(|&s| {
                    let si = self.idx(s);
                    self.mul_idx(g, si) == self.mul_idx(si, g)
                })
            })
            .collect();
        SubgroupData::from_indices(self, members)
    }
}

impl GroupLike for Group {
    fn order(&self) -> usize {
        self.order as usize
    }

    fn mul_idx(&self, a: u32, b: u32) -> u32 {
        self.idx(self.multiply(self.elem(a), self.elem(b)))
    }

    fn inv_idx(&self, g: u32) -> u32 {
        self.inv_cache.get_or_init(|| {
            (0..self.order as u32)
                .map(|e| self.pow_idx(e, self.order_of_idx(e) - 1))
                .collect()
        })[g as usize]
    }
}

/// Convenience constructor: canonical family group in standard mode.
pub fn make_group(params: GroupParams) -> Result<Group> {
    Group::new(params)
}
