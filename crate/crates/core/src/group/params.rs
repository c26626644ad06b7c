//! Parameters identifying one group of the six families.
//!
//! A group is described by exponents (n, m, l) with n >= m >= 1 and by
//! theta = (r, s, t) encoding the power relations
//! `x^(2^n) = z^(r*2^(l-1))` and `y^(2^m) = x^(s*2^m) * z^(t*2^(l-1))`.
//! The six family labels D1..D6 name the canonical cells of the theta
//! partition; `reduce_theta` maps an arbitrary admissible theta to its cell.

use serde::Serialize;

use crate::error::{Error, Result};

/// Family label of a canonical presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    D1,
    D2,
    D3,
    D4,
    D5,
    D6,
}

pub const FAMILIES: [Family; 6] = [
    Family::D1,
    Family::D2,
    Family::D3,
    Family::D4,
    Family::D5,
    Family::D6,
];

impl Family {
    /// Canonical theta of the family's presentation:
    /// D1 (0,0,0), D2 (0,1,0), D3 (0,0,1), D4 (0,1,1), D5 (1,0,0), D6 (1,1,0).
    pub fn theta(&self) -> Theta {
        match self {
            Family::D1 => Theta { r: 0, s: 0, t: 0 },
            Family::D2 => Theta { r: 0, s: 1, t: 0 },
            Family::D3 => Theta { r: 0, s: 0, t: 1 },
            Family::D4 => Theta { r: 0, s: 1, t: 1 },
            Family::D5 => Theta { r: 1, s: 0, t: 0 },
            Family::D6 => Theta { r: 1, s: 1, t: 0 },
        }
    }

    pub fn index(&self) -> u8 {
        match self {
            Family::D1 => 1,
            Family::D2 => 2,
            Family::D3 => 3,
            Family::D4 => 4,
            Family::D5 => 5,
            Family::D6 => 6,
        }
    }

    pub fn from_index(i: u8) -> Result<Family> {
        FAMILIES
            .get(i.wrapping_sub(1) as usize)
            .copied()
            .ok_or_else(|| Error::InvalidParams(format!("family index {i} not in 1..=6")))
    }

    /// Canonical at (n, m): the labels D2 and D4 require n > m (their theta
    /// has s = 1, which collapses onto D1 resp. D3 when n = m).
    pub fn canonical_at(&self, n: u32, m: u32) -> bool {
        n > m || !matches!(self, Family::D2 | Family::D4)
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "D{}", self.index())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        let t = s.trim().trim_start_matches(['d', 'D']);
        let i: u8 = t
            .parse()
            .map_err(|_| Error::InvalidParams(format!("cannot parse family label {s:?}")))?;
        Family::from_index(i)
    }
}

/// Power-relation parameters (r, s, t).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Theta {
    pub r: u8,
    pub s: u64,
    pub t: u8,
}

/// Construction mode: `Degenerate` additionally admits l = 1, where the
/// central quotient stops being dihedral and family labels may coincide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Mode {
    Standard,
    Degenerate,
}

/// Full description of one group: theta, the exponents and the optional
/// family label. Order is 2^(n+m+l).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupParams {
    pub family: Option<Family>,
    pub theta: Theta,
    pub n: u32,
    pub m: u32,
    pub l: u32,
    pub mode: Mode,
}

/// Order cap for constructible groups; keeps element indices comfortably in
/// `u32` and enumeration-based validation cheap.
pub const MAX_LOG_ORDER: u32 = 20;

fn check_exponents(n: u32, m: u32, l: u32, mode: Mode) -> Result<()> {
    if n == 0 || m == 0 || n < m {
        return Err(Error::InvalidParams(format!(
            "need n >= m >= 1, got n = {n}, m = {m}"
        )));
    }
    match mode {
        Mode::Standard if l < 2 => Err(Error::DegenerateMode(format!(
            "l = {l}; standard mode needs l >= 2"
        ))),
        _ if l == 0 => Err(Error::InvalidParams("l must be positive".into())),
        _ if n + m + l > MAX_LOG_ORDER => Err(Error::InvalidParams(format!(
            "order 2^{} exceeds the construction cap 2^{MAX_LOG_ORDER}",
            n + m + l
        ))),
        _ => Ok(()),
    }
}

impl GroupParams {
    /// Canonical family presentation. Rejects D2/D4 when n = m.
    pub fn family(family: Family, n: u32, m: u32, l: u32) -> Result<Self> {
        Self::family_in_mode(family, n, m, l, Mode::Standard)
    }

    pub fn family_in_mode(family: Family, n: u32, m: u32, l: u32, mode: Mode) -> Result<Self> {
        check_exponents(n, m, l, mode)?;
        if !family.canonical_at(n, m) {
            return Err(Error::NonCanonical(format!(
                "{family} requires n > m (s must be 0 when n = m)"
            )));
        }
        Ok(GroupParams {
            family: Some(family),
            theta: family.theta(),
            n,
            m,
            l,
            mode,
        })
    }

    /// Presented group for any family label, canonical or not. Used for
    /// isomorphism experiments such as D2(n, n, l), which is the same group
    /// as D1(n, n, l); the params carry no canonicity claim.
    pub fn presented(family: Family, n: u32, m: u32, l: u32, mode: Mode) -> Result<Self> {
        check_exponents(n, m, l, mode)?;
        Ok(GroupParams {
            family: Some(family),
            theta: family.theta(),
            n,
            m,
            l,
            mode,
        })
    }

    /// Raw theta in the admissible range 0 <= r, t <= 1, 0 <= s <= 2^(n-m)-1.
    pub fn from_theta(theta: Theta, n: u32, m: u32, l: u32) -> Result<Self> {
        Self::from_theta_in_mode(theta, n, m, l, Mode::Standard)
    }

    pub fn from_theta_in_mode(theta: Theta, n: u32, m: u32, l: u32, mode: Mode) -> Result<Self> {
        check_exponents(n, m, l, mode)?;
        check_theta(theta, n, m)?;
        Ok(GroupParams {
            family: None,
            theta,
            n,
            m,
            l,
            mode,
        })
    }

    pub fn order(&self) -> u64 {
        1u64 << (self.n + self.m + self.l)
    }

    pub fn is_canonical(&self) -> bool {
        match self.family {
            Some(f) => f.canonical_at(self.n, self.m) && self.theta == f.theta(),
            None => false,
        }
    }

    pub fn label(&self) -> String {
        match self.family {
            Some(f) => format!("{f}({},{},{})", self.n, self.m, self.l),
            None => format!(
                "G[{},{},{}]({},{},{})",
                self.theta.r, self.theta.s, self.theta.t, self.n, self.m, self.l
            ),
        }
    }
}

fn check_theta(theta: Theta, n: u32, m: u32) -> Result<()> {
    let s_max = (1u64 << (n - m)) - 1;
    if theta.r > 1 || theta.t > 1 || theta.s > s_max {
        return Err(Error::ThetaOutOfRange(format!(
            "theta = ({}, {}, {}) outside 0..=1 x 0..={s_max} x 0..=1",
            theta.r, theta.s, theta.t
        )));
    }
    Ok(())
}

/// Map an admissible theta to its family label and canonical parameters:
/// G_theta is isomorphic to G_(r, s mod 2, (1-r)t), except that for n = m
/// and theta = (1, 0, 1) it is isomorphic to G_(1, 1, 0), i.e. D6.
pub fn reduce_theta(theta: Theta, n: u32, m: u32, l: u32) -> Result<(Family, GroupParams)> {
    check_exponents(n, m, l, Mode::Standard)?;
    check_theta(theta, n, m)?;
    let s0 = (theta.s & 1) as u8;
    let family = if n == m && theta == (Theta { r: 1, s: 0, t: 1 }) {
        Family::D6
    } else {
        let t0 = (1 - theta.r) * theta.t;
        match (theta.r, s0, t0) {
            (0, 0, 0) => Family::D1,
            (0, 1, 0) => Family::D2,
            (0, 0, 1) => Family::D3,
            (0, 1, 1) => Family::D4,
            (1, 0, 0) => Family::D5,
            (1, 1, 0) => Family::D6,
            _ => unreachable!("r, s0, t0 are all 0/1 and r = 1 forces t0 = 0"),
        }
    };
    let params = GroupParams::presented(family, n, m, l, Mode::Standard)?;
    Ok((family, params))
}
