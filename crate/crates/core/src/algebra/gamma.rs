//! The relative augmentation ideal Gamma = Delta(D(G)) FG = Z·FG and the
//! 2^(l-1)-power map psi: Gamma/Gamma^2 -> Gamma^(2^(l-1)) / (Gamma^(1+2^(l-1)) + Delta^d)
//! with d = 1 + 2^(l-1) + q.

use std::sync::Arc;

use super::jennings::JenningsBasis;
use super::{Algebra, AlgebraElement};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, GfVec};

/// Positions (in the sorted Jennings order) of the monomials spanning Gamma:
/// those with 2t + q u >= 1.
pub fn gamma_monomial_positions(basis: &JenningsBasis) -> Vec<usize> {
    basis
        .monomials()
        .iter()
        .enumerate()
        .filter(|(_, mo)| 2 * mo.t + mo.u >= 1)
        .map(|(i, _)| i)
        .collect()
}

/// Echelonized span of the Gamma monomial basis.
pub fn gamma_monomial_span(alg: &Algebra) -> Result<Echelon> {
    let basis = alg.jennings()?;
    let mut e = Echelon::new(alg.field(), alg.dim());
    for i in gamma_monomial_positions(basis) {
        e.insert(basis.expansion(i).clone());
    }
    Ok(e)
}

/// Context for evaluating psi: membership test for Gamma and the canonical
/// reduction modulo Gamma^(1+2^(l-1)) + Delta^d.
pub struct PsiContext {
    ell_pow: u64, // 2^(l-1)
    gamma: Arc<Echelon>,
    modulus: Echelon,
}

impl PsiContext {
    pub fn new(alg: &Algebra) -> Result<PsiContext> {
        let p = alg.group().params();
        if p.l < 2 {
            return Err(Error::JenningsUnavailable(
                "psi needs l >= 2".into(),
            ));
        }
        let basis = alg.jennings()?;
        let q = basis.q();
        let ell_pow = 1u64 << (p.l - 1);
        let d = 1 + ell_pow + q;
        let gamma = alg.gamma_power_span(1);
        let gamma_high = alg.gamma_power_span(1 + ell_pow as u32);
        let mut modulus = Echelon::new(alg.field(), alg.dim());
        for row in gamma_high.rows() {
            modulus.insert(row.clone());
        }
        // Delta^d from the weight basis.
        let lo = basis
            .monomials()
            .iter()
            .enumerate()
            .filter(|(i, _)| basis.weight_of_monomial(*i) >= d)
            .map(|(i, _)| i);
        for i in lo {
            modulus.insert(basis.expansion(i).clone());
        }
        Ok(PsiContext {
            ell_pow,
            gamma,
            modulus,
        })
    }

    pub fn modulus(&self) -> &Echelon {
        &self.modulus
    }

    /// psi(u + Gamma^2) = u^(2^(l-1)) reduced to the canonical representative
    /// modulo Gamma^(1+2^(l-1)) + Delta^d. Errors when u lies outside Gamma.
    pub fn eval(&self, alg: &Algebra, u: &AlgebraElement) -> Result<GfVec> {
        if !self.gamma.contains(u.coeffs()) {
            return Err(Error::NotInSubspace(
                "psi input must lie in Gamma = Z·FG".into(),
            ));
        }
        let p = alg.power(u, self.ell_pow);
        Ok(self.modulus.reduce(p.coeffs()))
    }

    /// The display lambda^(2^(l-1)) W + mu^(2^(l-1)) X^(2^(l-1)) W
    /// + nu^(2^(l-1)) Y^(2^(l-1)) W, reduced the same way.
    pub fn closed_form(&self, alg: &Algebra, lambda: u8, mu: u8, nu: u8) -> Result<GfVec> {
        let basis = alg.jennings()?;
        let f = alg.field();
        let w = basis.monomial_element(alg, 0, 0, 0, 1);
        let xw = {
            let x = basis.monomial_element(alg, 1, 0, 0, 0);
            alg.mul(&alg.power(&x, self.ell_pow), &w)
        };
        let yw = {
            let y = basis.monomial_element(alg, 0, 1, 0, 0);
            alg.mul(&alg.power(&y, self.ell_pow), &w)
        };
        let mut acc = alg.scale(f.pow(lambda, self.ell_pow), &w);
        acc = alg.add(&acc, &alg.scale(f.pow(mu, self.ell_pow), &xw));
        acc = alg.add(&acc, &alg.scale(f.pow(nu, self.ell_pow), &yw));
        Ok(self.modulus.reduce(acc.coeffs()))
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::gf::FieldSpec;
    use crate::group::{Family, Group, GroupParams};

    fn alg(family: Family, n: u32, m: u32, l: u32, k: u8) -> Arc<Algebra> {
        let g = Group::new(GroupParams::family(family, n, m, l).unwrap()).unwrap();
        Algebra::new(Arc::new(g), FieldSpec::new(k).unwrap())
    }

    #[test]
    fn gamma_monomial_span_equals_ideal_span() {
        let a = alg(Family::D3, 2, 2, 2, 1);
        let from_monomials = gamma_monomial_span(&a).unwrap();
        let from_products = a.gamma_power_span(1);
        assert!(from_monomials.same_span(&from_products));
    }

    #[test]
    fn psi_basic_images() {
        let a = alg(Family::D5, 3, 2, 2, 1);
        let ctx = PsiContext::new(&a).unwrap();
        let basis = a.jennings().unwrap();
        let z = basis.monomial_element(&a, 0, 0, 1, 0);
        // psi(Z) = W modulo the modulus space.
        let got = ctx.eval(&a, &z).unwrap();
        let expect = ctx.closed_form(&a, 1, 0, 0).unwrap();
        assert_eq!(got, expect);
        assert!(!got.is_zero());
        // psi(XZ) = X^(2^(l-1)) W + ...
        let xz = basis.monomial_element(&a, 1, 0, 1, 0);
        let got = ctx.eval(&a, &xz).unwrap();
        let expect = ctx.closed_form(&a, 0, 1, 0).unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn psi_rejects_non_gamma_input() {
        let a = alg(Family::D5, 3, 2, 2, 1);
        let ctx = PsiContext::new(&a).unwrap();
        let basis = a.jennings().unwrap();
        let x = basis.monomial_element(&a, 1, 0, 0, 0);
        assert!(ctx.eval(&a, &x).is_err());
    }
}
