use std::ops::{Add, Mul, Sub};

use crate::C64;

/// Complex polynomial in a real variable, ascending coefficients.
///
/// Always kept canonical: the last stored coefficient is nonzero, and the
/// zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComplexPolynomial {
    coeffs: Vec<C64>,
}

impl ComplexPolynomial {
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == C64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C64::new(1.0, 0.0))
    }

    pub fn constant(c: C64) -> Self {
        Self::new(vec![c])
    }

    /// `c·x^k`.
    pub fn monomial(c: C64, k: usize) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> C64 {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn eval(&self, x: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * x + c)
    }

    pub fn eval_real(&self, x: f64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * x + c)
    }

    /// Exact derivative.
    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect())
    }

    pub fn mul_x(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(C64::new(0.0, 0.0));
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Polynomial with conjugated coefficients; equals `conj(p(x))` for real `x`.
    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }
}

impl Add for &ComplexPolynomial {
    type Output = ComplexPolynomial;
    fn add(self, rhs: Self) -> ComplexPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &ComplexPolynomial, k: usize| p.coeffs.get(k).copied().unwrap_or_default();
        ComplexPolynomial::new((0..len).map(|k| get(self, k) + get(rhs, k)).collect())
    }
}

impl Sub for &ComplexPolynomial {
    type Output = ComplexPolynomial;
    fn sub(self, rhs: Self) -> ComplexPolynomial {
        self + &rhs.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul for &ComplexPolynomial {
    type Output = ComplexPolynomial;
    fn mul(self, rhs: Self) -> ComplexPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return ComplexPolynomial::zero();
        }
        let mut out = vec![C64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (j, a) in self.coeffs.iter().enumerate() {
            for (k, b) in rhs.coeffs.iter().enumerate() {
                out[j + k] += a * b;
            }
        }
        ComplexPolynomial::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn canonical_form_trims_trailing_zeros() {
        let p = ComplexPolynomial::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(p.degree(), Some(0));
        assert!(ComplexPolynomial::new(vec![c(0.0, 0.0)]).is_zero());
        assert_eq!(ComplexPolynomial::zero().degree(), None);
    }

    #[test]
    fn derivative_and_eval() {
        // p = 4x² + 2i
        let p = ComplexPolynomial::new(vec![c(0.0, 2.0), c(0.0, 0.0), c(4.0, 0.0)]);
        assert_eq!(p.derivative().coeffs(), &[c(0.0, 0.0), c(8.0, 0.0)]);
        assert_eq!(p.eval_real(1.5), c(9.0, 2.0));
        assert_eq!(p.eval(c(0.0, 1.0)), c(-4.0, 2.0));
        assert!(ComplexPolynomial::one().derivative().is_zero());
    }

    fn arb_poly() -> impl Strategy<Value = ComplexPolynomial> {
        prop::collection::vec((-3.0..3.0, -3.0..3.0), 0..6)
            .prop_map(|v| ComplexPolynomial::new(v.into_iter().map(|(a, b)| C64::new(a, b)).collect()))
    }

    proptest! {
        #[test]
        fn product_evaluates_pointwise(p in arb_poly(), q in arb_poly(), x in -2.0..2.0f64) {
            let lhs = (&p * &q).eval_real(x);
            let rhs = p.eval_real(x) * q.eval_real(x);
            prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
        }

        #[test]
        fn leibniz_rule(p in arb_poly(), q in arb_poly()) {
            let lhs = (&p * &q).derivative();
            let rhs = &(&p.derivative() * &q) + &(&p * &q.derivative());
            let diff = &lhs - &rhs;
            prop_assert!(diff.coeffs().iter().all(|z| z.norm() <= 1e-10));
        }

        #[test]
        fn conj_matches_pointwise_conjugate(p in arb_poly(), x in -2.0..2.0f64) {
            prop_assert!((p.conj().eval_real(x) - p.eval_real(x).conj()).norm() <= 1e-12);
        }
    }
}
