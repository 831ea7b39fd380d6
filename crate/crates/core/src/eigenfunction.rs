//! Coordinate-space eigenfunctions `ψₙʳ`, `ψₙˡ`.
//!
//! Every function here has the shape `c · P(x) · e^{s·i·x²/2}` with `s = −1`
//! for kets and `s = +1` for bras. With `p = −i d/dx` the generators act as
//!
//! * `â₋ = √(i/2)(x − i d/dx)`: lowers kets, raises bras,
//! * `â₊ = √(i/2)(x + i d/dx)`: raises kets, lowers bras,
//!
//! and both map the shape to itself, so everything stays exact polynomial
//! arithmetic.

use std::f64::consts::PI;

use crate::poly::ComplexPolynomial;
use crate::{sqrt_half_i, Family, C64, I};

/// Which of the two boson generators to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Minus,
    Plus,
}

/// Ladder phase `c` of the bra family, `â₊ψₙˡ = c·√n·ψₙ₋₁ˡ`, fixed by the
/// normalization chosen when raising bras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BraPhase {
    /// `c = +i`: each bra raising step divides by `i√(n+1)`. The dual Gram
    /// matrix is the identity and `ψₙˡ = conj(ψₙʳ)` on the real line.
    #[default]
    PlusI,
    /// `c = −i`: each step divides by `−i√(n+1)`, matching the bra ladder
    /// coefficients of the Fock representation. Gram diagonal is `(−1)ⁿ`.
    MinusI,
}

impl BraPhase {
    pub fn ladder_coefficient(self) -> C64 {
        match self {
            BraPhase::PlusI => I,
            BraPhase::MinusI => -I,
        }
    }
}

/// `prefactor · poly(x) · e^{gauss_sign·i·x²/2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianPhaseFunction {
    pub poly: ComplexPolynomial,
    pub prefactor: C64,
    /// −1 for kets, +1 for bras.
    pub gauss_sign: i8,
}

impl GaussianPhaseFunction {
    pub fn evaluate(&self, x: f64) -> C64 {
        let phase = C64::from_polar(1.0, f64::from(self.gauss_sign) * x * x / 2.0);
        self.prefactor * self.poly.eval_real(x) * phase
    }

    /// `√(i/2)(x ± i d/dx)` applied exactly.
    ///
    /// With `f = P e^{g i x²/2}` and `(x + s i d/dx)` this is
    /// `((1 − s g) x P + s i P′) e^{g i x²/2}`.
    pub fn apply(&self, generator: Generator) -> Self {
        let s = match generator {
            Generator::Minus => -1.0,
            Generator::Plus => 1.0,
        };
        let g = f64::from(self.gauss_sign);
        let x_part = self.poly.mul_x().scale(C64::new(1.0 - s * g, 0.0));
        let d_part = self.poly.derivative().scale(I * s);
        Self {
            poly: &x_part + &d_part,
            prefactor: self.prefactor * sqrt_half_i(),
            gauss_sign: self.gauss_sign,
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            poly: self.poly.clone(),
            prefactor: self.prefactor * c,
            gauss_sign: self.gauss_sign,
        }
    }
}

/// `n`-th eigenfunction of one family. `poly` is kept unnormalized with
/// leading coefficient `2ⁿ`; all constants live in `prefactor`.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenfunction {
    pub family: Family,
    pub n: usize,
    pub bra_phase: BraPhase,
    pub shape: GaussianPhaseFunction,
}

impl Eigenfunction {
    pub fn poly(&self) -> &ComplexPolynomial {
        &self.shape.poly
    }

    pub fn prefactor(&self) -> C64 {
        self.shape.prefactor
    }

    pub fn gauss_sign(&self) -> i8 {
        self.shape.gauss_sign
    }

    pub fn evaluate(&self, x: f64) -> C64 {
        self.shape.evaluate(x)
    }

    /// Generator that lowers this family.
    pub fn lowering_generator(&self) -> Generator {
        match self.family {
            Family::Ket => Generator::Minus,
            Family::Bra => Generator::Plus,
        }
    }

    /// Generator that raises this family.
    pub fn raising_generator(&self) -> Generator {
        match self.family {
            Family::Ket => Generator::Plus,
            Family::Bra => Generator::Minus,
        }
    }

    /// Ratio `ψₙˡ(x) / conj(ψₙʳ(x))` for real `x`; a bra-family method.
    pub fn conjugation_factor(n: usize, bra_phase: BraPhase) -> C64 {
        let bra = eigenfunction_with_phase(Family::Bra, n, bra_phase);
        let ket = eigenfunction(Family::Ket, n);
        bra.prefactor() / ket.prefactor().conj()
    }
}

/// `(i/π)^¼ e^{−ix²/2}` for kets, `(−i/π)^¼ e^{+ix²/2}` for bras.
pub fn generating_function(family: Family) -> Eigenfunction {
    generating_function_with_phase(family, BraPhase::default())
}

fn generating_function_with_phase(family: Family, bra_phase: BraPhase) -> Eigenfunction {
    let (prefactor, gauss_sign) = match family {
        Family::Ket => ((I / PI).powf(0.25), -1),
        Family::Bra => ((-I / PI).powf(0.25), 1),
    };
    Eigenfunction {
        family,
        n: 0,
        bra_phase,
        shape: GaussianPhaseFunction {
            poly: ComplexPolynomial::one(),
            prefactor,
            gauss_sign,
        },
    }
}

/// One normalized raising step: ket `P ← 2xP + iP′`, bra `Q ← 2xQ − iQ′`,
/// prefactor times `√(i/2)/√(n+1)` (ket) or `√(i/2)/(c√(n+1))` (bra).
pub fn raise_once(f: &Eigenfunction) -> Eigenfunction {
    let next = f.n + 1;
    let divisor = match f.family {
        Family::Ket => C64::new(1.0, 0.0),
        Family::Bra => f.bra_phase.ladder_coefficient(),
    } * (next as f64).sqrt();
    Eigenfunction {
        family: f.family,
        n: next,
        bra_phase: f.bra_phase,
        shape: f.shape.apply(f.raising_generator()).scale(1.0 / divisor),
    }
}

pub fn eigenfunction(family: Family, n: usize) -> Eigenfunction {
    eigenfunction_with_phase(family, n, BraPhase::default())
}

pub fn eigenfunction_with_phase(family: Family, n: usize, bra_phase: BraPhase) -> Eigenfunction {
    let mut f = generating_function_with_phase(family, bra_phase);
    for _ in 0..n {
        f = raise_once(&f);
    }
    f
}

/// Max over `xs` of `|lhs(x) − rhs(x)| / max(1, |rhs(x)|)`.
///
/// Excited eigenfunctions grow like `|x|ⁿ`, so differences are measured
/// relative to the local magnitude once it exceeds one.
pub fn scaled_residual(lhs: &GaussianPhaseFunction, rhs: &GaussianPhaseFunction, xs: &[f64]) -> f64 {
    xs.iter()
        .map(|&x| {
            let r = rhs.evaluate(x);
            (lhs.evaluate(x) - r).norm() / r.norm().max(1.0)
        })
        .fold(0.0, f64::max)
}

/// `count` equally spaced points on `[lo, hi]`.
pub fn sample_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count).map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    // Oracle: apply (x ± i d/dx) to P(x) e^{g i x²/2} term by term, writing
    // d/dx[x^k e^{g i x²/2}] = (k x^{k−1} + g i x^{k+1}) e^{g i x²/2}.
    fn oracle_step(p: &[C64], g: f64, s: f64) -> Vec<C64> {
        let mut out = vec![c(0.0, 0.0); p.len() + 1];
        for (k, a) in p.iter().enumerate() {
            out[k + 1] += a; // x · x^k
            if k > 0 {
                out[k - 1] += I * s * a * k as f64;
            }
            out[k + 1] += I * s * a * (g * I);
        }
        while out.last().is_some_and(|z| z.norm() == 0.0) {
            out.pop();
        }
        out
    }

    #[test]
    fn raised_polynomials_match_term_by_term_oracle() {
        let mut ket = vec![c(1.0, 0.0)];
        let mut bra = vec![c(1.0, 0.0)];
        for n in 1..=8 {
            ket = oracle_step(&ket, -1.0, 1.0);
            bra = oracle_step(&bra, 1.0, -1.0);
            assert_eq!(eigenfunction(Family::Ket, n).poly().coeffs(), ket.as_slice(), "ket n={n}");
            assert_eq!(eigenfunction(Family::Bra, n).poly().coeffs(), bra.as_slice(), "bra n={n}");
        }
    }

    #[test]
    fn frozen_low_order_polynomials() {
        assert_eq!(eigenfunction(Family::Ket, 1).poly().coeffs(), &[c(0.0, 0.0), c(2.0, 0.0)]);
        assert_eq!(eigenfunction(Family::Ket, 2).poly().coeffs(), &[c(0.0, 2.0), c(0.0, 0.0), c(4.0, 0.0)]);
        assert_eq!(eigenfunction(Family::Bra, 2).poly().coeffs(), &[c(0.0, -2.0), c(0.0, 0.0), c(4.0, 0.0)]);
        let p3 = eigenfunction(Family::Ket, 3);
        assert_eq!(p3.poly().degree(), Some(3));
        assert_eq!(p3.poly().coeffs(), &[c(0.0, 0.0), c(0.0, 12.0), c(0.0, 0.0), c(8.0, 0.0)]);
    }

    #[test]
    fn degree_and_leading_coefficient_law() {
        for family in [Family::Ket, Family::Bra] {
            for n in 0..=15 {
                let f = eigenfunction(family, n);
                assert_eq!(f.poly().degree(), Some(n));
                assert_eq!(f.poly().leading(), c(2f64.powi(n as i32), 0.0));
            }
        }
    }

    #[test]
    fn ground_state_value_at_origin() {
        let psi = generating_function(Family::Ket);
        let want = C64::from_polar(PI.powf(-0.25), PI / 8.0);
        assert!((psi.evaluate(0.0) - want).norm() <= 1e-15);
        assert_eq!(psi.prefactor(), (I / PI).powf(0.25));
        assert_eq!(psi.poly(), &ComplexPolynomial::one());
    }

    #[test]
    fn ground_states_have_constant_modulus() {
        for family in [Family::Ket, Family::Bra] {
            let psi = generating_function(family);
            for x in sample_grid(-50.0, 50.0, 1001) {
                assert!((psi.evaluate(x).norm_sqr() - 1.0 / PI.sqrt()).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn bra_ground_state_is_conjugate_of_ket() {
        let ket = generating_function(Family::Ket);
        let bra = generating_function(Family::Bra);
        for x in sample_grid(-7.0, 7.0, 141) {
            assert!((bra.evaluate(x) - ket.evaluate(x).conj()).norm() <= 1e-15);
        }
    }

    #[test]
    fn lowering_annihilates_generating_functions() {
        for family in [Family::Ket, Family::Bra] {
            let psi = generating_function(family);
            let lowered = psi.shape.apply(psi.lowering_generator());
            assert!(lowered.poly.is_zero());
            let worst = sample_grid(-10.0, 10.0, 2001).into_iter().map(|x| lowered.evaluate(x).norm()).fold(0.0, f64::max);
            assert!(worst <= 1e-12);
        }
    }

    #[test]
    fn ket_ladder_identity_pointwise() {
        let xs = sample_grid(-10.0, 10.0, 401);
        for n in 1..=8 {
            let psi = eigenfunction(Family::Ket, n);
            let lowered = psi.shape.apply(Generator::Minus);
            let target = eigenfunction(Family::Ket, n - 1).shape.scale(c((n as f64).sqrt(), 0.0));
            assert!(scaled_residual(&lowered, &target, &xs) <= 1e-10, "n={n}");
        }
    }

    #[test]
    fn bra_ladder_identity_uses_phase() {
        let xs = sample_grid(-6.0, 6.0, 241);
        for phase in [BraPhase::PlusI, BraPhase::MinusI] {
            for n in 1..=6 {
                let psi = eigenfunction_with_phase(Family::Bra, n, phase);
                let lowered = psi.shape.apply(Generator::Plus);
                let target = eigenfunction_with_phase(Family::Bra, n - 1, phase)
                    .shape
                    .scale(phase.ladder_coefficient() * (n as f64).sqrt());
                assert!(scaled_residual(&lowered, &target, &xs) <= 1e-10, "{phase:?} n={n}");
            }
        }
    }

    #[test]
    fn number_operator_pointwise() {
        let xs = sample_grid(-10.0, 10.0, 401);
        for n in 0..=8 {
            let psi = eigenfunction(Family::Ket, n);
            let n_psi = psi.shape.apply(Generator::Minus).apply(Generator::Plus);
            let target = psi.shape.scale(c(n as f64, 0.0));
            assert!(scaled_residual(&n_psi, &target, &xs) <= 1e-9, "n={n}");
        }
    }

    #[test]
    fn bra_polynomials_are_conjugates() {
        for n in 0..=10 {
            let p = eigenfunction(Family::Ket, n);
            let q = eigenfunction(Family::Bra, n);
            assert_eq!(q.poly(), &p.poly().conj());
        }
    }

    #[test]
    fn bra_relates_to_conjugate_ket_by_unimodular_factor() {
        let xs = sample_grid(-4.0, 4.0, 81);
        for phase in [BraPhase::PlusI, BraPhase::MinusI] {
            for n in 0..=6 {
                let factor = Eigenfunction::conjugation_factor(n, phase);
                assert!((factor.norm() - 1.0).abs() <= 1e-14);
                let want = match phase {
                    BraPhase::PlusI => c(1.0, 0.0),
                    BraPhase::MinusI => c((-1f64).powi(n as i32), 0.0),
                };
                assert!((factor - want).norm() <= 1e-14, "{phase:?} n={n}: {factor}");
                let bra = eigenfunction_with_phase(Family::Bra, n, phase);
                let ket = eigenfunction(Family::Ket, n);
                for &x in &xs {
                    let diff = bra.evaluate(x) - factor * ket.evaluate(x).conj();
                    assert!(diff.norm() <= 1e-12 * (1.0 + bra.evaluate(x).norm()));
                }
            }
        }
    }
}
