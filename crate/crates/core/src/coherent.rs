//! Dual coherent states `|α⟩ᵣ` (eigenstate of `â₋` on kets) and `|α⟩ₗ`
//! (eigenstate of `â₊` on bras) in truncated Fock space, and the
//! minimum-uncertainty relation between them.

use serde::{Deserialize, Serialize};

use crate::fock::{bra_lowering, build_lowering, dual_pairing, DualVector, OperatorExpression, TruncatedOperator};
use crate::{Error, Family, Result, C64, I};

/// Default truncation; covers `|α| ≤ 2` within the tail budget.
pub const DEFAULT_DIM: usize = 64;
pub const MIN_DIM: usize = 8;
/// Required bound on `|α|^dim/√(dim!)`.
pub const TAIL_BUDGET: f64 = 1e-12;

/// Phase pattern of the bra expansion `e^{−i|α|²/2} Σ (κα)ⁿ/√n! |n⟩ₗ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum BraSeries {
    /// `κ = i`, as produced by the bra coefficient recurrence.
    #[default]
    IAlpha,
    /// `κ = −i`.
    MinusIAlpha,
}

impl BraSeries {
    pub const BOTH: [BraSeries; 2] = [BraSeries::IAlpha, BraSeries::MinusIAlpha];

    pub fn kappa(self) -> C64 {
        match self {
            BraSeries::IAlpha => I,
            BraSeries::MinusIAlpha => -I,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            BraSeries::IAlpha => "(i*alpha)^n",
            BraSeries::MinusIAlpha => "(-i*alpha)^n",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoherentState {
    pub family: Family,
    pub alpha: C64,
    pub series: BraSeries,
    pub coeffs: Vec<C64>,
}

impl CoherentState {
    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn as_dual(&self) -> DualVector {
        DualVector::new(self.family, self.coeffs.clone())
    }
}

/// `|α|^dim / √(dim!)`, evaluated in log space.
pub fn tail_estimate(alpha: C64, dim: usize) -> f64 {
    let a = alpha.norm();
    if a == 0.0 {
        return 0.0;
    }
    (dim as f64 * a.ln() - 0.5 * ln_factorial(dim)).exp()
}

/// Bound on [`eigen_residual`]: `|α| · max|c_{dim−1}| = |α|^dim/√((dim−1)!)`.
pub fn residual_bound(alpha: C64, dim: usize) -> f64 {
    let a = alpha.norm();
    if a == 0.0 {
        return 0.0;
    }
    (dim as f64 * a.ln() - 0.5 * ln_factorial(dim - 1)).exp()
}

/// Bound on the truncation error of the dual pairing, `Σ_{n≥dim} |α|^{2n}/n!`.
pub fn pairing_tail(alpha: C64, dim: usize) -> f64 {
    let a2 = alpha.norm_sqr();
    if a2 == 0.0 {
        return 0.0;
    }
    let mut term = (dim as f64 * a2.ln() - ln_factorial(dim)).exp();
    let mut sum = 0.0;
    for n in dim..dim + 400 {
        sum += term;
        term *= a2 / (n + 1) as f64;
        if term < 1e-18 * sum {
            break;
        }
    }
    sum
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Coefficients `e^{i|α|²/2} αⁿ/√n!` (ket) or `e^{−i|α|²/2} (κα)ⁿ/√n!` (bra).
///
/// With `strict`, a tail estimate above [`TAIL_BUDGET`] is an error.
pub fn build_coherent(family: Family, alpha: C64, dim: usize, series: BraSeries, strict: bool) -> Result<CoherentState> {
    if dim < MIN_DIM {
        return Err(Error::InvalidDimension { dim, min: MIN_DIM });
    }
    let tail = tail_estimate(alpha, dim);
    if strict && tail > TAIL_BUDGET {
        return Err(Error::TruncationBudget {
            tail,
            budget: TAIL_BUDGET,
            alpha_abs: alpha.norm(),
            dim,
        });
    }
    let half_phase = alpha.norm_sqr() / 2.0;
    let (c0, ratio) = match family {
        Family::Ket => (C64::from_polar(1.0, half_phase), alpha),
        Family::Bra => (C64::from_polar(1.0, -half_phase), series.kappa() * alpha),
    };
    let mut coeffs = Vec::with_capacity(dim);
    let mut c = c0;
    coeffs.push(c);
    for n in 1..dim {
        c = c * ratio / (n as f64).sqrt();
        coeffs.push(c);
    }
    Ok(CoherentState {
        family,
        alpha,
        series,
        coeffs,
    })
}

/// The ket/bra pair for one `α`.
pub fn coherent_pair(alpha: C64, dim: usize, series: BraSeries, strict: bool) -> Result<(CoherentState, CoherentState)> {
    Ok((
        build_coherent(Family::Ket, alpha, dim, series, strict)?,
        build_coherent(Family::Bra, alpha, dim, series, strict)?,
    ))
}

/// Euclidean norm of `(â₋ − α)c` for kets, `(â₊ − α)c` on bra coefficients
/// for bras.
pub fn eigen_residual(s: &CoherentState) -> Result<f64> {
    let lowering = match s.family {
        Family::Ket => build_lowering(s.dim())?,
        Family::Bra => bra_lowering(s.dim())?,
    };
    let shifted = lowering.try_sub(&TruncatedOperator::identity(s.dim())?.scale(s.alpha))?;
    Ok(shifted.apply(&s.coeffs)?.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
}

/// `ₗ⟨α|α⟩ᵣ`.
pub fn pairing(bra: &CoherentState, ket: &CoherentState) -> Result<C64> {
    dual_pairing(&bra.as_dual(), &ket.as_dual())
}

/// `ₗ⟨bra|Ô|ket⟩ᵣ` in the truncated ket frame.
pub fn dual_expectation(bra: &CoherentState, ket: &CoherentState, op: &OperatorExpression) -> Result<C64> {
    let m = op.evaluate(ket.dim())?;
    let image = m.apply(&ket.coeffs)?;
    dual_pairing(&bra.as_dual(), &DualVector::new(Family::Ket, image))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Observable {
    X,
    P,
    X2,
    P2,
}

impl Observable {
    pub const ALL: [Observable; 4] = [Observable::X, Observable::P, Observable::X2, Observable::P2];

    pub fn expression(self) -> OperatorExpression {
        let x = OperatorExpression::position;
        let p = OperatorExpression::momentum;
        match self {
            Observable::X => x(),
            Observable::P => p(),
            Observable::X2 => x().times(x()),
            Observable::P2 => p().times(p()),
        }
    }

    /// Closed form of `ₗ⟨α|Ô|α⟩ᵣ` for the normalized pair.
    pub fn closed_form(self, alpha: C64) -> C64 {
        let a = alpha;
        let ac = alpha.conj();
        let root = (2.0 * I).sqrt();
        let two_i = 2.0 * I;
        let mod2 = alpha.norm_sqr();
        match self {
            Observable::X => (a - I * ac) / root,
            Observable::P => (a + I * ac) / root,
            Observable::X2 => (a * a - two_i * mod2 + 1.0 - ac * ac) / two_i,
            Observable::P2 => (a * a + two_i * mod2 - 1.0 - ac * ac) / two_i,
        }
    }
}

/// Truncated-Fock value of `ₗ⟨α|Ô|α⟩ᵣ` using the default bra series.
pub fn expectation(observable: Observable, alpha: C64, dim: usize) -> Result<C64> {
    let (ket, bra) = coherent_pair(alpha, dim, BraSeries::default(), false)?;
    dual_expectation(&bra, &ket, &observable.expression())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Uncertainty {
    pub dx2: C64,
    pub dp2: C64,
    /// Principal square roots of the variances.
    pub dx: C64,
    pub dp: C64,
    /// Real part of `Δx·Δp`.
    pub product: f64,
    pub product_im: f64,
}

/// Full set of dual-pairing moments for one `α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentMoments {
    pub pairing: C64,
    pub eigen_residual_ket: f64,
    pub eigen_residual_bra: f64,
    pub x: C64,
    pub p: C64,
    pub x2: C64,
    pub p2: C64,
    pub uncertainty: Uncertainty,
}

pub fn moments(alpha: C64, dim: usize, series: BraSeries) -> Result<CoherentMoments> {
    let (ket, bra) = coherent_pair(alpha, dim, series, false)?;
    let value = |o: Observable| dual_expectation(&bra, &ket, &o.expression());
    let x = value(Observable::X)?;
    let p = value(Observable::P)?;
    let x2 = value(Observable::X2)?;
    let p2 = value(Observable::P2)?;
    Ok(CoherentMoments {
        pairing: pairing(&bra, &ket)?,
        eigen_residual_ket: eigen_residual(&ket)?,
        eigen_residual_bra: eigen_residual(&bra)?,
        x,
        p,
        x2,
        p2,
        uncertainty: uncertainty_from(x, p, x2, p2),
    })
}

fn uncertainty_from(x: C64, p: C64, x2: C64, p2: C64) -> Uncertainty {
    let dx2 = x2 - x * x;
    let dp2 = p2 - p * p;
    let dx = dx2.sqrt();
    let dp = dp2.sqrt();
    let prod = dx * dp;
    Uncertainty {
        dx2,
        dp2,
        dx,
        dp,
        product: prod.re,
        product_im: prod.im,
    }
}

/// `ΔxΔp` from truncated-Fock moments with the default bra series.
pub fn uncertainty_product(alpha: C64, dim: usize) -> Result<Uncertainty> {
    Ok(moments(alpha, dim, BraSeries::default())?.uncertainty)
}
