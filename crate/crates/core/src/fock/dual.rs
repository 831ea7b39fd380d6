use super::expr::{AdjointSign, OperatorExpression};
use super::operator::{build_lowering, build_raising, fock_state, TruncatedOperator};
use crate::{Error, Family, Result, C64};

/// Coefficient vector over one of the two dual Fock families.
///
/// Both `|n⟩ᵣ` and `|n⟩ₗ` are the `n`-th standard unit vector, so the pairing
/// `ₗ⟨·|·⟩ᵣ` is the Euclidean sesquilinear form on coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct DualVector {
    pub family: Family,
    pub coeffs: Vec<C64>,
}

impl DualVector {
    pub fn new(family: Family, coeffs: Vec<C64>) -> Self {
        Self { family, coeffs }
    }

    pub fn fock(family: Family, dim: usize, n: usize) -> Result<Self> {
        Ok(Self::new(family, fock_state(dim, n)?))
    }

    pub fn zeros(family: Family, dim: usize) -> Self {
        Self::new(family, vec![C64::new(0.0, 0.0); dim])
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }
}

/// `ₗ⟨bra|ket⟩ᵣ = Σ conj(bra[n])·ket[n]`.
pub fn dual_pairing(bra: &DualVector, ket: &DualVector) -> Result<C64> {
    if bra.family != Family::Bra || ket.family != Family::Ket {
        return Err(Error::SetMismatch {
            bra: bra.family,
            ket: ket.family,
        });
    }
    if bra.dim() != ket.dim() {
        return Err(Error::DimensionMismatch {
            left: bra.dim(),
            right: ket.dim(),
        });
    }
    Ok(bra.coeffs.iter().zip(&ket.coeffs).map(|(b, k)| b.conj() * k).sum())
}

/// Ladder coefficient of the bra family: `â₊|n⟩ₗ = c√n|n−1⟩ₗ` and
/// `â₋|n−1⟩ₗ = c√n|n⟩ₗ` with `c = −i`.
pub const BRA_LADDER_PHASE: C64 = C64::new(0.0, -1.0);

/// `â₊` acting on bra-family coefficients (it lowers the bra family).
pub fn bra_lowering(dim: usize) -> Result<TruncatedOperator> {
    Ok(build_lowering(dim)?.scale(BRA_LADDER_PHASE))
}

/// `â₋` acting on bra-family coefficients (it raises the bra family).
pub fn bra_raising(dim: usize) -> Result<TruncatedOperator> {
    Ok(build_raising(dim)?.scale(BRA_LADDER_PHASE))
}

/// Bra-frame matrix of an operator induced by the physical adjoint:
/// `ᵣ⟨m|Â|k⟩ₗ = conj(ₗ⟨k|Â†|m⟩ᵣ)`, i.e. the conjugate transpose of the ket
/// matrix of `Â†`.
pub fn bra_frame_action(expr: &OperatorExpression, sign: AdjointSign, dim: usize) -> Result<TruncatedOperator> {
    Ok(expr.adjoint(sign).evaluate(dim)?.conj_transpose())
}

/// Residual of the bra ladder chain: `(â₋)ⁿ|0⟩ₗ / ((−i)ⁿ√n!) = |n⟩ₗ`, max over
/// `n < dim`.
pub fn bra_ladder_chain_residual(dim: usize) -> Result<f64> {
    let up = bra_raising(dim)?;
    let mut v = fock_state(dim, 0)?;
    let mut norm = C64::new(1.0, 0.0);
    let mut worst = 0.0_f64;
    for n in 1..dim {
        v = up.apply(&v)?;
        norm *= BRA_LADDER_PHASE * (n as f64).sqrt();
        let target = fock_state(dim, n)?;
        for (got, want) in v.iter().zip(&target) {
            worst = worst.max((got / norm - want).norm());
        }
    }
    Ok(worst)
}

/// Same chain for kets: `(â₊)ⁿ|0⟩ᵣ / √n! = |n⟩ᵣ`.
pub fn ket_ladder_chain_residual(dim: usize) -> Result<f64> {
    let up = build_raising(dim)?;
    let mut v = fock_state(dim, 0)?;
    let mut norm = 1.0_f64;
    let mut worst = 0.0_f64;
    for n in 1..dim {
        v = up.apply(&v)?;
        norm *= (n as f64).sqrt();
        let target = fock_state(dim, n)?;
        for (got, want) in v.iter().zip(&target) {
            worst = worst.max((got / norm - want).norm());
        }
    }
    Ok(worst)
}
