use super::expr::OperatorExpression as E;
use super::operator::TruncatedOperator;
use crate::{check_omega, Error, Result, C64, I};

/// Truncated SU(1,1) generators realised by the imaginary-frequency bosons.
#[derive(Debug, Clone, PartialEq)]
pub struct Su11 {
    pub s_z: TruncatedOperator,
    pub s_plus: TruncatedOperator,
    pub s_minus: TruncatedOperator,
    pub s_x: TruncatedOperator,
    pub s_y: TruncatedOperator,
}

impl Su11 {
    /// Two-step raising needs at least four levels to leave a non-empty exact block.
    pub const MIN_DIM: usize = 4;

    pub fn dim(&self) -> usize {
        self.s_z.dim()
    }

    /// Max-entry magnitude of `Ĥ − 2iωŜz` over the whole matrix.
    pub fn hamiltonian_residual(&self, omega: f64) -> Result<f64> {
        check_omega(omega)?;
        let h = super::operator::build_hamiltonian(self.dim(), omega)?;
        let two_i_omega_sz = self.s_z.scale(C64::new(2.0, 0.0) * I * omega);
        Ok(h.try_sub(&two_i_omega_sz)?.max_abs())
    }
}

pub fn build_su11(dim: usize) -> Result<Su11> {
    if dim < Su11::MIN_DIM {
        return Err(Error::InvalidDimension { dim, min: Su11::MIN_DIM });
    }
    Ok(Su11 {
        s_z: E::s_z().evaluate(dim)?,
        s_plus: E::s_plus().evaluate(dim)?,
        s_minus: E::s_minus().evaluate(dim)?,
        s_x: E::s_x().evaluate(dim)?,
        s_y: E::s_y().evaluate(dim)?,
    })
}
