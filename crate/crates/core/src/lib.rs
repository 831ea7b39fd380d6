//! Algebraic quantization of a unit-mass particle on the inverted potential
//! `H = p²/2 − ω²x²/2`, in dimensionless units with ħ = 1.
//!
//! The crate is organised bottom-up:
//!
//! * [`fock`]: imaginary-frequency ladder operators in a truncated
//!   biorthogonal Fock representation, the symbolic physical adjoint, the
//!   SU(1,1) realization and an expression language over those symbols.
//! * [`poly`] and [`eigenfunction`]: coordinate-space "ket" and "bra"
//!   eigenfunctions as complex polynomials times Gaussian phase factors.
//! * [`quadrature`]: rotated-contour Gauss–Hermite rules for integrals
//!   against `e^{−ix²}`, an exact moment oracle, and the dual Gram matrix.
//! * [`coherent`]: dual coherent states and the minimum uncertainty product.
//! * [`dynamics`]: growth/decay of the dual eigenstates, the invariant mixed
//!   density, the classical orbit and a split-step grid oracle.
//! * [`verify`]: report types and the verification suites used by the CLI.

pub mod coherent;
pub mod dynamics;
pub mod eigenfunction;
mod error;
pub mod fock;
pub mod poly;
pub mod quadrature;
pub mod verify;

pub use error::{Error, Result};

use serde::{Deserialize, Serialize};

pub use num_complex::Complex64 as C64;

/// Which of the two dual eigenstate families a value belongs to.
///
/// `Ket` states are right eigenstates of `n̂ = a₊a₋` with eigenvalue of `Ĥ`
/// equal to `iω(n+½)`; `Bra` states are eigenstates of `n̂†` with the
/// conjugate eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Ket,
    Bra,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::Ket => f.write_str("ket"),
            Family::Bra => f.write_str("bra"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ket" | "r" => Ok(Family::Ket),
            "bra" | "l" => Ok(Family::Bra),
            other => Err(Error::InvalidArgument(format!(
                "unknown family {other:?} (expected ket or bra)"
            ))),
        }
    }
}

pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// `√(i/2)`, principal branch: `e^{iπ/4}/√2`.
pub(crate) fn sqrt_half_i() -> C64 {
    (I / 2.0).sqrt()
}

pub(crate) fn check_omega(omega: f64) -> Result<()> {
    if omega > 0.0 && omega.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveOmega(omega))
    }
}
