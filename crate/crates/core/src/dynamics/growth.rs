use nalgebra::DMatrix;

use crate::fock::build_hamiltonian;
use crate::{check_omega, Error, Family, Result, C64, I};

/// Largest growth exponent accepted before `exp` would overflow.
pub const OVERFLOW_LIMIT: f64 = 700.0;

/// `±(n+½)ωt`: positive for kets, negative for bras.
pub fn growth_exponent(family: Family, n: usize, omega: f64, t: f64) -> Result<f64> {
    check_omega(omega)?;
    if !t.is_finite() {
        return Err(Error::InvalidArgument(format!("time must be finite, got {t}")));
    }
    let e = (n as f64 + 0.5) * omega * t;
    if e.abs() > OVERFLOW_LIMIT {
        return Err(Error::Overflow {
            exponent: e,
            limit: OVERFLOW_LIMIT,
        });
    }
    Ok(match family {
        Family::Ket => e,
        Family::Bra => -e,
    })
}

/// Time factor of `|n⟩` under `Ĥ`: `e^{(n+½)ωt}` for kets, `e^{−(n+½)ωt}` for bras.
pub fn propagate_fock(family: Family, n: usize, omega: f64, t: f64) -> Result<C64> {
    Ok(C64::new(growth_exponent(family, n, omega, t)?.exp(), 0.0))
}

/// Diagonal propagator applied to a coefficient vector.
pub fn propagate_coefficients(family: Family, coeffs: &[C64], omega: f64, t: f64) -> Result<Vec<C64>> {
    coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| Ok(c * propagate_fock(family, n, omega, t)?))
        .collect()
}

/// `ₗ⟨ψₙ(t)|ψₙ(t)⟩ᵣ` from the two separately propagated factors.
pub fn mixed_pairing(n: usize, omega: f64, t: f64) -> Result<C64> {
    Ok(propagate_fock(Family::Bra, n, omega, t)?.conj() * propagate_fock(Family::Ket, n, omega, t)?)
}

/// Same-set pairing `⟨ψₙ(t)|ψₙ(t)⟩` within one family: `e^{±2(n+½)ωt}`.
pub fn same_set_pairing(family: Family, n: usize, omega: f64, t: f64) -> Result<f64> {
    Ok(propagate_fock(family, n, omega, t)?.norm_sqr())
}

/// `ρ(t) = |ψ(t)⟩ᵣ ₗ⟨ψ(t)|` with entries `cⱼ conj(dₖ) e^{(j−k)ωt}`.
///
/// The two time factors are combined before exponentiating, so for an
/// eigenstate (`j = k`) every entry equals its `t = 0` value bit for bit.
pub fn mixed_density(ket: &[C64], bra: &[C64], omega: f64, t: f64) -> Result<DMatrix<C64>> {
    if ket.len() != bra.len() {
        return Err(Error::DimensionMismatch {
            left: bra.len(),
            right: ket.len(),
        });
    }
    check_omega(omega)?;
    let dim = ket.len();
    let mut rho = DMatrix::zeros(dim, dim);
    for j in 0..dim {
        for k in 0..dim {
            let e = (j as f64 - k as f64) * omega * t;
            if e.abs() > OVERFLOW_LIMIT {
                return Err(Error::Overflow {
                    exponent: e,
                    limit: OVERFLOW_LIMIT,
                });
            }
            rho[(j, k)] = ket[j] * bra[k].conj() * e.exp();
        }
    }
    Ok(rho)
}

/// Max entry of `i(ρ(t+dt) − ρ(t−dt))/(2dt) − [Ĥ, ρ(t)]`.
pub fn liouville_residual(ket: &[C64], bra: &[C64], omega: f64, t: f64, dt: f64) -> Result<f64> {
    if dt.is_nan() || dt <= 0.0 {
        return Err(Error::InvalidArgument(format!("dt must be positive, got {dt}")));
    }
    let h = build_hamiltonian(ket.len(), omega)?;
    let h = h.entries();
    let rho = mixed_density(ket, bra, omega, t)?;
    let ahead = mixed_density(ket, bra, omega, t + dt)?;
    let behind = mixed_density(ket, bra, omega, t - dt)?;
    let lhs = (ahead - behind) * (I / (2.0 * dt));
    let rhs = h * &rho - &rho * h;
    Ok((lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// [`liouville_residual`] for the eigenstate density `|n⟩ᵣ ₗ⟨n|`, maximised
/// over `ωt ∈ {0, ½, 1}`.
pub fn density_invariant_residual(n: usize, omega: f64, dt: f64) -> Result<f64> {
    let dim = (n + 2).max(2);
    let mut basis = vec![C64::new(0.0, 0.0); dim];
    basis[n] = C64::new(1.0, 0.0);
    let mut worst = 0.0_f64;
    for wt in [0.0, 0.5, 1.0] {
        worst = worst.max(liouville_residual(&basis, &basis, omega, wt / omega, dt)?);
    }
    Ok(worst)
}
