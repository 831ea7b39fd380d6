use nalgebra::DMatrix;

use super::{adaptive_simpson, integrate_exact, ContourQuadrature};
use crate::eigenfunction::{eigenfunction, eigenfunction_with_phase, BraPhase, Eigenfunction};
use crate::poly::ComplexPolynomial;
use crate::{Error, Family, Result, C64};

/// Extra nodes required beyond `nmax` before the Gram matrix is computed.
pub const GRAM_NODE_MARGIN: usize = 8;

fn check_families(bra: &Eigenfunction, ket: &Eigenfunction) -> Result<()> {
    if bra.family != Family::Bra || ket.family != Family::Ket {
        return Err(Error::SetMismatch {
            bra: bra.family,
            ket: ket.family,
        });
    }
    Ok(())
}

// conj(ψˡ)ψʳ = conj(cₗ)·cᵣ · conj(Q)·P · e^{−ix²}
fn reduce(bra: &Eigenfunction, ket: &Eigenfunction) -> (C64, ComplexPolynomial) {
    debug_assert_eq!(bra.gauss_sign(), 1);
    debug_assert_eq!(ket.gauss_sign(), -1);
    (bra.prefactor().conj() * ket.prefactor(), &bra.poly().conj() * ket.poly())
}

/// `∫ conj(ψₘˡ(x)) ψₙʳ(x) dx` with the rotated rule.
pub fn pairing_integral(bra: &Eigenfunction, ket: &Eigenfunction, rule: &ContourQuadrature) -> Result<C64> {
    check_families(bra, ket)?;
    let (scale, poly) = reduce(bra, ket);
    Ok(scale * rule.integrate(&poly)?)
}

/// Same pairing through the closed-form moment table.
pub fn pairing_integral_exact(bra: &Eigenfunction, ket: &Eigenfunction) -> Result<C64> {
    check_families(bra, ket)?;
    let (scale, poly) = reduce(bra, ket);
    Ok(scale * integrate_exact(&poly))
}

fn families(nmax: usize, bra_phase: BraPhase) -> (Vec<Eigenfunction>, Vec<Eigenfunction>) {
    let bras = (0..=nmax).map(|n| eigenfunction_with_phase(Family::Bra, n, bra_phase)).collect();
    let kets = (0..=nmax).map(|n| eigenfunction(Family::Ket, n)).collect();
    (bras, kets)
}

/// `(nmax+1)²` matrix of pairings `ₗ⟨m|n⟩ᵣ`, rows indexed by the bra.
///
/// The rule must have at least `nmax + 8` nodes.
pub fn gram_matrix(nmax: usize, rule: &ContourQuadrature, bra_phase: BraPhase) -> Result<DMatrix<C64>> {
    if rule.node_count() < nmax + GRAM_NODE_MARGIN {
        return Err(Error::Precision {
            degree: 2 * nmax,
            max: rule.max_exact_degree(),
            nodes: rule.node_count(),
        });
    }
    let (bras, kets) = families(nmax, bra_phase);
    let mut g = DMatrix::zeros(nmax + 1, nmax + 1);
    for (m, bra) in bras.iter().enumerate() {
        for (n, ket) in kets.iter().enumerate() {
            g[(m, n)] = pairing_integral(bra, ket, rule)?;
        }
    }
    Ok(g)
}

/// Gram matrix evaluated with any rule, exact or not.
pub fn gram_matrix_unchecked(nmax: usize, rule: &ContourQuadrature, bra_phase: BraPhase) -> DMatrix<C64> {
    let (bras, kets) = families(nmax, bra_phase);
    DMatrix::from_fn(nmax + 1, nmax + 1, |m, n| {
        let (scale, poly) = reduce(&bras[m], &kets[n]);
        scale * rule.integrate_unchecked(&poly)
    })
}

/// Gram matrix from the moment oracle.
pub fn gram_matrix_exact(nmax: usize, bra_phase: BraPhase) -> DMatrix<C64> {
    let (bras, kets) = families(nmax, bra_phase);
    DMatrix::from_fn(nmax + 1, nmax + 1, |m, n| {
        let (scale, poly) = reduce(&bras[m], &kets[n]);
        scale * integrate_exact(&poly)
    })
}

/// `‖G − I‖max`.
pub fn gram_defect(g: &DMatrix<C64>) -> f64 {
    let mut worst = 0.0_f64;
    for ((r, c), z) in g.iter().enumerate().map(|(k, z)| ((k % g.nrows(), k / g.nrows()), z)) {
        let target = if r == c { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
        worst = worst.max((z - target).norm());
    }
    worst
}

/// `∫_{−L}^{L} |ψₙ(x)|² dx` by adaptive Simpson. For `n = 0` this is
/// `2L/√π`, unbounded in `L`.
pub fn truncated_same_set_norm(f: &Eigenfunction, half_width: f64, tol: f64) -> f64 {
    adaptive_simpson(|x| f.evaluate(x).norm_sqr(), -half_width, half_width, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenfunction::generating_function;
    use std::f64::consts::PI;

    #[test]
    fn ground_states_pair_to_one() {
        let rule = ContourQuadrature::new(8).unwrap();
        let bra = generating_function(Family::Bra);
        let ket = generating_function(Family::Ket);
        let v = pairing_integral(&bra, &ket, &rule).unwrap();
        assert!((v - C64::new(1.0, 0.0)).norm() <= 1e-15);
        assert!((pairing_integral_exact(&bra, &ket).unwrap() - C64::new(1.0, 0.0)).norm() <= 1e-15);
    }

    #[test]
    fn odd_cross_pairing_vanishes() {
        let rule = ContourQuadrature::new(8).unwrap();
        let bra = eigenfunction(Family::Bra, 0);
        let ket = eigenfunction(Family::Ket, 1);
        assert_eq!(pairing_integral(&bra, &ket, &rule).unwrap().norm(), 0.0);
        assert_eq!(pairing_integral_exact(&bra, &ket).unwrap().norm(), 0.0);
    }

    #[test]
    fn first_excited_pairing_by_hand() {
        // conj(c₁ˡ)c₁ʳ · 4·moment(2) with c₁ = c₀√(i/2)/phase
        let bra = eigenfunction(Family::Bra, 1);
        let ket = eigenfunction(Family::Ket, 1);
        let v = pairing_integral_exact(&bra, &ket).unwrap();
        assert!((v - C64::new(1.0, 0.0)).norm() <= 1e-15);
        let bra_minus = eigenfunction_with_phase(Family::Bra, 1, BraPhase::MinusI);
        let v = pairing_integral_exact(&bra_minus, &ket).unwrap();
        assert!((v - C64::new(-1.0, 0.0)).norm() <= 1e-15);
    }

    #[test]
    fn pairing_rejects_wrong_families() {
        let rule = ContourQuadrature::new(8).unwrap();
        let ket = eigenfunction(Family::Ket, 0);
        assert!(matches!(pairing_integral(&ket, &ket, &rule), Err(Error::SetMismatch { .. })));
        let bra = eigenfunction(Family::Bra, 0);
        assert!(matches!(pairing_integral_exact(&bra, &bra), Err(Error::SetMismatch { .. })));
    }

    #[test]
    fn gram_small_cases() {
        let g0 = gram_matrix(0, &ContourQuadrature::new(8).unwrap(), BraPhase::PlusI).unwrap();
        assert_eq!(g0.shape(), (1, 1));
        assert!((g0[(0, 0)] - C64::new(1.0, 0.0)).norm() <= 1e-15);
        let g4 = gram_matrix(4, &ContourQuadrature::new(12).unwrap(), BraPhase::PlusI).unwrap();
        assert!(gram_defect(&g4) <= 1e-9);
    }

    #[test]
    fn gram_rejects_small_rule() {
        let rule = ContourQuadrature::new(10).unwrap();
        assert!(matches!(gram_matrix(4, &rule, BraPhase::PlusI), Err(Error::Precision { .. })));
    }

    #[test]
    fn alternating_phase_gives_signed_diagonal() {
        let g = gram_matrix_exact(8, BraPhase::MinusI);
        for m in 0..=8 {
            for n in 0..=8 {
                let want = if m == n { (-1f64).powi(n as i32) } else { 0.0 };
                assert!((g[(m, n)] - C64::new(want, 0.0)).norm() <= 1e-10, "({m},{n}) = {}", g[(m, n)]);
            }
        }
    }

    #[test]
    fn defect_vanishes_once_rule_is_exact() {
        // degree 2·nmax needs nmax + 1 nodes
        let nmax = 6;
        let defects: Vec<f64> = (1..=12)
            .map(|n| gram_defect(&gram_matrix_unchecked(nmax, &ContourQuadrature::new(n).unwrap(), BraPhase::PlusI)))
            .collect();
        assert!(defects[..nmax].iter().all(|d| *d > 0.5), "{defects:?}");
        assert!(defects[nmax..].iter().all(|d| *d <= 1e-13), "{defects:?}");
    }

    #[test]
    fn truncated_norm_grows_linearly() {
        let psi = generating_function(Family::Ket);
        for l in [1.0, 10.0, 100.0] {
            let v = truncated_same_set_norm(&psi, l, 1e-10);
            assert!((v - 2.0 * l / PI.sqrt()).abs() <= 1e-10);
        }
    }
}
