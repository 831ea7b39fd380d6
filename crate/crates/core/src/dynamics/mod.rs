//! Time evolution: growth and decay of the dual eigenstates, the invariant
//! mixed density, the classical orbit of the coherent-state parameter, and a
//! split-step grid solver used as an independent oracle.

mod classical;
mod grid;
mod growth;

pub use classical::{classical_orbit, energy_invariant_drift, integrate_alpha, rk4_orbit, OrbitSample, ALPHA_TOL};
pub use grid::{grid_evolve, grid_split_step, GridState, BOUNDARY_TOL, DEFAULT_POINTS, DEFAULT_X_MAX, DEFAULT_X_MIN, NORM_DRIFT_TOL};
pub use growth::{
    density_invariant_residual, growth_exponent, liouville_residual, mixed_density, mixed_pairing, propagate_coefficients,
    propagate_fock, same_set_pairing, OVERFLOW_LIMIT,
};

use crate::{Error, Result, C64};

/// Sampled observable. Times are strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    times: Vec<f64>,
    values: Vec<C64>,
}

impl Trajectory {
    pub fn new(times: Vec<f64>, values: Vec<C64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::DimensionMismatch {
                left: times.len(),
                right: values.len(),
            });
        }
        if times.windows(2).any(|w| w[1].is_nan() || w[1] <= w[0]) {
            return Err(Error::InvalidArgument("trajectory times must be strictly increasing".into()));
        }
        Ok(Self { times, values })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, C64)> + '_ {
        self.times.iter().copied().zip(self.values.iter().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trajectory_invariants() {
        assert!(Trajectory::new(vec![0.0, 1.0], vec![C64::new(0.0, 0.0)]).is_err());
        assert!(Trajectory::new(vec![0.0, 0.0], vec![C64::new(0.0, 0.0); 2]).is_err());
        let t = Trajectory::new(vec![0.0, 0.5], vec![C64::new(1.0, 0.0); 2]).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.iter().last().unwrap().0, 0.5);
    }
}
