use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use super::Trajectory;
use crate::{check_omega, Error, Result, C64};

pub const DEFAULT_X_MIN: f64 = -40.0;
pub const DEFAULT_X_MAX: f64 = 40.0;
pub const DEFAULT_POINTS: usize = 4096;
/// Largest `|ψ|` tolerated at the two boundary points.
pub const BOUNDARY_TOL: f64 = 1e-10;
/// Largest tolerated change of `∫|ψ|²dx` during a run.
pub const NORM_DRIFT_TOL: f64 = 1e-8;

/// Wave function on the periodic grid `x_j = x_min + j·dx`, `j < points`,
/// for a unit-mass particle in `−ω²x²/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridState {
    pub x_min: f64,
    pub x_max: f64,
    pub omega: f64,
    pub psi: Vec<C64>,
}

impl GridState {
    pub fn new(x_min: f64, x_max: f64, omega: f64, psi: Vec<C64>) -> Result<Self> {
        check_omega(omega)?;
        if x_max.is_nan() || x_min.is_nan() || x_max <= x_min {
            return Err(Error::InvalidArgument(format!("empty grid [{x_min}, {x_max}]")));
        }
        if psi.len() < 2 || !psi.len().is_power_of_two() {
            return Err(Error::InvalidArgument(format!("grid size {} is not a power of two", psi.len())));
        }
        Ok(Self { x_min, x_max, omega, psi })
    }

    /// Normalized `e^{−x²/(2w²)}e^{ivx}`.
    pub fn gaussian_packet(x_min: f64, x_max: f64, points: usize, omega: f64, v: f64, width: f64) -> Result<Self> {
        if width.is_nan() || width <= 0.0 {
            return Err(Error::InvalidArgument(format!("packet width must be positive, got {width}")));
        }
        let dx = (x_max - x_min) / points as f64;
        let psi = (0..points)
            .map(|j| {
                let x = x_min + j as f64 * dx;
                C64::from_polar((-x * x / (2.0 * width * width)).exp(), v * x)
            })
            .collect();
        let mut state = Self::new(x_min, x_max, omega, psi)?;
        let norm = state.norm().sqrt();
        state.psi.iter_mut().for_each(|z| *z /= norm);
        Ok(state)
    }

    /// Default grid with a unit-width packet of mean momentum `v`.
    pub fn default_packet(omega: f64, v: f64) -> Result<Self> {
        Self::gaussian_packet(DEFAULT_X_MIN, DEFAULT_X_MAX, DEFAULT_POINTS, omega, v, 1.0)
    }

    pub fn points(&self) -> usize {
        self.psi.len()
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.points() as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.dx()
    }

    /// `∫|ψ|²dx`.
    pub fn norm(&self) -> f64 {
        self.psi.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.dx()
    }

    /// `∫ conj(ψ) x ψ dx`.
    pub fn mean_position(&self) -> C64 {
        let dx = self.dx();
        self.psi
            .iter()
            .enumerate()
            .map(|(j, z)| z.conj() * self.x(j) * z)
            .sum::<C64>()
            * dx
    }

    /// `max(|ψ(x_min)|, |ψ(x_max − dx)|)`.
    pub fn boundary_amplitude(&self) -> f64 {
        self.psi[0].norm().max(self.psi[self.points() - 1].norm())
    }
}

struct SplitStep {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    half_potential: Vec<C64>,
    kinetic: Vec<C64>,
    scratch: Vec<C64>,
}

impl SplitStep {
    fn new(state: &GridState, dt: f64) -> Self {
        let n = state.points();
        let mut planner = FftPlanner::new();
        let length = state.x_max - state.x_min;
        let half_potential = (0..n)
            .map(|j| {
                let x = state.x(j);
                let v = -0.5 * state.omega * state.omega * x * x;
                C64::from_polar(1.0, -v * dt / 2.0)
            })
            .collect();
        let kinetic = (0..n)
            .map(|j| {
                let m = if j < n / 2 { j as f64 } else { j as f64 - n as f64 };
                let k = 2.0 * PI * m / length;
                C64::from_polar(1.0 / n as f64, -k * k * dt / 2.0)
            })
            .collect();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let scratch = vec![C64::new(0.0, 0.0); forward.get_inplace_scratch_len().max(inverse.get_inplace_scratch_len())];
        Self {
            forward,
            inverse,
            half_potential,
            kinetic,
            scratch,
        }
    }

    fn step(&mut self, psi: &mut [C64]) {
        psi.iter_mut().zip(&self.half_potential).for_each(|(z, p)| *z *= p);
        self.forward.process_with_scratch(psi, &mut self.scratch);
        // kinetic factor carries the 1/N of the inverse transform
        psi.iter_mut().zip(&self.kinetic).for_each(|(z, k)| *z *= k);
        self.inverse.process_with_scratch(psi, &mut self.scratch);
        psi.iter_mut().zip(&self.half_potential).for_each(|(z, p)| *z *= p);
    }
}

/// Strang-split evolution under `p²/2 − ω²x²/2`, returning `⟨x⟩` at `t = 0`
/// and after each step. Boundary amplitude and norm are checked every step.
pub fn grid_split_step(initial: &GridState, dt: f64, steps: usize) -> Result<Trajectory> {
    Ok(grid_evolve(initial, dt, steps)?.0)
}

/// [`grid_split_step`] that also hands back the final state.
pub fn grid_evolve(initial: &GridState, dt: f64, steps: usize) -> Result<(Trajectory, GridState)> {
    if dt.is_nan() || dt <= 0.0 {
        return Err(Error::InvalidArgument(format!("dt must be positive, got {dt}")));
    }
    let mut state = initial.clone();
    let norm0 = state.norm();
    let check = |s: &GridState, step: usize| -> Result<()> {
        let amplitude = s.boundary_amplitude();
        if amplitude >= BOUNDARY_TOL {
            return Err(Error::BoundaryLeak { step, amplitude });
        }
        let drift = (s.norm() - norm0).abs();
        if drift > NORM_DRIFT_TOL {
            return Err(Error::NormDrift {
                step,
                drift,
                tol: NORM_DRIFT_TOL,
            });
        }
        Ok(())
    };
    check(&state, 0)?;

    let mut propagator = SplitStep::new(&state, dt);
    let mut times = Vec::with_capacity(steps + 1);
    let mut values = Vec::with_capacity(steps + 1);
    times.push(0.0);
    values.push(state.mean_position());
    for k in 1..=steps {
        propagator.step(&mut state.psi);
        check(&state, k)?;
        times.push(k as f64 * dt);
        values.push(state.mean_position());
    }
    Ok((Trajectory::new(times, values)?, state))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::classical_orbit;

    #[test]
    fn packet_is_normalized() {
        let s = GridState::default_packet(1.0, 0.5).unwrap();
        assert!((s.norm() - 1.0).abs() <= 1e-14);
        assert!(s.mean_position().norm() <= 1e-12);
        assert!(GridState::gaussian_packet(-1.0, 1.0, 100, 1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn resting_symmetric_packet_stays_centred() {
        let s = GridState::gaussian_packet(-40.0, 40.0, 1024, 1.0, 0.0, 1.0).unwrap();
        let tr = grid_split_step(&s, 1e-2, 100).unwrap();
        assert!(tr.values().iter().all(|z| z.norm() <= 1e-10));
    }

    #[test]
    fn ehrenfest_on_coarse_grid() {
        let s = GridState::gaussian_packet(-40.0, 40.0, 2048, 1.0, 0.5, 1.0).unwrap();
        let tr = grid_split_step(&s, 2e-3, 500).unwrap();
        let (t, x) = tr.iter().last().unwrap();
        let want = classical_orbit(0.5, 1.0, 1.0, t);
        assert!(((x.re - want) / want).abs() <= 1e-4);
        assert!(x.im.abs() <= 1e-12);
    }

    #[test]
    fn leak_is_detected() {
        let s = GridState::gaussian_packet(-4.0, 4.0, 256, 1.0, 0.0, 1.0).unwrap();
        assert!(matches!(grid_split_step(&s, 1e-2, 10), Err(Error::BoundaryLeak { step: 0, .. })));
    }
}
