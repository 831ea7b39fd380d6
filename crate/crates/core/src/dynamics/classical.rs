use super::Trajectory;
use crate::{check_omega, Error, Result, C64};

/// Tolerance on the RK4 orbit relative to the closed form.
pub const ALPHA_TOL: f64 = 1e-8;

/// `sign·(v/ω)·sinh(ωt)`.
pub fn classical_orbit(v: f64, omega: f64, sign: f64, t: f64) -> f64 {
    sign * v / omega * (omega * t).sinh()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitSample {
    pub t: f64,
    pub alpha: f64,
    pub velocity: f64,
}

/// RK4 for `α̈ = ω²α`, `α(0) = 0`, `α̇(0) = v`, with a uniform step close to
/// `dt` that lands exactly on `t_final`.
pub fn rk4_orbit(v: f64, omega: f64, t_final: f64, dt: f64) -> Result<Vec<OrbitSample>> {
    check_omega(omega)?;
    if dt.is_nan() || dt <= 0.0 || t_final.is_nan() || t_final <= 0.0 || !t_final.is_finite() {
        return Err(Error::InvalidArgument(format!("need dt > 0 and t_final > 0, got dt = {dt}, t_final = {t_final}")));
    }
    let steps = (t_final / dt).round().max(1.0) as usize;
    let h = t_final / steps as f64;
    let w2 = omega * omega;
    let f = |a: f64, b: f64| (b, w2 * a);

    let mut out = Vec::with_capacity(steps + 1);
    let (mut a, mut b) = (0.0, v);
    out.push(OrbitSample { t: 0.0, alpha: a, velocity: b });
    for k in 1..=steps {
        let (k1a, k1b) = f(a, b);
        let (k2a, k2b) = f(a + 0.5 * h * k1a, b + 0.5 * h * k1b);
        let (k3a, k3b) = f(a + 0.5 * h * k2a, b + 0.5 * h * k2b);
        let (k4a, k4b) = f(a + h * k3a, b + h * k3b);
        a += h / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
        b += h / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
        out.push(OrbitSample {
            t: k as f64 * h,
            alpha: a,
            velocity: b,
        });
    }
    Ok(out)
}

/// Coherent-state parameter `α(t)` by RK4, checked pointwise against
/// `(v/ω)sinh(ωt)`; a relative error above [`ALPHA_TOL`] is an accuracy error.
pub fn integrate_alpha(v: f64, omega: f64, t_final: f64, dt: f64) -> Result<Trajectory> {
    let orbit = rk4_orbit(v, omega, t_final, dt)?;
    let mut worst = 0.0_f64;
    for s in &orbit {
        let exact = classical_orbit(v, omega, 1.0, s.t);
        let err = if exact == 0.0 {
            s.alpha.abs()
        } else {
            ((s.alpha - exact) / exact).abs()
        };
        worst = worst.max(err);
    }
    if worst > ALPHA_TOL {
        return Err(Error::Accuracy {
            error: worst,
            tol: ALPHA_TOL,
        });
    }
    Trajectory::new(
        orbit.iter().map(|s| s.t).collect(),
        orbit.iter().map(|s| C64::new(s.alpha, 0.0)).collect(),
    )
}

/// Largest `|α̇² − ω²α² − v²|/max(v², α̇²)` along the RK4 orbit.
pub fn energy_invariant_drift(v: f64, omega: f64, t_final: f64, dt: f64) -> Result<f64> {
    let orbit = rk4_orbit(v, omega, t_final, dt)?;
    Ok(orbit
        .iter()
        .map(|s| {
            let inv = s.velocity * s.velocity - omega * omega * s.alpha * s.alpha;
            let scale = (v * v).max(s.velocity * s.velocity).max(f64::MIN_POSITIVE);
            (inv - v * v).abs() / scale
        })
        .fold(0.0, f64::max))
}
