//! Integrals against `e^{−ix²}` over the real line.
//!
//! For polynomial integrands the contour can be rotated by `x = e^{−iπ/4}s`,
//! which turns `e^{−ix²}` into `e^{−s²}` so that an ordinary Gauss–Hermite
//! rule applies. The closed-form [`moment`] table is the independent check.

mod gauss_hermite;
mod pairing;

pub use gauss_hermite::{gauss_hermite, GaussHermite};
pub use pairing::{
    gram_defect, gram_matrix, gram_matrix_exact, gram_matrix_unchecked, pairing_integral, pairing_integral_exact, GRAM_NODE_MARGIN,
    truncated_same_set_norm,
};

use std::f64::consts::{FRAC_PI_4, PI};

use crate::poly::ComplexPolynomial;
use crate::{Error, Result, C64};

/// Gauss–Hermite rule rotated onto the line `e^{−iπ/4}ℝ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourQuadrature {
    nodes: Vec<C64>,
    weights: Vec<C64>,
    real: GaussHermite,
}

impl ContourQuadrature {
    pub fn new(node_count: usize) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::InvalidArgument("a quadrature rule needs at least one node".into()));
        }
        let real = gauss_hermite(node_count);
        let rotation = Self::rotation();
        Ok(Self {
            nodes: real.nodes.iter().map(|&h| rotation * h).collect(),
            weights: real.weights.iter().map(|&w| rotation * w).collect(),
            real,
        })
    }

    /// `e^{−iπ/4}`.
    pub fn rotation() -> C64 {
        C64::from_polar(1.0, -FRAC_PI_4)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[C64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[C64] {
        &self.weights
    }

    pub fn real_rule(&self) -> &GaussHermite {
        &self.real
    }

    /// Highest polynomial degree the rule integrates exactly.
    pub fn max_exact_degree(&self) -> usize {
        2 * self.node_count() - 1
    }

    /// `∫ p(x) e^{−ix²} dx`, refusing polynomials beyond the exactness bound.
    pub fn integrate(&self, p: &ComplexPolynomial) -> Result<C64> {
        let degree = p.degree().unwrap_or(0);
        if degree > self.max_exact_degree() {
            return Err(Error::Precision {
                degree,
                max: self.max_exact_degree(),
                nodes: self.node_count(),
            });
        }
        Ok(self.integrate_unchecked(p))
    }

    /// Same sum without the exactness guard; used for convergence sweeps.
    pub fn integrate_unchecked(&self, p: &ComplexPolynomial) -> C64 {
        let n = self.node_count();
        let term = |k: usize| self.weights[k] * p.eval(self.nodes[k]);
        // mirrored nodes are summed together so odd integrands cancel exactly
        let mut acc = C64::new(0.0, 0.0);
        for k in 0..n / 2 {
            acc += term(k) + term(n - 1 - k);
        }
        if n % 2 == 1 {
            acc += term(n / 2);
        }
        acc
    }
}

/// `∫ e^{−ix²} dx = √(π/i) = √(π/2)·(1 − i)`, principal branch.
pub fn fresnel_gaussian() -> C64 {
    let a = (PI / 2.0).sqrt();
    C64::new(a, -a)
}

/// `∫ x^m e^{−ix²} dx`: zero for odd `m`, `√(π/i)·(2k−1)!!/(2i)^k` for `m = 2k`.
pub fn moment(m: usize) -> C64 {
    if m % 2 == 1 {
        return C64::new(0.0, 0.0);
    }
    let k = m / 2;
    let magnitude: f64 = (1..=k).map(|j| (2 * j - 1) as f64 / 2.0).product();
    // (1/i)^k = (−i)^k
    let phase = match k % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, -1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, 1.0),
    };
    fresnel_gaussian() * phase * magnitude
}

/// `∫ p(x) e^{−ix²} dx` from the moment table.
pub fn integrate_exact(p: &ComplexPolynomial) -> C64 {
    p.coeffs().iter().enumerate().map(|(m, c)| c * moment(m)).sum()
}

/// Adaptive composite Simpson on `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    #[derive(Clone, Copy)]
    struct Panel {
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
    }

    fn recurse<F: Fn(f64) -> f64>(f: &F, p: Panel, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (p.a + p.b);
        let flm = f(0.5 * (p.a + m));
        let frm = f(0.5 * (m + p.b));
        let left = (m - p.a) / 6.0 * (p.fa + 4.0 * flm + p.fm);
        let right = (p.b - m) / 6.0 * (p.fm + 4.0 * frm + p.fb);
        let delta = left + right - p.whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            let l = Panel { a: p.a, b: m, fa: p.fa, fm: flm, fb: p.fm, whole: left };
            let r = Panel { a: m, b: p.b, fa: p.fm, fm: frm, fb: p.fb, whole: right };
            recurse(f, l, tol / 2.0, depth - 1) + recurse(f, r, tol / 2.0, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    recurse(&f, Panel { a, b, fa, fm, fb, whole }, tol, 48)
}
