use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Check, Report, RunConfig, Verification};
use crate::coherent::{self, BraSeries, Observable};
use crate::dynamics::{self, GridState};
use crate::eigenfunction::{eigenfunction, generating_function, sample_grid, BraPhase, Eigenfunction};
use crate::fock::{
    bra_frame_action, build_hamiltonian, build_su11, identity_residual, AdjointSign, OperatorExpression as E,
};
use crate::quadrature::{
    fresnel_gaussian, gram_defect, gram_matrix, gram_matrix_exact, truncated_same_set_norm, ContourQuadrature,
};
use crate::{Family, Result, C64, I};

const ALGEBRA_TOL: f64 = 1e-12;
const SPECTRUM_DIM: usize = 32;
const EIGEN_SAMPLES: usize = 2001;
const EIGEN_RANGE: f64 = 10.0;
const LADDER_NMAX: usize = 8;
const GRAM_NMAX: usize = 12;
const GRAM_NODES: usize = 64;
const GRAM_TOL: f64 = 1e-8;
const RANDOM_ALPHAS: usize = 8;
const ALPHA_RADIUS: f64 = 2.0;
/// Rounding allowance on top of the analytic eigen-residual bound.
const ROUNDING: f64 = 1e-14;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Below the smallest truncation with a non-empty exact block the identity is
/// evaluated at that truncation instead and flagged, unless `strict`.
fn identity_check(name: &str, anchor: &str, lhs: &E, rhs: &E, dim: usize, strict: bool) -> Check {
    let needed = lhs.excursion().max(rhs.excursion()) + 1;
    let (dim, widened) = if dim < needed && !strict { (needed, true) } else { (dim, false) };
    match identity_residual(lhs, rhs, dim) {
        Ok(r) => {
            let mut c = Check::new(name, anchor, r.residual, ALGEBRA_TOL);
            c.adjusted = widened;
            c.with_detail(if widened {
                format!("truncation raised to {dim} for an exact block")
            } else {
                format!("exact block {} of {}", r.block, r.dim)
            })
        }
        Err(e) => Check::failed(name, anchor, ALGEBRA_TOL, &e),
    }
}

/// Ladder commutator, physical adjoint, SU(1,1) relations and Heisenberg
/// equations, on the exact leading block of the `nmax` truncation.
pub fn algebra_suite(cfg: &RunConfig) -> Report {
    let dim = cfg.nmax;
    let s = cfg.sigma;
    let w = cfg.omega;
    let mut checks = Vec::new();
    let h = match E::hamiltonian(w) {
        Ok(h) => h,
        Err(e) => return Report::new("algebra", vec![Check::failed("hamiltonian", "H = iω(n + 1/2)", 0.0, &e)]),
    };

    checks.push(identity_check(
        "ladder_commutator",
        "[a-, a+] = I",
        &E::commutator(E::lowering(), E::raising()),
        &E::identity(),
        dim,
        cfg.strict,
    ));
    checks.push(identity_check(
        "number_adjoint",
        "adj(n) + n + I = 0",
        &E::number().adjoint(s).plus(E::number()).plus(E::identity()),
        &E::scalar(c(0.0, 0.0)),
        dim,
        cfg.strict,
    ));
    checks.push(identity_check("hamiltonian_adjoint", "adj(H) = H", &h.adjoint(s), &h, dim, cfg.strict));
    for (name, anchor, op, sign) in [
        ("sz_anti_hermitian", "adj(Sz) = -Sz", E::s_z(), -1.0),
        ("splus_anti_hermitian", "adj(S+) = -S+", E::s_plus(), -1.0),
        ("sminus_anti_hermitian", "adj(S-) = -S-", E::s_minus(), -1.0),
        ("sx_anti_hermitian", "adj(Sx) = -Sx", E::s_x(), -1.0),
        ("sy_hermitian", "adj(Sy) = Sy", E::s_y(), 1.0),
    ] {
        checks.push(identity_check(name, anchor, &op.adjoint(s), &op.scaled(c(sign, 0.0)), dim, cfg.strict));
    }
    checks.push(identity_check(
        "su11_x_y",
        "[Sx, Sy] = i Sz",
        &E::commutator(E::s_x(), E::s_y()),
        &E::s_z().scaled(I),
        dim,
        cfg.strict,
    ));
    checks.push(identity_check(
        "su11_z_plus",
        "[Sz, S+] = S+",
        &E::commutator(E::s_z(), E::s_plus()),
        &E::s_plus(),
        dim,
        cfg.strict,
    ));
    checks.push(identity_check(
        "su11_z_minus",
        "[Sz, S-] = -S-",
        &E::commutator(E::s_z(), E::s_minus()),
        &E::s_minus().negated(),
        dim,
        cfg.strict,
    ));
    checks.push(identity_check(
        "su11_plus_minus",
        "[S+, S-] = -2 Sz",
        &E::commutator(E::s_plus(), E::s_minus()),
        &E::s_z().scaled(c(-2.0, 0.0)),
        dim,
        cfg.strict,
    ));
    checks.push(
        match build_su11(dim).and_then(|su| {
            let scale = build_hamiltonian(dim, w)?.max_abs();
            Ok(su.hamiltonian_residual(w)? / scale)
        }) {
            Ok(r) => Check::new("hamiltonian_su11", "H = 2iω Sz (full matrix, relative)", r, f64::EPSILON)
                .with_detail("exact on the whole truncation"),
            Err(e) => Check::failed("hamiltonian_su11", "H = 2iω Sz", f64::EPSILON, &e),
        },
    );
    checks.push(identity_check(
        "heisenberg_x",
        "[x, H] = iω p",
        &E::commutator(E::position(), h.clone()),
        &E::momentum().scaled(I * w),
        dim,
        cfg.strict,
    ));
    checks.push(identity_check(
        "heisenberg_p",
        "[p, H] = iω x",
        &E::commutator(E::momentum(), h.clone()),
        &E::position().scaled(I * w),
        dim,
        cfg.strict,
    ));
    Report::new("algebra", checks)
}

/// Eigenvalues of the truncated Hamiltonian against `iω(n+½)`.
pub fn spectrum_suite(cfg: &RunConfig) -> Report {
    let w = cfg.omega;
    let tol = ALGEBRA_TOL * w.max(1.0);
    let mut checks = Vec::new();
    match build_hamiltonian(SPECTRUM_DIM, w) {
        Ok(h) => {
            let ev = h.eigenvalues();
            let value = ev
                .iter()
                .enumerate()
                .map(|(n, z)| (z - c(0.0, w * (n as f64 + 0.5))).norm())
                .fold(0.0, f64::max);
            let real = ev.iter().map(|z| z.re.abs()).fold(0.0, f64::max);
            checks.push(Check::new("ket_eigenvalues", "eigenvalues of H = iω(n + 1/2)", value, tol));
            checks.push(Check::new("ket_real_part", "Re eigenvalues of H = 0", real, tol));
        }
        Err(e) => checks.push(Check::failed("ket_eigenvalues", "eigenvalues of H = iω(n + 1/2)", tol, &e)),
    }
    let bra = E::hamiltonian(w).and_then(|h| {
        let adj = h.adjoint(cfg.sigma);
        let block = adj.exact_block(SPECTRUM_DIM).unwrap_or(0);
        let full = bra_frame_action(&h, cfg.sigma, SPECTRUM_DIM)?;
        let leading = full.entries().view((0, 0), (block, block)).into_owned();
        let mut ev = crate::fock::TruncatedOperator::from_matrix(leading)?.eigenvalues();
        ev.sort_by(|a, b| b.im.total_cmp(&a.im));
        Ok((ev, block))
    });
    checks.push(match bra {
        Ok((ev, block)) => Check::new(
            "bra_eigenvalues",
            "bra-frame eigenvalues of H = -iω(n + 1/2) on the exact block",
            ev.iter()
                .enumerate()
                .map(|(n, z)| (z - c(0.0, -w * (n as f64 + 0.5))).norm())
                .fold(0.0, f64::max),
            tol,
        )
        .with_detail(format!("lowest {block} of {SPECTRUM_DIM} levels")),
        Err(e) => Check::failed("bra_eigenvalues", "bra-frame eigenvalues of H", tol, &e),
    });
    Report::new("spectrum", checks)
}

fn max_abs_on(f: &crate::eigenfunction::GaussianPhaseFunction, xs: &[f64]) -> f64 {
    xs.iter().map(|&x| f.evaluate(x).norm()).fold(0.0, f64::max)
}

/// Coordinate-space ladder action on the dual eigenfunctions.
pub fn eigenfunction_suite(_cfg: &RunConfig) -> Report {
    use crate::eigenfunction::scaled_residual;
    let xs = sample_grid(-EIGEN_RANGE, EIGEN_RANGE, EIGEN_SAMPLES);
    let mut checks = Vec::new();
    for family in [Family::Ket, Family::Bra] {
        let g = generating_function(family);
        let lowered = g.shape.apply(g.lowering_generator());
        checks.push(Check::new(
            format!("{family}_ground_annihilated"),
            format!("lowering operator annihilates the {family} generating function"),
            max_abs_on(&lowered, &xs),
            ALGEBRA_TOL,
        ));
    }

    let ladder = |family: Family, lower: bool| -> f64 {
        let phase = match family {
            Family::Ket => c(1.0, 0.0),
            Family::Bra => BraPhase::default().ladder_coefficient(),
        };
        let range = if lower { 1..=LADDER_NMAX } else { 0..=LADDER_NMAX - 1 };
        range
            .map(|n| {
                let f: Eigenfunction = eigenfunction(family, n);
                if lower {
                    let lhs = f.shape.apply(f.lowering_generator());
                    let rhs = eigenfunction(family, n - 1).shape.scale(phase * (n as f64).sqrt());
                    scaled_residual(&lhs, &rhs, &xs)
                } else {
                    let lhs = f.shape.apply(f.raising_generator());
                    let rhs = eigenfunction(family, n + 1).shape.scale(phase * ((n + 1) as f64).sqrt());
                    scaled_residual(&lhs, &rhs, &xs)
                }
            })
            .fold(0.0, f64::max)
    };
    checks.push(Check::new("ket_lowering", "a- psi_n^r = sqrt(n) psi_{n-1}^r, n <= 8", ladder(Family::Ket, true), 1e-10));
    checks.push(Check::new(
        "ket_raising",
        "a+ psi_n^r = sqrt(n+1) psi_{n+1}^r, n < 8",
        ladder(Family::Ket, false),
        1e-10,
    ));
    checks.push(Check::new(
        "bra_lowering",
        "a+ psi_n^l = i sqrt(n) psi_{n-1}^l, n <= 8",
        ladder(Family::Bra, true),
        1e-10,
    ));
    checks.push(Check::new(
        "bra_raising",
        "a- psi_n^l = i sqrt(n+1) psi_{n+1}^l, n < 8",
        ladder(Family::Bra, false),
        1e-10,
    ));

    let number = (0..=LADDER_NMAX)
        .map(|n| {
            let f = eigenfunction(Family::Ket, n);
            let lhs = f.shape.apply(f.lowering_generator()).apply(f.raising_generator());
            scaled_residual(&lhs, &f.shape.scale(c(n as f64, 0.0)), &xs)
        })
        .fold(0.0, f64::max);
    checks.push(Check::new("ket_number", "a+ a- psi_n^r = n psi_n^r, n <= 8", number, 1e-9));
    Report::new("eigenfunctions", checks)
}

/// Fresnel integral by contour quadrature, and the dual Gram matrix.
pub fn normalization_suite(cfg: &RunConfig) -> Report {
    let mut checks = Vec::new();
    let want = PI.sqrt() * C64::from_polar(1.0, -PI / 4.0);
    let rule = ContourQuadrature::new(GRAM_NODES);
    match &rule {
        Ok(rule) => {
            let got = rule.integrate(&crate::poly::ComplexPolynomial::one());
            checks.push(Check::from_result(
                "fresnel_quadrature",
                "∫ exp(-i x²) dx = sqrt(π) exp(-iπ/4)",
                got.map(|z| (z - want).norm() / want.norm()),
                1e-13,
            ));
            let gram = gram_matrix(GRAM_NMAX, rule, BraPhase::default());
            let exact = gram_matrix_exact(GRAM_NMAX, BraPhase::default());
            checks.push(Check::from_result(
                "gram_identity",
                "∫ conj(psi_m^l) psi_n^r dx = δ_mn, n <= 12, 64 nodes",
                gram.as_ref().map(gram_defect).map_err(Clone::clone),
                GRAM_TOL,
            ));
            checks.push(Check::from_result(
                "gram_vs_moment_oracle",
                "quadrature Gram = closed-form moment Gram",
                gram.map(|g| (g - &exact).iter().map(|z| z.norm()).fold(0.0, f64::max)),
                cfg.tol,
            ));
        }
        Err(e) => checks.push(Check::failed("fresnel_quadrature", "∫ exp(-i x²) dx", 1e-13, e)),
    }
    checks.push(Check::new(
        "fresnel_closed_form",
        "Im ∫ exp(-i x²) dx = -Re ∫ exp(-i x²) dx",
        (fresnel_gaussian().re + fresnel_gaussian().im).abs(),
        0.0,
    ));
    let alt = gram_matrix_exact(GRAM_NMAX, BraPhase::MinusI);
    let signed = alt
        .iter()
        .enumerate()
        .map(|(k, z)| {
            let (r, col) = (k % alt.nrows(), k / alt.nrows());
            let want = if r == col { (-1f64).powi(r as i32) } else { 0.0 };
            (z - c(want, 0.0)).norm()
        })
        .fold(0.0, f64::max);
    checks.push(Check::new(
        "alternating_bra_phase",
        "bra prefactor 1/(-i)^n gives Gram = diag((-1)^n)",
        signed,
        cfg.tol,
    ));
    Report::new("normalization", checks)
}

/// Constant modulus of the ground states and linear growth of the truncated
/// same-set norm.
pub fn nonlocal_suite(cfg: &RunConfig) -> Report {
    let xs = sample_grid(-EIGEN_RANGE, EIGEN_RANGE, 1001);
    let density = 1.0 / PI.sqrt();
    let mut checks = Vec::new();
    for family in [Family::Ket, Family::Bra] {
        let g = generating_function(family);
        let r = xs
            .iter()
            .map(|&x| (g.evaluate(x).norm_sqr() - density).abs() / density)
            .fold(0.0, f64::max);
        checks.push(Check::new(
            format!("{family}_ground_density"),
            "|psi_0(x)|² = 1/sqrt(π) at 1001 points",
            r,
            1e-15,
        ));
    }
    let psi = generating_function(Family::Ket);
    let lengths = [1.0, 10.0, 100.0];
    let values: Vec<f64> = lengths.iter().map(|&l| truncated_same_set_norm(&psi, l, cfg.tol * 1e-2)).collect();
    let worst = lengths
        .iter()
        .zip(&values)
        .map(|(l, v)| (v - 2.0 * l / PI.sqrt()).abs())
        .fold(0.0, f64::max);
    checks.push(Check::new(
        "truncated_norm",
        "∫_{-L}^{L} |psi_0|² dx = 2L/sqrt(π), L = 1, 10, 100",
        worst,
        cfg.tol,
    ));
    checks.push(
        Check::new(
            "norm_diverges_linearly",
            "N(100 L) / N(L) = 100",
            (values[2] / values[0] - 100.0).abs() / 100.0,
            cfg.tol,
        )
        .with_detail(format!("N(100) = {:.6}", values[2])),
    );
    Report::new("nonlocal", checks)
}

/// The fixed 5 × 5 grid with real and imaginary parts in
/// `{−1.4, −0.7, 0, 0.7, 1.4}` followed by `random` seeded draws from the disc
/// `|α| ≤ 2`.
pub fn coherent_alpha_grid(seed: u64, random: usize) -> Vec<C64> {
    let axis = [-1.4, -0.7, 0.0, 0.7, 1.4];
    let mut out: Vec<C64> = axis.iter().flat_map(|&re| axis.iter().map(move |&im| c(re, im))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        let r = ALPHA_RADIUS * rng.gen::<f64>().sqrt();
        let theta = 2.0 * PI * rng.gen::<f64>();
        out.push(C64::from_polar(r, theta));
    }
    out
}

struct Worst {
    value: f64,
    alpha: C64,
    tolerance: f64,
    adjusted: bool,
    error: Option<crate::Error>,
}

impl Worst {
    fn new(tolerance: f64) -> Self {
        Self {
            value: 0.0,
            alpha: c(0.0, 0.0),
            tolerance,
            adjusted: false,
            error: None,
        }
    }

    // tracks the worst ratio residual / tolerance
    fn record(&mut self, value: f64, tolerance: f64, adjusted: bool, alpha: C64) {
        let worse = !value.is_finite() || value / tolerance > self.value / self.tolerance;
        if worse && self.value.is_finite() {
            self.value = value;
            self.tolerance = tolerance;
            self.alpha = alpha;
            self.adjusted = adjusted;
        }
    }

    fn check(self, name: &str, anchor: &str) -> Check {
        if let Some(e) = &self.error {
            return Check::failed(name, anchor, self.tolerance, e);
        }
        let mut out = Check::new(name, anchor, self.value, self.tolerance)
            .with_detail(format!("worst at alpha = {:.4}{:+.4}i", self.alpha.re, self.alpha.im));
        out.adjusted = self.adjusted;
        out
    }
}

/// Truncation allowance for a moment at `dim` levels; operators up to second
/// order reach two levels past the truncation.
fn truncation_allowance(alpha: C64, dim: usize) -> f64 {
    let a = 1.0 + alpha.norm();
    8.0 * a * a * a * a * coherent::pairing_tail(alpha, dim.saturating_sub(2))
}

/// Normalization, eigen residual and the uncertainty product for one bra
/// series on the `α` grid.
pub fn coherent_suite(cfg: &RunConfig, series: BraSeries) -> Report {
    let dim = cfg.nmax.max(coherent::MIN_DIM);
    let alphas = coherent_alpha_grid(cfg.seed, RANDOM_ALPHAS);
    let tol = cfg.tol;
    let mut pairing = Worst::new(tol);
    let mut eigen_ket = Worst::new(ROUNDING);
    let mut eigen_bra = Worst::new(ROUNDING);
    let mut dx2 = Worst::new(tol);
    let mut dp2 = Worst::new(tol);
    let mut product = Worst::new(tol);
    let mut moments_err = Worst::new(tol);

    for &alpha in &alphas {
        let tail = coherent::tail_estimate(alpha, dim);
        let over_budget = tail > coherent::TAIL_BUDGET;
        if over_budget && cfg.strict {
            let err = crate::Error::TruncationBudget {
                tail,
                budget: coherent::TAIL_BUDGET,
                alpha_abs: alpha.norm(),
                dim,
            };
            for w in [&mut pairing, &mut dx2, &mut dp2, &mut product, &mut moments_err] {
                w.error.get_or_insert(err.clone());
            }
            continue;
        }
        let m = match coherent::moments(alpha, dim, series) {
            Ok(m) => m,
            Err(e) => {
                pairing.error.get_or_insert(e);
                continue;
            }
        };
        let (t, adjusted) = if over_budget {
            (tol.max(truncation_allowance(alpha, dim)), true)
        } else {
            (tol, false)
        };
        let bound = coherent::residual_bound(alpha, dim) + ROUNDING;
        pairing.record((m.pairing - 1.0).norm(), t, adjusted, alpha);
        eigen_ket.record(m.eigen_residual_ket, bound, false, alpha);
        eigen_bra.record(m.eigen_residual_bra, bound, false, alpha);
        dx2.record((m.uncertainty.dx2 - c(0.0, -0.5)).norm(), t, adjusted, alpha);
        dp2.record((m.uncertainty.dp2 - c(0.0, 0.5)).norm(), t, adjusted, alpha);
        let u = m.uncertainty;
        product.record((u.product - 0.5).abs().max(u.product_im.abs()), t, adjusted, alpha);
        let closed = [(Observable::X, m.x), (Observable::P, m.p), (Observable::X2, m.x2), (Observable::P2, m.p2)]
            .iter()
            .map(|(o, v)| (v - o.closed_form(alpha)).norm())
            .fold(0.0, f64::max);
        moments_err.record(closed, t, adjusted, alpha);
    }

    let checks = vec![
        pairing.check("mutual_normalization", "<alpha|alpha> (bra l, ket r) = 1"),
        eigen_ket.check("ket_eigen_residual", "|(a- - alpha) ket| <= |alpha|^dim / sqrt((dim-1)!)"),
        eigen_bra.check("bra_eigen_residual", "|(a+ - alpha) bra| <= |alpha|^dim / sqrt((dim-1)!)"),
        moments_err.check("moments_closed_form", "<x> = (alpha - i alpha*)/sqrt(2i) and companions"),
        dx2.check("position_variance", "(Δx)² = -i/2"),
        dp2.check("momentum_variance", "(Δp)² = i/2"),
        product.check("uncertainty_product", "Δx Δp = 1/2"),
    ];
    Report::new(format!("coherent {}", series.label()), checks)
}

/// Growth and decay factors and the mixed density.
pub fn decay_suite(cfg: &RunConfig) -> Report {
    let w = cfg.omega;
    let times: Vec<f64> = (0..=4).map(|k| 0.25 * k as f64 / w).collect();
    let mut factor = 0.0_f64;
    let mut pairing = 0.0_f64;
    let mut same_set = 0.0_f64;
    let mut frozen = 0.0_f64;
    let mut liouville = 0.0_f64;
    let mut failure = None;
    let mut run = || -> Result<()> {
        for n in 0..=LADDER_NMAX {
            for &t in &times {
                // oracle: (e^{ωt/2})^{2n+1}
                let half = (0.5 * w * t).exp();
                let grow = half.powi(2 * n as i32 + 1);
                let k = dynamics::propagate_fock(Family::Ket, n, w, t)?;
                let b = dynamics::propagate_fock(Family::Bra, n, w, t)?;
                factor = factor.max((k.re - grow).abs() / grow).max((b.re * grow - 1.0).abs());
                pairing = pairing.max((dynamics::mixed_pairing(n, w, t)? - 1.0).norm());
                let s = dynamics::same_set_pairing(Family::Ket, n, w, t)?;
                same_set = same_set.max((s - grow * grow).abs() / (grow * grow));
                let mut v = vec![c(0.0, 0.0); LADDER_NMAX + 1];
                v[n] = c(1.0, 0.0);
                let rho0 = dynamics::mixed_density(&v, &v, w, 0.0)?;
                let rho = dynamics::mixed_density(&v, &v, w, t)?;
                frozen = frozen.max((rho - rho0).iter().map(|z| z.norm()).fold(0.0, f64::max));
            }
            liouville = liouville.max(dynamics::density_invariant_residual(n, w, 1e-3)?);
        }
        Ok(())
    };
    if let Err(e) = run() {
        failure = Some(e);
    }
    let mut checks = vec![
        Check::new("growth_factors", "ket e^{(n+1/2)ωt}, bra e^{-(n+1/2)ωt}, n <= 8, ωt <= 1", factor, 1e-12),
        Check::new("mixed_pairing", "<psi_n(t)|psi_n(t)> (bra l, ket r) = 1", pairing, 1e-12),
        Check::new("same_set_growth", "<psi_n(t)|psi_n(t)> (ket r, ket r) = e^{2(n+1/2)ωt}", same_set, 1e-12),
        Check::new("mixed_density_frozen", "rho(t) = rho(0) entrywise", frozen, 0.0),
        Check::new("liouville_centered_difference", "i dρ/dt = [H, ρ], dt = 1e-3", liouville, 1e-6),
    ];
    if let Some(e) = failure {
        checks.push(Check::failed("decay_run", "propagation", 0.0, &e));
    }
    Report::new("decay", checks)
}

/// RK4 `α(t)`, the split-step grid `⟨x⟩(t)` and the classical orbit.
pub fn correspondence_suite(cfg: &RunConfig) -> Report {
    let w = cfg.omega;
    let v = 0.5;
    let mut checks = Vec::new();

    let rk4 = dynamics::rk4_orbit(v, w, 2.0 / w, 1e-3 / w).map(|orbit| {
        orbit
            .iter()
            .skip(1)
            .map(|s| {
                let x = dynamics::classical_orbit(v, w, 1.0, s.t);
                ((s.alpha - x) / x).abs()
            })
            .fold(0.0, f64::max)
    });
    checks.push(Check::from_result(
        "alpha_vs_orbit",
        "RK4 alpha(t) = (v/ω) sinh(ωt), ωt <= 2, dt = 1e-3",
        rk4,
        dynamics::ALPHA_TOL,
    ));
    checks.push(Check::from_result(
        "alpha_invariant",
        "dα/dt² - ω² α² = v²",
        dynamics::energy_invariant_drift(v, w, 2.0 / w, 1e-3 / w),
        1e-8,
    ));

    let dt = 1e-3 / w;
    let steps = 1500;
    let run = GridState::default_packet(w, v).and_then(|g| {
        let norm0 = g.norm();
        let (tr, last) = dynamics::grid_evolve(&g, dt, steps)?;
        Ok((tr, (last.norm() - norm0).abs()))
    });
    let (orbit, drift) = match run {
        Ok((tr, drift)) => {
            let err = tr
                .iter()
                .skip(1)
                .map(|(t, x)| {
                    let want = dynamics::classical_orbit(v, w, 1.0, t);
                    (x - want).norm() / want.abs()
                })
                .fold(0.0, f64::max);
            (Ok(err), Ok(drift))
        }
        Err(e) => (Err(e.clone()), Err(e)),
    };
    checks.push(Check::from_result("grid_vs_orbit", "L² <x>(t) = (v/ω) sinh(ωt), ωt <= 1.5", orbit, 1e-4));
    checks.push(Check::from_result("grid_norm_drift", "∫|psi|² dx conserved", drift, 1e-8));
    let parity = GridState::default_packet(w, 0.0)
        .and_then(|g| dynamics::grid_split_step(&g, dt, steps))
        .map(|tr| tr.values().iter().map(|z| z.norm()).fold(0.0, f64::max));
    checks.push(Check::from_result("grid_parity", "v = 0 keeps <x>(t) = 0", parity, 1e-10));
    Report::new("correspondence", checks)
}

/// Suites 1 to 8 under `cfg.sigma`.
pub fn run_primary_suites(cfg: &RunConfig) -> Vec<Report> {
    vec![
        algebra_suite(cfg),
        spectrum_suite(cfg),
        eigenfunction_suite(cfg),
        normalization_suite(cfg),
        nonlocal_suite(cfg),
        coherent_suite(cfg, BraSeries::default()),
        decay_suite(cfg),
        correspondence_suite(cfg),
    ]
}

fn outcomes(reports: &[Report]) -> Vec<(String, bool)> {
    reports
        .iter()
        .flat_map(|r| r.checks.iter().map(move |c| (format!("{}/{}", r.suite, c.name), c.pass)))
        .collect()
}

/// Both adjoint signs and both bra coherent series. Returns the report and
/// the label of the single passing series, if there is exactly one.
pub fn conventions_suite(cfg: &RunConfig, primary: &[Report]) -> (Report, Option<String>) {
    let mut checks = Vec::new();
    let other = match cfg.sigma {
        AdjointSign::Plus => AdjointSign::Minus,
        AdjointSign::Minus => AdjointSign::Plus,
    };
    let other_reports = run_primary_suites(&cfg.with_sigma(other));
    let here = outcomes(primary);
    let there = outcomes(&other_reports);
    let disagreements: Vec<&str> = here
        .iter()
        .zip(&there)
        .filter(|(a, b)| a.1 != b.1)
        .map(|(a, _)| a.0.as_str())
        .collect();
    let mut agree = Check::boolean(
        "sigma_agreement",
        format!("identical pass/fail under sigma {} and {}", cfg.sigma, other),
        disagreements.is_empty() && here.len() == there.len(),
    );
    if !disagreements.is_empty() {
        agree = agree.with_detail(disagreements.join(", "));
    }
    checks.push(agree);
    for sign in AdjointSign::BOTH {
        let reports = if sign == cfg.sigma { primary } else { &other_reports };
        let failing: Vec<String> = reports
            .iter()
            .flat_map(|r| r.failures().map(move |c| format!("{}/{}", r.suite, c.name)))
            .collect();
        let mut ch = Check::boolean(
            format!("suites_pass_sigma_{}", if sign == AdjointSign::Plus { "plus" } else { "minus" }),
            format!("suites 1-8 pass with adjoint sign {sign}"),
            failing.is_empty(),
        );
        if !failing.is_empty() {
            ch = ch.with_detail(failing.join(", "));
        }
        checks.push(ch);
    }

    let passing: Vec<BraSeries> = BraSeries::BOTH
        .into_iter()
        .filter(|&s| coherent_suite(cfg, s).pass)
        .collect();
    let named = (passing.len() == 1).then(|| passing[0].label().to_string());
    let mut one = Check::new(
        "single_bra_series",
        "exactly one bra coherent series passes the coherent suite",
        (passing.len() as f64 - 1.0).abs(),
        0.0,
    );
    one = one.with_detail(match &named {
        Some(label) => format!("passing series: {label}"),
        None => format!("{} series pass", passing.len()),
    });
    checks.push(one);
    (Report::new("conventions", checks), named)
}

/// All suites plus the convention checks.
pub fn verify(cfg: &RunConfig) -> Result<Verification> {
    cfg.validate()?;
    let mut suites = run_primary_suites(cfg);
    let (conventions, named) = conventions_suite(cfg, &suites);
    suites.push(conventions);
    let pass = suites.iter().all(|r| r.pass);
    Ok(Verification {
        config: *cfg,
        suites,
        bra_coherent_series: named,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_grid_is_seeded_and_bounded() {
        let a = coherent_alpha_grid(0, 8);
        assert_eq!(a.len(), 33);
        assert_eq!(a, coherent_alpha_grid(0, 8));
        assert_ne!(a[25..], coherent_alpha_grid(1, 8)[25..]);
        assert!(a.iter().all(|z| z.norm() <= 2.0));
    }

    #[test]
    fn primary_suites_pass_by_default() {
        let cfg = RunConfig::default();
        for r in run_primary_suites(&cfg) {
            let failing: Vec<_> = r.failures().collect();
            assert!(r.pass, "{}: {failing:#?}", r.suite);
        }
    }

    #[test]
    fn wrong_series_fails_coherent_suite() {
        let r = coherent_suite(&RunConfig::default(), BraSeries::MinusIAlpha);
        assert!(!r.pass);
    }

    #[test]
    fn small_truncation_is_flagged() {
        let cfg = RunConfig { nmax: 4, ..Default::default() };
        let r = coherent_suite(&cfg, BraSeries::default());
        assert!(r.checks.iter().any(|c| c.adjusted), "{r:#?}");
        let strict = coherent_suite(&RunConfig { strict: true, ..cfg }, BraSeries::default());
        assert!(!strict.pass);
    }
}
