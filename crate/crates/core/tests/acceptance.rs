use std::f64::consts::PI;
use std::process::ExitCode;

use iwqm::coherent::{self, BraSeries};
use iwqm::dynamics::{self, GridState};
use iwqm::eigenfunction::{eigenfunction, generating_function, sample_grid, scaled_residual};
use iwqm::fock::{build_hamiltonian, build_su11, identity_residual, AdjointSign, OperatorExpression as E};
use iwqm::quadrature::{gram_defect, gram_matrix, gram_matrix_exact, truncated_same_set_norm, ContourQuadrature};
use iwqm::verify::{self, coherent_alpha_grid, RunConfig};
use iwqm::{Family, C64};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn within(label: &str, value: f64, tol: f64) -> Result<String, String> {
    if value.is_finite() && value <= tol {
        Ok(format!("{label} {value:.2e} <= {tol:.0e}"))
    } else {
        Err(format!("{label} {value:.3e} > {tol:.0e}"))
    }
}

fn all(parts: Vec<Result<String, String>>) -> Outcome {
    let failed: Vec<String> = parts.iter().filter_map(|p| p.clone().err()).collect();
    if failed.is_empty() {
        Ok(parts.into_iter().map(|p| p.unwrap()).collect::<Vec<_>>().join("; "))
    } else {
        Err(failed.join("; "))
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn algebra(sign: AdjointSign) -> Outcome {
    let dim = 64;
    let h = E::hamiltonian(1.0).map_err(err)?;
    let id = |l: E, r: E| identity_residual(&l, &r, dim).map(|x| x.residual).map_err(err);
    let su = build_su11(dim).map_err(err)?;
    all(vec![
        within("[a-,a+]-I", id(E::commutator(E::lowering(), E::raising()), E::identity())?, 1e-12),
        within(
            "adj(n)+n+I",
            id(E::number().adjoint(sign).plus(E::number()).plus(E::identity()), E::scalar(C64::new(0.0, 0.0)))?,
            1e-12,
        ),
        within("adj(H)-H", id(h.adjoint(sign), h.clone())?, 1e-12),
        within("[Sx,Sy]-iSz", id(E::commutator(E::s_x(), E::s_y()), E::s_z().scaled(C64::new(0.0, 1.0)))?, 1e-12),
        within("[Sz,S+]-S+", id(E::commutator(E::s_z(), E::s_plus()), E::s_plus())?, 1e-12),
        within("[Sz,S-]+S-", id(E::commutator(E::s_z(), E::s_minus()), E::s_minus().negated())?, 1e-12),
        within("[S+,S-]+2Sz", id(E::commutator(E::s_plus(), E::s_minus()), E::s_z().scaled(C64::new(-2.0, 0.0)))?, 1e-12),
        within("H-2iwSz", su.hamiltonian_residual(1.0).map_err(err)?, 0.0),
    ])
}

fn spectrum() -> Outcome {
    let ev = build_hamiltonian(32, 1.0).map_err(err)?.eigenvalues();
    let dev = ev
        .iter()
        .enumerate()
        .map(|(n, z)| (z - C64::new(0.0, n as f64 + 0.5)).norm())
        .fold(0.0, f64::max);
    let re = ev.iter().map(|z| z.re.abs()).fold(0.0, f64::max);
    all(vec![within("|lambda_n - i(n+1/2)|", dev, 1e-12), within("|Re lambda|", re, 1e-12)])
}

fn eigenfunctions() -> Outcome {
    let xs = sample_grid(-10.0, 10.0, 2001);
    let mut parts = Vec::new();
    for family in [Family::Ket, Family::Bra] {
        let g = generating_function(family);
        let lowered = g.shape.apply(g.lowering_generator());
        let r = xs.iter().map(|&x| lowered.evaluate(x).norm()).fold(0.0, f64::max);
        parts.push(within(&format!("{family} annihilation"), r, 1e-12));
    }
    let ladder = (1..=8)
        .map(|n| {
            let f = eigenfunction(Family::Ket, n);
            let lhs = f.shape.apply(f.lowering_generator());
            let rhs = eigenfunction(Family::Ket, n - 1).shape.scale(C64::new((n as f64).sqrt(), 0.0));
            scaled_residual(&lhs, &rhs, &xs)
        })
        .fold(0.0, f64::max);
    parts.push(within("ket ladder", ladder, 1e-10));
    all(parts)
}

fn normalization() -> Outcome {
    let rule = ContourQuadrature::new(64).map_err(err)?;
    let want = PI.sqrt() * C64::from_polar(1.0, -PI / 4.0);
    let got = rule.integrate(&iwqm::poly::ComplexPolynomial::one()).map_err(err)?;
    let g = gram_matrix(12, &rule, Default::default()).map_err(err)?;
    let exact = gram_matrix_exact(12, Default::default());
    let cross = (&g - &exact).iter().map(|z| z.norm()).fold(0.0, f64::max);
    all(vec![
        within("fresnel rel", (got - want).norm() / want.norm(), 1e-13),
        within("gram defect", gram_defect(&g), 1e-8),
        within("gram vs oracle", cross, 1e-10),
    ])
}

fn nonlocal() -> Outcome {
    let g = generating_function(Family::Ket);
    let d = 1.0 / PI.sqrt();
    let xs = sample_grid(-10.0, 10.0, 1001);
    let dev = xs.iter().map(|&x| (g.evaluate(x).norm_sqr() - d).abs() / d).fold(0.0, f64::max);
    let ls = [1.0, 10.0, 100.0];
    let vals: Vec<f64> = ls.iter().map(|&l| truncated_same_set_norm(&g, l, 1e-12)).collect();
    let norm_err = ls.iter().zip(&vals).map(|(l, v)| (v - 2.0 * l / PI.sqrt()).abs()).fold(0.0, f64::max);
    let linear = (vals[2] / vals[1] - 10.0).abs();
    all(vec![
        within("|psi0|^2 rel", dev, 1e-15),
        within("truncated norm", norm_err, 1e-10),
        within("N(100)/N(10) - 10", linear, 1e-10),
    ])
}

fn coherent_for(series: BraSeries) -> Outcome {
    let dim = 64;
    let mut parts = Vec::new();
    let mut pairing = 0.0_f64;
    let mut var = 0.0_f64;
    let mut prod = 0.0_f64;
    let mut eigen_ok = true;
    let alphas = coherent_alpha_grid(0, 0);
    if alphas.len() != 25 || alphas.iter().any(|a| a.norm() > 2.0) {
        return Err("alpha grid".into());
    }
    for alpha in alphas {
        let m = coherent::moments(alpha, dim, series).map_err(err)?;
        pairing = pairing.max((m.pairing - 1.0).norm());
        let bound = coherent::residual_bound(alpha, dim) + 1e-14;
        eigen_ok &= m.eigen_residual_ket <= bound && m.eigen_residual_bra <= bound;
        var = var
            .max((m.uncertainty.dx2 - C64::new(0.0, -0.5)).norm())
            .max((m.uncertainty.dp2 - C64::new(0.0, 0.5)).norm());
        prod = prod.max((m.uncertainty.product - 0.5).abs());
    }
    parts.push(within("pairing-1", pairing, 1e-10));
    parts.push(if eigen_ok { Ok("eigen residual <= tail bound".into()) } else { Err("eigen residual above tail bound".into()) });
    parts.push(within("variances", var, 1e-10));
    parts.push(within("dx dp - 1/2", prod, 1e-10));
    all(parts)
}

fn decay() -> Outcome {
    let mut factor = 0.0_f64;
    let mut frozen = 0.0_f64;
    let mut fd = 0.0_f64;
    for n in 0..=8 {
        for k in 0..=10 {
            let t = k as f64 / 10.0;
            let e = ((n as f64 + 0.5) * t).exp();
            let kf = dynamics::propagate_fock(Family::Ket, n, 1.0, t).map_err(err)?;
            let bf = dynamics::propagate_fock(Family::Bra, n, 1.0, t).map_err(err)?;
            factor = factor.max((kf.re - e).abs() / e).max((bf.re - 1.0 / e).abs() * e);
            let mut v = vec![C64::new(0.0, 0.0); 10];
            v[n] = C64::new(1.0, 0.0);
            let r0 = dynamics::mixed_density(&v, &v, 1.0, 0.0).map_err(err)?;
            let rt = dynamics::mixed_density(&v, &v, 1.0, t).map_err(err)?;
            frozen = frozen.max((rt - r0).iter().map(|z| z.norm()).fold(0.0, f64::max));
        }
        fd = fd.max(dynamics::density_invariant_residual(n, 1.0, 1e-3).map_err(err)?);
    }
    all(vec![
        within("growth factors rel", factor, 1e-12),
        within("rho(t)-rho(0)", frozen, 0.0),
        within("centered difference", fd, 1e-6),
    ])
}

fn correspondence() -> Outcome {
    let v = 0.5;
    let orbit = dynamics::rk4_orbit(v, 1.0, 2.0, 1e-3).map_err(err)?;
    let rk4 = orbit
        .iter()
        .skip(1)
        .map(|s| {
            let x = dynamics::classical_orbit(v, 1.0, 1.0, s.t);
            ((s.alpha - x) / x).abs()
        })
        .fold(0.0, f64::max);
    let g = GridState::default_packet(1.0, v).map_err(err)?;
    let (tr, last) = dynamics::grid_evolve(&g, 1e-3, 1500).map_err(err)?;
    let grid = tr
        .iter()
        .skip(1)
        .map(|(t, x)| {
            let want = dynamics::classical_orbit(v, 1.0, 1.0, t);
            (x - want).norm() / want.abs()
        })
        .fold(0.0, f64::max);
    all(vec![
        within("rk4 rel", rk4, 1e-8),
        within("grid rel", grid, 1e-4),
        within("norm drift", (last.norm() - g.norm()).abs(), 1e-8),
    ])
}

fn conventions() -> Outcome {
    let mut parts = Vec::new();
    for sign in AdjointSign::BOTH {
        let cfg = RunConfig { sigma: sign, ..Default::default() };
        let failing: Vec<String> = verify::run_primary_suites(&cfg)
            .iter()
            .flat_map(|r| r.failures().map(move |c| format!("{}/{}", r.suite, c.name)))
            .collect();
        parts.push(if failing.is_empty() && algebra(sign).is_ok() {
            Ok(format!("sigma {sign}: all suites pass"))
        } else {
            Err(format!("sigma {sign}: {}", failing.join(", ")))
        });
    }
    let passing: Vec<BraSeries> = BraSeries::BOTH.into_iter().filter(|&s| coherent_for(s).is_ok()).collect();
    parts.push(match passing.as_slice() {
        [one] => Ok(format!("passing bra series {}", one.label())),
        other => Err(format!("{} bra series pass", other.len())),
    });
    let report = verify::verify(&RunConfig::default()).map_err(err)?;
    parts.push(match (&report.bra_coherent_series, passing.as_slice()) {
        (Some(name), [one]) if name == one.label() && report.pass => Ok("report names it".into()),
        _ => Err(format!("report: pass {} series {:?}", report.pass, report.bra_coherent_series)),
    });
    all(parts)
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("algebra", Box::new(|| algebra(AdjointSign::default()))),
        ("spectrum", Box::new(spectrum)),
        ("eigenfunctions", Box::new(eigenfunctions)),
        ("imaginary-measure normalization", Box::new(normalization)),
        ("non-localization", Box::new(nonlocal)),
        ("coherent states", Box::new(|| coherent_for(BraSeries::default()))),
        ("decay and growth", Box::new(decay)),
        ("correspondence", Box::new(correspondence)),
        ("robustness of conventions", Box::new(conventions)),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(msg) => println!("criterion {} ({name}): PASS: {msg}", k + 1),
            Err(msg) => {
                failures += 1;
                println!("criterion {} ({name}): FAIL: {msg}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
