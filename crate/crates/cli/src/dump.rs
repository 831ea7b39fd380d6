use std::io::Write;

use clap::Subcommand;
use iwqm::coherent::{self, BraSeries};
use iwqm::dynamics::{self, GridState};
use iwqm::eigenfunction::{eigenfunction, sample_grid, BraPhase};
use iwqm::quadrature::{gram_defect, gram_matrix, gram_matrix_exact, ContourQuadrature, GRAM_NODE_MARGIN};
use iwqm::{Family, C64};
use serde::Serialize;

use crate::output::{write_json, write_table, Cx};
use crate::{Context, Failure, Format};

const GRAM_DEFAULT_NMAX: usize = 12;
const GRAM_DEFAULT_NODES: usize = 64;

#[derive(Debug, Subcommand)]
pub enum DumpCommand {
    /// Samples of psi_n: x, Re psi, Im psi, |psi|^2
    Eigenfunction {
        #[arg(long, default_value = "ket", value_parser = parse_family)]
        set: Family,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = -5.0, allow_hyphen_values = true)]
        xmin: f64,
        #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
        xmax: f64,
        #[arg(long, default_value_t = 1001)]
        samples: usize,
    },
    /// Dual Gram matrix with Re and Im interleaved, then a JSON defect line
    Gram {
        /// Quadrature nodes (default 64, raised to nmax + 8 if needed)
        #[arg(long)]
        nodes: Option<usize>,
    },
    /// Dual coherent-state moments as JSON
    Coherent {
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        alpha_re: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        alpha_im: f64,
    },
    /// Grid <x>(t) against the classical orbit
    Evolve {
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        v: f64,
        #[arg(long, default_value_t = 1.5)]
        tfinal: f64,
        /// Emit every this many steps of size 1e-3/omega
        #[arg(long, default_value_t = 10)]
        stride: usize,
    },
    /// Growth factor and mixed pairing of one level over time
    Decay {
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value = "ket", value_parser = parse_family)]
        set: Family,
        #[arg(long, default_value_t = 1.0)]
        tfinal: f64,
        #[arg(long, default_value_t = 11)]
        samples: usize,
    },
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: iwqm::Error| e.to_string())
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

pub fn run(ctx: &Context, what: DumpCommand) -> Result<(), Failure> {
    match what {
        DumpCommand::Eigenfunction { set, n, xmin, xmax, samples } => dump_eigenfunction(ctx, set, n, xmin, xmax, samples),
        DumpCommand::Gram { nodes } => dump_gram(ctx, nodes),
        DumpCommand::Coherent { alpha_re, alpha_im } => dump_coherent(ctx, C64::new(alpha_re, alpha_im)),
        DumpCommand::Evolve { v, tfinal, stride } => dump_evolve(ctx, v, tfinal, stride),
        DumpCommand::Decay { n, set, tfinal, samples } => dump_decay(ctx, n, set, tfinal, samples),
    }
}

fn dump_eigenfunction(ctx: &Context, set: Family, n: usize, xmin: f64, xmax: f64, samples: usize) -> Result<(), Failure> {
    if !xmin.is_finite() || !xmax.is_finite() || xmax <= xmin {
        return Err(usage(format!("need xmin < xmax, got [{xmin}, {xmax}]")));
    }
    if samples < 2 {
        return Err(usage("--samples must be at least 2"));
    }
    let f = eigenfunction(set, n);
    let rows: Vec<Vec<f64>> = sample_grid(xmin, xmax, samples)
        .into_iter()
        .map(|x| {
            let z = f.evaluate(x);
            vec![x, z.re, z.im, z.norm_sqr()]
        })
        .collect();
    let mut sink = ctx.sink()?;
    write_table(&mut sink, ctx.format.unwrap_or(Format::Csv), &["x", "re_psi", "im_psi", "abs2_psi"], &rows)?;
    sink.finish()?;
    Ok(())
}

#[derive(Serialize)]
struct GramSummary {
    nmax: usize,
    nodes: usize,
    max_defect: f64,
    oracle_difference: f64,
}

#[derive(Serialize)]
struct GramJson {
    matrix: Vec<Vec<Cx>>,
    #[serde(flatten)]
    summary: GramSummary,
}

fn dump_gram(ctx: &Context, nodes: Option<usize>) -> Result<(), Failure> {
    let nmax = ctx.nmax.unwrap_or(GRAM_DEFAULT_NMAX);
    let nodes = nodes.unwrap_or(GRAM_DEFAULT_NODES.max(nmax + GRAM_NODE_MARGIN));
    let rule = ContourQuadrature::new(nodes)?;
    let g = gram_matrix(nmax, &rule, BraPhase::default()).map_err(|e| usage(e.to_string()))?;
    let exact = gram_matrix_exact(nmax, BraPhase::default());
    let summary = GramSummary {
        nmax,
        nodes,
        max_defect: gram_defect(&g),
        oracle_difference: (&g - &exact).iter().map(|z| z.norm()).fold(0.0, f64::max),
    };
    let mut sink = ctx.sink()?;
    match ctx.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let header: Vec<String> = (0..=nmax).flat_map(|n| [format!("re_{n}"), format!("im_{n}")]).collect();
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            let rows: Vec<Vec<f64>> = (0..=nmax)
                .map(|m| (0..=nmax).flat_map(|n| [g[(m, n)].re, g[(m, n)].im]).collect())
                .collect();
            write_table(&mut sink, Format::Csv, &header, &rows)?;
            let line = serde_json::to_string(&summary)?;
            if ctx.out.is_some() {
                sink.finish()?;
                println!("{line}");
            } else {
                writeln!(sink, "{line}")?;
                sink.finish()?;
            }
        }
        Format::Json => {
            let matrix = (0..=nmax).map(|m| (0..=nmax).map(|n| Cx::from(g[(m, n)])).collect()).collect();
            write_json(&mut sink, &GramJson { matrix, summary })?;
            sink.finish()?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CoherentJson {
    alpha: Cx,
    dim: usize,
    bra_series: &'static str,
    pairing: Cx,
    eigen_residual: f64,
    eigen_residual_ket: f64,
    eigen_residual_bra: f64,
    tail_bound: f64,
    x: Cx,
    p: Cx,
    x2: Cx,
    p2: Cx,
    dx2: Cx,
    dp2: Cx,
    product: f64,
}

fn dump_coherent(ctx: &Context, alpha: C64) -> Result<(), Failure> {
    let cfg = &ctx.config;
    let dim = cfg.nmax;
    let series = BraSeries::default();
    // surfaces the truncation budget and dimension checks
    coherent::build_coherent(Family::Ket, alpha, dim, series, cfg.strict)?;
    let m = coherent::moments(alpha, dim, series)?;
    let out = CoherentJson {
        alpha: alpha.into(),
        dim,
        bra_series: series.label(),
        pairing: m.pairing.into(),
        eigen_residual: m.eigen_residual_ket.max(m.eigen_residual_bra),
        eigen_residual_ket: m.eigen_residual_ket,
        eigen_residual_bra: m.eigen_residual_bra,
        tail_bound: coherent::residual_bound(alpha, dim),
        x: m.x.into(),
        p: m.p.into(),
        x2: m.x2.into(),
        p2: m.p2.into(),
        dx2: m.uncertainty.dx2.into(),
        dp2: m.uncertainty.dp2.into(),
        product: m.uncertainty.product,
    };
    let mut sink = ctx.sink()?;
    match ctx.format.unwrap_or(Format::Json) {
        Format::Json => write_json(&mut sink, &out)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut sink);
            w.write_record(["quantity", "re", "im"])?;
            let complex = [
                ("pairing", out.pairing),
                ("x", out.x),
                ("p", out.p),
                ("x2", out.x2),
                ("p2", out.p2),
                ("dx2", out.dx2),
                ("dp2", out.dp2),
            ];
            for (k, z) in complex {
                w.write_record([k.to_string(), format!("{:e}", z.re), format!("{:e}", z.im)])?;
            }
            for (k, r) in [("eigen_residual", out.eigen_residual), ("product", out.product)] {
                w.write_record([k.to_string(), format!("{r:e}"), "0e0".to_string()])?;
            }
            w.flush()?;
        }
    }
    sink.finish()?;
    Ok(())
}

fn dump_evolve(ctx: &Context, v: f64, tfinal: f64, stride: usize) -> Result<(), Failure> {
    let w = ctx.config.omega;
    if !tfinal.is_finite() || tfinal <= 0.0 {
        return Err(usage(format!("--tfinal must be positive, got {tfinal}")));
    }
    if stride == 0 {
        return Err(usage("--stride must be positive"));
    }
    let dt = 1e-3 / w;
    let steps = (tfinal / dt).round() as usize;
    let initial = GridState::default_packet(w, v)?;
    let tr = dynamics::grid_split_step(&initial, dt, steps)?;
    let rows: Vec<Vec<f64>> = tr
        .iter()
        .enumerate()
        .filter(|(k, _)| k % stride == 0 || *k == steps)
        .map(|(_, (t, x))| {
            let classical = dynamics::classical_orbit(v, w, 1.0, t);
            vec![t, x.re, x.im, classical, (x - classical).norm()]
        })
        .collect();
    let mut sink = ctx.sink()?;
    write_table(
        &mut sink,
        ctx.format.unwrap_or(Format::Csv),
        &["t", "re_x", "im_x", "classical_x", "abs_error"],
        &rows,
    )?;
    sink.finish()?;
    Ok(())
}

fn dump_decay(ctx: &Context, n: usize, set: Family, tfinal: f64, samples: usize) -> Result<(), Failure> {
    let w = ctx.config.omega;
    if !tfinal.is_finite() || samples < 2 {
        return Err(usage("need finite --tfinal and --samples >= 2"));
    }
    let rows = sample_grid(0.0, tfinal, samples)
        .into_iter()
        .map(|t| {
            let g = dynamics::propagate_fock(set, n, w, t)?;
            let p = dynamics::mixed_pairing(n, w, t)?;
            Ok(vec![t, g.re, p.re])
        })
        .collect::<Result<Vec<_>, iwqm::Error>>()?;
    let mut sink = ctx.sink()?;
    write_table(&mut sink, ctx.format.unwrap_or(Format::Csv), &["t", "growth_factor", "mixed_pairing"], &rows)?;
    sink.finish()?;
    Ok(())
}
