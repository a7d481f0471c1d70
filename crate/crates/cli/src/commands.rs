use rayon::prelude::*;
use serde_json::json;

use rmt_core::finite::{EnsembleSpec, FiniteKernel};
use rmt_core::harness::{converge_to_limit, linspace, pair_grid, soft_edge_grid};
use rmt_core::limits::{LimitKernel, LimitKernelSpec, LimitKind};
use rmt_core::macroscopic::{mp_cdf, mp_density, phase_space_momentum, turning_points, Edge, ScalingRegime, WishartParams};
use rmt_core::sampling::{ks_distance, sample, RngState, MAX_PRODUCT_N, MAX_WISHART_N};
use rmt_core::verify::{self, Suite};

use crate::config::{
    Command, ConvergeArgs, DensityArgs, EnsembleKind, KernelArgs, KernelKind, Regime, SampleArgs, TargetKind, VerifyArgs,
    MAX_GRID,
};
use crate::output::{Artifact, Cell, Table};

#[derive(Debug)]
pub enum Failure {
    /// Invalid arguments; exit code 2.
    Usage(String),
    /// A numerical routine failed; exit code 1.
    Numeric(String),
}

impl From<rmt_core::Error> for Failure {
    fn from(e: rmt_core::Error) -> Self {
        Failure::Numeric(e.to_string())
    }
}

type Outcome = Result<(Artifact, bool), Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

/// Runs a validated command. The flag is false when the command completed
/// but reported failed checks.
pub fn execute(cmd: &Command) -> Outcome {
    match cmd {
        Command::Density(a) => density(a, false),
        Command::PhaseSpace(a) => density(a, true),
        Command::Kernel(a) => kernel(a),
        Command::Converge(a) => converge(a),
        Command::Sample(a) => sample_cmd(a),
        Command::Verify(a) => verify_cmd(a),
    }
}

fn check_c(c: f64) -> Result<f64, Failure> {
    if c > 0.0 && c <= 1.0 {
        Ok(c)
    } else {
        usage(format!("--c must lie in (0, 1], got {c}"))
    }
}

/// Rejects flags that the selected variant ignores.
fn reject(context: &str, flags: &[(&str, bool)]) -> Result<(), Failure> {
    match flags.iter().find(|f| f.1) {
        Some((name, _)) => usage(format!("--{name} does not apply to {context}")),
        None => Ok(()),
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str, context: &str) -> Result<T, Failure> {
    v.map_or_else(|| usage(format!("{context} needs --{flag}")), Ok)
}

fn wishart(n: usize, t: usize) -> Result<WishartParams, Failure> {
    WishartParams::new(n, t).map_err(|e| Failure::Usage(e.to_string()))
}

fn integer_nu(nu: &[f64]) -> Result<Vec<u32>, Failure> {
    nu.iter()
        .map(|&v| {
            if v >= 0.0 && v.fract() == 0.0 && v <= u32::MAX as f64 {
                Ok(v as u32)
            } else {
                usage(format!("product ensembles need nonnegative integer --nu, got {v}"))
            }
        })
        .collect()
}

fn density(a: &DensityArgs, phase: bool) -> Outcome {
    let c = check_c(a.c)?;
    let xs = match a.grid {
        Some(g) => g.points(),
        None => {
            if !(2..=MAX_GRID).contains(&a.points) {
                return usage(format!("--points must lie in [2, {MAX_GRID}]"));
            }
            let (lo, hi) = turning_points(c);
            linspace(lo, hi, a.points)
        }
    };
    let mut table = if phase { Table::new(&["x", "p_upper", "p_lower"]) } else { Table::new(&["x", "density"]) };
    for x in xs {
        if phase {
            let p = phase_space_momentum(c, x);
            table.push(vec![x.into(), p.into(), (-p).into()]);
        } else {
            table.push(vec![x.into(), mp_density(c, x).into()]);
        }
    }
    Ok((Artifact { table, json: None }, true))
}

type Eval = Box<dyn Fn(f64, f64) -> rmt_core::Result<f64> + Send + Sync>;

fn kernel_eval(a: &KernelArgs) -> Result<Eval, Failure> {
    let ctx = format!("--kind {}", clap::ValueEnum::to_possible_value(&a.kind).map_or(String::new(), |v| v.get_name().into()));
    let (alpha, theta, nu, n, t) = (a.alpha.is_some(), a.theta.is_some(), a.nu.is_some(), a.n.is_some(), a.t.is_some());
    let limit = |kind: LimitKind| -> Result<Eval, Failure> {
        let spec = LimitKernelSpec { kind, order: a.order };
        spec.validate().map_err(|e| Failure::Usage(e.to_string()))?;
        let k = LimitKernel::new(&spec)?;
        Ok(Box::new(move |x, y| k.eval(x, y)))
    };
    let finite = |spec: EnsembleSpec| -> Result<Eval, Failure> {
        spec.validate().map_err(|e| Failure::Usage(e.to_string()))?;
        let k = FiniteKernel::new(&spec)?;
        Ok(Box::new(move |x, y| k.eval(x, y)))
    };
    match a.kind {
        KernelKind::Sine | KernelKind::Airy => {
            reject(&ctx, &[("alpha", alpha), ("theta", theta), ("nu", nu), ("N", n), ("T", t)])?;
            limit(if a.kind == KernelKind::Sine { LimitKind::Sine } else { LimitKind::Airy })
        }
        KernelKind::Bessel => {
            reject(&ctx, &[("theta", theta), ("nu", nu), ("N", n), ("T", t)])?;
            limit(LimitKind::Bessel { alpha: need(a.alpha, "alpha", &ctx)? })
        }
        KernelKind::MeijerHard => {
            reject(&ctx, &[("alpha", alpha), ("theta", theta), ("N", n), ("T", t)])?;
            let nu = a.nu.clone().map_or_else(|| usage(format!("{ctx} needs --nu")), Ok)?;
            limit(LimitKind::MeijerHard { nu })
        }
        KernelKind::MbHard => {
            reject(&ctx, &[("nu", nu), ("N", n), ("T", t)])?;
            limit(LimitKind::MbHard { alpha: need(a.alpha, "alpha", &ctx)?, theta: need(a.theta, "theta", &ctx)? })
        }
        KernelKind::Wishart => {
            reject(&ctx, &[("alpha", alpha), ("theta", theta), ("nu", nu)])?;
            finite(EnsembleSpec::Wishart(wishart(need(a.n, "N", &ctx)?, need(a.t, "T", &ctx)?)?))
        }
        KernelKind::Product => {
            reject(&ctx, &[("alpha", alpha), ("theta", theta), ("T", t)])?;
            let nu = integer_nu(a.nu.as_deref().map_or_else(|| usage(format!("{ctx} needs --nu")), Ok)?)?;
            finite(EnsembleSpec::Product { n: need(a.n, "N", &ctx)?, nu })
        }
        KernelKind::Mb => {
            reject(&ctx, &[("nu", nu), ("T", t)])?;
            finite(EnsembleSpec::MuttalibBorodin {
                n: need(a.n, "N", &ctx)?,
                alpha: need(a.alpha, "alpha", &ctx)?,
                theta: need(a.theta, "theta", &ctx)?,
            })
        }
    }
}

fn kernel(a: &KernelArgs) -> Outcome {
    if a.order == 0 {
        return usage("--order must be positive");
    }
    let k = kernel_eval(a)?;
    let xs = a.grid.points();
    let pairs: Vec<(f64, f64)> = if a.diagonal { xs.iter().map(|&x| (x, x)).collect() } else { pair_grid(&xs) };
    let values = pairs.par_iter().map(|&(x, y)| k(x, y)).collect::<rmt_core::Result<Vec<f64>>>()?;
    let mut table = if a.diagonal { Table::new(&["x", "k"]) } else { Table::new(&["x", "y", "k"]) };
    for (&(x, y), v) in pairs.iter().zip(values) {
        table.push(if a.diagonal { vec![x.into(), v.into()] } else { vec![x.into(), y.into(), v.into()] });
    }
    Ok((Artifact { table, json: None }, true))
}

fn converge(a: &ConvergeArgs) -> Outcome {
    if a.ladder.is_empty() || a.ladder[0] == 0 || a.ladder.windows(2).any(|w| w[1] <= w[0]) {
        return usage(format!("--ladder must be positive and strictly increasing, got {:?}", a.ladder));
    }
    if a.order == 0 {
        return usage("--order must be positive");
    }
    let n0 = a.ladder[0];
    let (spec, regime, target) = match a.ensemble {
        EnsembleKind::Wishart => {
            reject("Wishart ladders", &[("nu", a.nu.is_some())])?;
            if a.regime == Regime::Hard {
                reject("the hard edge", &[("c", a.c.is_some()), ("x0", a.x0.is_some())])?;
                let alpha = need(a.alpha, "alpha", "the hard edge")?;
                let spec = EnsembleSpec::Wishart(wishart(n0, n0 + alpha as usize)?);
                (spec, ScalingRegime::HardEdge, LimitKind::Bessel { alpha: alpha as f64 })
            } else {
                reject("bulk and soft-edge ladders", &[("alpha", a.alpha.is_some())])?;
                let c = check_c(need(a.c, "c", "bulk and soft-edge ladders")?)?;
                let spec = EnsembleSpec::Wishart(wishart(n0, (n0 as f64 / c).round() as usize)?);
                match a.regime {
                    Regime::Bulk => {
                        let x0 = a.x0.unwrap_or(1.0 + c);
                        let (lo, hi) = turning_points(c);
                        if !(x0 > lo && x0 < hi) {
                            return usage(format!("--x0 = {x0} lies outside the support ({lo}, {hi})"));
                        }
                        (spec, ScalingRegime::Bulk { x0 }, LimitKind::Sine)
                    }
                    _ => {
                        reject("the soft edge", &[("x0", a.x0.is_some())])?;
                        let edge = if a.regime == Regime::SoftUpper { Edge::Upper } else { Edge::Lower };
                        if edge == Edge::Lower && c == 1.0 {
                            return usage("c = 1 has no lower soft edge");
                        }
                        (spec, ScalingRegime::SoftEdge(edge), LimitKind::Airy)
                    }
                }
            }
        }
        EnsembleKind::Product => {
            reject("product ladders", &[("c", a.c.is_some()), ("alpha", a.alpha.is_some()), ("x0", a.x0.is_some())])?;
            if a.regime != Regime::Hard {
                return usage("product ensembles are compared at the hard edge only");
            }
            let nu = a.nu.clone().map_or_else(|| usage("product ladders need --nu"), Ok)?;
            let spec = EnsembleSpec::Product { n: n0, nu: nu.clone() };
            spec.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            let nu = nu.iter().map(|&v| v as f64).collect();
            (spec, ScalingRegime::HardEdge, LimitKind::MeijerHard { nu })
        }
    };
    let implied = match target {
        LimitKind::Sine => TargetKind::Sine,
        LimitKind::Airy => TargetKind::Airy,
        LimitKind::Bessel { .. } => TargetKind::Bessel,
        _ => TargetKind::MeijerHard,
    };
    if let Some(k) = a.kind {
        if k != implied {
            return usage(format!("--kind {k:?} is not the limit of this regime; expected {implied:?}").to_lowercase());
        }
    }
    let grid = match (a.grid, regime) {
        (Some(g), _) => pair_grid(&g.points()),
        (None, ScalingRegime::HardEdge) => pair_grid(&[0.5, 1.5, 3.0]),
        (None, ScalingRegime::Bulk { .. }) => pair_grid(&[-1.0, 0.0, 1.5]),
        (None, ScalingRegime::SoftEdge(_)) => soft_edge_grid(),
    };
    let target = LimitKernelSpec { kind: target, order: a.order };
    let report = converge_to_limit(&spec, regime, &target, &a.ladder, &grid)?;
    let mut table = Table::new(&["N", "pair_error", "diagonal_error", "error", "kappa", "kappa_half_width"]);
    for (i, &n) in report.ladder.iter().enumerate() {
        let k = report.kappa.as_ref().map(|v| v[i]);
        table.push(vec![
            n.into(),
            report.pair_errors[i].into(),
            report.diagonal_errors[i].into(),
            report.errors[i].into(),
            k.map_or(Cell::Text(String::new()), |f| f.kappa.into()),
            k.map_or(Cell::Text(String::new()), |f| f.half_width.into()),
        ]);
    }
    let json = json!({ "report": report, "monotone": report.is_monotone() });
    Ok((Artifact { table, json: Some(json) }, true))
}

fn sample_cmd(a: &SampleArgs) -> Outcome {
    if a.draws == 0 {
        return usage("--draws must be positive");
    }
    let spec = match a.ensemble {
        EnsembleKind::Wishart => {
            reject("Wishart sampling", &[("nu", a.nu.is_some())])?;
            if a.n > MAX_WISHART_N {
                return usage(format!("--N must not exceed {MAX_WISHART_N}"));
            }
            EnsembleSpec::Wishart(wishart(a.n, need(a.t, "T", "Wishart sampling")?)?)
        }
        EnsembleKind::Product => {
            reject("product sampling", &[("T", a.t.is_some())])?;
            if a.n > MAX_PRODUCT_N {
                return usage(format!("--N must not exceed {MAX_PRODUCT_N}"));
            }
            let nu = a.nu.clone().map_or_else(|| usage("product sampling needs --nu"), Ok)?;
            let spec = EnsembleSpec::Product { n: a.n, nu };
            spec.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            spec
        }
    };
    let batch = sample(&spec, a.draws, &RngState::from_u64(a.seed))?;
    let mut table = Table::new(&["draw", "index", "eigenvalue"]);
    for (d, r) in batch.realizations.iter().enumerate() {
        for (i, &x) in r.iter().enumerate() {
            table.push(vec![d.into(), i.into(), x.into()]);
        }
    }
    let pooled = batch.pooled();
    let mean = pooled.iter().sum::<f64>() / pooled.len() as f64;
    let ks = match spec {
        EnsembleSpec::Wishart(p) => {
            let scaled: Vec<f64> = pooled.iter().map(|x| x / p.t as f64).collect();
            Some(ks_distance(&scaled, |x| mp_cdf(p.c(), x)))
        }
        _ => None,
    };
    let json = json!({
        "rng": batch.seed,
        "count": pooled.len(),
        "min": pooled.first(),
        "max": pooled.last(),
        "mean": mean,
        "ks_marchenko_pastur": ks,
        "realizations": batch.realizations,
    });
    Ok((Artifact { table, json: Some(json) }, true))
}

fn verify_cmd(a: &VerifyArgs) -> Outcome {
    let checks = if a.suite == "all" {
        verify::run_all()
    } else {
        match Suite::parse(&a.suite) {
            Some(s) => verify::run(s),
            None => {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                return usage(format!("unknown suite '{}'; expected all or one of {}", a.suite, names.join(", ")));
            }
        }
    };
    let mut table = Table::new(&["suite", "check", "value", "tolerance", "passed"]);
    for c in &checks {
        table.push(vec![c.suite.name().into(), c.name.as_str().into(), c.value.into(), c.tolerance.into(), c.passed.into()]);
        eprintln!("{} {}: {}: {:e} (tol {:e})", if c.passed { "PASS" } else { "FAIL" }, c.suite.name(), c.name, c.value, c.tolerance);
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    eprintln!("{} of {} checks passed", checks.len() - failed, checks.len());
    Ok((Artifact { table, json: Some(json!({ "checks": checks, "failed": failed })) }, failed == 0))
}
