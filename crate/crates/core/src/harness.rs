//! Finite-N kernels against their microscopic limits: convergence ladders,
//! reproducing-property diagnostics and soft-edge scale calibration.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::{EnsembleSpec, FiniteKernel, ProductEnsemble};
use crate::limits::{bessel_kernel, meijer_hard, LimitKernel, LimitKernelSpec, LimitKind};
use crate::macroscopic::{scaling_map, Edge, ScalingRegime, WishartParams};
use crate::special::QuadratureRule;

/// Relative deviation of a fitted scale from 1 that raises a flag.
pub const KAPPA_FLAG: f64 = 0.2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub regime: ScalingRegime,
    pub target: LimitKernelSpec,
    pub ladder: Vec<usize>,
    /// `sup |K̃(s,s')K̃(s',s) - K(s,s')K(s',s)|` over the grid.
    pub pair_errors: Vec<f64>,
    /// `sup |K̃(s,s) - K(s,s)|` over the grid.
    pub diagonal_errors: Vec<f64>,
    /// Larger of the two, per `N`.
    pub errors: Vec<f64>,
    /// `p` in `error ≈ C N^p`, by log-log least squares.
    pub exponent: Option<f64>,
    /// `C` in `error ≈ C N^p`.
    pub scale: Option<f64>,
    /// Soft-edge scale fitted at each `N`, when the regime calls for one.
    pub kappa: Option<Vec<KappaFit>>,
}

impl ConvergenceReport {
    /// Every step along the ladder reduces the error.
    pub fn is_monotone(&self) -> bool {
        self.errors.windows(2).all(|w| w[1] < w[0])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KappaFit {
    pub kappa: f64,
    /// Half-width of the 95% interval from the linearized residual.
    pub half_width: f64,
    pub flagged: bool,
}

/// `(p, C)` with `y ≈ C x^p`; `None` if fewer than two positive points.
pub fn fit_power_law(x: &[f64], y: &[f64]) -> Option<(f64, f64)> {
    let pts: Vec<(f64, f64)> = x.iter().zip(y).filter(|(a, b)| **a > 0.0 && **b > 0.0).map(|(a, b)| (a.ln(), b.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let p = sxy / sxx;
    Some((p, (my - p * mx).exp()))
}

/// A kernel in microscopic variables.
pub type Rescaled = Box<dyn Fn(f64, f64) -> Result<f64> + Send + Sync>;

/// `s ↦ (λ, |dλ/ds|)` for hard-edge products: `λ = s/N`.
fn product_map(n: usize, s: f64) -> (f64, f64) {
    (s / n as f64, 1.0 / n as f64)
}

/// The ensemble at size `n`: fixed `α = T - N` at the hard edge, fixed
/// `c = N/T` elsewhere, fixed `ν` for products.
pub fn ensemble_at(spec: &EnsembleSpec, regime: ScalingRegime, n: usize) -> Result<EnsembleSpec> {
    Ok(match spec {
        EnsembleSpec::Wishart(p) => {
            let t = match regime {
                ScalingRegime::HardEdge => n + p.alpha(),
                _ => (n as f64 / p.c()).round() as usize,
            };
            EnsembleSpec::Wishart(WishartParams::new(n, t)?)
        }
        EnsembleSpec::Product { nu, .. } => {
            if regime != ScalingRegime::HardEdge {
                return Err(Error::Domain("product ensembles are compared at the hard edge only".into()));
            }
            EnsembleSpec::Product { n, nu: nu.clone() }
        }
        EnsembleSpec::MuttalibBorodin { .. } => {
            return Err(Error::Domain("no microscopic scaling map is defined for the Muttalib–Borodin ensemble".into()))
        }
    })
}

/// `J · K_N(λ(s), λ(s'))` for the ensemble `spec` (already at its size).
pub fn rescaled_kernel(spec: &EnsembleSpec, regime: ScalingRegime) -> Result<Rescaled> {
    if let EnsembleSpec::MuttalibBorodin { .. } = spec {
        ensemble_at(spec, regime, spec.n())?;
    }
    let kernel = FiniteKernel::new(spec)?;
    match spec {
        EnsembleSpec::Wishart(p) => {
            let p = *p;
            scaling_map(p, regime, 0.0)?;
            Ok(Box::new(move |s, sp| {
                let (l, j) = scaling_map(p, regime, s)?;
                let (lp, _) = scaling_map(p, regime, sp)?;
                Ok(j * kernel.eval(l, lp)?)
            }))
        }
        EnsembleSpec::Product { n, .. } => {
            let n = *n;
            Ok(Box::new(move |s, sp| {
                let (l, j) = product_map(n, s);
                Ok(j * kernel.eval(l, product_map(n, sp).0)?)
            }))
        }
        EnsembleSpec::MuttalibBorodin { .. } => Err(Error::Domain("no Muttalib–Borodin scaling map".into())),
    }
}

/// The limit in the microscopic variable `s`. The hard-edge map
/// `λ = Ts/N²` puts the Bessel kernel at `4s` with Jacobian 4.
pub fn target_kernel(target: &LimitKernelSpec, regime: ScalingRegime) -> Result<Rescaled> {
    let hard = regime == ScalingRegime::HardEdge;
    let ok = match (&target.kind, regime) {
        (LimitKind::Sine, ScalingRegime::Bulk { .. }) => true,
        (LimitKind::Airy, ScalingRegime::SoftEdge(_)) => true,
        (LimitKind::Bessel { .. } | LimitKind::MeijerHard { .. }, _) => hard,
        _ => false,
    };
    if !ok {
        return Err(Error::Domain(format!("{:?} is not the limit of the {regime:?} regime", target.kind)));
    }
    if let LimitKind::Bessel { alpha } = target.kind {
        bessel_kernel(alpha, 1.0, 1.0)?;
        return Ok(Box::new(move |s, sp| Ok(4.0 * bessel_kernel(alpha, 4.0 * s, 4.0 * sp)?)));
    }
    let k = LimitKernel::new(target)?;
    Ok(Box::new(move |s, sp| k.eval(s, sp)))
}

fn check_ladder(ladder: &[usize]) -> Result<()> {
    if ladder.is_empty() || ladder.windows(2).any(|w| w[1] <= w[0]) || ladder[0] == 0 {
        return Err(Error::Domain(format!("N-ladder {ladder:?} must be nonempty, positive and strictly increasing")));
    }
    Ok(())
}

struct LadderPoint {
    pair: f64,
    diagonal: f64,
    kappa: Option<KappaFit>,
}

/// Pair and diagonal errors of one rescaled kernel. With `soft`, `κ` is
/// fitted first and the comparison is with `κ K(κs, κs')`.
fn compare(finite: &Rescaled, target: &Rescaled, grid: &[(f64, f64)], soft: bool) -> Result<LadderPoint> {
    let pairs: Vec<(f64, f64, f64)> = grid
        .iter()
        .map(|&(s, sp)| Ok((s, sp, finite(s, sp)? * finite(sp, s)?)))
        .collect::<Result<_>>()?;
    let mut diag_pts: Vec<f64> = grid.iter().flat_map(|&(s, sp)| [s, sp]).collect();
    diag_pts.sort_by(f64::total_cmp);
    diag_pts.dedup();
    let diag: Vec<(f64, f64)> = diag_pts.iter().map(|&s| Ok((s, finite(s, s)?))).collect::<Result<_>>()?;
    let kappa = if soft {
        Some(fit_kappa(&pairs, target)?)
    } else {
        None
    };
    let k = kappa.map_or(1.0, |f| f.kappa);
    let eval = |s: f64, sp: f64| -> Result<f64> { Ok(k * target(k * s, k * sp)?) };
    let mut pair: f64 = 0.0;
    for (s, sp, v) in pairs {
        pair = pair.max((v - eval(s, sp)? * eval(sp, s)?).abs());
    }
    let mut diagonal: f64 = 0.0;
    for (s, v) in diag {
        diagonal = diagonal.max((v - eval(s, s)?).abs());
    }
    Ok(LadderPoint { pair, diagonal, kappa })
}

/// Convergence of the rescaled finite kernel to `target` along `ladder`,
/// measured on the gauge-invariant products `K(s,s')K(s',s)` and on the
/// diagonal. At the soft edge the scale `κ` is fitted at each `N` first.
pub fn converge_to_limit(
    spec: &EnsembleSpec,
    regime: ScalingRegime,
    target: &LimitKernelSpec,
    ladder: &[usize],
    grid: &[(f64, f64)],
) -> Result<ConvergenceReport> {
    check_ladder(ladder)?;
    let limit = target_kernel(target, regime)?;
    let soft = matches!(regime, ScalingRegime::SoftEdge(_));
    let points = ladder
        .par_iter()
        .map(|&n| {
            let finite = rescaled_kernel(&ensemble_at(spec, regime, n)?, regime)?;
            compare(&finite, &limit, grid, soft)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(report(regime, target.clone(), ladder, points))
}

/// [`converge_to_limit`] for caller-supplied rescaled kernels, one per `N`.
pub fn converge_kernels(
    regime: ScalingRegime,
    target: &LimitKernelSpec,
    ladder: &[usize],
    grid: &[(f64, f64)],
    finite: impl Fn(usize) -> Result<Rescaled> + Sync,
) -> Result<ConvergenceReport> {
    check_ladder(ladder)?;
    let limit = target_kernel(target, regime)?;
    let soft = matches!(regime, ScalingRegime::SoftEdge(_));
    let points = ladder.par_iter().map(|&n| compare(&finite(n)?, &limit, grid, soft)).collect::<Result<Vec<_>>>()?;
    Ok(report(regime, target.clone(), ladder, points))
}

fn report(regime: ScalingRegime, target: LimitKernelSpec, ladder: &[usize], points: Vec<LadderPoint>) -> ConvergenceReport {
    let pair_errors: Vec<f64> = points.iter().map(|p| p.pair).collect();
    let diagonal_errors: Vec<f64> = points.iter().map(|p| p.diagonal).collect();
    let errors: Vec<f64> = points.iter().map(|p| p.pair.max(p.diagonal)).collect();
    let ns: Vec<f64> = ladder.iter().map(|&n| n as f64).collect();
    let fit = fit_power_law(&ns, &errors);
    let kappa = points.iter().map(|p| p.kappa).collect::<Option<Vec<_>>>();
    ConvergenceReport {
        regime,
        target,
        ladder: ladder.to_vec(),
        pair_errors,
        diagonal_errors,
        errors,
        exponent: fit.map(|f| f.0),
        scale: fit.map(|f| f.1),
        kappa,
    }
}

/// All ordered pairs of `points`.
pub fn pair_grid(points: &[f64]) -> Vec<(f64, f64)> {
    points.iter().flat_map(|&s| points.iter().map(move |&t| (s, t))).collect()
}

/// `n` evenly spaced points on `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}

/// Sup of `|∫K(x,z)K(z,y)dz - K(x,y)|` over a 10×10 grid and `∫K(x,x)dx`,
/// both with `rule` on `panels` equal pieces of `domain`.
pub fn projection_diagnostics(
    kernel: impl Fn(f64, f64) -> Result<f64> + Sync,
    domain: (f64, f64),
    rule: &QuadratureRule,
    panels: usize,
) -> Result<(f64, f64)> {
    let (a, b) = domain;
    if !(b > a) {
        return Err(Error::Domain(format!("empty domain [{a}, {b}]")));
    }
    let nodes = rule.composite(a, b, panels);
    let grid: Vec<f64> = (0..10).map(|i| a + (i as f64 + 0.5) * (b - a) / 10.0).collect();
    let left: Vec<Vec<f64>> =
        grid.par_iter().map(|&x| nodes.iter().map(|&(z, w)| Ok(w * kernel(x, z)?)).collect()).collect::<Result<_>>()?;
    let right: Vec<Vec<f64>> =
        grid.par_iter().map(|&y| nodes.iter().map(|&(z, _)| kernel(z, y)).collect()).collect::<Result<_>>()?;
    let mut residual: f64 = 0.0;
    for (i, &x) in grid.iter().enumerate() {
        for (j, &y) in grid.iter().enumerate() {
            let conv: f64 = left[i].iter().zip(&right[j]).map(|(l, r)| l * r).sum();
            residual = residual.max((conv - kernel(x, y)?).abs());
        }
    }
    let trace = nodes.par_iter().map(|&(z, w)| Ok(w * kernel(z, z)?)).collect::<Result<Vec<f64>>>()?.iter().sum();
    Ok((residual, trace))
}

/// Fits `κ` in `P(s,s') ≈ κ² K(κs,κs')K(κs',κs)` by least squares over
/// `(s, s', P)` triples.
pub fn fit_kappa(data: &[(f64, f64, f64)], target: &Rescaled) -> Result<KappaFit> {
    if data.len() < 2 {
        return Err(Error::Domain("need at least two points to fit a scale".into()));
    }
    let resid = |k: f64| -> Result<Vec<f64>> {
        data.iter().map(|&(s, sp, p)| Ok(p - k * k * target(k * s, k * sp)? * target(k * sp, k * s)?)).collect()
    };
    let rss = |k: f64| -> Result<f64> { Ok(resid(k)?.iter().map(|r| r * r).sum()) };
    // coarse scan in ln κ, then golden section around the best cell
    let (lo, hi) = ((0.02f64).ln(), (50f64).ln());
    let steps = 200;
    let h = (hi - lo) / steps as f64;
    let mut best = (f64::INFINITY, lo);
    for i in 0..=steps {
        let u = lo + i as f64 * h;
        let v = rss(u.exp())?;
        if v < best.0 {
            best = (v, u);
        }
    }
    let (mut a, mut b) = (best.1 - h, best.1 + h);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (rss(c.exp())?, rss(d.exp())?);
    for _ in 0..200 {
        if (b - a).abs() < 1e-13 {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = rss(c.exp())?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = rss(d.exp())?;
        }
    }
    let kappa = (0.5 * (a + b)).exp();
    let r0 = resid(kappa)?;
    let dk = 1e-6 * kappa;
    let r1 = resid(kappa + dk)?;
    let jac2: f64 = r0.iter().zip(&r1).map(|(x, y)| ((y - x) / dk).powi(2)).sum();
    let dof = (data.len() - 1) as f64;
    let var = r0.iter().map(|r| r * r).sum::<f64>() / dof / jac2.max(f64::MIN_POSITIVE);
    Ok(KappaFit { kappa, half_width: 1.96 * var.sqrt(), flagged: (kappa - 1.0).abs() > KAPPA_FLAG })
}

/// Soft-edge window used for calibration, in units of the printed map.
pub fn soft_edge_grid() -> Vec<(f64, f64)> {
    pair_grid(&linspace(-8.0, 4.0, 7))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SoftEdgeCalibration {
    pub ladder: Vec<usize>,
    pub fits: Vec<KappaFit>,
    /// `κ` at the largest `N`.
    pub kappa: f64,
    /// `(max κ - min κ) / mean κ` over the ladder.
    pub spread: f64,
    pub flagged: bool,
}

/// `κ` for the upper soft edge at fixed `c = N/T` along `ladder`.
pub fn calibrate_soft_edge(params: WishartParams, ladder: &[usize]) -> Result<SoftEdgeCalibration> {
    if ladder.len() < 3 {
        return Err(Error::Domain("calibration needs at least three ladder points".into()));
    }
    check_ladder(ladder)?;
    let regime = ScalingRegime::SoftEdge(Edge::Upper);
    let spec = EnsembleSpec::Wishart(params);
    let grid = soft_edge_grid();
    let airy = target_kernel(&LimitKernelSpec::new(LimitKind::Airy), regime)?;
    let fits = ladder
        .par_iter()
        .map(|&n| {
            let k = rescaled_kernel(&ensemble_at(&spec, regime, n)?, regime)?;
            let data = grid.iter().map(|&(s, sp)| Ok((s, sp, k(s, sp)? * k(sp, s)?))).collect::<Result<Vec<_>>>()?;
            fit_kappa(&data, &airy)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(calibration(ladder, fits))
}

fn calibration(ladder: &[usize], fits: Vec<KappaFit>) -> SoftEdgeCalibration {
    let ks: Vec<f64> = fits.iter().map(|f| f.kappa).collect();
    let mean = ks.iter().sum::<f64>() / ks.len() as f64;
    let spread = (ks.iter().copied().fold(f64::NEG_INFINITY, f64::max) - ks.iter().copied().fold(f64::INFINITY, f64::min)) / mean;
    SoftEdgeCalibration {
        ladder: ladder.to_vec(),
        kappa: *ks.last().unwrap_or(&f64::NAN),
        spread,
        flagged: fits.iter().any(|f| f.flagged),
        fits,
    }
}

/// Largest relative gap between the rescaled product-kernel diagonal
/// `K_N(s/N, s/N)/N` and the hard-edge limit over `points`.
pub fn product_hard_edge_check(n: usize, nu: &[u32], points: &[f64], order: usize) -> Result<f64> {
    let ens = ProductEnsemble::new(n, nu)?;
    let nuf: Vec<f64> = nu.iter().map(|&v| v as f64).collect();
    let limit = meijer_hard(&nuf, order)?;
    points
        .par_iter()
        .map(|&s| {
            let (l, j) = product_map(n, s);
            let finite = j * ens.kernel(l, l)?;
            let want = limit.eval(s, s)?;
            Ok(((finite - want) / want).abs())
        })
        .collect::<Result<Vec<f64>>>()
        .map(|v| v.into_iter().fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::airy_kernel;
    use crate::finite::wishart_kernel;
    use crate::limits::sine_kernel;
    use crate::special::gauss_legendre;

    #[test]
    fn power_law_fit() {
        let x = [10.0, 20.0, 40.0];
        let y: Vec<f64> = x.iter().map(|v: &f64| 3.0 * v.powf(-1.5)).collect();
        let (p, c) = fit_power_law(&x, &y).unwrap();
        assert!((p + 1.5).abs() < 1e-12 && (c - 3.0).abs() < 1e-10);
        assert!(fit_power_law(&[1.0], &[1.0]).is_none());
    }

    #[test]
    fn ladder_validation() {
        let spec = EnsembleSpec::Wishart(WishartParams::new(10, 10).unwrap());
        let t = LimitKernelSpec::new(LimitKind::Bessel { alpha: 0.0 });
        let grid = [(1.0, 1.0)];
        assert!(converge_to_limit(&spec, ScalingRegime::HardEdge, &t, &[20, 10], &grid).is_err());
        assert!(converge_to_limit(&spec, ScalingRegime::Bulk { x0: 1.0 }, &t, &[10, 20], &grid).is_err());
        let mb = EnsembleSpec::MuttalibBorodin { n: 3, alpha: 0.5, theta: 2 };
        assert!(converge_to_limit(&mb, ScalingRegime::HardEdge, &t, &[10, 20], &grid).is_err());
    }

    fn hard_edge_report(alpha: usize) -> ConvergenceReport {
        let spec = EnsembleSpec::Wishart(WishartParams::new(10, 10 + alpha).unwrap());
        let t = LimitKernelSpec::new(LimitKind::Bessel { alpha: alpha as f64 });
        let grid = pair_grid(&[0.25, 1.0, 2.5]);
        converge_to_limit(&spec, ScalingRegime::HardEdge, &t, &[25, 50, 100], &grid).unwrap()
    }

    #[test]
    fn wishart_hard_edge_rates() {
        let r = hard_edge_report(1);
        assert!(r.is_monotone(), "{:?}", r.errors);
        let p = r.exponent.unwrap();
        assert!((-1.2..=-0.8).contains(&p), "{p}");
        // For α = 0, λ = s/N coincides with the 4N + 2α map and the first
        // order correction vanishes.
        let p = hard_edge_report(0).exponent.unwrap();
        assert!((-2.2..=-1.8).contains(&p), "{p}");
    }

    #[test]
    fn bulk_and_soft_edge() {
        let spec = EnsembleSpec::Wishart(WishartParams::new(100, 200).unwrap());
        let bulk = LimitKernelSpec::new(LimitKind::Sine);
        let r = converge_to_limit(&spec, ScalingRegime::Bulk { x0: 1.5 }, &bulk, &[50, 100], &pair_grid(&[-1.0, 0.0, 1.5]))
            .unwrap();
        assert!(r.is_monotone() && r.kappa.is_none(), "{r:?}");
        let airy = LimitKernelSpec::new(LimitKind::Airy);
        let regime = ScalingRegime::SoftEdge(Edge::Upper);
        let r = converge_to_limit(&spec, regime, &airy, &[50, 100], &soft_edge_grid()).unwrap();
        assert!(r.is_monotone(), "{r:?}");
        // the printed soft-edge unit is c(1+√c)^{8/3} times the Airy unit
        let kappa = r.kappa.unwrap()[1].kappa;
        assert!((kappa - 1.0 / (0.5 * (1.0 + 0.5f64.sqrt()).powf(8.0 / 3.0))).abs() < 0.02, "{kappa}");
        assert!(converge_to_limit(&spec, regime, &bulk, &[50], &soft_edge_grid()).is_err());
    }

    #[test]
    fn product_hard_edge() {
        let e = product_hard_edge_check(10, &[1, 2], &[0.5, 2.0], 48).unwrap();
        assert!(e < 0.1, "{e}");
    }

    #[test]
    fn gauge_invariance() {
        // K(x,y) ↦ (x/y)^γ K(x,y) leaves the pair products unchanged.
        let t = LimitKernelSpec::new(LimitKind::Bessel { alpha: 1.0 });
        let grid = pair_grid(&[0.5, 1.5, 3.0]);
        let run = |gamma: f64| {
            converge_kernels(ScalingRegime::HardEdge, &t, &[20, 40], &grid, |n| {
                let p = WishartParams::new(n, n + 1)?;
                let scale = p.t as f64 / (n * n) as f64;
                Ok(Box::new(move |s: f64, sp: f64| {
                    Ok((s / sp).powf(gamma) * scale * wishart_kernel(p, scale * s, scale * sp)?)
                }) as Rescaled)
            })
            .unwrap()
        };
        let (a, b) = (run(0.0), run(0.7));
        for (x, y) in a.pair_errors.iter().zip(&b.pair_errors) {
            assert!((x - y).abs() <= 1e-12, "{x} {y}");
        }
        assert_eq!(a.diagonal_errors, b.diagonal_errors);
    }

    #[test]
    fn projection_of_wishart_and_sine() {
        let p = WishartParams::new(20, 21).unwrap();
        let (res, tr) =
            projection_diagnostics(|x, y| wishart_kernel(p, x, y), (0.0, 160.0), &gauss_legendre(40), 16).unwrap();
        assert!(res <= 1e-6 && (tr - 20.0).abs() <= 1e-5, "{res} {tr}");
        let (_, tr) = projection_diagnostics(|x, y| Ok(sine_kernel(x, y)), (-50.0, 50.0), &gauss_legendre(8), 10).unwrap();
        assert!((tr - 100.0).abs() < 1e-9, "{tr}");
    }

    #[test]
    fn kappa_self_test() {
        let airy: Rescaled = Box::new(|s, sp| Ok(airy_kernel(s, sp)));
        let data: Vec<(f64, f64, f64)> =
            soft_edge_grid().iter().map(|&(s, sp)| (s, sp, airy_kernel(s, sp).powi(2))).collect();
        let fit = fit_kappa(&data, &airy).unwrap();
        assert!((fit.kappa - 1.0).abs() < 1e-6 && !fit.flagged, "{fit:?}");
        // the same data read on a map stretched by 2
        let stretched: Vec<(f64, f64, f64)> =
            data.iter().map(|&(s, sp, _)| (s, sp, 4.0 * airy_kernel(2.0 * s, 2.0 * sp).powi(2))).collect();
        let fit = fit_kappa(&stretched, &airy).unwrap();
        assert!((fit.kappa - 2.0).abs() < 1e-6 && fit.flagged, "{fit:?}");
    }
}
