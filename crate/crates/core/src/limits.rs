//! Universal microscopic kernels: sine, Airy, Bessel, and the Meijer G
//! hard-edge kernels of products and Muttalib–Borodin ensembles.
//!
//! Each kernel has a closed form where one exists and an integral form
//! over the truncated dual variable.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::meijer::{MeijerG, MeijerGParams};
use crate::special::{airy_ai, bessel_j, bessel_j_with_derivative, gauss_legendre};

/// Default number of Gauss–Legendre nodes for the `∫_0^1 ds` forms.
pub const DEFAULT_ORDER: usize = 64;
/// Largest number of factors / largest `θ` for the hard-edge kernels.
pub const MAX_FACTORS: usize = 4;

/// `sin(π(t'-t)) / (π(t'-t))`.
pub fn sine_kernel(t: f64, tp: f64) -> f64 {
    let d = PI * (tp - t);
    if d == 0.0 {
        1.0
    } else {
        d.sin() / d
    }
}

/// `∫_{-1/2}^{1/2} cos(2πq(t'-t)) dq` with `order` nodes.
pub fn sine_kernel_integral(t: f64, tp: f64, order: usize) -> f64 {
    gauss_legendre(order).integrate(-0.5, 0.5, |q| (2.0 * PI * q * (tp - t)).cos())
}

/// Near-diagonal Taylor expansion in `h = t' - t`.
fn airy_taylor(x: f64, h: f64) -> f64 {
    const TERMS: usize = 16;
    let (a0, a1) = airy_ai(x);
    // A_{n+2} = x A_n + n A_{n-1}
    let mut d = [0.0; TERMS + 2];
    d[0] = a0;
    d[1] = a1;
    for n in 0..TERMS {
        d[n + 2] = x * d[n] + if n > 0 { n as f64 * d[n - 1] } else { 0.0 };
    }
    let mut acc = 0.0;
    let mut scale = 1.0;
    for n in 1..=TERMS {
        scale /= n as f64;
        acc += (d[1] * d[n] - d[0] * d[n + 1]) * scale;
        scale *= h;
    }
    acc
}

/// `(Ai(t')Ai'(t) - Ai'(t')Ai(t)) / (t'-t)`, with `Ai'(t)² - t Ai(t)²` on
/// the diagonal and a Taylor series for `|t'-t| < 0.1`.
pub fn airy_kernel(t: f64, tp: f64) -> f64 {
    let h = tp - t;
    if h.abs() < 0.1 {
        return airy_taylor(t, h);
    }
    let (a, ap) = airy_ai(t);
    let (b, bp) = airy_ai(tp);
    (b * ap - bp * a) / h
}

/// Both arguments reach this value at the upper end of the truncated
/// integral, where `Ai² < 10^{-18}`.
const AIRY_CUTOFF: f64 = 12.0;

/// `∫_0^U Ai(t'+u) Ai(t+u) du` on unit panels of `order` nodes each, with
/// `U` chosen so that `min(t,t') + U` reaches the cutoff.
pub fn airy_kernel_integral(t: f64, tp: f64, order: usize) -> f64 {
    let upper = (AIRY_CUTOFF - t.min(tp)).max(1.0);
    let panels = upper.ceil() as usize;
    gauss_legendre(order)
        .composite(0.0, upper, panels)
        .into_iter()
        .map(|(u, w)| w * airy_ai(tp + u).0 * airy_ai(t + u).0)
        .sum()
}

fn bessel_nodes(x: f64, y: f64) -> usize {
    DEFAULT_ORDER + 2 * x.max(y).sqrt().ceil() as usize
}

/// `(J_α(√x)J'_α(√y)√y - √x J'_α(√x)J_α(√y)) / (2(x-y))`.
///
/// The diagonal uses `¼[J'² + (1 - α²/x)J²]` at `√x`. Close to the diagonal,
/// or for `x < 1`, the `s`-integral is used instead.
pub fn bessel_kernel(alpha: f64, x: f64, y: f64) -> Result<f64> {
    if !(alpha >= 0.0) {
        return Err(Error::Domain(format!("α = {alpha} must be nonnegative")));
    }
    if !(x >= 0.0 && y >= 0.0) {
        return Err(Error::Domain(format!("arguments ({x}, {y}) must be nonnegative")));
    }
    if x.min(y) == 0.0 || x.max(y) < 1.0 || (x != y && (x - y).abs() < 1e-3 * x.max(y)) {
        return Ok(bessel_kernel_integral(alpha, x, y, bessel_nodes(x, y)));
    }
    let (u, v) = (x.sqrt(), y.sqrt());
    let (jx, djx) = bessel_j_with_derivative(alpha, u);
    if x == y {
        return Ok(0.25 * (djx * djx + (1.0 - alpha * alpha / x) * jx * jx));
    }
    let (jy, djy) = bessel_j_with_derivative(alpha, v);
    Ok((jx * djy * v - u * djx * jy) / (2.0 * (x - y)))
}

/// `¼∫_0^1 J_α(√(xs)) J_α(√(ys)) ds = ½∫_0^1 v J_α(v√x) J_α(v√y) dv`.
pub fn bessel_kernel_integral(alpha: f64, x: f64, y: f64, order: usize) -> f64 {
    let (u, w) = (x.sqrt(), y.sqrt());
    0.5 * gauss_legendre(order).integrate(0.0, 1.0, |v| v * bessel_j(alpha, v * u) * bessel_j(alpha, v * w))
}

/// `K(x, y) = ∫_0^1 L(sx) R(sy) ds` for a pair of Meijer G-functions,
/// integrated in `s = v²`.
///
/// `L` and `R` are sampled at all nodes once per `x` or `y`; [`Self::matrix`]
/// reuses the samples across a grid.
#[derive(Debug)]
pub struct HardEdgeKernel {
    left: MeijerG,
    right: MeijerG,
    nodes: Vec<(f64, f64)>,
}

impl HardEdgeKernel {
    pub fn new(left: MeijerGParams, right: MeijerGParams, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Domain("quadrature order must be positive".into()));
        }
        Ok(Self {
            left: MeijerG::new(left),
            right: MeijerG::new(right),
            nodes: gauss_legendre(order).power_map(1.0, 2.0, 1),
        })
    }

    fn sample(g: &MeijerG, nodes: &[(f64, f64)], x: f64) -> Result<Vec<f64>> {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("argument {x} must be positive")));
        }
        nodes.iter().map(|&(s, _)| g.value(s * x)).collect()
    }

    /// Weighted samples `w_i L(s_i x)`.
    pub fn left_samples(&self, x: f64) -> Result<Vec<f64>> {
        let v = Self::sample(&self.left, &self.nodes, x)?;
        Ok(v.iter().zip(&self.nodes).map(|(g, (_, w))| g * w).collect())
    }

    /// Samples `R(s_i y)`.
    pub fn right_samples(&self, y: f64) -> Result<Vec<f64>> {
        Self::sample(&self.right, &self.nodes, y)
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        Ok(dot(&self.left_samples(x)?, &self.right_samples(y)?))
    }

    /// `K(x_i, y_j)` as rows over `xs`.
    pub fn matrix(&self, xs: &[f64], ys: &[f64]) -> Result<Vec<Vec<f64>>> {
        let right = ys.iter().map(|&y| self.right_samples(y)).collect::<Result<Vec<_>>>()?;
        xs.iter()
            .map(|&x| {
                let l = self.left_samples(x)?;
                Ok(right.iter().map(|r| dot(&l, r)).collect())
            })
            .collect()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn check_factors(m: usize) -> Result<()> {
    if m == 0 || m > MAX_FACTORS {
        return Err(Error::Domain(format!("need 1 ≤ M ≤ {MAX_FACTORS}, got {m}")));
    }
    Ok(())
}

/// Hard-edge kernel of a product of `M = ν.len()` Ginibre matrices:
/// `L = G^{1,0}_{0,M+1}(0, -ν | ·)`, `R = G^{M,0}_{0,M+1}(ν, 0 | ·)`.
pub fn meijer_hard(nu: &[f64], order: usize) -> Result<HardEdgeKernel> {
    let m = nu.len();
    check_factors(m)?;
    let mut lb = vec![0.0];
    lb.extend(nu.iter().map(|v| -v));
    let mut rb = nu.to_vec();
    rb.push(0.0);
    HardEdgeKernel::new(MeijerGParams::new(1, 0, vec![], lb)?, MeijerGParams::new(m, 0, vec![], rb)?, order)
}

pub fn meijer_hard_kernel(nu: &[f64], x: f64, y: f64, order: usize) -> Result<f64> {
    meijer_hard(nu, order)?.eval(x, y)
}

fn check_mb(alpha: f64, theta: u32) -> Result<()> {
    check_factors(theta as usize)?;
    if !(alpha > -1.0) {
        return Err(Error::Domain(format!("α = {alpha} must exceed -1")));
    }
    Ok(())
}

/// `(-1/θ, …, -(θ-1)/θ, -α/θ)`, the `ν` for which the product pair reduces
/// to the Muttalib–Borodin hard-edge kernel.
pub fn mb_condition_nu(alpha: f64, theta: u32) -> Vec<f64> {
    let t = theta as f64;
    let mut nu: Vec<f64> = (1..theta).map(|j| -(j as f64) / t).collect();
    nu.push(-alpha / t);
    nu
}

/// `L = G^{1,0}_{0,θ+1}(α/θ, 0, 1/θ, …, (θ-1)/θ | ·)`,
/// `R = G^{θ,0}_{0,θ+1}(0, -1/θ, …, -(θ-1)/θ, -α/θ | ·)`.
///
/// As a correlation kernel in the eigenvalue variables, `eval(x, y)` is
/// `K(y, x)`: the arguments come out interchanged.
pub fn mb_hard(alpha: f64, theta: u32, order: usize) -> Result<HardEdgeKernel> {
    check_mb(alpha, theta)?;
    let t = theta as f64;
    let mut lb = vec![alpha / t];
    lb.extend((0..theta).map(|j| j as f64 / t));
    let mut rb = vec![0.0];
    rb.extend(mb_condition_nu(alpha, theta));
    HardEdgeKernel::new(
        MeijerGParams::new(1, 0, vec![], lb)?,
        MeijerGParams::new(theta as usize, 0, vec![], rb)?,
        order,
    )
}

pub fn mb_hard_kernel(alpha: f64, theta: u32, x: f64, y: f64, order: usize) -> Result<f64> {
    mb_hard(alpha, theta, order)?.eval(x, y)
}

/// Gauge form `L = G^{1,0}_{0,θ+1}(0, -α/θ, -(α-1)/θ, …, -(α-θ+1)/θ | ·)`,
/// `R = G^{θ,0}_{0,θ+1}(α/θ, (α-1)/θ, …, (α-θ+1)/θ, 0 | ·)`.
pub fn mb_hard_ks(alpha: f64, theta: u32, order: usize) -> Result<HardEdgeKernel> {
    check_mb(alpha, theta)?;
    let t = theta as f64;
    let shifted: Vec<f64> = (0..theta).map(|j| (alpha - j as f64) / t).collect();
    let mut lb = vec![0.0];
    lb.extend(shifted.iter().map(|v| -v));
    let mut rb = shifted;
    rb.push(0.0);
    HardEdgeKernel::new(
        MeijerGParams::new(1, 0, vec![], lb)?,
        MeijerGParams::new(theta as usize, 0, vec![], rb)?,
        order,
    )
}

/// `(y/x)^{α/θ} · mb_hard_kernel(α, θ, x, y)`, evaluated through the gauge
/// form.
pub fn mb_hard_kernel_ks(alpha: f64, theta: u32, x: f64, y: f64, order: usize) -> Result<f64> {
    mb_hard_ks(alpha, theta, order)?.eval(x, y)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LimitKind {
    Sine,
    Airy,
    Bessel { alpha: f64 },
    MeijerHard { nu: Vec<f64> },
    MbHard { alpha: f64, theta: u32 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitKernelSpec {
    #[serde(flatten)]
    pub kind: LimitKind,
    #[serde(default = "default_order")]
    pub order: usize,
}

fn default_order() -> usize {
    DEFAULT_ORDER
}

impl LimitKernelSpec {
    pub fn new(kind: LimitKind) -> Self {
        Self { kind, order: DEFAULT_ORDER }
    }

    pub fn validate(&self) -> Result<()> {
        if self.order == 0 {
            return Err(Error::Domain("quadrature order must be positive".into()));
        }
        match &self.kind {
            LimitKind::Sine | LimitKind::Airy => Ok(()),
            LimitKind::Bessel { alpha } if *alpha >= 0.0 => Ok(()),
            LimitKind::Bessel { alpha } => Err(Error::Domain(format!("α = {alpha} must be nonnegative"))),
            LimitKind::MeijerHard { nu } => {
                check_factors(nu.len())?;
                match nu.iter().find(|v| !(**v > -1.0)) {
                    Some(v) => Err(Error::Domain(format!("ν = {v} must exceed -1"))),
                    None => Ok(()),
                }
            }
            LimitKind::MbHard { alpha, theta } => check_mb(*alpha, *theta),
        }
    }
}

/// A limiting kernel ready for repeated evaluation.
#[derive(Debug)]
pub enum LimitKernel {
    Sine,
    Airy,
    Bessel(f64),
    Hard(HardEdgeKernel),
}

impl LimitKernel {
    pub fn new(spec: &LimitKernelSpec) -> Result<Self> {
        spec.validate()?;
        Ok(match &spec.kind {
            LimitKind::Sine => Self::Sine,
            LimitKind::Airy => Self::Airy,
            LimitKind::Bessel { alpha } => Self::Bessel(*alpha),
            LimitKind::MeijerHard { nu } => Self::Hard(meijer_hard(nu, spec.order)?),
            LimitKind::MbHard { alpha, theta } => Self::Hard(mb_hard(*alpha, *theta, spec.order)?),
        })
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        match self {
            Self::Sine => Ok(sine_kernel(x, y)),
            Self::Airy => Ok(airy_kernel(x, y)),
            Self::Bessel(alpha) => bessel_kernel(*alpha, x, y),
            Self::Hard(k) => k.eval(x, y),
        }
    }

    /// Support of the limiting point process.
    pub fn is_hard_edge(&self) -> bool {
        matches!(self, Self::Bessel(_) | Self::Hard(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn sine_examples() {
        assert_eq!(sine_kernel(0.7, 0.7), 1.0);
        assert!(close(sine_kernel(0.0, 0.5), 2.0 / PI, 1e-15));
        assert!(close(sine_kernel(0.0, 1.0), 0.0, 1e-15));
        for (t, tp) in [(0.0, 0.3), (1.2, -2.7), (5.0, 5.0)] {
            assert!(close(sine_kernel_integral(t, tp, 32), sine_kernel(t, tp), 1e-14));
        }
    }

    #[test]
    fn sine_projection() {
        // Truncating ∫ K(t,z)K(z,t') dz to |z| ≤ R loses ≈ cos(π(t-t'))/(π²R).
        let r = 50.0;
        let nodes = gauss_legendre(24).composite(-r, r, 200);
        for (t, tp) in [(0.0, 0.0), (0.3, 1.1), (-2.0, 1.5), (1.0, 1.0)] {
            let conv: f64 = nodes.iter().map(|&(z, w)| w * sine_kernel(t, z) * sine_kernel(z, tp)).sum();
            let err = sine_kernel(t, tp) - conv;
            let tail = (PI * (t - tp)).cos() / (PI * PI * r);
            assert!(err.abs() <= 1.0 / (PI * PI * r) + 1e-4, "({t},{tp}) {err}");
            assert!(close(err, tail, 1e-4), "({t},{tp}) {err} vs {tail}");
        }
    }

    #[test]
    fn airy_examples() {
        assert!(close(airy_kernel_integral(0.3, 1.1, 24), airy_kernel(0.3, 1.1), 1e-8));
        assert_eq!(airy_kernel(0.4, -1.3), airy_kernel(-1.3, 0.4));
        let k55 = airy_kernel(5.0, 5.0);
        assert!(k55 > 0.0 && k55 <= 1e-6, "{k55}");
        // mpmath: Ai'(0)² = 0.066987483779663974...
        assert!(close(airy_kernel(0.0, 0.0), 0.066_987_483_779_663_974, 1e-14));
    }

    #[test]
    fn airy_diagonal_is_continuous() {
        for t in [-8.0, -1.0, 0.0, 2.5] {
            let d = airy_kernel(t, t);
            for h in [1e-9, 1e-4, 0.099, 0.101] {
                let k = airy_kernel(t, t + h);
                let slope = -airy_ai(t).0.powi(2) / 2.0;
                assert!(close(k, d + slope * h, 4.0 * h * h + 1e-14), "t={t} h={h}");
            }
        }
    }

    #[test]
    fn airy_integral_agrees_on_grid() {
        let pts: Vec<f64> = (0..16).map(|i| -10.0 + i as f64).collect();
        for &t in &pts {
            for &tp in &pts {
                let a = airy_kernel(t, tp);
                let b = airy_kernel_integral(t, tp, 30);
                assert!(close(a, b, 1e-8), "({t},{tp}) {a} {b}");
            }
        }
    }

    #[test]
    fn bessel_examples() {
        let a = bessel_kernel(0.0, 1.0, 2.0).unwrap();
        assert!(close(a, bessel_kernel_integral(0.0, 1.0, 2.0, 32), 1e-8));
        assert_eq!(bessel_kernel(1.5, 3.0, 8.0).unwrap(), bessel_kernel(1.5, 8.0, 3.0).unwrap());
        for x in [0.5, 3.0, 20.0] {
            let d = bessel_kernel(0.0, x, x).unwrap();
            assert!(close(d, bessel_kernel_integral(0.0, x, x, 48), 1e-8), "x={x}");
        }
        assert!(bessel_kernel(-0.5, 1.0, 1.0).is_err());
        assert!(bessel_kernel(0.0, -1.0, 1.0).is_err());
        assert!(close(bessel_kernel(0.0, 0.0, 0.0).unwrap(), 0.25, 1e-15));
        assert_eq!(bessel_kernel(1.0, 0.0, 5.0).unwrap(), 0.0);
        assert!(bessel_kernel(0.5, 0.0, 20.0).unwrap().is_finite());
    }

    #[test]
    fn bessel_closed_and_integral_forms_agree() {
        let grid: Vec<f64> = (1..=20).map(|i| 2.5 * i as f64).collect();
        for alpha in [0.0, 0.5, 1.0, 2.0, 7.0] {
            for &x in &grid {
                for &y in &grid {
                    let a = bessel_kernel(alpha, x, y).unwrap();
                    let b = bessel_kernel_integral(alpha, x, y, 64);
                    assert!(close(a, b, 1e-8), "α={alpha} ({x},{y}) {a} {b}");
                }
            }
        }
    }

    #[test]
    fn bessel_refinement_is_monotone() {
        let exact = bessel_kernel(2.0, 30.0, 45.0).unwrap();
        let errs: Vec<f64> =
            [4, 8, 16, 32, 64].iter().map(|&n| (bessel_kernel_integral(2.0, 30.0, 45.0, n) - exact).abs()).collect();
        for w in errs.windows(2) {
            assert!(w[1] <= w[0] || w[1] < 1e-14, "{errs:?}");
        }
        assert!(errs[4] < 1e-14, "{errs:?}");
    }

    #[test]
    fn bessel_projection_truncation() {
        // For large z, K(x,z)K(z,y) ≈ J_α(√x)J_α(√y) sin²(·) / (2π z^{3/2}),
        // so truncating at X loses ≈ J_α(√x)J_α(√y) / (2π√X).
        let alpha = 1.0;
        let big_x: f64 = 1600.0;
        let nodes = gauss_legendre(24).power_map(big_x, 2.0, 80);
        for (x, y) in [(2.0, 2.0), (1.0, 5.0), (6.0, 3.5)] {
            let conv: f64 = nodes
                .iter()
                .map(|&(z, w)| w * bessel_kernel(alpha, x, z).unwrap() * bessel_kernel(alpha, z, y).unwrap())
                .sum();
            let err = bessel_kernel(alpha, x, y).unwrap() - conv;
            let tail = bessel_j(alpha, x.sqrt()) * bessel_j(alpha, y.sqrt()) / (2.0 * PI * big_x.sqrt());
            assert!(close(err, tail, 0.1 * tail.abs() + 1e-5), "({x},{y}) {err} vs {tail}");
        }
    }

    #[test]
    fn meijer_one_factor() {
        let nu = 1.5;
        let k = meijer_hard(&[nu], 64).unwrap();
        for (x, y) in [(0.5, 2.0), (3.0, 3.0), (7.0, 1.2)] {
            let v = k.eval(x, y).unwrap();
            let direct = (y / x).powf(nu / 2.0)
                * gauss_legendre(64)
                    .power_map(1.0, 2.0, 1)
                    .iter()
                    .map(|&(s, w)| w * bessel_j(nu, 2.0 * (s * x).sqrt()) * bessel_j(nu, 2.0 * (s * y).sqrt()))
                    .sum::<f64>();
            assert!(close(v, direct, 1e-12), "({x},{y})");
            // gauge x^{ν/2} and rescaling by 1/4
            let kb = bessel_kernel(nu, 4.0 * x, 4.0 * y).unwrap();
            assert!(close((x / y).powf(nu / 2.0) * v / 4.0, kb, 1e-8), "({x},{y})");
        }
    }

    #[test]
    fn meijer_diagonal_positive() {
        let k = meijer_hard(&[1.0, 2.0], 64).unwrap();
        for i in 1..=12 {
            let x = 0.25 * (i * i) as f64;
            let d = k.eval(x, x).unwrap();
            assert!(d > 0.0, "x={x} {d}");
        }
    }

    #[test]
    fn meijer_matrix_reuses_samples() {
        let k = meijer_hard(&[1.0, 2.0], 32).unwrap();
        let xs = [0.5, 2.0];
        let ys = [1.0, 4.0, 9.0];
        let m = k.matrix(&xs, &ys).unwrap();
        for (i, &x) in xs.iter().enumerate() {
            for (j, &y) in ys.iter().enumerate() {
                assert_eq!(m[i][j], k.eval(x, y).unwrap());
            }
        }
    }

    #[test]
    fn mb_condition() {
        assert_eq!(mb_condition_nu(1.0, 1), vec![-1.0]);
        assert_eq!(mb_condition_nu(3.0, 3), vec![-1.0 / 3.0, -2.0 / 3.0, -1.0]);
        assert!(mb_hard(0.5, 5, 16).is_err());
        assert!(mb_hard(-1.0, 2, 16).is_err());
    }

    #[test]
    fn mb_theta_one_is_bessel() {
        let alpha = 2.0;
        for (x, y) in [(0.5, 2.0), (3.0, 3.0), (7.0, 1.2)] {
            let v = mb_hard_kernel(alpha, 1, x, y, 64).unwrap();
            let kb = 4.0 * bessel_kernel(alpha, 4.0 * x, 4.0 * y).unwrap();
            assert!(close(v, (x / y).powf(alpha / 2.0) * kb, 1e-8), "({x},{y})");
        }
    }

    #[test]
    fn mb_gauge_identity() {
        for (alpha, theta) in [(0.5, 2u32), (1.0, 2), (2.0, 3)] {
            let k = mb_hard(alpha, theta, 48).unwrap();
            let ks = mb_hard_ks(alpha, theta, 48).unwrap();
            for (x, y) in [(0.3f64, 1.7f64), (2.0, 2.0), (5.0, 0.8)] {
                let lhs = (y / x).powf(alpha / theta as f64) * k.eval(x, y).unwrap();
                let rhs = ks.eval(x, y).unwrap();
                assert!(close(lhs, rhs, 1e-10 * rhs.abs().max(1.0)), "α={alpha} θ={theta} ({x},{y}) {lhs} {rhs}");
            }
        }
    }

    #[test]
    fn spec_dispatch() {
        let spec = LimitKernelSpec::new(LimitKind::Bessel { alpha: 1.0 });
        let k = LimitKernel::new(&spec).unwrap();
        assert!(k.is_hard_edge());
        assert_eq!(k.eval(1.0, 2.0).unwrap(), bessel_kernel(1.0, 1.0, 2.0).unwrap());
        let json = serde_json::to_string(&LimitKernelSpec::new(LimitKind::MbHard { alpha: 1.0, theta: 2 })).unwrap();
        let back: LimitKernelSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back.kind, LimitKind::MbHard { alpha: 1.0, theta: 2 });
        assert!(LimitKernel::new(&LimitKernelSpec::new(LimitKind::MeijerHard { nu: vec![] })).is_err());
        assert!(!LimitKernel::new(&LimitKernelSpec::new(LimitKind::Airy)).unwrap().is_hard_edge());
    }
}
