//! Marchenko–Pastur density, the effective potential of the radial
//! Laguerre problem, its semiclassical phase space and the microscopic
//! scaling maps around the hard edge, the bulk and the soft edges.
//!
//! Energies follow the convention in which the classically allowed region is
//! `V_eff(x) ≤ -1/4`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{gauss_legendre, QuadratureRule};

/// Wishart dimensions: `N × T` data matrix, `N ≤ T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WishartParams {
    pub n: usize,
    pub t: usize,
}

impl WishartParams {
    pub fn new(n: usize, t: usize) -> Result<Self> {
        if n == 0 || t < n {
            return Err(Error::Domain(format!("need 1 ≤ N ≤ T, got N = {n}, T = {t}")));
        }
        Ok(Self { n, t })
    }

    /// `T - N`.
    pub fn alpha(&self) -> usize {
        self.t - self.n
    }

    /// `N / T`.
    pub fn c(&self) -> f64 {
        self.n as f64 / self.t as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Edge {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ScalingRegime {
    HardEdge,
    Bulk { x0: f64 },
    SoftEdge(Edge),
}

/// `(r₋, r₊) = ((1 - √c)², (1 + √c)²)`.
pub fn turning_points(c: f64) -> (f64, f64) {
    let s = c.sqrt();
    ((1.0 - s).powi(2), (1.0 + s).powi(2))
}

fn radicand(c: f64, x: f64) -> f64 {
    let (lo, hi) = turning_points(c);
    if x > lo && x < hi {
        (hi - x) * (x - lo)
    } else {
        0.0
    }
}

/// Marchenko–Pastur density of `W/T`.
pub fn mp_density(c: f64, x: f64) -> f64 {
    let r = radicand(c, x);
    if r == 0.0 {
        return 0.0;
    }
    r.sqrt() / (2.0 * PI * c * x)
}

/// `V_eff(x) = (1-c)²/(4x²) - (1+c)/(2x)`.
pub fn effective_potential(c: f64, x: f64) -> f64 {
    (1.0 - c).powi(2) / (4.0 * x * x) - (1.0 + c) / (2.0 * x)
}

/// `p(x) = √(-1/4 - V_eff(x))` inside the support, zero outside.
pub fn phase_space_momentum(c: f64, x: f64) -> f64 {
    let r = radicand(c, x);
    if r == 0.0 {
        return 0.0;
    }
    r.sqrt() / (2.0 * x)
}

/// Integral of `f` over `(r₋, r₊)` with `x = m - h cos θ`, which absorbs the
/// square-root edges and, at `c = 1`, the `1/√x` singularity of the density.
fn integrate_support(c: f64, rule: &QuadratureRule, panels: usize, f: impl Fn(f64) -> f64) -> f64 {
    let (lo, hi) = turning_points(c);
    let (m, h) = (0.5 * (lo + hi), 0.5 * (hi - lo));
    rule.composite(0.0, PI, panels)
        .into_iter()
        .map(|(th, w)| w * f(m - h * th.cos()) * h * th.sin())
        .sum()
}

/// `∫ρ dx` over the support.
pub fn mp_normalization(c: f64, rule: &QuadratureRule) -> f64 {
    integrate_support(c, rule, 4, |x| mp_density(c, x))
}

/// `∫_{r₋}^{x} ρ`, integrated in `θ` with `x = m - h cos θ`.
pub fn mp_cdf(c: f64, x: f64) -> f64 {
    let (lo, hi) = turning_points(c);
    if x <= lo {
        return 0.0;
    }
    if x >= hi {
        return 1.0;
    }
    let (m, h) = (0.5 * (lo + hi), 0.5 * (hi - lo));
    let theta = ((m - x) / h).clamp(-1.0, 1.0).acos();
    // ρ dx = h² sin²θ / (2πc x) dθ, smooth even at a hard edge
    static RULE: OnceLock<QuadratureRule> = OnceLock::new();
    let v = RULE.get_or_init(|| gauss_legendre(32)).integrate(0.0, theta, |th| {
        let s = th.sin();
        h * h * s * s / (2.0 * PI * c * (m - h * th.cos()))
    });
    v.clamp(0.0, 1.0)
}

/// `(T/2π) ∮ p dx = (T/π) ∫_{r₋}^{r₊} p(x) dx`.
pub fn bohr_sommerfeld_area(params: WishartParams, rule: &QuadratureRule) -> f64 {
    let c = params.c();
    params.t as f64 / PI * integrate_support(c, rule, 4, |x| phase_space_momentum(c, x))
}

/// `x_±(t) = 1 - c + 2ct ± 2√(ct(1 + ct - c))`.
pub fn wkb_turning_points(c: f64, t: f64) -> (f64, f64) {
    let mid = 1.0 - c + 2.0 * c * t;
    let r = 2.0 * (c * t * (1.0 + c * t - c)).max(0.0).sqrt();
    (mid - r, mid + r)
}

fn wkb_radicand(c: f64, x: f64, t: f64) -> f64 {
    2.0 * c * (1.0 + 2.0 * t * x - x) - c * c - (x - 1.0).powi(2)
}

/// Closed form of the WKB density, `(1/π)/(2cx) · √((x - r₋)(r₊ - x))`.
pub fn wkb_density(c: f64, x: f64) -> f64 {
    let (lo, hi) = turning_points(c);
    if !(x > lo && x < hi) {
        return 0.0;
    }
    ((x - lo) * (hi - x)).sqrt() / (PI * 2.0 * c * x)
}

/// The same density as the `t`-average `(1/π) ∫_0^1 dt / √(R(x,t))` over the
/// levels whose classical region contains `x`, done by quadrature.
pub fn wkb_density_t_integral(c: f64, x: f64, rule: &QuadratureRule) -> f64 {
    // R is linear in t with slope 4cx; it vanishes at t0.
    let slope = 4.0 * c * x;
    if slope <= 0.0 {
        return 0.0;
    }
    let t0 = (-wkb_radicand(c, x, 0.0) / slope).max(0.0);
    if t0 >= 1.0 {
        return 0.0;
    }
    // t = t0 + (1 - t0) u² removes the inverse square root at t0
    let len = 1.0 - t0;
    let integral: f64 = rule
        .composite(0.0, 1.0, 4)
        .into_iter()
        .map(|(u, w)| {
            let t = t0 + len * u * u;
            let r = wkb_radicand(c, x, t);
            if r <= 0.0 { 0.0 } else { w * 2.0 * len * u / r.sqrt() }
        })
        .sum();
    integral / PI
}

/// Eigenvalue `λ(s)` of `W = X Xᵀ` and `|dλ/ds|` for the microscopic variable `s`.
///
/// The lower soft edge runs outward to smaller `λ`, so `λ` decreases in `s`
/// there; the returned Jacobian is always the positive density factor.
pub fn scaling_map(params: WishartParams, regime: ScalingRegime, s: f64) -> Result<(f64, f64)> {
    let (n, t, c) = (params.n as f64, params.t as f64, params.c());
    let (lo, hi) = turning_points(c);
    let (offset, slope) = match regime {
        ScalingRegime::HardEdge => (0.0, 1.0 / (n * n)),
        ScalingRegime::Bulk { x0 } => {
            if !(x0 > lo && x0 < hi) {
                return Err(Error::Domain(format!("bulk point {x0} outside ({lo}, {hi})")));
            }
            (x0, 1.0 / (n * mp_density(c, x0)))
        }
        ScalingRegime::SoftEdge(edge) => {
            let (r, sign) = match edge {
                Edge::Upper => (hi, 1.0),
                Edge::Lower => (lo, -1.0),
            };
            if r <= 0.0 {
                return Err(Error::Domain("lower soft edge is absent for c = 1".into()));
            }
            (r, sign / (c.sqrt() * (r * n).powf(2.0 / 3.0)))
        }
    };
    Ok((t * (offset + slope * s), t * slope.abs()))
}
