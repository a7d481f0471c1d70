//! Narain transform pair
//!
//! `g(s) = ∫_0^∞ k(s,y) f(y) dy`, `f(y) = ∫_0^∞ h(y,s) g(s) ds` with
//!
//! `k(s,y) = 2γ (sy)^{γ-1/2} G^{m,p}_{p+q,m+n}(a, b; c, d | (sy)^{2γ})`,
//! `h(y,s) = 2γ (ys)^{γ-1/2} G^{n,q}_{p+q,m+n}(-b, -a; -d, -c | (ys)^{2γ})`.
//!
//! Integrals over the half line are truncated at a caller-supplied radius
//! and discretized with the substitution `y = R u^q` (`q = 2` by default; a
//! larger `q` clusters nodes at the origin for integrable singularities).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::QuadratureRule;

use super::{MeijerG, MeijerGParams};

/// Tolerance of the parameter-sum condition.
pub const SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NarainPairSpec {
    pub gamma: f64,
    pub forward_params: MeijerGParams,
    pub inverse_params: MeijerGParams,
}

fn neg(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| -x).collect()
}

impl NarainPairSpec {
    /// Pair built from the four parameter lists; fails unless
    /// `Σa + Σb = Σc + Σd`.
    pub fn new(gamma: f64, a: &[f64], b: &[f64], c: &[f64], d: &[f64]) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::Domain(format!("γ = {gamma} must be positive")));
        }
        let lhs: f64 = a.iter().chain(b).sum();
        let rhs: f64 = c.iter().chain(d).sum();
        if (lhs - rhs).abs() > SUM_TOL {
            return Err(Error::ParameterSum { lhs, rhs });
        }
        let forward_params = MeijerGParams::new(
            c.len(),
            a.len(),
            a.iter().chain(b).copied().collect(),
            c.iter().chain(d).copied().collect(),
        )?;
        let inverse_params = MeijerGParams::new(
            d.len(),
            b.len(),
            neg(b).into_iter().chain(neg(a)).collect(),
            neg(d).into_iter().chain(neg(c)).collect(),
        )?;
        Ok(Self { gamma, forward_params, inverse_params })
    }

    /// The product-ensemble pair `k = G^{M,0}_{0,M+1}(ν, 0 | sy)`,
    /// `h = G^{1,0}_{0,M+1}(0, -ν | ys)`.
    pub fn product(nu: &[f64]) -> Result<Self> {
        Self::new(0.5, &[], &[], nu, &[0.0])
    }
}

/// Nodes and weights on `(0, R]` under `y = R u^q`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfLineRule {
    pub radius: f64,
    pub points: Vec<(f64, f64)>,
}

impl HalfLineRule {
    pub fn new(rule: &QuadratureRule, radius: f64, panels: usize) -> Self {
        Self::with_power(rule, radius, panels, 2.0)
    }

    pub fn with_power(rule: &QuadratureRule, radius: f64, panels: usize, q: f64) -> Self {
        Self { radius, points: rule.power_map(radius, q, panels.max(1)) }
    }
}

/// Quadrature value with error indicators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Transformed {
    pub value: f64,
    /// Accumulated error estimate of the G-function evaluations.
    pub rounding: f64,
    /// `R · |integrand(R)|`, a heuristic for the neglected tail.
    pub truncation: f64,
}

#[derive(Debug)]
pub struct NarainTransform {
    spec: NarainPairSpec,
    forward: MeijerG,
    inverse: MeijerG,
}

fn kernel(g: &MeijerG, gamma: f64, x: f64) -> Result<(f64, f64)> {
    let e = g.evaluate(x.powf(2.0 * gamma))?;
    let pre = 2.0 * gamma * x.powf(gamma - 0.5);
    Ok((pre * e.value, pre * e.error))
}

fn integrate(
    g: &MeijerG,
    gamma: f64,
    outer: f64,
    f: &dyn Fn(f64) -> f64,
    rule: &HalfLineRule,
) -> Result<Transformed> {
    let mut value = 0.0;
    let mut rounding = 0.0;
    for &(y, w) in &rule.points {
        let fy = f(y);
        if fy == 0.0 {
            continue;
        }
        let (k, err) = kernel(g, gamma, outer * y)?;
        value += w * k * fy;
        rounding += w * err * fy.abs();
    }
    let r = rule.radius;
    let edge = f(r);
    let truncation = if edge == 0.0 { 0.0 } else { r * (kernel(g, gamma, outer * r)?.0 * edge).abs() };
    Ok(Transformed { value, rounding, truncation })
}

impl NarainTransform {
    pub fn new(spec: NarainPairSpec) -> Self {
        let forward = MeijerG::new(spec.forward_params.clone());
        let inverse = MeijerG::new(spec.inverse_params.clone());
        Self { spec, forward, inverse }
    }

    pub fn spec(&self) -> &NarainPairSpec {
        &self.spec
    }

    /// `k(s, y)`.
    pub fn forward_kernel(&self, s: f64, y: f64) -> Result<f64> {
        Ok(kernel(&self.forward, self.spec.gamma, s * y)?.0)
    }

    /// `h(y, s)`.
    pub fn inverse_kernel(&self, y: f64, s: f64) -> Result<f64> {
        Ok(kernel(&self.inverse, self.spec.gamma, y * s)?.0)
    }

    pub fn forward(&self, f: &dyn Fn(f64) -> f64, s: f64, rule: &HalfLineRule) -> Result<Transformed> {
        integrate(&self.forward, self.spec.gamma, s, f, rule)
    }

    pub fn inverse(&self, g: &dyn Fn(f64) -> f64, y: f64, rule: &HalfLineRule) -> Result<Transformed> {
        integrate(&self.inverse, self.spec.gamma, y, g, rule)
    }

    /// Inverse of the forward transform of `f` at each point of `ys`; the
    /// forward transform is computed once on the nodes of `inverse_rule`.
    pub fn round_trip(
        &self,
        f: &dyn Fn(f64) -> f64,
        ys: &[f64],
        forward_rule: &HalfLineRule,
        inverse_rule: &HalfLineRule,
    ) -> Result<Vec<f64>> {
        let mut samples = Vec::with_capacity(inverse_rule.points.len() + 1);
        for &(s, _) in &inverse_rule.points {
            samples.push((s, self.forward(f, s, forward_rule)?.value));
        }
        let edge = self.forward(f, inverse_rule.radius, forward_rule)?.value;
        let lookup = |s: f64| {
            if s == inverse_rule.radius {
                return edge;
            }
            samples
                .binary_search_by(|(x, _)| x.total_cmp(&s))
                .map(|i| samples[i].1)
                .unwrap_or(f64::NAN)
        };
        ys.iter().map(|&y| Ok(self.inverse(&lookup, y, inverse_rule)?.value)).collect()
    }
}

/// One-shot forward transform.
pub fn narain_forward(spec: &NarainPairSpec, f: &dyn Fn(f64) -> f64, s: f64, rule: &HalfLineRule) -> Result<Transformed> {
    NarainTransform::new(spec.clone()).forward(f, s, rule)
}

/// One-shot inverse transform.
pub fn narain_inverse(spec: &NarainPairSpec, g: &dyn Fn(f64) -> f64, y: f64, rule: &HalfLineRule) -> Result<Transformed> {
    NarainTransform::new(spec.clone()).inverse(g, y, rule)
}
