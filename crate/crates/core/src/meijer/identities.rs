//! Residuals of the index-raising, interchange, absorption and differential
//! identities, with derivatives taken numerically in `w = ln z`
//! (so that `z d/dz = d/dw`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{MeijerG, MeijerGParams};

/// Half-width (in points) of the finite-difference stencil.
const STENCIL_HALF: usize = 6;
const STEP: f64 = 0.1;
const ABSORB_SHIFT: f64 = 0.37;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub z: f64,
    /// `(-z d/dz + b_1) G - G(b_1 + 1)`.
    pub raise_first: f64,
    /// `G - (-1)^{b_q - b_1} G(b_1 ↔ b_q)`; `None` unless `b_q - b_1` is an integer.
    pub interchange: Option<f64>,
    /// `z^α G - G(a + α; b + α)`.
    pub absorb: f64,
    /// Residual of the order-`max(p+1, q)` differential equation.
    pub ode: f64,
    /// Change in the ODE residual when the stencil step is doubled.
    pub derivative_error: f64,
}

impl IdentityReport {
    pub fn max_residual(&self) -> f64 {
        [self.raise_first, self.interchange.unwrap_or(0.0), self.absorb, self.ode]
            .iter()
            .fold(0.0, |m, r| m.max(r.abs()))
    }
}

/// Finite-difference weights for derivatives `0..=max_order` at `x0` on the
/// points `xs` (Fornberg's recursion). Entry `[k][i]` weights `f(xs[i])`.
pub fn fornberg_weights(x0: f64, xs: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = xs.len();
    let mut c = vec![vec![0.0; n]; max_order + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = xs[0] - x0;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] *= c4 / c3;
        }
        c1 = c2;
    }
    c
}

/// `[(z d/dz)^k f](z)` for `k = 0..=order`.
pub fn log_derivatives(f: &dyn Fn(f64) -> Result<f64>, z: f64, order: usize, step: f64) -> Result<Vec<f64>> {
    let half = STENCIL_HALF.max(order.div_ceil(2) + 1);
    let offsets: Vec<f64> = (0..=2 * half).map(|i| (i as f64 - half as f64) * step).collect();
    let w = z.ln();
    let values = offsets.iter().map(|o| f((w + o).exp())).collect::<Result<Vec<_>>>()?;
    let weights = fornberg_weights(0.0, &offsets, order);
    Ok(weights
        .iter()
        .map(|row| row.iter().zip(&values).map(|(c, v)| c * v).sum())
        .collect())
}

/// Coefficients of `Π_j (x - r_j)` in ascending powers.
fn poly_from_roots(roots: &[f64]) -> Vec<f64> {
    let mut c = vec![1.0];
    for r in roots {
        let mut next = vec![0.0; c.len() + 1];
        for (i, ci) in c.iter().enumerate() {
            next[i + 1] += ci;
            next[i] -= r * ci;
        }
        c = next;
    }
    c
}

fn ode_residual(params: &MeijerGParams, z: f64, step: f64) -> Result<f64> {
    let g = MeijerG::new(params.clone());
    let (p, q) = (params.p(), params.q());
    let order = q.max(p + 1);
    let d = log_derivatives(&|x| g.value(x), z, order, step)?;
    let apply = |coeffs: &[f64]| coeffs.iter().zip(&d).map(|(c, v)| c * v).sum::<f64>();
    let upper: Vec<f64> = params.a.iter().map(|a| a - 1.0).collect();
    let sign = if (p + params.m + params.n) % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * z * apply(&poly_from_roots(&upper)) - apply(&poly_from_roots(&params.b)))
}

/// Evaluates all identity residuals for `params` at `z`.
pub fn meijer_identity_suite(params: &MeijerGParams, z: f64) -> Result<IdentityReport> {
    if !(z > 0.0) {
        return Err(Error::Domain(format!("identity suite needs z > 0, got {z}")));
    }
    let g = MeijerG::new(params.clone());
    let g0 = g.value(z)?;
    let d = log_derivatives(&|x| g.value(x), z, 1, STEP)?;

    let mut raised_b = params.b.clone();
    raised_b[0] += 1.0;
    let raised = MeijerG::new(params.with_b(raised_b)?).value(z)?;
    let raise_first = -d[1] + params.b[0] * g0 - raised;

    let q = params.q();
    let diff = params.b[q - 1] - params.b[0];
    let interchange = if q > params.m && (diff - diff.round()).abs() < 1e-12 {
        let mut swapped = params.b.clone();
        swapped.swap(0, q - 1);
        let other = MeijerG::new(params.with_b(swapped)?).value(z)?;
        let sign = if (diff.round() as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        Some(g0 - sign * other)
    } else {
        None
    };

    let absorbed = MeijerG::new(params.shifted(ABSORB_SHIFT)?).value(z)?;
    let absorb = z.powf(ABSORB_SHIFT) * g0 - absorbed;

    let ode = ode_residual(params, z, STEP)?;
    let coarse = ode_residual(params, z, 2.0 * STEP)?;
    Ok(IdentityReport { z, raise_first, interchange, absorb, ode, derivative_error: (ode - coarse).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(m: usize, n: usize, a: &[f64], b: &[f64]) -> MeijerGParams {
        MeijerGParams::new(m, n, a.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn fornberg_reproduces_polynomial_derivatives() {
        let xs: Vec<f64> = (-3..=3).map(|i| i as f64 * 0.5).collect();
        let w = fornberg_weights(0.0, &xs, 3);
        let f = |x: f64| 2.0 + x - 3.0 * x * x + 0.5 * x.powi(3);
        let d: Vec<f64> = w.iter().map(|r| r.iter().zip(&xs).map(|(c, x)| c * f(*x)).sum()).collect();
        for (got, want) in d.iter().zip([2.0, 1.0, -6.0, 3.0]) {
            assert!((got - want).abs() < 1e-12, "{got} {want}");
        }
    }

    #[test]
    fn log_derivatives_of_a_power() {
        // (z d/dz)^k z^c = c^k z^c
        let c = 0.7;
        let d = log_derivatives(&|x: f64| Ok(x.powf(c)), 2.0, 4, STEP).unwrap();
        for (k, v) in d.iter().enumerate() {
            let want = c.powi(k as i32) * 2f64.powf(c);
            assert!((v - want).abs() < 1e-9, "k={k} {v} {want}");
        }
    }

    #[test]
    fn raise_index_class_1003() {
        let r = meijer_identity_suite(&params(1, 0, &[], &[0.4, 0.1, -0.3]), 1.0).unwrap();
        assert!(r.raise_first.abs() < 1e-5, "{r:?}");
        assert!(r.absorb.abs() < 1e-9, "{r:?}");
        assert!(r.ode.abs() < 1e-5, "{r:?}");
    }

    #[test]
    fn ode_class_2003() {
        let r = meijer_identity_suite(&params(2, 0, &[], &[0.5, 0.2, -0.1]), 2.0).unwrap();
        assert!(r.ode.abs() < 1e-5, "{r:?}");
        assert!(r.max_residual() < 1e-5, "{r:?}");
    }

    #[test]
    fn interchange_applies_for_integer_gap() {
        let r = meijer_identity_suite(&params(1, 0, &[], &[0.3, 0.8, 2.3]), 0.9).unwrap();
        assert!(r.interchange.unwrap().abs() < 1e-10, "{r:?}");
        let r = meijer_identity_suite(&params(1, 0, &[], &[0.3, 0.8, 2.4]), 0.9).unwrap();
        assert!(r.interchange.is_none());
    }

    #[test]
    fn upper_parameter_classes() {
        for p in [params(2, 1, &[-1.0], &[1.0, 3.0, 0.0]), params(1, 0, &[4.0], &[0.0, -1.0, -3.0])] {
            for z in [0.3, 1.0, 4.0] {
                let r = meijer_identity_suite(&p, z).unwrap();
                assert!(r.max_residual() < 1e-5, "{p:?} z={z} {r:?}");
            }
        }
    }
}
