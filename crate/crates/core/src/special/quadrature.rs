//! Gauss–Legendre rules and a few integration drivers built on them.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// `n`-point Gauss–Legendre rule, by Newton iteration on the three-term
/// recurrence.
pub fn gauss_legendre(n: usize) -> QuadratureRule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            // p1 = P_n(x), p0 = P_{n-1}(x)
            dp = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    QuadratureRule { nodes, weights }
}

impl QuadratureRule {
    /// Number of nodes.
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(t, w)| (mid + half * t, half * w))
    }

    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }

    /// The rule applied on `panels` equal subintervals of `[a, b]`.
    pub fn composite(&self, a: f64, b: f64, panels: usize) -> Vec<(f64, f64)> {
        let h = (b - a) / panels as f64;
        (0..panels)
            .flat_map(|p| {
                let lo = a + p as f64 * h;
                self.mapped(lo, lo + h).collect::<Vec<_>>()
            })
            .collect()
    }

    /// Nodes and weights for `∫_0^R f(x) dx` under `x = R u^q`, which
    /// clusters nodes near the origin and absorbs `x^{-1+ε}` type behaviour.
    pub fn power_map(&self, radius: f64, q: f64, panels: usize) -> Vec<(f64, f64)> {
        self.composite(0.0, 1.0, panels)
            .into_iter()
            .map(|(u, w)| (radius * u.powf(q), w * q * radius * u.powf(q - 1.0)))
            .collect()
    }
}

/// Adaptive bisection comparing 20- and 40-point rules per panel.
pub fn integrate_adaptive(f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    let low = gauss_legendre(20);
    let high = gauss_legendre(40);
    let mut stack = vec![(a, b, 0u32)];
    let mut total = 0.0;
    let mut evaluations = 0usize;
    while let Some((lo, hi, depth)) = stack.pop() {
        let coarse = low.integrate(lo, hi, &mut *f);
        let fine = high.integrate(lo, hi, &mut *f);
        evaluations += 60;
        if !fine.is_finite() {
            return Err(Error::Convergence(format!("non-finite integrand on [{lo}, {hi}]")));
        }
        let local_tol = tol * ((hi - lo) / (b - a)).max(1e-3);
        if (fine - coarse).abs() <= local_tol || depth >= 40 {
            if depth >= 40 && (fine - coarse).abs() > local_tol {
                return Err(Error::Convergence(format!("bisection depth exhausted near {lo}")));
            }
            total += fine;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, depth + 1));
            stack.push((mid, hi, depth + 1));
        }
        if evaluations > 5_000_000 {
            return Err(Error::Convergence("evaluation budget exhausted".into()));
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two_and_nodes_are_symmetric() {
        for n in [1, 2, 5, 20, 41, 200] {
            let r = gauss_legendre(n);
            let s: f64 = r.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n={n} sum={s}");
            for i in 0..n {
                assert!((r.nodes[i] + r.nodes[n - 1 - i]).abs() < 1e-15);
                assert!(r.weights[i] > 0.0);
            }
            assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_2n_minus_1() {
        let n = 8;
        let r = gauss_legendre(n);
        for d in 0..2 * n {
            let got = r.integrate(0.0, 2.0, |x| x.powi(d as i32));
            let want = 2f64.powi(d as i32 + 1) / (d as f64 + 1.0);
            assert!((got - want).abs() < 1e-12 * want, "d={d}");
        }
    }

    #[test]
    fn low_orders() {
        let r = gauss_legendre(1);
        assert_eq!((r.nodes[0], r.weights[0]), (0.0, 2.0));
        let r = gauss_legendre(2);
        assert!((r.nodes[1] - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-15 && (r.weights[1] - 1.0).abs() < 1e-15);
        let r = gauss_legendre(4);
        assert!((r.integrate(-1.0, 1.0, |x| x.powi(6)) - 2.0 / 7.0).abs() < 1e-13);
        assert_eq!(r.order(), 4);
    }

    #[test]
    fn doubling_the_order_shrinks_the_error() {
        let exact = std::f64::consts::E - 1.0;
        let mut prev = f64::INFINITY;
        for n in [1, 2, 4, 8] {
            let err = (gauss_legendre(n).integrate(0.0, 1.0, f64::exp) - exact).abs();
            assert!(err < prev / 10.0 || err < 1e-13, "n={n} err={err}");
            prev = err;
        }
    }

    #[test]
    fn known_integrals() {
        let r = gauss_legendre(40);
        assert!((r.integrate(0.0, PI, f64::sin) - 2.0).abs() < 1e-14);
        let pts = r.power_map(1.0, 4.0, 1);
        let got: f64 = pts.iter().map(|(x, w)| w / x.sqrt()).sum();
        assert!((got - 2.0).abs() < 1e-13);
        let pts = r.composite(0.0, 40.0, 4);
        let got: f64 = pts.iter().map(|(x, w)| w * (-x).exp()).sum();
        assert!((got - 1.0).abs() < 1e-13);
    }

    #[test]
    fn adaptive_handles_a_peak() {
        let mut f = |x: f64| 1.0 / (1e-4 + (x - 0.3).powi(2));
        let got = integrate_adaptive(&mut f, 0.0, 1.0, 1e-10).unwrap();
        let want = 100.0 * ((70.0f64).atan() + (30.0f64).atan());
        assert!((got - want).abs() < 1e-8, "got={got} want={want}");
    }
}
