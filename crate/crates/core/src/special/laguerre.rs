//! Orthonormal Laguerre functions
//! `ψ_k(x) = sqrt(k!/Γ(k+α+1)) x^{α/2} e^{-x/2} L_k^{(α)}(x)`.

use crate::error::{Error, Result};

use super::gamma::ln_gamma;

const RESCALE: f64 = 1e150;

fn check(alpha: f64, x: f64) -> Result<()> {
    if !(alpha > -1.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!("Laguerre order α = {alpha} must exceed -1")));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("Laguerre argument x = {x} must be ≥ 0")));
    }
    Ok(())
}

fn at_zero(alpha: f64) -> Result<f64> {
    if alpha > 0.0 {
        Ok(0.0)
    } else if alpha == 0.0 {
        Ok(1.0)
    } else {
        Err(Error::Domain(format!("ψ_k(0) diverges for α = {alpha}")))
    }
}

/// Runs the three-term recurrence, calling `emit(k, ψ_k)` for `k = 0..=n`.
fn recur(n: usize, alpha: f64, x: f64, mut emit: impl FnMut(usize, f64)) {
    let mut log_scale = 0.5 * alpha * x.ln() - 0.5 * x - 0.5 * ln_gamma(alpha + 1.0);
    let mut prev = 0.0;
    let mut cur = 1.0;
    emit(0, log_scale.exp());
    for k in 0..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf * (kf + alpha)).sqrt() * prev)
            / ((kf + 1.0) * (kf + alpha + 1.0)).sqrt();
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            prev /= RESCALE;
            cur /= RESCALE;
            log_scale += RESCALE.ln();
        }
        let value = if cur == 0.0 { 0.0 } else { cur.signum() * (cur.abs().ln() + log_scale).exp() };
        emit(k + 1, value);
    }
}

/// `ψ_k^{(α)}(x)` for `α > -1`, `x ≥ 0`.
pub fn laguerre_psi(k: usize, alpha: f64, x: f64) -> Result<f64> {
    check(alpha, x)?;
    if x == 0.0 {
        return at_zero(alpha);
    }
    let mut out = 0.0;
    recur(k, alpha, x, |j, v| {
        if j == k {
            out = v;
        }
    });
    Ok(out)
}

/// `[ψ_0(x), …, ψ_{n-1}(x)]`.
pub fn laguerre_psi_all(n: usize, alpha: f64, x: f64) -> Result<Vec<f64>> {
    check(alpha, x)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    if x == 0.0 {
        return Ok(vec![at_zero(alpha)?; n]);
    }
    let mut out = vec![0.0; n];
    recur(n - 1, alpha, x, |j, v| out[j] = v);
    Ok(out)
}

/// `ψ_k'(x)` for `x > 0`, from `x ψ_k' = (k + (α - x)/2) ψ_k - sqrt(k(k+α)) ψ_{k-1}`.
pub fn laguerre_psi_derivative(k: usize, alpha: f64, x: f64) -> Result<f64> {
    check(alpha, x)?;
    if x == 0.0 {
        return Err(Error::Domain("ψ_k' requires x > 0".into()));
    }
    let psi = laguerre_psi_all(k + 1, alpha, x)?;
    let kf = k as f64;
    let lower = if k == 0 { 0.0 } else { (kf * (kf + alpha)).sqrt() * psi[k - 1] };
    Ok(((kf + 0.5 * (alpha - x)) * psi[k] - lower) / x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma::gamma;
    use crate::special::quadrature::{gauss_legendre, integrate_adaptive};

    #[test]
    fn low_orders_match_closed_forms() {
        for &(a, x) in &[(0.0, 0.7), (1.5, 2.0), (-0.5, 4.0)] {
            let w = (x as f64).powf(0.5 * a) * (-0.5 * x as f64).exp();
            let l1 = 1.0 + a - x;
            let l2 = 0.5 * (x * x - 2.0 * (a + 2.0) * x + (a + 1.0) * (a + 2.0));
            let n = |k: f64| (gamma(k + 1.0) / gamma(k + a + 1.0)).sqrt();
            assert!((laguerre_psi(0, a, x).unwrap() - n(0.0) * w).abs() < 1e-14);
            assert!((laguerre_psi(1, a, x).unwrap() - n(1.0) * w * l1).abs() < 1e-14);
            assert!((laguerre_psi(2, a, x).unwrap() - n(2.0) * w * l2).abs() < 1e-14);
        }
    }

    // Reference values from a 40-digit evaluation.
    #[test]
    fn matches_high_precision_reference() {
        let cases = [
            (5, 0.5, 3.2, 0.244_371_649_420_626_58),
            (40, 2.0, 100.0, -0.077_709_563_296_340_43),
            (200, 0.0, 790.0, 0.071_547_518_188_123_88),
            (399, 1.5, 1500.0, -0.001_045_217_911_859_473_9),
            (150, -0.5, 0.01, -0.392_999_314_816_467_57),
            (60, 3.0, 300.0, 1.967_712_300_263_474_3e-5),
            (1000, 0.0, 3000.0, 0.005_085_766_647_498_904_5),
        ];
        for (k, a, x, want) in cases {
            let got = laguerre_psi(k, a, x).unwrap();
            assert!(((got - want) / want).abs() < 1e-10, "k={k} got={got} want={want}");
        }
    }

    #[test]
    fn far_tail_does_not_underflow_prematurely() {
        let v = laguerre_psi(10, 0.0, 1400.0).unwrap();
        assert!(v != 0.0 && v.is_finite());
        assert!(laguerre_psi(3, 0.5, 2000.0).unwrap().abs() < 1e-300);
    }

    #[test]
    fn origin_and_domain() {
        assert_eq!(laguerre_psi(4, 0.0, 0.0).unwrap(), 1.0);
        assert_eq!(laguerre_psi(4, 2.0, 0.0).unwrap(), 0.0);
        assert!(laguerre_psi(4, -0.5, 0.0).is_err());
        assert!(laguerre_psi(1, -1.0, 1.0).is_err());
        assert!(laguerre_psi(1, 0.0, -1.0).is_err());
    }

    #[test]
    fn orthonormal_under_quadrature() {
        let alpha = 1.3;
        let n = 12;
        let pts = gauss_legendre(60).power_map(120.0, 2.0, 4);
        let mut gram = vec![vec![0.0; n]; n];
        for (x, w) in pts {
            let psi = laguerre_psi_all(n, alpha, x).unwrap();
            for i in 0..n {
                for j in 0..n {
                    gram[i][j] += w * psi[i] * psi[j];
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((gram[i][j] - want).abs() < 1e-11, "({i},{j}) = {}", gram[i][j]);
            }
        }
    }

    #[test]
    fn matches_exact_rational_coefficients() {
        use num_rational::Ratio;
        // L_5^{(1)}(5/2) = Σ_j (-1)^j C(6, 5-j) x^j / j!
        let x = Ratio::new(5i64, 2);
        let binom = [6i64, 15, 20, 15, 6, 1];
        let mut sum = Ratio::from_integer(0);
        let mut pow = Ratio::from_integer(1);
        let mut fact = 1i64;
        for j in 0..=5usize {
            if j > 0 {
                pow *= x;
                fact *= j as i64;
            }
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sum += pow * Ratio::from_integer(sign * binom[j]) / Ratio::from_integer(fact);
        }
        let l5 = *sum.numer() as f64 / *sum.denom() as f64;
        let want = (1.0f64 / 6.0).sqrt() * 2.5f64.sqrt() * (-1.25f64).exp() * l5;
        assert!((laguerre_psi(5, 1.0, 2.5).unwrap() - want).abs() < 1e-14);
    }

    #[test]
    fn gram_matrix_under_adaptive_quadrature() {
        for alpha in [0.0, 0.5, 1.0, 7.0] {
            for i in 0..8 {
                for j in i..8 {
                    let mut f = |x: f64| laguerre_psi(i, alpha, x).unwrap() * laguerre_psi(j, alpha, x).unwrap();
                    let g = integrate_adaptive(&mut f, 0.0, 150.0, 1e-10).unwrap();
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((g - want).abs() < 1e-7, "α={alpha} ({i},{j}) = {g}");
                }
            }
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        for &(k, a, x) in &[(0usize, 0.0, 1.0), (7, 0.5, 6.0), (30, 2.0, 50.0)] {
            let h = 1e-5;
            let fd = (laguerre_psi(k, a, x + h).unwrap() - laguerre_psi(k, a, x - h).unwrap()) / (2.0 * h);
            let d = laguerre_psi_derivative(k, a, x).unwrap();
            assert!((fd - d).abs() < 1e-8, "k={k} fd={fd} d={d}");
        }
    }
}
