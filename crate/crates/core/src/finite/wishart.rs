//! Laguerre unitary ensemble: Christoffel–Darboux kernel as an explicit sum
//! of orthonormal functions, and the radial Schrödinger equation they solve.

use crate::error::{Error, Result};
use crate::macroscopic::WishartParams;
use crate::special::{laguerre_psi, laguerre_psi_all};

/// Largest supported `N`.
pub const MAX_N: usize = 2000;

/// `K_N(x, y) = Σ_{l<N} ψ_l(x) ψ_l(y)` with weight `x^α e^{-x}`, `α = T - N`.
pub fn wishart_kernel(params: WishartParams, x: f64, y: f64) -> Result<f64> {
    if params.n > MAX_N {
        return Err(Error::Domain(format!("N = {} exceeds {MAX_N}", params.n)));
    }
    let alpha = params.alpha() as f64;
    let px = laguerre_psi_all(params.n, alpha, x)?;
    if x == y {
        return Ok(px.iter().map(|v| v * v).sum());
    }
    let py = laguerre_psi_all(params.n, alpha, y)?;
    Ok(px.iter().zip(&py).map(|(a, b)| a * b).sum())
}

/// Residual of `ψ'' + ψ'/x + (1+2k+α)ψ/(2x) - α²ψ/(4x²) - ψ/4 = 0` for
/// `ψ = ψ_k`, with five-point central differences.
pub fn schrodinger_residual(k: usize, alpha: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("x = {x} must be positive")));
    }
    let h = 1e-2 * x.min(1.0);
    let f = |t: f64| laguerre_psi(k, alpha, t);
    let (m2, m1, c, p1, p2) = (f(x - 2.0 * h)?, f(x - h)?, f(x)?, f(x + h)?, f(x + 2.0 * h)?);
    let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    let d2 = (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h);
    let kf = k as f64;
    Ok(d2 + d1 / x + (1.0 + 2.0 * kf + alpha) * c / (2.0 * x) - alpha * alpha * c / (4.0 * x * x) - c / 4.0)
}
