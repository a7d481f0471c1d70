//! Muttalib–Borodin ensemble with Laguerre weight and integer `θ`.
//!
//! `Q_k(x) = x^α e^{-x} Σ_j (-1)^j C(k,j) x^{jθ} / Γ(jθ+α+1)` and the
//! polynomials
//! `P_k(x) = (1/k!) Σ_i x^i/i! Σ_j (-1)^j C(i,j) ((j+α+1)/θ)_k`.
//! For `θ = 1` both reduce to Laguerre functions.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::special::ln_gamma;

use super::poly::{
    binomial, factorial, horner, max_abs, pochhammer, rational, rational_from_f64, to_f64, Basis, PolynomialCoeffs,
};

pub const MAX_K: usize = 50;
pub const MAX_THETA: u32 = 4;

fn check(k: usize, alpha: f64, theta: u32) -> Result<()> {
    if !(alpha > -1.0 && alpha.is_finite()) {
        return Err(Error::Domain(format!("α = {alpha} must exceed -1")));
    }
    if theta == 0 || theta > MAX_THETA {
        return Err(Error::Domain(format!("θ = {theta} outside 1..={MAX_THETA}")));
    }
    if k > MAX_K {
        return Err(Error::Domain(format!("k = {k} exceeds {MAX_K}")));
    }
    Ok(())
}

fn signed_binomial(n: usize, j: usize) -> BigRational {
    let b = BigRational::from_integer(binomial(n as u64, j as u64));
    if j % 2 == 0 { b } else { -b }
}

/// Monomial coefficients of `P_k`, exact in the binary value of `α`.
pub fn mb_p_coeffs(k: usize, alpha: f64, theta: u32) -> Result<PolynomialCoeffs> {
    check(k, alpha, theta)?;
    let a = rational_from_f64(alpha)?;
    let th = rational(theta as i64);
    let poch: Vec<BigRational> = (0..=k)
        .map(|j| pochhammer(&((rational(j as i64) + &a + BigRational::one()) / &th), k as u64))
        .collect();
    let kfact = BigRational::from_integer(factorial(k as u64));
    let coeffs = (0..=k)
        .map(|i| {
            let inner = (0..=i).fold(BigRational::zero(), |acc, j| acc + signed_binomial(i, j) * &poch[j]);
            inner / (&kfact * BigRational::from_integer(factorial(i as u64)))
        })
        .collect();
    Ok(PolynomialCoeffs::new(coeffs, Basis::Monomial))
}

/// Coefficients `(-1)^j C(k,j)` of `Z_k = x^{-α} e^x Q_k` in the basis
/// `x^{jθ} / Γ(jθ+α+1)`.
pub fn mb_z_coeffs(k: usize, theta: u32) -> PolynomialCoeffs {
    PolynomialCoeffs::new((0..=k).map(|j| signed_binomial(k, j)).collect(), Basis::PowerOf(theta))
}

pub fn mb_p(k: usize, alpha: f64, theta: u32, x: f64) -> Result<f64> {
    Ok(horner(&mb_p_coeffs(k, alpha, theta)?.to_f64(), x))
}

/// The polynomial with `Γ(k + (j+α+1)/θ) / Γ(k)` in place of the Pochhammer
/// symbol; undefined at `k = 0`.
pub fn mb_p_printed(k: usize, alpha: f64, theta: u32, x: f64) -> Result<f64> {
    check(k, alpha, theta)?;
    if k == 0 {
        return Err(Error::Domain("Γ(k) diverges at k = 0".into()));
    }
    let kf = k as f64;
    let ratio = |j: usize| (ln_gamma(kf + (j as f64 + alpha + 1.0) / theta as f64) - ln_gamma(kf)).exp();
    let mut acc = 0.0;
    for i in 0..=k {
        let inner: f64 = (0..=i).map(|j| to_f64(&signed_binomial(i, j)) * ratio(j)).sum();
        acc += x.powi(i as i32) / to_f64(&BigRational::from_integer(factorial(i as u64))) * inner;
    }
    Ok(acc / to_f64(&BigRational::from_integer(factorial(k as u64))))
}

pub fn mb_q(k: usize, alpha: f64, theta: u32, x: f64) -> Result<f64> {
    check(k, alpha, theta)?;
    if x < 0.0 {
        return Err(Error::Domain(format!("x = {x} must be non-negative")));
    }
    if x == 0.0 {
        return Ok(if alpha > 0.0 {
            0.0
        } else if alpha == 0.0 {
            1.0
        } else {
            f64::INFINITY
        });
    }
    let lx = x.ln();
    let mut sum = 0.0;
    for j in 0..=k {
        let e = (j as f64 * theta as f64) * lx - ln_gamma(j as f64 * theta as f64 + alpha + 1.0);
        sum += to_f64(&signed_binomial(k, j)) * e.exp();
    }
    Ok((alpha * lx - x).exp() * sum)
}

/// `∫_0^∞ x^i Q_k(x) dx = Σ_j (-1)^j C(k,j) (jθ+α+1)_i`.
pub fn mb_q_moment(k: usize, alpha: f64, theta: u32, i: usize) -> Result<BigRational> {
    check(k, alpha, theta)?;
    let a = rational_from_f64(alpha)?;
    Ok((0..=k).fold(BigRational::zero(), |acc, j| {
        let base = rational((j * theta as usize) as i64) + &a + BigRational::one();
        acc + signed_binomial(k, j) * pochhammer(&base, i as u64)
    }))
}

/// `⟨Q_k | P_l⟩` in exact arithmetic.
pub fn mb_gram_exact(k: usize, l: usize, alpha: f64, theta: u32) -> Result<BigRational> {
    let p = mb_p_coeffs(l, alpha, theta)?;
    let mut acc = BigRational::zero();
    for (i, c) in p.coefficients.iter().enumerate() {
        acc += c * mb_q_moment(k, alpha, theta, i)?;
    }
    Ok(acc)
}

/// Largest coefficient residual of `H P_k = θk P_k`, with
/// `H = (d/dx x + α - x)[(1 - d/dx)^θ - 1]`, and of
/// `(d/dx)^θ x^{α+1} Z_k' - x^{α+1} Z_k' = -θk x^α Z_k`, both exact.
pub fn hamiltonian_residual_mb(k: usize, alpha: f64, theta: u32) -> Result<f64> {
    let c = mb_p_coeffs(k, alpha, theta)?.coefficients;
    let a = rational_from_f64(alpha)?;
    let lambda = rational((theta as usize * k) as i64);
    let n = c.len();

    // [(1 - D)^θ - 1] p
    let mut ap = vec![BigRational::zero(); n];
    for r in 1..=theta as usize {
        let coef = signed_binomial(theta as usize, r);
        for (j, cj) in c.iter().enumerate().skip(r) {
            // D^r x^j = j!/(j-r)! x^{j-r}
            let falling = BigRational::from_integer(factorial(j as u64) / factorial((j - r) as u64));
            ap[j - r] += &coef * cj * falling;
        }
    }
    // (D x + α - x) q: x^j ↦ (j+1+α) x^j - x^{j+1}
    let mut out: Vec<BigRational> = c.iter().map(|cj| -(&lambda * cj)).collect();
    out.push(BigRational::zero());
    for (j, q) in ap.iter().enumerate() {
        out[j] += q * (rational(j as i64 + 1) + &a);
        out[j + 1] -= q;
    }
    let p_residual = max_abs(&out);

    // In the basis b_j = x^{jθ+α}/Γ(jθ+α+1): x^{α+1} Z' = Σ jθ e_j b_j,
    // D^θ b_j = b_{j-1}, x^α Z = Σ e_j b_j.
    let e = mb_z_coeffs(k, theta).coefficients;
    let th = rational(theta as i64);
    let mut z = vec![BigRational::zero(); e.len()];
    for (j, ej) in e.iter().enumerate() {
        let d = ej * rational(j as i64) * &th;
        if j > 0 {
            z[j - 1] += &d;
        }
        z[j] -= &d;
        z[j] += &lambda * ej;
    }
    Ok(p_residual.max(max_abs(&z)))
}

/// Biorthonormal pairs `(Q_k, P_k / g_k)`, `k < N`.
#[derive(Debug, Clone)]
pub struct MbEnsemble {
    pub n: usize,
    pub alpha: f64,
    pub theta: u32,
    p: Vec<Vec<f64>>,
    norms: Vec<f64>,
}

impl MbEnsemble {
    pub fn new(n: usize, alpha: f64, theta: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("N must be at least 1".into()));
        }
        check(n - 1, alpha, theta)?;
        let mut p = Vec::with_capacity(n);
        let mut norms = Vec::with_capacity(n);
        for k in 0..n {
            let g = mb_gram_exact(k, k, alpha, theta)?;
            if g.is_zero() {
                return Err(Error::Domain(format!("⟨Q_{k}|P_{k}⟩ vanishes")));
            }
            let coeffs = mb_p_coeffs(k, alpha, theta)?;
            p.push(coeffs.coefficients.iter().map(|c| to_f64(&(c / &g))).collect());
            norms.push(to_f64(&g));
        }
        Ok(Self { n, alpha, theta, p, norms })
    }

    /// `g_k = ⟨Q_k | P_k⟩` of the unnormalized pair.
    pub fn norms(&self) -> &[f64] {
        &self.norms
    }

    pub fn p(&self, k: usize, x: f64) -> f64 {
        horner(&self.p[k], x)
    }

    pub fn q(&self, k: usize, x: f64) -> Result<f64> {
        mb_q(k, self.alpha, self.theta, x)
    }

    pub fn kernel(&self, x: f64, y: f64) -> Result<f64> {
        let mut acc = 0.0;
        for k in 0..self.n {
            acc += self.q(k, x)? * self.p(k, y);
        }
        Ok(acc)
    }
}

pub fn mb_kernel(n: usize, alpha: f64, theta: u32, x: f64, y: f64) -> Result<f64> {
    MbEnsemble::new(n, alpha, theta)?.kernel(x, y)
}
