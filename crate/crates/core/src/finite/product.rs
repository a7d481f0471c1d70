//! Squared singular values of a product of `M` complex Ginibre matrices.
//!
//! `P_k(x) = G^{1,0}_{1,M+1}(k+1; 0, -ν_M, …, -ν_1 | x)` is a polynomial of
//! degree `k`; `Q_k(x) = G^{M,1}_{1,M+1}(-k; ν_M, …, ν_1, 0 | x)` has
//! resonant lower parameters for integer `ν` and is evaluated on the
//! Mellin–Barnes contour.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::meijer::{MeijerG, MeijerGParams};

use super::poly::{factorial, horner, max_abs, rational, to_f64, Basis, PolynomialCoeffs};

pub const MAX_K: usize = 50;
pub const MAX_M: usize = 4;

fn check(k: usize, nu: &[u32]) -> Result<()> {
    if nu.is_empty() || nu.len() > MAX_M {
        return Err(Error::Domain(format!("need 1 ≤ M ≤ {MAX_M}, got {}", nu.len())));
    }
    if k > MAX_K {
        return Err(Error::Domain(format!("k = {k} exceeds {MAX_K}")));
    }
    Ok(())
}

fn fact(n: u64) -> BigRational {
    BigRational::from_integer(factorial(n))
}

/// Coefficients `c_j = (-1)^j / (j! (k-j)! Π_i (ν_i + j)!)` of `P_k`.
pub fn product_p_coeffs(k: usize, nu: &[u32]) -> Result<PolynomialCoeffs> {
    check(k, nu)?;
    let coeffs = (0..=k as u64)
        .map(|j| {
            let mut den = fact(j) * fact(k as u64 - j);
            for &v in nu {
                den *= fact(v as u64 + j);
            }
            let sign = if j % 2 == 0 { rational(1) } else { rational(-1) };
            sign / den
        })
        .collect();
    Ok(PolynomialCoeffs::new(coeffs, Basis::Monomial))
}

/// `∫_0^∞ x^j Q_k(x) dx = Π_i (ν_i + j)! · Π_{i=1}^{k} (i - j - 1)`, from the
/// Mellin transform of `Q_k`.
pub fn product_q_moment(k: usize, nu: &[u32], j: usize) -> BigRational {
    let mut m = BigRational::one();
    for &v in nu {
        m *= fact(v as u64 + j as u64);
    }
    for i in 1..=k as i64 {
        m *= rational(i - j as i64 - 1);
    }
    m
}

/// `⟨Q_k | P_l⟩` in exact arithmetic.
pub fn product_gram_exact(k: usize, l: usize, nu: &[u32]) -> Result<BigRational> {
    let p = product_p_coeffs(l, nu)?;
    Ok(p.coefficients
        .iter()
        .enumerate()
        .fold(BigRational::zero(), |acc, (j, c)| acc + c * product_q_moment(k, nu, j)))
}

fn q_params(k: usize, nu: &[u32]) -> Result<MeijerGParams> {
    let mut b: Vec<f64> = nu.iter().rev().map(|&v| v as f64).collect();
    b.push(0.0);
    MeijerGParams::new(nu.len(), 1, vec![-(k as f64)], b)
}

pub fn product_p(k: usize, nu: &[u32], x: f64) -> Result<f64> {
    Ok(horner(&product_p_coeffs(k, nu)?.to_f64(), x))
}

pub fn product_q(k: usize, nu: &[u32], x: f64) -> Result<f64> {
    check(k, nu)?;
    MeijerG::new(q_params(k, nu)?).value(x)
}

/// `max |coefficient of (H_M - k) P_k|` with
/// `H_M = x d/dx - d/dx Π_j (x d/dx + ν_j)`, computed exactly.
pub fn hamiltonian_residual_product(k: usize, nu: &[u32]) -> Result<f64> {
    let c = product_p_coeffs(k, nu)?.coefficients;
    // x^j ↦ j x^j - j Π_i (j + ν_i) x^{j-1}
    let mut out = vec![BigRational::zero(); c.len()];
    for (j, cj) in c.iter().enumerate() {
        let jr = rational(j as i64);
        out[j] += cj * (&jr - rational(k as i64));
        if j > 0 {
            let mut f = jr;
            for &v in nu {
                f *= rational(j as i64 + v as i64);
            }
            out[j - 1] -= cj * f;
        }
    }
    Ok(max_abs(&out))
}

/// Biorthonormal pairs `(Q_k, P_k / g_k)`, `k < N`, built once.
#[derive(Debug)]
pub struct ProductEnsemble {
    pub n: usize,
    pub nu: Vec<u32>,
    p: Vec<Vec<f64>>,
    q: Vec<MeijerG>,
    norms: Vec<f64>,
}

impl ProductEnsemble {
    pub fn new(n: usize, nu: &[u32]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("N must be at least 1".into()));
        }
        check(n - 1, nu)?;
        let mut p = Vec::with_capacity(n);
        let mut q = Vec::with_capacity(n);
        let mut norms = Vec::with_capacity(n);
        for k in 0..n {
            let g = product_gram_exact(k, k, nu)?;
            if g.is_zero() {
                return Err(Error::Domain(format!("⟨Q_{k}|P_{k}⟩ vanishes")));
            }
            let coeffs = product_p_coeffs(k, nu)?;
            p.push(coeffs.coefficients.iter().map(|c| to_f64(&(c / &g))).collect());
            q.push(MeijerG::new(q_params(k, nu)?));
            norms.push(to_f64(&g));
        }
        Ok(Self { n, nu: nu.to_vec(), p, q, norms })
    }

    /// `g_k = ⟨Q_k | P_k⟩` before normalization.
    pub fn norms(&self) -> &[f64] {
        &self.norms
    }

    /// Normalized `P_k`.
    pub fn p(&self, k: usize, x: f64) -> f64 {
        horner(&self.p[k], x)
    }

    pub fn q(&self, k: usize, x: f64) -> Result<f64> {
        self.q[k].value(x)
    }

    /// `K_N(x, y) = Σ_{k<N} Q_k(x) P_k(y)`.
    pub fn kernel(&self, x: f64, y: f64) -> Result<f64> {
        let mut acc = 0.0;
        for k in 0..self.n {
            acc += self.q(k, x)? * self.p(k, y);
        }
        Ok(acc)
    }
}

pub fn product_kernel(n: usize, nu: &[u32], x: f64, y: f64) -> Result<f64> {
    ProductEnsemble::new(n, nu)?.kernel(x, y)
}

/// `Π_i (ν_i)!` as a double, the reciprocal of `P_0`.
pub fn product_p0_denominator(nu: &[u32]) -> f64 {
    to_f64(&nu.iter().fold(BigRational::one(), |acc, &v| acc * fact(v as u64)))
}
