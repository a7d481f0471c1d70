use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Pairwise differences closer than this to an integer count as resonant.
pub const RESONANCE_TOL: f64 = 1e-8;

/// Order indices and parameters of `G^{m,n}_{p,q}(a; b | z)`.
///
/// Only the classes `(1,0,0,q)`, `(M,0,0,M+1)`, `(1,0,1,M+1)` and
/// `(M,1,1,M+1)` are accepted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeijerGParams {
    pub m: usize,
    pub n: usize,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl MeijerGParams {
    pub fn new(m: usize, n: usize, a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        let (p, q) = (a.len(), b.len());
        if a.iter().chain(&b).any(|v| !v.is_finite()) {
            return Err(Error::UnsupportedParams("non-finite parameter".into()));
        }
        let supported = match (m, n, p) {
            (1, 0, 0) => q >= 1,
            (_, 0, 0) => m >= 1 && q == m + 1,
            (1, 0, 1) => q >= 2,
            (_, 1, 1) => m >= 1 && q == m + 1,
            _ => false,
        };
        if !supported {
            return Err(Error::UnsupportedParams(format!(
                "G^{{{m},{n}}}_{{{p},{q}}} is outside the supported classes"
            )));
        }
        Ok(Self { m, n, a, b })
    }

    pub fn p(&self) -> usize {
        self.a.len()
    }

    pub fn q(&self) -> usize {
        self.b.len()
    }

    /// `m + n - (p + q)/2`; a vertical Mellin–Barnes line converges iff positive.
    pub fn delta(&self) -> f64 {
        (self.m + self.n) as f64 - 0.5 * (self.p() + self.q()) as f64
    }

    /// True when two of the first `m` lower parameters differ by an integer.
    pub fn is_resonant(&self) -> bool {
        let head = &self.b[..self.m];
        head.iter().enumerate().any(|(i, x)| {
            head[i + 1..].iter().any(|y| {
                let d = x - y;
                (d - d.round()).abs() < RESONANCE_TOL
            })
        })
    }

    /// Poles of `Γ(b_j - s)`, `j ≤ m`, lie at `s ≥` this value.
    pub(crate) fn right_pole_start(&self) -> f64 {
        self.b[..self.m].iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Poles of `Γ(1 - a_j + s)`, `j ≤ n`, lie at `s ≤` this value.
    pub(crate) fn left_pole_end(&self) -> f64 {
        self.a[..self.n].iter().map(|a| a - 1.0).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Same class with the lower parameters replaced.
    pub fn with_b(&self, b: Vec<f64>) -> Result<Self> {
        Self::new(self.m, self.n, self.a.clone(), b)
    }

    /// All parameters shifted by `alpha`.
    pub fn shifted(&self, alpha: f64) -> Result<Self> {
        Self::new(
            self.m,
            self.n,
            self.a.iter().map(|x| x + alpha).collect(),
            self.b.iter().map(|x| x + alpha).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whitelist() {
        assert!(MeijerGParams::new(1, 0, vec![], vec![0.0, 1.0, 2.0]).is_ok());
        assert!(MeijerGParams::new(3, 0, vec![], vec![0.0; 4]).is_ok());
        assert!(MeijerGParams::new(1, 0, vec![3.0], vec![0.0, -1.0, -2.0]).is_ok());
        assert!(MeijerGParams::new(2, 1, vec![-1.0], vec![1.0, 3.0, 0.0]).is_ok());
        for (m, n, p, q) in [(2, 0, 0, 4), (0, 0, 0, 2), (2, 1, 1, 4), (1, 1, 1, 1), (2, 2, 2, 3)] {
            let r = MeijerGParams::new(m, n, vec![0.5; p], vec![0.25; q]);
            assert!(matches!(r, Err(Error::UnsupportedParams(_))), "{m} {n} {p} {q}");
        }
    }

    #[test]
    fn resonance_and_delta() {
        let p = MeijerGParams::new(2, 0, vec![], vec![1.0, 0.0, 0.0]).unwrap();
        assert!(p.is_resonant());
        assert_eq!(p.delta(), 0.5);
        let p = MeijerGParams::new(2, 0, vec![], vec![0.3, 0.0, 0.0]).unwrap();
        assert!(!p.is_resonant());
        let p = MeijerGParams::new(2, 0, vec![], vec![0.0, 2.0 + 1e-9, 0.5]).unwrap();
        assert!(p.is_resonant());
        let p = MeijerGParams::new(1, 0, vec![], vec![0.0, 0.0]).unwrap();
        assert!(!p.is_resonant());
        assert_eq!(p.delta(), 0.0);
    }
}
