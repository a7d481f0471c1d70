//! Finite-N kernels and biorthogonal functions for the Wishart, matrix
//! product and Muttalib–Borodin ensembles.

pub mod mb;
pub mod poly;
pub mod product;
pub mod wishart;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::macroscopic::WishartParams;

pub use mb::{hamiltonian_residual_mb, mb_kernel, mb_p, mb_p_printed, mb_q, MbEnsemble};
pub use poly::{Basis, PolynomialCoeffs};
pub use product::{hamiltonian_residual_product, product_kernel, product_p, product_q, ProductEnsemble};
pub use wishart::{schrodinger_residual, wishart_kernel};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum EnsembleSpec {
    Wishart(WishartParams),
    /// `M = nu.len()` factors; `ν_0 = 0` is implicit.
    Product { n: usize, nu: Vec<u32> },
    MuttalibBorodin { n: usize, alpha: f64, theta: u32 },
}

impl EnsembleSpec {
    pub fn n(&self) -> usize {
        match self {
            Self::Wishart(p) => p.n,
            Self::Product { n, .. } | Self::MuttalibBorodin { n, .. } => *n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Wishart(p) => WishartParams::new(p.n, p.t).map(|_| ()),
            Self::Product { n, nu } => {
                if *n == 0 || nu.is_empty() || nu.len() > product::MAX_M {
                    return Err(Error::Domain(format!("product ensemble needs N ≥ 1 and 1 ≤ M ≤ {}", product::MAX_M)));
                }
                Ok(())
            }
            Self::MuttalibBorodin { n, alpha, theta } => {
                if *n == 0 {
                    return Err(Error::Domain("N must be at least 1".into()));
                }
                mb::mb_q(0, *alpha, *theta, 1.0).map(|_| ())
            }
        }
    }
}

/// Kernel evaluator for any of the three ensembles, with the biorthogonal
/// data built once.
#[derive(Debug)]
pub enum FiniteKernel {
    Wishart(WishartParams),
    Product(ProductEnsemble),
    MuttalibBorodin(MbEnsemble),
}

impl FiniteKernel {
    pub fn new(spec: &EnsembleSpec) -> Result<Self> {
        spec.validate()?;
        Ok(match spec {
            EnsembleSpec::Wishart(p) => Self::Wishart(*p),
            EnsembleSpec::Product { n, nu } => Self::Product(ProductEnsemble::new(*n, nu)?),
            EnsembleSpec::MuttalibBorodin { n, alpha, theta } => Self::MuttalibBorodin(MbEnsemble::new(*n, *alpha, *theta)?),
        })
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        match self {
            Self::Wishart(p) => wishart_kernel(*p, x, y),
            Self::Product(e) => e.kernel(x, y),
            Self::MuttalibBorodin(e) => e.kernel(x, y),
        }
    }
}
