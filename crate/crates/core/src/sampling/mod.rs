//! Monte Carlo spectra of Wishart and Ginibre-product matrices and the
//! statistics used to compare them with analytic predictions.

mod linalg;
mod rng;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::EnsembleSpec;
use crate::macroscopic::{scaling_map, ScalingRegime, WishartParams};

pub use linalg::{backward_error, determinant, hermitian_eigen, hermitian_eigs, jacobi_eigs, CMatrix, JACOBI_MAX_N};
pub use rng::{RngState, Stream, ALGORITHM};

pub const MAX_ENTRIES: usize = 10_000_000;
pub const MAX_WISHART_N: usize = 500;
pub const MAX_PRODUCT_N: usize = 300;
pub const MAX_FACTORS: usize = 4;

/// Eigenvalues below `-NEGATIVE_TOL · max(1, λ_max)` indicate a solver
/// failure; smaller negative values are rounding and are clamped to 0.
const NEGATIVE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleBatch {
    pub spec: EnsembleSpec,
    /// One ascending spectrum per realization.
    pub realizations: Vec<Vec<f64>>,
    pub seed: RngState,
}

impl SampleBatch {
    /// All eigenvalues, sorted.
    pub fn pooled(&self) -> Vec<f64> {
        let mut all: Vec<f64> = self.realizations.iter().flatten().copied().collect();
        all.sort_by(f64::total_cmp);
        all
    }
}

/// `rows × cols` matrix of iid complex normals with `E|X_ij|² = 1`.
pub fn sample_ginibre(rows: usize, cols: usize, rng: &mut Stream) -> Result<CMatrix> {
    if rows.saturating_mul(cols) > MAX_ENTRIES {
        return Err(Error::Domain(format!("{rows}×{cols} exceeds {MAX_ENTRIES} entries")));
    }
    Ok(CMatrix { rows, cols, data: (0..rows * cols).map(|_| rng.complex_normal()).collect() })
}

fn spectrum(gram: &CMatrix) -> Result<Vec<f64>> {
    let mut eig = hermitian_eigs(gram)?;
    let floor = -NEGATIVE_TOL * eig.last().copied().unwrap_or(0.0).max(1.0);
    for v in eig.iter_mut() {
        if *v < floor {
            return Err(Error::Convergence(format!("eigenvalue {v} of a Gram matrix is negative")));
        }
        *v = v.max(0.0);
    }
    Ok(eig)
}

fn batch(spec: EnsembleSpec, count: usize, rng: &RngState, draw: impl Fn(&mut Stream) -> Result<CMatrix> + Sync) -> Result<SampleBatch> {
    rng.stream(0)?;
    let realizations = (0..count as u64)
        .into_par_iter()
        .map(|r| {
            let mut s = rng.stream(r)?;
            spectrum(&draw(&mut s)?.gram())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SampleBatch { spec, realizations, seed: rng.clone() })
}

/// Eigenvalues of `XX†` for `N × T` Ginibre `X`.
pub fn wishart_eigs(params: WishartParams, count: usize, rng: &RngState) -> Result<SampleBatch> {
    if params.n > MAX_WISHART_N {
        return Err(Error::Domain(format!("N = {} exceeds {MAX_WISHART_N}", params.n)));
    }
    let WishartParams { n, t } = params;
    batch(EnsembleSpec::Wishart(params), count, rng, |s| sample_ginibre(n, t, s))
}

/// `Y = X_1 ⋯ X_M` with `X_k` of size `(N+ν_{k-1}) × (N+ν_k)`, `ν_0 = 0`.
pub fn product_matrix(n: usize, nu: &[u32], rng: &mut Stream) -> Result<CMatrix> {
    let mut rows = n;
    let mut y: Option<CMatrix> = None;
    for &v in nu {
        let cols = n + v as usize;
        let x = sample_ginibre(rows, cols, rng)?;
        y = Some(match y {
            None => x,
            Some(y) => y.mul(&x),
        });
        rows = cols;
    }
    y.ok_or_else(|| Error::Domain("product needs at least one factor".into()))
}

/// Squared singular values of a product of Ginibre matrices, from the
/// `N × N` Gram matrix `Y Y†`.
pub fn product_eigs(n: usize, nu: &[u32], count: usize, rng: &RngState) -> Result<SampleBatch> {
    if n == 0 || n > MAX_PRODUCT_N {
        return Err(Error::Domain(format!("need 1 ≤ N ≤ {MAX_PRODUCT_N}, got {n}")));
    }
    if nu.is_empty() || nu.len() > MAX_FACTORS {
        return Err(Error::Domain(format!("need 1 ≤ M ≤ {MAX_FACTORS}, got {}", nu.len())));
    }
    let spec = EnsembleSpec::Product { n, nu: nu.to_vec() };
    batch(spec, count, rng, |s| product_matrix(n, nu, s))
}

/// Draws for any ensemble with a matrix model.
pub fn sample(spec: &EnsembleSpec, count: usize, rng: &RngState) -> Result<SampleBatch> {
    spec.validate()?;
    match spec {
        EnsembleSpec::Wishart(p) => wishart_eigs(*p, count, rng),
        EnsembleSpec::Product { n, nu } => product_eigs(*n, nu, count, rng),
        EnsembleSpec::MuttalibBorodin { .. } => {
            Err(Error::Domain("the Muttalib–Borodin ensemble has no matrix model to sample".into()))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    /// `bins + 1` ascending edges.
    pub edges: Vec<f64>,
    /// Density per bin; `Σ density · width = 1`.
    pub density: Vec<f64>,
}

impl Histogram {
    pub fn new(values: &[f64], bins: usize) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyBatch);
        }
        if bins == 0 {
            return Err(Error::Domain("need at least one bin".into()));
        }
        let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        let mut hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if hi <= lo {
            hi = lo + 1.0;
        }
        let width = (hi - lo) / bins as f64;
        let edges: Vec<f64> = (0..=bins).map(|i| lo + i as f64 * width).collect();
        let mut counts = vec![0usize; bins];
        for &v in values {
            let i = (((v - lo) / width) as usize).min(bins - 1);
            counts[i] += 1;
        }
        let total = values.len() as f64;
        let density = counts.iter().zip(edges.windows(2)).map(|(&c, e)| c as f64 / (total * (e[1] - e[0]))).collect();
        Ok(Self { edges, density })
    }

    pub fn integral(&self) -> f64 {
        self.density.iter().zip(self.edges.windows(2)).map(|(d, e)| d * (e[1] - e[0])).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalStats {
    pub histogram: Histogram,
    pub count: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    /// Smallest eigenvalue of each realization, on the same scale.
    pub smallest: Vec<f64>,
}

pub const MIN_BINS: usize = 10;

/// `λ ↦ s`, inverting the affine microscopic map.
pub fn microscopic_variable(params: WishartParams, regime: ScalingRegime) -> Result<impl Fn(f64) -> f64> {
    let (l0, _) = scaling_map(params, regime, 0.0)?;
    let (l1, _) = scaling_map(params, regime, 1.0)?;
    Ok(move |lambda: f64| (lambda - l0) / (l1 - l0))
}

/// Histogram and summary of a batch, optionally in a microscopic variable.
/// Scaling is defined for Wishart batches only.
pub fn empirical_stats(batch: &SampleBatch, bins: usize, scaling: Option<ScalingRegime>) -> Result<EmpiricalStats> {
    if bins < MIN_BINS {
        return Err(Error::Domain(format!("need at least {MIN_BINS} bins, got {bins}")));
    }
    if batch.realizations.iter().all(Vec::is_empty) {
        return Err(Error::EmptyBatch);
    }
    let map: Box<dyn Fn(f64) -> f64> = match (scaling, &batch.spec) {
        (None, _) => Box::new(|x| x),
        (Some(r), EnsembleSpec::Wishart(p)) => Box::new(microscopic_variable(*p, r)?),
        (Some(_), _) => return Err(Error::Domain("microscopic scaling is defined for Wishart batches only".into())),
    };
    let values: Vec<f64> = batch.realizations.iter().flatten().map(|&x| map(x)).collect();
    let smallest = batch.realizations.iter().filter_map(|r| r.first()).map(|&x| map(x)).collect();
    let histogram = Histogram::new(&values, bins)?;
    Ok(EmpiricalStats {
        count: values.len(),
        min: values.iter().copied().fold(f64::INFINITY, f64::min),
        max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        mean: values.iter().sum::<f64>() / values.len() as f64,
        histogram,
        smallest,
    })
}

/// `sup_x |F_n(x) - F(x)|` for sorted samples; `1` for an empty sample.
pub fn ks_distance(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let n = samples.len() as f64;
    if samples.is_empty() {
        return 1.0;
    }
    samples
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (i as f64 + 1.0 - n * f).max(n * f - i as f64) / n
        })
        .fold(0.0, f64::max)
        .clamp(0.0, 1.0)
}

/// Two-sample Kolmogorov–Smirnov statistic for sorted inputs.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return 1.0;
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}
