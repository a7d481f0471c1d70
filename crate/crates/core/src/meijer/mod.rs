//! Meijer G-function on the positive real axis, the Narain transform pair
//! and numerical checks of the standard G-function identities.

mod contour;
pub mod identities;
pub mod narain;
mod params;
mod series;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::bessel_j;

pub use params::{MeijerGParams, RESONANCE_TOL};

use contour::Contour;
use series::residue_series;

/// Largest argument accepted by [`MeijerG::evaluate`].
pub const Z_MAX: f64 = 1e6;
/// Accepted error estimate, relative to `max(1, |G|)`.
pub const ACCEPT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    Bessel,
    Series,
    Contour,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub value: f64,
    pub error: f64,
    pub method: Method,
}

/// Reusable evaluator for one parameter set.
///
/// The contour samples are built lazily on first use and shared afterwards,
/// so a single evaluator can be used from many threads.
type LazyContour = OnceLock<std::result::Result<Contour, Error>>;

/// Gap kept between a biased abscissa and the nearest pole.
const EDGE_GAP: f64 = 0.25;

#[derive(Debug)]
pub struct MeijerG {
    params: MeijerGParams,
    /// Candidate abscissas: the default line, then lines hugging the right
    /// and left pole families. Rounding on a line scales like `z^σ`, so small
    /// arguments favour the right line and large ones the left.
    sigmas: Vec<f64>,
    contours: Vec<LazyContour>,
    fixed_abscissa: bool,
}

impl MeijerG {
    pub fn new(params: MeijerGParams) -> Self {
        let (lo, hi) = Contour::band(&params);
        let mut sigmas = vec![Contour::default_sigma(&params)];
        if hi - lo > 4.0 * EDGE_GAP {
            sigmas.push(hi - EDGE_GAP);
            if lo.is_finite() {
                sigmas.push(lo + EDGE_GAP);
            }
        }
        let contours = sigmas.iter().map(|_| OnceLock::new()).collect();
        Self { params, sigmas, contours, fixed_abscissa: false }
    }

    /// Evaluator whose contour path uses the abscissa `sigma` only.
    pub fn with_abscissa(params: MeijerGParams, sigma: f64) -> Result<Self> {
        let contour = Contour::new(&params, sigma)?;
        let lock = OnceLock::new();
        let _ = lock.set(Ok(contour));
        Ok(Self { params, sigmas: vec![sigma], contours: vec![lock], fixed_abscissa: true })
    }

    pub fn params(&self) -> &MeijerGParams {
        &self.params
    }

    fn contour_path(&self, i: usize) -> Result<&Contour> {
        self.contours[i]
            .get_or_init(|| Contour::new(&self.params, self.sigmas[i]))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn contour_admissible(&self) -> bool {
        self.params.delta() > 0.0
    }

    fn bessel_fast_path(&self) -> Option<(f64, f64)> {
        let p = &self.params;
        if (p.m, p.n, p.p(), p.q()) == (1, 0, 0, 2) && p.b[0] - p.b[1] >= -1.0 {
            Some((p.b[0], p.b[1]))
        } else {
            None
        }
    }

    pub fn series(&self, z: f64) -> Result<Evaluation> {
        let (value, error) = residue_series(&self.params, z)?;
        Ok(Evaluation { value, error, method: Method::Series })
    }

    /// Contour value on the first candidate line whose error estimate is
    /// acceptable, else the one with the smallest estimate.
    pub fn contour(&self, z: f64) -> Result<Evaluation> {
        let mut order: Vec<usize> = (0..self.sigmas.len()).collect();
        if z < 1.0 {
            order.sort_by(|&i, &j| self.sigmas[j].total_cmp(&self.sigmas[i]));
        } else if z > 1.0 {
            order.sort_by(|&i, &j| self.sigmas[i].total_cmp(&self.sigmas[j]));
        }
        let mut best: Option<Evaluation> = None;
        let mut first_err = None;
        for i in order {
            let (value, error) = match self.contour_path(i).and_then(|c| c.eval(z)) {
                Ok(v) => v,
                Err(e) => {
                    first_err.get_or_insert(e);
                    continue;
                }
            };
            let e = Evaluation { value, error, method: Method::Contour };
            if error <= 1e-3 * ACCEPT_TOL * value.abs().max(1.0) {
                return Ok(e);
            }
            if best.is_none_or(|b| error < b.error) {
                best = Some(e);
            }
        }
        best.ok_or_else(|| first_err.unwrap_or_else(|| Error::Contour("no admissible abscissa".into())))
    }

    /// Value with an error estimate; never fails on a large estimate.
    pub fn evaluate(&self, z: f64) -> Result<Evaluation> {
        if !(0.0..=Z_MAX).contains(&z) {
            return Err(Error::Domain(format!("argument {z} outside [0, {Z_MAX}]")));
        }
        if let Some((b1, b2)) = self.bessel_fast_path() {
            if z == 0.0 {
                return self.series(z);
            }
            let value = z.powf(0.5 * (b1 + b2)) * bessel_j(b1 - b2, 2.0 * z.sqrt());
            return Ok(Evaluation { value, error: 2e-12 * value.abs().max(1.0), method: Method::Bessel });
        }
        if self.params.is_resonant() || self.fixed_abscissa {
            return self.contour(z);
        }
        let series = self.series(z);
        let good_enough = |e: &Evaluation| e.error <= 1e-3 * ACCEPT_TOL * e.value.abs().max(1.0);
        match series {
            Ok(s) if good_enough(&s) || !self.contour_admissible() || z == 0.0 => Ok(s),
            Ok(s) => {
                let c = self.contour(z)?;
                Ok(if c.error < s.error { c } else { s })
            }
            Err(e) if self.contour_admissible() && z > 0.0 => self.contour(z).map_err(|_| e),
            Err(e) => Err(e),
        }
    }

    /// Value, or an error when the estimate exceeds [`ACCEPT_TOL`].
    pub fn value(&self, z: f64) -> Result<f64> {
        let e = self.evaluate(z)?;
        if e.error > ACCEPT_TOL * e.value.abs().max(1.0) {
            return Err(match e.method {
                Method::Contour => Error::Contour(format!("error estimate {:.1e} at z = {z}", e.error)),
                _ => Error::Convergence(format!("series error estimate {:.1e} at z = {z}", e.error)),
            });
        }
        Ok(e.value)
    }
}

/// `G^{m,n}_{p,q}(a; b | z)` for `0 ≤ z ≤ 10^6`.
pub fn meijer_g(params: &MeijerGParams, z: f64) -> Result<f64> {
    MeijerG::new(params.clone()).value(z)
}
