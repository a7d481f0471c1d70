//! Mellin–Barnes integral along `Re s = σ`, trapezoid rule in `t = Im s`.
//!
//! For real parameters the integrand satisfies `Φ(s̄) = conj Φ(s)`, so
//! `G(z) = (1/π) Re ∫_0^∞ Φ(σ+it) z^{σ+it} dt`. The samples of `Φ` do not
//! depend on `z` and are computed once per parameter set.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::special::log_gamma_complex;

use super::params::MeijerGParams;

// Integrand samples are dropped once |Φ| falls this far (in log) below its peak.
const LOG_DYNAMIC_RANGE: f64 = 40.0;
const MAX_NODES: usize = 400_000;

#[derive(Debug, Clone)]
pub(crate) struct Contour {
    pub sigma: f64,
    pub step: f64,
    phi: Vec<Complex64>,
    abs_sum: f64,
}

fn ln_phi(p: &MeijerGParams, s: Complex64) -> Result<Option<Complex64>> {
    let mut acc = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    for bj in &p.b[..p.m] {
        acc += log_gamma_complex(*bj - s)?;
    }
    for aj in &p.a[..p.n] {
        acc += log_gamma_complex(one - *aj + s)?;
    }
    // Poles in the denominator make Φ vanish.
    for bj in &p.b[p.m..] {
        match log_gamma_complex(one - *bj + s) {
            Ok(v) => acc -= v,
            Err(Error::Pole(_)) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    for aj in &p.a[p.n..] {
        match log_gamma_complex(*aj - s) {
            Ok(v) => acc -= v,
            Err(Error::Pole(_)) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    Ok(Some(acc))
}

impl Contour {
    /// Admissible band `(lo, hi)` for the abscissa.
    pub fn band(p: &MeijerGParams) -> (f64, f64) {
        (p.left_pole_end(), p.right_pole_start())
    }

    /// Default abscissa: midway between the pole families, or half a unit
    /// left of the first right pole when there is no left family.
    pub fn default_sigma(p: &MeijerGParams) -> f64 {
        let (lo, hi) = Self::band(p);
        if lo.is_finite() {
            0.5 * (lo + hi)
        } else {
            hi - 0.5
        }
    }

    pub fn new(p: &MeijerGParams, sigma: f64) -> Result<Self> {
        if p.delta() <= 0.0 {
            return Err(Error::Contour(format!(
                "vertical contour diverges for m+n-(p+q)/2 = {}",
                p.delta()
            )));
        }
        let (lo, hi) = Self::band(p);
        if !(sigma > lo && sigma < hi) {
            return Err(Error::Contour(format!("abscissa {sigma} outside ({lo}, {hi})")));
        }
        let dist = (sigma - lo).min(hi - sigma);
        let step = (dist / 8.0).min(0.25);
        let mut phi = Vec::new();
        let mut peak = f64::NEG_INFINITY;
        let mut prev = f64::INFINITY;
        let mut lns = Vec::new();
        for k in 0..MAX_NODES {
            let t = k as f64 * step;
            let v = ln_phi(p, Complex64::new(sigma, t))?;
            let re = v.map_or(f64::NEG_INFINITY, |v| v.re);
            peak = peak.max(re);
            lns.push(v);
            if t > 1.0 && re < peak - LOG_DYNAMIC_RANGE && re <= prev {
                break;
            }
            prev = re;
            if k + 1 == MAX_NODES {
                return Err(Error::Contour(format!("integrand tail not reached by t = {t}")));
            }
        }
        if !peak.is_finite() {
            return Err(Error::Contour("integrand vanishes identically".into()));
        }
        // Scale by e^{-peak} to avoid overflow; the factor is restored below.
        let mut abs_sum = 0.0;
        for (k, v) in lns.iter().enumerate() {
            let w = if k == 0 { 0.5 } else { 1.0 };
            let val = v.map_or(Complex64::new(0.0, 0.0), |v| (v - peak).exp() * w);
            abs_sum += val.norm();
            phi.push(val);
        }
        let scale = peak.exp();
        if !scale.is_finite() {
            return Err(Error::Overflow("Mellin–Barnes integrand".into()));
        }
        for v in &mut phi {
            *v *= scale;
        }
        Ok(Self { sigma, step, phi, abs_sum: abs_sum * scale })
    }

    /// `(value, rounding-error estimate)` at `z > 0`.
    pub fn eval(&self, z: f64) -> Result<(f64, f64)> {
        if !(z > 0.0) {
            return Err(Error::Domain(format!("contour evaluation needs z > 0, got {z}")));
        }
        let lnz = z.ln();
        let mut acc = 0.0;
        for (k, phi) in self.phi.iter().enumerate() {
            let (s, c) = (k as f64 * self.step * lnz).sin_cos();
            acc += phi.re * c - phi.im * s;
        }
        let pre = (self.sigma * lnz).exp() * self.step / PI;
        let value = pre * acc;
        let error = pre * self.abs_sum * 1e-15 * (self.phi.len() as f64).sqrt().max(1.0);
        if !value.is_finite() {
            return Err(Error::Overflow(format!("contour value at z = {z}")));
        }
        Ok((value, error))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::meijer::series::residue_series;

    fn params(m: usize, n: usize, a: &[f64], b: &[f64]) -> MeijerGParams {
        MeijerGParams::new(m, n, a.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn agrees_with_series_off_resonance() {
        let p = params(2, 0, &[], &[0.2, 0.7, 0.1]);
        let c = Contour::new(&p, Contour::default_sigma(&p)).unwrap();
        for z in [0.05, 0.8, 3.0, 20.0] {
            // 30-digit reference at z = 20: 0.01734353694841273
            if z == 20.0 {
                assert!((c.eval(z).unwrap().0 - 0.017_343_536_948_412_73).abs() < 1e-14);
            }
            let (v, _) = c.eval(z).unwrap();
            let (w, err) = residue_series(&p, z).unwrap();
            assert!((v - w).abs() < 1e-12 + err, "z={z} {v} {w}");
        }
    }

    // Oracle: logarithmic residue expansion at 30 digits.
    #[test]
    fn resonant_value() {
        let p = params(2, 0, &[], &[1.0, 0.0, 0.0]);
        let c = Contour::new(&p, Contour::default_sigma(&p)).unwrap();
        let (v, _) = c.eval(1.5).unwrap();
        assert!((v - 0.010_024_725_397_031_806).abs() < 1e-12, "{v}");
    }

    #[test]
    fn with_upper_parameter() {
        let p = params(2, 1, &[0.0], &[1.0, 3.0, 0.0]);
        let c = Contour::new(&p, Contour::default_sigma(&p)).unwrap();
        let (v, _) = c.eval(2.5).unwrap();
        assert!((v - 0.621_799_687_130_822_95).abs() < 1e-12, "{v}");
    }

    #[test]
    fn rejects_inadmissible_lines() {
        let p = params(1, 0, &[], &[0.0, 0.0]);
        assert!(matches!(Contour::new(&p, -0.5), Err(Error::Contour(_))));
        let p = params(2, 0, &[], &[0.2, 0.7, 0.1]);
        assert!(matches!(Contour::new(&p, 0.5), Err(Error::Contour(_))));
    }

    #[test]
    fn shift_invariance() {
        let p = params(3, 0, &[], &[0.0, 1.0, 2.0, -0.5]);
        let base = Contour::new(&p, -0.5).unwrap().eval(1.7).unwrap().0;
        for sigma in [-2.5, -1.3, -0.1] {
            let v = Contour::new(&p, sigma).unwrap().eval(1.7).unwrap().0;
            assert!((v - base).abs() < 1e-10, "σ={sigma} {v} {base}");
        }
    }
}
