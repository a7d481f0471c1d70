//! Sum over residues at the poles `s = b_h + k` of `Γ(b_h - s)`, `h ≤ m`.
//!
//! Valid when the first `m` lower parameters are pairwise non-resonant and
//! `p < q` (the series is then entire in `z`).

use crate::error::{Error, Result};
use crate::special::ln_gamma_signed;

use super::params::MeijerGParams;

const MAX_TERMS: usize = 50_000;
// Relative rounding attributed to each term, including the log-gamma prefactor.
const TERM_EPS: f64 = 1e-14;

// Parameter differences such as 0.3 - 2.3 are integers only up to rounding.
fn near_integer(x: f64) -> bool {
    (x - x.round()).abs() <= 1e-12 * x.abs().max(1.0)
}

fn is_nonpositive_integer(x: f64) -> bool {
    x.round() <= 0.0 && near_integer(x)
}

fn ln_factorial(k: usize) -> f64 {
    crate::special::ln_gamma(k as f64 + 1.0)
}

/// `(value, rounding-error estimate)`.
pub(crate) fn residue_series(p: &MeijerGParams, z: f64) -> Result<(f64, f64)> {
    let (m, n, q) = (p.m, p.n, p.q());
    let (a, b) = (&p.a, &p.b);
    if p.p() >= q {
        return Err(Error::UnsupportedParams("residue series needs p < q".into()));
    }
    let mut value = 0.0;
    let mut sum_abs = 0.0;
    'poles: for h in 0..m {
        let bh = b[h];
        for j in 0..m {
            if j != h && near_integer(b[j] - bh) {
                return Err(Error::Pole(b[j] - bh));
            }
        }
        for aj in &a[..n] {
            if is_nonpositive_integer(1.0 - aj + bh) {
                return Err(Error::Domain("upper and lower pole families overlap".into()));
            }
        }
        // 1/Γ(1 - b_j + b_h + k) vanishes for the first few k when its argument
        // starts at a non-positive integer.
        let mut k0 = 0usize;
        for bj in &b[m..] {
            let x = 1.0 - bj + bh;
            if is_nonpositive_integer(x) {
                k0 = k0.max((1.0 - x.round()) as usize);
            }
        }
        // 1/Γ(a_j - b_h - k) vanishes for k ≥ a_j - b_h when that is an integer.
        let mut k_end = usize::MAX;
        for aj in &a[n..] {
            let x = aj - bh;
            if near_integer(x) {
                if x.round() <= 0.0 {
                    continue 'poles;
                }
                k_end = k_end.min(x.round() as usize);
            }
        }
        if k0 >= k_end {
            continue;
        }

        let s0 = bh + k0 as f64;
        let mut ln_t = -ln_factorial(k0);
        let mut sign = if k0 % 2 == 0 { 1.0 } else { -1.0 };
        let mut push = |x: f64, numerator: bool| -> Result<()> {
            let (lg, sg) = ln_gamma_signed(x).ok_or(Error::Pole(x))?;
            ln_t += if numerator { lg } else { -lg };
            sign *= sg;
            Ok(())
        };
        for j in 0..m {
            if j != h {
                push(b[j] - s0, true)?;
            }
        }
        for aj in &a[..n] {
            push(1.0 - aj + s0, true)?;
        }
        for bj in &b[m..] {
            push(1.0 - bj + s0, false)?;
        }
        for aj in &a[n..] {
            push(aj - s0, false)?;
        }
        let mut t = if z == 0.0 {
            if s0 == 0.0 {
                sign * ln_t.exp()
            } else if s0 > 0.0 {
                0.0
            } else {
                return Err(Error::Overflow("negative power at z = 0".into()));
            }
        } else {
            let ln_abs = ln_t + s0 * z.ln();
            if ln_abs > 700.0 {
                return Err(Error::Overflow(format!("residue term e^{ln_abs:.0}")));
            }
            sign * ln_abs.exp()
        };

        let mut k = k0;
        loop {
            value += t;
            sum_abs += t.abs();
            if k + 1 >= k_end || z == 0.0 {
                break;
            }
            let s = bh + k as f64;
            let mut ratio = -z / (k as f64 + 1.0);
            for j in 0..m {
                if j != h {
                    ratio /= b[j] - s - 1.0;
                }
            }
            for aj in &a[..n] {
                ratio *= 1.0 - aj + s;
            }
            for bj in &b[m..] {
                ratio /= 1.0 - bj + s;
            }
            for aj in &a[n..] {
                ratio *= aj - s - 1.0;
            }
            t *= ratio;
            k += 1;
            if !t.is_finite() {
                return Err(Error::Overflow("residue series term".into()));
            }
            if ratio.abs() < 1.0 && t.abs() <= 1e-17 * sum_abs {
                break;
            }
            if t == 0.0 && ratio.abs() < 1.0 {
                break;
            }
            if k - k0 > MAX_TERMS {
                return Err(Error::Convergence(format!("residue series at z = {z}")));
            }
        }
    }
    Ok((value, TERM_EPS * sum_abs + f64::EPSILON * value.abs()))
}
