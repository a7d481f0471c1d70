//! Bessel functions of the first kind of real order.
//!
//! Small arguments use the defining power series. Elsewhere the order is
//! reduced to `|μ| ≤ 1/2`, the ratio `J'_ν/J_ν` comes from the continued
//! fraction CF1 and the Wronskian is closed with Steed's complex
//! continued fraction (x ≥ 2) or Temme's series for `Y_μ` (x < 2). This
//! keeps the absolute error near machine precision up to `x ~ 10^3`,
//! where a plain power series would lose every digit to cancellation.

use std::f64::consts::PI;

use super::gamma::rgamma;

const EPS: f64 = 1e-16;
const FPMIN: f64 = f64::MIN_POSITIVE / EPS;
const MAXIT: usize = 200_000;
const SERIES_LIMIT: f64 = 2.0;
// Hankel expansion is used once x exceeds this plus α².
const ASYMPTOTIC_LIMIT: f64 = 60.0;

// Taylor coefficients of 1/Γ(1+z) about z = 0.
const RGAMMA1P: [f64; 27] = [
    1.0,
    0.577_215_664_901_532_860_61,
    -0.655_878_071_520_253_881_08,
    -0.042_002_635_034_095_235_529,
    0.166_538_611_382_291_489_5,
    -0.042_197_734_555_544_336_748,
    -0.009_621_971_527_876_973_562_1,
    0.007_218_943_246_663_099_542_4,
    -0.001_165_167_591_859_065_112_1,
    -0.000_215_241_674_114_950_972_82,
    0.000_128_050_282_388_116_186_15,
    -0.000_020_134_854_780_788_238_656,
    -1.250_493_482_142_670_657_3e-6,
    1.133_027_231_981_695_882_4e-6,
    -2.056_338_416_977_607_103_5e-7,
    6.116_095_104_481_415_817_9e-9,
    5.002_007_644_469_222_930_1e-9,
    -1.181_274_570_487_020_144_6e-9,
    1.043_426_711_691_100_510_5e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708_2e-12,
    5.100_370_287_454_475_979e-13,
    -2.058_326_053_566_506_783_2e-14,
    -5.348_122_539_423_017_982_4e-15,
    1.226_778_628_238_260_790_2e-15,
    -1.181_259_301_697_458_769_5e-16,
    1.186_692_254_751_600_332_6e-18,
];

/// Temme's auxiliary quantities for |μ| ≤ 1/2:
/// (gam1, gam2, 1/Γ(1+μ), 1/Γ(1-μ)).
pub(crate) fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let mu2 = mu * mu;
    let mut even = 0.0;
    let mut odd = 0.0;
    let mut p = 1.0;
    for k in (0..RGAMMA1P.len()).step_by(2) {
        even += RGAMMA1P[k] * p;
        if k + 1 < RGAMMA1P.len() {
            odd += RGAMMA1P[k + 1] * p;
        }
        p *= mu2;
    }
    let gam1 = -odd;
    let gam2 = even;
    (gam1, gam2, gam2 - mu * gam1, gam2 + mu * gam1)
}

/// `(J_ν, Y_ν, J'_ν, Y'_ν)` for `ν ≥ 0`, `x > 0`.
pub(crate) fn bessel_jy(nu: f64, x: f64) -> (f64, f64, f64, f64) {
    debug_assert!(nu >= 0.0 && x > 0.0);
    let nl = if x < 2.0 {
        (nu + 0.5) as usize
    } else {
        (nu - x + 1.5).max(0.0) as usize
    };
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: J'_ν / J_ν
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let rjp1 = rjpl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, mut rymu, mut ry1);
    if x < 2.0 {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let e = e.exp();
        let mut p = e / (gampl * PI);
        let mut q = 1.0 / (e * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS { 1.0 } else { pimu2.sin() / pimu2 };
        let r = PI * pimu2 * fact3 * fact3;
        let mut c = 1.0;
        let d = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * (ff + r * q);
            sum += del;
            let del1 = c * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                break;
            }
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        // Steed's method for CF2 = p + iq
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        for i in 2..MAXIT {
            a += 2.0 * (i - 1) as f64;
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                break;
            }
        }
        let gam = (p - f) / q;
        let mag = (w / ((p - f) * gam + q)).sqrt();
        rjmu = mag.copysign(rjl);
        rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }
    let scale = rjmu / rjl;
    let rj = rjl1 * scale;
    let rjp = rjp1 * scale;
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    (rj, rymu, rjp, nu * xi * rymu - ry1)
}

/// Power series `Σ (-1)^k (x/2)^{2k+α} / (k! Γ(k+α+1))` and its
/// derivative. Accurate for moderate `x`; used for `x ≤ 2` and as a
/// cross-check of the continued-fraction branch.
pub fn bessel_j_series(alpha: f64, x: f64) -> (f64, f64) {
    if alpha == -1.0 {
        let (j, dj) = bessel_j_series(1.0, x);
        return (-j, -dj);
    }
    if x == 0.0 {
        return bessel_at_zero(alpha);
    }
    let half = 0.5 * x;
    let mut term = half.powf(alpha) * rgamma(alpha + 1.0);
    let mut sum = 0.0;
    let mut dsum = 0.0;
    let q = -half * half;
    for k in 0..10_000 {
        let kf = k as f64;
        sum += term;
        dsum += term * (2.0 * kf + alpha);
        let next = term * q / ((kf + 1.0) * (kf + alpha + 1.0));
        if next.abs() <= 1e-17 * sum.abs().max(1e-300) && kf > half {
            break;
        }
        term = next;
    }
    (sum, dsum / x)
}

fn bessel_at_zero(alpha: f64) -> (f64, f64) {
    let value = if alpha == 0.0 {
        1.0
    } else if alpha > 0.0 || alpha == -1.0 {
        0.0
    } else {
        f64::INFINITY
    };
    let deriv = if alpha == 1.0 {
        0.5
    } else if alpha == -1.0 {
        -0.5
    } else if alpha > 1.0 || alpha == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    (value, deriv)
}

/// Hankel's large-argument expansion, truncated at its smallest term.
pub fn bessel_j_asymptotic(alpha: f64, x: f64) -> f64 {
    let mu = 4.0 * alpha * alpha;
    let chi = x - (0.5 * alpha + 0.25) * PI;
    let mut p = 0.0;
    let mut q = 0.0;
    let mut term: f64 = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..200 {
        if term.abs() > last {
            break;
        }
        last = term.abs();
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        let odd = (2 * k + 1) as f64;
        term *= (mu - odd * odd) / ((k + 1) as f64 * 8.0 * x);
        if term == 0.0 {
            break;
        }
    }
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// `J_α(x)` and `J'_α(x)` for real `α ≥ -1` and `x ≥ 0`.
///
/// For `-1 < α < 0` the value at `x = 0` is `+∞`; negative `x` yields NaN.
pub fn bessel_j_with_derivative(alpha: f64, x: f64) -> (f64, f64) {
    if x.is_nan() || x < 0.0 || alpha < -1.0 {
        return (f64::NAN, f64::NAN);
    }
    if x <= SERIES_LIMIT {
        return bessel_j_series(alpha, x);
    }
    if x >= ASYMPTOTIC_LIMIT + alpha * alpha {
        let j = bessel_j_asymptotic(alpha, x);
        return (j, bessel_j_asymptotic(alpha - 1.0, x) - alpha / x * j);
    }
    if alpha >= 0.0 {
        let (j, _, jp, _) = bessel_jy(alpha, x);
        return (j, jp);
    }
    // J_{-ν} = cos(νπ) J_ν - sin(νπ) Y_ν
    let nu = -alpha;
    let (j, y, jp, yp) = bessel_jy(nu, x);
    let (s, c) = (nu * PI).sin_cos();
    (c * j - s * y, c * jp - s * yp)
}

/// `J_α(x)` for real `α ≥ -1` and `x ≥ 0`.
pub fn bessel_j(alpha: f64, x: f64) -> f64 {
    bessel_j_with_derivative(alpha, x).0
}

/// `Y_ν(x)` for `ν ≥ 0`, `x > 0`. Internal helper for the Airy function.
pub fn bessel_y(nu: f64, x: f64) -> f64 {
    bessel_jy(nu, x).1
}
