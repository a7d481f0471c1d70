//! Airy function `Ai` and its derivative.
//!
//! Maclaurin series on `|x| ≤ 2`; outside, the Bessel representations
//! `Ai(x) = √(x/3) K_{1/3}(ζ) / π` for positive and
//! `Ai(-t) = √t/2 · (J_{1/3}(ζ) - Y_{1/3}(ζ)/√3)` for negative arguments,
//! with `ζ = 2/3 |x|^{3/2}`.

use std::f64::consts::PI;

use super::bessel::{bessel_jy, temme_gammas};

const AI0: f64 = 0.355_028_053_887_817_239_26;
const AIP0: f64 = -0.258_819_403_792_806_798_41;
const SERIES_LIMIT: f64 = 2.0;
const EPS: f64 = 1e-16;

/// Maclaurin series for `(Ai(x), Ai'(x))`.
pub fn airy_ai_series(x: f64) -> (f64, f64) {
    let x3 = x * x * x;
    let (mut f, mut df) = (0.0, 0.0);
    let (mut g, mut dg) = (0.0, 0.0);
    let mut t = 1.0; // x^{3k} 3^k (1/3)_k / (3k)!
    let mut u = 1.0; // x^{3k} 3^k (2/3)_k / (3k+1)!, without the leading x
    for k in 0..200 {
        let kf = k as f64;
        f += t;
        g += u * x;
        // derivatives: d/dx x^{3k} = 3k x^{3k-1}
        if k > 0 {
            df += t * 3.0 * kf / x;
        }
        dg += u * (3.0 * kf + 1.0);
        t *= x3 / ((3.0 * kf + 2.0) * (3.0 * kf + 3.0));
        u *= x3 / ((3.0 * kf + 3.0) * (3.0 * kf + 4.0));
        if t.abs() < 1e-18 && u.abs() < 1e-18 {
            break;
        }
    }
    (AI0 * f + AIP0 * g, AI0 * df + AIP0 * dg)
}

/// `(K_ν(x), K'_ν(x))` for `ν ≥ 0`, `x > 0` via Temme's series (x < 2)
/// or Steed's continued fraction (x ≥ 2).
fn bessel_k(nu: f64, x: f64) -> (f64, f64) {
    let nl = (nu + 0.5) as usize;
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let (mut rkmu, mut rk1);
    if x < 2.0 {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let e = e.exp();
        let mut p = 0.5 * e / gampl;
        let mut q = 0.5 / (e * gammi);
        let mut c = 1.0;
        let d = x2 * x2;
        let mut sum1 = p;
        for i in 1..10_000 {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * ff;
            sum += del;
            sum1 += c * (p - fi * ff);
            if del.abs() < sum.abs() * EPS {
                break;
            }
        }
        rkmu = sum;
        rk1 = sum1 * xi2;
    } else {
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut delh = d;
        let mut h = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - xmu2;
        let mut c = a1;
        let mut q = c;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        for i in 2..10_000 {
            let fi = i as f64;
            a -= 2.0 * (fi - 1.0);
            c = -a * c / fi;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < EPS {
                break;
            }
        }
        h *= a1;
        rkmu = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
        rk1 = rkmu * (xmu + x + 0.5 - h) * xi;
    }
    for i in 1..=nl {
        let rktemp = (xmu + i as f64) * xi2 * rk1 + rkmu;
        rkmu = rk1;
        rk1 = rktemp;
    }
    (rkmu, nu * xi * rkmu - rk1)
}

/// `(Ai(x), Ai'(x))`.
pub fn airy_ai(x: f64) -> (f64, f64) {
    if x.is_nan() {
        return (f64::NAN, f64::NAN);
    }
    if x.abs() <= SERIES_LIMIT {
        return airy_ai_series(x);
    }
    let rootx = x.abs().sqrt();
    let z = 2.0 / 3.0 * x.abs() * rootx;
    let inv_sqrt3 = 1.0 / 3f64.sqrt();
    if x > 0.0 {
        let (k13, _) = bessel_k(1.0 / 3.0, z);
        let (k23, _) = bessel_k(2.0 / 3.0, z);
        (rootx * inv_sqrt3 * k13 / PI, -x * inv_sqrt3 * k23 / PI)
    } else {
        let (j13, y13, _, _) = bessel_jy(1.0 / 3.0, z);
        let (j23, y23, _, _) = bessel_jy(2.0 / 3.0, z);
        (
            0.5 * rootx * (j13 - inv_sqrt3 * y13),
            -0.5 * x * (j23 + inv_sqrt3 * y23),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma::gamma;

    #[test]
    fn origin_matches_gamma_expressions() {
        let (ai, aip) = airy_ai(0.0);
        assert!((ai - 3f64.powf(-2.0 / 3.0) / gamma(2.0 / 3.0)).abs() < 1e-15);
        assert!((aip + 3f64.powf(-1.0 / 3.0) / gamma(1.0 / 3.0)).abs() < 1e-15);
        assert!((ai - 0.355_028_053_9).abs() < 1e-10);
        assert!((aip + 0.258_819_403_8).abs() < 1e-10);
    }

    // Reference values from a 50-digit evaluation.
    #[test]
    fn matches_high_precision_reference() {
        let cases = [
            (-50.0, -0.161_881_423_612_320_92, 0.968_989_837_276_749_09),
            (-20.0, -0.176_406_127_077_984_69, 0.892_862_856_736_471_24),
            (-10.0, 0.040_241_238_486_443_191, 0.996_265_044_132_790_06),
            (-5.5, 0.017_781_541_276_574_976, 0.864_197_217_771_398_39),
            (-2.0, 0.227_407_428_201_685_58, 0.618_259_020_741_691_04),
            (-0.7, 0.511_000_397_575_010_14, -0.144_641_285_643_321_04),
            (0.3, 0.278_806_481_955_004_92, -0.245_146_364_219_054_8),
            (1.0, 0.135_292_416_312_881_42, -0.159_147_441_296_793_21),
            (3.7, 0.001_745_572_000_609_978_5, -0.003_466_940_749_027_627),
            (5.0, 0.000_108_344_428_136_074_42, -0.000_247_413_890_868_462_48),
            (8.0, 4.692_207_616_099_231_6e-8, -1.341_439_297_906_786_6e-7),
            (12.0, 1.393_184_688_875_360_8e-13, -4.854_736_554_985_308_5e-13),
            (50.0, 4.584_941_724_074_828_5e-104, -3.244_331_819_828_799_3e-103),
        ];
        for (x, ai, aip) in cases {
            let (a, ap) = airy_ai(x);
            assert!((a - ai).abs() < 1e-12, "Ai({x}) = {a}, want {ai}");
            assert!((ap - aip).abs() < 1e-12, "Ai'({x}) = {ap}, want {aip}");
        }
    }

    #[test]
    fn series_and_bessel_branches_overlap() {
        let mut x: f64 = -3.5;
        while x <= 3.5 {
            if x.abs() > 1.0 {
                let series = airy_ai_series(x);
                let rootx = x.abs().sqrt();
                let z = 2.0 / 3.0 * x.abs() * rootx;
                let b = if x > 0.0 {
                    (rootx / 3f64.sqrt() * bessel_k(1.0 / 3.0, z).0 / PI, -x / 3f64.sqrt() * bessel_k(2.0 / 3.0, z).0 / PI)
                } else {
                    let (j13, y13, _, _) = bessel_jy(1.0 / 3.0, z);
                    let (j23, y23, _, _) = bessel_jy(2.0 / 3.0, z);
                    (0.5 * rootx * (j13 - y13 / 3f64.sqrt()), -0.5 * x * (j23 + y23 / 3f64.sqrt()))
                };
                assert!((series.0 - b.0).abs() < 1e-13, "x={x}");
                assert!((series.1 - b.1).abs() < 1e-13, "x={x}");
            }
            x += 0.125;
        }
    }

    #[test]
    fn satisfies_airy_equation() {
        let h = 1e-3;
        for x in [-5.0, 0.0, 5.0, -1.99, 2.01] {
            let second = (airy_ai(x + h).0 - 2.0 * airy_ai(x).0 + airy_ai(x - h).0) / (h * h);
            assert!((second - x * airy_ai(x).0).abs() < 1e-6, "x={x}");
            // derivative consistency
            let d = (airy_ai(x + h).0 - airy_ai(x - h).0) / (2.0 * h);
            assert!((d - airy_ai(x).1).abs() < 1e-6);
        }
    }
}
