use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Complex number used by the Mellin-Barnes integrands.
pub type ComplexValue = Complex64;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

// B_{2k} / (2k (2k-1)), k = 1..10
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// Principal branch of `ln Γ(z)`.
///
/// The argument is shifted upward with `ln Γ(z) = ln Γ(z+n) - Σ ln(z+k)`
/// until `|z| ≥ 15` and `Re z ≥ 0`, then the Stirling series with ten
/// Bernoulli terms is applied. The branch is the one continuous off the
/// negative real axis.
pub fn log_gamma_complex(z: ComplexValue) -> Result<ComplexValue> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    if z.im == 0.0 && is_nonpositive_integer(z.re) {
        return Err(Error::Pole(z.re));
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < 0.0 || w.norm() < 15.0 {
        shift += w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    let value = (w - 0.5) * w.ln() - w + LN_SQRT_2PI + series - shift;
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow(format!("ln Γ({z})")))
    }
}

/// `ln |Γ(x)|` for real `x`; `+∞` at the poles.
pub fn ln_gamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return f64::INFINITY;
    }
    if x < 0.5 {
        // Γ(x)Γ(1-x) = π / sin(πx)
        return PI.ln() - (PI * x).sin().abs().ln() - ln_gamma(1.0 - x);
    }
    log_gamma_complex(Complex64::new(x, 0.0))
        .map(|v| v.re)
        .unwrap_or(f64::INFINITY)
}

/// `(ln |Γ(x)|, sign Γ(x))`, or `None` at a pole.
pub fn ln_gamma_signed(x: f64) -> Option<(f64, f64)> {
    if is_nonpositive_integer(x) || x.is_nan() {
        return None;
    }
    let sign = if x > 0.0 || (x.floor() as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    Some((ln_gamma(x), sign))
}

/// Real gamma function.
pub fn gamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return f64::NAN;
    }
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    if x == x.round() && x <= 30.0 {
        return (1..x as u64).fold(1.0, |acc, k| acc * k as f64);
    }
    ln_gamma(x).exp()
}

/// Reciprocal gamma function, zero at the poles of `Γ`.
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x < 0.5 {
        return (PI * x).sin() * gamma(1.0 - x) / PI;
    }
    (-ln_gamma(x)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn trivial_values() {
        assert!(log_gamma_complex(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        let half = log_gamma_complex(c(0.5, 0.0)).unwrap();
        assert!((half.re - PI.sqrt().ln()).abs() < 1e-14);
        assert!(half.im.abs() < 1e-15);
    }

    #[test]
    fn poles_are_rejected() {
        for x in [0.0, -1.0, -7.0] {
            assert_eq!(log_gamma_complex(c(x, 0.0)), Err(Error::Pole(x)));
        }
        assert!(log_gamma_complex(c(-1.0, 1e-9)).is_ok());
    }

    // Reference values from a 50-digit evaluation.
    #[test]
    fn matches_high_precision_reference() {
        let cases = [
            (c(3.0, 4.0), c(-1.756_626_784_603_784_1, 4.742_664_438_034_657_9)),
            (c(0.1, 20.0), c(-31.695_265_907_346_563, 39.284_410_010_649_361)),
            (c(100.0, -50.0), c(347.053_049_933_172_47, -231.969_701_846_462_21)),
            (c(1e-3, 1e-3), c(6.560_604_473_837_552_6, -0.785_973_734_929_653_43)),
            (c(-7.3, 1e-2), c(-7.779_848_878_792_177_2, -25.089_379_617_749_8)),
            (c(800.0, 300.0), c(4490.232_554_072_780_2, 2011.957_088_603_437_1)),
        ];
        for (z, want) in cases {
            let got = log_gamma_complex(z).unwrap();
            assert!(rel(got, want) < 1e-12, "z={z} got={got} want={want}");
        }
    }

    #[test]
    fn real_helpers() {
        assert!((gamma(5.0) - 24.0).abs() < 1e-12);
        assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-14);
        assert!((gamma(-0.5) + 2.0 * PI.sqrt()).abs() < 1e-13);
        assert_eq!(rgamma(-3.0), 0.0);
        assert!((rgamma(-2.5) * gamma(-2.5) - 1.0).abs() < 1e-13);
        assert_eq!(ln_gamma_signed(-0.5).unwrap().1, -1.0);
        assert_eq!(ln_gamma_signed(-1.5).unwrap().1, 1.0);
        assert_eq!(ln_gamma_signed(-2.0), None);
        assert!((ln_gamma_signed(-2.5).unwrap().0 - gamma(-2.5).abs().ln()).abs() < 1e-13);
        assert!((ln_gamma(171.5) - 709.143_163_030_928_2).abs() < 1e-10);
    }

    #[test]
    fn recurrence_holds() {
        for z in [c(0.3, 0.7), c(-4.2, 2.0), c(12.0, -30.0)] {
            let lhs = log_gamma_complex(z + 1.0).unwrap().exp();
            let rhs = z * log_gamma_complex(z).unwrap().exp();
            assert!(rel(lhs, rhs) < 1e-12);
        }
    }

    proptest::proptest! {
        #[test]
        fn reflection_formula(re in -20.0f64..20.0, im in 0.05f64..20.0) {
            let z = c(re, im);
            let g = log_gamma_complex(z).unwrap() + log_gamma_complex(1.0 - z).unwrap();
            let lhs = g.exp();
            let rhs = PI / (z * PI).sin();
            proptest::prop_assert!(rel(lhs, rhs) < 1e-10, "z={} lhs={} rhs={}", z, lhs, rhs);
        }
    }
}
