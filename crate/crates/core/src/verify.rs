//! Desk-scale invariant suites, one per module, for quick self-checks of a
//! build.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::mb::mb_gram_exact;
use crate::finite::product::product_gram_exact;
use crate::finite::{hamiltonian_residual_mb, hamiltonian_residual_product, wishart_kernel};
use crate::harness::{converge_to_limit, fit_kappa, pair_grid, projection_diagnostics, soft_edge_grid, Rescaled};
use crate::limits::{
    airy_kernel, airy_kernel_integral, bessel_kernel, bessel_kernel_integral, mb_hard, mb_hard_ks, LimitKernelSpec,
    LimitKind,
};
use crate::macroscopic::{bohr_sommerfeld_area, mp_density, mp_normalization, wkb_density, ScalingRegime, WishartParams};
use crate::meijer::identities::meijer_identity_suite;
use crate::meijer::narain::{HalfLineRule, NarainPairSpec, NarainTransform};
use crate::meijer::{MeijerG, MeijerGParams};
use crate::sampling::{
    backward_error, hermitian_eigen, jacobi_eigs, ks_distance, sample_ginibre, wishart_eigs, RngState,
};
use crate::special::{airy_ai, bessel_j, gamma, gauss_legendre, log_gamma_complex, ComplexValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Special,
    Meijer,
    Narain,
    Macroscopic,
    Finite,
    Limits,
    Sampling,
    Harness,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Special,
        Suite::Meijer,
        Suite::Narain,
        Suite::Macroscopic,
        Suite::Finite,
        Suite::Limits,
        Suite::Sampling,
        Suite::Harness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Special => "special",
            Suite::Meijer => "meijer",
            Suite::Narain => "narain",
            Suite::Macroscopic => "macroscopic",
            Suite::Finite => "finite",
            Suite::Limits => "limits",
            Suite::Sampling => "sampling",
            Suite::Harness => "harness",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    /// Measured discrepancy.
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

struct Collector {
    suite: Suite,
    checks: Vec<Check>,
}

impl Collector {
    fn new(suite: Suite) -> Self {
        Self { suite, checks: vec![] }
    }

    /// Passes when `value ≤ tolerance`; an evaluation error fails the check.
    fn check(&mut self, name: &str, value: Result<f64>, tolerance: f64) {
        let value = value.unwrap_or(f64::INFINITY);
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            value,
            tolerance,
            passed: value <= tolerance,
        });
    }
}

pub fn run(suite: Suite) -> Vec<Check> {
    let mut c = Collector::new(suite);
    match suite {
        Suite::Special => special(&mut c),
        Suite::Meijer => meijer(&mut c),
        Suite::Narain => narain(&mut c),
        Suite::Macroscopic => macroscopic(&mut c),
        Suite::Finite => finite(&mut c),
        Suite::Limits => limits(&mut c),
        Suite::Sampling => sampling(&mut c),
        Suite::Harness => harness(&mut c),
    }
    c.checks
}

pub fn run_all() -> Vec<Check> {
    Suite::ALL.into_iter().flat_map(run).collect()
}

fn max_of(it: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    it.into_iter().try_fold(0.0f64, |m, v| Ok(m.max(v?.abs())))
}

fn special(c: &mut Collector) {
    c.check("gamma(1/2) = sqrt(pi)", Ok((gamma(0.5) - PI.sqrt()).abs()), 1e-14);
    let lg = log_gamma_complex(ComplexValue::new(1.0, 0.0)).map(|z| z.norm());
    c.check("log_gamma(1) = 0", lg, 1e-14);
    // |Γ(iy)|² = π / (y sinh πy)
    let y = 2.5f64;
    let lg = log_gamma_complex(ComplexValue::new(0.0, y)).map(|z| (2.0 * z.re - (PI / (y * (PI * y).sinh())).ln()).abs());
    c.check("|gamma(iy)|^2 reflection", lg, 1e-12);
    c.check("J_0 first zero", Ok(bessel_j(0.0, 2.404_825_557_695_773).abs()), 1e-14);
    c.check("J_1/2 closed form", Ok((bessel_j(0.5, 7.0) - (2.0 / (PI * 7.0)).sqrt() * 7f64.sin()).abs()), 1e-14);
    c.check("Ai(0)", Ok((airy_ai(0.0).0 - 0.355_028_053_887_817_2).abs()), 1e-15);
    let q = gauss_legendre(20).integrate(0.0, PI, f64::sin);
    c.check("Gauss-Legendre integral of sin", Ok((q - 2.0).abs()), 1e-14);
}

fn meijer(c: &mut Collector) {
    let bessel = max_of([0.3, 2.0, 11.0].iter().map(|&x: &f64| {
        let p = MeijerGParams::new(1, 0, vec![], vec![0.75, -0.75])?;
        Ok(MeijerG::new(p).value(x)? - bessel_j(1.5, 2.0 * x.sqrt()))
    }));
    c.check("G^{1,0}_{0,2} = J_nu identity", bessel, 1e-10);
    let agree = max_of([(vec![0.2, 0.7, 0.1], 2usize, 0.5), (vec![0.4, -0.3, 1.1, 0.0], 3, 2.0)].into_iter().map(
        |(b, m, z)| {
            let g = MeijerG::new(MeijerGParams::new(m, 0, vec![], b)?);
            Ok(g.series(z)?.value - g.contour(z)?.value)
        },
    ));
    c.check("contour vs residue series", agree, 1e-9);
    let ids = MeijerGParams::new(2, 1, vec![0.4], vec![0.3, 1.3, 0.1])
        .and_then(|p| meijer_identity_suite(&p, 1.7))
        .map(|r| r.max_residual());
    c.check("identity suite residual", ids, 1e-5);
}

fn narain(c: &mut Collector) {
    let f = |y: f64| y * y * (-y).exp();
    let ys = [0.5, 1.0, 2.0, 4.0];
    let run = |nu: &[f64], inv: HalfLineRule| -> Result<f64> {
        let t = NarainTransform::new(NarainPairSpec::product(nu)?);
        let fwd = HalfLineRule::new(&gauss_legendre(40), 60.0, 8);
        let back = t.round_trip(&f, &ys, &fwd, &inv)?;
        Ok(ys.iter().zip(back).map(|(y, v)| (v - f(*y)).abs()).fold(0.0, f64::max))
    };
    c.check("M=1 round trip", run(&[0.0], HalfLineRule::new(&gauss_legendre(40), 60.0, 8)), 1e-4);
    c.check("M=2 round trip", run(&[0.3, -0.3], HalfLineRule::with_power(&gauss_legendre(40), 400.0, 16, 6.0)), 1e-4);
}

fn macroscopic(c: &mut Collector) {
    let rule = gauss_legendre(40);
    let norm = max_of((1..=10).map(|i| Ok(mp_normalization(i as f64 / 10.0, &rule) - 1.0)));
    c.check("MP normalization", norm, 1e-10);
    let wkb = max_of((1..40).map(|i| {
        let x = 0.1 * i as f64;
        Ok(wkb_density(0.3, x) - mp_density(0.3, x))
    }));
    c.check("WKB density = MP density", wkb, 1e-12);
    let bs = WishartParams::new(100, 200).map(|p| (bohr_sommerfeld_area(p, &rule) - 100.0).abs());
    c.check("Bohr-Sommerfeld area N=100", bs, 1.0);
}

fn finite(c: &mut Collector) {
    let delta = |k: usize, l: usize| if k == l { 1.0 } else { 0.0 };
    let prod = max_of((0..=5).flat_map(|k| (0..=5).map(move |l| (k, l))).map(|(k, l)| {
        let g = product_gram_exact(k, l, &[1, 3])?;
        Ok(crate::finite::poly::to_f64(&g) - delta(k, l))
    }));
    c.check("product Gram matrix, nu=(1,3)", prod, 1e-12);
    let mb = max_of((0..=5).flat_map(|k| (0..=5).map(move |l| (k, l))).map(|(k, l)| {
        let g = mb_gram_exact(k, l, 0.5, 2)?;
        let gkk = mb_gram_exact(k, k, 0.5, 2)?;
        Ok(crate::finite::poly::to_f64(&(g / gkk)) - delta(k, l))
    }));
    c.check("MB Gram matrix, alpha=0.5 theta=2", mb, 1e-12);
    let ham = max_of((0..=6).flat_map(|k| {
        [hamiltonian_residual_product(k, &[1, 2]), hamiltonian_residual_mb(k, 0.5, 2)]
    }));
    c.check("operator eigen-equations, k <= 6", ham, 1e-10);
    let p = WishartParams { n: 20, t: 21 };
    let diag = projection_diagnostics(|x, y| wishart_kernel(p, x, y), (0.0, 160.0), &gauss_legendre(40), 16);
    c.check("Wishart reproducing residual", diag.as_ref().map(|d| d.0).map_err(Clone::clone), 1e-6);
    c.check("Wishart trace = N", diag.map(|d| (d.1 - 20.0).abs()), 1e-5);
}

fn limits(c: &mut Collector) {
    let grid: Vec<f64> = (1..=5).map(|i| 10.0 * i as f64).collect();
    let bessel = max_of(grid.iter().flat_map(|&x| grid.iter().map(move |&y| (x, y))).map(|(x, y)| {
        Ok(bessel_kernel(2.0, x, y)? - bessel_kernel_integral(2.0, x, y, 64))
    }));
    c.check("Bessel closed vs integral form", bessel, 1e-8);
    let pts = [-10.0, -4.0, 0.0, 2.0, 5.0];
    let airy = max_of(pts.iter().flat_map(|&t| pts.iter().map(move |&u| (t, u))).map(|(t, u)| {
        Ok(airy_kernel(t, u) - airy_kernel_integral(t, u, 30))
    }));
    c.check("Airy closed vs integral form", airy, 1e-8);
    let gauge = (|| {
        let (k, ks) = (mb_hard(0.5, 2, 48)?, mb_hard_ks(0.5, 2, 48)?);
        max_of([(0.3f64, 1.7f64), (2.0, 2.0)].iter().map(|&(x, y)| Ok((y / x).powf(0.25) * k.eval(x, y)? - ks.eval(x, y)?)))
    })();
    c.check("MB gauge identity", gauge, 1e-10);
}

fn sampling(c: &mut Collector) {
    let st = RngState::from_u64(1);
    let eig = (|| {
        let x = sample_ginibre(30, 30, &mut st.stream(0)?)?.gram();
        let (vals, vecs) = hermitian_eigen(&x)?;
        let jac = jacobi_eigs(&x)?;
        let scale = x.frobenius_sq().sqrt();
        let gap = vals.iter().zip(&jac).map(|(a, b)| (a - b).abs() / scale).fold(0.0, f64::max);
        Ok((gap, backward_error(&x, &vals, &vecs)))
    })();
    c.check("QL vs Jacobi eigenvalues", eig.as_ref().map(|e| e.0).map_err(Clone::clone), 1e-12);
    c.check("eigenpair backward error", eig.map(|e| e.1), 1e-10);
    let ks = WishartParams::new(1, 1)
        .and_then(|p| wishart_eigs(p, 10_000, &st))
        .map(|b| ks_distance(&b.pooled(), |x| 1.0 - (-x).exp()));
    c.check("N=T=1 eigenvalue is exponential (KS)", ks, 0.02);
}

fn harness(c: &mut Collector) {
    let hard = (|| {
        let spec = crate::finite::EnsembleSpec::Wishart(WishartParams::new(10, 11)?);
        let t = LimitKernelSpec::new(LimitKind::Bessel { alpha: 1.0 });
        let r = converge_to_limit(&spec, ScalingRegime::HardEdge, &t, &[25, 50, 100], &pair_grid(&[0.5, 2.0]))?;
        if !r.is_monotone() {
            return Err(Error::Convergence(format!("errors {:?}", r.errors)));
        }
        Ok((r.exponent.unwrap_or(f64::NAN) + 1.0).abs())
    })();
    c.check("hard-edge rate, alpha=1 (|p+1|)", hard, 0.4);
    let airy: Rescaled = Box::new(|s, t| Ok(airy_kernel(s, t)));
    let data: Vec<(f64, f64, f64)> = soft_edge_grid().iter().map(|&(s, t)| (s, t, airy_kernel(s, t).powi(2))).collect();
    c.check("kappa self-calibration", fit_kappa(&data, &airy).map(|f| (f.kappa - 1.0).abs()), 1e-6);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse(s.name()), Some(s));
            for check in run(s) {
                assert!(check.passed, "{check:?}");
            }
        }
        assert_eq!(Suite::parse("nope"), None);
    }
}
