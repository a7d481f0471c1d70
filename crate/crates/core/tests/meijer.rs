use proptest::prelude::*;
use rmt_core::meijer::{MeijerG, MeijerGParams, Method};
use rmt_core::special::bessel_j;

fn lower_params() -> impl Strategy<Value = (usize, Vec<f64>)> {
    // m = 1 has a divergent vertical contour
    (2usize..=3).prop_flat_map(|m| (Just(m), prop::collection::vec(-0.9f64..1.5, m + 1)))
}

fn well_separated(b: &[f64], m: usize) -> bool {
    for i in 0..m {
        for j in 0..m {
            let d = b[i] - b[j];
            if i != j && (d - d.round()).abs() < 0.05 {
                return false;
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn contour_matches_series((m, b) in lower_params(), z in 0.05f64..8.0) {
        prop_assume!(well_separated(&b, m));
        let g = MeijerG::new(MeijerGParams::new(m, 0, vec![], b.clone()).unwrap());
        let s = g.series(z).unwrap();
        let c = g.contour(z).unwrap();
        prop_assert!((s.value - c.value).abs() <= 1e-9 * s.value.abs().max(1.0), "{b:?} z={z} {s:?} {c:?}");
    }

    #[test]
    fn bessel_identity(nu in 0.0f64..6.0, b2 in -1.0f64..1.0, z in 0.0f64..400.0) {
        let g = MeijerG::new(MeijerGParams::new(1, 0, vec![], vec![b2 + nu, b2]).unwrap());
        let e = g.evaluate(z).unwrap();
        prop_assert_eq!(e.method, Method::Bessel);
        let want = z.powf(b2 + 0.5 * nu) * bessel_j(nu, 2.0 * z.sqrt());
        let via_series = g.series(z.min(30.0)).unwrap();
        let want_series = z.min(30.0).powf(b2 + 0.5 * nu) * bessel_j(nu, 2.0 * z.min(30.0).sqrt());
        prop_assert!((e.value - want).abs() <= 1e-10 * want.abs().max(1.0));
        prop_assert!((via_series.value - want_series).abs() <= 1e-10 * want_series.abs().max(1.0));
    }
}
