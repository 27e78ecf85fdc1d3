//! Property tests for the metric axioms and the structural invariants of the
//! density / entropy machinery, driven by random smooth positive densities.

use proptest::prelude::*;
use transport_hessian::{
    dist_h_quantile, dist_hellinger, dist_wasserstein, hessian_form, EntropyModel, GridDensity,
    TangentPerturbation,
};

const N: usize = 256;
const M: usize = 512;

/// A smooth strictly positive density on [0, 1]: a low-order Fourier bump of
/// bounded amplitude around the uniform density.
fn smooth_density(coeffs: &[(f64, f64)]) -> GridDensity<f64> {
    // per-mode amplitude is at most sqrt(2), so the total deviation from 1
    // stays below 0.6 and the density stays strictly positive
    let scale = 0.4 / coeffs.len() as f64;
    let values: Vec<f64> = (0..=N)
        .map(|i| {
            let x = i as f64 / N as f64;
            let mut v = 1.0;
            for (k, &(a, b)) in coeffs.iter().enumerate() {
                let w = (k + 1) as f64 * std::f64::consts::PI;
                v += scale * (a * (w * x).cos() + b * (w * x).sin());
            }
            v
        })
        .collect();
    GridDensity::normalized(values, 0.0, 1.0).unwrap()
}

fn coeff() -> impl Strategy<Value = (f64, f64)> {
    (-1.0f64..1.0, -1.0f64..1.0)
}

fn density() -> impl Strategy<Value = GridDensity<f64>> {
    prop::collection::vec(coeff(), 1..5).prop_map(|c| smooth_density(&c))
}

fn entropy() -> impl Strategy<Value = EntropyModel<f64>> {
    prop_oneof![
        Just(EntropyModel::boltzmann()),
        Just(EntropyModel::quadratic()),
        Just(EntropyModel::cross()),
        Just(EntropyModel::reciprocal()),
        (2.1f64..4.0).prop_map(|g| EntropyModel::gamma(g).unwrap()),
        (-1.0f64..0.9).prop_map(|g| EntropyModel::gamma(g).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quantile_roundtrip_and_reciprocal_identity(p in density()) {
        let cdf = p.cdf();
        let q = p.quantile(M).unwrap();
        for j in 0..M {
            prop_assert!((cdf.eval(q.values[j]) - q.y_grid[j]).abs() < 1e-9);
            let prod = q.derivative[j] * p.eval(q.values[j]);
            prop_assert!((prod - 1.0).abs() < 1e-9);
        }
        // values are non-decreasing
        for j in 1..M {
            prop_assert!(q.values[j] >= q.values[j - 1]);
        }
    }

    #[test]
    fn distance_is_nonnegative_and_bitwise_symmetric(
        e in entropy(), p in density(), q in density()
    ) {
        let d_pq = dist_h_quantile(&e, &p, &q, M).unwrap();
        let d_qp = dist_h_quantile(&e, &q, &p, M).unwrap();
        prop_assert!(d_pq >= 0.0);
        prop_assert_eq!(d_pq.to_bits(), d_qp.to_bits());
    }

    #[test]
    fn triangle_inequality_holds(
        e in entropy(), p in density(), q in density(), r in density()
    ) {
        let d_pr = dist_h_quantile(&e, &p, &r, M).unwrap();
        let d_pq = dist_h_quantile(&e, &p, &q, M).unwrap();
        let d_qr = dist_h_quantile(&e, &q, &r, M).unwrap();
        prop_assert!(d_pr <= d_pq + d_qr + 1e-9);
    }

    #[test]
    fn translates_sit_at_zero_distance(e in entropy(), p in density(), c in -3.0f64..3.0) {
        let d = dist_h_quantile(&e, &p, &p.translate(c), M).unwrap();
        prop_assert!(d <= 1e-8);
    }

    #[test]
    fn wasserstein_and_hellinger_are_symmetric_metrics(p in density(), q in density()) {
        let w_pq = dist_wasserstein(&p, &q, M).unwrap();
        let w_qp = dist_wasserstein(&q, &p, M).unwrap();
        prop_assert!(w_pq >= 0.0);
        prop_assert_eq!(w_pq.to_bits(), w_qp.to_bits());
        let h_pq = dist_hellinger(&p, &q);
        let h_qp = dist_hellinger(&q, &p);
        prop_assert!(h_pq >= 0.0);
        prop_assert!((h_pq - h_qp).abs() < 1e-12);
    }

    #[test]
    fn hessian_form_is_nonnegative_and_quadratic(
        e in entropy(), p in density(), c in -4.0f64..4.0
    ) {
        let raw: Vec<f64> = (0..=N)
            .map(|i| ((i as f64 / N as f64) * std::f64::consts::TAU).cos())
            .collect();
        let s = TangentPerturbation::projected(raw, &p).unwrap();
        let base = hessian_form(&e, &p, &s).unwrap();
        prop_assert!(base >= 0.0);
        let scaled = hessian_form(&e, &p, &s.scaled(c)).unwrap();
        prop_assert!((scaled - c * c * base).abs() <= 1e-9 * base.max(scaled).max(1.0));
    }

    #[test]
    fn h_closed_matches_quadrature_for_random_gamma(g in -2.0f64..0.95, y in 0.1f64..10.0) {
        let e = EntropyModel::gamma(g).unwrap();
        let closed = e.h_closed(y).unwrap();
        let numeric = e.h_numeric(y).unwrap();
        prop_assert!((closed - numeric).abs() < 1e-8);
    }
}
