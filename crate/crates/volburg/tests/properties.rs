//! Property-based invariants across the estimators.

use proptest::prelude::*;

use volburg::burg::fit_sequence;
use volburg::forecast::{extrapolate, Direction};
use volburg::fractal::mean_range;
use volburg::series::{ewma, historical_vol, log_returns, PriceSeries, VolMode};
use volburg::burg::burg_fit;

fn returns_strategy(len: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-0.2f64..0.2, len)
}

proptest! {
    #[test]
    fn ewma_stays_within_input_range(
        x in proptest::collection::vec(-50.0f64..50.0, 1..64),
        lambda in 0.01f64..0.99,
    ) {
        let s = ewma(&x, lambda).unwrap();
        let lo = x.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        for v in s {
            prop_assert!(v >= lo - 1e-12 && v <= hi + 1e-12);
        }
    }

    #[test]
    fn historical_vol_is_shift_invariant_and_nonnegative(
        x in returns_strategy(40),
        shift in -5.0f64..5.0,
        n in 2usize..10,
    ) {
        for mode in [VolMode::PaperLiteral, VolMode::Stdev] {
            let base = historical_vol(&x, n, mode).unwrap();
            let shifted_input: Vec<f64> = x.iter().map(|v| v + shift).collect();
            let shifted = historical_vol(&shifted_input, n, mode).unwrap();
            for (a, b) in base.values().iter().zip(shifted.values()) {
                prop_assert!(a >= &0.0);
                prop_assert!((a - b).abs() < 1e-9, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn log_returns_round_trip_through_prices(r in returns_strategy(30)) {
        let mut prices = vec![100.0];
        for v in &r {
            prices.push(prices.last().unwrap() * v.exp());
        }
        let p = PriceSeries::from_prices(prices, "round-trip").unwrap();
        let back = log_returns(&p);
        for (a, b) in r.iter().zip(back.values()) {
            prop_assert!((a - b).abs() < 1e-12 * (1.0 + a.abs()), "{a} vs {b}");
        }
    }

    #[test]
    fn burg_reflection_bounded_and_power_monotone(
        x in proptest::collection::vec(-10.0f64..10.0, 48..160),
    ) {
        // Skip near-constant draws; those are the documented degenerate case.
        let mean = x.iter().sum::<f64>() / x.len() as f64;
        let spread = x.iter().map(|v| (v - mean).abs()).fold(0.0, f64::max);
        prop_assume!(spread > 1e-6);

        let models = fit_sequence(&x, 12).unwrap();
        for w in models.windows(2) {
            prop_assert!(w[1].residual_power <= w[0].residual_power * (1.0 + 1e-12));
        }
        for m in &models {
            prop_assert!(m.reflection.iter().all(|k| k.abs() <= 1.0 + 1e-12));
        }
    }

    #[test]
    fn mean_range_affine_equivariance(
        y in proptest::collection::vec(-10.0f64..10.0, 16..80),
        scale in 0.1f64..10.0,
        shift in -20.0f64..20.0,
        dt in 2usize..8,
    ) {
        let base = mean_range(&y, dt).unwrap();
        let transformed: Vec<f64> = y.iter().map(|v| scale * v + shift).collect();
        let got = mean_range(&transformed, dt).unwrap();
        prop_assert!((got - scale * base).abs() < 1e-9 * (1.0 + base.abs()));
    }

    #[test]
    fn forecast_prefix_is_stable_under_longer_horizon(
        x in proptest::collection::vec(-1.0f64..1.0, 64..128),
        h1 in 1usize..8,
        h2 in 1usize..8,
    ) {
        let mean = x.iter().sum::<f64>() / x.len() as f64;
        let spread = x.iter().map(|v| (v - mean).abs()).fold(0.0, f64::max);
        prop_assume!(spread > 1e-6);

        let m = burg_fit(&x, 4).unwrap();
        let short = extrapolate(&m, &x, h1, Direction::Forward, true).unwrap();
        let long = extrapolate(&m, &x, h1 + h2, Direction::Forward, true).unwrap();
        for (a, b) in short.values.iter().zip(&long.values) {
            prop_assert_eq!(a, b);
        }
    }
}
