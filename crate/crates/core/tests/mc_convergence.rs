//! Seeded-convergence invariant for the edge-rate Monte Carlo: over a fixed
//! seed set at n = 1e5, at least 99% of all component estimates land within
//! 4 sigma of the all-order closed forms.

use psthresh::noise::{all_order_edge_model, sample_location_model, CircuitNoiseParams};

#[test]
fn estimates_within_four_sigma_over_fixed_seed_set() {
    let params = CircuitNoiseParams::uniform(0.03).unwrap();
    let closed = all_order_edge_model(&params).unwrap().components();
    let n = 100_000u64;

    let mut checks = 0u32;
    let mut hits = 0u32;
    for seed in 0..25u64 {
        let sampled = sample_location_model(&params, n, seed).unwrap();
        for (est, q) in sampled.rates.components().iter().zip(closed.iter()) {
            let sigma = (q * (1.0 - q) / n as f64).sqrt();
            checks += 1;
            if (est - q).abs() <= 4.0 * sigma {
                hits += 1;
            }
        }
    }
    assert!(
        f64::from(hits) >= 0.99 * f64::from(checks),
        "{hits}/{checks} within 4 sigma"
    );
}
