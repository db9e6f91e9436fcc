//! Circuit-level depolarizing noise mapped to edge error rates on the
//! primal syndrome-history lattice.
//!
//! A syndrome-measurement round assigns errors to lattice edges: two
//! space-like axes (`q1`, `q2`), one time-like axis (`q3`), and correlated
//! pairs on connected edges (`q12`, `q23`, `q31`). Each rate is fed by a
//! fixed set of independent trigger locations: two-qubit gate faults at
//! `4p2/15` per axis, single-qubit gate faults at `2p1/3`, and preparation /
//! measurement flips at `pp` / `pm`:
//!
//! | rate | triggers                                 | leading order        |
//! |------|------------------------------------------|----------------------|
//! | q1,q2| 6 two-qubit + 3 single-qubit             | 24p2/15 + 2p1        |
//! | q3   | 4 two-qubit + prep + meas                | 16p2/15 + pp + pm    |
//! | q12  | 2 two-qubit                              | 8p2/15               |
//! | q23, q31 | 2 two-qubit + 1 single-qubit         | 8p2/15 + 2p1/3       |
//!
//! Summing trigger rates gives the leading-order model; combining them by
//! exact odd-parity algebra gives the all-order model; sampling the triggers
//! as independent Bernoulli variables and XOR-ing onto edges gives the Monte
//! Carlo estimate (whose expectation is exactly the all-order closed form).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::validate_probability;
use crate::error::Result;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Physical error strengths of the circuit-level model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircuitNoiseParams {
    /// Single-qubit gate depolarizing strength.
    pub p1: f64,
    /// Two-qubit gate depolarizing strength.
    pub p2: f64,
    /// Preparation flip probability.
    pub pp: f64,
    /// Measurement flip probability.
    pub pm: f64,
}

impl CircuitNoiseParams {
    pub fn new(p1: f64, p2: f64, pp: f64, pm: f64) -> Result<Self> {
        validate_probability("p1", p1, 0.0, 1.0)?;
        validate_probability("p2", p2, 0.0, 1.0)?;
        validate_probability("pp", pp, 0.0, 1.0)?;
        validate_probability("pm", pm, 0.0, 1.0)?;
        Ok(CircuitNoiseParams { p1, p2, pp, pm })
    }

    /// The uniform setting `p_e = p1 = p2 = pp = pm`.
    pub fn uniform(p_e: f64) -> Result<Self> {
        CircuitNoiseParams::new(p_e, p_e, p_e, p_e)
    }
}

/// Edge error rates of the lattice noise model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeErrorModel {
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
    pub q12: f64,
    pub q23: f64,
    pub q31: f64,
}

impl EdgeErrorModel {
    /// ν = max{q1, q2, q3}.
    pub fn nu(&self) -> f64 {
        self.q1.max(self.q2).max(self.q3)
    }

    /// μ = max{q12, q23, q31}.
    pub fn mu(&self) -> f64 {
        self.q12.max(self.q23).max(self.q31)
    }

    pub fn components(&self) -> [f64; 6] {
        [self.q1, self.q2, self.q3, self.q12, self.q23, self.q31]
    }

    /// Downstream consumers need every rate in [0, 1/2]; the leading-order
    /// map does not clamp, so they check here before use.
    pub fn validate(&self) -> Result<()> {
        for (value, name) in self.components().into_iter().zip(COMPONENT_NAMES) {
            validate_probability(name, value, 0.0, 0.5)?;
        }
        Ok(())
    }
}

pub const COMPONENT_NAMES: [&str; 6] = ["q1", "q2", "q3", "q12", "q23", "q31"];

/// What feeds a trigger group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SourceKind {
    TwoQubitGate,
    SingleQubitGate,
    Preparation,
    Measurement,
}

/// A set of identical independent trigger locations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriggerGroup {
    pub source: SourceKind,
    /// Per-trigger flip probability at the given params.
    pub probability: f64,
    pub multiplicity: u32,
}

/// The trigger multiplicities behind each edge rate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocationIncidence {
    groups: [Vec<TriggerGroup>; 6],
}

impl LocationIncidence {
    pub fn for_params(params: &CircuitNoiseParams) -> Self {
        let two = |m| TriggerGroup {
            source: SourceKind::TwoQubitGate,
            probability: 4.0 * params.p2 / 15.0,
            multiplicity: m,
        };
        let one = |m| TriggerGroup {
            source: SourceKind::SingleQubitGate,
            probability: 2.0 * params.p1 / 3.0,
            multiplicity: m,
        };
        let prep = TriggerGroup {
            source: SourceKind::Preparation,
            probability: params.pp,
            multiplicity: 1,
        };
        let meas = TriggerGroup {
            source: SourceKind::Measurement,
            probability: params.pm,
            multiplicity: 1,
        };
        LocationIncidence {
            groups: [
                vec![two(6), one(3)],       // q1
                vec![two(6), one(3)],       // q2
                vec![two(4), prep, meas],   // q3
                vec![two(2)],               // q12
                vec![two(2), one(1)],       // q23
                vec![two(2), one(1)],       // q31
            ],
        }
    }

    pub fn triggers(&self, component: usize) -> &[TriggerGroup] {
        &self.groups[component]
    }

    /// Flattened per-trigger probabilities for one component.
    fn flat(&self, component: usize) -> Vec<f64> {
        self.groups[component]
            .iter()
            .flat_map(|g| std::iter::repeat_n(g.probability, g.multiplicity as usize))
            .collect()
    }

    /// First-order rate: Σ multiplicity · probability.
    fn linear(&self, component: usize) -> f64 {
        self.groups[component]
            .iter()
            .map(|g| g.multiplicity as f64 * g.probability)
            .sum()
    }
}

/// Leading-order edge rates: the linear trigger sums, evaluated exactly and
/// unclamped (callers check `q < 1/2` where they need it).
pub fn leading_order_edge_model(params: &CircuitNoiseParams) -> EdgeErrorModel {
    let inc = LocationIncidence::for_params(params);
    model_from(|c| inc.linear(c))
}

/// Probability that an odd number of independent flips fire:
/// `q = (1 − Π_i (1 − 2 p_i)) / 2`.
///
/// Rejects any `p_i > 1/2`, where the composition stops being monotone.
pub fn odd_parity_combination(probs: &[f64]) -> Result<f64> {
    let mut even_excess = 1.0;
    for &p in probs {
        if !(0.0..=0.5).contains(&p) || !p.is_finite() {
            return Err(crate::error::Error::ParityDomain { value: p });
        }
        even_excess *= 1.0 - 2.0 * p;
    }
    Ok(0.5 * (1.0 - even_excess))
}

/// All-order edge rates: odd-parity closure over the trigger sets,
/// e.g. `q1 = (1 − (1−8p2/15)^6 (1−4p1/3)^3)/2`.
///
/// Agrees with [`leading_order_edge_model`] to first order and is
/// componentwise no larger.
pub fn all_order_edge_model(params: &CircuitNoiseParams) -> Result<EdgeErrorModel> {
    let inc = LocationIncidence::for_params(params);
    let mut q = [0.0; 6];
    for (c, slot) in q.iter_mut().enumerate() {
        *slot = odd_parity_combination(&inc.flat(c))?;
    }
    Ok(EdgeErrorModel {
        q1: q[0],
        q2: q[1],
        q3: q[2],
        q12: q[3],
        q23: q[4],
        q31: q[5],
    })
}

/// Monte Carlo estimate of the edge rates with per-component standard errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampledEdgeModel {
    pub rates: EdgeErrorModel,
    /// Standard error `sqrt(p̂(1−p̂)/n)` per component, same field order.
    pub std_error: [f64; 6],
    pub n_samples: u64,
    pub seed: u64,
}

/// Shots per RNG shard. Fixed so results depend only on `(seed, n_samples)`,
/// never on thread count.
const SHARD_SIZE: u64 = 1 << 16;

/// Estimate the edge rates by sampling every trigger as an independent
/// Bernoulli and XOR-ing onto its edges.
///
/// Deterministic for a fixed `(seed, n_samples)`: shards use independent
/// ChaCha streams and the integer tallies are reduced in shard order.
pub fn sample_location_model(params: &CircuitNoiseParams, n_samples: u64, seed: u64) -> Result<SampledEdgeModel> {
    sample_impl(params, n_samples, seed, false)
}

/// Single-threaded variant of [`sample_location_model`]; bit-identical output.
pub fn sample_location_model_serial(
    params: &CircuitNoiseParams,
    n_samples: u64,
    seed: u64,
) -> Result<SampledEdgeModel> {
    sample_impl(params, n_samples, seed, true)
}

fn sample_impl(params: &CircuitNoiseParams, n_samples: u64, seed: u64, force_serial: bool) -> Result<SampledEdgeModel> {
    if n_samples == 0 {
        return Err(crate::error::Error::ResourceLimit("n_samples must be at least 1".into()));
    }
    // Trigger probabilities must sit in the parity-composition domain.
    all_order_edge_model(params)?;

    let inc = LocationIncidence::for_params(params);
    let flats: Vec<Vec<f64>> = (0..6).map(|c| inc.flat(c)).collect();

    let shard_count = n_samples.div_ceil(SHARD_SIZE);
    let shard_counts = run_shards(&flats, n_samples, seed, shard_count, force_serial);

    let mut totals = [0u64; 6];
    for counts in shard_counts {
        for (t, c) in totals.iter_mut().zip(counts) {
            *t += c;
        }
    }

    let n = n_samples as f64;
    let est: Vec<f64> = totals.iter().map(|&c| c as f64 / n).collect();
    let std_error: Vec<f64> = est.iter().map(|&p| (p * (1.0 - p) / n).sqrt()).collect();
    Ok(SampledEdgeModel {
        rates: EdgeErrorModel {
            q1: est[0],
            q2: est[1],
            q3: est[2],
            q12: est[3],
            q23: est[4],
            q31: est[5],
        },
        std_error: std_error.try_into().expect("six components"),
        n_samples,
        seed,
    })
}

fn run_shards(
    flats: &[Vec<f64>],
    n_samples: u64,
    seed: u64,
    shard_count: u64,
    force_serial: bool,
) -> Vec<[u64; 6]> {
    // Bernoulli(p) as an integer threshold test on raw u64 draws: exact to
    // one part in 2^64 and much cheaper than float conversion.
    let thresholds: Vec<Vec<u64>> = flats
        .iter()
        .map(|flat| flat.iter().map(|&p| bernoulli_threshold(p)).collect())
        .collect();

    let run = |shard: u64| -> [u64; 6] {
        let lo = shard * SHARD_SIZE;
        let hi = (lo + SHARD_SIZE).min(n_samples);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(shard);
        let mut counts = [0u64; 6];
        for _ in lo..hi {
            for (c, flat) in thresholds.iter().enumerate() {
                let mut parity = false;
                for &t in flat {
                    parity ^= rng.random::<u64>() < t;
                }
                counts[c] += parity as u64;
            }
        }
        counts
    };

    #[cfg(feature = "parallel")]
    if !force_serial {
        return (0..shard_count).into_par_iter().map(run).collect();
    }
    let _ = force_serial;
    (0..shard_count).map(run).collect()
}

/// `P(u64 draw < threshold) = p` up to one part in 2^64.
fn bernoulli_threshold(p: f64) -> u64 {
    if p >= 1.0 {
        u64::MAX
    } else {
        (p * 2f64.powi(64)) as u64
    }
}

fn model_from<F: Fn(usize) -> f64>(f: F) -> EdgeErrorModel {
    EdgeErrorModel {
        q1: f(0),
        q2: f(1),
        q3: f(2),
        q12: f(3),
        q23: f(4),
        q31: f(5),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn zero_noise_gives_zero_rates() {
        let p = CircuitNoiseParams::uniform(0.0).unwrap();
        assert_eq!(leading_order_edge_model(&p).components(), [0.0; 6]);
        assert_eq!(all_order_edge_model(&p).unwrap().components(), [0.0; 6]);
    }

    #[test]
    fn leading_order_hand_values() {
        let p = CircuitNoiseParams::uniform(0.01).unwrap();
        let m = leading_order_edge_model(&p);
        assert_relative_eq!(m.q1, 0.036, max_relative = 1e-12);
        assert_relative_eq!(m.q2, 0.036, max_relative = 1e-12);
        assert_relative_eq!(m.q3, 46.0 / 15.0 * 0.01, max_relative = 1e-12);
        assert_relative_eq!(m.q12, 8.0 / 15.0 * 0.01, max_relative = 1e-12);
        assert_relative_eq!(m.q23, 0.012, max_relative = 1e-12);
        assert_relative_eq!(m.q31, 0.012, max_relative = 1e-12);
    }

    #[test]
    fn leading_order_nu_mu_at_threshold_scale() {
        let p = CircuitNoiseParams::uniform(0.0264).unwrap();
        let m = leading_order_edge_model(&p);
        assert_relative_eq!(m.nu(), 54.0 * 0.0264 / 15.0, max_relative = 1e-12);
        assert_relative_eq!(m.mu(), 6.0 * 0.0264 / 5.0, max_relative = 1e-12);
    }

    #[test]
    fn odd_parity_cases() {
        assert_eq!(odd_parity_combination(&[]).unwrap(), 0.0);
        assert_eq!(odd_parity_combination(&[0.5]).unwrap(), 0.5);
        assert_relative_eq!(odd_parity_combination(&[0.1, 0.1]).unwrap(), 0.18, max_relative = 1e-12);
        assert!(odd_parity_combination(&[0.6]).is_err());
    }

    #[test]
    fn odd_parity_matches_joint_enumeration() {
        // Four joint outcomes of two Bernoullis: odd = p(1-q) + q(1-p).
        let (p, q) = (0.1, 0.3);
        let odd = p * (1.0 - q) + q * (1.0 - p);
        assert_relative_eq!(odd_parity_combination(&[p, q]).unwrap(), odd, max_relative = 1e-12);
    }

    #[test]
    fn odd_parity_permutation_invariant_and_zero_absorbing() {
        let a = odd_parity_combination(&[0.05, 0.2, 0.11]).unwrap();
        let b = odd_parity_combination(&[0.2, 0.11, 0.05]).unwrap();
        assert_eq!(a, b);
        let with_zero = odd_parity_combination(&[0.05, 0.2, 0.11, 0.0]).unwrap();
        assert_eq!(a, with_zero);
    }

    #[test]
    fn odd_parity_below_linear_sum() {
        let probs = [0.1, 0.07, 0.2];
        let q = odd_parity_combination(&probs).unwrap();
        assert!(q <= probs.iter().sum::<f64>());
        assert!(q <= 0.5);
    }

    #[test]
    fn all_order_hand_value_and_ordering() {
        let p = CircuitNoiseParams::uniform(0.03).unwrap();
        let all = all_order_edge_model(&p).unwrap();
        let lead = leading_order_edge_model(&p);
        // q1 = (1 − (1−8p2/15)^6 (1−4p1/3)^3)/2 at p_e = 0.03
        let expect = 0.5 * (1.0 - (1.0 - 0.016f64).powi(6) * (1.0 - 0.04f64).powi(3));
        assert_relative_eq!(all.q1, expect, max_relative = 1e-12);
        assert!((all.q1 - 0.09843).abs() < 1e-5, "got {}", all.q1);
        assert!(all.q1 < lead.q1, "all-order rates sit below leading order");
    }

    #[test]
    fn all_order_nu_mu_at_upper_band() {
        let p = CircuitNoiseParams::uniform(0.0284).unwrap();
        let m = all_order_edge_model(&p).unwrap();
        assert!((m.nu() - 0.09368).abs() < 5e-5, "nu = {}", m.nu());
        assert!((m.mu() - 0.03340).abs() < 5e-5, "mu = {}", m.mu());
    }

    #[test]
    fn all_order_dominated_componentwise_with_equality_only_at_zero() {
        for pe in [0.0, 1e-4, 1e-3, 0.01, 0.03, 0.05] {
            let p = CircuitNoiseParams::uniform(pe).unwrap();
            let lead = leading_order_edge_model(&p).components();
            let all = all_order_edge_model(&p).unwrap().components();
            for (a, l) in all.iter().zip(lead.iter()) {
                assert!(a <= l, "pe={pe}");
                if pe > 0.0 {
                    assert!(a < l, "pe={pe}: strict below zero noise");
                }
            }
        }
    }

    #[test]
    fn leading_coefficients_match_derivative_at_zero() {
        // Finite-difference d q/d p_e at 0 against the closed coefficients.
        // One-sided second-order stencil (4q(h) − q(2h))/2h since negative
        // rates are out of domain; truncation is O(h²).
        let h = 2e-6;
        let at = |x: f64| all_order_edge_model(&CircuitNoiseParams::uniform(x).unwrap()).unwrap().components();
        let qh = at(h);
        let q2h = at(2.0 * h);
        let coefficients = [54.0 / 15.0, 54.0 / 15.0, 46.0 / 15.0, 8.0 / 15.0, 18.0 / 15.0, 18.0 / 15.0];
        for ((qh, q2h), c) in qh.iter().zip(q2h.iter()).zip(coefficients) {
            let derivative = (4.0 * qh - q2h) / (2.0 * h);
            assert_relative_eq!(derivative, c, max_relative = 1e-9);
        }
        // The leading-order model is exactly linear in p_e.
        let p = CircuitNoiseParams::uniform(h).unwrap();
        let lead = leading_order_edge_model(&p).components();
        for (q, c) in lead.iter().zip(coefficients) {
            assert_relative_eq!(q / h, c, max_relative = 1e-12);
        }
    }

    #[test]
    fn incidence_expansion_matches_leading_formulas() {
        let p = CircuitNoiseParams::new(0.013, 0.007, 0.002, 0.004).unwrap();
        let inc = LocationIncidence::for_params(&p);
        let lead = leading_order_edge_model(&p);
        let linear: Vec<f64> = (0..6)
            .map(|c| inc.triggers(c).iter().map(|g| g.multiplicity as f64 * g.probability).sum())
            .collect();
        for (a, b) in linear.iter().zip(lead.components()) {
            assert_relative_eq!(a, &b, max_relative = 1e-12);
        }
    }

    #[test]
    fn sampling_zero_noise_is_exactly_zero() {
        let p = CircuitNoiseParams::uniform(0.0).unwrap();
        let s = sample_location_model(&p, 10_000, 7).unwrap();
        assert_eq!(s.rates.components(), [0.0; 6]);
        assert_eq!(s.std_error, [0.0; 6]);
        assert!(sample_location_model(&p, 0, 7).is_err());
    }

    #[test]
    fn sampling_tracks_closed_form() {
        let p = CircuitNoiseParams::uniform(0.03).unwrap();
        let closed = all_order_edge_model(&p).unwrap();
        let s = sample_location_model(&p, 1_000_000, 20180712).unwrap();
        // q1 within 3σ of the closed form.
        let sigma = s.std_error[0];
        assert!(
            (s.rates.q1 - closed.q1).abs() <= 3.0 * sigma,
            "q1: {} vs {} (sigma {})",
            s.rates.q1,
            closed.q1,
            sigma
        );

        let p01 = CircuitNoiseParams::uniform(0.01).unwrap();
        let closed01 = all_order_edge_model(&p01).unwrap();
        let s01 = sample_location_model(&p01, 1_000_000, 20180712).unwrap();
        assert!((s01.rates.q12 - closed01.q12).abs() <= 3.0 * s01.std_error[3]);
    }

    #[test]
    fn sampling_is_deterministic_and_serial_matches_parallel() {
        let p = CircuitNoiseParams::uniform(0.02).unwrap();
        let a = sample_location_model(&p, 200_000, 99).unwrap();
        let b = sample_location_model(&p, 200_000, 99).unwrap();
        assert_eq!(a, b);
        let c = sample_location_model_serial(&p, 200_000, 99).unwrap();
        assert_eq!(a, c);
        let d = sample_location_model(&p, 200_000, 100).unwrap();
        assert_ne!(a.rates.components(), d.rates.components());
    }
}
