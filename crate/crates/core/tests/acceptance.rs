//! Acceptance suite: one test per release criterion, each printing a
//! pass/fail line (run with `--nocapture` to see them as they go).

use std::time::Instant;

use psthresh::bounds::{self, FaultySetSpec, GateNoiseProfile};
use psthresh::concat::{self, ConcatenationScheme, FixedPoint, Mode};
use psthresh::noise::{all_order_edge_model, leading_order_edge_model, sample_location_model, CircuitNoiseParams};
use psthresh::saw::{self, ChainWeightParams};
use psthresh::sim::{verify_postselected_regime, BuiltinCircuit, EnumOptions, StochasticPauliNoise, VerifyOutcome};
use psthresh::surface::{self, Order};

struct Criterion {
    id: usize,
    name: &'static str,
    started: Instant,
}

impl Criterion {
    fn start(id: usize, name: &'static str) -> Self {
        Criterion {
            id,
            name,
            started: Instant::now(),
        }
    }

    fn pass(self, detail: String) {
        println!(
            "ACCEPTANCE {:02} {}: PASS ({detail}, {:.2}s)",
            self.id,
            self.name,
            self.started.elapsed().as_secs_f64()
        );
    }

    fn within(&self, seconds: f64) {
        let elapsed = self.started.elapsed().as_secs_f64();
        assert!(
            elapsed < seconds,
            "ACCEPTANCE {:02} {}: runtime {elapsed:.1}s exceeds {seconds}s",
            self.id,
            self.name
        );
    }
}

#[test]
fn criterion_01_phenomenological_topological_threshold() {
    let c = Criterion::start(1, "phenomenological topological threshold");
    let t = surface::phenomenological_thresholds();
    assert!((t.topological.value - 1.0 / 6.0).abs() < 1e-12);
    assert!((t.topological.value - 0.167).abs() < 5e-4);
    c.within(1.0);
    c.pass(format!("value={:.6}", t.topological.value));
}

#[test]
fn criterion_02_singular_region_threshold() {
    let c = Criterion::start(2, "singular-region threshold");
    let t = surface::phenomenological_thresholds();
    assert!((t.singular.value - 0.134 / 1.134).abs() < 1e-12);
    assert!((t.singular.value - 0.118).abs() < 5e-4);
    c.pass(format!("value={:.6}", t.singular.value));
}

#[test]
fn criterion_03_leading_order_circuit_threshold() {
    let c = Criterion::start(3, "leading-order circuit-level threshold");
    let r = surface::circuit_threshold(Order::Leading).unwrap();
    assert!(
        (0.0263..=0.0265).contains(&r.value),
        "threshold {} outside [0.0263, 0.0265]",
        r.value
    );
    c.within(1.0);
    c.pass(format!("p_e={:.6}", r.value));
}

#[test]
fn criterion_04_all_order_circuit_threshold() {
    let c = Criterion::start(4, "all-order circuit-level threshold");
    let lead = surface::circuit_threshold(Order::Leading).unwrap();
    let all = surface::circuit_threshold(Order::AllOrder).unwrap();
    assert!(
        (0.0280..=0.0290).contains(&all.value),
        "threshold {} outside [0.0280, 0.0290]",
        all.value
    );
    assert!(all.value > lead.value, "all-order must exceed leading order");
    c.pass(format!("p_e={:.6} (> leading {:.6})", all.value, lead.value));
}

#[test]
fn criterion_05_fig2_qualitative_reproduction() {
    let c = Criterion::start(5, "edge-rate sweep: ordering, widening gap, Monte Carlo");
    let grid: Vec<f64> = (1..=8).map(|i| 0.005 * i as f64).collect();
    let samples = 1_000_000u64;
    let seed = 20180712u64;

    let mut prev_gaps = [0.0f64; 6];
    for &p_e in &grid {
        let params = CircuitNoiseParams::uniform(p_e).unwrap();
        let lead = leading_order_edge_model(&params).components();
        let all = all_order_edge_model(&params).unwrap().components();

        // all-order below leading order componentwise, gap widening in p_e
        let mut gaps = [0.0f64; 6];
        for (i, (l, a)) in lead.iter().zip(all.iter()).enumerate() {
            assert!(a <= l, "p_e={p_e}: component {i} ordering");
            gaps[i] = l - a;
            assert!(
                gaps[i] > prev_gaps[i],
                "p_e={p_e}: component {i} gap must widen ({} vs {})",
                gaps[i],
                prev_gaps[i]
            );
        }
        prev_gaps = gaps;

        // Monte Carlo within 4 sigma of the closed forms, sigma taken from
        // the closed-form rate so empty bins are judged fairly
        let sampled = sample_location_model(&params, samples, seed).unwrap();
        for (i, (est, closed)) in sampled.rates.components().iter().zip(all.iter()).enumerate() {
            let sigma = (closed * (1.0 - closed) / samples as f64).sqrt();
            assert!(
                (est - closed).abs() <= 4.0 * sigma,
                "p_e={p_e}: component {i}: estimate {est} vs closed {closed} (sigma {sigma})"
            );
        }
    }
    c.within(120.0);
    c.pass(format!("{} grid points x 6 components at 4 sigma", grid.len()));
}

#[test]
fn criterion_06_saw_suite() {
    let c = Criterion::start(6, "self-avoiding-walk counts and bound");
    let table = saw::count_saws(12).unwrap();
    assert_eq!(
        &table.counts()[..5],
        &[1, 6, 30, 150, 726],
        "C_1..C_4 must be 6, 30, 150, 726"
    );

    // naive-oracle cross-check
    let naive = saw::count_saws_naive(8).unwrap();
    assert_eq!(&table.counts()[..9], naive.counts());

    // bound holds through l = 12 with equality at l = 1, 2
    let report = saw::verify_saw_bound(&table);
    assert!(report.holds, "violations at {:?}", report.violations);
    for l in [1usize, 2] {
        let count = table.count(l).unwrap() as u128;
        assert_eq!(5 * count, 6 * 5u128.pow(l as u32), "bound must be tight at l={l}");
    }
    c.within(600.0);
    c.pass(format!("C_12={}, max ratio {:.4}", table.count(12).unwrap(), report.max_ratio));
}

#[test]
fn criterion_07_chain_weight_identity_and_dominance() {
    let c = Criterion::start(7, "correlated-chain weight identity");
    let grid = [0.01, 0.06, 0.12, 0.2, 0.3];
    for l in 1..=20usize {
        for &nu in &grid {
            for &mu in &grid {
                let params = ChainWeightParams::new(nu, mu).unwrap();
                let exact = saw::chain_weight_exact(l, &params);
                let bound = saw::chain_weight_bound(l, &params);
                assert!(
                    (exact - bound).abs() <= 1e-12 * bound.max(f64::MIN_POSITIVE),
                    "l={l} nu={nu} mu={mu}: exact {exact} vs bound {bound}"
                );
                let eps = surface::effective_epsilon(nu, mu).unwrap();
                assert!(
                    bound <= eps.powi(l as i32) * (1.0 + 1e-12),
                    "l={l} nu={nu} mu={mu}: weight {bound} above eps^l {}",
                    eps.powi(l as i32)
                );
            }
        }
    }
    c.pass(format!("l <= 20 x {}x{} grid at 1e-12", grid.len(), grid.len()));
}

#[test]
fn criterion_08_postselected_regime_on_builtin_circuits() {
    let c = Criterion::start(8, "postselected bound and q floor on built-in circuits");
    let mut checked = 0;
    for builtin in BuiltinCircuit::all() {
        let circuit = builtin.build();
        let min_weight = builtin.verified_sparse_weight();
        for eps in [1e-3, 1e-2] {
            let noise = StochasticPauliNoise::iid_xz(&circuit, eps);
            // baseline/parity enumerate exhaustively; the patch's 3^26 path
            // space is truncated with the remainder carried conservatively
            let opts = match builtin {
                BuiltinCircuit::D2Patch => EnumOptions {
                    weight_cutoff: Some(5),
                    ..Default::default()
                },
                _ => EnumOptions::default(),
            };
            match verify_postselected_regime(&circuit, &noise, &FaultySetSpec::min_weight(min_weight), &opts).unwrap() {
                VerifyOutcome::Verified(r) => {
                    assert!(
                        r.pass,
                        "{}: eps={eps}: delta {} vs bound {}, q {} vs floor {}",
                        builtin.name(),
                        r.delta_upper,
                        r.delta_bound,
                        r.q_postselect,
                        r.q_floor
                    );
                    checked += 1;
                }
                VerifyOutcome::SparsePreconditionViolated(v) => {
                    panic!("{}: unexpected violation {}", builtin.name(), v.path)
                }
            }
        }
    }

    // The patch once more with a fully exhaustive path space (X-only
    // noise, 2^26 paths) so the criterion is also met literally.
    let circuit = BuiltinCircuit::D2Patch.build();
    let noise = StochasticPauliNoise::iid_x(&circuit, 1e-2);
    let opts = EnumOptions {
        path_budget: 100_000_000,
        ..Default::default()
    };
    match verify_postselected_regime(&circuit, &noise, &FaultySetSpec::min_weight(2), &opts).unwrap() {
        VerifyOutcome::Verified(r) => {
            assert!(r.pass);
            assert!(r.sim.truncation.is_none(), "this run must be exhaustive");
            assert_eq!(r.sim.paths_enumerated, 1 << 26);
            checked += 1;
        }
        VerifyOutcome::SparsePreconditionViolated(v) => panic!("violation {}", v.path),
    }
    c.within(300.0);
    c.pass(format!("{checked} circuit/noise combinations"));
}

#[test]
fn criterion_09_concatenation_gain_and_threshold_ordering() {
    let c = Criterion::start(9, "detection gain and threshold ordering");
    for m in [16usize, 100, 400] {
        let gain = concat::supremacy_gain(m).unwrap();
        let normalized = gain / (m as f64).sqrt();
        assert!(
            (normalized - 0.5 * 6.0f64.sqrt()).abs() <= 1e-9,
            "M={m}: gain/sqrt(M) = {normalized}"
        );
    }

    for m in 10..=500usize {
        let scheme = ConcatenationScheme::new(m, 3, 0).unwrap();
        let FixedPoint::Found(correction) = concat::threshold_estimate(&scheme, Mode::Correction).fixed_point else {
            panic!("M={m}: correction fixed point missing");
        };
        let FixedPoint::Found(detection) = concat::threshold_estimate(&scheme, Mode::Detection).fixed_point else {
            panic!("M={m}: detection fixed point missing");
        };
        assert!(
            detection.value >= correction.value,
            "M={m}: detection {} below correction {}",
            detection.value,
            correction.value
        );
    }
    c.pass("gain = (sqrt(6)/2)*sqrt(M); detection >= correction for M in 10..=500".into());
}

#[test]
fn criterion_10_bounds_engine() {
    let c = Criterion::start(10, "bounds engine identities and frozen values");
    // binomial identity: tail + head = (1+x)^S
    for &(s, w, x) in &[(10usize, 2usize, 0.0202020202f64), (24, 5, 0.11), (60, 9, 0.031)] {
        let tail = bounds::binomial_tail(s, w, x).unwrap();
        let head: f64 = (0..w)
            .map(|r| bounds::binomial_tail(s, r, x).unwrap() - bounds::binomial_tail(s, r + 1, x).unwrap())
            .sum();
        let total = (1.0 + x).powi(s as i32);
        assert!(
            ((head + tail) - total).abs() <= 1e-12 * total,
            "S={s} w={w}: identity off by {:.3e}",
            ((head + tail) - total).abs() / total
        );
    }

    // frozen postselected bound
    let profile = GateNoiseProfile::iid(0.01, 10).unwrap().assume_stochastic();
    let bound = bounds::postselected_error_bound(&profile, &FaultySetSpec::min_weight(2)).unwrap();
    assert!(
        (bound.value - 0.009434).abs() <= 1e-6,
        "postselected bound {} vs 0.009434",
        bound.value
    );

    // kappa budget, verified by direct substitution
    let kappa = bounds::kappa_budget(1, 0.5).unwrap();
    assert!((kappa - 15.25).abs() <= 0.05, "kappa {kappa}");
    let p: f64 = (-10.0f64).exp2();
    let e = (-kappa).exp();
    let lhs = 2.0 * e / ((p - e) * p) + e / p;
    assert!(lhs < 0.5, "substituted chain {lhs} must stay below the gap");

    c.pass(format!("bound={:.6}, kappa={kappa:.2}", bound.value));
}
