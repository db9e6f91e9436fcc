//! Cross-validation of the three noisy-execution implementations:
//! path enumeration (frames), direct Monte Carlo (its own frame code), and
//! the dense statevector oracle.

use psthresh::bounds::FaultySetSpec;
use psthresh::noise::CircuitNoiseParams;
use psthresh::sim::statevector::port_value_distribution;
use psthresh::sim::{
    exact_distributions, mc_sample, propagate_path, verify_postselected_regime, BuiltinCircuit, EnumOptions, FaultPath,
    McOptions, StochasticPauliNoise, VerifyOutcome,
};

/// Mixture oracle: sum the statevector runs of every fault path by hand and
/// compare against the enumerated flip distribution. The parity gadget's
/// ideal outputs are all-zero, so port values and port flips coincide.
#[test]
fn enumeration_matches_statevector_mixture() {
    let circuit = BuiltinCircuit::ParityCheck.build();
    let params = CircuitNoiseParams::new(0.03, 0.1, 0.02, 0.05).unwrap();
    let noise = StochasticPauliNoise::depolarizing(&circuit, &params);

    let report = exact_distributions(&circuit, &noise, &EnumOptions::default()).unwrap();

    // Independent path walk: odometer over (no-fault + options) per location.
    let n_loc = circuit.locations().len();
    let radix: Vec<usize> = (0..n_loc).map(|i| 1 + noise.location(i).options().len()).collect();
    let mut mixture = vec![0.0f64; report.flip_distribution.len()];
    let mut digits = vec![0usize; n_loc];
    loop {
        let mut weight = 1.0;
        let mut faults = Vec::new();
        for (i, &d) in digits.iter().enumerate() {
            let loc = noise.location(i);
            if d == 0 {
                weight *= 1.0 - loc.eps();
            } else {
                let (pauli, p) = &loc.options()[d - 1];
                weight *= p;
                faults.push((i, pauli.clone()));
            }
        }
        let run = port_value_distribution(&circuit, &FaultPath::new(faults)).unwrap();
        for (v, &p) in run.port_distribution.iter().enumerate() {
            mixture[v] += weight * p;
        }

        // odometer increment
        let mut pos = 0;
        loop {
            if pos == n_loc {
                break;
            }
            digits[pos] += 1;
            if digits[pos] < radix[pos] {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
        if pos == n_loc {
            break;
        }
    }

    for (a, b) in mixture.iter().zip(&report.flip_distribution) {
        assert!((a - b).abs() < 1e-12, "statevector {a} vs enumeration {b}");
    }
}

/// Frame propagation against the statevector on the 7-qubit patch: each
/// fault path shifts the ideal port-value distribution by its flip pattern.
#[test]
fn frame_flips_shift_the_statevector_distribution() {
    let circuit = BuiltinCircuit::D2Patch.build();
    let layout = circuit.ports();
    let ideal = port_value_distribution(&circuit, &FaultPath::empty()).unwrap();

    let params = CircuitNoiseParams::uniform(0.01).unwrap();
    let noise = StochasticPauliNoise::depolarizing(&circuit, &params);

    // A spread of single and double faults across location kinds.
    let mut paths = Vec::new();
    for loc in [0usize, 4, 5, 9, 13, 14, 16, 19, 22, 25] {
        for (pauli, _) in noise.location(loc).options().iter().take(3) {
            paths.push(FaultPath::new(vec![(loc, pauli.clone())]));
        }
    }
    let p1 = noise.location(6).options()[7].0.clone();
    let p2 = noise.location(20).options()[0].0.clone();
    paths.push(FaultPath::new(vec![(6, p1), (20, p2)]));

    for path in &paths {
        let flips = layout.pattern(propagate_path(&circuit, path).unwrap());
        let run = port_value_distribution(&circuit, path).unwrap();
        for v in 0..run.port_distribution.len() {
            let expect = ideal.port_distribution[v];
            let got = run.port_distribution[v ^ flips as usize];
            assert!(
                (expect - got).abs() < 1e-10,
                "path {path}: pattern {v:b} shifted by {flips:b}: {expect} vs {got}"
            );
        }
    }
}

/// Enumeration vs the independent sampler on the parity gadget, full
/// depolarizing noise: every pattern within 4 sigma.
#[test]
fn enumeration_matches_monte_carlo_parity() {
    let circuit = BuiltinCircuit::ParityCheck.build();
    let params = CircuitNoiseParams::uniform(0.05).unwrap();
    let noise = StochasticPauliNoise::depolarizing(&circuit, &params);

    let exact = exact_distributions(&circuit, &noise, &EnumOptions::default()).unwrap();
    let shots = 400_000u64;
    let mc = mc_sample(&circuit, &noise, McOptions::new(shots, 20180712)).unwrap();

    for (pattern, &mass) in exact.flip_distribution.iter().enumerate() {
        let (p_hat, _) = mc.estimate(pattern);
        // sigma from the exact mass, so empty bins are judged fairly
        let sigma = (mass * (1.0 - mass) / shots as f64).sqrt();
        assert!(
            (p_hat - mass).abs() <= 4.0 * sigma + 1e-9,
            "pattern {pattern:b}: mc {p_hat} vs exact {mass} (sigma {sigma})"
        );
    }
}

/// Same cross-check on the patch with truncated enumeration: the Monte
/// Carlo estimate must sit within 4 sigma once the truncation remainder is
/// granted on top.
#[test]
fn enumeration_matches_monte_carlo_d2patch() {
    let circuit = BuiltinCircuit::D2Patch.build();
    let noise = StochasticPauliNoise::iid_xz(&circuit, 0.01);
    let opts = EnumOptions {
        weight_cutoff: Some(4),
        ..Default::default()
    };
    let exact = exact_distributions(&circuit, &noise, &opts).unwrap();
    let remainder = exact.truncation.unwrap().remainder;

    let shots = 300_000u64;
    let mc = mc_sample(&circuit, &noise, McOptions::new(shots, 7)).unwrap();
    for (pattern, &mass) in exact.flip_distribution.iter().enumerate() {
        let (p_hat, _) = mc.estimate(pattern);
        let sigma = (mass * (1.0 - mass) / shots as f64).sqrt();
        assert!(
            (p_hat - mass).abs() <= 4.0 * sigma + remainder,
            "pattern {pattern:b}: mc {p_hat} vs exact {mass}"
        );
    }
    // q estimates agree too
    let q_mc = mc.q_postselect(exact.xy_bits);
    assert!((q_mc - exact.q_postselect).abs() < 4.0e-3 + remainder);
}

/// The patch detects every single fault: weight 2 verifies, weight 3 is
/// refuted by a concrete weight-2 counterexample.
#[test]
fn d2patch_sparse_weight_is_exactly_two() {
    let circuit = BuiltinCircuit::D2Patch.build();
    let opts = EnumOptions {
        weight_cutoff: Some(4),
        ..Default::default()
    };

    for eps in [1e-3, 1e-2] {
        let noise = StochasticPauliNoise::iid_xz(&circuit, eps);
        match verify_postselected_regime(&circuit, &noise, &FaultySetSpec::min_weight(2), &opts).unwrap() {
            VerifyOutcome::Verified(r) => {
                assert!(r.pass, "eps {eps}: delta slack {}, q slack {}", r.delta_slack, r.q_slack);
                assert!(r.delta_slack > 0.0);
            }
            VerifyOutcome::SparsePreconditionViolated(v) => {
                panic!("unexpected weight-{} violation: {}", v.weight, v.path)
            }
        }
    }

    // Full depolarizing noise also leaves no single-fault logical error
    // (15 options per two-qubit gate: keep the cutoff lower).
    let params = CircuitNoiseParams::uniform(1e-3).unwrap();
    let depol = StochasticPauliNoise::depolarizing(&circuit, &params);
    let depol_opts = EnumOptions {
        weight_cutoff: Some(3),
        ..Default::default()
    };
    match verify_postselected_regime(&circuit, &depol, &FaultySetSpec::min_weight(2), &depol_opts).unwrap() {
        VerifyOutcome::Verified(r) => assert!(r.pass),
        VerifyOutcome::SparsePreconditionViolated(v) => panic!("violation: {}", v.path),
    }

    // Claiming weight 3 must surface a weight-2 undetected logical fault.
    let noise = StochasticPauliNoise::iid_xz(&circuit, 1e-3);
    match verify_postselected_regime(&circuit, &noise, &FaultySetSpec::min_weight(3), &opts).unwrap() {
        VerifyOutcome::SparsePreconditionViolated(v) => {
            assert_eq!(v.weight, 2);
            assert_ne!(v.xy_flips, 0);
        }
        VerifyOutcome::Verified(_) => panic!("weight 3 should not verify"),
    }
}

/// Exact report on the patch with uniform X/Z noise, checked against the
/// spec'd bound chain at a weight verified in the same run.
#[test]
fn d2patch_report_is_postselection_consistent() {
    let circuit = BuiltinCircuit::D2Patch.build();
    let noise = StochasticPauliNoise::iid_xz(&circuit, 0.01);
    let opts = EnumOptions {
        weight_cutoff: Some(5),
        ..Default::default()
    };
    let r = exact_distributions(&circuit, &noise, &opts).unwrap();

    // postselection beats the raw fidelity floor
    assert!(r.q_postselect >= noise.fidelity_product());
    // the conditional is close to ideal: postselection works
    let delta = r.delta.unwrap();
    assert!(delta < 5e-3, "delta {delta}");
    assert!(r.sparse_mass > 0.99);
}
