//! Checks the postselected bound and the postselection floor against exact
//! enumeration.

use serde::Serialize;

use crate::bounds::{postselected_error_bound, FaultySetSpec, GateNoiseProfile};
use crate::error::Result;
use crate::sim::circuit::CliffordCircuit;
use crate::sim::enumerate::{for_each_path_of_weight, EnumOptions};
use crate::sim::frame::propagate_path;
use crate::sim::noise::StochasticPauliNoise;
use crate::sim::{exact_distributions, SimReport};

/// A low-weight path that is not sparse: it leaves the syndrome silent and
/// still flips the output. Finding one falsifies the claimed minimum faulty
/// weight. That is a result, not a crash.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SparseViolation {
    pub path: String,
    pub weight: usize,
    pub xy_flips: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub circuit: String,
    pub min_weight: usize,
    /// Noisy locations and the strength the analytic bound was taken at.
    pub locations: usize,
    pub eps: f64,
    /// Upper end of the exact Δ interval.
    pub delta_upper: f64,
    /// Analytic postselected bound on Δ.
    pub delta_bound: f64,
    pub delta_slack: f64,
    /// Enumerated q_{z=0} (lower end) and its analytic floor Π(1−ε_k).
    pub q_postselect: f64,
    pub q_floor: f64,
    pub q_slack: f64,
    pub pass: bool,
    pub sim: SimReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum VerifyOutcome {
    Verified(Box<VerifyReport>),
    SparsePreconditionViolated(SparseViolation),
}

/// Validate the postselected regime on one circuit/noise pair.
///
/// First establishes the precondition by exhaustive search: every path with
/// fewer than `spec.min_weight` faults must be sparse (syndrome fires, or
/// no output port flips). Then compares the exact Δ and q_{z=0} against the
/// analytic bound and floor.
pub fn verify_postselected_regime(
    circuit: &CliffordCircuit,
    noise: &StochasticPauliNoise,
    spec: &FaultySetSpec,
    opts: &EnumOptions,
) -> Result<VerifyOutcome> {
    circuit.validate()?;
    noise.validate(circuit)?;
    let layout = circuit.ports();

    for weight in 1..spec.min_weight {
        let mut violation = None;
        for_each_path_of_weight(noise, weight, &mut |path| {
            if violation.is_some() {
                return Ok(());
            }
            let flips = propagate_path(circuit, path)?;
            let (xy, z) = layout.split(layout.pattern(flips));
            if z == 0 && xy != 0 {
                violation = Some(SparseViolation {
                    path: path.to_string(),
                    weight,
                    xy_flips: xy,
                });
            }
            Ok(())
        })?;
        if let Some(v) = violation {
            return Ok(VerifyOutcome::SparsePreconditionViolated(v));
        }
    }

    // Analytic bound at the uniform strength, or conservatively at the max.
    // With no noisy locations at all the faulty set is empty: bound 0.
    let locations = noise.noisy_locations();
    let eps = noise.uniform_eps().unwrap_or_else(|| noise.eps_max());
    let bound_value = if locations == 0 {
        0.0
    } else {
        let profile = GateNoiseProfile::iid(eps, locations)?.assume_stochastic();
        postselected_error_bound(&profile, spec)?.value
    };

    let sim = exact_distributions(circuit, noise, opts)?;
    let delta_upper = sim
        .delta_bounds
        .map(|(_, hi)| hi)
        .unwrap_or(f64::INFINITY);
    let q_floor = noise.fidelity_product();
    let q_lower = sim.q_postselect;

    let delta_slack = bound_value - delta_upper;
    let q_slack = q_lower - q_floor;
    let pass = delta_slack >= 0.0 && q_slack >= -1e-12;

    Ok(VerifyOutcome::Verified(Box::new(VerifyReport {
        circuit: circuit.name().to_string(),
        min_weight: spec.min_weight,
        locations,
        eps,
        delta_upper,
        delta_bound: bound_value,
        delta_slack,
        q_postselect: q_lower,
        q_floor,
        q_slack,
        pass,
        sim,
    })))
}
