//! Threshold solvers for surface-code error detection under postselection.
//!
//! Two regimes: the phenomenological model (iid edge errors at rate ε) and
//! the circuit-level model fed by [`crate::noise`]. In both, the long-chain
//! series converges for `ε/(1−ε) < 1/5`, but the binding constraint is the
//! singular region around non-Clifford operations, where short chains are
//! already logical: the per-singular-qubit error must stay below the magic
//! state distillation threshold, which pins the critical ratio at 0.134.
//! For context, decoder-based numerical studies put the standard
//! (correction) thresholds near 2.93–3.3% phenomenological and 0.75%
//! circuit-level; the detection-based values solved here sit far above them.

use serde::Serialize;

use crate::bounds::validate_probability;
use crate::error::{Error, Result};
use crate::noise::{all_order_edge_model, leading_order_edge_model, CircuitNoiseParams};
use crate::solve::{self, ThresholdResult};

/// A named constant with its origin spelled out.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NamedConstant {
    pub value: f64,
    pub symbol: &'static str,
    pub origin: &'static str,
}

/// Convergence radius of the long-chain series: the walk counts obey
/// `C_l ≤ (6/5)·5^l`, so `Σ C_l x^l` converges iff `x < 1/5`.
pub const SAW_RATIO_LIMIT: NamedConstant = NamedConstant {
    value: 0.2,
    symbol: "1/5",
    origin: "inverse growth rate of self-avoiding-walk counts on Z^3",
};

/// Critical edge-error ratio `x* = ε/(1−ε)` at which the short-chain error
/// on a singular qubit reaches the distillation threshold (from the
/// rigorously counted short-chain table up to length 14).
pub const SINGULAR_RATIO_LIMIT: NamedConstant = NamedConstant {
    value: 0.134,
    symbol: "x*",
    origin: "critical ratio for the singular-region short-chain series",
};

/// Input-error threshold of magic state distillation, `(1 − √2/2)/2`.
pub const MSD_THRESHOLD: NamedConstant = NamedConstant {
    value: 0.5 - std::f64::consts::SQRT_2 / 4.0,
    symbol: "(1-sqrt(2)/2)/2",
    origin: "distillability limit for noisy non-Clifford resource states",
};

/// The three critical constants bundled for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalConstants {
    pub saw_ratio_limit: NamedConstant,
    pub singular_ratio_limit: NamedConstant,
    pub msd_threshold: NamedConstant,
}

pub const CRITICAL_CONSTANTS: CriticalConstants = CriticalConstants {
    saw_ratio_limit: SAW_RATIO_LIMIT,
    singular_ratio_limit: SINGULAR_RATIO_LIMIT,
    msd_threshold: MSD_THRESHOLD,
};

/// Effective iid edge rate combining single-edge rate ν and correlated-pair
/// rate μ: `ε(ν,μ) = √( (ν/(1−ν)) · [ν/(1−ν) + 2μ/(1−μ)] )`.
///
/// Exactly `ν/(1−ν)` at μ = 0.
pub fn effective_epsilon(nu: f64, mu: f64) -> Result<f64> {
    validate_probability("nu", nu, 0.0, 1.0)?;
    validate_probability("mu", mu, 0.0, 1.0)?;
    if nu >= 1.0 || mu >= 1.0 {
        return Err(Error::InvalidProbability {
            name: "nu/mu",
            value: nu.max(mu),
            lo: 0.0,
            hi: 1.0,
        });
    }
    let x = nu / (1.0 - nu);
    let y = mu / (1.0 - mu);
    Ok((x * (x + 2.0 * y)).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhenomThresholds {
    /// Solves `ε/(1−ε) = 1/5`: ε = 1/6.
    pub topological: ThresholdResult,
    /// Solves `ε/(1−ε) = x*`: ε = x*/(1+x*).
    pub singular: ThresholdResult,
}

/// Phenomenological thresholds in closed form.
pub fn phenomenological_thresholds() -> PhenomThresholds {
    PhenomThresholds {
        topological: ThresholdResult::closed_form(ratio_to_eps(SAW_RATIO_LIMIT.value)),
        singular: ThresholdResult::closed_form(ratio_to_eps(SINGULAR_RATIO_LIMIT.value)),
    }
}

/// Same with an overridden singular critical ratio.
pub fn phenomenological_thresholds_with_ratio(singular_ratio: f64) -> Result<PhenomThresholds> {
    validate_probability("singular_ratio", singular_ratio, 0.0, 1.0)?;
    Ok(PhenomThresholds {
        topological: ThresholdResult::closed_form(ratio_to_eps(SAW_RATIO_LIMIT.value)),
        singular: ThresholdResult::closed_form(ratio_to_eps(singular_ratio)),
    })
}

/// Invert `ε/(1−ε) = r`.
pub fn ratio_to_eps(r: f64) -> f64 {
    r / (1.0 + r)
}

/// Which edge-rate map feeds the circuit-level solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Order {
    Leading,
    AllOrder,
}

/// Circuit-level threshold: the uniform `p_e` at which
/// `ε(ν(p_e), μ(p_e))` crosses the singular critical ratio.
///
/// The objective is verified monotone on the bracket `[0, 0.05]` before
/// bisecting to 1e-6 absolute in `p_e`.
pub fn circuit_threshold(order: Order) -> Result<ThresholdResult> {
    circuit_threshold_for_target(order, SINGULAR_RATIO_LIMIT.value)
}

/// [`circuit_threshold`] against an arbitrary target ratio.
pub fn circuit_threshold_for_target(order: Order, target: f64) -> Result<ThresholdResult> {
    validate_probability("target", target, 0.0, 1.0)?;
    if target == 0.0 {
        return Ok(ThresholdResult::closed_form(0.0));
    }
    let objective = move |p_e: f64| -> f64 {
        let params = CircuitNoiseParams::uniform(p_e).expect("p_e within bracket");
        let model = match order {
            Order::Leading => leading_order_edge_model(&params),
            Order::AllOrder => all_order_edge_model(&params).expect("trigger probs small on bracket"),
        };
        effective_epsilon(model.nu(), model.mu()).expect("rates below 1") - target
    };
    // 1e-8 in p_e keeps the substituted-back objective within 1e-6 of the
    // target (the objective slope is ~5.5 per unit p_e).
    let (lo, hi) = (0.0, 0.05);
    solve::verify_nondecreasing(lo, hi, 64, objective)?;
    solve::bisect(lo, hi, 1e-8, "circuit-level threshold", objective)
}

/// Margin to distillability: `msd_threshold − q_singular`.
///
/// Positive means the per-singular-qubit error is distillable.
pub fn msd_margin(q_singular: f64) -> Result<f64> {
    validate_probability("q_singular", q_singular, 0.0, 1.0)?;
    Ok(MSD_THRESHOLD.value - q_singular)
}
