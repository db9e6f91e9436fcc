//! Faulty-path error bounds for the standard and postselected regimes.
//!
//! Everything here reduces to the shared tail kernel
//! `Σ_{r≥w} C(S, r) x^r`: the standard regime plugs in `x = 2ε/(1−ε)` with a
//! `2·Π(1−ε_k)` prefactor, the postselected regime plugs in `x = ε/(1−ε)`
//! with a bare factor 2. The postselected form only holds for stochastic
//! noise (the error part of each channel is itself a channel), so that bound
//! refuses profiles not declared stochastic.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest problem size for [`kappa_budget`]; beyond this `2^(-6n-4)`
/// leaves the f64 range.
pub const KAPPA_MAX_N: u32 = 150;

/// Default target gap for [`kappa_budget`]. A postselected decision stays
/// readable as long as the conditional output is biased away from 1/2 by
/// any fixed margin, so the gap can be chosen freely in (0, 1); 1/2 is the
/// customary choice and every gap in range costs only O(1) extra κ.
pub const KAPPA_DEFAULT_GAP: f64 = 0.5;

/// `Σ_{r=w}^{S} C(S, r) x^r`, exact finite sum.
///
/// Total on `x ≥ 0`: an empty sum (`w > S`) is 0. Terms are built by the
/// multiplicative recurrence `t_{r+1} = t_r · x (S−r)/(r+1)` and accumulated
/// with compensated summation, which keeps the binomial identity
/// `head + tail = (1+x)^S` good to ~1e-13 relative even at `S = 10^4`.
pub fn binomial_tail(locations: usize, min_weight: usize, x: f64) -> Result<f64> {
    if x < 0.0 || !x.is_finite() {
        return Err(Error::InvalidProbability {
            name: "x",
            value: x,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    if min_weight > locations {
        return Ok(0.0);
    }
    if x == 0.0 {
        return Ok(if min_weight == 0 { 1.0 } else { 0.0 });
    }

    // t_w = C(S, w) x^w, interleaving the binomial factors with powers of x
    // so intermediate values stay representable whenever the term is.
    let s = locations as f64;
    let mut term = 1.0;
    for i in 1..=min_weight {
        term *= x * (s - min_weight as f64 + i as f64) / i as f64;
    }

    let mut sum = KahanSum::default();
    sum.add(term);
    for r in min_weight..locations {
        term *= x * (s - r as f64) / (r as f64 + 1.0);
        sum.add(term);
    }
    Ok(sum.value())
}

/// `Σ_{r=w}^{M} C(M, r) p^r (1−p)^{M−r}`: the tail of a Binomial(M, p).
pub fn bernoulli_tail(trials: usize, min_successes: usize, p: f64) -> Result<f64> {
    validate_probability("p", p, 0.0, 1.0)?;
    if min_successes > trials {
        return Ok(0.0);
    }
    if min_successes == 0 {
        return Ok(1.0); // the whole distribution, by normalization
    }
    if p == 0.0 {
        return Ok(0.0);
    }
    if p == 1.0 {
        return Ok(1.0);
    }

    let m = trials as f64;
    let w = min_successes as f64;
    let mut term = 1.0;
    for i in 1..=min_successes {
        term *= p * (m - w + i as f64) / i as f64;
    }
    term *= (1.0 - p).powi((trials - min_successes) as i32);

    let ratio = p / (1.0 - p);
    let mut sum = KahanSum::default();
    sum.add(term);
    for r in min_successes..trials {
        term *= ratio * (m - r as f64) / (r as f64 + 1.0);
        sum.add(term);
    }
    Ok(sum.value().min(1.0))
}

/// Per-location noise strengths (diamond-norm distances).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum NoiseStrengths {
    Iid { eps: f64, locations: usize },
    PerLocation(Vec<f64>),
}

/// Noise strengths plus the stochasticity declaration the postselected
/// bound depends on.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GateNoiseProfile {
    strengths: NoiseStrengths,
    stochastic: bool,
}

impl GateNoiseProfile {
    /// Identical strength `eps` at each of `locations` locations.
    pub fn iid(eps: f64, locations: usize) -> Result<Self> {
        validate_strength(eps)?;
        Ok(GateNoiseProfile {
            strengths: NoiseStrengths::Iid { eps, locations },
            stochastic: false,
        })
    }

    /// One strength per location.
    pub fn per_location(eps: Vec<f64>) -> Result<Self> {
        if eps.is_empty() {
            return Err(Error::EmptyProfile);
        }
        for &e in &eps {
            validate_strength(e)?;
        }
        Ok(GateNoiseProfile {
            strengths: NoiseStrengths::PerLocation(eps),
            stochastic: false,
        })
    }

    /// Declare the noise stochastic: each error part is a bona fide channel
    /// with total probability `eps_k`, not merely diamond-norm bounded.
    pub fn assume_stochastic(mut self) -> Self {
        self.stochastic = true;
        self
    }

    pub fn is_stochastic(&self) -> bool {
        self.stochastic
    }

    pub fn locations(&self) -> usize {
        match &self.strengths {
            NoiseStrengths::Iid { locations, .. } => *locations,
            NoiseStrengths::PerLocation(v) => v.len(),
        }
    }

    pub fn max_eps(&self) -> f64 {
        match &self.strengths {
            NoiseStrengths::Iid { eps, .. } => *eps,
            NoiseStrengths::PerLocation(v) => v.iter().cloned().fold(0.0, f64::max),
        }
    }

    /// `Π_k (1 − ε_k)`.
    pub fn fidelity_product(&self) -> f64 {
        match &self.strengths {
            NoiseStrengths::Iid { eps, locations } => (1.0 - eps).powi(*locations as i32),
            NoiseStrengths::PerLocation(v) => v.iter().map(|e| 1.0 - e).product(),
        }
    }

    /// The common strength, if every location has the same one.
    fn uniform_eps(&self) -> Option<f64> {
        match &self.strengths {
            NoiseStrengths::Iid { eps, .. } => Some(*eps),
            NoiseStrengths::PerLocation(v) => {
                let first = v[0];
                v.iter().all(|&e| e == first).then_some(first)
            }
        }
    }
}

/// Which fault patterns count as faulty.
///
/// `min_weight` declares every path with at least that many faulty locations
/// faulty; an explicit `enumerator` instead gives the number of faulty
/// patterns `a_r` per weight `r` (each `a_r ≤ C(S, r)`), evaluated at the
/// profile's maximum strength.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FaultySetSpec {
    pub min_weight: usize,
    pub enumerator: Option<Vec<(usize, f64)>>,
}

impl FaultySetSpec {
    pub fn min_weight(min_weight: usize) -> Self {
        FaultySetSpec {
            min_weight,
            enumerator: None,
        }
    }

    pub fn validate(&self, profile: &GateNoiseProfile) -> Result<()> {
        let locations = profile.locations();
        if self.min_weight < 1 || self.min_weight > locations {
            return Err(Error::WeightOutOfRange {
                weight: self.min_weight,
                locations,
            });
        }
        if let Some(entries) = &self.enumerator {
            for &(r, a) in entries {
                if r > locations || a > binomial(locations, r) * (1.0 + 1e-9) {
                    return Err(Error::EnumeratorTooLarge {
                        weight: r,
                        count: a,
                        locations,
                    });
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Standard,
    Postselected,
}

/// Echo of the inputs a bound was computed from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundInputs {
    pub locations: usize,
    pub min_weight: usize,
    pub eps_max: f64,
    pub eps_uniform: Option<f64>,
    pub stochastic: bool,
    pub enumerator_used: bool,
}

/// An analytic bound: a nonnegative value that may exceed 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub value: f64,
    pub regime: Regime,
    pub inputs: BoundInputs,
}

/// Standard-regime bound on the output-distribution error:
/// `2 Π_k (1−ε_k) Σ_{faulty} Π (2ε_k/(1−ε_k))^{η_k}`.
///
/// Reported raw, never capped at 1.
pub fn standard_error_bound(profile: &GateNoiseProfile, spec: &FaultySetSpec) -> Result<BoundReport> {
    spec.validate(profile)?;
    let tail = faulty_tail(profile, spec, 2.0)?;
    Ok(BoundReport {
        value: 2.0 * profile.fidelity_product() * tail,
        regime: Regime::Standard,
        inputs: inputs_echo(profile, spec),
    })
}

/// Postselected-regime bound `Δ < 2 Σ_{faulty} Π (ε_k/(1−ε_k))^{η_k}`.
///
/// Valid only for stochastic noise; refuses profiles not declared so.
pub fn postselected_error_bound(profile: &GateNoiseProfile, spec: &FaultySetSpec) -> Result<BoundReport> {
    if !profile.is_stochastic() {
        return Err(Error::NotStochastic);
    }
    spec.validate(profile)?;
    let tail = faulty_tail(profile, spec, 1.0)?;
    Ok(BoundReport {
        value: 2.0 * tail,
        regime: Regime::Postselected,
        inputs: inputs_echo(profile, spec),
    })
}

/// Floor on the probability of postselecting the null syndrome:
/// `q_{z=0} > Π_k (1 − ε_k)`.
pub fn postselection_prob_lower_bound(profile: &GateNoiseProfile) -> f64 {
    profile.fidelity_product()
}

/// Smallest κ (to 1e-3) with
/// `2e^{-κ}/((p_y − e^{-κ}) p_y) + e^{-κ}/p_y < target_gap`, `p_y = 2^{-6n-4}`.
///
/// This is the additive-error budget that keeps a postselected decision
/// readable through the conditioning: the returned κ satisfies the strict
/// inequality and grows by `12·ln 2` per unit of `n` asymptotically.
/// [`KAPPA_DEFAULT_GAP`] is the customary `target_gap`.
pub fn kappa_budget(n: u32, target_gap: f64) -> Result<f64> {
    if !(1..=KAPPA_MAX_N).contains(&n) {
        return Err(Error::KappaOutOfRange { n, max: KAPPA_MAX_N });
    }
    validate_probability("target_gap", target_gap, 0.0, 1.0)?;
    if target_gap == 0.0 || target_gap == 1.0 {
        return Err(Error::InvalidProbability {
            name: "target_gap",
            value: target_gap,
            lo: 0.0,
            hi: 1.0,
        });
    }

    // Work with delta = e^{-κ}/p_y so nothing underflows near the root:
    // g(κ) = (2/p_y)·delta/(1−delta) + delta − gap.
    let exponent = 6 * n + 4;
    let two_over_p = ((exponent + 1) as f64).exp2();
    let ln_p = -(exponent as f64) * std::f64::consts::LN_2;
    let g = |kappa: f64| {
        let delta = (-ln_p - kappa).exp();
        two_over_p * delta / (1.0 - delta) + delta - target_gap
    };

    // g → +∞ as κ ↓ −ln p_y and g → 0⁻ as κ → ∞; keep (lo: g>0, hi: g<0)
    // and return the hi end so the strict inequality holds at the answer.
    let mut lo = -ln_p + 1e-6;
    let mut hi = 4.0 * -ln_p + 16.0;
    debug_assert!(g(lo) > 0.0 && g(hi) < 0.0);
    while hi - lo > 1e-3 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

/// Shared tail: iid profiles use the binomial kernel, heterogeneous ones
/// require the explicit enumerator (evaluated at the maximum strength).
fn faulty_tail(profile: &GateNoiseProfile, spec: &FaultySetSpec, numerator_scale: f64) -> Result<f64> {
    let eps_star = profile.max_eps();
    let x = numerator_scale * eps_star / (1.0 - eps_star);
    if let Some(entries) = &spec.enumerator {
        let mut sum = KahanSum::default();
        for &(r, a) in entries {
            sum.add(a * x.powi(r as i32));
        }
        Ok(sum.value())
    } else if profile.uniform_eps().is_some() {
        binomial_tail(profile.locations(), spec.min_weight, x)
    } else {
        Err(Error::EnumeratorRequired)
    }
}

fn inputs_echo(profile: &GateNoiseProfile, spec: &FaultySetSpec) -> BoundInputs {
    BoundInputs {
        locations: profile.locations(),
        min_weight: spec.min_weight,
        eps_max: profile.max_eps(),
        eps_uniform: profile.uniform_eps(),
        stochastic: profile.is_stochastic(),
        enumerator_used: spec.enumerator.is_some(),
    }
}

/// C(n, k) in f64 (exact until the value itself outgrows the mantissa).
pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut c = 1.0;
    for i in 1..=k {
        c *= (n - k + i) as f64 / i as f64;
    }
    c
}

fn validate_strength(eps: f64) -> Result<()> {
    if !(0.0..1.0).contains(&eps) || !eps.is_finite() {
        return Err(Error::InvalidProbability {
            name: "eps",
            value: eps,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(())
}

pub(crate) fn validate_probability(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if !value.is_finite() || value < lo || value > hi {
        return Err(Error::InvalidProbability { name, value, lo, hi });
    }
    Ok(())
}

#[derive(Default)]
pub(crate) struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn add(&mut self, value: f64) {
        let y = value - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}
