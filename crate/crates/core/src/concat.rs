//! Level-by-level error recursion for concatenated codes.
//!
//! One logical gate at level `l` is built from at most `M` gates of level
//! `l−1`. Under error correction a level fails once more than
//! `t = ⌊(d−1)/2⌋` components fail; under error detection (postselecting
//! non-trivial syndromes away) it takes a full `d` failures. The level map
//! is the corresponding binomial tail, and the threshold is its nontrivial
//! fixed point.

use serde::Serialize;

use crate::bounds::{bernoulli_tail, binomial, validate_probability};
use crate::error::{Error, Result};
use crate::solve::{self, ThresholdResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConcatenationScheme {
    gates_per_level: usize,
    distance: usize,
    levels: usize,
}

impl ConcatenationScheme {
    /// Requires `M ≥ d ≥ 1`.
    pub fn new(gates_per_level: usize, distance: usize, levels: usize) -> Result<Self> {
        if distance < 1 || gates_per_level < distance {
            return Err(Error::InvalidScheme {
                gates: gates_per_level,
                distance,
            });
        }
        Ok(ConcatenationScheme {
            gates_per_level,
            distance,
            levels,
        })
    }

    /// Level-(l−1) gates per level-l gate (`M`).
    pub fn gates_per_level(&self) -> usize {
        self.gates_per_level
    }

    /// Code distance `d`.
    pub fn distance(&self) -> usize {
        self.distance
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    /// Correctable errors per level: `t = ⌊(d−1)/2⌋`.
    pub fn t(&self) -> usize {
        (self.distance - 1) / 2
    }

    fn min_failures(&self, mode: Mode) -> usize {
        match mode {
            Mode::Correction => self.t() + 1,
            Mode::Detection => self.distance,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Correction,
    Detection,
}

/// One level of the recursion: `Σ_{r=w}^{M} C(M,r) ε^r (1−ε)^{M−r}` with
/// `w = t+1` (correction) or `w = d` (detection).
pub fn level_map(eps: f64, scheme: &ConcatenationScheme, mode: Mode) -> Result<f64> {
    validate_probability("eps", eps, 0.0, 1.0)?;
    bernoulli_tail(scheme.gates_per_level, scheme.min_failures(mode), eps)
}

pub fn level_map_correction(eps: f64, scheme: &ConcatenationScheme) -> Result<f64> {
    level_map(eps, scheme, Mode::Correction)
}

pub fn level_map_detection(eps: f64, scheme: &ConcatenationScheme) -> Result<f64> {
    level_map(eps, scheme, Mode::Detection)
}

/// Nontrivial fixed point of the level map, when one exists in (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FixedPoint {
    Found(ThresholdResult),
    /// The map has no interior crossing (e.g. `w = M`); not an error.
    NoThreshold,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConcatThresholdEstimate {
    pub mode: Mode,
    /// `1/C^{1/t}` resp. `1/C'^{1/(d−1)}` with the tight binomial constants
    /// `C = C(M, t+1)`, `C' = C(M, d)`. `None` when the exponent degenerates.
    pub rough: Option<f64>,
    /// Same closed form with the large-M constants `M^{t+1}/(t+1)!` resp.
    /// `M^d/d!` (for d = 3: `2/M^2` and `√6/M^{3/2}`).
    pub rough_asymptotic: Option<f64>,
    pub fixed_point: FixedPoint,
}

/// Rough closed-form thresholds plus the exact fixed point of the level map
/// (bisection to relative 1e-6).
pub fn threshold_estimate(scheme: &ConcatenationScheme, mode: Mode) -> ConcatThresholdEstimate {
    let m = scheme.gates_per_level;
    let w = scheme.min_failures(mode);
    let root_exponent = match mode {
        Mode::Correction => scheme.t(),
        Mode::Detection => scheme.distance - 1,
    };

    let rough = (root_exponent > 0).then(|| binomial(m, w).powf(-1.0 / root_exponent as f64));
    let rough_asymptotic = (root_exponent > 0).then(|| {
        let factorial: f64 = (1..=w).map(|i| i as f64).product();
        (factorial / (m as f64).powi(w as i32)).powf(1.0 / root_exponent as f64)
    });

    ConcatThresholdEstimate {
        mode,
        rough,
        rough_asymptotic,
        fixed_point: solve_fixed_point(scheme, mode),
    }
}

fn solve_fixed_point(scheme: &ConcatenationScheme, mode: Mode) -> FixedPoint {
    let g = |eps: f64| level_map(eps, scheme, mode).expect("eps stays in [0,1]") - eps;

    // The map starts below the diagonal for w ≥ 2 and rejoins it near 1;
    // scan log-spaced points first (thresholds shrink like M^{-w/(w-1)}),
    // then a linear sweep, for the first upward crossing.
    let mut grid = Vec::with_capacity(600);
    for i in 0..300 {
        grid.push(1e-9 * (0.1f64 / 1e-9).powf(i as f64 / 299.0));
    }
    for i in 1..=300 {
        grid.push(0.1 + (0.99 - 0.1) * i as f64 / 300.0);
    }

    let mut bracket = None;
    let mut prev_x = grid[0];
    let mut prev = g(prev_x);
    for &x in &grid[1..] {
        let cur = g(x);
        if prev < 0.0 && cur >= 0.0 {
            bracket = Some((prev_x, x));
            break;
        }
        prev_x = x;
        prev = cur;
    }
    let Some((lo, hi)) = bracket else {
        return FixedPoint::NoThreshold;
    };
    match solve::bisect_relative(lo, hi, 1e-6, "level-map fixed point", g) {
        Ok(result) => FixedPoint::Found(result),
        Err(_) => FixedPoint::NoThreshold,
    }
}

/// Detection-over-correction threshold ratio in the large-M, d=3 regime:
/// `(√6/M^{3/2}) / (2/M²) = (√6/2)·√M`.
pub fn supremacy_gain(gates_per_level: usize) -> Result<f64> {
    if gates_per_level < 10 {
        return Err(Error::GainOutOfRange {
            gates: gates_per_level,
            min: 10,
        });
    }
    Ok(0.5 * 6.0f64.sqrt() * (gates_per_level as f64).sqrt())
}

/// Iterate the level map: returns `ε^(0), …, ε^(L)`.
pub fn iterate_levels(eps0: f64, scheme: &ConcatenationScheme, mode: Mode) -> Result<Vec<f64>> {
    validate_probability("eps0", eps0, 0.0, 1.0)?;
    let mut levels = Vec::with_capacity(scheme.levels + 1);
    levels.push(eps0);
    let mut eps = eps0;
    for _ in 0..scheme.levels {
        eps = level_map(eps, scheme, mode)?;
        levels.push(eps);
    }
    Ok(levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn scheme(m: usize, d: usize, l: usize) -> ConcatenationScheme {
        ConcatenationScheme::new(m, d, l).unwrap()
    }

    #[test]
    fn t_follows_distance() {
        assert_eq!(scheme(5, 1, 0).t(), 0);
        assert_eq!(scheme(5, 3, 0).t(), 1);
        assert_eq!(scheme(7, 5, 0).t(), 2);
        assert!(ConcatenationScheme::new(2, 3, 0).is_err());
    }

    #[test]
    fn correction_map_hand_values() {
        let s = scheme(5, 3, 0);
        assert_eq!(level_map_correction(0.0, &s).unwrap(), 0.0);
        let v = level_map_correction(0.1, &s).unwrap();
        assert!((v - 0.08146).abs() < 1e-5, "got {v}");
        // w = t+1 > M leaves an empty tail
        let full = scheme(5, 5, 0); // d=5 → t=2 here; force the empty case below
        assert_eq!(bernoulli_tail(full.gates_per_level(), 6, 0.3).unwrap(), 0.0);
    }

    #[test]
    fn detection_map_hand_values() {
        let s = scheme(5, 3, 0);
        assert_eq!(level_map_detection(0.0, &s).unwrap(), 0.0);
        let v = level_map_detection(0.1, &s).unwrap();
        assert!((v - 0.00856).abs() < 1e-5, "got {v}");

        // Direct-summation oracle for M=100, d=3, eps=0.001, and agreement
        // with the bare leading term C(100,3)·1e-9 (the (1−ε)^{M−r} factor
        // costs ~9%, partially offset by the r=4 term: net ~7%).
        let s100 = scheme(100, 3, 0);
        let v100 = level_map_detection(0.001, &s100).unwrap();
        let oracle: f64 = (3..=100i32)
            .map(|r| binomial(100, r as usize) * 0.001f64.powi(r) * 0.999f64.powi(100 - r))
            .sum();
        assert_relative_eq!(v100, oracle, max_relative = 1e-11);
        let leading = binomial(100, 3) * 1e-9;
        assert!((v100 - leading).abs() / leading < 0.08, "got {v100} vs {leading}");
    }

    #[test]
    fn detection_never_exceeds_correction() {
        for m in [5usize, 20, 100] {
            let s = scheme(m, 3, 0);
            for eps in [1e-4, 1e-3, 0.01, 0.1, 0.3, 0.5] {
                let det = level_map_detection(eps, &s).unwrap();
                let cor = level_map_correction(eps, &s).unwrap();
                assert!(det <= cor, "M={m} eps={eps}");
            }
        }
    }

    #[test]
    fn maps_below_binomial_leading_bound() {
        // tail ≤ C(M, w) ε^w on [0, 0.5]
        for m in [5usize, 30, 120] {
            let s = scheme(m, 3, 0);
            for eps in [1e-3, 0.05, 0.2, 0.5] {
                let det = level_map_detection(eps, &s).unwrap();
                assert!(det <= binomial(m, 3) * eps.powi(3) * (1.0 + 1e-12));
                let cor = level_map_correction(eps, &s).unwrap();
                assert!(cor <= binomial(m, 2) * eps.powi(2) * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn maps_have_stated_leading_order() {
        // finite-difference order check: log map / log eps → w as eps → 0
        let s = scheme(20, 3, 0);
        for (mode, w) in [(Mode::Correction, 2.0), (Mode::Detection, 3.0)] {
            let e1 = 1e-5;
            let e2 = 1e-6;
            let v1 = level_map(e1, &s, mode).unwrap();
            let v2 = level_map(e2, &s, mode).unwrap();
            let order = (v1 / v2).ln() / (e1 / e2).ln();
            assert!((order - w).abs() < 0.01, "mode {mode:?}: order {order}");
        }
    }

    #[test]
    fn rough_thresholds_match_asymptotic_forms() {
        let s = scheme(100, 3, 0);
        let cor = threshold_estimate(&s, Mode::Correction);
        assert_relative_eq!(cor.rough_asymptotic.unwrap(), 2.0e-4, max_relative = 1e-12);
        let det = threshold_estimate(&s, Mode::Detection);
        assert_relative_eq!(det.rough_asymptotic.unwrap(), 6.0f64.sqrt() / 1000.0, max_relative = 1e-12);
        // Tight binomial constants: 1/C(100,2) and (1/C(100,3))^{1/2}
        assert_relative_eq!(cor.rough.unwrap(), 1.0 / 4950.0, max_relative = 1e-12);
        assert_relative_eq!(det.rough.unwrap(), (1.0 / 161_700.0f64).sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn fixed_point_solved_and_verified_by_iteration() {
        let s = scheme(5, 3, 8);
        let est = threshold_estimate(&s, Mode::Correction);
        let FixedPoint::Found(fp) = est.fixed_point else {
            panic!("expected a fixed point");
        };
        assert!(fp.residual.abs() < 1e-6);
        assert!(fp.bracket.lo <= fp.value && fp.value <= fp.bracket.hi);

        // Iteration oracle: below the fixed point the sequence contracts,
        // above it expands.
        let below = iterate_levels(fp.value * 0.9, &s, Mode::Correction).unwrap();
        assert!(below.last().unwrap() < &below[0]);
        let above = iterate_levels((fp.value * 1.1).min(0.999), &s, Mode::Correction).unwrap();
        assert!(above.last().unwrap() > &above[0]);

        // At the fixed point the sequence is constant. The map expands
        // around its nontrivial fixed point, so pin it down to machine
        // precision first and keep the horizon short.
        let tight = crate::solve::bisect_relative(fp.bracket.lo, fp.bracket.hi, 1e-15, "fp", |e| {
            level_map_correction(e, &s).unwrap() - e
        })
        .unwrap();
        let short = ConcatenationScheme::new(5, 3, 3).unwrap();
        let at = iterate_levels(tight.value, &short, Mode::Correction).unwrap();
        for v in &at {
            assert!((v - tight.value).abs() < 1e-9, "drift {}", (v - tight.value).abs());
        }
    }

    #[test]
    fn no_fixed_point_reported_not_thrown() {
        // M = d: the detection map is ε^M, strictly below the diagonal.
        let s = scheme(3, 3, 0);
        let est = threshold_estimate(&s, Mode::Detection);
        assert_eq!(est.fixed_point, FixedPoint::NoThreshold);
    }

    #[test]
    fn gain_examples() {
        assert_relative_eq!(supremacy_gain(100).unwrap(), 12.247, max_relative = 1e-4);
        assert_relative_eq!(supremacy_gain(400).unwrap(), 24.495, max_relative = 1e-4);
        assert_relative_eq!(
            supremacy_gain(400).unwrap() / supremacy_gain(100).unwrap(),
            2.0,
            max_relative = 1e-14
        );
        assert!(matches!(supremacy_gain(9), Err(Error::GainOutOfRange { .. })));
    }

    #[test]
    fn iteration_examples() {
        let s = scheme(5, 3, 3);
        assert_eq!(iterate_levels(0.0, &s, Mode::Correction).unwrap(), vec![0.0; 4]);

        // log-ratio approaches t+1 = 2 within 15% by level 3
        let seq = iterate_levels(0.01, &s, Mode::Correction).unwrap();
        let ratio = seq[3].ln() / seq[2].ln();
        assert!((ratio - 2.0).abs() / 2.0 < 0.15, "ratio {ratio}");

        // iterates stay below the closed bound (C^{1/t} ε)^{(t+1)^l}/C^{1/t}
        let c = binomial(5, 2);
        for (l, v) in seq.iter().enumerate() {
            let bound = (c * 0.01f64).powi(2i32.pow(l as u32)) / c;
            assert!(*v <= bound * (1.0 + 1e-9), "level {l}: {v} vs {bound}");
        }
    }
}
