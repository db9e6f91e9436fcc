//! Bisection root finding on a verified bracket.

use serde::Serialize;

use crate::error::{Error, Result};

/// Closed interval known to contain the solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveMethod {
    ClosedForm,
    Bisection,
}

/// A solved threshold with enough context to audit it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdResult {
    pub value: f64,
    pub method: SolveMethod,
    /// Objective value at `value`.
    pub residual: f64,
    pub bracket: Bracket,
}

impl ThresholdResult {
    pub fn closed_form(value: f64) -> Self {
        ThresholdResult {
            value,
            method: SolveMethod::ClosedForm,
            residual: 0.0,
            bracket: Bracket { lo: value, hi: value },
        }
    }
}

/// Bisect `f` on `[lo, hi]`, which must bracket a sign change.
///
/// Stops when the interval is narrower than `tol` (absolute). Returns the
/// midpoint of the final interval together with residual and bracket.
pub fn bisect<F>(mut lo: f64, mut hi: f64, tol: f64, what: &'static str, f: F) -> Result<ThresholdResult>
where
    F: Fn(f64) -> f64,
{
    let flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(solved(lo, 0.0, lo, hi));
    }
    if fhi == 0.0 {
        return Ok(solved(hi, 0.0, lo, hi));
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NoBracket { what, lo, hi });
    }

    let mut flo = flo;
    // 200 halvings exhaust f64 resolution long before this runs out.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo < tol || mid == lo || mid == hi {
            return Ok(solved(mid, f(mid), lo, hi));
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return Ok(solved(mid, 0.0, lo, hi));
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    let mid = 0.5 * (lo + hi);
    Ok(solved(mid, f(mid), lo, hi))
}

/// Like [`bisect`] but with a relative interval tolerance.
pub fn bisect_relative<F>(lo: f64, hi: f64, rel_tol: f64, what: &'static str, f: F) -> Result<ThresholdResult>
where
    F: Fn(f64) -> f64,
{
    let scale = hi.abs().max(lo.abs()).max(f64::MIN_POSITIVE);
    bisect(lo, hi, rel_tol * scale, what, f)
}

/// Check that `f` is nondecreasing on `n` grid points over `[lo, hi]`.
///
/// Used before bisection when the solver contract demands a monotone
/// objective; a small negative slack absorbs floating-point jitter.
pub fn verify_nondecreasing<F>(lo: f64, hi: f64, n: usize, f: F) -> Result<()>
where
    F: Fn(f64) -> f64,
{
    let mut prev = f(lo);
    for i in 1..=n {
        let x = lo + (hi - lo) * (i as f64) / (n as f64);
        let y = f(x);
        if y < prev - 1e-12 {
            return Err(Error::NotMonotone { lo, hi, at: x });
        }
        prev = y;
    }
    Ok(())
}

fn solved(value: f64, residual: f64, lo: f64, hi: f64) -> ThresholdResult {
    ThresholdResult {
        value,
        method: SolveMethod::Bisection,
        residual,
        bracket: Bracket { lo, hi },
    }
}
