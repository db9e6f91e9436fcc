//! Exact self-avoiding-walk counts on Z³ and the error-chain series built
//! from them.
//!
//! `C_l` counts origin-rooted, direction-distinguished self-avoiding walks
//! of length `l` on the simple cubic lattice (`C_1 = 6`, `C_2 = 30`), so the
//! geometric bound `C_l ≤ (6/5)·5^l` is tight at `l = 1, 2`. The production
//! enumerator is a backtracking DFS over a flat visited grid with the
//! first step pinned to +x by symmetry (`C_l = 6·N_{+x}(l)`), parallelized
//! over fixed-depth prefix subtrees; counts are exact integers, so the
//! reduction order cannot affect results. [`count_saws_naive`] is an
//! independent reference implementation kept deliberately free of both
//! optimizations.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bounds::{binomial, validate_probability, KahanSum};
use crate::error::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Walks longer than this are refused: the DFS tree beyond l = 14 is out of
/// desktop reach.
pub const ENUMERATION_CEILING: usize = 14;

/// Exact walk counts `C_0 ..= C_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SawTable {
    counts: Vec<u64>,
}

impl SawTable {
    /// Wrap raw counts, checking the structural invariants
    /// (`C_0 = 1`, `C_1 = 6`, `C_{l+1} ≤ 5 C_l`, `C_l ≤ (6/5) 5^l`).
    pub fn from_counts(counts: Vec<u64>) -> Result<Self> {
        if counts.is_empty() || counts[0] != 1 {
            return Err(Error::Circuit("walk table must start with C_0 = 1".into()));
        }
        if counts.len() > 1 && counts[1] != 6 {
            return Err(Error::Circuit("walk table must have C_1 = 6".into()));
        }
        for l in 1..counts.len() {
            if counts[l] > 5 * counts[l - 1] && l > 1 {
                return Err(Error::Circuit(format!("C_{l} exceeds 5·C_{}", l - 1)));
            }
        }
        let table = SawTable { counts };
        let report = verify_saw_bound(&table);
        if !report.holds {
            return Err(Error::Circuit(format!(
                "walk counts violate the (6/5)·5^l bound at l = {:?}",
                report.violations
            )));
        }
        Ok(table)
    }

    pub fn max_length(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn count(&self, length: usize) -> Option<u64> {
        self.counts.get(length).copied()
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }
}

/// Count self-avoiding walks up to `max_length` (parallel when enabled).
pub fn count_saws(max_length: usize) -> Result<SawTable> {
    count_impl(max_length, false)
}

/// Single-threaded variant of [`count_saws`]; identical output.
pub fn count_saws_serial(max_length: usize) -> Result<SawTable> {
    count_impl(max_length, true)
}

const DIRECTIONS: [(i32, i32, i32); 6] = [
    (1, 0, 0),
    (-1, 0, 0),
    (0, 1, 0),
    (0, -1, 0),
    (0, 0, 1),
    (0, 0, -1),
];

fn count_impl(max_length: usize, force_serial: bool) -> Result<SawTable> {
    if max_length > ENUMERATION_CEILING {
        return Err(Error::WalkLengthCeiling {
            requested: max_length,
            ceiling: ENUMERATION_CEILING,
        });
    }
    let mut counts = vec![0u64; max_length + 1];
    counts[0] = 1;
    if max_length == 0 {
        return SawTable::from_counts(counts);
    }

    let grid = Grid::new(max_length);
    let deltas = grid.deltas();

    // Subtree with the first step pinned to +x; C_l = 6·N(l) for l ≥ 1.
    let mut sub = vec![0u64; max_length + 1];
    sub[1] = 1;

    // Collect fixed-depth prefixes, tallying the walks they are themselves.
    let prefix_depth = max_length.min(4);
    let mut prefixes: Vec<Vec<usize>> = Vec::new();
    {
        let mut visited = vec![false; grid.cells()];
        let mut walk = vec![grid.origin(), grid.origin().wrapping_add_signed(deltas[0])];
        visited[walk[0]] = true;
        visited[walk[1]] = true;
        collect_prefixes(&mut walk, prefix_depth, &deltas, &mut visited, &mut sub, &mut prefixes);
    }

    // Extend each prefix sequentially; exact integer tallies merge in any
    // order, kept ordered anyway.
    let extend = |prefix: &Vec<usize>| -> Vec<u64> {
        let mut visited = vec![false; grid.cells()];
        for &p in prefix {
            visited[p] = true;
        }
        let mut local = vec![0u64; max_length + 1];
        dfs_count(*prefix.last().unwrap(), prefix.len() - 1, max_length, &deltas, &mut visited, &mut local);
        local
    };

    let partials: Vec<Vec<u64>> = {
        #[cfg(feature = "parallel")]
        {
            if force_serial {
                prefixes.iter().map(extend).collect()
            } else {
                prefixes.par_iter().map(extend).collect()
            }
        }
        #[cfg(not(feature = "parallel"))]
        {
            let _ = force_serial;
            prefixes.iter().map(extend).collect()
        }
    };
    for partial in partials {
        for (s, p) in sub.iter_mut().zip(partial) {
            *s += p;
        }
    }

    for l in 1..=max_length {
        counts[l] = 6 * sub[l];
    }
    SawTable::from_counts(counts)
}

fn collect_prefixes(
    walk: &mut Vec<usize>,
    prefix_depth: usize,
    deltas: &[isize; 6],
    visited: &mut [bool],
    tally: &mut [u64],
    out: &mut Vec<Vec<usize>>,
) {
    let len = walk.len() - 1;
    if len == prefix_depth {
        out.push(walk.clone());
        return;
    }
    for &d in deltas {
        let next = walk.last().unwrap().wrapping_add_signed(d);
        if !visited[next] {
            tally[len + 1] += 1;
            visited[next] = true;
            walk.push(next);
            collect_prefixes(walk, prefix_depth, deltas, visited, tally, out);
            walk.pop();
            visited[next] = false;
        }
    }
}

fn dfs_count(pos: usize, depth: usize, max: usize, deltas: &[isize; 6], visited: &mut [bool], tally: &mut [u64]) {
    if depth >= max {
        return;
    }
    for &d in deltas {
        let next = pos.wrapping_add_signed(d);
        if !visited[next] {
            tally[depth + 1] += 1;
            if depth + 1 < max {
                visited[next] = true;
                dfs_count(next, depth + 1, max, deltas, visited, tally);
                visited[next] = false;
            }
        }
    }
}

struct Grid {
    side: usize,
}

impl Grid {
    fn new(max_length: usize) -> Self {
        Grid { side: 2 * max_length + 3 }
    }

    fn cells(&self) -> usize {
        self.side * self.side * self.side
    }

    fn origin(&self) -> usize {
        let c = self.side / 2;
        (c * self.side + c) * self.side + c
    }

    fn deltas(&self) -> [isize; 6] {
        let s = self.side as isize;
        [1, -1, s, -s, s * s, -(s * s)]
    }
}

/// Reference enumerator: no symmetry reduction, no visited grid, no
/// parallelism. Path membership is a linear scan over the walk so far.
pub fn count_saws_naive(max_length: usize) -> Result<SawTable> {
    if max_length > ENUMERATION_CEILING {
        return Err(Error::WalkLengthCeiling {
            requested: max_length,
            ceiling: ENUMERATION_CEILING,
        });
    }
    let mut counts = vec![0u64; max_length + 1];
    counts[0] = 1;
    let mut path = vec![(0i32, 0i32, 0i32)];
    naive_extend(&mut path, max_length, &mut counts);
    SawTable::from_counts(counts)
}

fn naive_extend(path: &mut Vec<(i32, i32, i32)>, max: usize, counts: &mut [u64]) {
    if path.len() > max {
        return;
    }
    let (x, y, z) = *path.last().unwrap();
    for (dx, dy, dz) in DIRECTIONS {
        let next = (x + dx, y + dy, z + dz);
        if !path.contains(&next) {
            counts[path.len()] += 1;
            path.push(next);
            naive_extend(path, max, counts);
            path.pop();
        }
    }
}

/// Outcome of checking `C_l ≤ (6/5)·5^l` (exact integer comparison).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SawBoundReport {
    pub holds: bool,
    /// Largest `C_l / ((6/5) 5^l)` over the table and where it occurs.
    pub max_ratio: f64,
    pub max_ratio_length: usize,
    pub violations: Vec<usize>,
}

pub fn verify_saw_bound(table: &SawTable) -> SawBoundReport {
    let mut report = SawBoundReport {
        holds: true,
        max_ratio: 0.0,
        max_ratio_length: 0,
        violations: Vec::new(),
    };
    for (l, &c) in table.counts.iter().enumerate() {
        // (6/5)·5^l = 6·5^(l−1) for l ≥ 1; compare 5·C_l against 6·5^l.
        let lhs = 5u128 * c as u128;
        let rhs = 6u128 * 5u128.pow(l as u32);
        if lhs > rhs {
            report.holds = false;
            report.violations.push(l);
        }
        let ratio = lhs as f64 / rhs as f64;
        if ratio > report.max_ratio {
            report.max_ratio = ratio;
            report.max_ratio_length = l;
        }
    }
    report
}

/// The pieces of the long-chain series bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailBound {
    /// `Σ_{l=d}^{L} C_l x^l` over the enumerated table.
    pub partial_sum: f64,
    /// Geometric closure `(6/5) Σ_{l>L} (5x)^l` standing in for the
    /// un-enumerated lengths.
    pub closure_remainder: f64,
    /// `poly_factor · (partial_sum + closure_remainder)`.
    pub value: f64,
}

/// Bound on the weight of connected error chains of length ≥ `min_chain`:
/// `poly · Σ_{l≥d} C_l x^l` with `x = ε/(1−ε)`, closed geometrically past
/// the table. Diverges (error) unless `x < 1/5`.
pub fn topological_tail(eps: f64, min_chain: usize, poly_factor: f64, table: &SawTable) -> Result<TailBound> {
    validate_probability("eps", eps, 0.0, 1.0)?;
    if eps >= 1.0 {
        return Err(Error::InvalidProbability {
            name: "eps",
            value: eps,
            lo: 0.0,
            hi: 1.0,
        });
    }
    if min_chain < 1 {
        return Err(Error::Circuit("min_chain must be at least 1".into()));
    }
    if poly_factor < 0.0 || !poly_factor.is_finite() {
        return Err(Error::InvalidProbability {
            name: "poly_factor",
            value: poly_factor,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    let x = eps / (1.0 - eps);
    if x >= 0.2 {
        return Err(Error::SeriesDiverges { ratio: x, limit: 0.2 });
    }

    let mut partial = KahanSum::default();
    for l in min_chain..=table.max_length() {
        partial.add(table.counts[l] as f64 * x.powi(l as i32));
    }
    let start = min_chain.max(table.max_length() + 1);
    let closure = 1.2 * (5.0 * x).powi(start as i32) / (1.0 - 5.0 * x);

    Ok(TailBound {
        partial_sum: partial.value(),
        closure_remainder: closure,
        value: poly_factor * (partial.value() + closure),
    })
}

/// Externally supplied counts `C'_l` of short chains that are logical near
/// the singular qubits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularCountTable {
    counts: BTreeMap<usize, u64>,
}

impl SingularCountTable {
    pub fn new(counts: BTreeMap<usize, u64>) -> Self {
        SingularCountTable { counts }
    }

    pub fn get(&self, length: usize) -> Option<u64> {
        self.counts.get(&length).copied()
    }

    /// Parse `l,count` lines; `#` comments, blank lines, and an optional
    /// header row are skipped.
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split(',').map(str::trim);
            let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(Error::SingularTableParse(format!("line {}: expected `l,count`", idx + 1)));
            };
            match (a.parse::<usize>(), b.parse::<u64>()) {
                (Ok(l), Ok(c)) => {
                    counts.insert(l, c);
                }
                _ if counts.is_empty() && idx == 0 => {} // header row
                _ => {
                    return Err(Error::SingularTableParse(format!(
                        "line {}: cannot parse `{line}` as l,count",
                        idx + 1
                    )));
                }
            }
        }
        Ok(SingularCountTable { counts })
    }
}

/// Short-chain logical-error bound near a singular qubit:
/// `Σ_{l=1}^{d} C'_l x^l` with `x = ε/(1−ε)`.
pub fn singular_tail(eps: f64, distance: usize, table: &SingularCountTable) -> Result<f64> {
    validate_probability("eps", eps, 0.0, 1.0)?;
    if eps >= 1.0 {
        return Err(Error::InvalidProbability {
            name: "eps",
            value: eps,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let x = eps / (1.0 - eps);
    let mut sum = KahanSum::default();
    for l in 1..=distance {
        let c = table.get(l).ok_or(Error::MissingSingularCount { length: l })?;
        sum.add(c as f64 * x.powi(l as i32));
    }
    Ok(sum.value())
}

/// Single-edge rate ν and correlated-pair rate μ feeding the chain weights.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainWeightParams {
    pub nu: f64,
    pub mu: f64,
}

impl ChainWeightParams {
    pub fn new(nu: f64, mu: f64) -> Result<Self> {
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
        Ok(ChainWeightParams { nu, mu })
    }

    fn ratios(&self) -> (f64, f64) {
        (self.nu / (1.0 - self.nu), self.mu / (1.0 - self.mu))
    }
}

/// Weight of one length-`l` chain with correlated pairs counted explicitly:
/// `Σ_{k=0}^{⌊l/2⌋} C(⌊l/2⌋,k) 2^k (ν/(1−ν))^{l−k} (μ/(1−μ))^k`.
///
/// The `k` correlated errors sit on the ⌊l/2⌋ odd-numbered edges, each able
/// to drag one of its two even-numbered neighbours along (the factor `2^k`).
pub fn chain_weight_exact(length: usize, params: &ChainWeightParams) -> f64 {
    let (x, y) = params.ratios();
    let half = length / 2;
    let mut sum = KahanSum::default();
    for k in 0..=half {
        sum.add(binomial(half, k) * 2.0f64.powi(k as i32) * x.powi((length - k) as i32) * y.powi(k as i32));
    }
    sum.value()
}

/// Closed form of the same weight:
/// `(ν/(1−ν))^{l−⌊l/2⌋} [(ν/(1−ν)) + 2μ/(1−μ)]^{⌊l/2⌋}`
/// (equal to [`chain_weight_exact`] by the binomial theorem).
pub fn chain_weight_bound(length: usize, params: &ChainWeightParams) -> f64 {
    let (x, y) = params.ratios();
    let half = length / 2;
    x.powi((length - half) as i32) * (x + 2.0 * y).powi(half as i32)
}
