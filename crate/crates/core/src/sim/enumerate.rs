//! Exact fault-path enumeration.
//!
//! Every path's flip pattern is the XOR of its single-fault patterns
//! (propagation is linear), so the enumerator precomputes one port-flip
//! pattern per (location, option) and walks the path space with incremental
//! weights. Parallel runs split a fixed prefix/task list into a fixed number
//! of contiguous chunks and merge chunk tallies in order, so results are
//! bit-identical for any thread count, and identical to the serial path.

use crate::bounds::binomial;
use crate::error::{Error, Result};
use crate::sim::circuit::{CliffordCircuit, PortLayout};
use crate::sim::frame::{propagate_path, FaultPath, PauliOp};
use crate::sim::noise::StochasticPauliNoise;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Knobs for [`crate::sim::exact_distributions`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnumOptions {
    /// Truncate to paths of at most this many faults; `None` enumerates the
    /// full path space (subject to the budget).
    pub weight_cutoff: Option<usize>,
    /// Refuse enumerations beyond this many paths.
    pub path_budget: u64,
    /// Run single-threaded even with the `parallel` feature on.
    pub force_serial: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            weight_cutoff: None,
            path_budget: 10_000_000,
            force_serial: false,
        }
    }
}

/// Tallied path masses per full port-flip pattern.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct FlipMasses {
    pub masses: Vec<f64>,
    pub paths: u64,
    pub covered_weight: f64,
    /// Analytic bound on the weight of paths beyond the cutoff (0 when the
    /// enumeration is exhaustive).
    pub remainder: f64,
    pub cutoff: Option<usize>,
}

struct Option_ {
    pattern: u32,
    multiplier: f64,
}

struct Prepared {
    /// Options per noisy location, location order.
    options: Vec<Vec<Option_>>,
    base_weight: f64,
    pattern_bits: usize,
}

fn prepare(circuit: &CliffordCircuit, noise: &StochasticPauliNoise, layout: &PortLayout) -> Result<Prepared> {
    let mut options = Vec::new();
    let mut base_weight = 1.0;
    for loc in 0..noise.len() {
        let location_noise = noise.location(loc);
        let eps = location_noise.eps();
        base_weight *= 1.0 - eps;
        if location_noise.options().is_empty() {
            continue;
        }
        let mut opts = Vec::with_capacity(location_noise.options().len());
        for (pauli, p) in location_noise.options() {
            let path = FaultPath::new(vec![(loc, pauli.clone())]);
            let meas_flips = propagate_path(circuit, &path)?;
            opts.push(Option_ {
                pattern: layout.pattern(meas_flips),
                multiplier: p / (1.0 - eps),
            });
        }
        options.push(opts);
    }
    Ok(Prepared {
        options,
        base_weight,
        pattern_bits: layout.total_bits(),
    })
}

pub(crate) fn enumerate_flips(
    circuit: &CliffordCircuit,
    noise: &StochasticPauliNoise,
    layout: &PortLayout,
    opts: &EnumOptions,
) -> Result<FlipMasses> {
    let prep = prepare(circuit, noise, layout)?;
    match opts.weight_cutoff {
        None => enumerate_full(&prep, opts),
        Some(cutoff) => enumerate_cutoff(&prep, noise, cutoff, opts),
    }
}

const CHUNKS: usize = 64;

fn enumerate_full(prep: &Prepared, opts: &EnumOptions) -> Result<FlipMasses> {
    let mut total_paths = 1.0f64;
    for o in &prep.options {
        total_paths *= 1.0 + o.len() as f64;
    }
    if total_paths > opts.path_budget as f64 {
        return Err(Error::PathBudget {
            paths: total_paths,
            budget: opts.path_budget,
        });
    }

    // Expand a prefix list over the leading locations until there are
    // enough independent subtrees to spread over chunks.
    let mut split_depth = 0;
    let mut prefix_count = 1usize;
    while split_depth < prep.options.len() && prefix_count < 4 * CHUNKS {
        prefix_count *= 1 + prep.options[split_depth].len();
        split_depth += 1;
    }
    let mut prefixes = Vec::with_capacity(prefix_count);
    build_prefixes(prep, 0, split_depth, prep.base_weight, 0, &mut prefixes);

    let size = 1usize << prep.pattern_bits;
    let tally_chunk = |chunk: &[(f64, u32)]| -> (Vec<f64>, u64) {
        let mut masses = vec![0.0; size];
        let mut paths = 0u64;
        for &(weight, flips) in chunk {
            descend_full(prep, split_depth, weight, flips, &mut masses, &mut paths);
        }
        (masses, paths)
    };
    let partials = run_chunked(&prefixes, tally_chunk, opts.force_serial);
    Ok(merge(partials, None, 0.0))
}

fn build_prefixes(prep: &Prepared, idx: usize, depth: usize, weight: f64, flips: u32, out: &mut Vec<(f64, u32)>) {
    if idx == depth {
        out.push((weight, flips));
        return;
    }
    build_prefixes(prep, idx + 1, depth, weight, flips, out);
    for o in &prep.options[idx] {
        build_prefixes(prep, idx + 1, depth, weight * o.multiplier, flips ^ o.pattern, out);
    }
}

fn descend_full(prep: &Prepared, idx: usize, weight: f64, flips: u32, masses: &mut [f64], paths: &mut u64) {
    if idx == prep.options.len() {
        masses[flips as usize] += weight;
        *paths += 1;
        return;
    }
    descend_full(prep, idx + 1, weight, flips, masses, paths);
    for o in &prep.options[idx] {
        descend_full(prep, idx + 1, weight * o.multiplier, flips ^ o.pattern, masses, paths);
    }
}

fn enumerate_cutoff(
    prep: &Prepared,
    noise: &StochasticPauliNoise,
    cutoff: usize,
    opts: &EnumOptions,
) -> Result<FlipMasses> {
    // Exact path count within the cutoff, by dynamic programming.
    let mut ways = vec![0.0f64; cutoff + 1];
    ways[0] = 1.0;
    for o in &prep.options {
        for r in (1..=cutoff).rev() {
            ways[r] += ways[r - 1] * o.len() as f64;
        }
    }
    let total: f64 = ways.iter().sum();
    if total > opts.path_budget as f64 {
        return Err(Error::PathBudget {
            paths: total,
            budget: opts.path_budget,
        });
    }

    // Tasks: one per (first fault location, option); the empty path rides
    // with the first chunk via a sentinel.
    let mut tasks: Vec<(usize, usize)> = Vec::new();
    for (j, o) in prep.options.iter().enumerate() {
        for k in 0..o.len() {
            tasks.push((j, k));
        }
    }

    let size = 1usize << prep.pattern_bits;
    let tally_chunk = |chunk: &[(usize, usize)]| -> (Vec<f64>, u64) {
        let mut masses = vec![0.0; size];
        let mut paths = 0u64;
        for &(j, k) in chunk {
            let o = &prep.options[j][k];
            descend_cutoff(
                prep,
                j + 1,
                cutoff - 1,
                prep.base_weight * o.multiplier,
                o.pattern,
                &mut masses,
                &mut paths,
            );
        }
        (masses, paths)
    };
    let partials = run_chunked(&tasks, tally_chunk, opts.force_serial);

    let remainder = truncation_remainder(noise, cutoff);
    let mut out = merge(partials, Some(cutoff), remainder);
    // The empty path.
    out.masses[0] += prep.base_weight;
    out.covered_weight += prep.base_weight;
    out.paths += 1;
    Ok(out)
}

fn descend_cutoff(
    prep: &Prepared,
    start: usize,
    remaining: usize,
    weight: f64,
    flips: u32,
    masses: &mut [f64],
    paths: &mut u64,
) {
    masses[flips as usize] += weight;
    *paths += 1;
    if remaining == 0 {
        return;
    }
    for j in start..prep.options.len() {
        for o in &prep.options[j] {
            descend_cutoff(prep, j + 1, remaining - 1, weight * o.multiplier, flips ^ o.pattern, masses, paths);
        }
    }
}

/// `Σ_{r>cutoff} C(S, r) ε_max^r (1−ε_min)^{S−r}` over the noisy locations:
/// every un-enumerated path's weight is dominated by a term of this sum.
pub(crate) fn truncation_remainder(noise: &StochasticPauliNoise, cutoff: usize) -> f64 {
    let eps: Vec<f64> = noise.eps_list().into_iter().filter(|&e| e > 0.0).collect();
    let s = eps.len();
    if cutoff >= s {
        return 0.0;
    }
    let eps_max = eps.iter().cloned().fold(0.0, f64::max);
    let eps_min = eps.iter().cloned().fold(1.0, f64::min);
    (cutoff + 1..=s)
        .map(|r| binomial(s, r) * eps_max.powi(r as i32) * (1.0 - eps_min).powi((s - r) as i32))
        .sum()
}

fn run_chunked<T: Sync, F>(items: &[T], tally: F, force_serial: bool) -> Vec<(Vec<f64>, u64)>
where
    F: Fn(&[T]) -> (Vec<f64>, u64) + Sync,
{
    let chunk_size = items.len().div_ceil(CHUNKS).max(1);
    let chunks: Vec<&[T]> = items.chunks(chunk_size).collect();
    #[cfg(feature = "parallel")]
    {
        if !force_serial {
            return chunks.par_iter().map(|c| tally(c)).collect();
        }
    }
    let _ = force_serial;
    chunks.iter().map(|c| tally(c)).collect()
}

fn merge(partials: Vec<(Vec<f64>, u64)>, cutoff: Option<usize>, remainder: f64) -> FlipMasses {
    let size = partials.first().map_or(1, |(m, _)| m.len());
    let mut masses = vec![0.0; size];
    let mut paths = 0u64;
    for (partial, count) in partials {
        for (m, p) in masses.iter_mut().zip(partial) {
            *m += p;
        }
        paths += count;
    }
    let covered_weight = masses.iter().sum();
    FlipMasses {
        masses,
        paths,
        covered_weight,
        remainder,
        cutoff,
    }
}

/// Enumerate all fault paths of exactly `weight` faults, invoking `visit`
/// with each. Used by the sparse-set precondition search.
pub(crate) fn for_each_path_of_weight<F>(
    noise: &StochasticPauliNoise,
    weight: usize,
    visit: &mut F,
) -> Result<()>
where
    F: FnMut(&FaultPath) -> Result<()>,
{
    let noisy: Vec<usize> = (0..noise.len())
        .filter(|&i| !noise.location(i).options().is_empty())
        .collect();
    let mut stack: Vec<(usize, PauliOp)> = Vec::with_capacity(weight);
    recurse_weight(noise, &noisy, 0, weight, &mut stack, visit)
}

fn recurse_weight<F>(
    noise: &StochasticPauliNoise,
    noisy: &[usize],
    start: usize,
    remaining: usize,
    stack: &mut Vec<(usize, PauliOp)>,
    visit: &mut F,
) -> Result<()>
where
    F: FnMut(&FaultPath) -> Result<()>,
{
    if remaining == 0 {
        return visit(&FaultPath::new(stack.clone()));
    }
    for (pos, &loc) in noisy.iter().enumerate().skip(start) {
        for (pauli, _) in noise.location(loc).options() {
            stack.push((loc, pauli.clone()));
            recurse_weight(noise, noisy, pos + 1, remaining - 1, stack, visit)?;
            stack.pop();
        }
    }
    Ok(())
}
