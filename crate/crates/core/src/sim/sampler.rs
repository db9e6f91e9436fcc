//! Direct Monte Carlo sampling of fault paths.
//!
//! A second, deliberately independent implementation of noisy execution:
//! faults are drawn location by location and pushed through a frame written
//! separately from `frame.rs`, so enumeration and sampling cross-check each
//! other. Sharded ChaCha streams and integer tallies make runs reproducible
//! for a fixed `(seed, shots)` at any thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::sim::circuit::{Basis, CliffordCircuit, Gate, Location};
use crate::sim::frame::{PauliKind, PauliOp};
use crate::sim::noise::StochasticPauliNoise;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McOptions {
    pub shots: u64,
    pub seed: u64,
    pub force_serial: bool,
}

impl McOptions {
    pub fn new(shots: u64, seed: u64) -> Self {
        McOptions {
            shots,
            seed,
            force_serial: false,
        }
    }
}

/// Tallied shots per full port-flip pattern (x low bits, then y, then z).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McReport {
    pub counts: Vec<u64>,
    pub shots: u64,
    pub seed: u64,
}

impl McReport {
    /// Estimated probability of a pattern and its standard error.
    pub fn estimate(&self, pattern: usize) -> (f64, f64) {
        let p = self.counts[pattern] as f64 / self.shots as f64;
        (p, (p * (1.0 - p) / self.shots as f64).sqrt())
    }

    /// Estimated probability that the z part is zero.
    pub fn q_postselect(&self, xy_bits: usize) -> f64 {
        let mask = (1usize << xy_bits) - 1;
        let hits: u64 = self
            .counts
            .iter()
            .enumerate()
            .filter(|(pattern, _)| pattern & !mask == 0)
            .map(|(_, &c)| c)
            .sum();
        hits as f64 / self.shots as f64
    }
}

const SHARD_SIZE: u64 = 1 << 14;

pub fn mc_sample(circuit: &CliffordCircuit, noise: &StochasticPauliNoise, opts: McOptions) -> Result<McReport> {
    circuit.validate()?;
    noise.validate(circuit)?;
    let layout = circuit.ports();
    let size = 1usize << layout.total_bits();

    let shard_count = opts.shots.div_ceil(SHARD_SIZE).max(1);
    let run_shard = |shard: u64| -> Vec<u64> {
        let lo = shard * SHARD_SIZE;
        let hi = (lo + SHARD_SIZE).min(opts.shots);
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(shard);
        let mut counts = vec![0u64; size];
        let mut frame = ShadowFrame::new(circuit.qubit_count());
        for _ in lo..hi {
            frame.clear();
            let flips = run_once(circuit, noise, &mut frame, &mut rng);
            counts[layout.pattern(flips) as usize] += 1;
        }
        counts
    };

    let shard_counts: Vec<Vec<u64>> = {
        #[cfg(feature = "parallel")]
        {
            if opts.force_serial {
                (0..shard_count).map(run_shard).collect()
            } else {
                (0..shard_count).into_par_iter().map(run_shard).collect()
            }
        }
        #[cfg(not(feature = "parallel"))]
        {
            (0..shard_count).map(run_shard).collect()
        }
    };

    let mut counts = vec![0u64; size];
    for shard in shard_counts {
        for (t, c) in counts.iter_mut().zip(shard) {
            *t += c;
        }
    }
    Ok(McReport {
        counts,
        shots: opts.shots,
        seed: opts.seed,
    })
}

fn run_once(
    circuit: &CliffordCircuit,
    noise: &StochasticPauliNoise,
    frame: &mut ShadowFrame,
    rng: &mut ChaCha8Rng,
) -> u32 {
    let mut flips = 0u32;
    let mut meas_idx = 0;
    for (i, location) in circuit.locations().iter().enumerate() {
        match location {
            Location::Prepare { qubit, .. } => {
                frame.x[*qubit] = false;
                frame.z[*qubit] = false;
                sample_fault(noise, i, frame, rng);
            }
            Location::Gate(g) => {
                frame.conjugate(g);
                sample_fault(noise, i, frame, rng);
            }
            Location::Measure { qubit, basis, .. } => {
                sample_fault(noise, i, frame, rng);
                let flipped = match basis {
                    Basis::Z => frame.x[*qubit],
                    Basis::X => frame.z[*qubit],
                };
                flips |= (flipped as u32) << meas_idx;
                meas_idx += 1;
            }
        }
    }
    flips
}

fn sample_fault(noise: &StochasticPauliNoise, location: usize, frame: &mut ShadowFrame, rng: &mut ChaCha8Rng) {
    let options = noise.location(location).options();
    if options.is_empty() {
        return;
    }
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for (pauli, p) in options {
        acc += p;
        if u < acc {
            frame.apply(pauli);
            return;
        }
    }
}

/// Frame for the sampler, kept separate from `frame.rs` on purpose: the two
/// implementations check each other in the cross-validation tests.
struct ShadowFrame {
    x: Vec<bool>,
    z: Vec<bool>,
}

impl ShadowFrame {
    fn new(qubits: usize) -> Self {
        ShadowFrame {
            x: vec![false; qubits],
            z: vec![false; qubits],
        }
    }

    fn clear(&mut self) {
        self.x.fill(false);
        self.z.fill(false);
    }

    fn apply(&mut self, pauli: &PauliOp) {
        for &(q, kind) in pauli.factors() {
            match kind {
                PauliKind::X => self.x[q] ^= true,
                PauliKind::Z => self.z[q] ^= true,
                PauliKind::Y => {
                    self.x[q] ^= true;
                    self.z[q] ^= true;
                }
            }
        }
    }

    fn conjugate(&mut self, gate: &Gate) {
        match *gate {
            Gate::Identity(_) => {}
            Gate::H(q) => std::mem::swap(&mut self.x[q], &mut self.z[q]),
            Gate::S(q) => self.z[q] ^= self.x[q],
            Gate::Cnot(c, t) => {
                let xc = self.x[c];
                self.x[t] ^= xc;
                let zt = self.z[t];
                self.z[c] ^= zt;
            }
            Gate::Cz(a, b) => {
                self.z[b] ^= self.x[a];
                self.z[a] ^= self.x[b];
            }
        }
    }
}
