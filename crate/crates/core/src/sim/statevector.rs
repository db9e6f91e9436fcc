//! Dense statevector execution of the ideal circuit (and of single fault
//! paths, for cross-checks).
//!
//! Measurements branch: deterministic outcomes continue in place, genuinely
//! random ones split the run. Small circuits only: the state is dense and
//! every random measurement doubles the branch count.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sim::circuit::{Basis, CliffordCircuit, Gate, Location};
use crate::sim::frame::{FaultPath, PauliKind, PauliOp};

const MAX_BRANCHES: usize = 4096;
const DET_TOL: f64 = 1e-9;

/// Distribution over port values (full x|y|z packing).
#[derive(Debug, Clone, PartialEq)]
pub struct BranchedRun {
    pub port_distribution: Vec<f64>,
    pub branch_count: usize,
}

/// The noiseless run, postselection-ready: every syndrome port is
/// deterministically 0; returns the (x, y) port-value distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealRun {
    pub xy_distribution: Vec<f64>,
    pub branch_count: usize,
}

pub fn ideal_port_distribution(circuit: &CliffordCircuit) -> Result<IdealRun> {
    let layout = circuit.ports();
    let run = port_value_distribution(circuit, &FaultPath::empty())?;
    let xy_bits = layout.xy_bits();
    let mut xy = vec![0.0; 1 << xy_bits];
    let mut z_mass = 0.0;
    for (pattern, &p) in run.port_distribution.iter().enumerate() {
        let (xy_part, z_part) = layout.split(pattern as u32);
        if z_part != 0 {
            z_mass += p;
        } else {
            xy[xy_part as usize] += p;
        }
    }
    if z_mass > DET_TOL {
        return Err(Error::NotPostselectable(format!(
            "ideal run puts probability {z_mass:.3e} on nonzero syndrome ports"
        )));
    }
    // Fold rounding dust back into a normalized distribution.
    let total: f64 = xy.iter().sum();
    for p in &mut xy {
        *p /= total;
    }
    Ok(IdealRun {
        xy_distribution: xy,
        branch_count: run.branch_count,
    })
}

/// Exact port-value distribution with the given faults inserted as real
/// Pauli operators.
pub fn port_value_distribution(circuit: &CliffordCircuit, path: &FaultPath) -> Result<BranchedRun> {
    circuit.validate()?;
    let layout = circuit.ports();
    let mut dist = vec![0.0; 1 << layout.total_bits()];
    let mut state = vec![Complex64::new(0.0, 0.0); 1 << circuit.qubit_count()];
    state[0] = Complex64::new(1.0, 0.0);

    let mut branches = 0usize;
    let mut stack: Vec<(usize, Vec<Complex64>, f64, u32, usize)> = vec![(0, state, 1.0, 0, 0)];
    while let Some((loc_idx, mut state, prob, outcomes, meas_idx)) = stack.pop() {
        let mut meas_idx = meas_idx;
        let mut outcomes = outcomes;
        let mut done = true;
        let mut i = loc_idx;
        while i < circuit.locations().len() {
            let fault = path
                .faults()
                .iter()
                .find(|(loc, _)| *loc == i)
                .map(|(_, pauli)| pauli);
            match &circuit.locations()[i] {
                Location::Prepare { qubit, basis } => {
                    if *basis == Basis::X {
                        apply_h(&mut state, *qubit);
                    }
                    if let Some(p) = fault {
                        apply_pauli(&mut state, p);
                    }
                }
                Location::Gate(g) => {
                    apply_gate(&mut state, g);
                    if let Some(p) = fault {
                        apply_pauli(&mut state, p);
                    }
                }
                Location::Measure { qubit, basis, .. } => {
                    if let Some(p) = fault {
                        apply_pauli(&mut state, p);
                    }
                    if *basis == Basis::X {
                        apply_h(&mut state, *qubit);
                    }
                    let p0 = prob_zero(&state, *qubit);
                    if p0 > 1.0 - DET_TOL {
                        collapse(&mut state, *qubit, false, p0);
                    } else if p0 < DET_TOL {
                        collapse(&mut state, *qubit, true, 1.0 - p0);
                        outcomes |= 1 << meas_idx;
                    } else {
                        // Random outcome: push the 1-branch, continue with 0.
                        let mut one = state.clone();
                        collapse(&mut one, *qubit, true, 1.0 - p0);
                        stack.push((i + 1, one, prob * (1.0 - p0), outcomes | 1 << meas_idx, meas_idx + 1));
                        if stack.len() + branches > MAX_BRANCHES {
                            return Err(Error::ResourceLimit(format!(
                                "ideal run branches beyond {MAX_BRANCHES}"
                            )));
                        }
                        collapse(&mut state, *qubit, false, p0);
                        let scaled = prob * p0;
                        stack.push((i + 1, state, scaled, outcomes, meas_idx + 1));
                        done = false;
                        break;
                    }
                    meas_idx += 1;
                }
            }
            i += 1;
        }
        if done {
            branches += 1;
            dist[layout.values(outcomes) as usize] += prob;
        }
    }
    Ok(BranchedRun {
        port_distribution: dist,
        branch_count: branches,
    })
}

fn apply_gate(state: &mut [Complex64], gate: &Gate) {
    match *gate {
        Gate::Identity(_) => {}
        Gate::H(q) => apply_h(state, q),
        Gate::S(q) => {
            let b = 1usize << q;
            for (i, amp) in state.iter_mut().enumerate() {
                if i & b != 0 {
                    *amp *= Complex64::i();
                }
            }
        }
        Gate::Cnot(c, t) => {
            let (bc, bt) = (1usize << c, 1usize << t);
            for i in 0..state.len() {
                if i & bc != 0 && i & bt == 0 {
                    state.swap(i, i | bt);
                }
            }
        }
        Gate::Cz(a, b) => {
            let (ba, bb) = (1usize << a, 1usize << b);
            for (i, amp) in state.iter_mut().enumerate() {
                if i & ba != 0 && i & bb != 0 {
                    *amp = -*amp;
                }
            }
        }
    }
}

fn apply_h(state: &mut [Complex64], qubit: usize) {
    let b = 1usize << qubit;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..state.len() {
        if i & b == 0 {
            let (a0, a1) = (state[i], state[i | b]);
            state[i] = (a0 + a1) * s;
            state[i | b] = (a0 - a1) * s;
        }
    }
}

fn apply_pauli(state: &mut [Complex64], pauli: &PauliOp) {
    for &(q, kind) in pauli.factors() {
        let b = 1usize << q;
        match kind {
            PauliKind::X => {
                for i in 0..state.len() {
                    if i & b == 0 {
                        state.swap(i, i | b);
                    }
                }
            }
            PauliKind::Z => {
                for (i, amp) in state.iter_mut().enumerate() {
                    if i & b != 0 {
                        *amp = -*amp;
                    }
                }
            }
            PauliKind::Y => {
                for i in 0..state.len() {
                    if i & b == 0 {
                        let (a0, a1) = (state[i], state[i | b]);
                        state[i] = -Complex64::i() * a1;
                        state[i | b] = Complex64::i() * a0;
                    }
                }
            }
        }
    }
}

fn prob_zero(state: &[Complex64], qubit: usize) -> f64 {
    let b = 1usize << qubit;
    let p0: f64 = state
        .iter()
        .enumerate()
        .filter(|(i, _)| i & b == 0)
        .map(|(_, a)| a.norm_sqr())
        .sum();
    let total: f64 = state.iter().map(Complex64::norm_sqr).sum();
    p0 / total
}

fn collapse(state: &mut [Complex64], qubit: usize, outcome_one: bool, keep_prob: f64) {
    let b = 1usize << qubit;
    let scale = 1.0 / keep_prob.sqrt();
    for (i, amp) in state.iter_mut().enumerate() {
        let in_branch = (i & b != 0) == outcome_one;
        *amp = if in_branch { *amp * scale } else { Complex64::new(0.0, 0.0) };
    }
}
