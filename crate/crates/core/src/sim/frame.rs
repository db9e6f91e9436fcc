//! Pauli-frame propagation.
//!
//! Stochastic Pauli noise through a Clifford circuit is exactly a mixture of
//! Pauli frames, so a fault path maps deterministically to a set of flipped
//! measurement outcomes: push each inserted Pauli through the remaining
//! gates by conjugation and read off anticommutation at the measurements.
//! Convention: a gate's noise acts after the gate (`N_k U_k`), a
//! preparation's flip after the preparation, a measurement's flip just
//! before the readout.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sim::circuit::{Basis, CliffordCircuit, Gate, Location};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PauliKind {
    X,
    Y,
    Z,
}

impl PauliKind {
    fn bits(self) -> (bool, bool) {
        match self {
            PauliKind::X => (true, false),
            PauliKind::Y => (true, true),
            PauliKind::Z => (false, true),
        }
    }
}

/// A non-identity Pauli on one or two qubits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PauliOp {
    factors: Vec<(usize, PauliKind)>,
}

impl PauliOp {
    pub fn single(qubit: usize, kind: PauliKind) -> Self {
        PauliOp {
            factors: vec![(qubit, kind)],
        }
    }

    pub fn two(q0: usize, k0: PauliKind, q1: usize, k1: PauliKind) -> Self {
        let mut factors = vec![(q0, k0), (q1, k1)];
        factors.sort_by_key(|&(q, _)| q);
        PauliOp { factors }
    }

    pub fn factors(&self) -> &[(usize, PauliKind)] {
        &self.factors
    }

    pub fn max_qubit(&self) -> usize {
        self.factors.iter().map(|&(q, _)| q).max().unwrap_or(0)
    }

    pub fn acts_within(&self, a: usize, b: Option<usize>) -> bool {
        self.factors.iter().all(|&(q, _)| q == a || Some(q) == b)
    }
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (q, k)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{k:?}{q}")?;
        }
        Ok(())
    }
}

/// A fault assignment: one chosen Pauli at each of a set of locations,
/// sorted by location index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaultPath {
    faults: Vec<(usize, PauliOp)>,
}

impl FaultPath {
    pub fn empty() -> Self {
        FaultPath { faults: Vec::new() }
    }

    pub fn new(mut faults: Vec<(usize, PauliOp)>) -> Self {
        faults.sort_by_key(|&(loc, _)| loc);
        FaultPath { faults }
    }

    pub fn weight(&self) -> usize {
        self.faults.len()
    }

    pub fn faults(&self) -> &[(usize, PauliOp)] {
        &self.faults
    }
}

impl fmt::Display for FaultPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.faults.is_empty() {
            return write!(f, "(no faults)");
        }
        for (i, (loc, p)) in self.faults.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "loc {loc}: {p}")?;
        }
        Ok(())
    }
}

/// Accumulated Pauli error as X/Z bit masks over qubits.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PauliFrame {
    pub x: u32,
    pub z: u32,
}

impl PauliFrame {
    pub fn apply_pauli(&mut self, pauli: &PauliOp) {
        for &(q, kind) in pauli.factors() {
            let (bx, bz) = kind.bits();
            self.x ^= (bx as u32) << q;
            self.z ^= (bz as u32) << q;
        }
    }

    /// Conjugate the frame by a Clifford gate (applied after the error).
    pub fn apply_gate(&mut self, gate: &Gate) {
        match *gate {
            Gate::Identity(_) => {}
            Gate::H(q) => {
                let b = 1u32 << q;
                let x = self.x & b;
                let z = self.z & b;
                self.x = (self.x & !b) | z;
                self.z = (self.z & !b) | x;
            }
            Gate::S(q) => {
                // X -> Y picks up a Z component; Z unchanged.
                let b = 1u32 << q;
                self.z ^= self.x & b;
            }
            Gate::Cnot(c, t) => {
                // X_c -> X_c X_t, Z_t -> Z_c Z_t
                self.x ^= ((self.x >> c) & 1) << t;
                self.z ^= ((self.z >> t) & 1) << c;
            }
            Gate::Cz(a, b) => {
                // X_a -> X_a Z_b, X_b -> X_b Z_a
                self.z ^= ((self.x >> a) & 1) << b;
                self.z ^= ((self.x >> b) & 1) << a;
            }
        }
    }

    /// Reset the frame on a freshly prepared qubit.
    pub fn reset_qubit(&mut self, qubit: usize) {
        let b = !(1u32 << qubit);
        self.x &= b;
        self.z &= b;
    }

    /// Does the frame flip a measurement of `qubit` in `basis`?
    pub fn flips_measurement(&self, qubit: usize, basis: Basis) -> bool {
        match basis {
            Basis::Z => self.x >> qubit & 1 == 1,
            Basis::X => self.z >> qubit & 1 == 1,
        }
    }
}

/// Propagate a fault path through the circuit.
///
/// Returns the mask of flipped measurement outcomes (bit `i` for the `i`-th
/// measurement in circuit order) relative to the noiseless run.
pub fn propagate_path(circuit: &CliffordCircuit, path: &FaultPath) -> Result<u32> {
    for (loc, pauli) in path.faults() {
        let Some(location) = circuit.locations().get(*loc) else {
            return Err(Error::Circuit(format!("fault path references location {loc}")));
        };
        let (a, b) = location.support();
        if !pauli.acts_within(a, b) {
            return Err(Error::NoiseSpec(format!(
                "fault {pauli} at location {loc} acts outside the location's support"
            )));
        }
    }

    let mut frame = PauliFrame::default();
    let mut flips = 0u32;
    let mut meas_idx = 0usize;
    let mut faults = path.faults().iter().peekable();

    for (i, location) in circuit.locations().iter().enumerate() {
        let fault = match faults.peek() {
            Some((loc, pauli)) if *loc == i => {
                faults.next();
                Some(pauli)
            }
            _ => None,
        };
        match location {
            Location::Prepare { qubit, .. } => {
                frame.reset_qubit(*qubit);
                if let Some(p) = fault {
                    frame.apply_pauli(p);
                }
            }
            Location::Gate(g) => {
                frame.apply_gate(g);
                if let Some(p) = fault {
                    frame.apply_pauli(p);
                }
            }
            Location::Measure { qubit, basis, .. } => {
                if let Some(p) = fault {
                    frame.apply_pauli(p);
                }
                flips |= (frame.flips_measurement(*qubit, *basis) as u32) << meas_idx;
                meas_idx += 1;
            }
        }
    }
    if faults.next().is_some() {
        return Err(Error::NoiseSpec("fault path has duplicate locations".into()));
    }
    Ok(flips)
}
