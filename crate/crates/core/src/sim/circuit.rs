//! Tiny Clifford error-detecting circuits as ordered location lists.
//!
//! A location is a preparation, a gate from {I, H, S, CNOT, CZ}, or a
//! single-qubit measurement in the Z or X basis. Measurements may carry a
//! port tag directly, and classical parity ports may combine several
//! measurement outcomes into one reported bit (parity post-processing is
//! noise-free). Ports are grouped into the output register `x`, the
//! postselection register `y`, and the syndrome register `z`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Hard cap on qubits (frames are u32 bit masks; the ideal-run oracle holds
/// a dense statevector).
pub const MAX_QUBITS: usize = 16;
/// Hard cap on measurements (flip masks are u32).
pub const MAX_MEASUREMENTS: usize = 32;
/// Hard cap on total ports (outcome tallies are dense over 2^ports).
pub const MAX_PORTS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Z,
    X,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Gate {
    Identity(usize),
    H(usize),
    S(usize),
    Cnot(usize, usize),
    Cz(usize, usize),
}

impl Gate {
    pub fn support(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::Identity(q) | Gate::H(q) | Gate::S(q) => (q, None),
            Gate::Cnot(a, b) | Gate::Cz(a, b) => (a, Some(b)),
        }
    }

    pub fn involves(&self, qubit: usize) -> bool {
        let (a, b) = self.support();
        a == qubit || b == Some(qubit)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PortTag {
    /// The computation's output register (`x`).
    Output,
    /// The postselection register of the hardness argument (`y`).
    Postselection,
    /// Error-syndrome register (`z`); runs with any nonzero bit are
    /// discarded.
    Syndrome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Location {
    Prepare { qubit: usize, basis: Basis },
    Gate(Gate),
    Measure { qubit: usize, basis: Basis, port: Option<PortTag> },
}

impl Location {
    /// Qubits the location acts on.
    pub fn support(&self) -> (usize, Option<usize>) {
        match self {
            Location::Prepare { qubit, .. } | Location::Measure { qubit, .. } => (*qubit, None),
            Location::Gate(g) => g.support(),
        }
    }
}

/// A reported bit formed as the XOR of several measurement outcomes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityPort {
    pub tag: PortTag,
    /// Indices into the circuit's measurement sequence, in circuit order.
    pub measurements: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliffordCircuit {
    name: String,
    qubit_count: usize,
    locations: Vec<Location>,
    parity_ports: Vec<ParityPort>,
}

impl CliffordCircuit {
    pub fn new(name: impl Into<String>, qubit_count: usize) -> Self {
        CliffordCircuit {
            name: name.into(),
            qubit_count,
            locations: Vec::new(),
            parity_ports: Vec::new(),
        }
    }

    pub fn prepare(mut self, qubit: usize, basis: Basis) -> Self {
        self.locations.push(Location::Prepare { qubit, basis });
        self
    }

    pub fn gate(mut self, gate: Gate) -> Self {
        self.locations.push(Location::Gate(gate));
        self
    }

    pub fn measure(mut self, qubit: usize, basis: Basis, port: Option<PortTag>) -> Self {
        self.locations.push(Location::Measure { qubit, basis, port });
        self
    }

    pub fn parity_port(mut self, tag: PortTag, measurements: Vec<usize>) -> Self {
        self.parity_ports.push(ParityPort { tag, measurements });
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn locations(&self) -> &[Location] {
        &self.locations
    }

    pub fn parity_ports(&self) -> &[ParityPort] {
        &self.parity_ports
    }

    pub fn measurement_count(&self) -> usize {
        self.locations
            .iter()
            .filter(|l| matches!(l, Location::Measure { .. }))
            .count()
    }

    /// Structural well-formedness: indices in range, each qubit prepared
    /// exactly once before first use, measured at most once and never
    /// touched afterwards, parity ports referencing real measurements.
    pub fn validate(&self) -> Result<()> {
        if self.qubit_count == 0 || self.qubit_count > MAX_QUBITS {
            return Err(Error::Circuit(format!(
                "qubit count {} outside 1..={MAX_QUBITS}",
                self.qubit_count
            )));
        }
        let mut prepared = vec![false; self.qubit_count];
        let mut measured = vec![false; self.qubit_count];
        let mut meas_count = 0usize;

        for (i, loc) in self.locations.iter().enumerate() {
            let (a, b) = loc.support();
            for q in [Some(a), b].into_iter().flatten() {
                if q >= self.qubit_count {
                    return Err(Error::Circuit(format!("location {i}: qubit {q} out of range")));
                }
                if measured[q] {
                    return Err(Error::Circuit(format!(
                        "location {i}: qubit {q} used after its measurement"
                    )));
                }
            }
            match loc {
                Location::Prepare { qubit, .. } => {
                    if prepared[*qubit] {
                        return Err(Error::Circuit(format!("location {i}: qubit {qubit} prepared twice")));
                    }
                    prepared[*qubit] = true;
                }
                Location::Gate(g) => {
                    let (x, y) = g.support();
                    if Some(x) == y {
                        return Err(Error::Circuit(format!("location {i}: two-qubit gate on one qubit")));
                    }
                    for q in [Some(x), y].into_iter().flatten() {
                        if !prepared[q] {
                            return Err(Error::Circuit(format!(
                                "location {i}: qubit {q} used before preparation"
                            )));
                        }
                    }
                }
                Location::Measure { qubit, .. } => {
                    if !prepared[*qubit] {
                        return Err(Error::Circuit(format!(
                            "location {i}: qubit {qubit} measured before preparation"
                        )));
                    }
                    measured[*qubit] = true;
                    meas_count += 1;
                }
            }
        }

        if meas_count > MAX_MEASUREMENTS {
            return Err(Error::Circuit(format!(
                "{meas_count} measurements exceed the cap of {MAX_MEASUREMENTS}"
            )));
        }
        for (p, port) in self.parity_ports.iter().enumerate() {
            if port.measurements.is_empty() {
                return Err(Error::Circuit(format!("parity port {p} is empty")));
            }
            for &m in &port.measurements {
                if m >= meas_count {
                    return Err(Error::Circuit(format!(
                        "parity port {p} references measurement {m}, have {meas_count}"
                    )));
                }
            }
        }

        let layout = self.ports();
        if layout.total_bits() > MAX_PORTS {
            return Err(Error::Circuit(format!(
                "{} ports exceed the cap of {MAX_PORTS}",
                layout.total_bits()
            )));
        }
        Ok(())
    }

    /// Additional requirement for postselected runs: at least one syndrome
    /// port (a degenerate circuit without one has z ≡ 0 and postselects
    /// nothing).
    pub fn validate_for_postselection(&self) -> Result<()> {
        self.validate()?;
        if self.ports().z.is_empty() {
            return Err(Error::Circuit("circuit has no syndrome port".into()));
        }
        Ok(())
    }

    /// Ports in reporting order: within each register, direct measurement
    /// ports in circuit order first, then parity ports in declaration order.
    pub fn ports(&self) -> PortLayout {
        let mut layout = PortLayout::default();
        for tag in [PortTag::Output, PortTag::Postselection, PortTag::Syndrome] {
            let bucket: &mut Vec<PortSource> = match tag {
                PortTag::Output => &mut layout.x,
                PortTag::Postselection => &mut layout.y,
                PortTag::Syndrome => &mut layout.z,
            };
            let mut meas_idx = 0usize;
            for loc in &self.locations {
                if let Location::Measure { port, .. } = loc {
                    if *port == Some(tag) {
                        bucket.push(PortSource::Measurement(meas_idx));
                    }
                    meas_idx += 1;
                }
            }
            for port in &self.parity_ports {
                if port.tag == tag {
                    bucket.push(PortSource::Parity(port.measurements.clone()));
                }
            }
        }
        layout
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum PortSource {
    Measurement(usize),
    Parity(Vec<usize>),
}

impl PortSource {
    fn flip(&self, meas_flips: u32) -> bool {
        match self {
            PortSource::Measurement(m) => meas_flips >> m & 1 == 1,
            PortSource::Parity(ms) => ms.iter().fold(false, |acc, m| acc ^ (meas_flips >> m & 1 == 1)),
        }
    }
}

/// The circuit's ports grouped by register.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PortLayout {
    pub x: Vec<PortSource>,
    pub y: Vec<PortSource>,
    pub z: Vec<PortSource>,
}

impl PortLayout {
    pub fn xy_bits(&self) -> usize {
        self.x.len() + self.y.len()
    }

    pub fn z_bits(&self) -> usize {
        self.z.len()
    }

    pub fn total_bits(&self) -> usize {
        self.xy_bits() + self.z_bits()
    }

    /// Pack measurement flips into a full port-flip pattern: x ports in the
    /// low bits, then y, then z.
    pub fn pattern(&self, meas_flips: u32) -> u32 {
        let mut bits = 0u32;
        for (i, src) in self.x.iter().chain(&self.y).chain(&self.z).enumerate() {
            bits |= (src.flip(meas_flips) as u32) << i;
        }
        bits
    }

    /// Split a full pattern into its (xy, z) parts.
    pub fn split(&self, pattern: u32) -> (u32, u32) {
        let xy = pattern & ((1 << self.xy_bits()) - 1);
        let z = pattern >> self.xy_bits();
        (xy, z)
    }

    /// Port values per branch outcome bits (same packing), from raw
    /// measurement outcome bits.
    pub fn values(&self, meas_outcomes: u32) -> u32 {
        self.pattern(meas_outcomes)
    }
}
