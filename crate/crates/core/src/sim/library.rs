//! Built-in validation circuits.
//!
//! Three sizes of postselected error detection:
//!
//! - `baseline`: one qubit, prep – wait – readout. No syndrome at all
//!   (z ≡ 0), the degenerate control case.
//! - `parity`: a data qubit checked by one ancilla. A single ancilla parity
//!   bit postselects data X errors that occur before the check.
//! - `d2patch`: four data qubits GHZ-encoded into the distance-2 code with
//!   stabilizers XXXX, Z0Z1, Z2Z3, one noisy round of all three checks
//!   (X-check ancilla 4, Z-check ancillas 5 and 6), then destructive
//!   transversal Z readout. Classical parities of the data outcomes
//!   reconstruct the two Z stabilizers (syndrome) and the logical Z
//!   (output), so every single fault is either detected or harmless;
//!   the patch's sparse set verifies at weight 2.

use crate::error::{Error, Result};
use crate::sim::circuit::{Basis, CliffordCircuit, Gate, PortTag};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinCircuit {
    Baseline,
    ParityCheck,
    D2Patch,
}

impl BuiltinCircuit {
    pub fn all() -> [BuiltinCircuit; 3] {
        [BuiltinCircuit::Baseline, BuiltinCircuit::ParityCheck, BuiltinCircuit::D2Patch]
    }

    pub fn name(&self) -> &'static str {
        match self {
            BuiltinCircuit::Baseline => "baseline",
            BuiltinCircuit::ParityCheck => "parity",
            BuiltinCircuit::D2Patch => "d2patch",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "baseline" => Ok(BuiltinCircuit::Baseline),
            "parity" => Ok(BuiltinCircuit::ParityCheck),
            "d2patch" => Ok(BuiltinCircuit::D2Patch),
            other => Err(Error::Circuit(format!(
                "unknown builtin circuit `{other}` (expected baseline|parity|d2patch)"
            ))),
        }
    }

    /// Fault weight below which every path is sparse (established by the
    /// exhaustive search in the regime-validation tests, not assumed).
    pub fn verified_sparse_weight(&self) -> usize {
        match self {
            // An output-port flip is a weight-1 logical fault.
            BuiltinCircuit::Baseline | BuiltinCircuit::ParityCheck => 1,
            // Transversal readout with parity checks catches every single fault.
            BuiltinCircuit::D2Patch => 2,
        }
    }

    pub fn build(&self) -> CliffordCircuit {
        match self {
            BuiltinCircuit::Baseline => baseline(),
            BuiltinCircuit::ParityCheck => parity_check(),
            BuiltinCircuit::D2Patch => d2_patch(),
        }
    }
}

fn baseline() -> CliffordCircuit {
    CliffordCircuit::new("baseline", 1)
        .prepare(0, Basis::Z)
        .gate(Gate::Identity(0))
        .measure(0, Basis::Z, Some(PortTag::Output))
}

fn parity_check() -> CliffordCircuit {
    CliffordCircuit::new("parity", 2)
        .prepare(0, Basis::Z) // data
        .prepare(1, Basis::Z) // ancilla
        .gate(Gate::Cnot(0, 1))
        .measure(1, Basis::Z, Some(PortTag::Syndrome))
        .measure(0, Basis::Z, Some(PortTag::Output))
}

fn d2_patch() -> CliffordCircuit {
    let c = CliffordCircuit::new("d2patch", 7)
        // data preparation
        .prepare(0, Basis::Z)
        .prepare(1, Basis::Z)
        .prepare(2, Basis::Z)
        .prepare(3, Basis::Z)
        // encode logical |0>: GHZ over the four data qubits
        .gate(Gate::H(0))
        .gate(Gate::Cnot(0, 1))
        .gate(Gate::Cnot(0, 2))
        .gate(Gate::Cnot(0, 3))
        // XXXX check via ancilla 4 prepared in |+>. Target order 0,2,1,3:
        // an ancilla X fault mid-extraction copies onto the remaining
        // targets, and every suffix of this order ({2,1,3}, {1,3}, {3})
        // anticommutes with a Z check, so hook errors stay detectable.
        .prepare(4, Basis::X)
        .gate(Gate::Cnot(4, 0))
        .gate(Gate::Cnot(4, 2))
        .gate(Gate::Cnot(4, 1))
        .gate(Gate::Cnot(4, 3))
        .measure(4, Basis::X, Some(PortTag::Syndrome)) // m0
        // Z0Z1 check via ancilla 5
        .prepare(5, Basis::Z)
        .gate(Gate::Cnot(0, 5))
        .gate(Gate::Cnot(1, 5))
        .measure(5, Basis::Z, Some(PortTag::Syndrome)) // m1
        // Z2Z3 check via ancilla 6
        .prepare(6, Basis::Z)
        .gate(Gate::Cnot(2, 6))
        .gate(Gate::Cnot(3, 6))
        .measure(6, Basis::Z, Some(PortTag::Syndrome)) // m2
        // destructive transversal readout of the data block
        .measure(0, Basis::Z, None) // m3
        .measure(1, Basis::Z, None) // m4
        .measure(2, Basis::Z, None) // m5
        .measure(3, Basis::Z, None); // m6
    c
        // classical parities: the two Z stabilizers and the logical Z
        .parity_port(PortTag::Syndrome, vec![3, 4]) // Z0Z1
        .parity_port(PortTag::Syndrome, vec![5, 6]) // Z2Z3
        .parity_port(PortTag::Output, vec![4, 5]) // logical Z = Z1Z2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::statevector::ideal_port_distribution;
    use approx::assert_relative_eq;

    #[test]
    fn builtins_validate() {
        for b in BuiltinCircuit::all() {
            let c = b.build();
            c.validate().unwrap();
            assert_eq!(c.name(), b.name());
        }
        // Postselection requires a syndrome: the baseline has none.
        assert!(baseline().validate_for_postselection().is_err());
        parity_check().validate_for_postselection().unwrap();
        d2_patch().validate_for_postselection().unwrap();
    }

    #[test]
    fn builtins_have_point_mass_zero_ideal_output() {
        for b in BuiltinCircuit::all() {
            let run = ideal_port_distribution(&b.build()).unwrap();
            assert_relative_eq!(run.xy_distribution[0], 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn d2patch_counts() {
        let c = d2_patch();
        assert_eq!(c.locations().len(), 26);
        assert_eq!(c.measurement_count(), 7);
        let ports = c.ports();
        assert_eq!(ports.x.len(), 1);
        assert_eq!(ports.z.len(), 5);
    }

    #[test]
    fn parse_round_trip() {
        for b in BuiltinCircuit::all() {
            assert_eq!(BuiltinCircuit::parse(b.name()).unwrap(), b);
        }
        assert!(BuiltinCircuit::parse("nope").is_err());
    }
}
