//! Plain-text circuit netlists, one location per line.
//!
//! ```text
//! # distance-2 check, abbreviated
//! qubits 2
//! prep z 0
//! prep z 1
//! cnot 0 1
//! measure z 1 syndrome
//! measure z 0 output
//! parity syndrome 0 1
//! ```
//!
//! Keywords: `prep <z|x> <q>`, `id|h|s <q>`, `cnot|cz <a> <b>`,
//! `measure <z|x> <q> [output|postselect|syndrome]`, and
//! `parity <output|postselect|syndrome> <m...>` where `m` indexes the
//! measurement sequence. `qubits N` pins the width (otherwise inferred).
//! `#` starts a comment.

use crate::error::{Error, Result};
use crate::sim::circuit::{Basis, CliffordCircuit, Gate, PortTag};

pub fn parse_netlist(name: &str, text: &str) -> Result<CliffordCircuit> {
    enum Item {
        Prep(usize, Basis),
        Gate(Gate),
        Measure(usize, Basis, Option<PortTag>),
        Parity(PortTag, Vec<usize>),
    }

    let mut qubits: Option<usize> = None;
    let mut items: Vec<Item> = Vec::new();
    let mut max_qubit = 0usize;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let err = |msg: String| Error::Netlist { line: line_no, msg };
        let parse_qubit = |s: &str| -> Result<usize> {
            s.parse::<usize>()
                .map_err(|_| err(format!("`{s}` is not a qubit index")))
        };
        let parse_basis = |s: &str| -> Result<Basis> {
            match s {
                "z" | "Z" => Ok(Basis::Z),
                "x" | "X" => Ok(Basis::X),
                other => Err(err(format!("`{other}` is not a basis (z|x)"))),
            }
        };
        let parse_tag = |s: &str| -> Result<PortTag> {
            match s {
                "output" => Ok(PortTag::Output),
                "postselect" => Ok(PortTag::Postselection),
                "syndrome" => Ok(PortTag::Syndrome),
                other => Err(err(format!(
                    "`{other}` is not a port tag (output|postselect|syndrome)"
                ))),
            }
        };

        match fields[0] {
            "qubits" => {
                let n = fields
                    .get(1)
                    .ok_or_else(|| err("qubits needs a count".into()))?
                    .parse::<usize>()
                    .map_err(|_| err("qubits needs a count".into()))?;
                qubits = Some(n);
            }
            "prep" => {
                if fields.len() != 3 {
                    return Err(err("expected `prep <z|x> <q>`".into()));
                }
                let basis = parse_basis(fields[1])?;
                let q = parse_qubit(fields[2])?;
                max_qubit = max_qubit.max(q);
                items.push(Item::Prep(q, basis));
            }
            "id" | "h" | "s" => {
                if fields.len() != 2 {
                    return Err(err(format!("expected `{} <q>`", fields[0])));
                }
                let q = parse_qubit(fields[1])?;
                max_qubit = max_qubit.max(q);
                items.push(Item::Gate(match fields[0] {
                    "id" => Gate::Identity(q),
                    "h" => Gate::H(q),
                    _ => Gate::S(q),
                }));
            }
            "cnot" | "cz" => {
                if fields.len() != 3 {
                    return Err(err(format!("expected `{} <a> <b>`", fields[0])));
                }
                let a = parse_qubit(fields[1])?;
                let b = parse_qubit(fields[2])?;
                max_qubit = max_qubit.max(a).max(b);
                items.push(Item::Gate(if fields[0] == "cnot" {
                    Gate::Cnot(a, b)
                } else {
                    Gate::Cz(a, b)
                }));
            }
            "measure" => {
                if fields.len() < 3 || fields.len() > 4 {
                    return Err(err("expected `measure <z|x> <q> [port]`".into()));
                }
                let basis = parse_basis(fields[1])?;
                let q = parse_qubit(fields[2])?;
                max_qubit = max_qubit.max(q);
                let port = fields.get(3).map(|s| parse_tag(s)).transpose()?;
                items.push(Item::Measure(q, basis, port));
            }
            "parity" => {
                if fields.len() < 3 {
                    return Err(err("expected `parity <port> <m...>`".into()));
                }
                let tag = parse_tag(fields[1])?;
                let ms = fields[2..]
                    .iter()
                    .map(|s| {
                        s.parse::<usize>()
                            .map_err(|_| err(format!("`{s}` is not a measurement index")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                items.push(Item::Parity(tag, ms));
            }
            other => {
                // Anything outside the Clifford set lands here.
                return Err(err(format!("unsupported location kind `{other}`")));
            }
        }
    }

    let qubit_count = qubits.unwrap_or(max_qubit + 1);
    let mut circuit = CliffordCircuit::new(name, qubit_count);
    for item in items {
        circuit = match item {
            Item::Prep(q, b) => circuit.prepare(q, b),
            Item::Gate(g) => circuit.gate(g),
            Item::Measure(q, b, p) => circuit.measure(q, b, p),
            Item::Parity(t, ms) => circuit.parity_port(t, ms),
        };
    }
    circuit.validate()?;
    Ok(circuit)
}
