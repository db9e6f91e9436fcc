//! Per-location stochastic Pauli noise.
//!
//! Each location carries a list of (Pauli, probability) options; the
//! location faults with probability `ε_k = Σ p_i` and is clean otherwise.
//! The depolarizing profile mirrors the circuit-level model: every gate
//! location (identity waits included) depolarizes at `p1`/`p2`, preparations
//! flip in their basis with `pp` afterwards, measurements with `pm` just
//! before readout.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::noise::CircuitNoiseParams;
use crate::sim::circuit::{Basis, CliffordCircuit, Location};
use crate::sim::frame::{PauliKind, PauliOp};

/// Noise options at one location.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocationNoise {
    options: Vec<(PauliOp, f64)>,
}

impl LocationNoise {
    pub fn clean() -> Self {
        LocationNoise { options: Vec::new() }
    }

    pub fn new(options: Vec<(PauliOp, f64)>) -> Self {
        LocationNoise { options }
    }

    pub fn options(&self) -> &[(PauliOp, f64)] {
        &self.options
    }

    /// Total fault probability `ε_k`.
    pub fn eps(&self) -> f64 {
        self.options.iter().map(|&(_, p)| p).sum()
    }
}

/// One [`LocationNoise`] per circuit location.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StochasticPauliNoise {
    per_location: Vec<LocationNoise>,
}

impl StochasticPauliNoise {
    pub fn noiseless(circuit: &CliffordCircuit) -> Self {
        StochasticPauliNoise {
            per_location: vec![LocationNoise::clean(); circuit.locations().len()],
        }
    }

    /// Circuit-level depolarizing profile from physical parameters.
    pub fn depolarizing(circuit: &CliffordCircuit, params: &CircuitNoiseParams) -> Self {
        let per_location = circuit
            .locations()
            .iter()
            .map(|loc| match loc {
                Location::Prepare { qubit, basis } => flip_noise(*qubit, *basis, params.pp),
                Location::Measure { qubit, basis, .. } => flip_noise(*qubit, *basis, params.pm),
                Location::Gate(g) => match g.support() {
                    (q, None) => single_depolarizing(q, params.p1),
                    (a, Some(b)) => two_depolarizing(a, b, params.p2),
                },
            })
            .collect();
        StochasticPauliNoise { per_location }
    }

    /// Uniform-strength profile: X or Z (ε/2 each) on the first qubit of
    /// every location's support. Keeps `ε_k = ε` exactly uniform.
    pub fn iid_xz(circuit: &CliffordCircuit, eps: f64) -> StochasticPauliNoise {
        let per_location = circuit
            .locations()
            .iter()
            .map(|loc| {
                let (q, _) = loc.support();
                if eps == 0.0 {
                    LocationNoise::clean()
                } else {
                    LocationNoise::new(vec![
                        (PauliOp::single(q, PauliKind::X), eps / 2.0),
                        (PauliOp::single(q, PauliKind::Z), eps / 2.0),
                    ])
                }
            })
            .collect();
        StochasticPauliNoise { per_location }
    }

    /// Uniform X-only profile (a fully enumerable path space: 2 options per
    /// location).
    pub fn iid_x(circuit: &CliffordCircuit, eps: f64) -> StochasticPauliNoise {
        let per_location = circuit
            .locations()
            .iter()
            .map(|loc| {
                let (q, _) = loc.support();
                if eps == 0.0 {
                    LocationNoise::clean()
                } else {
                    LocationNoise::new(vec![(PauliOp::single(q, PauliKind::X), eps)])
                }
            })
            .collect();
        StochasticPauliNoise { per_location }
    }

    pub fn from_locations(per_location: Vec<LocationNoise>) -> Self {
        StochasticPauliNoise { per_location }
    }

    pub fn location(&self, index: usize) -> &LocationNoise {
        &self.per_location[index]
    }

    pub fn len(&self) -> usize {
        self.per_location.len()
    }

    pub fn is_empty(&self) -> bool {
        self.per_location.is_empty()
    }

    pub fn eps_list(&self) -> Vec<f64> {
        self.per_location.iter().map(LocationNoise::eps).collect()
    }

    pub fn eps_max(&self) -> f64 {
        self.eps_list().into_iter().fold(0.0, f64::max)
    }

    /// `Π_k (1 − ε_k)` over all locations.
    pub fn fidelity_product(&self) -> f64 {
        self.per_location.iter().map(|l| 1.0 - l.eps()).product()
    }

    /// Locations with any noise at all.
    pub fn noisy_locations(&self) -> usize {
        self.per_location.iter().filter(|l| !l.options.is_empty()).count()
    }

    /// The shared strength of the noisy locations, if uniform.
    pub fn uniform_eps(&self) -> Option<f64> {
        let mut eps = None;
        for l in &self.per_location {
            if l.options.is_empty() {
                continue;
            }
            let e = l.eps();
            match eps {
                None => eps = Some(e),
                Some(prev) if (prev - e).abs() < 1e-15 => {}
                _ => return None,
            }
        }
        eps
    }

    /// Check the spec against a circuit: one entry per location, supports
    /// within the location, probabilities positive, `ε_k < 1`.
    pub fn validate(&self, circuit: &CliffordCircuit) -> Result<()> {
        if self.per_location.len() != circuit.locations().len() {
            return Err(Error::NoiseSpec(format!(
                "{} noise entries for {} locations",
                self.per_location.len(),
                circuit.locations().len()
            )));
        }
        for (i, (noise, loc)) in self.per_location.iter().zip(circuit.locations()).enumerate() {
            let (a, b) = loc.support();
            for (p, prob) in &noise.options {
                if p.factors().is_empty() {
                    return Err(Error::NoiseSpec(format!("location {i}: identity in the option list")));
                }
                if !p.acts_within(a, b) {
                    return Err(Error::NoiseSpec(format!(
                        "location {i}: option {p} acts outside the location support"
                    )));
                }
                if !(*prob > 0.0 && prob.is_finite()) {
                    return Err(Error::NoiseSpec(format!(
                        "location {i}: option probability {prob} must be positive"
                    )));
                }
            }
            if noise.eps() >= 1.0 {
                return Err(Error::NoiseSpec(format!(
                    "location {i}: total fault probability {} reaches 1",
                    noise.eps()
                )));
            }
        }
        Ok(())
    }
}

fn flip_noise(qubit: usize, basis: Basis, p: f64) -> LocationNoise {
    if p == 0.0 {
        return LocationNoise::clean();
    }
    let kind = match basis {
        Basis::Z => PauliKind::X,
        Basis::X => PauliKind::Z,
    };
    LocationNoise::new(vec![(PauliOp::single(qubit, kind), p)])
}

fn single_depolarizing(qubit: usize, p1: f64) -> LocationNoise {
    if p1 == 0.0 {
        return LocationNoise::clean();
    }
    LocationNoise::new(
        [PauliKind::X, PauliKind::Y, PauliKind::Z]
            .into_iter()
            .map(|k| (PauliOp::single(qubit, k), p1 / 3.0))
            .collect(),
    )
}

fn two_depolarizing(a: usize, b: usize, p2: f64) -> LocationNoise {
    if p2 == 0.0 {
        return LocationNoise::clean();
    }
    let paulis = [None, Some(PauliKind::X), Some(PauliKind::Y), Some(PauliKind::Z)];
    let mut options = Vec::with_capacity(15);
    for ka in paulis {
        for kb in paulis {
            let op = match (ka, kb) {
                (None, None) => continue,
                (Some(k), None) => PauliOp::single(a, k),
                (None, Some(k)) => PauliOp::single(b, k),
                (Some(k0), Some(k1)) => PauliOp::two(a, k0, b, k1),
            };
            options.push((op, p2 / 15.0));
        }
    }
    LocationNoise::new(options)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::circuit::{Gate, PortTag};
    use approx::assert_relative_eq;

    fn gadget() -> CliffordCircuit {
        CliffordCircuit::new("parity", 2)
            .prepare(0, Basis::Z)
            .prepare(1, Basis::Z)
            .gate(Gate::Cnot(0, 1))
            .measure(1, Basis::Z, Some(PortTag::Syndrome))
            .measure(0, Basis::Z, Some(PortTag::Output))
    }

    #[test]
    fn depolarizing_profile_shapes() {
        let params = CircuitNoiseParams::new(0.03, 0.15, 0.01, 0.02).unwrap();
        let noise = StochasticPauliNoise::depolarizing(&gadget(), &params);
        noise.validate(&gadget()).unwrap();
        assert_eq!(noise.location(0).options().len(), 1); // prep flip
        assert_relative_eq!(noise.location(0).eps(), 0.01);
        assert_eq!(noise.location(2).options().len(), 15); // CNOT depolarizing
        assert_relative_eq!(noise.location(2).eps(), 0.15, max_relative = 1e-12);
        assert_relative_eq!(noise.location(3).eps(), 0.02);
        assert_eq!(noise.uniform_eps(), None);
    }

    #[test]
    fn zero_rates_leave_clean_locations() {
        let params = CircuitNoiseParams::new(0.0, 0.0, 0.0, 0.0).unwrap();
        let noise = StochasticPauliNoise::depolarizing(&gadget(), &params);
        assert_eq!(noise.noisy_locations(), 0);
        assert_eq!(noise.fidelity_product(), 1.0);
    }

    #[test]
    fn iid_profiles_are_uniform() {
        let xz = StochasticPauliNoise::iid_xz(&gadget(), 0.01);
        xz.validate(&gadget()).unwrap();
        assert_eq!(xz.uniform_eps(), Some(0.01));
        assert_eq!(xz.noisy_locations(), 5);
        assert_relative_eq!(xz.fidelity_product(), 0.99f64.powi(5), max_relative = 1e-12);

        let x = StochasticPauliNoise::iid_x(&gadget(), 0.001);
        assert_eq!(x.uniform_eps(), Some(0.001));
        assert_eq!(x.location(0).options().len(), 1);
    }

    #[test]
    fn validation_catches_mismatch_and_bad_support() {
        let noise = StochasticPauliNoise::noiseless(&gadget());
        let mut locations = noise.per_location.clone();
        locations.pop();
        assert!(StochasticPauliNoise::from_locations(locations).validate(&gadget()).is_err());

        let mut bad = StochasticPauliNoise::noiseless(&gadget());
        bad.per_location[0] = LocationNoise::new(vec![(PauliOp::single(1, PauliKind::X), 0.1)]);
        assert!(bad.validate(&gadget()).is_err());
    }
}
