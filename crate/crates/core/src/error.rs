//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is not a valid probability in [{lo}, {hi}]")]
    InvalidProbability {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("parity composition requires every probability in [0, 1/2], got {value}")]
    ParityDomain { value: f64 },

    #[error("noise strength list is empty")]
    EmptyProfile,

    #[error("minimum fault weight {weight} is outside 1..={locations}")]
    WeightOutOfRange { weight: usize, locations: usize },

    #[error("weight enumerator entry a_{weight} = {count} exceeds C({locations}, {weight})")]
    EnumeratorTooLarge {
        weight: usize,
        count: f64,
        locations: usize,
    },

    #[error("heterogeneous noise profile needs an explicit weight enumerator")]
    EnumeratorRequired,

    #[error("postselected bound requires a profile declared stochastic")]
    NotStochastic,

    #[error("problem size n = {n} is outside 1..={max} (2^(-6n-4) leaves f64 range)")]
    KappaOutOfRange { n: u32, max: u32 },

    #[error("scheme needs gates_per_level >= distance >= 1, got M = {gates}, d = {distance}")]
    InvalidScheme { gates: usize, distance: usize },

    #[error("asymptotic gain formula needs M >= {min}, got {gates}")]
    GainOutOfRange { gates: usize, min: usize },

    #[error("walk length {requested} exceeds the enumeration ceiling {ceiling}")]
    WalkLengthCeiling { requested: usize, ceiling: usize },

    #[error("series diverges: eps/(1-eps) = {ratio:.6} is not below {limit}")]
    SeriesDiverges { ratio: f64, limit: f64 },

    #[error("singular count table has no entry for chain length {length}")]
    MissingSingularCount { length: usize },

    #[error("singular count table: {0}")]
    SingularTableParse(String),

    #[error("no sign change found for {what} on [{lo}, {hi}]")]
    NoBracket { what: &'static str, lo: f64, hi: f64 },

    #[error("objective is not monotone on the bracket [{lo}, {hi}] near {at}")]
    NotMonotone { lo: f64, hi: f64, at: f64 },

    #[error("circuit is malformed: {0}")]
    Circuit(String),

    #[error("netlist line {line}: {msg}")]
    Netlist { line: usize, msg: String },

    #[error("noise specification does not match the circuit: {0}")]
    NoiseSpec(String),

    #[error(
        "path space has ~{paths:.3e} paths, over the budget of {budget}; \
         set a weight cutoff or raise the budget"
    )]
    PathBudget { paths: f64, budget: u64 },

    #[error("ideal run is not postselectable: {0}")]
    NotPostselectable(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),
}
