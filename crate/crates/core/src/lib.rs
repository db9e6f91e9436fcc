//! Noise-threshold analysis for postselected fault tolerance.
//!
//! The crate answers one family of questions: given stochastic circuit-level
//! noise, below what strength does postselecting on null error syndromes leave
//! an exponentially small residual error on the logical output? The pieces:
//!
//! - [`bounds`]: faulty-path error bounds (standard and postselected regimes),
//!   the postselection-probability floor, binomial tail kernels, and the κ
//!   budget for the exponentially-small-additive-error argument.
//! - [`concat`]: level-by-level error recursion for concatenated codes under
//!   error correction vs. error detection, with rough and exact thresholds.
//! - [`saw`]: exact self-avoiding-walk counts on the simple cubic lattice and
//!   the error-chain series built from them (topological and singular tails,
//!   correlated-chain weights).
//! - [`noise`]: maps physical depolarizing parameters to edge error rates on
//!   the syndrome-history lattice (leading order, all-order parity closure,
//!   and Monte Carlo).
//! - [`surface`]: phenomenological and circuit-level threshold solvers driven
//!   by the effective single-qubit error probability and the magic-state
//!   distillation criterion.
//! - [`sim`]: an exact fault-path simulator for tiny Clifford error-detecting
//!   circuits that validates the postselected error bound directly.
//!
//! With the `parallel` feature (default) the heavy inner loops run on rayon;
//! every parallel entry point has a `*_serial` sibling producing bit-identical
//! results, and disabling the feature makes the plain entry points fall back
//! to the serial path.

pub mod bounds;
pub mod concat;
pub mod error;
pub mod noise;
pub mod saw;
pub mod sim;
mod solve;
pub mod surface;

pub use error::{Error, Result};
pub use solve::{Bracket, SolveMethod, ThresholdResult};
