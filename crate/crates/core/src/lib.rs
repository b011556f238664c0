//! Two-qubit algorithms on a single five-level qudit, driven by θ-pulses.
//!
//! Levels 0..=3 hold the state of two virtual qubits; level 4 is an ancilla
//! that absorbs the phase needed to make every gate special unitary. The
//! crate evaluates pulse programs, checks them against the matrices of the
//! universal gate set, runs the Deutsch algorithm, and searches short pulse
//! sequences exhaustively.

pub mod circuit;
pub mod deutsch;
pub mod error;
pub mod gates;
pub mod levels;
pub mod linalg;
pub mod oracle;
pub mod phase;
pub mod pulse;
pub mod search;

pub use error::{Error, Result};
pub use levels::{QubitPair, Subsystem};
pub use linalg::{DensityMatrix, Matrix, StateVector, UnitaryMatrix};
pub use pulse::{Axis, LChoice, Pulse, PulseSequence};

pub use num_complex::Complex64;
