//! Operator and state comparison modulo a global phase.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, StateVector, ONE};

/// Traces (or overlaps) below this modulus leave the phase undetermined.
const ZERO_OVERLAP: f64 = 1e-12;

/// Outcome of aligning one operand onto another by a unit scalar.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseAlignment {
    /// Unit scalar `c` applied to the first operand.
    pub phase: Complex64,
    /// Max-entry modulus of `c·first − second`.
    pub residual: f64,
}

fn unit_phase(overlap: Complex64) -> Complex64 {
    let m = overlap.norm();
    if m <= ZERO_OVERLAP {
        ONE
    } else {
        overlap / m
    }
}

/// Aligns `u` onto `v` with `c = tr(U†V)/|tr(U†V)|` and reports `max |cU − V|`.
pub fn global_phase_distance(u: &Matrix, v: &Matrix) -> Result<PhaseAlignment> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            found: v.dim(),
        });
    }
    let n = u.dim();
    let mut overlap = Complex64::new(0.0, 0.0);
    for r in 0..n {
        for c in 0..n {
            overlap += u[(r, c)].conj() * v[(r, c)];
        }
    }
    let phase = unit_phase(overlap);
    let residual = u.scale(phase).max_abs_diff(v)?;
    Ok(PhaseAlignment { phase, residual })
}

/// State-vector analogue of [`global_phase_distance`], using `⟨u|v⟩`.
pub fn state_phase_distance(u: &StateVector, v: &StateVector) -> Result<PhaseAlignment> {
    let phase = unit_phase(u.inner(v)?);
    let residual = u.scale(phase).max_abs_diff(v)?;
    Ok(PhaseAlignment { phase, residual })
}
