//! The five-level qudit read as two virtual qubits plus one ancilla level.
//!
//! Levels 0..=3 carry the two-qubit basis with qubit A as the high bit:
//! `|0⟩ = |00⟩, |1⟩ = |01⟩, |2⟩ = |10⟩, |3⟩ = |11⟩`. Level 4 is the ancilla.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{DensityMatrix, Matrix, UnitaryMatrix, ALGEBRA_TOL, ONE, PHYSICS_TOL, ZERO};

/// Number of levels in the qudit.
pub const QUDIT_DIM: usize = 5;
/// Levels used to store the two-qubit state.
pub const LOGICAL_DIM: usize = 4;
/// Index of the ancillary level.
pub const ANCILLA: usize = 4;

/// Energy level index of the qudit.
pub type LevelIndex = usize;

/// Computational-basis label `|a⟩_A ⊗ |b⟩_B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QubitPair {
    a: u8,
    b: u8,
}

impl QubitPair {
    /// Returns `None` unless both bits are 0 or 1.
    pub fn new(a: u8, b: u8) -> Option<Self> {
        (a <= 1 && b <= 1).then_some(Self { a, b })
    }

    pub fn a(self) -> u8 {
        self.a
    }

    pub fn b(self) -> u8 {
        self.b
    }
}

impl fmt::Display for QubitPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}⟩_A|{}⟩_B", self.a, self.b)
    }
}

/// One of the two virtual qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subsystem::A => f.write_str("A"),
            Subsystem::B => f.write_str("B"),
        }
    }
}

pub fn map_level_to_qubits(idx: LevelIndex) -> Result<QubitPair> {
    match idx {
        0..=3 => Ok(QubitPair {
            a: (idx / 2) as u8,
            b: (idx % 2) as u8,
        }),
        ANCILLA => Err(Error::AncillaLevel(idx)),
        _ => Err(Error::OutOfRange {
            level: idx,
            dim: QUDIT_DIM,
        }),
    }
}

pub fn map_qubits_to_level(pair: QubitPair) -> LevelIndex {
    2 * pair.a as usize + pair.b as usize
}

/// Reduced state of one virtual qubit.
///
/// Takes the partial trace over the other qubit on levels 0..=3. The ancilla
/// must be unpopulated (ρ₄₄ ≤ `tol`); coherences with level 4 are ignored.
pub fn reduce_subsystem(rho: &DensityMatrix, which: Subsystem, tol: f64) -> Result<DensityMatrix> {
    if rho.dim() != QUDIT_DIM {
        return Err(Error::DimensionMismatch {
            expected: QUDIT_DIM,
            found: rho.dim(),
        });
    }
    let ancilla = rho.get(ANCILLA, ANCILLA).re;
    if ancilla > tol {
        return Err(Error::AncillaPopulated(ancilla));
    }
    let p = |r: usize, c: usize| rho.get(r, c);
    let (d0, d1, off) = match which {
        Subsystem::A => (p(0, 0) + p(1, 1), p(2, 2) + p(3, 3), p(0, 2) + p(1, 3)),
        Subsystem::B => (p(0, 0) + p(2, 2), p(1, 1) + p(3, 3), p(0, 1) + p(2, 3)),
    };
    let m = Matrix::from_rows(&[vec![d0, off], vec![off.conj(), d1]])?;
    DensityMatrix::new(m)
}

/// Block-diagonal embedding `G ⊕ (ancilla_phase)` of a two-qubit operator.
pub fn embed_two_qubit(g: &UnitaryMatrix, ancilla_phase: Complex64) -> Result<UnitaryMatrix> {
    if g.dim() != LOGICAL_DIM {
        return Err(Error::DimensionMismatch {
            expected: LOGICAL_DIM,
            found: g.dim(),
        });
    }
    g.ensure_unitary(PHYSICS_TOL)?;
    let modulus = ancilla_phase.norm();
    if (modulus - 1.0).abs() > ALGEBRA_TOL {
        return Err(Error::NotUnitPhase(modulus));
    }
    let mut out = Matrix::zeros(QUDIT_DIM);
    for r in 0..LOGICAL_DIM {
        for c in 0..LOGICAL_DIM {
            out[(r, c)] = g[(r, c)];
        }
    }
    out[(ANCILLA, ANCILLA)] = ancilla_phase;
    Ok(out)
}

/// The ancilla phase that lifts `g` into SU(5): `1 / det(g)`.
pub fn compensating_phase(g: &UnitaryMatrix) -> Complex64 {
    let det = g.determinant();
    if det == ZERO {
        ONE
    } else {
        det.conj() / det.norm()
    }
}
