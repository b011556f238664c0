//! The four one-bit Boolean functions and their reversible two-qubit oracles.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::levels::{map_qubits_to_level, QubitPair, LOGICAL_DIM};
use crate::linalg::{Matrix, UnitaryMatrix, ONE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FunctionKind {
    /// Constant function: `f(0) = f(1)`.
    Unbalanced,
    Balanced,
}

/// Outcome of the Deutsch problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Constant,
    Balanced,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Constant => f.write_str("Constant"),
            Verdict::Balanced => f.write_str("Balanced"),
        }
    }
}

/// One of `f₁ = (0,0)`, `f₂ = (1,1)`, `f₃ = (0,1)`, `f₄ = (1,0)`, as `(f(0), f(1))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BooleanOracle {
    id: u8,
    table: (u8, u8),
}

impl BooleanOracle {
    pub fn new(id: u8) -> Result<Self> {
        let table = match id {
            1 => (0, 0),
            2 => (1, 1),
            3 => (0, 1),
            4 => (1, 0),
            _ => return Err(Error::InvalidOracle(id)),
        };
        Ok(Self { id, table })
    }

    pub fn all() -> [BooleanOracle; 4] {
        [1, 2, 3, 4].map(|id| Self::new(id).expect("ids 1..=4 are valid"))
    }

    pub fn id(&self) -> u8 {
        self.id
    }

    pub fn table(&self) -> (u8, u8) {
        self.table
    }

    pub fn eval(&self, x: u8) -> u8 {
        if x == 0 {
            self.table.0
        } else {
            self.table.1
        }
    }

    pub fn kind(&self) -> FunctionKind {
        if self.table.0 != self.table.1 {
            FunctionKind::Balanced
        } else {
            FunctionKind::Unbalanced
        }
    }

    /// `|x⟩|y⟩ ↦ |x⟩|y ⊕ f(x)⟩` on the four logical levels.
    pub fn permutation(&self) -> UnitaryMatrix {
        let mut m = Matrix::zeros(LOGICAL_DIM);
        for x in 0..2u8 {
            for y in 0..2u8 {
                let from = map_qubits_to_level(QubitPair::new(x, y).expect("bits"));
                let to = map_qubits_to_level(QubitPair::new(x, y ^ self.eval(x)).expect("bits"));
                m[(to, from)] = ONE;
            }
        }
        m
    }
}

/// Balanced iff `f(0) ⊕ f(1) = 1`.
pub fn classify(oracle: &BooleanOracle) -> Verdict {
    let (f0, f1) = oracle.table();
    if f0 ^ f1 == 1 {
        Verdict::Balanced
    } else {
        Verdict::Constant
    }
}
