//! The Deutsch algorithm on one five-level qudit.
//!
//! The pulse program is `Y₀₁(π)` (prepares `|0⟩|1⟩`), the joint Hadamard,
//! one oracle gate, then the Hadamard on qubit A. A coarse readout asking
//! whether the qudit sits above level 1 gives the answer.

use std::cell::Cell;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{hadamard_both_sequence, hadamard_sequence, oracle_sequence, GateSpec};
use crate::levels::{Subsystem, ANCILLA, LOGICAL_DIM, QUDIT_DIM};
use crate::linalg::{Matrix, StateVector, PHYSICS_TOL};
use crate::oracle::{BooleanOracle, Verdict};
use crate::phase::state_phase_distance;
use crate::pulse::{Pulse, PulseSequence};

pub use crate::oracle::classify;

/// Outcome of the binary readout `{P_low = |0⟩⟨0| + |1⟩⟨1|, P_high = 1 − P_low}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Readout {
    pub verdict: Verdict,
    pub p_low: f64,
    pub p_high: f64,
}

pub fn coarse_measure(state: &StateVector) -> Result<Readout> {
    if state.dim() != QUDIT_DIM {
        return Err(Error::DimensionMismatch {
            expected: QUDIT_DIM,
            found: state.dim(),
        });
    }
    if !state.is_normalized(PHYSICS_TOL) {
        return Err(Error::NotNormalized(state.norm_sqr()));
    }
    let pops = state.populations();
    let p_low = pops[0] + pops[1];
    let p_high = pops[2..].iter().sum::<f64>();
    if (p_low - 0.5).abs() <= PHYSICS_TOL {
        return Err(Error::AmbiguousReadout(p_low));
    }
    let verdict = if p_low > 0.5 {
        Verdict::Constant
    } else {
        Verdict::Balanced
    };
    Ok(Readout {
        verdict,
        p_low,
        p_high,
    })
}

/// Oracle gate behind a query counter.
struct OracleBox {
    gate: GateSpec,
    queries: Cell<usize>,
}

impl OracleBox {
    fn new(gate: GateSpec) -> Self {
        Self {
            gate,
            queries: Cell::new(0),
        }
    }

    fn query(&self, state: &StateVector) -> Result<StateVector> {
        self.queries.set(self.queries.get() + 1);
        self.gate.sequence.apply(state)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeutschResult {
    pub oracle_id: u8,
    pub final_state: StateVector,
    pub level_populations: Vec<f64>,
    pub verdict: Verdict,
    pub p_low: f64,
    pub p_high: f64,
    pub oracle_queries: usize,
    /// The full pulse program, chronological, with Y pulses unexpanded.
    pub schedule: PulseSequence,
    /// State after each stage: preparation, joint Hadamard, oracle, final Hadamard.
    pub trace: Vec<StateVector>,
}

/// The state-preparation pulse `Y₀₁(π)`, mapping `|0⟩` to `|1⟩`.
pub fn preparation() -> PulseSequence {
    PulseSequence::new(QUDIT_DIM, vec![Pulse::y(0, 1, 1.0)]).expect("valid levels")
}

enum Stage {
    Pulses(PulseSequence),
    Oracle,
}

pub fn run_deutsch(j: u8) -> Result<DeutschResult> {
    let oracle = OracleBox::new(oracle_sequence(j)?);
    let stages = [
        Stage::Pulses(preparation()),
        Stage::Pulses(hadamard_both_sequence().sequence),
        Stage::Oracle,
        Stage::Pulses(hadamard_sequence(Subsystem::A).sequence),
    ];

    let mut state = StateVector::basis(QUDIT_DIM, 0)?;
    let mut schedule = PulseSequence::empty(QUDIT_DIM);
    let mut trace = Vec::with_capacity(stages.len());
    for stage in &stages {
        state = match stage {
            Stage::Pulses(seq) => {
                schedule.extend(seq)?;
                seq.apply(&state)?
            }
            Stage::Oracle => {
                schedule.extend(&oracle.gate.sequence)?;
                oracle.query(&state)?
            }
        };
        trace.push(state.clone());
    }

    let readout = coarse_measure(&state)?;
    Ok(DeutschResult {
        oracle_id: j,
        level_populations: state.populations(),
        final_state: state,
        verdict: readout.verdict,
        p_low: readout.p_low,
        p_high: readout.p_high,
        oracle_queries: oracle.queries.get(),
        schedule,
        trace,
    })
}

/// Final state as tabulated for the algorithm: `(i/√2)(|a⟩ − |b⟩)`.
pub fn expected_final_state(j: u8) -> Result<StateVector> {
    let (plus, minus) = match j {
        1 => (0, 1),
        2 => (1, 0),
        3 => (2, 3),
        4 => (3, 2),
        _ => return Err(Error::InvalidOracle(j)),
    };
    let amp = Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2);
    let mut amps = vec![Complex64::new(0.0, 0.0); QUDIT_DIM];
    amps[plus] = amp;
    amps[minus] = -amp;
    Ok(StateVector::from_amplitudes(amps))
}

/// Plain four-dimensional run of `(H⊗I) U_j (H⊗H) (I⊗X) |00⟩`.
///
/// Uses textbook matrices and the truth-table permutation only; no pulses.
pub fn two_qubit_reference_run(j: u8) -> Result<StateVector> {
    let oracle = BooleanOracle::new(j)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let h = Matrix::from_real_rows(&[vec![s, s], vec![s, -s]])?;
    let x = Matrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]])?;
    let id = Matrix::identity(2);

    let circuit = [
        id.kron(&x),
        h.kron(&h),
        oracle.permutation(),
        h.kron(&id),
    ];
    let mut state = StateVector::basis(LOGICAL_DIM, 0)?;
    for gate in &circuit {
        state = gate.mul_vec(&state)?;
    }
    Ok(state)
}

/// Value of qubit A in a state where it is definite.
pub fn first_qubit_value(two_qubit: &StateVector) -> u8 {
    let p = two_qubit.populations();
    if p[2] + p[3] > 0.5 {
        1
    } else {
        0
    }
}

/// JSON report emitted by the command line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeutschReport {
    pub oracle: u8,
    pub verdict: Verdict,
    pub p_low: f64,
    pub p_high: f64,
    pub final_state: StateVector,
    /// Unit scalar `c` with `c · expected ≈ final`.
    pub recovered_phase_vs_eq19: Complex64,
    pub pulse_count: usize,
}

impl DeutschReport {
    pub fn from_result(result: &DeutschResult) -> Result<Self> {
        let expected = expected_final_state(result.oracle_id)?;
        let aligned = state_phase_distance(&expected, &result.final_state)?;
        Ok(Self {
            oracle: result.oracle_id,
            verdict: result.verdict,
            p_low: result.p_low,
            p_high: result.p_high,
            final_state: result.final_state.clone(),
            recovered_phase_vs_eq19: aligned.phase,
            pulse_count: result.schedule.len(),
        })
    }
}

/// Population left on the ancilla.
pub fn ancilla_population(state: &StateVector) -> f64 {
    state.amplitudes()[ANCILLA].norm_sqr()
}
