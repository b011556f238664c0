//! A line-oriented circuit language and its compilation to pulse schedules.
//!
//! ```text
//! # Deutsch algorithm for f₃
//! RY 0 1 1.0      # raw pulse: axis, levels j k, angle in units of π
//! H_AB
//! ORACLE_3
//! H_A
//! ```
//!
//! Named gates are `H_A H_B H_AB T_A T_B CNOT_AB CNOT_BA ORACLE_1..ORACLE_4`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::error::Result;
use crate::gates::{verify_gate, GateName, GateSpec, VerificationReport};
use crate::levels::QUDIT_DIM;
use crate::linalg::StateVector;
use crate::pulse::{Axis, LChoice, Pulse, PulseSequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown gate `{0}`")]
    UnknownGate(String),
    #[error("bad level index `{0}`")]
    BadLevelIndex(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Statement {
    Gate(GateName),
    Raw(Pulse),
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Gate(GateName::Oracle(j)) => write!(f, "ORACLE_{j}"),
            Statement::Gate(name) => write!(f, "{name}"),
            Statement::Raw(p) => write!(f, "R{} {} {} {}", p.axis, p.j, p.k, p.theta_over_pi),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CircuitProgram {
    pub statements: Vec<Statement>,
}

impl CircuitProgram {
    pub fn new(statements: Vec<Statement>) -> Self {
        Self { statements }
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &CircuitProgram) -> CircuitProgram {
        let mut statements = self.statements.clone();
        statements.extend_from_slice(&other.statements);
        Self { statements }
    }
}

/// One statement per line, in source form.
impl fmt::Display for CircuitProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

fn keyword(word: &str) -> Option<GateName> {
    Some(match word {
        "H_A" => GateName::HadamardA,
        "H_B" => GateName::HadamardB,
        "H_AB" => GateName::HadamardBoth,
        "T_A" => GateName::TA,
        "T_B" => GateName::TB,
        "CNOT_AB" => GateName::CnotAB,
        "CNOT_BA" => GateName::CnotBA,
        "ORACLE_1" => GateName::Oracle(1),
        "ORACLE_2" => GateName::Oracle(2),
        "ORACLE_3" => GateName::Oracle(3),
        "ORACLE_4" => GateName::Oracle(4),
        _ => return None,
    })
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (line[..byte].chars().count() + 1, tok))
        .collect()
}

pub fn parse_circuit(text: &str) -> std::result::Result<CircuitProgram, ParseError> {
    let mut statements = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let code = raw_line.split('#').next().unwrap_or("");
        let tokens = tokenize(code);
        let Some(&(col, head)) = tokens.first() else {
            continue;
        };
        let err = |col: usize, kind: ParseErrorKind| ParseError {
            line: line_no,
            col,
            kind,
        };
        let stmt = match head {
            "RX" | "RY" => {
                let axis = if head == "RX" { Axis::X } else { Axis::Y };
                if tokens.len() != 4 {
                    let at = tokens.get(4).map_or(code.chars().count() + 1, |t| t.0);
                    return Err(err(
                        at,
                        ParseErrorKind::Syntax(format!(
                            "{head} takes 3 arguments (j k theta_over_pi), found {}",
                            tokens.len() - 1
                        )),
                    ));
                }
                let level = |(col, tok): (usize, &str)| -> std::result::Result<usize, ParseError> {
                    let v: usize = tok.parse().map_err(|_| {
                        err(col, ParseErrorKind::Syntax(format!("expected a level index, found `{tok}`")))
                    })?;
                    if v >= QUDIT_DIM {
                        return Err(err(col, ParseErrorKind::BadLevelIndex(tok.to_string())));
                    }
                    Ok(v)
                };
                let j = level(tokens[1])?;
                let k = level(tokens[2])?;
                if j == k {
                    return Err(err(
                        tokens[2].0,
                        ParseErrorKind::BadLevelIndex(format!("{k} (levels must differ)")),
                    ));
                }
                let (tcol, ttok) = tokens[3];
                let theta: f64 = ttok
                    .parse()
                    .ok()
                    .filter(|t: &f64| t.is_finite())
                    .ok_or_else(|| {
                        err(tcol, ParseErrorKind::Syntax(format!("expected a finite angle, found `{ttok}`")))
                    })?;
                Statement::Raw(Pulse {
                    axis,
                    j,
                    k,
                    theta_over_pi: theta,
                })
            }
            word => {
                let name = keyword(word)
                    .ok_or_else(|| err(col, ParseErrorKind::UnknownGate(word.to_string())))?;
                if let Some(&(extra_col, extra)) = tokens.get(1) {
                    return Err(err(
                        extra_col,
                        ParseErrorKind::Syntax(format!("unexpected `{extra}` after {word}")),
                    ));
                }
                Statement::Gate(name)
            }
        };
        statements.push(stmt);
    }
    Ok(CircuitProgram { statements })
}

/// Concatenated, canonicalized schedule; with `lower_y`, X pulses only.
pub fn compile(program: &CircuitProgram, lower_y: bool) -> Result<PulseSequence> {
    let mut schedule = PulseSequence::empty(QUDIT_DIM);
    for stmt in &program.statements {
        match stmt {
            Statement::Gate(name) => schedule.extend(&GateSpec::by_name(*name)?.sequence)?,
            Statement::Raw(p) => schedule.push(*p)?,
        }
    }
    if lower_y {
        schedule = schedule.lower_y(LChoice::SmallestAvailable)?;
    }
    Ok(schedule.canonicalize_theta())
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub program: String,
    pub schedule: PulseSequence,
    pub input_level: usize,
    pub final_state: StateVector,
    pub verifications: Vec<VerificationReport>,
    pub exit_status: i32,
}

/// Compiles `program`, runs it on `|input_level⟩` and verifies every named gate it uses.
pub fn run_program(
    program: &CircuitProgram,
    input_level: usize,
    lower_y: bool,
    tol: f64,
) -> Result<RunReport> {
    let schedule = compile(program, lower_y)?;
    let final_state = schedule.apply(&StateVector::basis(QUDIT_DIM, input_level)?)?;
    let mut verifications = Vec::new();
    for stmt in &program.statements {
        if let Statement::Gate(name) = stmt {
            if verifications.iter().any(|v: &VerificationReport| v.name == *name) {
                continue;
            }
            verifications.push(verify_gate(&GateSpec::by_name(*name)?, tol));
        }
    }
    let exit_status = if verifications.iter().all(|v| v.pass) { 0 } else { 1 };
    Ok(RunReport {
        program: program.to_string(),
        schedule,
        input_level,
        final_state,
        verifications,
        exit_status,
    })
}
