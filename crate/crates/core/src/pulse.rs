//! θ-pulses between pairs of levels and sequences of them.
//!
//! An X pulse on `(j, k)` with angle θ acts on `span{|j⟩, |k⟩}` as
//! `[[cos θ/2, −i sin θ/2], [−i sin θ/2, cos θ/2]]` and as the identity on every
//! other level. A Y pulse uses the real block `[[cos θ/2, −sin θ/2], [sin θ/2, cos θ/2]]`
//! written in the ordered basis `(|j⟩, |k⟩)`; it is realized physically by three
//! X pulses through a third level (see [`expand_y`]).
//!
//! Angles are stored as multiples of π (`theta_over_pi`) so that schedules
//! round-trip exactly. Sequences are stored chronologically: the first pulse
//! acts first on the state.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::levels::LevelIndex;
use crate::linalg::{Matrix, StateVector, UnitaryMatrix};

/// Period of a pulse rotation, in units of π.
pub const PERIOD_OVER_PI: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::X => f.write_str("X"),
            Axis::Y => f.write_str("Y"),
        }
    }
}

/// A single rotation on the transition between levels `j` and `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "PulseJson", try_from = "PulseJson")]
pub struct Pulse {
    pub axis: Axis,
    pub j: LevelIndex,
    pub k: LevelIndex,
    pub theta_over_pi: f64,
}

#[derive(Serialize, Deserialize)]
struct PulseJson {
    axis: Axis,
    levels: [LevelIndex; 2],
    theta_over_pi: f64,
}

impl From<Pulse> for PulseJson {
    fn from(p: Pulse) -> Self {
        PulseJson {
            axis: p.axis,
            levels: [p.j, p.k],
            theta_over_pi: canonical_angle(p.theta_over_pi),
        }
    }
}

impl TryFrom<PulseJson> for Pulse {
    type Error = Error;
    fn try_from(raw: PulseJson) -> Result<Self> {
        if !raw.theta_over_pi.is_finite() {
            return Err(Error::NonFiniteAngle);
        }
        let [j, k] = raw.levels;
        Ok(Pulse {
            axis: raw.axis,
            j,
            k,
            theta_over_pi: raw.theta_over_pi,
        })
    }
}

impl Pulse {
    pub fn x(j: LevelIndex, k: LevelIndex, theta_over_pi: f64) -> Self {
        Self {
            axis: Axis::X,
            j,
            k,
            theta_over_pi,
        }
    }

    pub fn y(j: LevelIndex, k: LevelIndex, theta_over_pi: f64) -> Self {
        Self {
            axis: Axis::Y,
            j,
            k,
            theta_over_pi,
        }
    }

    /// Rotation angle in radians.
    pub fn theta(&self) -> f64 {
        self.theta_over_pi * std::f64::consts::PI
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        if self.j == self.k || self.j >= dim || self.k >= dim {
            return Err(Error::InvalidLevels {
                j: self.j,
                k: self.k,
                dim,
            });
        }
        if !self.theta_over_pi.is_finite() {
            return Err(Error::NonFiniteAngle);
        }
        Ok(())
    }

    /// The inverse rotation.
    pub fn inverse(&self) -> Self {
        Self {
            theta_over_pi: -self.theta_over_pi,
            ..*self
        }
    }

    pub fn canonicalized(&self) -> Self {
        Self {
            theta_over_pi: canonical_angle(self.theta_over_pi),
            ..*self
        }
    }

    /// Entries `(a, b, c, d)` of the 2×2 block in the `(|j⟩, |k⟩)` basis.
    fn block(&self) -> [Complex64; 4] {
        let (s, c) = sin_cos_half_turns(self.theta_over_pi / 2.0);
        match self.axis {
            Axis::X => {
                let off = Complex64::new(0.0, -s);
                [c.into(), off, off, c.into()]
            }
            Axis::Y => [c.into(), (-s).into(), s.into(), c.into()],
        }
    }

    /// Left-multiplies `m` by this pulse in place; only rows `j` and `k` change.
    pub(crate) fn apply_left(&self, m: &mut Matrix) {
        let [a, b, c, d] = self.block();
        for col in 0..m.dim() {
            let xj = m[(self.j, col)];
            let xk = m[(self.k, col)];
            m[(self.j, col)] = a * xj + b * xk;
            m[(self.k, col)] = c * xj + d * xk;
        }
    }

    fn apply_to_amplitudes(&self, amps: &mut [Complex64]) {
        let [a, b, c, d] = self.block();
        let (xj, xk) = (amps[self.j], amps[self.k]);
        amps[self.j] = a * xj + b * xk;
        amps[self.k] = c * xj + d * xk;
    }
}

impl fmt::Display for Pulse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}_{}{}({}π)",
            self.axis, self.j, self.k, self.theta_over_pi
        )
    }
}

/// `(sin πx, cos πx)`, exact when `x` is a multiple of 1/2.
fn sin_cos_half_turns(x: f64) -> (f64, f64) {
    let r = x.rem_euclid(2.0);
    let twice = r * 2.0;
    if twice.fract() == 0.0 {
        match twice as u8 {
            0 => (0.0, 1.0),
            1 => (1.0, 0.0),
            2 => (0.0, -1.0),
            3 => (-1.0, 0.0),
            _ => (0.0, 1.0),
        }
    } else {
        (std::f64::consts::PI * r).sin_cos()
    }
}

/// Maps an angle (in units of π) into `[0, 4)`.
pub fn canonical_angle(theta_over_pi: f64) -> f64 {
    let r = theta_over_pi.rem_euclid(PERIOD_OVER_PI);
    // rem_euclid may round up to the period for tiny negative inputs; +0.0 clears −0.0
    if r >= PERIOD_OVER_PI {
        0.0
    } else {
        r + 0.0
    }
}

/// Full `dim × dim` matrix of one pulse.
pub fn pulse_unitary(p: &Pulse, dim: usize) -> Result<UnitaryMatrix> {
    p.validate(dim)?;
    let mut m = Matrix::identity(dim);
    p.apply_left(&mut m);
    Ok(m)
}

/// Choice of the intermediate level used to synthesize a Y rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LChoice {
    /// Smallest level index outside the rotated pair.
    #[default]
    SmallestAvailable,
    Fixed(LevelIndex),
}

/// Rewrites a Y pulse on `(j, k)` as the chronological X sequence
/// `[X_jl(3π), X_kl(θ), X_jl(π)]`; X pulses pass through unchanged.
pub fn expand_y(p: &Pulse, choice: LChoice, dim: usize) -> Result<PulseSequence> {
    p.validate(dim)?;
    if p.axis == Axis::X {
        return PulseSequence::new(dim, vec![*p]);
    }
    let l = match choice {
        LChoice::SmallestAvailable => (0..dim)
            .find(|&l| l != p.j && l != p.k)
            .ok_or(Error::NoAncillaAvailable(dim))?,
        LChoice::Fixed(l) => {
            if l == p.j || l == p.k {
                return Err(Error::FixedLevelClash { j: p.j, k: p.k, l });
            }
            if l >= dim {
                return Err(Error::OutOfRange { level: l, dim });
            }
            l
        }
    };
    PulseSequence::new(
        dim,
        vec![
            Pulse::x(p.j, l, 3.0),
            Pulse::x(p.k, l, p.theta_over_pi),
            Pulse::x(p.j, l, 1.0),
        ],
    )
}

/// Chronologically ordered pulses on a `dim`-level system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ScheduleJson")]
pub struct PulseSequence {
    dim: usize,
    pulses: Vec<Pulse>,
}

#[derive(Deserialize)]
struct ScheduleJson {
    dim: usize,
    pulses: Vec<Pulse>,
}

impl TryFrom<ScheduleJson> for PulseSequence {
    type Error = Error;
    fn try_from(raw: ScheduleJson) -> Result<Self> {
        PulseSequence::new(raw.dim, raw.pulses)
    }
}

impl PulseSequence {
    pub fn new(dim: usize, pulses: Vec<Pulse>) -> Result<Self> {
        for p in &pulses {
            p.validate(dim)?;
        }
        Ok(Self { dim, pulses })
    }

    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            pulses: Vec::new(),
        }
    }

    /// Builds a sequence from an operator product written right-to-left
    /// (the last factor acts first).
    pub fn from_operator_product(dim: usize, factors: &[Pulse]) -> Result<Self> {
        Self::new(dim, factors.iter().rev().copied().collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pulses(&self) -> &[Pulse] {
        &self.pulses
    }

    pub fn len(&self) -> usize {
        self.pulses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pulses.is_empty()
    }

    pub fn push(&mut self, p: Pulse) -> Result<()> {
        p.validate(self.dim)?;
        self.pulses.push(p);
        Ok(())
    }

    /// Appends `other`, which acts after `self`.
    pub fn extend(&mut self, other: &PulseSequence) -> Result<()> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        self.pulses.extend_from_slice(&other.pulses);
        Ok(())
    }

    pub fn then(mut self, other: &PulseSequence) -> Result<Self> {
        self.extend(other)?;
        Ok(self)
    }

    pub fn count_axis(&self, axis: Axis) -> usize {
        self.pulses.iter().filter(|p| p.axis == axis).count()
    }

    /// The product `U_n ⋯ U_1`.
    pub fn evaluate(&self) -> UnitaryMatrix {
        let mut m = Matrix::identity(self.dim);
        for p in &self.pulses {
            p.apply_left(&mut m);
        }
        m
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: state.dim(),
            });
        }
        let mut amps = state.amplitudes().to_vec();
        for p in &self.pulses {
            p.apply_to_amplitudes(&mut amps);
        }
        Ok(StateVector::from_amplitudes(amps))
    }

    /// Reversed order with every angle negated.
    pub fn adjoint(&self) -> Self {
        Self {
            dim: self.dim,
            pulses: self.pulses.iter().rev().map(Pulse::inverse).collect(),
        }
    }

    /// Every angle mapped into `[0, 4π)`.
    pub fn canonicalize_theta(&self) -> Self {
        Self {
            dim: self.dim,
            pulses: self.pulses.iter().map(Pulse::canonicalized).collect(),
        }
    }

    /// Replaces every Y pulse by its three-X-pulse synthesis.
    pub fn lower_y(&self, choice: LChoice) -> Result<Self> {
        let mut out = Self::empty(self.dim);
        for p in &self.pulses {
            out.extend(&expand_y(p, choice, self.dim)?)?;
        }
        Ok(out)
    }

    /// Schedule JSON with canonical angles.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("schedule serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
    }
}

impl fmt::Display for PulseSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pulses.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}
