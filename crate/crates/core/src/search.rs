//! Exhaustive search for short pulse sequences realizing a target operator.
//!
//! Sequences are enumerated breadth-first by length and, within one length,
//! lexicographically by alphabet index (first pulse most significant). The
//! first match is therefore the shortest and, among those, the earliest in
//! enumeration order. The empty sequence is examined as depth 0.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::levels::LevelIndex;
use crate::linalg::{Matrix, UnitaryMatrix, ONE, PHYSICS_TOL};
use crate::phase::global_phase_distance;
use crate::pulse::{Axis, Pulse, PulseSequence, PERIOD_OVER_PI};

/// Longest sequence the enumerator accepts.
pub const MAX_SEARCH_DEPTH: usize = 4;

/// The angles `{π/2, π, …, 7π/2}` in units of π.
pub const HALF_TURN_GRID: [f64; 7] = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchSpace {
    dim: usize,
    axes: Vec<Axis>,
    level_pairs: Vec<(LevelIndex, LevelIndex)>,
    /// Angles in units of π, each in `(0, 4)`.
    theta_grid: Vec<f64>,
    max_depth: usize,
}

impl SearchSpace {
    pub fn new(
        dim: usize,
        axes: Vec<Axis>,
        level_pairs: Vec<(LevelIndex, LevelIndex)>,
        theta_grid: Vec<f64>,
        max_depth: usize,
    ) -> Result<Self> {
        if max_depth == 0 || max_depth > MAX_SEARCH_DEPTH {
            return Err(Error::InvalidSearchSpace(format!(
                "max_depth must be in 1..={MAX_SEARCH_DEPTH}, got {max_depth}"
            )));
        }
        for &(j, k) in &level_pairs {
            if j == k || j >= dim || k >= dim {
                return Err(Error::InvalidLevels { j, k, dim });
            }
        }
        if let Some(t) = theta_grid
            .iter()
            .find(|&&t| !(t > 0.0 && t < PERIOD_OVER_PI))
        {
            return Err(Error::InvalidSearchSpace(format!(
                "grid angle {t}π outside (0, 4π)"
            )));
        }
        let mut axes = axes;
        axes.sort();
        axes.dedup();
        let mut level_pairs = level_pairs;
        level_pairs.sort();
        level_pairs.dedup();
        Ok(Self {
            dim,
            axes,
            level_pairs,
            theta_grid,
            max_depth,
        })
    }

    /// Both axes on every pair `j < k` of a `dim`-level system.
    pub fn all_pairs(dim: usize, theta_grid: Vec<f64>, max_depth: usize) -> Result<Self> {
        let pairs = (0..dim)
            .flat_map(|j| (j + 1..dim).map(move |k| (j, k)))
            .collect();
        Self::new(dim, vec![Axis::X, Axis::Y], pairs, theta_grid, max_depth)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }
}

/// The pulse alphabet: axis (X first), then level pair, then grid order.
pub fn enumerate_pulses(space: &SearchSpace) -> Result<Vec<Pulse>> {
    if space.axes.is_empty() || space.level_pairs.is_empty() || space.theta_grid.is_empty() {
        return Err(Error::EmptySpace);
    }
    let mut out = Vec::with_capacity(space.axes.len() * space.level_pairs.len() * space.theta_grid.len());
    for &axis in &space.axes {
        for &(j, k) in &space.level_pairs {
            for &t in &space.theta_grid {
                out.push(Pulse {
                    axis,
                    j,
                    k,
                    theta_over_pi: t,
                });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub found: bool,
    /// The match, or the closest candidate seen when nothing matched.
    pub sequence: PulseSequence,
    pub residual: f64,
    /// Unit scalar `c` with `c · target ≈ evaluate(sequence)`; 1 for exact-phase matching.
    pub phase: Complex64,
    pub candidates_examined: u64,
}

struct Matcher<'a> {
    target: &'a UnitaryMatrix,
    phase_blind: bool,
}

impl Matcher<'_> {
    fn score(&self, candidate: &Matrix) -> (f64, Complex64) {
        if self.phase_blind {
            let a = global_phase_distance(self.target, candidate).expect("dims checked");
            (a.residual, a.phase)
        } else {
            let r = self.target.max_abs_diff(candidate).expect("dims checked");
            (r, ONE)
        }
    }
}

fn check_target(target: &UnitaryMatrix, dim: usize) -> Result<()> {
    if target.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: target.dim(),
        });
    }
    target.ensure_unitary(PHYSICS_TOL)
}

pub fn brute_force_search(
    target: &UnitaryMatrix,
    space: &SearchSpace,
    tol: f64,
    phase_blind: bool,
) -> Result<SearchResult> {
    check_target(target, space.dim)?;
    let alphabet = enumerate_pulses(space)?;
    let matcher = Matcher {
        target,
        phase_blind,
    };

    let mut examined: u64 = 1;
    let (residual, phase) = matcher.score(&Matrix::identity(space.dim));
    let mut best = (residual, phase, Vec::new());
    if residual <= tol {
        return Ok(SearchResult {
            found: true,
            sequence: PulseSequence::empty(space.dim),
            residual,
            phase,
            candidates_examined: examined,
        });
    }

    for depth in 1..=space.max_depth {
        let mut indices = vec![0usize; depth];
        // prefixes[i] = product of the first i pulses of the current candidate
        let mut prefixes = vec![Matrix::identity(space.dim); depth + 1];
        let mut stale_from = 0;
        loop {
            for i in stale_from..depth {
                let mut next = prefixes[i].clone();
                alphabet[indices[i]].apply_left(&mut next);
                prefixes[i + 1] = next;
            }
            examined += 1;
            let (residual, phase) = matcher.score(&prefixes[depth]);
            if residual < best.0 {
                best = (residual, phase, indices.clone());
            }
            if residual <= tol {
                return Ok(SearchResult {
                    found: true,
                    sequence: sequence_from(space.dim, &alphabet, &indices),
                    residual,
                    phase,
                    candidates_examined: examined,
                });
            }
            // odometer increment, last position fastest
            let mut pos = depth;
            let advanced = loop {
                if pos == 0 {
                    break false;
                }
                pos -= 1;
                indices[pos] += 1;
                if indices[pos] < alphabet.len() {
                    break true;
                }
                indices[pos] = 0;
            };
            if !advanced {
                break;
            }
            stale_from = pos;
        }
    }

    Ok(SearchResult {
        found: false,
        sequence: sequence_from(space.dim, &alphabet, &best.2),
        residual: best.0,
        phase: best.1,
        candidates_examined: examined,
    })
}

fn sequence_from(dim: usize, alphabet: &[Pulse], indices: &[usize]) -> PulseSequence {
    PulseSequence::new(dim, indices.iter().map(|&i| alphabet[i]).collect())
        .expect("alphabet pulses are valid")
}

/// Checks one candidate with the same residual semantics as the search.
pub fn verify_decomposition(
    seq: &PulseSequence,
    target: &UnitaryMatrix,
    tol: f64,
    phase_blind: bool,
) -> Result<SearchResult> {
    if target.dim() != seq.dim() {
        return Err(Error::DimensionMismatch {
            expected: seq.dim(),
            found: target.dim(),
        });
    }
    let matcher = Matcher {
        target,
        phase_blind,
    };
    let (residual, phase) = matcher.score(&seq.evaluate());
    Ok(SearchResult {
        found: residual <= tol,
        sequence: seq.clone(),
        residual,
        phase,
        candidates_examined: 1,
    })
}
