//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls into the pulse evaluator: matrices are typed in or built
//! from explicit trigonometry and plain triple loops.

#![allow(dead_code)]

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};

use qudit_core::{Axis, Complex64, DensityMatrix, Matrix, Pulse};
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Full matrix of a pulse from its defining 2×2 block, built entry by entry.
pub fn explicit_pulse(p: &Pulse, dim: usize) -> Matrix {
    let half = p.theta_over_pi * PI / 2.0;
    let (s, co) = (half.sin(), half.cos());
    let mut rows = vec![vec![c(0.0, 0.0); dim]; dim];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = c(1.0, 0.0);
    }
    rows[p.j][p.j] = c(co, 0.0);
    rows[p.k][p.k] = c(co, 0.0);
    match p.axis {
        Axis::X => {
            rows[p.j][p.k] = c(0.0, -s);
            rows[p.k][p.j] = c(0.0, -s);
        }
        Axis::Y => {
            rows[p.j][p.k] = c(-s, 0.0);
            rows[p.k][p.j] = c(s, 0.0);
        }
    }
    Matrix::from_rows(&rows).unwrap()
}

pub fn naive_product(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.dim();
    let mut rows = vec![vec![c(0.0, 0.0); n]; n];
    for (r, row) in rows.iter_mut().enumerate() {
        for (col, cell) in row.iter_mut().enumerate() {
            for k in 0..n {
                *cell += a.get(r, k) * b.get(k, col);
            }
        }
    }
    Matrix::from_rows(&rows).unwrap()
}

/// `U_n ⋯ U_1` for a chronological list, by explicit matrices.
pub fn explicit_sequence(pulses: &[Pulse], dim: usize) -> Matrix {
    pulses.iter().fold(Matrix::identity(dim), |acc, p| {
        naive_product(&explicit_pulse(p, dim), &acc)
    })
}

fn real5(rows: [[f64; 5]; 5]) -> Matrix {
    Matrix::from_real_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

/// The universal-gate table, typed in entry by entry.
pub fn table_hadamard_a() -> Matrix {
    let s = FRAC_1_SQRT_2;
    real5([
        [s, 0.0, s, 0.0, 0.0],
        [0.0, s, 0.0, s, 0.0],
        [s, 0.0, -s, 0.0, 0.0],
        [0.0, s, 0.0, -s, 0.0],
        [0.0, 0.0, 0.0, 0.0, 1.0],
    ])
}

pub fn table_hadamard_b() -> Matrix {
    let s = FRAC_1_SQRT_2;
    real5([
        [s, s, 0.0, 0.0, 0.0],
        [s, -s, 0.0, 0.0, 0.0],
        [0.0, 0.0, s, s, 0.0],
        [0.0, 0.0, s, -s, 0.0],
        [0.0, 0.0, 0.0, 0.0, 1.0],
    ])
}

pub fn table_t_a() -> Matrix {
    let w = Complex64::from_polar(1.0, FRAC_PI_4);
    let one = c(1.0, 0.0);
    Matrix::diagonal(&[one, one, w, w, c(0.0, -1.0)])
}

pub fn table_t_b() -> Matrix {
    let w = Complex64::from_polar(1.0, FRAC_PI_4);
    let one = c(1.0, 0.0);
    Matrix::diagonal(&[one, w, one, w, c(0.0, -1.0)])
}

pub fn table_cnot_a() -> Matrix {
    real5([
        [1.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, -1.0],
    ])
}

pub fn table_cnot_b() -> Matrix {
    real5([
        [1.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, -1.0],
    ])
}

/// Random 5×5 density matrix supported on levels 0..=3.
pub fn random_logical_density<R: Rng>(rng: &mut R) -> DensityMatrix {
    let rank = rng.gen_range(1..=4);
    let mut rows = vec![vec![c(0.0, 0.0); 5]; 5];
    for _ in 0..rank {
        let v: Vec<Complex64> = (0..4)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let w: f64 = rng.gen_range(0.1..1.0);
        for r in 0..4 {
            for col in 0..4 {
                rows[r][col] += v[r] * v[col].conj() * w;
            }
        }
    }
    let tr: f64 = (0..4).map(|i| rows[i][i].re).sum();
    for row in rows.iter_mut() {
        for cell in row.iter_mut() {
            *cell /= tr;
        }
    }
    DensityMatrix::new(Matrix::from_rows(&rows).unwrap()).unwrap()
}

/// Partial trace of the levels 0..=3 block viewed as a 2⊗2 tensor `ρ[a b, a' b']`.
pub fn brute_force_partial_trace(rho: &DensityMatrix, keep_a: bool) -> [[Complex64; 2]; 2] {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            for a2 in 0..2 {
                for b2 in 0..2 {
                    let v = rho.get(2 * a + b, 2 * a2 + b2);
                    if keep_a && b == b2 {
                        out[a][a2] += v;
                    }
                    if !keep_a && a == a2 {
                        out[b][b2] += v;
                    }
                }
            }
        }
    }
    out
}
