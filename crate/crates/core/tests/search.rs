mod common;

use std::time::Instant;

use qudit_core::gates::{GateName, GateSpec};
use qudit_core::search::{brute_force_search, verify_decomposition, SearchSpace, HALF_TURN_GRID};
use qudit_core::{Axis, Complex64, Matrix, Pulse, PulseSequence};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn cnot_space() -> SearchSpace {
    SearchSpace::all_pairs(5, HALF_TURN_GRID.to_vec(), 2).unwrap()
}

#[test]
fn rediscovers_the_two_pulse_cnot() {
    let target = table_cnot_a();
    let start = Instant::now();
    let r = brute_force_search(&target, &cnot_space(), 1e-10, true).unwrap();
    let elapsed = start.elapsed();
    assert!(r.found);
    assert_eq!(r.sequence.len(), 2);
    assert!(r.residual <= 1e-10);
    assert!(r.candidates_examined <= 160 + 160 * 160);
    assert!(elapsed.as_secs_f64() <= 5.0);

    // the hand-derived program is one of the solutions
    let known = PulseSequence::new(5, vec![Pulse::x(3, 4, 2.0), Pulse::y(2, 3, 1.0)]).unwrap();
    assert!(verify_decomposition(&known, &target, 1e-10, true).unwrap().found);

    // soundness
    let again = verify_decomposition(&r.sequence, &target, 1e-10, true).unwrap();
    assert!(again.found);
}

#[test]
fn search_is_deterministic() {
    let target = table_cnot_b();
    let a = brute_force_search(&target, &cnot_space(), 1e-10, true).unwrap();
    let b = brute_force_search(&target, &cnot_space(), 1e-10, true).unwrap();
    assert_eq!(a, b);
}

#[test]
fn isolated_irrational_phase_is_not_reachable() {
    let one = c(1.0, 0.0);
    let target = Matrix::diagonal(&[
        one,
        one,
        one,
        one,
        Complex64::from_polar(1.0, std::f64::consts::PI / 7.0),
    ]);
    let r = brute_force_search(&target, &cnot_space(), 1e-10, true).unwrap();
    assert!(!r.found);
    assert_eq!(r.candidates_examined, 1 + 140 + 140 * 140);
    assert!(r.residual > 1e-10);
}

#[test]
fn exact_phase_mode_rejects_global_phase_variants() {
    let target = GateSpec::by_name(GateName::HadamardA).unwrap().reference;
    let shifted = target.scale(c(0.0, 1.0));
    let seq = GateSpec::by_name(GateName::HadamardA).unwrap().sequence;
    assert!(!verify_decomposition(&seq, &shifted, 1e-10, false).unwrap().found);
    let blind = verify_decomposition(&seq, &shifted, 1e-10, true).unwrap();
    assert!(blind.found);
    assert!((blind.phase - c(0.0, -1.0)).norm() <= 1e-10);
}

#[test]
fn planted_sequences_are_always_found() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pairs = vec![(0, 1), (1, 2), (2, 4)];
    let grid = vec![0.5, 1.0, 3.0];
    let space = SearchSpace::new(5, vec![Axis::X, Axis::Y], pairs.clone(), grid.clone(), 3).unwrap();
    for _ in 0..12 {
        let depth = rng.gen_range(1..=3);
        let pulses: Vec<Pulse> = (0..depth)
            .map(|_| {
                let (j, k) = pairs[rng.gen_range(0..pairs.len())];
                let t = grid[rng.gen_range(0..grid.len())];
                if rng.gen_bool(0.5) {
                    Pulse::x(j, k, t)
                } else {
                    Pulse::y(j, k, t)
                }
            })
            .collect();
        let planted = PulseSequence::new(5, pulses).unwrap();
        let target = planted.evaluate();
        let phase_blind = rng.gen_bool(0.5);
        let r = brute_force_search(&target, &space, 1e-10, phase_blind).unwrap();
        assert!(r.found, "planted {planted} not found");
        assert!(r.sequence.len() <= planted.len());
        assert!(verify_decomposition(&r.sequence, &target, 1e-10, phase_blind).unwrap().found);
    }
}
