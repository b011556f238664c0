mod common;

use proptest::prelude::*;
use qudit_core::circuit::{compile, parse_circuit, CircuitProgram, Statement};
use qudit_core::deutsch::coarse_measure;
use qudit_core::gates::{logical_cnot, GateName};
use qudit_core::levels::{embed_two_qubit, reduce_subsystem, Subsystem};
use qudit_core::linalg::{ALGEBRA_TOL, PHYSICS_TOL};
use qudit_core::phase::global_phase_distance;
use qudit_core::pulse::{canonical_angle, expand_y, pulse_unitary};
use qudit_core::{Axis, Complex64, LChoice, Matrix, Pulse, PulseSequence, StateVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

fn arb_pulse(dim: usize) -> impl Strategy<Value = Pulse> {
    (
        prop_oneof![Just(Axis::X), Just(Axis::Y)],
        0..dim,
        1..dim,
        -8.0f64..8.0,
    )
        .prop_map(move |(axis, j, offset, t)| Pulse {
            axis,
            j,
            k: (j + offset) % dim,
            theta_over_pi: t,
        })
}

fn arb_sequence(max_len: usize) -> impl Strategy<Value = PulseSequence> {
    prop::collection::vec(arb_pulse(5), 0..=max_len)
        .prop_map(|p| PulseSequence::new(5, p).unwrap())
}

fn arb_state() -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 5)
        .prop_filter("nonzero", |v| v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3))
        .prop_map(|v| {
            let amps: Vec<Complex64> = v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect();
            let n = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            StateVector::from_amplitudes(amps.into_iter().map(|z| z / n).collect())
        })
}

fn arb_statement() -> impl Strategy<Value = Statement> {
    let named = prop::sample::select(GateName::catalog()).prop_map(Statement::Gate);
    let raw = (arb_pulse(5), -16i32..16).prop_map(|(p, quarter)| {
        Statement::Raw(Pulse {
            theta_over_pi: quarter as f64 / 4.0,
            ..p
        })
    });
    prop_oneof![named, raw]
}

fn arb_program(max_len: usize) -> impl Strategy<Value = CircuitProgram> {
    prop::collection::vec(arb_statement(), 0..=max_len).prop_map(CircuitProgram::new)
}

fn arb_phase() -> impl Strategy<Value = Complex64> {
    (0.0f64..std::f64::consts::TAU).prop_map(|a| Complex64::from_polar(1.0, a))
}

proptest! {
    #[test]
    fn pulses_match_their_defining_block(p in arb_pulse(5)) {
        let u = pulse_unitary(&p, 5).unwrap();
        prop_assert!(u.max_abs_diff(&explicit_pulse(&p, 5)).unwrap() <= ALGEBRA_TOL);
    }

    #[test]
    fn block_locality(p in arb_pulse(5)) {
        let u = pulse_unitary(&p, 5).unwrap();
        for i in (0..5).filter(|&i| i != p.j && i != p.k) {
            let col = u.column(i);
            for (r, z) in col.iter().enumerate() {
                let expected = if r == i { 1.0 } else { 0.0 };
                prop_assert_eq!(*z, Complex64::new(expected, 0.0));
            }
        }
    }

    #[test]
    fn evaluation_matches_explicit_product(seq in arb_sequence(12)) {
        let oracle = explicit_sequence(seq.pulses(), 5);
        prop_assert!(seq.evaluate().max_abs_diff(&oracle).unwrap() <= 1e-11);
    }

    #[test]
    fn sequences_are_special_unitary(seq in arb_sequence(20)) {
        let u = seq.evaluate();
        prop_assert!(u.is_unitary(PHYSICS_TOL));
        prop_assert!((u.determinant() - Complex64::new(1.0, 0.0)).norm() <= PHYSICS_TOL);
    }

    #[test]
    fn same_pair_angles_add(j in 0usize..5, off in 1usize..5, a in -6.0f64..6.0, b in -6.0f64..6.0) {
        let k = (j + off) % 5;
        let two = PulseSequence::new(5, vec![Pulse::x(j, k, a), Pulse::x(j, k, b)]).unwrap();
        let one = pulse_unitary(&Pulse::x(j, k, a + b), 5).unwrap();
        prop_assert!(two.evaluate().max_abs_diff(&one).unwrap() <= ALGEBRA_TOL);
    }

    #[test]
    fn apply_agrees_with_evaluate(seq in arb_sequence(15), s in arb_state()) {
        let direct = seq.apply(&s).unwrap();
        let via_matrix = seq.evaluate().mul_vec(&s).unwrap();
        prop_assert!(direct.max_abs_diff(&via_matrix).unwrap() <= ALGEBRA_TOL);
        prop_assert!((direct.norm_sqr() - 1.0).abs() <= PHYSICS_TOL);
    }

    #[test]
    fn adjoint_inverts(seq in arb_sequence(20)) {
        let prod = seq.adjoint().evaluate().matmul(&seq.evaluate()).unwrap();
        prop_assert!(prod.max_abs_diff(&Matrix::identity(5)).unwrap() <= PHYSICS_TOL);
        prop_assert_eq!(seq.adjoint().adjoint(), seq);
    }

    #[test]
    fn canonicalization_preserves_the_operator(seq in arb_sequence(10)) {
        let canon = seq.canonicalize_theta();
        for p in canon.pulses() {
            prop_assert!(p.theta_over_pi >= 0.0 && p.theta_over_pi < 4.0);
        }
        prop_assert!(canon.evaluate().max_abs_diff(&seq.evaluate()).unwrap() <= ALGEBRA_TOL);
    }

    #[test]
    fn canonical_angle_is_idempotent(t in -100.0f64..100.0) {
        let c1 = canonical_angle(t);
        prop_assert_eq!(canonical_angle(c1).to_bits(), c1.to_bits());
    }

    #[test]
    fn schedule_json_round_trip_is_bit_exact(seq in arb_sequence(10)) {
        let canon = seq.canonicalize_theta();
        let back = PulseSequence::from_json(&canon.to_json()).unwrap();
        prop_assert_eq!(back.len(), canon.len());
        for (a, b) in back.pulses().iter().zip(canon.pulses()) {
            prop_assert_eq!(a.theta_over_pi.to_bits(), b.theta_over_pi.to_bits());
            prop_assert_eq!((a.axis, a.j, a.k), (b.axis, b.j, b.k));
        }
        prop_assert_eq!(back.to_json(), canon.to_json());
    }

    #[test]
    fn lowering_preserves_the_operator(p in arb_program(6)) {
        let high = compile(&p, false).unwrap();
        let low = compile(&p, true).unwrap();
        prop_assert_eq!(low.count_axis(Axis::Y), 0);
        prop_assert!(high.evaluate().max_abs_diff(&low.evaluate()).unwrap() <= 1e-11);
    }

    #[test]
    fn compile_is_homomorphic(p1 in arb_program(5), p2 in arb_program(5)) {
        for lower in [false, true] {
            let joined = compile(&p1.concat(&p2), lower).unwrap();
            let parts = compile(&p1, lower).unwrap().then(&compile(&p2, lower).unwrap()).unwrap();
            prop_assert_eq!(joined, parts);
        }
    }

    #[test]
    fn print_parse_round_trip(p in arb_program(10)) {
        let text = p.to_string();
        prop_assert_eq!(parse_circuit(&text).unwrap(), p);
    }

    #[test]
    fn global_phase_is_recovered(seq in arb_sequence(8), c in arb_phase()) {
        let u = seq.evaluate();
        let a = global_phase_distance(&u.scale(c), &u).unwrap();
        prop_assert!(a.residual <= ALGEBRA_TOL);
    }

    #[test]
    fn residual_ignores_a_shared_phase(s1 in arb_sequence(6), s2 in arb_sequence(6), c in arb_phase()) {
        let (u, v) = (s1.evaluate(), s2.evaluate());
        let r1 = global_phase_distance(&u, &v).unwrap().residual;
        let r2 = global_phase_distance(&u.scale(c), &v.scale(c)).unwrap().residual;
        prop_assert!((r1 - r2).abs() <= ALGEBRA_TOL);
        // swapping arguments conjugates the phase and keeps the residual
        let fwd = global_phase_distance(&u, &v).unwrap();
        let back = global_phase_distance(&v, &u).unwrap();
        prop_assert!((fwd.phase.conj() - back.phase).norm() <= ALGEBRA_TOL);
        prop_assert!((fwd.residual - back.residual).abs() <= ALGEBRA_TOL);
    }

    #[test]
    fn embedding_is_unitary_with_product_determinant(
        diag in prop::collection::vec(arb_phase(), 4),
        with_cnot in any::<bool>(),
        c in arb_phase(),
    ) {
        let mut g = Matrix::diagonal(&diag);
        if with_cnot {
            g = g.matmul(&logical_cnot(Subsystem::A)).unwrap();
        }
        let e = embed_two_qubit(&g, c).unwrap();
        prop_assert!(e.is_unitary(PHYSICS_TOL));
        prop_assert!((e.determinant() - g.determinant() * c).norm() <= ALGEBRA_TOL);
    }

    #[test]
    fn verdict_is_phase_blind(s in arb_state(), c in arb_phase()) {
        let a = coarse_measure(&s);
        let b = coarse_measure(&s.scale(c));
        match (a, b) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x.verdict, y.verdict),
            (Err(_), Err(_)) => {}
            _ => prop_assert!(false, "readout changed under a global phase"),
        }
    }
}

#[test]
fn y_synthesis_holds_for_every_pair_level_and_angle() {
    let mut cases = 0;
    for j in 0..5 {
        for k in 0..5 {
            if j == k {
                continue;
            }
            for l in (0..5).filter(|&l| l != j && l != k) {
                for step in 0..16 {
                    let theta = step as f64 * 0.25;
                    let y = Pulse::y(j, k, theta);
                    let expanded = expand_y(&y, LChoice::Fixed(l), 5).unwrap();
                    let oracle = explicit_pulse(&y, 5);
                    let d = expanded.evaluate().max_abs_diff(&oracle).unwrap();
                    assert!(d <= ALGEBRA_TOL, "Y_{j}{k}({theta}π) via {l}: {d}");
                    cases += 1;
                }
            }
        }
    }
    assert_eq!(cases, 20 * 3 * 16);
}

#[test]
fn x_pulses_have_period_four_pi() {
    for j in 0..5 {
        for k in j + 1..5 {
            for step in 0..=16 {
                let t = step as f64 * 0.25;
                let a = pulse_unitary(&Pulse::x(j, k, t), 5).unwrap();
                let b = pulse_unitary(&Pulse::x(j, k, t + 4.0), 5).unwrap();
                assert!(a.max_abs_diff(&b).unwrap() <= ALGEBRA_TOL);
            }
        }
    }
}

#[test]
fn reduced_states_match_brute_force_partial_trace() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..100 {
        let rho = random_logical_density(&mut rng);
        for (which, keep_a) in [(Subsystem::A, true), (Subsystem::B, false)] {
            let red = reduce_subsystem(&rho, which, PHYSICS_TOL).unwrap();
            let oracle = brute_force_partial_trace(&rho, keep_a);
            for (r, row) in oracle.iter().enumerate() {
                for (col, z) in row.iter().enumerate() {
                    assert!((red.get(r, col) - z).norm() <= ALGEBRA_TOL);
                }
            }
            assert!(red.matrix().is_hermitian(PHYSICS_TOL));
            assert!((red.matrix().trace().re - 1.0).abs() <= PHYSICS_TOL);
            assert!(red.eigenvalues().iter().all(|&e| e >= -PHYSICS_TOL));
        }
    }
}
