mod common;

use common::*;
use nsbox::circuits::{
    bipartite_circuit, restricted_cnot_state, run_bipartite_classical_oracle,
    run_bipartite_quantum_oracle, run_nparty_xyz_oracle, run_oracle, run_tripartite_classical_oracle,
    run_tripartite_quantum_oracle, BoxFunction, OracleSpec, PrimedState,
};
use nsbox::linalg::{partial_trace, CMatrix, DensityMatrix, Limits, StateVector, Unitary};
use nsbox::Error;

/// Full 16×16 bipartite oracle on wires (A, B, B', A') as a product of
/// dense matrices.
fn dense_bipartite_oracle() -> CMatrix<f64> {
    let h = embed(&hadamard(), 4, &[2]);
    let cx = embed(&mcx(1), 4, &[2, 3]);
    let ccx = embed(&mcx(2), 4, &[0, 1, 2]);
    ccx.matmul(&cx.matmul(&h).unwrap()).unwrap()
}

#[test]
fn pauli_pair_flips_both_bits() {
    let xx = Unitary::<f64>::pauli_x().kron(&Unitary::pauli_x(), &Limits::default()).unwrap();
    let out = StateVector::from_bits(&[0, 0]).unwrap().apply(&xx, &[0, 1]).unwrap();
    assert!(out.approx_eq(&StateVector::from_bits(&[1, 1]).unwrap(), 1e-15));
}

#[test]
fn restricted_cnot_makes_phi_plus() {
    let phi = StateVector::from_real_unnormalized(&[1.0, 0.0, 0.0, 1.0]).unwrap();
    assert!(restricted_cnot_state::<f64>().unwrap().approx_eq(&phi, 1e-15));
}

#[test]
fn circuit_matches_dense_product_for_every_input() {
    let u = dense_bipartite_oracle();
    let layout = bipartite_circuit();
    for x in 0..2u8 {
        for y in 0..2u8 {
            let init = basis_column(4, ((x as usize) << 3) | ((y as usize) << 2));
            let expected = u.matvec(&init).unwrap();
            let got = layout.run_full_quantum::<f64>(&[x, y]).unwrap();
            for (e, g) in expected.iter().zip(got.amplitudes()) {
                assert!((e - g).norm() < 1e-14, "x={x} y={y}");
            }
            // inputs untouched, primed pair A'-first
            let rho = reduce(&expected, 4, &[3, 2]);
            let primed = run_bipartite_quantum_oracle::<f64>(x, y).unwrap();
            assert!(max_dev(&rho, &primed.to_density_matrix()) < 1e-14);
        }
    }
}

#[test]
fn tracing_out_inputs_at_zero_zero_leaves_phi_plus() {
    let full = bipartite_circuit().run_full_quantum::<f64>(&[0, 0]).unwrap();
    let reduced = partial_trace(&full.to_density_matrix(), &[3, 2]).unwrap();
    let phi = StateVector::from_real_unnormalized(&[1.0, 0.0, 0.0, 1.0]).unwrap();
    assert!(reduced.approx_eq(&phi.to_density_matrix(), TOL));
}

#[test]
fn primed_states_follow_input_parity() {
    // (|0, xy⟩ + |1, xy⊕1⟩)/√2 with A' first
    for x in 0..2u8 {
        for y in 0..2u8 {
            let xy = (x & y) as usize;
            let mut amps = [0.0; 4];
            amps[xy] = 1.0;
            amps[2 | (xy ^ 1)] = 1.0;
            let expected = StateVector::from_real_unnormalized(&amps).unwrap();
            let got = run_bipartite_quantum_oracle::<f64>(x, y).unwrap();
            assert!(got.approx_eq(&expected, 1e-15), "x={x} y={y}");
        }
    }
    let psi = StateVector::from_real_unnormalized(&[0.0, 1.0, 1.0, 0.0]).unwrap();
    assert!(run_bipartite_quantum_oracle::<f64>(1, 1).unwrap().approx_eq(&psi, 1e-15));
}

#[test]
fn classical_oracle_is_half_half_on_parity_cells() {
    for x in 0..2u8 {
        for y in 0..2u8 {
            let xy = (x & y) as usize;
            let s = run_bipartite_classical_oracle::<f64>(x, y).unwrap();
            let mut expected = [0.0; 4];
            expected[xy] = 0.5;
            expected[2 | (xy ^ 1)] = 0.5;
            assert_eq!(s.probabilities(), &expected[..], "x={x} y={y}");
        }
    }
}

#[test]
fn quantum_and_classical_agree_in_computational_basis() {
    let limits = Limits::default();
    let specs = [
        OracleSpec::bipartite(true),
        OracleSpec::tripartite(BoxFunction::Xyz, true),
        OracleSpec::tripartite(BoxFunction::XTimesYPlusZ, true),
        OracleSpec::tripartite(BoxFunction::Svetlichny, true),
        OracleSpec::nparty_xyz(4, true).unwrap(),
        OracleSpec::nparty_xyz(5, true).unwrap(),
    ];
    for spec in specs {
        let n = spec.parties();
        for r in 0..1usize << n {
            let bits: Vec<u8> = (0..n).map(|k| ((r >> (n - 1 - k)) & 1) as u8).collect();
            let q: PrimedState<f64> = run_oracle(&spec, &bits, &limits).unwrap();
            let c: PrimedState<f64> = run_oracle(&spec.counterpart(), &bits, &limits).unwrap();
            let (pq, pc) = (q.computational_distribution(), c.computational_distribution());
            for (a, b) in pq.iter().zip(&pc) {
                assert!((a - b).abs() < 1e-12, "{spec} inputs {bits:?}");
            }
        }
    }
}

/// Uniform superposition over primed strings of the given parity.
fn parity_state(n: usize, parity: usize) -> StateVector<f64> {
    let amps: Vec<f64> = (0..1usize << n)
        .map(|i| if i.count_ones() as usize % 2 == parity { 1.0 } else { 0.0 })
        .collect();
    StateVector::from_real_unnormalized(&amps).unwrap()
}

#[test]
fn tripartite_xyz_states() {
    let odd = run_tripartite_quantum_oracle::<f64>(BoxFunction::Xyz, 1, 1, 1).unwrap();
    assert!(odd.approx_eq(&parity_state(3, 1), 1e-14));
    let even = run_tripartite_quantum_oracle::<f64>(BoxFunction::Xyz, 0, 1, 1).unwrap();
    assert!(even.approx_eq(&parity_state(3, 0), 1e-14));
}

#[test]
fn tripartite_outputs_track_box_function() {
    for f in [BoxFunction::Xyz, BoxFunction::XTimesYPlusZ, BoxFunction::Svetlichny] {
        for r in 0..8u8 {
            let (x, y, z) = (r >> 2, (r >> 1) & 1, r & 1);
            let target = f.eval(&[x, y, z]).unwrap() as usize;
            let q = run_tripartite_quantum_oracle::<f64>(f, x, y, z).unwrap();
            assert!(q.approx_eq(&parity_state(3, target), 1e-14), "{f} {r}");
            let cl = run_tripartite_classical_oracle::<f64>(f, x, y, z).unwrap();
            for (i, p) in cl.probabilities().iter().enumerate() {
                let want = if i.count_ones() as usize % 2 == target { 0.25 } else { 0.0 };
                assert!((p - want).abs() < 1e-15);
            }
        }
    }
    let sv = run_tripartite_quantum_oracle::<f64>(BoxFunction::Svetlichny, 1, 1, 0).unwrap();
    assert!(sv.approx_eq(&parity_state(3, 1), 1e-14));
}

#[test]
fn nparty_reduces_to_smaller_oracles() {
    let limits = Limits::default();
    for r in 0..4u8 {
        let (x, y) = (r >> 1, r & 1);
        let n2 = run_nparty_xyz_oracle::<f64>(true, &[x, y], &limits).unwrap();
        let bi = run_bipartite_quantum_oracle::<f64>(x, y).unwrap();
        assert!(n2.as_pure().unwrap().approx_eq(&bi, 1e-14));
        let n2c = run_nparty_xyz_oracle::<f64>(false, &[x, y], &limits).unwrap();
        let bic = run_bipartite_classical_oracle::<f64>(x, y).unwrap();
        assert!(n2c.as_classical().unwrap().max_abs_diff(&bic) < 1e-15);
    }
    let n3 = run_nparty_xyz_oracle::<f64>(true, &[1, 1, 1], &limits).unwrap();
    let tri = run_tripartite_quantum_oracle::<f64>(BoxFunction::Xyz, 1, 1, 1).unwrap();
    assert!(n3.as_pure().unwrap().approx_eq(&tri, 1e-14));
}

#[test]
fn party_cap_is_enforced() {
    let limits = Limits::new(4);
    let err = run_nparty_xyz_oracle::<f64>(true, &[1; 5], &limits).unwrap_err();
    assert!(matches!(err, Error::Capacity { .. }));
    assert!(run_nparty_xyz_oracle::<f64>(true, &[1; 4], &limits).is_ok());
}

#[test]
fn inputs_must_be_bits() {
    assert!(run_bipartite_quantum_oracle::<f64>(2, 0).is_err());
    assert!(run_oracle::<f64>(&OracleSpec::bipartite(true), &[0], &Limits::default()).is_err());
}

#[test]
fn f32_oracle_agrees_with_f64() {
    for r in 0..4u8 {
        let a = run_bipartite_quantum_oracle::<f32>(r >> 1, r & 1).unwrap();
        let b = run_bipartite_quantum_oracle::<f64>(r >> 1, r & 1).unwrap();
        for (p, q) in a.probabilities().iter().zip(b.probabilities()) {
            assert!((*p as f64 - q).abs() < 1e-6);
        }
    }
    let _ = DensityMatrix::<f32>::maximally_mixed(2);
}
