use eaqec::pauli::{all_paulis, Pauli, PauliOperator};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

fn single(p: Pauli) -> DMatrix<Complex64> {
    let c = |re: f64| Complex64::new(re, 0.0);
    match p {
        Pauli::I => DMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(1.0)]),
        Pauli::X => DMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]),
        Pauli::Y => DMatrix::from_row_slice(2, 2, &[c(0.0), c(-1.0), c(1.0), c(0.0)]),
        Pauli::Z => DMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)]),
    }
}

fn oracle(op: &PauliOperator) -> DMatrix<Complex64> {
    let mut m = DMatrix::from_element(1, 1, Complex64::new(op.sign().value(), 0.0));
    for q in 0..op.n_qubits() {
        m = m.kronecker(&single(op.get(q)));
    }
    m
}

fn pauli_op(n: usize) -> impl Strategy<Value = PauliOperator> {
    (0..1u64 << n, 0..1u64 << n, any::<bool>()).prop_map(move |(x, z, neg)| {
        let op = PauliOperator::from_u64_masks(n, x, z);
        if neg {
            op.negated()
        } else {
            op
        }
    })
}

fn pair(max_n: usize) -> impl Strategy<Value = (PauliOperator, PauliOperator)> {
    (1..=max_n).prop_flat_map(|n| (pauli_op(n), pauli_op(n)))
}

#[test]
fn product_and_commutation_match_matrices_exhaustively() {
    for n in 1..=2 {
        let ops: Vec<_> = all_paulis(n).flat_map(|p| [p.clone(), p.negated()]).collect();
        for a in &ops {
            for b in &ops {
                let (ma, mb) = (oracle(a), oracle(b));
                let prod = a.multiply(b).unwrap();
                assert!((oracle(&prod) - &ma * &mb).norm() < 1e-12, "{a} * {b}");
                let commute = (&ma * &mb - &mb * &ma).norm() < 1e-12;
                assert_eq!(a.commutes(b).unwrap(), commute, "{a}, {b}");
            }
        }
    }
}

#[test]
fn y_is_x_times_z() {
    let y: PauliOperator = "Y".parse().unwrap();
    assert_eq!("X".parse::<PauliOperator>().unwrap().multiply(&"Z".parse().unwrap()).unwrap(), y);
    assert_eq!(y.multiply(&y).unwrap(), "-I".parse().unwrap());
}

proptest! {
    #[test]
    fn product_matches_matrix_oracle((a, b) in pair(3)) {
        let prod = a.multiply(&b).unwrap();
        prop_assert!((oracle(&prod) - oracle(&a) * oracle(&b)).norm() < 1e-12);
    }

    #[test]
    fn commutation_matches_matrix_oracle((a, b) in pair(3)) {
        let (ma, mb) = (oracle(&a), oracle(&b));
        prop_assert_eq!(a.commutes(&b).unwrap(), (&ma * &mb - &mb * &ma).norm() < 1e-12);
    }

    #[test]
    fn to_matrix_is_a_homomorphism((a, b) in pair(3)) {
        let prod = a.multiply(&b).unwrap().to_matrix().unwrap();
        let expected = a.to_matrix().unwrap() * b.to_matrix().unwrap();
        prop_assert!((prod - expected).norm() < 1e-12);
    }

    #[test]
    fn multiplication_is_associative(n in 1usize..6, seed in any::<[u64; 6]>()) {
        let m = (1u64 << n) - 1;
        let a = PauliOperator::from_u64_masks(n, seed[0] & m, seed[1] & m);
        let b = PauliOperator::from_u64_masks(n, seed[2] & m, seed[3] & m);
        let c = PauliOperator::from_u64_masks(n, seed[4] & m, seed[5] & m);
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn display_parses_back(op in (1usize..8).prop_flat_map(pauli_op)) {
        prop_assert_eq!(op.to_string().parse::<PauliOperator>().unwrap(), op);
    }

    #[test]
    fn commutation_is_symmetric((a, b) in pair(6)) {
        prop_assert_eq!(a.commutes(&b).unwrap(), b.commutes(&a).unwrap());
    }
}
