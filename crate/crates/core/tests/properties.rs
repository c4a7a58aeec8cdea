use entbreak_core::channels::{apply_local, local_unitary, KrausChannel};
use entbreak_core::linalg::{hermitian_eigen, kron, ComplexMatrix};
use entbreak_core::measures::{concurrence, entanglement_of_formation, negativity};
use entbreak_core::random::{haar_unitary, random_channel, random_density, random_hermitian, stream_rng};
use entbreak_core::{DensityMatrix, PureState, Subsystem};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn config() -> Config {
    Config {
        cases: 1000,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..Config::default()
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    stream_rng(seed, 0)
}

fn dims() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![Just((2, 2)), Just((2, 3)), Just((3, 2)), Just((3, 3))]
}

fn side() -> impl Strategy<Value = Subsystem> {
    prop_oneof![Just(Subsystem::A), Just(Subsystem::B)]
}

fn min_eigenvalue(m: &ComplexMatrix) -> f64 {
    hermitian_eigen(m).unwrap().eigenvalues[0]
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn eigen_reconstruction(seed: u64, n in prop_oneof![Just(4usize), Just(9usize)]) {
        let a = random_hermitian(&mut rng(seed), n);
        let e = hermitian_eigen(&a).unwrap();
        prop_assert!(e.reconstruct().max_abs_diff(&a) <= 1e-10);
        let v = &e.eigenvectors;
        prop_assert!(v.adjoint().matmul(v).max_abs_diff(&ComplexMatrix::identity(n)) <= 1e-10);
        prop_assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        let trace: f64 = e.eigenvalues.iter().sum();
        prop_assert!((trace - a.trace().re).abs() <= 1e-10);
    }

    #[test]
    fn random_channels_are_complete(seed: u64, d in 2usize..=3, rank in 1usize..=9) {
        let ch = random_channel(&mut rng(seed), d, rank).unwrap();
        prop_assert!(ch.completeness_error() <= 1e-12);
        prop_assert_eq!(ch.ops().len(), rank);
    }

    #[test]
    fn apply_local_preserves_trace_and_positivity(seed: u64, (da, db) in dims(), side in side(), rank in 1usize..=4) {
        let mut r = rng(seed);
        let rho = random_density(&mut r, da, db);
        let d = rho.dim(side);
        let ch = random_channel(&mut r, d, rank).unwrap();
        let out = apply_local(&ch, &rho, side).unwrap();
        prop_assert!((out.matrix().trace().re - 1.0).abs() <= 1e-12);
        prop_assert!(out.matrix().trace().im.abs() <= 1e-12);
        prop_assert!(out.matrix().hermitian_deviation() <= 1e-12);
        prop_assert!(min_eigenvalue(out.matrix()) >= -1e-10);
    }

    #[test]
    fn channels_on_different_sides_commute(seed: u64, (da, db) in dims(), ra in 1usize..=4, rb in 1usize..=4) {
        let mut r = rng(seed);
        let rho = random_density(&mut r, da, db);
        let ca = random_channel(&mut r, da, ra).unwrap();
        let cb = random_channel(&mut r, db, rb).unwrap();
        let ab = apply_local(&cb, &apply_local(&ca, &rho, Subsystem::A).unwrap(), Subsystem::B).unwrap();
        let ba = apply_local(&ca, &apply_local(&cb, &rho, Subsystem::B).unwrap(), Subsystem::A).unwrap();
        prop_assert!(ab.max_abs_diff(&ba) <= 1e-13);
    }

    #[test]
    fn local_unitaries_leave_measures_unchanged(seed: u64) {
        let mut r = rng(seed);
        let rho = random_density(&mut r, 2, 2);
        let rotated = local_unitary(
            &local_unitary(&rho, &haar_unitary(&mut r, 2), Subsystem::A).unwrap(),
            &haar_unitary(&mut r, 2),
            Subsystem::B,
        )
        .unwrap();
        let (n0, n1) = (negativity(&rho).unwrap().0, negativity(&rotated).unwrap().0);
        prop_assert!((n0 - n1).abs() <= 1e-10);
        let (c0, c1) = (concurrence(&rho).unwrap(), concurrence(&rotated).unwrap());
        prop_assert!((c0 - c1).abs() <= 1e-10, "C {} vs {}", c0, c1);
        let (e0, e1) = (entanglement_of_formation(&rho).unwrap(), entanglement_of_formation(&rotated).unwrap());
        prop_assert!((e0 - e1).abs() <= 1e-9, "E_f {} vs {}", e0, e1);
    }

    #[test]
    fn negativity_invariant_under_qutrit_local_unitaries(seed: u64, (da, db) in dims()) {
        let mut r = rng(seed);
        let rho = random_density(&mut r, da, db);
        let rotated = local_unitary(
            &local_unitary(&rho, &haar_unitary(&mut r, da), Subsystem::A).unwrap(),
            &haar_unitary(&mut r, db),
            Subsystem::B,
        )
        .unwrap();
        prop_assert!((negativity(&rho).unwrap().0 - negativity(&rotated).unwrap().0).abs() <= 1e-10);
    }

    #[test]
    fn concurrence_bounds_negativity(seed: u64) {
        let rho = random_density(&mut rng(seed), 2, 2);
        let n = negativity(&rho).unwrap().0;
        let c = concurrence(&rho).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&c));
        prop_assert!(n <= c + 1e-10, "N = {} > C = {}", n, c);
        // negativity and concurrence vanish together in 2x2
        prop_assert_eq!(n > 1e-8, c > 1e-8);
    }

    #[test]
    fn pure_two_qubit_measures_match_schmidt_form(seed: u64) {
        let mut r = rng(seed);
        let amps = (0..4).map(|_| entbreak_core::linalg::c(r.random::<f64>() - 0.5, r.random::<f64>() - 0.5)).collect();
        let (psi, _) = PureState::normalized(2, 2, amps).unwrap();
        let s = psi.schmidt_coefficients().unwrap();
        let expected = 2.0 * s[0] * s[1];
        let rho = DensityMatrix::from_pure(&psi);
        prop_assert!((negativity(&rho).unwrap().0 - expected).abs() <= 1e-10);
        prop_assert!((concurrence(&rho).unwrap() - expected).abs() <= 1e-10);
    }

    #[test]
    fn partial_transpose_matches_index_swap(seed: u64, (da, db) in dims(), side in side()) {
        let rho = random_density(&mut rng(seed), da, db);
        let m = rho.matrix();
        let pt = rho.partial_transpose(side);
        for i in 0..da {
            for j in 0..db {
                for k in 0..da {
                    for l in 0..db {
                        let expected = match side {
                            Subsystem::B => m[(i * db + l, k * db + j)],
                            Subsystem::A => m[(k * db + j, i * db + l)],
                        };
                        prop_assert_eq!(pt[(i * db + j, k * db + l)], expected);
                    }
                }
            }
        }
        prop_assert!((pt.trace() - m.trace()).norm() <= 1e-14);
        prop_assert!(pt.hermitian_deviation() <= 1e-15);
    }

    #[test]
    fn kron_is_associative_and_bilinear(seed: u64, x in -2.0f64..2.0) {
        let mut r = rng(seed);
        let a = random_hermitian(&mut r, 2);
        let b = random_hermitian(&mut r, 3);
        let b2 = random_hermitian(&mut r, 3);
        let c = random_hermitian(&mut r, 2);
        let left = kron(&kron(&a, &b), &c);
        let right = kron(&a, &kron(&b, &c));
        prop_assert!(left.max_abs_diff(&right) <= 1e-15);
        let sum = kron(&a, &(&b + &b2.scale_real(x)));
        let split = &kron(&a, &b) + &kron(&a, &b2).scale_real(x);
        prop_assert!(sum.max_abs_diff(&split) <= 1e-14);
        let mixed = kron(&a, &b).matmul(&kron(&c, &b2));
        prop_assert!(mixed.max_abs_diff(&kron(&a.matmul(&c), &b.matmul(&b2))) <= 1e-13);
    }

    #[test]
    fn partial_trace_of_product(seed: u64, (da, db) in dims()) {
        let mut r = rng(seed);
        let ra = random_density(&mut r, da, 1).into_matrix();
        let rb = random_density(&mut r, db, 1).into_matrix();
        let rho = DensityMatrix::product(&ra, &rb).unwrap();
        prop_assert!(rho.partial_trace(Subsystem::A).max_abs_diff(&ra) <= 1e-15);
        prop_assert!(rho.partial_trace(Subsystem::B).max_abs_diff(&rb) <= 1e-15);
        prop_assert!(negativity(&rho).unwrap().0 <= 1e-12);
    }

    #[test]
    fn identity_and_unitary_channels(seed: u64, (da, db) in dims(), side in side()) {
        let mut r = rng(seed);
        let rho = random_density(&mut r, da, db);
        let d = rho.dim(side);
        let same = apply_local(&KrausChannel::identity(d), &rho, side).unwrap();
        prop_assert!(same.max_abs_diff(&rho) <= 1e-15);
        let u = haar_unitary(&mut r, d);
        let via_channel = apply_local(&KrausChannel::unitary(&u).unwrap(), &rho, side).unwrap();
        prop_assert!(via_channel.max_abs_diff(&local_unitary(&rho, &u, side).unwrap()) <= 1e-14);
    }
}
