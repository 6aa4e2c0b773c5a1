use num_complex::Complex64;
use proptest::prelude::*;

use qeuler::designs::{
    classical_embed, mols_construct, mols_pair, ols_to_permutation, permutation_to_ols, qols_verify, Design,
    LatinSquare, OrthogonalLatinPair, QuantumSquare,
};
use qeuler::field::Field;
use qeuler::linalg::{
    multi_unitarity_check, partial_transpose, reshuffle, two_unitarity_defect, unitarity_defect, ComplexMatrix, Side,
};
use qeuler::solver::{amplitude_profile, ginibre, haar_unitary, rng_from_seed, search, SearchConfig};
use qeuler::states::{ame_check, reduced_density, state_from_two_unitary, PureState};

fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (m, n) = (a.order(), b.order());
    ComplexMatrix::from_fn(m * n, |r, c| a.get(r / n, c / n) * b.get(r % n, c % n)).with_block_dim(n).unwrap()
}

fn relabel_pair(q: usize, sigma: &[usize], tau: &[usize]) -> OrthogonalLatinPair {
    let p = mols_pair(q).unwrap();
    OrthogonalLatinPair::new(p.ranks.relabel(sigma).unwrap(), p.suits.relabel(tau).unwrap()).unwrap()
}

fn prime_power_order() -> impl Strategy<Value = usize> {
    prop::sample::select(vec![3usize, 4, 5, 7, 8, 9])
}

fn order_and_labels() -> impl Strategy<Value = (usize, Vec<usize>, Vec<usize>)> {
    prime_power_order().prop_flat_map(|q| {
        let ids: Vec<usize> = (0..q).collect();
        (Just(q), Just(ids.clone()).prop_shuffle(), Just(ids).prop_shuffle())
    })
}

#[test]
fn field_axioms_exhaustive() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 16] {
        let f = Field::new(q).unwrap();
        let el: Vec<_> = f.elements().collect();
        assert_eq!(el.len() as u64, q);
        for a in &el {
            assert_eq!(f.add(a, &f.zero()), *a);
            assert_eq!(f.mul(a, &f.one()), *a);
            assert_eq!(f.add(a, &f.neg(a)), f.zero());
            if *a != f.zero() {
                assert_eq!(f.mul(a, &f.inv(a).unwrap()), f.one(), "GF({q})");
            }
            for b in &el {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in &el {
                    assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
                    assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
                }
            }
        }
        let nonzero: Vec<_> = el.iter().filter(|a| **a != f.zero()).collect();
        let generator = nonzero.iter().any(|g| (1..q - 1).all(|e| f.pow(g, e) != f.one()));
        assert!(generator, "GF({q}) has a cyclic multiplicative group");
    }
}

#[test]
fn mols_pairwise_orthogonal() {
    for q in [3, 4, 5, 7, 8, 9] {
        let squares = mols_construct(q).unwrap();
        assert_eq!(squares.len(), q - 1);
        for a in &squares {
            for b in &squares {
                if a != b {
                    assert!(OrthogonalLatinPair::new(a.clone(), b.clone()).unwrap().distinct_pairs() == q * q);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn permutation_round_trip((q, sigma, tau) in order_and_labels()) {
        let pair = relabel_pair(q, &sigma, &tau);
        let p = ols_to_permutation(&pair).unwrap();
        prop_assert!(p.as_permutation().is_some());
        prop_assert!(reshuffle(&p).unwrap().as_permutation().is_some());
        prop_assert!(partial_transpose(&p, Side::Second).unwrap().as_permutation().is_some());
        prop_assert_eq!(two_unitarity_defect(&p).unwrap(), 0.0);
        prop_assert_eq!(permutation_to_ols(&p).unwrap(), pair);
    }

    #[test]
    fn local_unitaries_keep_qols((q, sigma, tau) in (Just(3usize), Just(vec![0, 1, 2]).prop_shuffle(), Just(vec![0, 1, 2]).prop_shuffle()), seed in any::<u64>()) {
        let square = classical_embed(&relabel_pair(q, &sigma, &tau)).unwrap();
        let mut rng = rng_from_seed(seed);
        let u = kron(&haar_unitary(q, &mut rng).unwrap(), &haar_unitary(q, &mut rng).unwrap());
        let rotated = square.map_cells(&u).unwrap();
        prop_assert!(qols_verify(&rotated, 1e-10).unwrap().passed());
    }

    #[test]
    fn qols_agrees_with_defect(seed in any::<u64>(), two_unitary in any::<bool>()) {
        let mut rng = rng_from_seed(seed);
        let u = if two_unitary {
            let p9 = ols_to_permutation(&mols_pair(3).unwrap()).unwrap();
            let a = kron(&haar_unitary(3, &mut rng).unwrap(), &haar_unitary(3, &mut rng).unwrap());
            let b = kron(&haar_unitary(3, &mut rng).unwrap(), &haar_unitary(3, &mut rng).unwrap());
            a.matmul(&p9).matmul(&b)
        } else {
            haar_unitary(9, &mut rng).unwrap().with_block_dim(3).unwrap()
        };
        let defect = two_unitarity_defect(&u).unwrap();
        let qols = qols_verify(&QuantumSquare::from_matrix_rows(&u).unwrap(), 1e-9).unwrap().passed();
        let ame = ame_check(&state_from_two_unitary(&u).unwrap(), 1e-9).unwrap().passed();
        prop_assert_eq!(defect <= 1e-9, two_unitary);
        prop_assert_eq!(qols, two_unitary);
        prop_assert_eq!(ame, two_unitary);
        let multi = multi_unitarity_check(&u.entries().iter().map(|z| z / 3.0).collect::<Vec<_>>(), 3, 2, 1e-9).unwrap();
        prop_assert_eq!(multi.all_passed(), two_unitary);
    }

    #[test]
    fn reduced_states_are_density_matrices(seed in any::<u64>(), d in 2usize..=3, mask in 1u8..15) {
        let psi = PureState::normalized(vec![d; 4], ginibre(d * d, &mut rng_from_seed(seed))).unwrap();
        let keep: Vec<usize> = (0..4).filter(|p| mask >> p & 1 == 1).collect();
        let rho = reduced_density(&psi, &keep).unwrap();
        prop_assert!((rho.trace() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        prop_assert!(rho.matrix.sub(&rho.matrix.adjoint()).frobenius_norm() < 1e-14);
    }

    #[test]
    fn search_is_deterministic(seed in any::<u64>(), d in 2usize..=3) {
        let mut c = SearchConfig::new(d);
        c.rng_seed = seed;
        c.max_iter = 20;
        let a = search(&c).unwrap();
        let b = search(&c).unwrap();
        prop_assert_eq!(&a.defect_trace, &b.defect_trace);
        prop_assert!(unitarity_defect(&a.terminal) <= 1e-10);
        prop_assert_eq!(a.converged, a.defect_trace.last().copied().unwrap() <= c.tol);
    }

    #[test]
    fn profile_counts_nonzeros(seed in any::<u64>(), zeros in 0usize..16) {
        let mut entries = ginibre(4, &mut rng_from_seed(seed));
        for z in entries.iter_mut().take(zeros) {
            *z = Complex64::new(0.0, 0.0);
        }
        let m = ComplexMatrix::square(4, entries).unwrap();
        let prof = amplitude_profile(&m, 1e-12);
        prop_assert_eq!(prof.iter().map(|p| p.1).sum::<usize>(), 16 - zeros);
        prop_assert!(prof.windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn json_round_trips(seed in any::<u64>(), d in 2usize..=3) {
        let m = ComplexMatrix::square(d * d, ginibre(d * d, &mut rng_from_seed(seed))).unwrap().with_block_dim(d).unwrap();
        let back: ComplexMatrix = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        prop_assert_eq!(back, m.clone());
        let psi = state_from_two_unitary(&m).unwrap();
        prop_assert_eq!(PureState::from_json(&psi.to_json().unwrap()).unwrap(), psi);
        let design = Design::Qols(QuantumSquare::from_matrix_rows(&haar_unitary(d * d, &mut rng_from_seed(seed)).unwrap().with_block_dim(d).unwrap()).unwrap());
        prop_assert_eq!(Design::from_json(&design.to_json().unwrap()).unwrap(), design);
        let ls = Design::Ls(LatinSquare::new((0..d).map(|i| (0..d).map(|j| (i + j) % d).collect()).collect()).unwrap());
        prop_assert_eq!(Design::from_json(&ls.to_json().unwrap()).unwrap(), ls);
    }
}
