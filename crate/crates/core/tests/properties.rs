mod common;

use common::*;
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

use qaplin::decompose::{decompose, extract_cut_step, recompose, split_symmetric, StepOutcome};
use qaplin::enumerate::Execution;
use qaplin::generate::{generate, BaseKind, GeneratorSpec};
use qaplin::io::{emit_instance, parse_instance, InstanceFile};
use qaplin::linearize::{linearize_fas, linearize_tsp, linearize_weak_sum_general, reduce_principal};
use qaplin::model::*;
use qaplin::recognize::{check_balanced_3cycle, recognize_weak_sum, BalanceVerdict, WeakSumVerdict};
use qaplin::rng::SeededRng;
use qaplin::solve::{brute_force_qap_with, solve_fas_balanced, solve_lap};
use qaplin::verify::{verify_linearization, verify_linearization_with, VerifyMode};
use qaplin::{IndexSubset, Permutation, SquareMatrix, DEFAULT_TOL};

fn matrix(n: usize) -> impl Strategy<Value = SquareMatrix> {
    prop::collection::vec(-9i32..=9, n * n)
        .prop_map(move |v| SquareMatrix::from_row_major(n, v.into_iter().map(f64::from).collect()).unwrap())
}

fn real_matrix(n: usize) -> impl Strategy<Value = SquareMatrix> {
    prop::collection::vec(-10.0f64..10.0, n * n).prop_map(move |v| SquareMatrix::from_row_major(n, v).unwrap())
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn sized<T: std::fmt::Debug, S: Strategy<Value = T>>(
    lo: usize,
    hi: usize,
    f: impl Fn(usize) -> S + Clone,
) -> impl Strategy<Value = (usize, T)> {
    (lo..=hi).prop_flat_map(move |n| (Just(n), f(n)))
}

fn balanced(n: usize, seed: u64, integer: bool) -> SquareMatrix {
    instance(
        BaseKind::Balanced,
        n,
        seed,
        if integer { INT_RANGE } else { REAL_RANGE },
        None,
    )
}

fn positive_off_diagonal(r: &SquareMatrix) -> usize {
    let n = r.order();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && r.get(i, j) > 0.0)
        .count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn identity_is_frobenius_pairing((n, (a, b)) in sized(1, 6, |n| (matrix(n), matrix(n)))) {
        let frob: f64 = a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| x * y).sum();
        prop_assert_eq!(qap_value(&a, &b, &Permutation::identity(n)).unwrap(), frob);
    }

    #[test]
    fn forward_plus_backward_arcs((n, (a, p)) in sized(1, 7, |n| (matrix(n), perm(n)))) {
        let f = build_feedback_matrix(n).unwrap();
        let total = qap_value(&a, &f, &p).unwrap() + qap_value(&a, &f.transpose(), &p).unwrap();
        let off: f64 = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).map(|(i, j)| a.get(i, j)).sum();
        prop_assert_eq!(total, off);
    }

    #[test]
    fn cyclic_shift_identities((n, (a, c, p)) in sized(2, 7, |n| (real_matrix(n), real_matrix(n), perm(n)))) {
        let h = build_hamiltonian_matrix(n).unwrap();
        let base = qap_value(&a, &h, &p).unwrap();
        let mut lap_total = 0.0;
        for k in 0..n {
            let q = cyclic_shift(&p, k).unwrap();
            prop_assert!((qap_value(&a, &h, &q).unwrap() - base).abs() <= 1e-9 * scale(&[&a]));
            lap_total += lap_value(&c, &q).unwrap();
        }
        prop_assert!((lap_total - c.sum()).abs() <= 1e-9 * scale(&[&c]) * n as f64);
        prop_assert_eq!(cyclic_shift(&p, 0).unwrap(), p);
    }

    #[test]
    fn cut_matrix_sum_and_exact_balance(mask in prop::collection::vec(any::<bool>(), 1..=7)) {
        let n = mask.len();
        let subset = IndexSubset::new(n, (0..n).filter(|&i| mask[i])).unwrap();
        let cut = build_cut_matrix(&subset).unwrap();
        prop_assert_eq!(cut.sum(), (subset.len() * (n - subset.len())) as f64);
        prop_assert_eq!(check_balanced_3cycle(&cut, DEFAULT_TOL), BalanceVerdict::Balanced { max_residual: 0.0 });
    }

    #[test]
    fn symmetric_matrices_are_exactly_balanced((_n, a) in sized(1, 7, real_matrix)) {
        let sym = a.add(&a.transpose()).unwrap();
        prop_assert_eq!(check_balanced_3cycle(&sym, DEFAULT_TOL), BalanceVerdict::Balanced { max_residual: 0.0 });
    }

    #[test]
    fn closure_under_principal_submatrices(n in 1usize..=7, seed: u64, mask in prop::collection::vec(any::<bool>(), 7)) {
        let a = balanced(n, seed, true);
        let members: Vec<usize> = (0..n).filter(|&i| mask[i]).collect();
        prop_assume!(!members.is_empty());
        let sub = principal_submatrix(&a, &IndexSubset::new(n, members).unwrap()).unwrap();
        prop_assert!(check_balanced_3cycle(&sub, DEFAULT_TOL).is_balanced());
    }

    #[test]
    fn balanced_class_is_linear(n in 3usize..=6, s1: u64, s2: u64, l1 in -5.0f64..5.0, l2 in -5.0f64..5.0) {
        let a1 = balanced(n, s1, false);
        let a2 = balanced(n, s2, false);
        let combo = a1.scale(l1).unwrap().add_scaled(l2, &a2).unwrap();
        let tol = DEFAULT_TOL * (l1.abs() + l2.abs()).max(1.0);
        prop_assert!(check_balanced_3cycle(&combo, tol).is_balanced());
    }

    #[test]
    fn decomposition_round_trip(n in 2usize..=7, seed: u64, integer: bool) {
        let a = balanced(n, seed, integer);
        let (d, trace) = decompose(&a, DEFAULT_TOL).unwrap();
        let err = recompose(&d).max_abs_diff(&a).unwrap();
        if integer {
            prop_assert_eq!(err, 0.0);
        } else {
            prop_assert!(err <= 10.0 * DEFAULT_TOL * scale(&[&a]));
        }
        prop_assert!(trace.steps.len() <= n * n - n);
        prop_assert_eq!(&d.symmetric_part, &d.symmetric_part.transpose());
        for t in &d.terms {
            prop_assert!(t.coefficient > 0.0);
            prop_assert!(!t.subset.is_empty() && t.subset.is_proper());
        }
        for s in &trace.steps {
            prop_assert!(s.subset.contains(s.pivot.0) && !s.subset.contains(s.pivot.1));
        }
    }

    #[test]
    fn residual_invariants_each_step(n in 2usize..=6, seed: u64) {
        let a = balanced(n, seed, true);
        let (_, mut r) = split_symmetric(&a);
        let mut steps = 0;
        loop {
            for i in 0..n {
                prop_assert_eq!(r.get(i, i), 0.0);
                for j in 0..n {
                    prop_assert!(r.get(i, j) >= 0.0);
                    prop_assert_eq!(r.get(i, j) * r.get(j, i), 0.0);
                }
            }
            prop_assert!(check_balanced_3cycle(&r, DEFAULT_TOL).is_balanced());
            match extract_cut_step(&r, DEFAULT_TOL).unwrap() {
                StepOutcome::Done => break,
                StepOutcome::Step { next, .. } => {
                    prop_assert!(positive_off_diagonal(&next) < positive_off_diagonal(&r));
                    r = next;
                    steps += 1;
                }
                StepOutcome::NotBalanced { .. } => prop_assert!(false, "balanced residual rejected"),
            }
        }
        prop_assert!(steps <= n * n - n);
    }

    #[test]
    fn unbalanced_inputs_fail_to_decompose((_n, a) in sized(3, 6, real_matrix)) {
        let verdict = check_balanced_3cycle(&a, DEFAULT_TOL);
        prop_assert_eq!(verdict.is_balanced(), decompose(&a, DEFAULT_TOL).is_ok());
    }

    #[test]
    fn weak_sum_certificates_reproduce(n in 1usize..=7, seed: u64) {
        let a = instance(BaseKind::WeakSum, n, seed, REAL_RANGE, None);
        match recognize_weak_sum(&a, DEFAULT_TOL) {
            WeakSumVerdict::WeakSum { certificate } => {
                let rebuilt = certificate.to_sum_matrix();
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            prop_assert!((rebuilt.get(i, j) - a.get(i, j)).abs() <= DEFAULT_TOL * scale(&[&a]));
                        }
                    }
                }
            }
            v => prop_assert!(false, "{:?}", v),
        }
    }

    // Rejections agree with the best least-squares fit of alpha_i + beta_j.
    #[test]
    fn weak_sum_rejections_are_complete((n, a) in sized(3, 6, matrix), bump in any::<bool>()) {
        let a = if bump { a } else {
            let mut rng = SeededRng::new(n as u64);
            let alpha: Vec<f64> = (0..n).map(|_| rng.int_in(-5, 5) as f64).collect();
            let beta: Vec<f64> = (0..n).map(|_| rng.int_in(-5, 5) as f64).collect();
            build_sum_matrix(&alpha, &beta).unwrap()
        };
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
        let mut m = DMatrix::<f64>::zeros(pairs.len(), 2 * n);
        let mut rhs = DVector::<f64>::zeros(pairs.len());
        for (r, &(i, j)) in pairs.iter().enumerate() {
            m[(r, i)] = 1.0;
            m[(r, n + j)] = 1.0;
            rhs[r] = a.get(i, j);
        }
        let x = m.clone().svd(true, true).solve(&rhs, 1e-10).unwrap();
        let fit = (&m * &x - &rhs).amax();
        let accepted = recognize_weak_sum(&a, DEFAULT_TOL).is_weak_sum();
        prop_assert_eq!(accepted, fit <= 1e-7, "fit residual {}", fit);
    }

    #[test]
    fn linearity_of_linearizations(n in 2usize..=5, s1: u64, s2: u64, l1 in -5.0f64..5.0, l2 in -5.0f64..5.0) {
        let a1 = balanced(n, s1, false);
        let a2 = balanced(n, s2, false);
        let c1 = linearize_fas(&a1, DEFAULT_TOL).unwrap().c;
        let c2 = linearize_fas(&a2, DEFAULT_TOL).unwrap().c;
        let a = a1.scale(l1).unwrap().add_scaled(l2, &a2).unwrap();
        let c = c1.scale(l1).unwrap().add_scaled(l2, &c2).unwrap();
        let f = build_feedback_matrix(n).unwrap();
        prop_assert!(verify_linearization(&a, &f, &c, DEFAULT_TOL, VerifyMode::Exhaustive).unwrap().is_ok());
    }

    #[test]
    fn weak_sum_tours_are_constant(n in 2usize..=6, seed: u64) {
        let a = instance(BaseKind::WeakSum, n, seed, REAL_RANGE, None);
        let t = linearize_tsp(&a, DEFAULT_TOL).unwrap();
        let h = build_hamiltonian_matrix(n).unwrap();
        for p in all_perms(n) {
            prop_assert!((qap(&a, &h, &p) - t.tour_value).abs() <= 1e-9 * scale(&[&a]));
        }
    }

    #[test]
    fn general_weak_sum_linearization((n, b) in sized(1, 5, real_matrix), seed: u64) {
        let a = instance(BaseKind::WeakSum, n, seed, REAL_RANGE, None);
        let c = linearize_weak_sum_general(&a, &b, DEFAULT_TOL).unwrap().c;
        prop_assert!(verify_linearization(&a, &b, &c, DEFAULT_TOL, VerifyMode::Exhaustive).unwrap().is_ok());
    }

    #[test]
    fn principal_reduction_verifies(n in 1usize..=6, seed: u64, mask in prop::collection::vec(any::<bool>(), 6)) {
        let a = balanced(n, seed, false);
        let members: Vec<usize> = (0..n).filter(|&i| mask[i]).collect();
        prop_assume!(!members.is_empty());
        let j = IndexSubset::new(n, members).unwrap();
        let c = linearize_fas(&a, DEFAULT_TOL).unwrap().c;
        let reduced = reduce_principal(&a, &c, &j).unwrap();
        let sub = principal_submatrix(&a, &j).unwrap();
        let f = build_feedback_matrix(j.len()).unwrap();
        prop_assert!(verify_linearization(&sub, &f, &reduced.c, DEFAULT_TOL, VerifyMode::Exhaustive).unwrap().is_ok());
    }

    #[test]
    fn lap_solver_is_optimal_with_certificate((_n, c) in sized(1, 7, real_matrix)) {
        let s = solve_lap(&c);
        let tol = 1e-9 * scale(&[&c]);
        prop_assert!((s.assignment.value - brute_lap_min(&c)).abs() <= tol);
        prop_assert!(s.duals.feasibility_violation(&c) <= tol);
        prop_assert!(s.duals.slackness_violation(&c, &s.assignment.permutation) <= tol);
    }

    #[test]
    fn fas_scaling_equivariance(n in 2usize..=6, seed: u64, gamma in 0.1f64..10.0) {
        let a = balanced(n, seed, false);
        let scaled = a.scale(gamma).unwrap();
        let base = solve_fas_balanced(&a, DEFAULT_TOL).unwrap();
        let big = solve_fas_balanced(&scaled, DEFAULT_TOL).unwrap();
        let tol = 1e-9 * scale(&[&scaled]) * n as f64;
        prop_assert!((big.value - gamma * base.value).abs() <= tol);
        let f = build_feedback_matrix(n).unwrap();
        prop_assert!((qap_value(&a, &f, &big.layout).unwrap() - base.value).abs() <= tol);
    }

    #[test]
    fn emit_parse_round_trip((n, (a, b)) in sized(1, 6, |n| (real_matrix(n), real_matrix(n))), pair: bool) {
        let f = if pair { InstanceFile::pair(a, b).unwrap() } else { InstanceFile::single(a) };
        let back = parse_instance(&emit_instance(&f)).unwrap();
        prop_assert_eq!(back.order(), n);
        prop_assert_eq!(back, f);
    }

    #[test]
    fn generated_instances_round_trip(n in 1usize..=8, seed: u64) {
        for kind in [BaseKind::Balanced, BaseKind::WeakSum, BaseKind::Symmetric, BaseKind::Cut] {
            let f = generate(&GeneratorSpec::new(kind, n, seed).with_range(REAL_RANGE)).unwrap();
            prop_assert_eq!(parse_instance(&emit_instance(&f)).unwrap(), f);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn execution_modes_agree((_n, (a, b, c)) in sized(6, 8, |n| (matrix(n), matrix(n), matrix(n)))) {
        let seq = brute_force_qap_with(&a, &b, Execution::Sequential).unwrap();
        let par = brute_force_qap_with(&a, &b, Execution::Parallel).unwrap();
        prop_assert_eq!(seq, par);
        let vs = verify_linearization_with(&a, &b, &c, DEFAULT_TOL, VerifyMode::Exhaustive, Execution::Sequential).unwrap();
        let vp = verify_linearization_with(&a, &b, &c, DEFAULT_TOL, VerifyMode::Exhaustive, Execution::Parallel).unwrap();
        prop_assert_eq!(vs, vp);
    }
}
