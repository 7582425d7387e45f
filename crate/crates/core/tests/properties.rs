use cde_core::cde::{cde_momentum_operator, kernel_dimension, CdeBranch, FourMomentum};
use cde_core::clifford::{chiral_exp, clifford_residual, gamma_chiral, ChiralParams};
use cde_core::projectors::{projector2, Direction3};
use cde_core::sampling;
use cde_core::tensor::{c, det, kron, nullspace, ComplexMatrix, DEFAULT_TOL};
use cde_core::Sign;
use proptest::prelude::*;

fn matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n)
        .prop_map(move |v| ComplexMatrix::new(n, n, v.into_iter().map(|(a, b)| c(a, b)).collect()).unwrap())
}

fn complex() -> impl Strategy<Value = num_complex::Complex64> {
    (-2.0f64..2.0, -1.0f64..1.0).prop_map(|(a, b)| c(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kron_is_associative(a in matrix(2), b in matrix(2), d in matrix(2)) {
        let left = kron(&kron(&a, &b), &d);
        let right = kron(&a, &kron(&b, &d));
        prop_assert!(left.max_abs_diff(&right) <= 1e-14);
    }

    #[test]
    fn kron_mixed_product(a in matrix(2), b in matrix(2), x in matrix(2), y in matrix(2)) {
        let lhs = &kron(&a, &b) * &kron(&x, &y);
        let rhs = kron(&(&a * &x), &(&b * &y));
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-13);
    }

    #[test]
    fn det_is_multiplicative(a in matrix(4), b in matrix(4)) {
        let (da, db) = (det(&a).unwrap(), det(&b).unwrap());
        let dab = det(&(&a * &b)).unwrap();
        prop_assert!((dab - da * db).norm() <= 1e-10 * (1.0 + (da * db).norm()));
    }

    #[test]
    fn nullspace_vectors_are_annihilated(a in matrix(4), rank in 1usize..4) {
        // Zero the last rows so the kernel is nontrivial.
        let mut m = a;
        for i in rank..4 {
            for j in 0..4 {
                m = m.with_entry(i, j, c(0.0, 0.0)).unwrap();
            }
        }
        let ker = nullspace(&m, DEFAULT_TOL).unwrap();
        prop_assert!(ker.len() >= 4 - rank);
        for v in &ker {
            prop_assert!((v.norm() - 1.0).abs() <= 1e-12);
            prop_assert!(m.apply(v).norm() <= 1e-12);
        }
    }

    #[test]
    fn chiral_exp_group_law(a in complex(), b in complex()) {
        let gs = gamma_chiral();
        let ab = &chiral_exp(&gs, a, Sign::Plus) * &chiral_exp(&gs, b, Sign::Plus);
        let sum = chiral_exp(&gs, a + b, Sign::Plus);
        prop_assert!(ab.max_abs_diff(&sum) <= 1e-12 * (1.0 + sum.max_abs()));
        let inv = &chiral_exp(&gs, a, Sign::Plus) * &chiral_exp(&gs, a, Sign::Minus);
        prop_assert!(inv.max_abs_diff(&ComplexMatrix::identity(4)) <= 1e-12 * (1.0 + inv.max_abs()));
        prop_assert!((det(&chiral_exp(&gs, a, Sign::Plus)).unwrap() - c(1.0, 0.0)).norm() <= 1e-11);
    }

    #[test]
    fn gamma_pushes_through_chiral_exp(a in complex(), mu in 0usize..4) {
        let gs = gamma_chiral();
        let lhs = gs.gamma(mu) * &chiral_exp(&gs, a, Sign::Plus);
        let rhs = &chiral_exp(&gs, a, Sign::Minus) * gs.gamma(mu);
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12 * (1.0 + lhs.max_abs()));
    }

    #[test]
    fn projector_is_idempotent(x in -1.0f64..1.0, y in -1.0f64..1.0, z in 0.2f64..1.0, plus in any::<bool>()) {
        let axis = Direction3::real(x, y, z).unwrap().normalized();
        let s = if plus { Sign::Plus } else { Sign::Minus };
        let p = projector2(&axis, s).unwrap();
        prop_assert!((&p * &p).max_abs_diff(&p) <= 1e-14);
    }

    #[test]
    fn kernel_survives_change_of_representation(seed in any::<u64>(), alpha in -3.0f64..3.0) {
        let mut rng = sampling::rng(seed);
        let u = sampling::unitary(&mut rng, 4);
        let chiral = gamma_chiral();
        let other = chiral.conjugated(&u, "rotated");
        prop_assert!(clifford_residual(&other, [1, -1, -1, -1]) <= 1e-13);
        let (m, p) = sampling::on_shell_point(&mut rng);
        let params = ChiralParams::real(m, alpha).unwrap();
        let off = FourMomentum::new(p.energy * 1.3, p.p).unwrap();
        for branch in CdeBranch::BOTH {
            for mom in [p, off] {
                let d1 = cde_momentum_operator(&chiral, branch, &mom, &params);
                let d2 = cde_momentum_operator(&other, branch, &mom, &params);
                prop_assert_eq!(
                    kernel_dimension(&d1, DEFAULT_TOL).unwrap(),
                    kernel_dimension(&d2, DEFAULT_TOL).unwrap()
                );
                let (a, b) = (det(&d1).unwrap(), det(&d2).unwrap());
                prop_assert!((a - b).norm() <= 1e-9 * (1.0 + a.norm()));
            }
        }
    }
}
