mod common;

use num_traits::Signed;
use proptest::prelude::*;

use matroid_schur::schur::*;
use matroid_schur::xalg::{PrimeField, Rationals};

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kernel_dimensions_are_passive_counts(m in common::matroid(6)) {
        let w = vec![1; m.ground_size()];
        let q = build_datum(&m, &w, &Rationals).unwrap();
        let f = build_datum(&m, &w, &PrimeField::new(2).unwrap()).unwrap();
        for p in q.pieces() {
            let minor = m.minor(p.lower, p.upper).unwrap().matroid;
            prop_assert_eq!(p.dim(), minor.bases().len());
            prop_assert_eq!(p.u.len() as u64, minor.mu_plus_dual());
            prop_assert_eq!(p.u_check.len() as u64, minor.mu_plus());
            // saturation: the kernels keep their dimension mod p
            prop_assert_eq!(f.dim_u(p.lower, p.upper), p.u.len());
            prop_assert_eq!(f.dim_u_check(p.lower, p.upper), p.u_check.len());
        }
        prop_assert!(krs_checks(&m).passed());
    }

    #[test]
    fn axioms_hold(m in common::matroid(5), seed in prop::collection::vec(1i64..=4, 5)) {
        let w: Vec<i64> = seed[..m.ground_size()].to_vec();
        let rep = check_axioms(&build_datum(&m, &w, &Rationals).unwrap());
        prop_assert!(rep.passed(), "{:?}", rep.examples);
    }

    #[test]
    fn characters_and_semisimplicity(m in common::matroid(6), p in prop::sample::select(PRIMES.to_vec())) {
        let w = vec![1; m.ground_size()];
        let q = build_datum(&m, &w, &Rationals).unwrap();
        let d = build_datum(&m, &w, &PrimeField::new(p).unwrap()).unwrap();
        let decomp = decomposition_matrix(&d).unwrap();
        prop_assert!(decomp.is_unitriangular());
        prop_assert_eq!(semisimple_test(&m, &w, p), decomp.is_identity());
        for &e in q.flats() {
            let (delta, l) = (standard_character(&q, e).unwrap(), simple_character(&d, e).unwrap());
            prop_assert!(l.le(&delta));
            prop_assert_eq!(l.get(e), 1);
            let rhs = jantzen_rhs(&d, p, e).unwrap();
            for (f, gap) in delta.difference(&l) {
                prop_assert!(rhs.expanded.get(f) as i64 >= gap);
            }
            if rhs.is_zero() {
                prop_assert_eq!(&delta, &l);
            }
            prop_assert!(tilting_filtration_check(&q, e).unwrap().holds);
        }
    }

    #[test]
    fn determinant_valuations(m in common::matroid(6), seed in prop::collection::vec((1i64..=5, any::<bool>()), 6)) {
        let unit = vec![1; m.ground_size()];
        let cmp = compare_determinant(&m, &unit, &PRIMES).unwrap();
        prop_assert!(cmp.holds);
        prop_assert_eq!(cmp.gram.abs(), cmp.predicted.product.abs());
        let w: Vec<i64> = seed[..m.ground_size()].iter().map(|&(x, neg)| if neg { -x } else { x }).collect();
        let cmp = compare_determinant(&m, &w, &PRIMES).unwrap();
        prop_assert!(cmp.holds, "{:?}", cmp);
    }

    #[test]
    fn algebra_dimensions_swap_under_duality(m in common::matroid(6)) {
        let w = vec![1; m.ground_size()];
        let a = algebra_dims(&build_datum(&m, &w, &Rationals).unwrap());
        let b = algebra_dims(&build_datum(&m.dual(), &w, &Rationals).unwrap());
        prop_assert_eq!(a.dim_r, b.dim_r_check);
        prop_assert_eq!(a.dim_r_check, b.dim_r);
    }
}
