use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use matroid_schur::xalg::{
    determinant, elementary_divisors, integer_kernel_saturated, is_saturated, kernel_basis,
    orthogonal_complement, rank_of, Field, IntMatrix, Matrix, PrimeField, Rationals,
};

fn int_rows(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..=4, c), r))
}

fn q_matrix(rows: &[Vec<i64>]) -> Matrix<Rationals> {
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    Matrix::from_i64(&Rationals, &refs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn kernel_is_annihilated(rows in int_rows(6)) {
        let a = q_matrix(&rows);
        let k = kernel_basis(&a);
        prop_assert_eq!(k.cols(), a.cols() - rank_of(&a));
        prop_assert!(a.mul(&k).unwrap().is_zero());
        prop_assert_eq!(rank_of(&k), k.cols());
    }

    #[test]
    fn rank_mod_p_at_most_rank_over_q(rows in int_rows(6), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let f = PrimeField::new(p).unwrap();
        prop_assert!(rank_of(&Matrix::from_i64(&f, &refs)) <= rank_of(&q_matrix(&rows)));
        prop_assert_eq!(rank_of(&q_matrix(&rows)), rank_of(&q_matrix(&rows).transpose()));
    }

    #[test]
    fn determinant_is_multiplicative(n in 1usize..=4, seed in prop::collection::vec(-3i64..=3, 32)) {
        let a: Vec<Vec<i64>> = (0..n).map(|i| seed[i * n..(i + 1) * n].to_vec()).collect();
        let b: Vec<Vec<i64>> = (0..n).map(|i| seed[16 + i * n..16 + (i + 1) * n].to_vec()).collect();
        let (a, b) = (q_matrix(&a), q_matrix(&b));
        let lhs = determinant(&a.mul(&b).unwrap()).unwrap();
        let rhs = determinant(&a).unwrap() * determinant(&b).unwrap();
        prop_assert_eq!(lhs.clone(), rhs);
        prop_assert_eq!(lhs.is_zero(), rank_of(&a.mul(&b).unwrap()) < n);
    }

    #[test]
    fn saturated_integer_kernel(rows in int_rows(5)) {
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let a = IntMatrix::from_i64(&refs);
        let k = integer_kernel_saturated(&a);
        prop_assert!(a.mul(&k).is_zero());
        prop_assert_eq!(k.cols(), a.cols() - rank_of(&q_matrix(&rows)));
        prop_assert!(is_saturated(&k));
        if k.cols() > 0 {
            prop_assert!(elementary_divisors(&k).iter().all(|d| *d == BigInt::from(1)));
        }
    }

    #[test]
    fn orthogonal_complement_is_orthogonal(rows in int_rows(5), w in prop::collection::vec(1i64..=5, 5)) {
        let f = Rationals;
        let len = rows[0].len();
        let weights: Vec<BigRational> = w[..len].iter().map(|&x| f.from_i64(x)).collect();
        let vs: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect();
        let perp = orthogonal_complement(&f, &weights, &vs);
        prop_assert_eq!(perp.len(), len - rank_of(&q_matrix(&rows)));
        for x in &perp {
            for v in &vs {
                let dot = x.iter().zip(v).zip(&weights).fold(f.zero(), |acc, ((a, b), c)| f.add(&acc, &f.mul(&f.mul(a, b), c)));
                prop_assert!(f.is_zero(&dot));
            }
        }
    }
}
