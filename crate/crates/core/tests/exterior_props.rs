mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use matroid_schur::exterior::identities::{matroid_checks, randomized};
use matroid_schur::exterior::{ExtVector, Exterior};
use matroid_schur::xalg::{Field, PrimeField, Rationals};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn identities_at_random_weights(w in (1usize..=7).prop_flat_map(|n| common::weights(n, 9)), seed in any::<u64>()) {
        let ext = Exterior::new(&Rationals, &w).unwrap();
        let rep = randomized(&ext, &mut ChaCha8Rng::seed_from_u64(seed), 8);
        prop_assert!(rep.passed(), "{:?}", rep.examples);
    }

    #[test]
    fn identities_mod_p(w in (1usize..=6).prop_flat_map(|n| prop::collection::vec(1i64..=6, n)), seed in any::<u64>()) {
        let f = PrimeField::new(7).unwrap();
        let ext = Exterior::new(&f, &w).unwrap();
        let rep = randomized(&ext, &mut ChaCha8Rng::seed_from_u64(seed), 8);
        prop_assert!(rep.passed(), "{:?}", rep.examples);
    }

    #[test]
    fn matroid_identities((m, w) in common::matroid(6).prop_flat_map(|m| {
        let n = m.ground_size();
        (Just(m), common::weights(n, 5))
    })) {
        let ext = Exterior::new(&Rationals, &w).unwrap();
        let rep = matroid_checks(&ext, &m);
        prop_assert!(rep.passed(), "{:?}", rep.examples);
    }

    #[test]
    fn duality_squares_to_a_sign(w in (1usize..=6).prop_flat_map(|n| common::weights(n, 5)), mask in any::<u32>()) {
        let f = Rationals;
        let ext = Exterior::new(&f, &w).unwrap();
        let s = mask & ext.ground();
        let x = ext.monomial(s);
        let dd = ext.duality_d(&ext.duality_d(&x));
        // 𝔻² is ± a(I)^{-1} on monomials
        let c = dd.coefficient(&f, s);
        prop_assert_eq!(dd.len(), 1);
        let target = ext.inverse_weight_of(ext.ground());
        prop_assert!(c == target || c == f.neg(&target));
        prop_assert_eq!(ExtVector::from_terms(&f, [(s, c)]), dd);
    }
}
