mod common;

use proptest::prelude::*;

use matroid_schur::matroid::subset::{self, Subset};
use matroid_schur::matroid::{tutte_by_deletion_contraction, Matroid};

fn subset_of(m: &Matroid) -> impl Strategy<Value = Subset> {
    let g = m.ground();
    any::<u32>().prop_map(move |x| x & g)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_is_submodular((m, a, b) in common::matroid(7).prop_flat_map(|m| {
        let (x, y) = (subset_of(&m), subset_of(&m));
        (Just(m), x, y)
    })) {
        prop_assert!(m.rank_of(a) <= subset::size(a));
        prop_assert!(m.rank_of(a & b) <= m.rank_of(a));
        prop_assert!(m.rank_of(a) + m.rank_of(b) >= m.rank_of(a | b) + m.rank_of(a & b));
        let cl = m.closure(a);
        prop_assert!(subset::is_subset(a, cl));
        prop_assert_eq!(m.closure(cl), cl);
        prop_assert_eq!(m.rank_of(cl), m.rank_of(a));
    }

    #[test]
    fn duality_is_an_involution(m in common::matroid(7)) {
        let d = m.dual();
        prop_assert_eq!(d.dual(), m.clone());
        prop_assert_eq!(d.tutte(), m.tutte().swap());
        prop_assert_eq!(d.bases().len(), m.bases().len());
    }

    #[test]
    fn tutte_matches_deletion_contraction(m in common::matroid(6)) {
        let t = m.tutte();
        prop_assert_eq!(&t, &tutte_by_deletion_contraction(&m));
        prop_assert_eq!(t.eval(1, 1), m.bases().len() as i128);
    }

    #[test]
    fn passive_bases_count_mu_plus(m in common::matroid(7)) {
        let records: Vec<_> = m.bases().iter().map(|&b| m.activities(b).unwrap()).collect();
        for r in &records {
            prop_assert!(subset::is_subset(r.internally_active, r.basis));
            prop_assert_eq!(r.externally_active & r.basis, 0);
        }
        let ext = records.iter().filter(|r| r.externally_passive()).count() as u64;
        let int = records.iter().filter(|r| r.internally_passive()).count() as u64;
        prop_assert_eq!(ext, m.mu_plus());
        prop_assert_eq!(int, m.mu_plus_dual());
    }

    #[test]
    fn cyclic_flats_complement_to_dual(m in common::matroid(7)) {
        let g = m.ground();
        let mut ours: Vec<Subset> = m.cyclic_flats().flats().iter().map(|&f| g & !f).collect();
        ours.sort_unstable();
        let mut theirs = m.dual().cyclic_flats().flats().to_vec();
        theirs.sort_unstable();
        prop_assert_eq!(ours, theirs);
        for &f in m.cyclic_flats().flats() {
            prop_assert!(m.is_flat(f));
            prop_assert_eq!(m.restriction(f).unwrap().matroid.coloops(), 0);
        }
    }

    #[test]
    fn beta_is_self_dual(m in common::matroid(7)) {
        if m.ground_size() >= 2 {
            prop_assert_eq!(m.beta(), m.dual().beta());
        }
        // β vanishes on disconnected matroids
        if m.loops() == 0 && m.ground_size() >= 1 && !m.is_connected().unwrap() {
            prop_assert_eq!(m.beta(), 0);
        }
    }

    #[test]
    fn minors_commute_with_duality((m, e, f) in common::matroid(7).prop_flat_map(|m| {
        let g = m.ground();
        (Just(m), any::<u32>(), any::<u32>()).prop_map(move |(m, x, y)| {
            let f = y & g;
            (m, x & f, f)
        })
    })) {
        let minor = m.minor(e, f).unwrap();
        let via_dual = m.dual().minor(m.ground() & !f, m.ground() & !e).unwrap();
        prop_assert_eq!(minor.matroid.dual(), via_dual.matroid);
    }
}
