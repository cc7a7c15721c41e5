#![allow(dead_code)]

use proptest::prelude::*;

use matroid_schur::matroid::Matroid;

/// Graphic matroids on at most 5 vertices and 7 edges (loops and parallel edges allowed),
/// uniform matroids, and their duals.
pub fn matroid(max_n: usize) -> impl Strategy<Value = Matroid> {
    let graphic = (2usize..=5)
        .prop_flat_map(move |v| {
            prop::collection::vec((0..v, 0..v), 1..=max_n.min(7)).prop_map(move |e| (v, e))
        })
        .prop_map(|(v, edges)| Matroid::from_graph(v, &edges).unwrap());
    let uniform = (1usize..=max_n.min(7))
        .prop_flat_map(|n| (0..=n, Just(n)))
        .prop_map(|(r, n)| Matroid::uniform(r, n).unwrap());
    (prop_oneof![graphic, uniform], any::<bool>())
        .prop_map(|(m, dual)| if dual { m.dual() } else { m })
}

/// Weights in `±1..=bound`.
pub fn weights(n: usize, bound: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(
        (1..=bound, any::<bool>()).prop_map(|(w, neg)| if neg { -w } else { w }),
        n,
    )
}
