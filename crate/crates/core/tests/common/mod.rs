#![allow(dead_code)]

use kforest::{Rational, SpanningForest, VertexSet, WeightedDigraph, WeightedGraph};
use proptest::prelude::*;

/// Any spanning forest on `n` vertices: vertices are placed in a random order
/// and each one either stays a root or points at an earlier vertex.
pub fn arb_forest(n: usize) -> impl Strategy<Value = SpanningForest> {
    (
        Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        proptest::collection::vec(any::<u32>(), n),
    )
        .prop_map(move |(order, picks)| {
            let mut out = vec![None; n];
            for (pos, &v) in order.iter().enumerate() {
                let c = picks[pos] as usize % (pos + 1);
                if c < pos {
                    out[v] = Some(order[c]);
                }
            }
            SpanningForest::try_from_out(out).unwrap()
        })
}

pub fn arb_forest_pair(max_n: usize) -> impl Strategy<Value = (SpanningForest, SpanningForest)> {
    (1..=max_n).prop_flat_map(|n| (arb_forest(n), arb_forest(n)))
}

pub fn mask_set(n: usize, mask: u32) -> VertexSet {
    (0..n).filter(|v| mask >> v & 1 == 1).collect()
}

pub fn arb_digraph(max_n: usize, density: f64) -> impl Strategy<Value = WeightedDigraph> {
    (1usize..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(
            proptest::option::weighted(density, (-4i64..10, 1i64..4)),
            n * n,
        )
        .prop_map(move |ws| {
            let arcs = ws
                .into_iter()
                .enumerate()
                .filter_map(|(idx, w)| w.map(|(a, b)| (idx / n, idx % n, Rational::new(a, b))));
            WeightedDigraph::from_arcs(n, arcs).unwrap()
        })
    })
}

pub fn arb_graph(max_n: usize, density: f64) -> impl Strategy<Value = WeightedGraph> {
    (1usize..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(
            proptest::option::weighted(density, (-4i64..10, 1i64..4)),
            n * n,
        )
        .prop_map(move |ws| {
            let edges = ws.into_iter().enumerate().filter_map(|(idx, w)| {
                let (i, j) = (idx / n, idx % n);
                w.filter(|_| i < j)
                    .map(|(a, b)| (i, j, Rational::new(a, b)))
            });
            WeightedGraph::from_edges(n, edges).unwrap()
        })
    })
}
