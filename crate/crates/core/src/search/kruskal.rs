//! Undirected profile: Kruskal's order gives every φ_k at once.

use crate::forest::SpanningForest;
use crate::graph::WeightedGraph;
use crate::search::profile::PhiProfile;
use crate::weight::{Rational, Weight};

/// Edges accepted by Kruskal's algorithm, in acceptance order. Ties are taken
/// in `(weight, i, j)` order.
pub fn kruskal_edges(p: &WeightedGraph) -> Vec<(usize, usize, Rational)> {
    let mut edges: Vec<(usize, usize, &Rational)> = p.edges().collect();
    edges.sort_by(|a, b| (a.2, a.0, a.1).cmp(&(b.2, b.0, b.1)));
    let mut parent: Vec<usize> = (0..p.vertex_count()).collect();
    let mut accepted = Vec::new();
    for (i, j, w) in edges {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri.max(rj)] = ri.min(rj);
            accepted.push((i, j, w.clone()));
        }
    }
    accepted
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

/// φ_k of an undirected graph; the first `N - k` Kruskal edges form an
/// extreme forest. Representatives are oriented towards the smallest vertex
/// of each tree.
pub fn kruskal_phi(p: &WeightedGraph) -> PhiProfile {
    let n = p.vertex_count();
    let accepted = kruskal_edges(p);
    let mut phi = vec![Weight::Infinite; n];
    let mut representative = vec![None; n];
    let mut total = Rational::zero();
    for used in 0..=accepted.len() {
        if used > 0 {
            total += &accepted[used - 1].2;
        }
        let k = n - used;
        phi[k - 1] = Weight::Finite(total.clone());
        representative[k - 1] = Some(orient(n, &accepted[..used]));
    }
    PhiProfile::from_levels(phi, representative)
}

/// Orients an undirected forest towards the smallest vertex of each tree.
pub fn orient(n: usize, edges: &[(usize, usize, Rational)]) -> SpanningForest {
    let mut adjacent = vec![Vec::new(); n];
    for (i, j, _) in edges {
        adjacent[*i].push(*j);
        adjacent[*j].push(*i);
    }
    let mut out = vec![None; n];
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &w in &adjacent[u] {
                if !seen[w] {
                    seen[w] = true;
                    out[w] = Some(u);
                    stack.push(w);
                }
            }
        }
    }
    SpanningForest::from_out_unchecked(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::oracle::oracle_undirected;
    use proptest::prelude::*;

    #[test]
    fn triangle() {
        let p = WeightedGraph::from_edges(
            3,
            [(0, 1, 1), (1, 2, 2), (0, 2, 3)].map(|(i, j, w)| (i, j, w.into())),
        )
        .unwrap();
        let profile = kruskal_phi(&p);
        assert_eq!(profile.phi, vec![3.into(), 1.into(), 0.into()]);
        assert_eq!(
            profile.representative(2).unwrap().as_slice(),
            &[None, Some(0), None]
        );
        assert_eq!(
            profile.representative(1).unwrap().as_slice(),
            &[None, Some(0), Some(1)]
        );
    }

    #[test]
    fn edgeless() {
        let p = WeightedGraph::from_edges(3, []).unwrap();
        assert_eq!(
            kruskal_phi(&p).phi,
            vec![Weight::Infinite, Weight::Infinite, 0.into()]
        );
    }

    proptest! {
        #[test]
        fn matches_brute_force(
            n in 1usize..=6,
            ws in proptest::collection::vec(proptest::option::weighted(0.6, -3i64..6), 15),
        ) {
            let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
            let edges = pairs.zip(ws).filter_map(|((i, j), w)| w.map(|w| (i, j, w.into())));
            let p = WeightedGraph::from_edges(n, edges).unwrap();
            let profile = kruskal_phi(&p);
            prop_assert_eq!(&profile.phi, &oracle_undirected(&p, 8).unwrap());
            prop_assert!(profile.is_convex());
        }
    }
}
