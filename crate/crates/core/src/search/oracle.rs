//! Brute-force reference for φ_k and the extreme sets.

use crate::enumerate::for_each_forest_of;
use crate::error::SearchError;
use crate::forest::SpanningForest;
use crate::graph::{WeightedDigraph, WeightedGraph};
use crate::weight::{Rational, Weight};

pub const DEFAULT_ORACLE_CAP: usize = 8;

/// Minimum weight and every minimizer among the `k`-tree forests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleLevel {
    pub weight: Weight,
    /// Sorted by out-function.
    pub forests: Vec<SpanningForest>,
}

/// `oracle_enumerate` for one level.
pub fn oracle_enumerate(
    g: &WeightedDigraph,
    k: usize,
    cap: usize,
) -> Result<OracleLevel, SearchError> {
    let n = g.vertex_count();
    if k == 0 || k > n {
        return Err(SearchError::LevelOutOfRange { k, vertex_count: n });
    }
    let mut all = oracle_all_levels(g, cap)?;
    Ok(all.swap_remove(k - 1))
}

/// All levels from one pass; entry `k - 1` is level `k`.
pub fn oracle_all_levels(g: &WeightedDigraph, cap: usize) -> Result<Vec<OracleLevel>, SearchError> {
    let n = g.vertex_count();
    if n > cap {
        return Err(SearchError::CapExceeded {
            vertex_count: n,
            cap,
        });
    }
    let mut best: Vec<Option<(Rational, Vec<Vec<Option<usize>>>)>> = vec![None; n + 1];
    for_each_forest_of(g, |out, w, k| match &mut best[k] {
        Some((bw, list)) if *w == *bw => list.push(out.to_vec()),
        Some((bw, _)) if *w > *bw => {}
        slot => *slot = Some((w.clone(), vec![out.to_vec()])),
    });
    Ok(best
        .into_iter()
        .skip(1)
        .map(|slot| match slot {
            None => OracleLevel {
                weight: Weight::Infinite,
                forests: Vec::new(),
            },
            Some((w, outs)) => {
                let mut forests: Vec<SpanningForest> = outs
                    .into_iter()
                    .map(SpanningForest::from_out_unchecked)
                    .collect();
                forests.sort();
                OracleLevel {
                    weight: Weight::Finite(w),
                    forests,
                }
            }
        })
        .collect())
}

/// Minimum weight over undirected spanning forests with each tree count, by
/// enumerating acyclic edge subsets. Entry `k - 1` is level `k`.
pub fn oracle_undirected(p: &WeightedGraph, cap: usize) -> Result<Vec<Weight>, SearchError> {
    let n = p.vertex_count();
    if n > cap {
        return Err(SearchError::CapExceeded {
            vertex_count: n,
            cap,
        });
    }
    let edges: Vec<(usize, usize, Rational)> =
        p.edges().map(|(i, j, w)| (i, j, w.clone())).collect();
    let mut best: Vec<Weight> = vec![Weight::Infinite; n + 1];
    let mut parent: Vec<usize> = (0..n).collect();
    subsets(&edges, 0, n, &mut parent, &Rational::zero(), &mut best);
    best.remove(0);
    Ok(best)
}

fn find(parent: &[usize], mut v: usize) -> usize {
    while parent[v] != v {
        v = parent[v];
    }
    v
}

fn subsets(
    edges: &[(usize, usize, Rational)],
    idx: usize,
    trees: usize,
    parent: &mut Vec<usize>,
    weight: &Rational,
    best: &mut [Weight],
) {
    if idx == edges.len() {
        let w = Weight::Finite(weight.clone());
        if w < best[trees] {
            best[trees] = w;
        }
        return;
    }
    subsets(edges, idx + 1, trees, parent, weight, best);
    let (i, j, w) = &edges[idx];
    let (ri, rj) = (find(parent, *i), find(parent, *j));
    if ri != rj {
        parent[ri] = rj;
        subsets(edges, idx + 1, trees - 1, parent, &(weight + w), best);
        parent[ri] = ri;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::three_cycle;

    #[test]
    fn three_cycle_levels() {
        let c = three_cycle();
        let top = oracle_enumerate(&c, 3, 8).unwrap();
        assert_eq!(top.weight, 0.into());
        assert_eq!(top.forests, vec![SpanningForest::empty(3)]);

        let two = oracle_enumerate(&c, 2, 8).unwrap();
        assert_eq!(two.weight, 1.into());
        assert_eq!(two.forests.len(), 1);
        assert_eq!(two.forests[0].as_slice(), &[Some(1), None, None]);

        let one = oracle_enumerate(&c, 1, 8).unwrap();
        assert_eq!(one.weight, 3.into());
        assert_eq!(one.forests.len(), 1);
        assert_eq!(one.forests[0].as_slice(), &[Some(1), Some(2), None]);
    }

    #[test]
    fn cap_and_range_errors() {
        let g = WeightedDigraph::empty(9);
        assert_eq!(
            oracle_enumerate(&g, 1, 8),
            Err(SearchError::CapExceeded {
                vertex_count: 9,
                cap: 8
            })
        );
        assert!(matches!(
            oracle_enumerate(&three_cycle(), 4, 8),
            Err(SearchError::LevelOutOfRange { .. })
        ));
    }

    #[test]
    fn disconnected_levels_are_infinite() {
        let g = WeightedDigraph::empty(3);
        let levels = oracle_all_levels(&g, 8).unwrap();
        assert_eq!(levels[0].weight, Weight::Infinite);
        assert!(levels[1].forests.is_empty());
        assert_eq!(levels[2].weight, 0.into());
    }

    #[test]
    fn undirected_triangle() {
        let p = WeightedGraph::from_edges(
            3,
            [(0, 1, 1), (1, 2, 2), (0, 2, 3)].map(|(i, j, w)| (i, j, w.into())),
        )
        .unwrap();
        let phi = oracle_undirected(&p, 8).unwrap();
        assert_eq!(phi, vec![3.into(), 1.into(), 0.into()]);
    }
}
