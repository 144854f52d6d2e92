//! Weighted digraphs and undirected graphs on vertices `0..n`.

use std::collections::BTreeMap;

use crate::error::GraphError;
use crate::vertex_set::VertexSet;
use crate::weight::Rational;

/// Directed graph with exact arc weights.
///
/// Parallel arcs collapse to their minimum weight on construction. Loops are
/// kept in the arc map but never appear in [`out_arcs`](Self::out_arcs), which
/// is what every forest computation iterates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDigraph {
    n: usize,
    arcs: BTreeMap<(usize, usize), Rational>,
    out: Vec<Vec<(usize, Rational)>>,
}

impl WeightedDigraph {
    pub fn empty(n: usize) -> Self {
        WeightedDigraph {
            n,
            arcs: BTreeMap::new(),
            out: vec![Vec::new(); n],
        }
    }

    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut map: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (i, j, w) in arcs {
            if i >= n || j >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: i.max(j),
                    vertex_count: n,
                });
            }
            map.entry((i, j))
                .and_modify(|cur| {
                    if w < *cur {
                        *cur = w.clone();
                    }
                })
                .or_insert(w);
        }
        let mut out = vec![Vec::new(); n];
        for (&(i, j), w) in &map {
            if i != j {
                out[i].push((j, w.clone()));
            }
        }
        Ok(WeightedDigraph { n, arcs: map, out })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc(&self, origin: usize, terminus: usize) -> Option<&Rational> {
        self.arcs.get(&(origin, terminus))
    }

    /// All stored arcs, loops included, in `(origin, terminus)` order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.arcs.iter().map(|(&(i, j), w)| (i, j, w))
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Non-loop arcs leaving `v`, sorted by terminus.
    pub fn out_arcs(&self, v: usize) -> &[(usize, Rational)] {
        &self.out[v]
    }

    /// `G|_U`, with vertices renumbered in increasing order of their host
    /// index.
    pub fn induced_subgraph(
        &self,
        set: &VertexSet,
    ) -> Result<(WeightedDigraph, Relabeling), GraphError> {
        if set.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        let relabeling = Relabeling::new(self.n, set)?;
        let arcs = self.arcs().filter_map(|(i, j, w)| {
            Some((relabeling.to_sub(i)?, relabeling.to_sub(j)?, w.clone()))
        });
        let sub = WeightedDigraph::from_arcs(relabeling.len(), arcs)?;
        Ok((sub, relabeling))
    }

    /// Vertices reachable from `v` by following arcs (including `v`).
    pub fn reachable_from(&self, v: usize) -> VertexSet {
        let mut seen = VertexSet::singleton(v);
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for &(w, _) in self.out_arcs(u) {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }
}

/// Vertex renumbering between a host graph and an induced subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    to_host: Vec<usize>,
    to_sub: Vec<Option<usize>>,
}

impl Relabeling {
    fn new(host_n: usize, set: &VertexSet) -> Result<Self, GraphError> {
        let to_host: Vec<usize> = set.iter().collect();
        let mut to_sub = vec![None; host_n];
        for (s, &h) in to_host.iter().enumerate() {
            if h >= host_n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: h,
                    vertex_count: host_n,
                });
            }
            to_sub[h] = Some(s);
        }
        Ok(Relabeling { to_host, to_sub })
    }

    pub fn len(&self) -> usize {
        self.to_host.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_host.is_empty()
    }

    pub fn to_host(&self, sub_vertex: usize) -> usize {
        self.to_host[sub_vertex]
    }

    pub fn to_sub(&self, host_vertex: usize) -> Option<usize> {
        self.to_sub.get(host_vertex).copied().flatten()
    }
}

/// Undirected graph with exact edge weights; `{i, j}` is stored once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: BTreeMap<(usize, usize), Rational>,
}

impl WeightedGraph {
    /// Loops are dropped; parallel edges collapse to the minimum weight.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut map: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (i, j, w) in edges {
            if i >= n || j >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: i.max(j),
                    vertex_count: n,
                });
            }
            if i == j {
                continue;
            }
            map.entry((i.min(j), i.max(j)))
                .and_modify(|cur| {
                    if w < *cur {
                        *cur = w.clone();
                    }
                })
                .or_insert(w);
        }
        Ok(WeightedGraph { n, edges: map })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge(&self, i: usize, j: usize) -> Option<&Rational> {
        self.edges.get(&(i.min(j), i.max(j)))
    }

    /// Edges as `(i, j, w)` with `i < j`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.edges.iter().map(|(&(i, j), w)| (i, j, w))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The digraph with both orientations of every edge at the edge's weight.
    pub fn to_symmetric_digraph(&self) -> WeightedDigraph {
        let arcs = self
            .edges()
            .flat_map(|(i, j, w)| [(i, j, w.clone()), (j, i, w.clone())]);
        WeightedDigraph::from_arcs(self.n, arcs).expect("edges are in range")
    }

    pub fn induced_subgraph(
        &self,
        set: &VertexSet,
    ) -> Result<(WeightedGraph, Relabeling), GraphError> {
        if set.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        let relabeling = Relabeling::new(self.n, set)?;
        let edges = self.edges().filter_map(|(i, j, w)| {
            Some((relabeling.to_sub(i)?, relabeling.to_sub(j)?, w.clone()))
        });
        let sub = WeightedGraph::from_edges(relabeling.len(), edges)?;
        Ok((sub, relabeling))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Three-vertex strongly connected digraph used throughout the tests:
    /// (0,1)=1, (1,2)=2, (2,0)=3, (1,0)=4, (2,1)=5, (0,2)=6.
    pub(crate) fn three_cycle() -> WeightedDigraph {
        WeightedDigraph::from_arcs(
            3,
            [
                (0, 1, 1),
                (1, 2, 2),
                (2, 0, 3),
                (1, 0, 4),
                (2, 1, 5),
                (0, 2, 6),
            ]
            .map(|(i, j, w)| (i, j, Rational::from_integer(w))),
        )
        .unwrap()
    }

    #[test]
    fn parallel_arcs_collapse_to_minimum() {
        let g = WeightedDigraph::from_arcs(
            2,
            [(0, 1, 5), (0, 1, 2), (0, 1, 7), (1, 1, 0)].map(|(i, j, w)| (i, j, w.into())),
        )
        .unwrap();
        assert_eq!(g.arc(0, 1), Some(&Rational::from_integer(2)));
        assert_eq!(g.arc(1, 0), None);
        assert_eq!(g.arc(1, 1), Some(&Rational::zero()));
        assert!(g.out_arcs(1).is_empty());
    }

    #[test]
    fn induced_subgraph_examples() {
        let c = three_cycle();
        let (all, _) = c.induced_subgraph(&VertexSet::full(3)).unwrap();
        assert_eq!(all, c);

        let (pair, map) = c.induced_subgraph(&[0, 1].into_iter().collect()).unwrap();
        let arcs: Vec<_> = pair.arcs().map(|(i, j, w)| (i, j, w.to_string())).collect();
        assert_eq!(arcs, vec![(0, 1, "1".to_string()), (1, 0, "4".to_string())]);
        assert_eq!(map.to_host(1), 1);

        let (single, map) = c.induced_subgraph(&VertexSet::singleton(2)).unwrap();
        assert_eq!(single.arc_count(), 0);
        assert_eq!(map.to_host(0), 2);
        assert_eq!(map.to_sub(0), None);

        assert!(matches!(
            c.induced_subgraph(&VertexSet::new()),
            Err(GraphError::EmptyVertexSet)
        ));
    }

    #[test]
    fn undirected_edges_are_unordered() {
        let g = WeightedGraph::from_edges(
            3,
            [(1, 0, 4), (0, 1, 3), (2, 2, 1)].map(|(i, j, w)| (i, j, w.into())),
        )
        .unwrap();
        assert_eq!(g.edge(1, 0), g.edge(0, 1));
        assert_eq!(g.edge(0, 1), Some(&Rational::from_integer(3)));
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.to_symmetric_digraph().arc_count(), 2);
    }
}
