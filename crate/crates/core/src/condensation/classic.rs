//! Strong-component condensation, ignoring weights.

use std::collections::BTreeSet;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::graph::WeightedDigraph;
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicCondensation {
    /// Strong components ordered by smallest vertex.
    pub components: Vec<VertexSet>,
    pub arcs: BTreeSet<(usize, usize)>,
}

pub fn classic_condensation(g: &WeightedDigraph) -> ClassicCondensation {
    let n = g.vertex_count();
    let mut pg: DiGraph<(), ()> = DiGraph::with_capacity(n, g.arc_count());
    let nodes: Vec<_> = (0..n).map(|_| pg.add_node(())).collect();
    for (i, j, _) in g.arcs() {
        pg.add_edge(nodes[i], nodes[j], ());
    }
    let mut components: Vec<VertexSet> = tarjan_scc(&pg)
        .into_iter()
        .map(|scc| scc.into_iter().map(|v| v.index()).collect())
        .collect();
    components.sort_by_key(|c| c.first());
    let mut component_of = vec![0; n];
    for (idx, c) in components.iter().enumerate() {
        for v in c.iter() {
            component_of[v] = idx;
        }
    }
    let arcs = g
        .arcs()
        .map(|(i, j, _)| (component_of[i], component_of[j]))
        .filter(|(a, b)| a != b)
        .collect();
    ClassicCondensation { components, arcs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::three_cycle;

    #[test]
    fn strongly_connected_collapses() {
        let c = classic_condensation(&three_cycle());
        assert_eq!(c.components, vec![VertexSet::full(3)]);
        assert!(c.arcs.is_empty());
    }

    #[test]
    fn acyclic_graph_is_unchanged() {
        let g =
            WeightedDigraph::from_arcs(3, [(0, 1, 1.into()), (0, 2, 1.into()), (2, 1, 1.into())])
                .unwrap();
        let c = classic_condensation(&g);
        assert_eq!(c.components.len(), 3);
        assert_eq!(c.arcs, BTreeSet::from([(0, 1), (0, 2), (2, 1)]));
    }

    #[test]
    fn two_joined_cycles() {
        let arcs = [(0, 1), (1, 0), (2, 3), (3, 2), (1, 2)].map(|(i, j)| (i, j, 1.into()));
        let c = classic_condensation(&WeightedDigraph::from_arcs(4, arcs).unwrap());
        assert_eq!(c.components.len(), 2);
        assert_eq!(c.arcs, BTreeSet::from([(0, 1)]));
    }
}
