//! Weighted condensations: the atoms of one level's algebra as vertices.
//!
//! In the directed case an arc `x -> y` costs the cheapest way to span `x` by
//! an in-tree rooted at some `i` and then leave through an arc `i -> j` into
//! `y`. A condensed forest pays its arcs plus, for each root atom, the
//! cheapest in-tree spanning that atom. In the undirected case edges cost the
//! cheapest crossing edge and every atom pays its spanning-tree weight.

mod classic;
mod consistency;
mod potential;
mod profile;

use std::collections::BTreeMap;

use crate::error::CondenseError;
use crate::forest::SpanningForest;
use crate::graph::{WeightedDigraph, WeightedGraph};
use crate::hierarchy::{undirected_algebras, AlgebraLevel};
use crate::search::{
    enumerate_extreme_at, kruskal_edges, kruskal_phi, min_in_tree, phi_profile, PhiProfile,
};
use crate::vertex_set::VertexSet;
use crate::weight::{Rational, Weight};

pub use classic::{classic_condensation, ClassicCondensation};
pub use consistency::{
    verify_condensation_consistency, verify_undirected_consistency, ConsistencyCheck,
    ConsistencyReport,
};
pub use potential::{cycle_imbalance, detect_potentiality, Potential, PotentialError};
pub use profile::{condensed_profile, phi_on_condensation};

/// How an arc of the condensation is realized in the host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcWitness {
    /// Host arc or edge crossing between the two atoms.
    pub origin: usize,
    pub terminus: usize,
    /// Host arcs of the in-tree spanning the source atom with root `origin`;
    /// empty in the undirected case.
    pub tree: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CondensedGraph {
    /// Requested level.
    pub k: usize,
    /// Strict level whose algebra supplied the atoms.
    pub level: usize,
    pub directed: bool,
    /// Marked atoms first, each group ordered by smallest vertex.
    pub atoms: Vec<VertexSet>,
    pub marked_count: usize,
    /// Undirected edges are keyed with the smaller endpoint first.
    pub arc_weights: BTreeMap<(usize, usize), Rational>,
    /// `None` when the atom has no spanning (in-)tree.
    pub set_weights: Vec<Option<Rational>>,
    pub witnesses: BTreeMap<(usize, usize), ArcWitness>,
}

impl CondensedGraph {
    pub fn vertex_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_marked(&self, x: usize) -> bool {
        x < self.marked_count
    }

    pub fn arc(&self, x: usize, y: usize) -> Option<&Rational> {
        if self.directed || x <= y {
            self.arc_weights.get(&(x, y))
        } else {
            self.arc_weights.get(&(y, x))
        }
    }

    /// Out-arcs of every vertex; both orientations of undirected edges.
    pub fn out_arcs(&self) -> Vec<Vec<(usize, Rational)>> {
        let mut out = vec![Vec::new(); self.vertex_count()];
        for (&(x, y), w) in &self.arc_weights {
            out[x].push((y, w.clone()));
            if !self.directed {
                out[y].push((x, w.clone()));
            }
        }
        for list in &mut out {
            list.sort();
        }
        out
    }

    /// Condensed vertex holding host vertex `v`.
    pub fn atom_of(&self, v: usize) -> Option<usize> {
        self.atoms.iter().position(|a| a.contains(v))
    }

    /// The arcs as a plain digraph; set weights are dropped.
    pub fn to_digraph(&self) -> WeightedDigraph {
        let arcs = self.arc_weights.iter().flat_map(|(&(x, y), w)| {
            let back = (!self.directed).then(|| (y, x, w.clone()));
            std::iter::once((x, y, w.clone())).chain(back)
        });
        WeightedDigraph::from_arcs(self.vertex_count(), arcs).expect("atom indices are in range")
    }
}

/// Orders atoms marked first, then by smallest vertex.
fn canonical_atoms(level: &AlgebraLevel) -> (Vec<VertexSet>, usize) {
    let (mut marked, mut unmarked): (Vec<_>, Vec<_>) = level
        .atoms
        .iter()
        .enumerate()
        .partition(|(idx, _)| level.is_marked(*idx));
    marked.sort_by_key(|(_, a)| a.first());
    unmarked.sort_by_key(|(_, a)| a.first());
    let count = marked.len();
    let atoms = marked
        .into_iter()
        .chain(unmarked)
        .map(|(_, a)| a.clone())
        .collect();
    (atoms, count)
}

/// The plateau top serving level `k`, or why there is none.
pub(crate) fn serving_level(profile: &PhiProfile, k: usize) -> Result<usize, CondenseError> {
    let n = profile.vertex_count();
    if k == 0 || k > n {
        return Err(CondenseError::LevelNotCondensable {
            k,
            reason: format!("level outside 1..={n}"),
        });
    }
    profile
        .condensation_level(k)
        .ok_or_else(|| CondenseError::LevelNotCondensable {
            k,
            reason: "no spanning forest with that many trees".into(),
        })
}

/// Directed weighted condensation at level `k`. Equality levels use the
/// algebra of the strict level topping their plateau.
pub fn condense_directed(
    g: &WeightedDigraph,
    k: usize,
    cap: usize,
) -> Result<CondensedGraph, CondenseError> {
    condense_directed_with(g, &phi_profile(g), k, cap)
}

/// [`condense_directed`] with the profile already known.
pub fn condense_directed_with(
    g: &WeightedDigraph,
    profile: &PhiProfile,
    k: usize,
    cap: usize,
) -> Result<CondensedGraph, CondenseError> {
    let level = serving_level(profile, k)?;
    let phi = profile
        .phi(level)
        .finite()
        .expect("serving levels are finite");
    let set = enumerate_extreme_at(g, level, phi, cap);
    if !set.complete {
        return Err(crate::error::HierarchyError::IncompleteEnumeration { k: level }.into());
    }
    let algebra = AlgebraLevel::from_forests(level, g.vertex_count(), &set.forests, true);
    directed_from_algebra(g, k, &algebra)
}

/// Directed condensation over the atoms of a given algebra.
pub fn directed_from_algebra(
    g: &WeightedDigraph,
    k: usize,
    algebra: &AlgebraLevel,
) -> Result<CondensedGraph, CondenseError> {
    let (atoms, marked_count) = canonical_atoms(algebra);
    let mut trees = Vec::with_capacity(atoms.len());
    for atom in &atoms {
        let mut by_root = BTreeMap::new();
        for i in atom.iter() {
            if let Some(tree) = min_in_tree(g, atom, i)? {
                by_root.insert(i, tree);
            }
        }
        trees.push(by_root);
    }
    let set_weights = trees
        .iter()
        .map(|by_root| by_root.values().map(|t| &t.weight).min().cloned())
        .collect();
    let atom_of: Vec<usize> = (0..g.vertex_count())
        .map(|v| {
            atoms
                .iter()
                .position(|a| a.contains(v))
                .expect("atoms cover every vertex")
        })
        .collect();

    let mut arc_weights: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    let mut witnesses = BTreeMap::new();
    for (x, by_root) in trees.iter().enumerate() {
        for (&i, tree) in by_root {
            for (j, v) in g.out_arcs(i) {
                let y = atom_of[*j];
                if y == x {
                    continue;
                }
                let w = &tree.weight + v;
                if arc_weights.get(&(x, y)).is_none_or(|best| w < *best) {
                    arc_weights.insert((x, y), w);
                    witnesses.insert(
                        (x, y),
                        ArcWitness {
                            origin: i,
                            terminus: *j,
                            tree: tree.arcs.clone(),
                        },
                    );
                }
            }
        }
    }
    Ok(CondensedGraph {
        k,
        level: algebra.k,
        directed: true,
        atoms,
        marked_count,
        arc_weights,
        set_weights,
        witnesses,
    })
}

/// Undirected weighted condensation at level `k` of the Kruskal profile.
pub fn condense_undirected(p: &WeightedGraph, k: usize) -> Result<CondensedGraph, CondenseError> {
    let profile = kruskal_phi(p);
    let level = serving_level(&profile, k)?;
    let algebra = undirected_algebras(p, &profile)
        .swap_remove(level - 1)
        .expect("serving levels are finite");
    let (atoms, marked_count) = canonical_atoms(&algebra);
    let atom_of: Vec<usize> = (0..p.vertex_count())
        .map(|v| {
            atoms
                .iter()
                .position(|a| a.contains(v))
                .expect("atoms cover every vertex")
        })
        .collect();
    let set_weights: Vec<Option<Rational>> = atoms
        .iter()
        .map(|atom| spanning_tree_weight(p, atom))
        .collect();
    assert!(
        set_weights.iter().all(Option::is_some),
        "an atom of level {level} induces a disconnected subgraph"
    );
    let mut arc_weights: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    let mut witnesses = BTreeMap::new();
    for (i, j, w) in p.edges() {
        let (x, y) = (atom_of[i], atom_of[j]);
        if x == y {
            continue;
        }
        let key = (x.min(y), x.max(y));
        if arc_weights.get(&key).is_none_or(|best| w < best) {
            arc_weights.insert(key, w.clone());
            let (origin, terminus) = if x < y { (i, j) } else { (j, i) };
            witnesses.insert(
                key,
                ArcWitness {
                    origin,
                    terminus,
                    tree: Vec::new(),
                },
            );
        }
    }
    Ok(CondensedGraph {
        k,
        level,
        directed: false,
        atoms,
        marked_count,
        arc_weights,
        set_weights,
        witnesses,
    })
}

/// Minimum spanning tree weight of `P|_set`, `None` if it is disconnected.
fn spanning_tree_weight(p: &WeightedGraph, set: &VertexSet) -> Option<Rational> {
    let (sub, _) = p.induced_subgraph(set).expect("atoms are non-empty");
    let edges = kruskal_edges(&sub);
    (edges.len() + 1 == set.len()).then(|| edges.iter().map(|(_, _, w)| w).sum())
}

/// Weight of a forest over the condensed vertices: arc weights plus the set
/// weights of root atoms (directed) or of all atoms (undirected). Undirected
/// forests may be given in any orientation.
pub fn condensed_forest_weight(
    c: &CondensedGraph,
    f: &SpanningForest,
) -> Result<Rational, CondenseError> {
    let n = c.vertex_count();
    if f.vertex_count() != n {
        return Err(CondenseError::LengthMismatch {
            expected: n,
            got: f.vertex_count(),
        });
    }
    let mut total = Rational::zero();
    for (x, y) in f.arcs() {
        let w = c.arc(x, y).ok_or(CondenseError::MissingArc {
            origin: x,
            terminus: y,
        })?;
        total += w;
    }
    for x in 0..n {
        if !c.directed || f.is_root(x) {
            let w = c.set_weights[x]
                .as_ref()
                .ok_or(CondenseError::MissingSetWeight { vertex: x })?;
            total += w;
        }
    }
    Ok(total)
}

/// Whether the condensation is the same labeled weighted graph as `other`,
/// ignoring the requested level.
pub fn same_condensation(a: &CondensedGraph, b: &CondensedGraph) -> bool {
    a.level == b.level
        && a.directed == b.directed
        && a.atoms == b.atoms
        && a.marked_count == b.marked_count
        && a.arc_weights == b.arc_weights
        && a.set_weights == b.set_weights
}

/// φ of the host against φ of the condensation, level by level.
pub(crate) fn host_vs_condensed(host: &PhiProfile, c: &CondensedGraph) -> Vec<(Weight, Weight)> {
    let condensed = condensed_profile(c);
    (1..=c.level)
        .map(|n| {
            (
                host.phi(n).clone(),
                condensed.get(n - 1).cloned().unwrap_or(Weight::Infinite),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::three_cycle;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn three_cycle_level_two() {
        let c = condense_directed(&three_cycle(), 2, 100).unwrap();
        assert_eq!(c.atoms, vec![set(&[0, 1]), set(&[2])]);
        assert_eq!(c.marked_count, 2);
        assert_eq!(c.arc(0, 1), Some(&r(3)));
        assert_eq!(c.arc(1, 0), Some(&r(3)));
        assert_eq!(c.set_weights, vec![Some(r(1)), Some(r(0))]);
        let w = &c.witnesses[&(0, 1)];
        assert_eq!((w.origin, w.terminus), (1, 2));
        assert_eq!(w.tree, vec![(0, 1)]);

        let empty = SpanningForest::empty(2);
        assert_eq!(condensed_forest_weight(&c, &empty).unwrap(), r(1));
        let one_arc = SpanningForest::try_from_out(vec![Some(1), None]).unwrap();
        assert_eq!(condensed_forest_weight(&c, &one_arc).unwrap(), r(3));
    }

    #[test]
    fn three_cycle_top_level_is_the_graph() {
        let g = three_cycle();
        let c = condense_directed(&g, 3, 100).unwrap();
        assert_eq!(c.atoms, vec![set(&[0]), set(&[1]), set(&[2])]);
        assert_eq!(c.set_weights, vec![Some(r(0)); 3]);
        assert_eq!(c.to_digraph(), g);
    }

    #[test]
    fn loops_are_dropped_at_the_top_level() {
        let g = WeightedDigraph::from_arcs(2, [(0, 1, r(2)), (1, 1, r(7))]).unwrap();
        let c = condense_directed(&g, 2, 100).unwrap();
        assert_eq!(c.arc_weights.len(), 1);
        assert_eq!(c.arc(0, 1), Some(&r(2)));
    }

    #[test]
    fn unmarked_atoms_follow_marked_ones() {
        let arcs =
            [(1, 2, 2), (1, 3, 1), (2, 3, 3), (3, 0, 2), (3, 1, 1)].map(|(i, j, w)| (i, j, r(w)));
        let g = WeightedDigraph::from_arcs(4, arcs).unwrap();
        let c = condense_directed(&g, 2, 100).unwrap();
        assert_eq!(c.atoms, vec![set(&[0]), set(&[2]), set(&[1, 3])]);
        assert_eq!(c.marked_count, 2);
        assert!(!c.is_marked(2));
        assert_eq!(c.set_weights[2], Some(r(1)));
    }

    #[test]
    fn level_errors() {
        let g = WeightedDigraph::empty(3);
        assert!(matches!(
            condense_directed(&g, 2, 100),
            Err(CondenseError::LevelNotCondensable { k: 2, .. })
        ));
        assert!(matches!(
            condense_directed(&g, 4, 100),
            Err(CondenseError::LevelNotCondensable { k: 4, .. })
        ));
        assert!(condense_directed(&g, 3, 100).is_ok());
    }

    #[test]
    fn capped_enumeration_is_refused() {
        let arcs = (0..4).flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, j, r(1))));
        let g = WeightedDigraph::from_arcs(4, arcs).unwrap();
        assert!(matches!(
            condense_directed(&g, 1, 10),
            Err(CondenseError::Hierarchy(
                crate::error::HierarchyError::IncompleteEnumeration { k: 1 }
            ))
        ));
    }

    #[test]
    fn forest_weight_errors() {
        let c = condense_directed(&three_cycle(), 2, 100).unwrap();
        assert!(matches!(
            condensed_forest_weight(&c, &SpanningForest::empty(3)),
            Err(CondenseError::LengthMismatch {
                expected: 2,
                got: 3
            })
        ));
        let g = WeightedDigraph::from_arcs(3, [(0, 1, r(1))]).unwrap();
        let mut c = condense_directed(&g, 3, 100).unwrap();
        c.set_weights[2] = None;
        assert!(matches!(
            condensed_forest_weight(&c, &SpanningForest::empty(3)),
            Err(CondenseError::MissingSetWeight { vertex: 2 })
        ));
        let f = SpanningForest::try_from_out(vec![None, Some(2), None]).unwrap();
        assert!(matches!(
            condensed_forest_weight(&c, &f),
            Err(CondenseError::MissingArc {
                origin: 1,
                terminus: 2
            })
        ));
    }

    fn triangle() -> WeightedGraph {
        WeightedGraph::from_edges(3, [(0, 1, r(1)), (1, 2, r(2)), (0, 2, r(3))]).unwrap()
    }

    #[test]
    fn undirected_triangle() {
        let c = condense_undirected(&triangle(), 2).unwrap();
        assert_eq!(c.atoms, vec![set(&[0, 1]), set(&[2])]);
        assert_eq!(c.marked_count, 2);
        assert_eq!(c.arc(1, 0), Some(&r(2)));
        assert_eq!(c.set_weights, vec![Some(r(1)), Some(r(0))]);
        let edge = SpanningForest::try_from_out(vec![Some(1), None]).unwrap();
        assert_eq!(condensed_forest_weight(&c, &edge).unwrap(), r(3));
        let reversed = SpanningForest::try_from_out(vec![None, Some(0)]).unwrap();
        assert_eq!(condensed_forest_weight(&c, &reversed).unwrap(), r(3));
    }

    #[test]
    fn undirected_edge_cases() {
        let path = WeightedGraph::from_edges(3, [(0, 1, r(4)), (1, 2, r(1))]).unwrap();
        let c = condense_undirected(&path, 3).unwrap();
        assert_eq!(c.atoms.len(), 3);
        assert_eq!(c.to_digraph(), path.to_symmetric_digraph());

        let pair = WeightedGraph::from_edges(4, [(0, 1, r(1)), (2, 3, r(1))]).unwrap();
        let c = condense_undirected(&pair, 2).unwrap();
        assert_eq!(c.atoms, vec![set(&[0, 1]), set(&[2, 3])]);
        assert!(c.arc_weights.is_empty());
        assert!(condense_undirected(&pair, 1).is_err());
    }

    #[test]
    fn plateau_levels_share_one_condensation() {
        let arcs = (0..4).flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, j, r(1))));
        let g = WeightedDigraph::from_arcs(4, arcs).unwrap();
        let top = condense_directed(&g, 4, 1000).unwrap();
        for k in 2..4 {
            let c = condense_directed(&g, k, 1000).unwrap();
            assert_eq!(c.level, 4);
            assert!(same_condensation(&c, &top));
        }
        assert_eq!(condense_directed(&g, 1, 1000).unwrap().level, 1);
    }
}
