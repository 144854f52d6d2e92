//! Set algebras generated by the trees of extreme forests.
//!
//! At each finite level the vertex sets of all trees of all extreme forests
//! generate an algebra; its atoms ("elementary sets") are the classes of
//! vertices that no generating set separates. Going from level `k` to `k + 1`
//! only refines atoms.

mod theorems;

use std::collections::BTreeMap;

use crate::error::{HierarchyError, SearchError};
use crate::forest::{trees_of, SpanningForest};
use crate::graph::{WeightedDigraph, WeightedGraph};
use crate::search::{enumerate_extreme_at, phi_profile, ExtremeForestSet, PhiProfile};
use crate::vertex_set::VertexSet;
use crate::weight::Weight;

pub use theorems::{verify_level_theorems, CheckStatus, Claim, TheoremCheck, TheoremReport};

/// The atoms of one level's algebra with their marks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraLevel {
    pub k: usize,
    /// Disjoint, covering all vertices, sorted by smallest member.
    pub atoms: Vec<VertexSet>,
    /// Indices into `atoms` of atoms holding a marked vertex.
    pub marked: Vec<usize>,
    /// Vertices that are roots of some extreme forest.
    pub marked_vertices: VertexSet,
    /// False when the extreme set behind this level was capped.
    pub complete: bool,
}

impl AlgebraLevel {
    /// Builds the algebra generated by the tree vertex sets of `forests`.
    pub fn from_forests(k: usize, n: usize, forests: &[SpanningForest], complete: bool) -> Self {
        // a vertex's signature: for each forest, the root of its tree
        let mut classes: BTreeMap<Vec<usize>, VertexSet> = BTreeMap::new();
        let roots_by_forest: Vec<Vec<usize>> = forests
            .iter()
            .map(|f| (0..n).map(|v| f.root_of(v)).collect())
            .collect();
        for v in 0..n {
            let signature: Vec<usize> = roots_by_forest.iter().map(|r| r[v]).collect();
            classes.entry(signature).or_default().insert(v);
        }
        let mut marked_vertices = VertexSet::new();
        for f in forests {
            marked_vertices.extend(f.roots());
        }
        Self::from_atoms(
            k,
            classes.into_values().collect(),
            marked_vertices,
            complete,
        )
    }

    /// Sorts `atoms` and derives the marked atom indices.
    pub fn from_atoms(
        k: usize,
        mut atoms: Vec<VertexSet>,
        marked_vertices: VertexSet,
        complete: bool,
    ) -> Self {
        atoms.sort_by_key(|a| a.first());
        let marked = atoms
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_disjoint(&marked_vertices))
            .map(|(idx, _)| idx)
            .collect();
        AlgebraLevel {
            k,
            atoms,
            marked,
            marked_vertices,
            complete,
        }
    }

    pub fn atom_of(&self, v: usize) -> usize {
        self.atoms
            .iter()
            .position(|a| a.contains(v))
            .expect("atoms cover every vertex")
    }

    pub fn is_marked(&self, atom: usize) -> bool {
        self.marked.binary_search(&atom).is_ok()
    }

    /// Whether every atom of `self` lies inside one atom of `coarser`.
    pub fn refines(&self, coarser: &AlgebraLevel) -> bool {
        self.atoms
            .iter()
            .all(|a| coarser.atoms.iter().any(|c| a.is_subset(c)))
    }
}

/// Algebra of level `k` from a fresh enumeration of its extreme forests.
/// A capped enumeration yields a level flagged incomplete.
pub fn build_algebra(
    g: &WeightedDigraph,
    k: usize,
    cap: usize,
) -> Result<AlgebraLevel, HierarchyError> {
    let set = crate::search::enumerate_extreme(g, k, cap)?;
    Ok(AlgebraLevel::from_forests(
        k,
        g.vertex_count(),
        &set.forests,
        set.complete,
    ))
}

/// Profile, extreme sets and algebras for every finite level.
#[derive(Clone, Debug)]
pub struct HierarchyChain {
    pub profile: PhiProfile,
    /// Entry `k - 1` is level `k`; `None` for infinite levels.
    pub extremes: Vec<Option<ExtremeForestSet>>,
    pub levels: Vec<Option<AlgebraLevel>>,
    pub distinct_condensation_count: usize,
}

/// Enumerates every finite level and checks that the algebras are nested.
pub fn build_hierarchy(g: &WeightedDigraph, cap: usize) -> Result<HierarchyChain, HierarchyError> {
    let profile = phi_profile(g);
    let n = g.vertex_count();
    let extremes: Vec<Option<ExtremeForestSet>> = (1..=n)
        .map(|k| match profile.phi(k) {
            Weight::Finite(phi) => Some(enumerate_extreme_at(g, k, phi, cap)),
            Weight::Infinite => None,
        })
        .collect();
    HierarchyChain::from_extremes(profile, extremes)
}

impl HierarchyChain {
    /// Assembles a chain from extreme sets computed elsewhere.
    pub fn from_extremes(
        profile: PhiProfile,
        extremes: Vec<Option<ExtremeForestSet>>,
    ) -> Result<Self, HierarchyError> {
        let n = profile.vertex_count();
        let levels: Vec<Option<AlgebraLevel>> = extremes
            .iter()
            .enumerate()
            .map(|(idx, set)| {
                set.as_ref()
                    .map(|s| AlgebraLevel::from_forests(idx + 1, n, &s.forests, s.complete))
            })
            .collect();
        for k in 1..n {
            if let (Some(lower), Some(upper)) = (&levels[k - 1], &levels[k]) {
                if lower.complete && upper.complete && !upper.refines(lower) {
                    return Err(HierarchyError::NestingViolated { k });
                }
            }
        }
        let distinct_condensation_count = profile.distinct_condensation_count();
        Ok(HierarchyChain {
            profile,
            extremes,
            levels,
            distinct_condensation_count,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.profile.vertex_count()
    }

    pub fn level(&self, k: usize) -> Option<&AlgebraLevel> {
        self.levels.get(k.checked_sub(1)?)?.as_ref()
    }

    /// The extreme set of level `k`, which must exist and be complete.
    pub fn complete_extremes(&self, k: usize) -> Result<&ExtremeForestSet, HierarchyError> {
        let n = self.vertex_count();
        if k == 0 || k > n {
            return Err(SearchError::LevelOutOfRange { k, vertex_count: n }.into());
        }
        match &self.extremes[k - 1] {
            None => Err(SearchError::PhiInfinite { k }.into()),
            Some(set) if !set.complete => Err(HierarchyError::IncompleteEnumeration { k }),
            Some(set) => Ok(set),
        }
    }

    /// Complete algebra of level `k`.
    pub fn complete_level(&self, k: usize) -> Result<&AlgebraLevel, HierarchyError> {
        self.complete_extremes(k)?;
        Ok(self.levels[k - 1]
            .as_ref()
            .expect("finite level has an algebra"))
    }

    /// Whether some extreme forest of level `k` has an `i·j`-walk.
    pub fn k_attainable(&self, k: usize, i: usize, j: usize) -> Result<bool, HierarchyError> {
        let set = self.complete_extremes(k)?;
        Ok(i == j || set.forests.iter().any(|f| f.reaches(i, j)))
    }

    /// Vertices from which the marked vertex `i` is `k`-attainable. Fails if
    /// no extreme forest has a tree rooted at `i` on exactly that set.
    pub fn attraction_domain(&self, k: usize, i: usize) -> Result<VertexSet, HierarchyError> {
        let level = self.complete_level(k)?;
        if !self.profile.is_strict(k) {
            return Err(HierarchyError::NotStrictLevel { k });
        }
        if !level.marked_vertices.contains(i) {
            return Err(HierarchyError::NotMarked { k, vertex: i });
        }
        let forests = &self.complete_extremes(k)?.forests;
        let domain = attraction_domain_of(forests, self.vertex_count(), i);
        let realized = forests
            .iter()
            .any(|f| f.is_root(i) && f.tree_containing(i) == domain);
        if realized {
            Ok(domain)
        } else {
            Err(HierarchyError::DomainNotRealized { k, vertex: i })
        }
    }

    pub fn verify_level(&self, k: usize) -> Result<TheoremReport, HierarchyError> {
        theorems::verify_chain_level(self, k)
    }
}

pub(crate) fn attraction_domain_of(forests: &[SpanningForest], n: usize, i: usize) -> VertexSet {
    (0..n)
        .filter(|&j| forests.iter().any(|f| f.reaches(j, i)))
        .collect()
}

pub fn k_attainable(
    g: &WeightedDigraph,
    k: usize,
    i: usize,
    j: usize,
    cap: usize,
) -> Result<bool, HierarchyError> {
    build_hierarchy(g, cap)?.k_attainable(k, i, j)
}

pub fn attraction_domain(
    g: &WeightedDigraph,
    k: usize,
    i: usize,
    cap: usize,
) -> Result<VertexSet, HierarchyError> {
    build_hierarchy(g, cap)?.attraction_domain(k, i)
}

/// Algebras of an undirected graph from its Kruskal profile.
///
/// At a strict level the trees of any extreme forest are exactly the atoms,
/// so the representative's components suffice; an equality level shares the
/// atoms of the strict level above it. Every vertex is marked.
pub fn undirected_algebras(p: &WeightedGraph, profile: &PhiProfile) -> Vec<Option<AlgebraLevel>> {
    let n = p.vertex_count();
    (1..=n)
        .map(|k| {
            let top = profile.condensation_level(k)?;
            let rep = profile.representative(top)?;
            let atoms = trees_of(rep).into_iter().map(|(_, set)| set).collect();
            Some(AlgebraLevel::from_atoms(k, atoms, VertexSet::full(n), true))
        })
        .collect()
}
