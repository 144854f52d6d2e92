//! The φ_k profile from the greedy chain of descendants.

use std::collections::{BTreeSet, HashMap};

use crate::forest::{trees_of, SpanningForest};
use crate::graph::WeightedDigraph;
use crate::search::arborescence::{min_in_tree, InTree};
use crate::vertex_set::VertexSet;
use crate::weight::{Rational, Weight};

/// φ_1..φ_N with one representative forest per finite level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiProfile {
    /// Entry `k - 1` is φ_k.
    pub phi: Vec<Weight>,
    pub representative: Vec<Option<SpanningForest>>,
    /// Interior levels `2 <= k <= N - 1` where the convexity chain is strict,
    /// counting `φ_{k-1} = ∞` as strict.
    pub strict_levels: BTreeSet<usize>,
}

impl PhiProfile {
    /// Assembles a profile and classifies its levels.
    pub fn from_levels(phi: Vec<Weight>, representative: Vec<Option<SpanningForest>>) -> Self {
        let n = phi.len();
        let mut strict_levels = BTreeSet::new();
        for k in 2..n {
            if !phi[k - 1].is_finite() {
                continue;
            }
            let left = phi[k - 2].checked_sub(&phi[k - 1]);
            let right = phi[k - 1].checked_sub(&phi[k]);
            match (left, right) {
                (None, _) => {
                    strict_levels.insert(k);
                }
                (Some(l), Some(r)) if l > r => {
                    strict_levels.insert(k);
                }
                _ => {}
            }
        }
        PhiProfile {
            phi,
            representative,
            strict_levels,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.phi.len()
    }

    pub fn phi(&self, k: usize) -> &Weight {
        &self.phi[k - 1]
    }

    pub fn representative(&self, k: usize) -> Option<&SpanningForest> {
        self.representative[k - 1].as_ref()
    }

    pub fn is_finite(&self, k: usize) -> bool {
        (1..=self.phi.len()).contains(&k) && self.phi[k - 1].is_finite()
    }

    /// Smallest `k` with finite φ_k.
    pub fn lowest_finite_level(&self) -> usize {
        (1..=self.phi.len())
            .find(|&k| self.is_finite(k))
            .expect("the empty forest is always finite")
    }

    /// φ_{k-1} − φ_k, infinite when φ_{k-1} is; `None` for `k = 1` or
    /// infinite φ_k.
    pub fn delta(&self, k: usize) -> Option<Weight> {
        if k < 2 || !self.is_finite(k) {
            return None;
        }
        Some(self.phi[k - 2].checked_sub(&self.phi[k - 1]).into())
    }

    /// Whether level `k` is strict in the wide sense used for theorem
    /// preconditions: interior strict levels, plus `k = 1`, `k = N` and the
    /// lowest finite level.
    pub fn is_strict(&self, k: usize) -> bool {
        self.is_finite(k)
            && (k == 1
                || k == self.phi.len()
                || !self.phi[k - 2].is_finite()
                || self.strict_levels.contains(&k))
    }

    /// Interior levels where the convexity chain holds with equality.
    pub fn is_equality(&self, k: usize) -> bool {
        self.is_finite(k) && !self.is_strict(k)
    }

    /// The strict level whose condensation serves level `k`: `k` itself when
    /// strict, otherwise the top of its plateau.
    pub fn condensation_level(&self, k: usize) -> Option<usize> {
        if !self.is_finite(k) {
            return None;
        }
        (k..=self.phi.len()).find(|&j| self.is_strict(j))
    }

    /// For a strict level `k`, the next strict level below it (or `k` itself
    /// at the lowest finite level). Levels strictly between are the plateau.
    pub fn plateau_bottom(&self, k: usize) -> usize {
        (self.lowest_finite_level()..k)
            .rev()
            .find(|&j| self.is_strict(j))
            .unwrap_or(k)
    }

    pub fn distinct_condensation_count(&self) -> usize {
        1 + self.strict_levels.len()
    }

    /// φ_{k-1} − φ_k >= φ_k − φ_{k+1} wherever all three are finite.
    pub fn is_convex(&self) -> bool {
        (2..self.phi.len()).all(|k| {
            match (
                self.phi[k - 2].checked_sub(&self.phi[k - 1]),
                self.phi[k - 1].checked_sub(&self.phi[k]),
            ) {
                (Some(l), Some(r)) => l >= r,
                _ => true,
            }
        })
    }
}

/// Caches minimum in-trees across the steps of one chain.
#[derive(Default)]
struct TreeCache {
    trees: HashMap<(VertexSet, usize), Option<InTree>>,
}

impl TreeCache {
    fn get(&mut self, g: &WeightedDigraph, set: &VertexSet, root: usize) -> Option<&InTree> {
        self.trees
            .entry((set.clone(), root))
            .or_insert_with(|| min_in_tree(g, set, root).expect("root is in the set"))
            .as_ref()
    }
}

/// A minimum-weight descendant of `f`: one tree is re-rooted at some vertex
/// `i` with a minimum in-tree and attached to another tree by an arc out of
/// `i`. `None` when no arc leaves any tree.
///
/// Ties are broken towards the lexicographically least sorted arc list.
pub fn descendant_step(g: &WeightedDigraph, f: &SpanningForest) -> Option<SpanningForest> {
    descendant_with(g, f, &mut TreeCache::default()).map(|(forest, _)| forest)
}

fn descendant_with(
    g: &WeightedDigraph,
    f: &SpanningForest,
    cache: &mut TreeCache,
) -> Option<(SpanningForest, Rational)> {
    struct Best {
        gain: Rational,
        arcs: Vec<(usize, usize)>,
        out: Vec<Option<usize>>,
    }
    let mut best: Option<Best> = None;
    for (_, set) in trees_of(f) {
        let current: Rational = set
            .iter()
            .filter_map(|v| {
                f.out(v)
                    .map(|t| g.arc(v, t).expect("forest arc in graph").clone())
            })
            .sum();
        for i in set.iter() {
            let leaving: Vec<(usize, Rational)> = g
                .out_arcs(i)
                .iter()
                .filter(|(m, _)| !set.contains(*m))
                .cloned()
                .collect();
            if leaving.is_empty() {
                continue;
            }
            let Some(tree) = cache.get(g, &set, i) else {
                continue;
            };
            let base = &tree.weight - &current;
            for (m, w) in leaving {
                let gain = &base + &w;
                if best.as_ref().is_some_and(|b| gain > b.gain) {
                    continue;
                }
                let mut out = f.as_slice().to_vec();
                for v in set.iter() {
                    out[v] = None;
                }
                for &(a, b) in &tree.arcs {
                    out[a] = Some(b);
                }
                out[i] = Some(m);
                let arcs: Vec<(usize, usize)> = out
                    .iter()
                    .enumerate()
                    .filter_map(|(a, o)| o.map(|b| (a, b)))
                    .collect();
                let better = match &best {
                    None => true,
                    Some(b) => gain < b.gain || arcs < b.arcs,
                };
                if better {
                    best = Some(Best { gain, arcs, out });
                }
            }
        }
    }
    best.map(|b| (SpanningForest::from_out_unchecked(b.out), b.gain))
}

/// φ_N = 0 from the empty forest, then repeated minimum descendants until no
/// merge is possible; the remaining levels are infinite.
pub fn phi_profile(g: &WeightedDigraph) -> PhiProfile {
    let n = g.vertex_count();
    let mut phi = vec![Weight::Infinite; n];
    let mut representative = vec![None; n];
    let mut cache = TreeCache::default();
    let mut forest = SpanningForest::empty(n);
    let mut weight = Rational::zero();
    let mut k = n;
    loop {
        phi[k - 1] = Weight::Finite(weight.clone());
        representative[k - 1] = Some(forest.clone());
        if k == 1 {
            break;
        }
        match descendant_with(g, &forest, &mut cache) {
            Some((next, gain)) => {
                weight = &weight + &gain;
                forest = next;
                k -= 1;
            }
            None => break,
        }
    }
    PhiProfile::from_levels(phi, representative)
}
