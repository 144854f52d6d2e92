//! Descendant/ancestor relation between extreme forests of adjacent levels.

use crate::error::SearchError;
use crate::forest::{trees_of, SpanningForest};
use crate::graph::WeightedDigraph;
use crate::search::oracle::oracle_all_levels;
use crate::vertex_set::VertexSet;

/// Whether `child` (k trees) is a descendant of `parent` (k + 1 trees): all
/// but two trees of `parent` are trees of `child`, the remaining tree of
/// `child` spans the other two, `A` and `B`, and for one of them the arcs are
/// kept while `child` restricted to the other is a tree.
pub fn is_descendant(parent: &SpanningForest, child: &SpanningForest) -> bool {
    if parent.vertex_count() != child.vertex_count()
        || parent.tree_count() != child.tree_count() + 1
    {
        return false;
    }
    let changed: Vec<VertexSet> = trees_of(parent)
        .into_iter()
        .map(|(_, set)| set)
        .filter(|set| !is_tree_of(child, parent, set))
        .collect();
    let [a, b] = changed.as_slice() else {
        return false;
    };
    let merged = a.union(b);
    let Some(v) = merged.first() else {
        return false;
    };
    if child.tree_containing(v) != merged {
        return false;
    }
    (keeps_arcs(child, parent, a) && child.is_tree_on(b))
        || (keeps_arcs(child, parent, b) && child.is_tree_on(a))
}

/// Whether the tree of `parent` on `set` is also a tree of `child`.
fn is_tree_of(child: &SpanningForest, parent: &SpanningForest, set: &VertexSet) -> bool {
    set.iter().all(|v| child.out(v) == parent.out(v))
        && (0..child.vertex_count())
            .all(|u| set.contains(u) || child.out(u).is_none_or(|t| !set.contains(t)))
}

/// Whether every arc of `parent` out of `set` is an arc of `child`.
fn keeps_arcs(child: &SpanningForest, parent: &SpanningForest, set: &VertexSet) -> bool {
    set.iter()
        .all(|v| parent.out(v).is_none_or(|t| child.out(v) == Some(t)))
}

/// Checks on oracle sets that every extreme forest at level `k + 1` has a
/// descendant at level `k` and every extreme forest at level `k` has an
/// ancestor at level `k + 1`.
pub fn verify_relatives(g: &WeightedDigraph, k: usize, cap: usize) -> Result<bool, SearchError> {
    let n = g.vertex_count();
    if k == 0 || k >= n {
        return Err(SearchError::LevelOutOfRange { k, vertex_count: n });
    }
    let levels = oracle_all_levels(g, cap)?;
    let lower = &levels[k - 1];
    let upper = &levels[k];
    if !lower.weight.is_finite() {
        return Err(SearchError::PhiInfinite { k });
    }
    Ok(relatives_hold(&upper.forests, &lower.forests))
}

/// The two halves of the relatives check on given extreme sets.
pub fn relatives_hold(upper: &[SpanningForest], lower: &[SpanningForest]) -> bool {
    upper
        .iter()
        .all(|f| lower.iter().any(|g| is_descendant(f, g)))
        && lower
            .iter()
            .all(|g| upper.iter().any(|f| is_descendant(f, g)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::three_cycle;

    fn forest(out: &[Option<usize>]) -> SpanningForest {
        SpanningForest::try_from_out(out.to_vec()).unwrap()
    }

    #[test]
    fn three_cycle_levels() {
        let c = three_cycle();
        assert!(verify_relatives(&c, 1, 8).unwrap());
        assert!(verify_relatives(&c, 2, 8).unwrap());
    }

    #[test]
    fn descendant_examples() {
        let parent = forest(&[Some(1), None, None]);
        assert!(is_descendant(&parent, &forest(&[Some(1), Some(2), None])));
        // re-rooting the absorbed tree at 0
        assert!(is_descendant(&parent, &forest(&[Some(2), Some(0), None])));
        // both trees rewired
        assert!(!is_descendant(
            &forest(&[Some(1), None, None, Some(2), None]),
            &forest(&[None, Some(0), None, Some(4), Some(1)])
        ));
        // wrong tree count
        assert!(!is_descendant(&parent, &forest(&[Some(1), None, None])));
    }

    #[test]
    fn level_checks() {
        assert!(matches!(
            verify_relatives(&three_cycle(), 3, 8),
            Err(SearchError::LevelOutOfRange { .. })
        ));
        assert_eq!(
            verify_relatives(&WeightedDigraph::empty(2), 1, 8),
            Err(SearchError::PhiInfinite { k: 1 })
        );
    }
}
