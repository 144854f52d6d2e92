//! Minimum-weight spanning in-trees by cycle contraction.
//!
//! Every non-root vertex takes its cheapest out-arc. If those choices contain
//! a cycle, the cycle is contracted into one vertex whose out-arcs are
//! re-weighted by the cycle arc they would replace, and the contracted
//! problem is solved recursively. Greedy choices alone are wrong once cycles
//! appear, and negative weights are harmless because every non-root vertex
//! contributes exactly one arc.

use crate::error::SearchError;
use crate::graph::WeightedDigraph;
use crate::vertex_set::VertexSet;
use crate::weight::Rational;

/// A spanning in-tree of `G|_S`, in host vertex numbering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InTree {
    pub root: usize,
    /// Arcs sorted by origin; one per non-root vertex.
    pub arcs: Vec<(usize, usize)>,
    pub weight: Rational,
}

/// Minimum-weight in-tree spanning `set` with all walks ending at `root`, or
/// `None` when some vertex of `set` cannot reach `root` inside `set`.
pub fn min_in_tree(
    g: &WeightedDigraph,
    set: &VertexSet,
    root: usize,
) -> Result<Option<InTree>, SearchError> {
    if !set.contains(root) {
        return Err(SearchError::RootNotInSet { root });
    }
    let members: Vec<usize> = set.iter().collect();
    if members.len() == 1 {
        return Ok(Some(InTree {
            root,
            arcs: Vec::new(),
            weight: Rational::zero(),
        }));
    }
    let local = |v: usize| members.binary_search(&v).ok();
    let mut arcs = Vec::new();
    for &u in &members {
        for (v, w) in g.out_arcs(u) {
            if let Some(lv) = local(*v) {
                arcs.push(Arc {
                    from: local(u).unwrap(),
                    to: lv,
                    weight: w.clone(),
                    id: arcs.len(),
                });
            }
        }
    }
    let root_local = local(root).unwrap();
    let Some(chosen) = contract_solve(members.len(), &arcs, root_local) else {
        return Ok(None);
    };
    let mut tree_arcs = Vec::with_capacity(members.len() - 1);
    let mut weight = Rational::zero();
    for id in chosen.into_iter().flatten() {
        let a = &arcs[id];
        tree_arcs.push((members[a.from], members[a.to]));
        weight += &a.weight;
    }
    tree_arcs.sort_unstable();
    Ok(Some(InTree {
        root,
        arcs: tree_arcs,
        weight,
    }))
}

#[derive(Clone, Debug)]
struct Arc {
    from: usize,
    to: usize,
    weight: Rational,
    /// Index into the caller's arc list.
    id: usize,
}

/// Returns, for each vertex, the `id` of its out-arc in a minimum in-tree
/// rooted at `root` (`None` for the root), or `None` if no in-tree exists.
fn contract_solve(n: usize, arcs: &[Arc], root: usize) -> Option<Vec<Option<usize>>> {
    // cheapest out-arc per vertex, ties by terminus then position
    let mut best: Vec<Option<usize>> = vec![None; n];
    for (pos, a) in arcs.iter().enumerate() {
        if a.from == root || a.from == a.to {
            continue;
        }
        let better = match best[a.from] {
            None => true,
            Some(b) => {
                let cur = &arcs[b];
                (&a.weight, a.to) < (&cur.weight, cur.to)
            }
        };
        if better {
            best[a.from] = Some(pos);
        }
    }
    if (0..n).any(|v| v != root && best[v].is_none()) {
        return None;
    }

    let next: Vec<Option<usize>> = best.iter().map(|b| b.map(|p| arcs[p].to)).collect();
    let Some(cycle) = find_cycle(&next) else {
        return Some(best.iter().map(|b| b.map(|p| arcs[p].id)).collect());
    };

    // contract: cycle vertices map to `c`, the rest keep their relative order
    let mut in_cycle = vec![false; n];
    for &v in &cycle {
        in_cycle[v] = true;
    }
    let mut map = vec![0usize; n];
    let mut m = 0;
    for v in 0..n {
        if !in_cycle[v] {
            map[v] = m;
            m += 1;
        }
    }
    let c = m;
    for &v in &cycle {
        map[v] = c;
    }
    let mut contracted = Vec::new();
    for (pos, a) in arcs.iter().enumerate() {
        let (u, v) = (map[a.from], map[a.to]);
        if u == v {
            continue;
        }
        let weight = if in_cycle[a.from] {
            &a.weight - &arcs[best[a.from].unwrap()].weight
        } else {
            a.weight.clone()
        };
        contracted.push(Arc {
            from: u,
            to: v,
            weight,
            id: pos,
        });
    }
    let sub = contract_solve(m + 1, &contracted, map[root])?;

    // expand: `sub` holds positions into `arcs`
    let mut choice: Vec<Option<usize>> = vec![None; n];
    for v in 0..n {
        if !in_cycle[v] && v != root {
            choice[v] = sub[map[v]];
        }
    }
    let leaving = sub[c].expect("contracted cycle is not the root");
    for &v in &cycle {
        choice[v] = best[v];
    }
    choice[arcs[leaving].from] = Some(leaving);
    Some(choice.iter().map(|p| p.map(|p| arcs[p].id)).collect())
}

fn find_cycle(next: &[Option<usize>]) -> Option<Vec<usize>> {
    let n = next.len();
    let mut color = vec![0u8; n];
    for s in 0..n {
        let mut path = Vec::new();
        let mut v = s;
        while color[v] == 0 {
            color[v] = 1;
            path.push(v);
            match next[v] {
                Some(t) => v = t,
                None => break,
            }
        }
        if color[v] == 1 && next[v].is_some() {
            if let Some(p) = path.iter().position(|&x| x == v) {
                return Some(path[p..].to_vec());
            }
        }
        for p in path {
            color[p] = 2;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::for_each_forest_of;
    use crate::graph::tests::three_cycle;
    use proptest::prelude::*;

    /// Minimum over all in-trees of `G|_S` rooted at `root`, by enumeration.
    fn brute_force(g: &WeightedDigraph, set: &VertexSet, root: usize) -> Option<Rational> {
        let (sub, map) = g.induced_subgraph(set).unwrap();
        let r = map.to_sub(root).unwrap();
        let mut best: Option<Rational> = None;
        for_each_forest_of(&sub, |out, w, k| {
            if k == 1 && out[r].is_none() && best.as_ref().is_none_or(|b| w < b) {
                best = Some(w.clone());
            }
        });
        best
    }

    #[test]
    fn three_cycle_examples() {
        let c = three_cycle();
        let single = min_in_tree(&c, &VertexSet::singleton(2), 2)
            .unwrap()
            .unwrap();
        assert_eq!(single.weight, 0.into());
        assert!(single.arcs.is_empty());

        let t = min_in_tree(&c, &VertexSet::full(3), 2).unwrap().unwrap();
        assert_eq!(t.arcs, vec![(0, 1), (1, 2)]);
        assert_eq!(t.weight, 3.into());

        let t = min_in_tree(&c, &VertexSet::full(3), 1).unwrap().unwrap();
        assert_eq!(t.arcs, vec![(0, 1), (2, 0)]);
        assert_eq!(t.weight, 4.into());
    }

    #[test]
    fn root_outside_set_is_an_error() {
        let c = three_cycle();
        assert_eq!(
            min_in_tree(&c, &VertexSet::singleton(0), 1),
            Err(SearchError::RootNotInSet { root: 1 })
        );
    }

    #[test]
    fn unreachable_root_gives_none() {
        let g = WeightedDigraph::from_arcs(3, [(0, 1, 1.into()), (2, 1, 1.into())]).unwrap();
        assert_eq!(min_in_tree(&g, &VertexSet::full(3), 0).unwrap(), None);
        assert!(min_in_tree(&g, &VertexSet::full(3), 1).unwrap().is_some());
    }

    /// Greedy cheapest-out-arc choices form the cycle 0 <-> 1; the optimum
    /// leaves the cycle through the expensive arc.
    #[test]
    fn contraction_beats_greedy() {
        let arcs = [(0, 1, 1), (1, 0, 1), (0, 2, 10), (1, 2, 3)]
            .map(|(i, j, w)| (i, j, Rational::from_integer(w)));
        let g = WeightedDigraph::from_arcs(3, arcs).unwrap();
        let t = min_in_tree(&g, &VertexSet::full(3), 2).unwrap().unwrap();
        assert_eq!(t.weight, 4.into());
        assert_eq!(t.arcs, vec![(0, 1), (1, 2)]);
    }

    fn arb_graph() -> impl Strategy<Value = WeightedDigraph> {
        (2usize..=7).prop_flat_map(|n| {
            proptest::collection::vec(proptest::option::weighted(0.6, -5i64..10), n * n).prop_map(
                move |ws| {
                    let arcs = ws.into_iter().enumerate().filter_map(|(idx, w)| {
                        let (i, j) = (idx / n, idx % n);
                        w.filter(|_| i != j).map(|w| (i, j, Rational::new(w, 2)))
                    });
                    WeightedDigraph::from_arcs(n, arcs).unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn matches_brute_force(g in arb_graph(), mask in 1u32..128, root_pick in 0usize..7) {
            let n = g.vertex_count();
            let mut set: VertexSet = (0..n).filter(|v| mask & (1 << v) != 0).collect();
            if set.is_empty() {
                set.insert(0);
            }
            let members: Vec<usize> = set.iter().collect();
            let root = members[root_pick % members.len()];
            let got = min_in_tree(&g, &set, root).unwrap();
            let expected = brute_force(&g, &set, root);
            prop_assert_eq!(got.as_ref().map(|t| t.weight.clone()), expected);
            if let Some(t) = got {
                // the returned arcs form an in-tree of the stated weight
                let sum: Rational = t.arcs.iter().map(|&(i, j)| g.arc(i, j).unwrap().clone()).sum();
                prop_assert_eq!(sum, t.weight);
                prop_assert_eq!(t.arcs.len() + 1, set.len());
                for &v in &members {
                    let mut u = v;
                    let mut steps = 0;
                    while u != root {
                        u = t.arcs.iter().find(|a| a.0 == u).expect("non-root has an arc").1;
                        prop_assert!(set.contains(u));
                        steps += 1;
                        prop_assert!(steps <= members.len());
                    }
                }
            }
        }
    }
}
