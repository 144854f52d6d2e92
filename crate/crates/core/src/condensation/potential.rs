//! Potential weights: `v_ij = p_ij − q_i` with `p` symmetric.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::graph::WeightedDigraph;
use crate::weight::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PotentialError {
    #[error("arc ({origin}, {terminus}) has no reverse arc")]
    AsymmetricArcs { origin: usize, terminus: usize },
    /// Walking `cycle` and back to its first vertex, the sum of
    /// `v_ab − v_ba` is `imbalance`, not zero.
    #[error("cycle {cycle:?} has imbalance {imbalance}")]
    InconsistentCycle {
        cycle: Vec<usize>,
        imbalance: Rational,
    },
}

/// `q_i` (the diagonal `p_ii`, zero at the smallest vertex of each weak
/// component) and `p_ij` for every arc pair, keyed with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Potential {
    pub q: Vec<Rational>,
    pub p: BTreeMap<(usize, usize), Rational>,
}

impl Potential {
    /// The digraph with `v_ij = p_ij − q_i` in both directions of every pair.
    pub fn to_digraph(&self) -> WeightedDigraph {
        let arcs = self
            .p
            .iter()
            .flat_map(|(&(i, j), p)| [(i, j, p - &self.q[i]), (j, i, p - &self.q[j])]);
        WeightedDigraph::from_arcs(self.q.len(), arcs).expect("pairs are in range")
    }
}

/// Sum of `v_ab − v_ba` around the closed walk through `cycle`.
pub fn cycle_imbalance(g: &WeightedDigraph, cycle: &[usize]) -> Option<Rational> {
    let mut total = Rational::zero();
    for (idx, &a) in cycle.iter().enumerate() {
        let b = cycle[(idx + 1) % cycle.len()];
        total += &(g.arc(a, b)? - g.arc(b, a)?);
    }
    Some(total)
}

/// Recovers a potential representation of the weights, if one exists.
pub fn detect_potentiality(g: &WeightedDigraph) -> Result<Potential, PotentialError> {
    for (i, j, _) in g.arcs() {
        if i != j && g.arc(j, i).is_none() {
            return Err(PotentialError::AsymmetricArcs {
                origin: i,
                terminus: j,
            });
        }
    }
    let n = g.vertex_count();
    let mut q: Vec<Option<Rational>> = vec![None; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut depth = vec![0usize; n];
    for start in 0..n {
        if q[start].is_some() {
            continue;
        }
        q[start] = Some(Rational::zero());
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let qi = q[i].clone().expect("queued vertices are assigned");
            for (j, v) in g.out_arcs(i) {
                let expected = &qi + &(v - g.arc(*j, i).expect("arcs are symmetric"));
                match &q[*j] {
                    None => {
                        q[*j] = Some(expected);
                        parent[*j] = Some(i);
                        depth[*j] = depth[i] + 1;
                        queue.push_back(*j);
                    }
                    Some(qj) if *qj == expected => {}
                    Some(_) => {
                        let cycle = tree_path(&parent, &depth, i, *j);
                        let imbalance = cycle_imbalance(g, &cycle).expect("cycle arcs exist");
                        return Err(PotentialError::InconsistentCycle { cycle, imbalance });
                    }
                }
            }
        }
    }
    let q: Vec<Rational> = q
        .into_iter()
        .map(|x| x.expect("every vertex is reached"))
        .collect();
    let p = g
        .arcs()
        .filter(|(i, j, _)| i < j)
        .map(|(i, j, v)| ((i, j), v + &q[i]))
        .collect();
    Ok(Potential { q, p })
}

/// Vertices on the search-tree path from `i` to `j`.
fn tree_path(parent: &[Option<usize>], depth: &[usize], i: usize, j: usize) -> Vec<usize> {
    let (mut a, mut b) = (i, j);
    let mut up = vec![a];
    let mut down = vec![b];
    while depth[a] > depth[b] {
        a = parent[a].expect("deeper vertex has a parent");
        up.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b].expect("deeper vertex has a parent");
        down.push(b);
    }
    while a != b {
        a = parent[a].expect("distinct vertices below the root");
        b = parent[b].expect("distinct vertices below the root");
        up.push(a);
        down.push(b);
    }
    down.pop();
    up.extend(down.into_iter().rev());
    up
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::three_cycle;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn two_vertex_round_trip() {
        let g = WeightedDigraph::from_arcs(2, [(0, 1, r(5)), (1, 0, r(4))]).unwrap();
        let pot = detect_potentiality(&g).unwrap();
        assert_eq!(pot.q, vec![r(0), r(1)]);
        assert_eq!(pot.p[&(0, 1)], r(5));
        assert_eq!(pot.to_digraph(), g);
    }

    #[test]
    fn three_cycle_is_inconsistent() {
        let c = three_cycle();
        let Err(PotentialError::InconsistentCycle { cycle, imbalance }) = detect_potentiality(&c)
        else {
            panic!("three-cycle weights are not potential");
        };
        assert_eq!(cycle.len(), 3);
        assert_eq!(cycle_imbalance(&c, &cycle), Some(imbalance.clone()));
        assert!(imbalance == r(9) || imbalance == r(-9));
    }

    #[test]
    fn missing_reverse_arc() {
        let g = WeightedDigraph::from_arcs(3, [(0, 1, r(1)), (1, 0, r(1)), (1, 2, r(1))]).unwrap();
        assert_eq!(
            detect_potentiality(&g),
            Err(PotentialError::AsymmetricArcs {
                origin: 1,
                terminus: 2
            })
        );
    }

    #[test]
    fn edgeless_graph_is_potential() {
        let pot = detect_potentiality(&WeightedDigraph::empty(3)).unwrap();
        assert_eq!(pot.q, vec![r(0); 3]);
        assert!(pot.p.is_empty());
    }

    fn potential_strategy() -> impl Strategy<Value = Potential> {
        (1usize..=7).prop_flat_map(|n| {
            let q = proptest::collection::vec(-5i64..6, n);
            let pairs =
                proptest::collection::vec(proptest::option::weighted(0.5, -5i64..10), n * n);
            (q, pairs).prop_map(move |(q, pairs)| {
                let mut q: Vec<Rational> = q.into_iter().map(r).collect();
                let p: BTreeMap<(usize, usize), Rational> = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter_map(|(i, j)| pairs[i * n + j].map(|w| ((i, j), r(w))))
                    .collect();
                // anchor each weak component at its smallest vertex
                let g = Potential {
                    q: q.clone(),
                    p: p.clone(),
                }
                .to_digraph();
                for v in 0..n {
                    let anchor = (0..n).find(|&u| component(&g, u).contains(&v)).unwrap();
                    if anchor == v {
                        let shift = q[v].clone();
                        for u in component(&g, v) {
                            q[u] = &q[u] - &shift;
                        }
                    }
                }
                let p = p
                    .into_iter()
                    .map(|((i, j), _)| ((i, j), g.arc(i, j).unwrap() + &q[i]))
                    .collect();
                Potential { q, p }
            })
        })
    }

    fn component(g: &WeightedDigraph, v: usize) -> Vec<usize> {
        g.reachable_from(v).iter().collect()
    }

    proptest! {
        #[test]
        fn round_trip(pot in potential_strategy()) {
            let g = pot.to_digraph();
            let found = detect_potentiality(&g).unwrap();
            prop_assert_eq!(found.to_digraph(), g);
            prop_assert_eq!(found, pot);
        }

        #[test]
        fn perturbation_is_caught(pot in potential_strategy(), pick in any::<prop::sample::Index>(), delta in 1i64..4) {
            let g = pot.to_digraph();
            let arcs: Vec<(usize, usize, Rational)> = g.arcs().map(|(i, j, w)| (i, j, w.clone())).collect();
            if arcs.is_empty() {
                return Ok(());
            }
            let target = pick.index(arcs.len());
            let (a, b, _) = arcs[target].clone();
            let perturbed = WeightedDigraph::from_arcs(
                g.vertex_count(),
                arcs.into_iter().enumerate().map(|(idx, (i, j, w))| (i, j, if idx == target { w + r(delta) } else { w })),
            ).unwrap();
            match detect_potentiality(&perturbed) {
                Err(PotentialError::InconsistentCycle { cycle, imbalance }) => {
                    prop_assert!(!imbalance.is_zero());
                    prop_assert_eq!(cycle_imbalance(&perturbed, &cycle), Some(imbalance));
                }
                // a bridge pair can absorb any perturbation
                Ok(found) => {
                    prop_assert_eq!(found.to_digraph(), perturbed);
                    let rest = WeightedDigraph::from_arcs(
                        g.vertex_count(),
                        g.arcs().filter(|&(i, j, _)| (i, j) != (a, b) && (i, j) != (b, a)).map(|(i, j, w)| (i, j, w.clone())),
                    ).unwrap();
                    prop_assert!(!rest.reachable_from(a).contains(b));
                }
                Err(e) => prop_assert!(false, "unexpected {e:?}"),
            }
        }
    }
}
