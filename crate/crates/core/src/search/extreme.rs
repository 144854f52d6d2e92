//! Branch-and-bound enumeration of the extreme forests of one level.

use crate::enumerate::closes_circuit;
use crate::error::SearchError;
use crate::forest::SpanningForest;
use crate::graph::WeightedDigraph;
use crate::search::profile::phi_profile;
use crate::weight::{Rational, Weight};

pub const DEFAULT_ENUMERATION_CAP: usize = 10_000;

/// All `k`-tree forests of weight φ_k, or the first `cap` of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremeForestSet {
    pub k: usize,
    pub phi: Rational,
    /// Sorted by out-function.
    pub forests: Vec<SpanningForest>,
    /// False when the cap cut the enumeration short.
    pub complete: bool,
}

pub fn enumerate_extreme(
    g: &WeightedDigraph,
    k: usize,
    cap: usize,
) -> Result<ExtremeForestSet, SearchError> {
    let n = g.vertex_count();
    if k == 0 || k > n {
        return Err(SearchError::LevelOutOfRange { k, vertex_count: n });
    }
    match phi_profile(g).phi(k) {
        Weight::Finite(phi) => Ok(enumerate_extreme_at(g, k, phi, cap)),
        Weight::Infinite => Err(SearchError::PhiInfinite { k }),
    }
}

/// [`enumerate_extreme`] with φ_k already known.
pub fn enumerate_extreme_at(
    g: &WeightedDigraph,
    k: usize,
    phi: &Rational,
    cap: usize,
) -> ExtremeForestSet {
    let n = g.vertex_count();
    let min_out: Vec<Option<Rational>> = (0..n)
        .map(|v| g.out_arcs(v).iter().map(|(_, w)| w).min().cloned())
        .collect();
    let mut search = Search {
        g,
        k,
        phi,
        cap,
        bounds: SuffixBounds::new(&min_out),
        out: vec![None; n],
        found: Vec::new(),
        complete: true,
    };
    search.descend(0, 0, &Rational::zero());
    let mut forests = search.found;
    forests.sort();
    ExtremeForestSet {
        k,
        phi: phi.clone(),
        forests,
        complete: search.complete,
    }
}

/// Lower bounds on what vertices `v..n` can add, given how many of them must
/// be roots.
///
/// Each vertex contributes 0 as a root or at least its cheapest out-arc
/// otherwise; vertices without out-arcs must be roots. With `r` roots still
/// to place, the cheapest completion makes roots of the `r - forced`
/// non-forced vertices with the largest cheapest arcs.
struct SuffixBounds {
    forced: Vec<usize>,
    /// `total[v]`: sum of cheapest arcs over non-forced vertices of `v..n`.
    total: Vec<Rational>,
    /// `top[v][t]`: sum of the `t` largest of those.
    top: Vec<Vec<Rational>>,
}

impl SuffixBounds {
    fn new(min_out: &[Option<Rational>]) -> Self {
        let n = min_out.len();
        let mut forced = vec![0; n + 1];
        let mut total = vec![Rational::zero(); n + 1];
        let mut top = vec![vec![Rational::zero()]; n + 1];
        for v in (0..n).rev() {
            forced[v] = forced[v + 1] + usize::from(min_out[v].is_none());
            let mut values: Vec<&Rational> = min_out[v..].iter().flatten().collect();
            values.sort_unstable_by(|a, b| b.cmp(a));
            total[v] = values.iter().copied().sum();
            let mut acc = Rational::zero();
            top[v] = std::iter::once(Rational::zero())
                .chain(values.iter().map(|w| {
                    acc += *w;
                    acc.clone()
                }))
                .collect();
        }
        SuffixBounds { forced, total, top }
    }

    /// `None` when no completion with exactly `roots` roots exists.
    fn bound(&self, v: usize, roots: usize, remaining: usize) -> Option<Rational> {
        if roots > remaining || self.forced[v] > roots {
            return None;
        }
        let free = roots - self.forced[v];
        Some(&self.total[v] - &self.top[v][free])
    }
}

struct Search<'a> {
    g: &'a WeightedDigraph,
    k: usize,
    phi: &'a Rational,
    cap: usize,
    bounds: SuffixBounds,
    out: Vec<Option<usize>>,
    found: Vec<SpanningForest>,
    complete: bool,
}

impl Search<'_> {
    fn descend(&mut self, v: usize, roots: usize, partial: &Rational) {
        if !self.complete {
            return;
        }
        let n = self.out.len();
        let Some(bound) = self.bounds.bound(v, self.k - roots, n - v) else {
            return;
        };
        if &(partial + &bound) > self.phi {
            return;
        }
        if v == n {
            if self.found.len() == self.cap {
                self.complete = false;
            } else {
                self.found
                    .push(SpanningForest::from_out_unchecked(self.out.clone()));
            }
            return;
        }
        if roots < self.k {
            self.out[v] = None;
            self.descend(v + 1, roots + 1, partial);
        }
        let g = self.g;
        for (t, w) in g.out_arcs(v) {
            if closes_circuit(&self.out, v, *t) {
                continue;
            }
            self.out[v] = Some(*t);
            self.descend(v + 1, roots, &(partial + w));
        }
        self.out[v] = None;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::three_cycle;
    use crate::search::oracle::oracle_all_levels;
    use proptest::prelude::*;

    #[test]
    fn three_cycle_sets() {
        let c = three_cycle();
        let two = enumerate_extreme(&c, 2, 100).unwrap();
        assert!(two.complete);
        assert_eq!(two.forests.len(), 1);
        assert_eq!(two.forests[0].as_slice(), &[Some(1), None, None]);

        let three = enumerate_extreme(&c, 3, 100).unwrap();
        assert_eq!(three.forests, vec![SpanningForest::empty(3)]);
    }

    #[test]
    fn ties_are_all_reported() {
        let g = WeightedDigraph::from_arcs(3, [(0, 2, 1.into()), (1, 2, 1.into())]).unwrap();
        let set = enumerate_extreme(&g, 2, 100).unwrap();
        let outs: Vec<_> = set.forests.iter().map(|f| f.as_slice().to_vec()).collect();
        assert_eq!(
            outs,
            vec![vec![None, Some(2), None], vec![Some(2), None, None]]
        );
    }

    #[test]
    fn cap_is_reported() {
        let arcs = (0..4).flat_map(|i| {
            (0..4)
                .filter(move |&j| j != i)
                .map(move |j| (i, j, 1.into()))
        });
        let g = WeightedDigraph::from_arcs(4, arcs).unwrap();
        let all = enumerate_extreme(&g, 1, 1000).unwrap();
        assert!(all.complete);
        assert_eq!(all.forests.len(), 64);
        let capped = enumerate_extreme(&g, 1, 10).unwrap();
        assert!(!capped.complete);
        assert_eq!(capped.forests.len(), 10);
    }

    #[test]
    fn infinite_level_is_an_error() {
        assert_eq!(
            enumerate_extreme(&WeightedDigraph::empty(2), 1, 10),
            Err(SearchError::PhiInfinite { k: 1 })
        );
    }

    fn arb_graph() -> impl Strategy<Value = WeightedDigraph> {
        (1usize..=6).prop_flat_map(|n| {
            proptest::collection::vec(proptest::option::weighted(0.6, -2i64..4), n * n).prop_map(
                move |ws| {
                    let arcs = ws
                        .into_iter()
                        .enumerate()
                        .filter_map(|(idx, w)| w.map(|w| (idx / n, idx % n, w.into())));
                    WeightedDigraph::from_arcs(n, arcs).unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn equals_oracle_minimizers(g in arb_graph()) {
            let oracle = oracle_all_levels(&g, 8).unwrap();
            for (idx, level) in oracle.iter().enumerate() {
                if let Weight::Finite(phi) = &level.weight {
                    let set = enumerate_extreme_at(&g, idx + 1, phi, 100_000);
                    prop_assert!(set.complete);
                    prop_assert_eq!(&set.forests, &level.forests);
                }
            }
        }
    }
}
