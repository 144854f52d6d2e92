//! φ of a condensed graph, by branch and bound over its forests.

use crate::condensation::CondensedGraph;
use crate::enumerate::closes_circuit;
use crate::weight::{Rational, Weight};

/// Minimum condensed forest weight over forests with `n` trees.
pub fn phi_on_condensation(c: &CondensedGraph, n: usize) -> Weight {
    if n == 0 || n > c.vertex_count() {
        return Weight::Infinite;
    }
    let (out, root_cost, constant) = costs(c);
    let Some(constant) = constant else {
        return Weight::Infinite;
    };
    min_forest(&out, &root_cost, n)
        .map(|w| w + &constant)
        .into()
}

/// φ of the condensation for every tree count; entry `n - 1` is level `n`.
pub fn condensed_profile(c: &CondensedGraph) -> Vec<Weight> {
    (1..=c.vertex_count())
        .map(|n| phi_on_condensation(c, n))
        .collect()
}

/// Out-arcs, per-root costs and a constant paid by every forest.
fn costs(
    c: &CondensedGraph,
) -> (
    Vec<Vec<(usize, Rational)>>,
    Vec<Option<Rational>>,
    Option<Rational>,
) {
    let mut out = c.out_arcs();
    for list in &mut out {
        list.sort_by(|a, b| (&a.1, a.0).cmp(&(&b.1, b.0)));
    }
    if c.directed {
        (out, c.set_weights.clone(), Some(Rational::zero()))
    } else {
        let constant = c.set_weights.iter().cloned().sum::<Option<Rational>>();
        (
            out,
            vec![Some(Rational::zero()); c.vertex_count()],
            constant,
        )
    }
}

/// Least total of arc weights plus root costs over forests with `trees`
/// roots; a vertex without a root cost cannot be a root.
pub(crate) fn min_forest(
    out: &[Vec<(usize, Rational)>],
    root_cost: &[Option<Rational>],
    trees: usize,
) -> Option<Rational> {
    let n = out.len();
    let mut search = Search {
        out,
        root_cost,
        trees,
        bounds: Bounds::new(out, root_cost),
        assigned: vec![None; n],
        best: None,
    };
    search.descend(0, 0, Rational::zero());
    search.best
}

/// Lower bounds for vertices `v..n` given how many roots they must hold,
/// ignoring circuits: every vertex takes its cheapest option, and the
/// required roots go to the vertices where rooting costs least extra.
struct Bounds {
    feasible: Vec<bool>,
    forced: Vec<usize>,
    base: Vec<Rational>,
    /// `extra[v][s]`: least sum of `s` root surcharges among flexible vertices.
    extra: Vec<Vec<Rational>>,
}

impl Bounds {
    fn new(out: &[Vec<(usize, Rational)>], root_cost: &[Option<Rational>]) -> Self {
        let n = out.len();
        let mut feasible = vec![true; n + 1];
        let mut forced = vec![0; n + 1];
        let mut base = vec![Rational::zero(); n + 1];
        let mut extra = vec![vec![Rational::zero()]; n + 1];
        for v in (0..n).rev() {
            let min_arc = out[v].iter().map(|(_, w)| w).min();
            feasible[v] = feasible[v + 1] && (min_arc.is_some() || root_cost[v].is_some());
            forced[v] = forced[v + 1] + usize::from(min_arc.is_none());
            base[v] = &base[v + 1]
                + min_arc
                    .or(root_cost[v].as_ref())
                    .unwrap_or(&Rational::zero());
            let mut surcharges: Vec<Rational> = (v..n)
                .filter_map(|u| {
                    let arc = out[u].iter().map(|(_, w)| w).min()?;
                    Some(root_cost[u].as_ref()? - arc)
                })
                .collect();
            surcharges.sort();
            let mut acc = Rational::zero();
            extra[v] = std::iter::once(Rational::zero())
                .chain(surcharges.iter().map(|s| {
                    acc += s;
                    acc.clone()
                }))
                .collect();
        }
        Bounds {
            feasible,
            forced,
            base,
            extra,
        }
    }

    fn bound(&self, v: usize, roots: usize) -> Option<Rational> {
        if !self.feasible[v] || roots < self.forced[v] {
            return None;
        }
        let flexible = self.extra[v].get(roots - self.forced[v])?;
        Some(&self.base[v] + flexible)
    }
}

struct Search<'a> {
    out: &'a [Vec<(usize, Rational)>],
    root_cost: &'a [Option<Rational>],
    trees: usize,
    bounds: Bounds,
    assigned: Vec<Option<usize>>,
    best: Option<Rational>,
}

impl Search<'_> {
    fn descend(&mut self, v: usize, roots: usize, partial: Rational) {
        if roots > self.trees {
            return;
        }
        let Some(bound) = self.bounds.bound(v, self.trees - roots) else {
            return;
        };
        let floor = &partial + &bound;
        if self.best.as_ref().is_some_and(|best| floor >= *best) {
            return;
        }
        if v == self.assigned.len() {
            self.best = Some(partial);
            return;
        }
        if let Some(cost) = &self.root_cost[v] {
            self.assigned[v] = None;
            self.descend(v + 1, roots + 1, &partial + cost);
        }
        let out = self.out;
        for (t, w) in &out[v] {
            if closes_circuit(&self.assigned, v, *t) {
                continue;
            }
            self.assigned[v] = Some(*t);
            self.descend(v + 1, roots, &partial + w);
        }
        self.assigned[v] = None;
    }
}
