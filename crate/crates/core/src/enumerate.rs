//! Exhaustive enumeration of in-forests.
//!
//! Each vertex in turn picks "root" or one of its out-arcs; a choice that
//! would close a circuit is skipped immediately, so every visited leaf is a
//! forest and every forest is visited exactly once.

use crate::graph::WeightedDigraph;
use crate::weight::Rational;

/// Calls `visit(out, weight, tree_count)` once for every spanning in-forest of
/// the graph whose non-loop out-arcs are `out_arcs`.
pub fn for_each_forest<F>(out_arcs: &[&[(usize, Rational)]], mut visit: F)
where
    F: FnMut(&[Option<usize>], &Rational, usize),
{
    let n = out_arcs.len();
    let mut out = vec![None; n];
    let mut partial = vec![Rational::zero(); n + 1];
    descend(out_arcs, 0, 0, &mut out, &mut partial, &mut visit);
}

/// [`for_each_forest`] over a [`WeightedDigraph`].
pub fn for_each_forest_of<F>(g: &WeightedDigraph, visit: F)
where
    F: FnMut(&[Option<usize>], &Rational, usize),
{
    let arcs: Vec<&[(usize, Rational)]> = (0..g.vertex_count()).map(|v| g.out_arcs(v)).collect();
    for_each_forest(&arcs, visit);
}

fn descend<F>(
    out_arcs: &[&[(usize, Rational)]],
    v: usize,
    roots: usize,
    out: &mut Vec<Option<usize>>,
    partial: &mut Vec<Rational>,
    visit: &mut F,
) where
    F: FnMut(&[Option<usize>], &Rational, usize),
{
    let n = out_arcs.len();
    if v == n {
        visit(out, &partial[n], roots);
        return;
    }
    out[v] = None;
    partial[v + 1] = partial[v].clone();
    descend(out_arcs, v + 1, roots + 1, out, partial, visit);
    for (t, w) in out_arcs[v] {
        if closes_circuit(out, v, *t) {
            continue;
        }
        out[v] = Some(*t);
        partial[v + 1] = &partial[v] + w;
        descend(out_arcs, v + 1, roots, out, partial, visit);
    }
    out[v] = None;
}

/// Whether pointing `v` at `t` closes a circuit, given that only vertices
/// below `v` have been assigned.
pub(crate) fn closes_circuit(out: &[Option<usize>], v: usize, t: usize) -> bool {
    let mut u = t;
    loop {
        if u == v {
            return true;
        }
        if u > v {
            return false;
        }
        match out[u] {
            Some(next) => u = next,
            None => return false,
        }
    }
}
