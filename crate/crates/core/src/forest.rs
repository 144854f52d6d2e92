//! In-forests stored as out-functions, and the D-exchange primitive.
//!
//! A forest here is a digraph without circuits in which every vertex has at
//! most one out-arc; walks run toward the roots. Storing the single out-arc of
//! each vertex makes the representation canonical.

use std::fmt;

use crate::error::ForestError;
use crate::graph::WeightedDigraph;
use crate::vertex_set::VertexSet;
use crate::weight::Rational;

/// A map from each vertex to its out-neighbour, or `None` for a root. May
/// contain circuits; see [`is_forest`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OutFunction(pub Vec<Option<usize>>);

impl OutFunction {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Option<usize>] {
        &self.0
    }
}

/// Result of [`is_forest`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ForestCheck {
    Forest {
        tree_count: usize,
    },
    /// One circuit, listed in walk order starting from its smallest vertex.
    Circuit(Vec<usize>),
}

impl ForestCheck {
    pub fn is_forest(&self) -> bool {
        matches!(self, ForestCheck::Forest { .. })
    }
}

/// Decides whether following out-pointers from every vertex terminates.
pub fn is_forest(h: &OutFunction) -> ForestCheck {
    match find_circuit(h.as_slice()) {
        Some(circuit) => ForestCheck::Circuit(circuit),
        None => ForestCheck::Forest {
            tree_count: h.0.iter().filter(|o| o.is_none()).count(),
        },
    }
}

fn find_circuit(out: &[Option<usize>]) -> Option<Vec<usize>> {
    const NEW: usize = usize::MAX;
    const DONE: usize = usize::MAX - 1;
    let n = out.len();
    // state[v] is NEW, DONE, or the start vertex of the walk currently visiting v
    let mut state = vec![NEW; n];
    for start in 0..n {
        let mut v = start;
        loop {
            if state[v] == DONE {
                break;
            }
            if state[v] == start {
                let mut circuit = vec![v];
                let mut u = out[v].expect("vertex on a circuit has an out-arc");
                while u != v {
                    circuit.push(u);
                    u = out[u].expect("vertex on a circuit has an out-arc");
                }
                let pos = circuit
                    .iter()
                    .enumerate()
                    .min_by_key(|&(_, &x)| x)
                    .map(|(p, _)| p)
                    .unwrap();
                circuit.rotate_left(pos);
                return Some(circuit);
            }
            state[v] = start;
            match out[v] {
                Some(next) if next < n => v = next,
                _ => break,
            }
        }
        let mut v = start;
        while state[v] == start {
            state[v] = DONE;
            match out[v] {
                Some(next) if next < n => v = next,
                _ => break,
            }
        }
    }
    None
}

/// A spanning in-forest: an out-function without circuits.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpanningForest {
    out: Vec<Option<usize>>,
}

impl SpanningForest {
    /// The forest with no arcs: every vertex is its own tree.
    pub fn empty(n: usize) -> Self {
        SpanningForest { out: vec![None; n] }
    }

    /// Validates range and acyclicity. Host-graph arcs are checked separately
    /// by [`check_arcs`](Self::check_arcs).
    pub fn try_from_out(out: Vec<Option<usize>>) -> Result<Self, ForestError> {
        let n = out.len();
        for (v, o) in out.iter().enumerate() {
            match *o {
                Some(t) if t == v => return Err(ForestError::Loop { vertex: v }),
                Some(t) if t >= n => {
                    return Err(ForestError::LengthMismatch {
                        expected: t + 1,
                        got: n,
                    })
                }
                _ => {}
            }
        }
        if let Some(circuit) = find_circuit(&out) {
            return Err(ForestError::Circuit { circuit });
        }
        Ok(SpanningForest { out })
    }

    pub(crate) fn from_out_unchecked(out: Vec<Option<usize>>) -> Self {
        debug_assert!(find_circuit(&out).is_none());
        SpanningForest { out }
    }

    /// Builds a forest of `g` from its arc list; vertices without an arc
    /// become roots.
    pub fn from_arcs(
        g: &WeightedDigraph,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, ForestError> {
        let mut out = vec![None; g.vertex_count()];
        for (i, j) in arcs {
            if i >= out.len() || j >= out.len() {
                return Err(ForestError::MissingArc {
                    origin: i,
                    terminus: j,
                });
            }
            out[i] = Some(j);
        }
        let forest = Self::try_from_out(out)?;
        forest.check_arcs(g)?;
        Ok(forest)
    }

    pub fn check_arcs(&self, g: &WeightedDigraph) -> Result<(), ForestError> {
        if self.out.len() != g.vertex_count() {
            return Err(ForestError::LengthMismatch {
                expected: g.vertex_count(),
                got: self.out.len(),
            });
        }
        for (i, j) in self.arcs() {
            if g.arc(i, j).is_none() {
                return Err(ForestError::MissingArc {
                    origin: i,
                    terminus: j,
                });
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn out(&self, v: usize) -> Option<usize> {
        self.out[v]
    }

    pub fn as_slice(&self) -> &[Option<usize>] {
        &self.out
    }

    pub fn to_out_function(&self) -> OutFunction {
        OutFunction(self.out.clone())
    }

    pub fn is_root(&self, v: usize) -> bool {
        self.out[v].is_none()
    }

    pub fn roots(&self) -> impl Iterator<Item = usize> + '_ {
        self.out
            .iter()
            .enumerate()
            .filter(|(_, o)| o.is_none())
            .map(|(v, _)| v)
    }

    pub fn root_set(&self) -> VertexSet {
        self.roots().collect()
    }

    pub fn tree_count(&self) -> usize {
        self.out.iter().filter(|o| o.is_none()).count()
    }

    /// Arcs `(i, out(i))` in increasing order of origin.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .filter_map(|(i, o)| o.map(|j| (i, j)))
    }

    pub fn root_of(&self, mut v: usize) -> usize {
        while let Some(next) = self.out[v] {
            v = next;
        }
        v
    }

    /// Whether an `i·j`-walk exists, i.e. `j` is front to `i` or `i == j`.
    pub fn reaches(&self, i: usize, j: usize) -> bool {
        let mut v = i;
        loop {
            if v == j {
                return true;
            }
            match self.out[v] {
                Some(next) => v = next,
                None => return false,
            }
        }
    }

    /// Arcs with both endpoints in `set`.
    pub fn restricted_arcs(&self, set: &VertexSet) -> Vec<(usize, usize)> {
        self.arcs()
            .filter(|&(i, j)| set.contains(i) && set.contains(j))
            .collect()
    }

    /// Whether the subgraph induced by `set` is a single tree.
    ///
    /// The restriction is circuit-free, so it is a tree exactly when it has
    /// `|set| - 1` arcs.
    pub fn is_tree_on(&self, set: &VertexSet) -> bool {
        let inside = set
            .iter()
            .filter(|&v| self.out[v].is_some_and(|t| set.contains(t)))
            .count();
        inside + 1 == set.len()
    }

    /// Vertex set of the tree containing `v`.
    pub fn tree_containing(&self, v: usize) -> VertexSet {
        let root = self.root_of(v);
        (0..self.out.len())
            .filter(|&u| self.root_of(u) == root)
            .collect()
    }

    fn children(&self) -> Vec<Vec<usize>> {
        let mut children = vec![Vec::new(); self.out.len()];
        for (i, j) in self.arcs() {
            children[j].push(i);
        }
        children
    }
}

impl fmt::Debug for SpanningForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .out
            .iter()
            .enumerate()
            .map(|(i, o)| match o {
                Some(j) => format!("{i}->{j}"),
                None => format!("{i} root"),
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Sum of the weights of the forest's arcs; the empty forest weighs zero.
pub fn forest_weight(g: &WeightedDigraph, f: &SpanningForest) -> Result<Rational, ForestError> {
    if f.vertex_count() != g.vertex_count() {
        return Err(ForestError::LengthMismatch {
            expected: g.vertex_count(),
            got: f.vertex_count(),
        });
    }
    let mut total = Rational::zero();
    for (i, j) in f.arcs() {
        let w = g.arc(i, j).ok_or(ForestError::MissingArc {
            origin: i,
            terminus: j,
        })?;
        total += w;
    }
    Ok(total)
}

/// The D-exchange of `f` by `g`: out-arcs of vertices in `d` are taken from
/// `g`, all others from `f`. The result may contain circuits.
pub fn d_exchange(f: &SpanningForest, g: &SpanningForest, d: &VertexSet) -> OutFunction {
    assert_eq!(
        f.vertex_count(),
        g.vertex_count(),
        "forests on different vertex sets"
    );
    OutFunction(
        (0..f.vertex_count())
            .map(|v| if d.contains(v) { g.out[v] } else { f.out[v] })
            .collect(),
    )
}

/// Decides whether `d_exchange(f, g, d)` is a forest from front/rear relations
/// in `f` and `g` alone.
///
/// For every vertex `x` outside `d` that is the terminus of a `g`-arc leaving
/// `d`, let `enter(x)` be the first vertex of `d` front to `x` in `f`, and for
/// every `y` in `d` let `leave(y)` be the first vertex outside `d` front to
/// `y` in `g`. The exchange is a forest iff iterating `x -> leave(enter(x))`
/// never returns to `x`.
pub fn exchange_criterion(f: &SpanningForest, g: &SpanningForest, d: &VertexSet) -> bool {
    assert_eq!(
        f.vertex_count(),
        g.vertex_count(),
        "forests on different vertex sets"
    );
    let n = f.vertex_count();
    let enter = |x: usize| -> Option<usize> {
        let mut v = x;
        while let Some(next) = f.out[v] {
            if d.contains(next) {
                return Some(next);
            }
            v = next;
        }
        None
    };
    let leave = |y: usize| -> Option<usize> {
        let mut v = y;
        while let Some(next) = g.out[v] {
            if !d.contains(next) {
                return Some(next);
            }
            v = next;
        }
        None
    };
    // jump[x] for every exit point x; other entries stay unused
    let mut jump: Vec<Option<usize>> = vec![None; n];
    let mut is_exit = vec![false; n];
    for y in d.iter() {
        if let Some(t) = g.out[y] {
            if !d.contains(t) {
                is_exit[t] = true;
            }
        }
    }
    for x in (0..n).filter(|&x| is_exit[x]) {
        jump[x] = enter(x).and_then(leave);
    }
    // jump only ever lands on exit points, so a circuit of the exchange is a
    // cycle of this functional graph
    let restricted: Vec<Option<usize>> = (0..n)
        .map(|x| if is_exit[x] { jump[x] } else { None })
        .collect();
    find_circuit(&restricted).is_none()
}

/// All vertices `j != i` with a `j·i`-walk in `f`.
pub fn rear_set(f: &SpanningForest, i: usize) -> VertexSet {
    let children = f.children();
    let mut rear = VertexSet::new();
    let mut stack = children[i].clone();
    while let Some(v) = stack.pop() {
        rear.insert(v);
        stack.extend_from_slice(&children[v]);
    }
    rear
}

/// Partition of the vertices into trees, as `(root, vertices)` sorted by root.
pub fn trees_of(f: &SpanningForest) -> Vec<(usize, VertexSet)> {
    let n = f.vertex_count();
    let mut root_of = vec![usize::MAX; n];
    for v in 0..n {
        if root_of[v] != usize::MAX {
            continue;
        }
        let mut path = vec![v];
        let mut u = v;
        let root = loop {
            match f.out[u] {
                None => break u,
                Some(next) if root_of[next] != usize::MAX => break root_of[next],
                Some(next) => {
                    path.push(next);
                    u = next;
                }
            }
        };
        for p in path {
            root_of[p] = root;
        }
    }
    f.roots()
        .map(|r| (r, (0..n).filter(|&v| root_of[v] == r).collect()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::three_cycle;

    fn forest(out: &[Option<usize>]) -> SpanningForest {
        SpanningForest::try_from_out(out.to_vec()).unwrap()
    }

    #[test]
    fn forest_weight_examples() {
        let c = three_cycle();
        assert_eq!(
            forest_weight(&c, &SpanningForest::empty(3)).unwrap(),
            0.into()
        );
        // 0->1, 1->2, 2 root
        let f = forest(&[Some(1), Some(2), None]);
        assert_eq!(forest_weight(&c, &f).unwrap(), 3.into());
        // 2->0, 0->1, 1 root
        let f = forest(&[Some(1), None, Some(0)]);
        assert_eq!(forest_weight(&c, &f).unwrap(), 4.into());
    }

    #[test]
    fn forest_weight_rejects_missing_arc() {
        let g = WeightedDigraph::from_arcs(2, [(0, 1, 1.into())]).unwrap();
        let f = forest(&[None, Some(0)]);
        assert_eq!(
            forest_weight(&g, &f),
            Err(ForestError::MissingArc {
                origin: 1,
                terminus: 0
            })
        );
    }

    #[test]
    fn d_exchange_examples() {
        let f = forest(&[Some(1), None, None]);
        let g = forest(&[None, Some(0), Some(0)]);
        assert_eq!(d_exchange(&f, &g, &VertexSet::new()), f.to_out_function());
        assert_eq!(d_exchange(&f, &g, &VertexSet::full(3)), g.to_out_function());
        let h = d_exchange(&f, &g, &VertexSet::singleton(1));
        assert_eq!(h, OutFunction(vec![Some(1), Some(0), None]));
        assert_eq!(is_forest(&h), ForestCheck::Circuit(vec![0, 1]));
        assert!(!exchange_criterion(&f, &g, &VertexSet::singleton(1)));
        assert!(exchange_criterion(&f, &g, &VertexSet::new()));
    }

    #[test]
    fn is_forest_examples() {
        assert_eq!(
            is_forest(&OutFunction(vec![None; 5])),
            ForestCheck::Forest { tree_count: 5 }
        );
        assert_eq!(
            is_forest(&OutFunction(vec![Some(1), Some(0)])),
            ForestCheck::Circuit(vec![0, 1])
        );
        assert_eq!(
            is_forest(&OutFunction(vec![Some(2), Some(0), Some(1), None])),
            ForestCheck::Circuit(vec![0, 2, 1])
        );
        assert_eq!(
            is_forest(&OutFunction(vec![Some(0)])),
            ForestCheck::Circuit(vec![0])
        );
    }

    #[test]
    fn whole_tree_exchange_is_a_forest() {
        let f = forest(&[Some(1), None, None]);
        let g = forest(&[None, Some(0), Some(0)]);
        let tree: VertexSet = [0, 1].into_iter().collect();
        assert!(exchange_criterion(&f, &g, &tree));
        assert!(is_forest(&d_exchange(&f, &g, &tree)).is_forest());
    }

    /// A circuit alternating twice between the exchanged set and the rest:
    /// no exit point is rear in F to the exchanged vertex it came from, yet
    /// the exchange has a circuit.
    #[test]
    fn two_hop_circuit_is_detected() {
        // vertices a=0, b=1 (exchanged), x=2, y=3
        let f = forest(&[None, None, Some(0), Some(1)]);
        let g = forest(&[Some(3), Some(2), None, None]);
        let d: VertexSet = [0, 1].into_iter().collect();
        assert!(!is_forest(&d_exchange(&f, &g, &d)).is_forest());
        assert!(!exchange_criterion(&f, &g, &d));
    }

    /// The F-walk from the exit point reaches a G-rear vertex of D only after
    /// passing another vertex of D, whose G-arc leads away: no circuit.
    #[test]
    fn walk_through_other_exchanged_vertex_is_not_a_circuit() {
        // d0=0, d=1 exchanged, i=2
        let f = forest(&[Some(1), None, Some(0)]);
        let g = forest(&[None, Some(2), None]);
        let d: VertexSet = [0, 1].into_iter().collect();
        assert!(is_forest(&d_exchange(&f, &g, &d)).is_forest());
        assert!(exchange_criterion(&f, &g, &d));
    }

    #[test]
    fn rear_set_examples() {
        assert!(rear_set(&SpanningForest::empty(3), 1).is_empty());
        let chain = forest(&[Some(1), Some(2), None]);
        assert_eq!(rear_set(&chain, 2), [0, 1].into_iter().collect());
        assert_eq!(rear_set(&chain, 1), VertexSet::singleton(0));
        assert!(rear_set(&chain, 0).is_empty());
    }

    #[test]
    fn trees_of_examples() {
        let t = trees_of(&SpanningForest::empty(3));
        assert_eq!(
            t,
            (0..3)
                .map(|v| (v, VertexSet::singleton(v)))
                .collect::<Vec<_>>()
        );
        let t = trees_of(&forest(&[Some(1), None, None]));
        assert_eq!(
            t,
            vec![
                (1, [0, 1].into_iter().collect()),
                (2, VertexSet::singleton(2))
            ]
        );
        let t = trees_of(&forest(&[Some(1), Some(2), None]));
        assert_eq!(t, vec![(2, VertexSet::full(3))]);
    }

    #[test]
    fn try_from_out_rejects_circuits_and_loops() {
        assert!(matches!(
            SpanningForest::try_from_out(vec![Some(1), Some(0)]),
            Err(ForestError::Circuit { .. })
        ));
        assert_eq!(
            SpanningForest::try_from_out(vec![Some(0)]),
            Err(ForestError::Loop { vertex: 0 })
        );
    }

    #[test]
    fn restriction_and_tree_test() {
        let f = forest(&[Some(1), None, Some(1), Some(2)]);
        let s: VertexSet = [1, 2, 3].into_iter().collect();
        assert_eq!(f.restricted_arcs(&s), vec![(2, 1), (3, 2)]);
        assert!(f.is_tree_on(&s));
        assert!(!f.is_tree_on(&[0, 3].into_iter().collect()));
        assert!(f.reaches(3, 1));
        assert!(!f.reaches(1, 3));
    }
}
