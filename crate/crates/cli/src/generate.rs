//! Seeded random graphs for test harnesses.

use kforest::condensation::Potential;
use kforest::{Rational, WeightedDigraph, WeightedGraph};
use rand::Rng;

/// Numerator in `-4..=9`, denominator in `1..=4`.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-4..=9), rng.gen_range(1..=4))
}

/// Each ordered pair is an arc with probability `density`.
pub fn random_digraph<R: Rng>(rng: &mut R, n: usize, density: f64) -> WeightedDigraph {
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(density) {
                arcs.push((i, j, random_rational(rng)));
            }
        }
    }
    WeightedDigraph::from_arcs(n, arcs).expect("n is positive")
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, density: f64) -> WeightedGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                edges.push((i, j, random_rational(rng)));
            }
        }
    }
    WeightedGraph::from_edges(n, edges).expect("n is positive")
}

/// Weights `v_ij = p_ij − q_i` from a random symmetric `p` on random pairs.
pub fn random_potential<R: Rng>(rng: &mut R, n: usize, density: f64) -> Potential {
    let q = (0..n).map(|_| random_rational(rng)).collect();
    let mut p = std::collections::BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                p.insert((i, j), random_rational(rng));
            }
        }
    }
    Potential { q, p }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn same_seed_same_graph() {
        let a = random_digraph(&mut ChaCha8Rng::seed_from_u64(7), 6, 0.5);
        let b = random_digraph(&mut ChaCha8Rng::seed_from_u64(7), 6, 0.5);
        assert_eq!(a, b);
    }

    #[test]
    fn potential_weights_are_detected() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let g = random_potential(&mut rng, 5, 0.6).to_digraph();
            assert!(kforest::condensation::detect_potentiality(&g).is_ok());
        }
    }
}
