//! φ of a condensation against φ of its host.

use crate::condensation::{
    condense_directed_with, condense_undirected, detect_potentiality, host_vs_condensed,
    CondensedGraph,
};
use crate::error::CondenseError;
use crate::graph::{WeightedDigraph, WeightedGraph};
use crate::search::{kruskal_phi, phi_profile, PhiProfile};
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyCheck {
    pub n: usize,
    pub host: Weight,
    pub condensed: Weight,
    /// Whether equality is guaranteed for this `n`; other rows are reported
    /// for information only.
    pub required: bool,
}

impl ConsistencyCheck {
    pub fn holds(&self) -> bool {
        self.host == self.condensed
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub k: usize,
    /// Level whose condensation was checked.
    pub level: usize,
    pub directed: bool,
    /// Directed hosts only: whether the weights are potential.
    pub potential: bool,
    /// One row per `n` in `1..=level`.
    pub checks: Vec<ConsistencyCheck>,
}

impl ConsistencyReport {
    pub fn all_pass(&self) -> bool {
        self.failures().next().is_none()
    }

    /// Required rows where the two values differ.
    pub fn failures(&self) -> impl Iterator<Item = &ConsistencyCheck> {
        self.checks.iter().filter(|c| c.required && !c.holds())
    }
}

/// Compares φ^k_n with φ_n for every `n` up to the condensed level. Equality
/// is required from the bottom of the plateau under that level (at least
/// `level - 1`) up to `level`, and at every `n` when the weights are
/// potential.
pub fn verify_condensation_consistency(
    g: &WeightedDigraph,
    k: usize,
    cap: usize,
) -> Result<ConsistencyReport, CondenseError> {
    let profile = phi_profile(g);
    let c = condense_directed_with(g, &profile, k, cap)?;
    let potential = detect_potentiality(g).is_ok();
    let lowest = if potential {
        1
    } else {
        profile.plateau_bottom(c.level).min(c.level - 1).max(1)
    };
    Ok(report(&profile, &c, potential, lowest))
}

/// Undirected counterpart: equality is required for every `n` up to the
/// condensed level.
pub fn verify_undirected_consistency(
    p: &WeightedGraph,
    k: usize,
) -> Result<ConsistencyReport, CondenseError> {
    let c = condense_undirected(p, k)?;
    Ok(report(&kruskal_phi(p), &c, false, 1))
}

fn report(
    host: &PhiProfile,
    c: &CondensedGraph,
    potential: bool,
    lowest: usize,
) -> ConsistencyReport {
    let checks = host_vs_condensed(host, c)
        .into_iter()
        .enumerate()
        .map(|(idx, (host, condensed))| ConsistencyCheck {
            n: idx + 1,
            host,
            condensed,
            required: idx + 1 >= lowest,
        })
        .collect();
    ConsistencyReport {
        k: c.k,
        level: c.level,
        directed: c.directed,
        potential,
        checks,
    }
}
