mod common;

use std::collections::BTreeMap;

use common::{arb_digraph, arb_graph};
use kforest::condensation::{
    condense_directed_with, condensed_profile, detect_potentiality, same_condensation,
    verify_condensation_consistency, verify_undirected_consistency, Potential,
};
use kforest::search::phi_profile;
use kforest::{CondenseError, Rational, WeightedDigraph};
use proptest::prelude::*;

fn arb_potential(max_n: usize) -> impl Strategy<Value = WeightedDigraph> {
    (1usize..=max_n).prop_flat_map(|n| {
        (
            proptest::collection::vec((-4i64..10, 1i64..4), n),
            proptest::collection::vec(proptest::option::weighted(0.6, (-4i64..10, 1i64..4)), n * n),
        )
            .prop_map(move |(q, p)| {
                let q = q.into_iter().map(|(a, b)| Rational::new(a, b)).collect();
                let p: BTreeMap<(usize, usize), Rational> = p
                    .into_iter()
                    .enumerate()
                    .filter_map(|(idx, w)| {
                        let (i, j) = (idx / n, idx % n);
                        w.filter(|_| i < j)
                            .map(|(a, b)| ((i, j), Rational::new(a, b)))
                    })
                    .collect();
                Potential { q, p }.to_digraph()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn potential_hosts_agree_at_every_depth(g in arb_potential(6)) {
        prop_assert!(detect_potentiality(&g).is_ok());
        for k in 1..=g.vertex_count() {
            match verify_condensation_consistency(&g, k, 100_000) {
                Ok(report) => {
                    prop_assert!(report.potential);
                    prop_assert!(report.checks.iter().all(|c| c.required && c.holds()), "k={k}: {report:?}");
                }
                Err(CondenseError::LevelNotCondensable { .. }) => {}
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
    }

    #[test]
    fn undirected_hosts_agree_at_every_depth(p in arb_graph(7, 0.6)) {
        for k in 1..=p.vertex_count() {
            match verify_undirected_consistency(&p, k) {
                Ok(report) => prop_assert!(report.checks.iter().all(|c| c.holds()), "k={k}: {report:?}"),
                Err(CondenseError::LevelNotCondensable { .. }) => {}
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
    }

    #[test]
    fn plateau_levels_share_one_condensation(g in arb_digraph(6, 0.6)) {
        let profile = phi_profile(&g);
        for k in 1..=g.vertex_count() {
            let Some(top) = profile.condensation_level(k) else { continue };
            let (Ok(here), Ok(there)) = (
                condense_directed_with(&g, &profile, k, 100_000),
                condense_directed_with(&g, &profile, top, 100_000),
            ) else {
                continue;
            };
            prop_assert_eq!(here.level, top);
            prop_assert!(same_condensation(&here, &there));
            prop_assert_eq!(here.marked_count, top);
        }
    }

    #[test]
    fn condensed_profiles_are_convex(g in arb_digraph(6, 0.6)) {
        let profile = phi_profile(&g);
        for k in 1..=g.vertex_count() {
            if let Ok(c) = condense_directed_with(&g, &profile, k, 100_000) {
                let phi = condensed_profile(&c);
                for n in 2..phi.len() {
                    if let (Some(a), Some(b)) =
                        (phi[n - 2].checked_sub(&phi[n - 1]), phi[n - 1].checked_sub(&phi[n]))
                    {
                        prop_assert!(a >= b);
                    }
                }
            }
        }
    }
}
