//! Per-level structural claims about extreme forests and their algebras,
//! checked against complete enumerations.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::error::HierarchyError;
use crate::forest::SpanningForest;
use crate::graph::WeightedDigraph;
use crate::hierarchy::{attraction_domain_of, build_hierarchy, HierarchyChain};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Claim {
    /// Atoms of level `k` refine those of level `k - 1`.
    Nesting,
    /// On an equality level the algebra equals the next one, and forests of
    /// levels `k - 1` and `k + 1` restricted to an atom are restrictions of
    /// level-`k` forests.
    PlateauCollapse,
    /// A strict level has exactly `k` marked atoms.
    MarkedAtomCount,
    /// Every extreme forest restricted to every atom is a tree.
    AtomsSpanTrees,
    /// Level `k - 1` forests restricted to atoms of level `k` are trees.
    LowerLevelAtomsSpanTrees,
    /// On unmarked atoms, every restriction of a level `k - 1` forest is a
    /// restriction of a level `k` forest.
    UnmarkedRestrictionsInherited,
    /// On unmarked atoms, levels `k - 1` and `k` have the same restrictions.
    /// Not guaranteed: level `k` can hold extra orientations of an atom's
    /// tree that no level `k - 1` forest uses.
    UnmarkedRestrictionsAgree,
    /// Marked vertices attainable from one another are mutually attainable
    /// and share an atom.
    MarkedAttainability,
    /// Each marked vertex's attraction domain is the vertex set of its tree
    /// in some extreme forest; mutually attainable vertices share domains.
    AttractionDomainsRealized,
    /// For every forest and atom there is an extreme forest with the same
    /// arcs out of the atom and none entering it.
    AtomsIsolable,
    /// Each marked atom is the vertex set of a tree of some extreme forest,
    /// and no extreme forest has an arc leaving it.
    MarkedAtomsClosed,
}

impl Claim {
    pub const ALL: [Claim; 11] = [
        Claim::Nesting,
        Claim::PlateauCollapse,
        Claim::MarkedAtomCount,
        Claim::AtomsSpanTrees,
        Claim::LowerLevelAtomsSpanTrees,
        Claim::UnmarkedRestrictionsInherited,
        Claim::UnmarkedRestrictionsAgree,
        Claim::MarkedAttainability,
        Claim::AttractionDomainsRealized,
        Claim::AtomsIsolable,
        Claim::MarkedAtomsClosed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Claim::Nesting => "nesting",
            Claim::PlateauCollapse => "plateau-collapse",
            Claim::MarkedAtomCount => "marked-atom-count",
            Claim::AtomsSpanTrees => "atoms-span-trees",
            Claim::LowerLevelAtomsSpanTrees => "lower-level-atoms-span-trees",
            Claim::UnmarkedRestrictionsInherited => "unmarked-restrictions-inherited",
            Claim::UnmarkedRestrictionsAgree => "unmarked-restrictions-agree",
            Claim::MarkedAttainability => "marked-attainability",
            Claim::AttractionDomainsRealized => "attraction-domains-realized",
            Claim::AtomsIsolable => "atoms-isolable",
            Claim::MarkedAtomsClosed => "marked-atoms-closed",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Claim {
    /// Whether the claim holds on every graph; a failure of a guaranteed
    /// claim means a bug.
    pub fn is_guaranteed(self) -> bool {
        self != Claim::UnmarkedRestrictionsAgree
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail(String),
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremCheck {
    pub claim: Claim,
    pub status: CheckStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub k: usize,
    pub strict: bool,
    pub checks: Vec<TheoremCheck>,
}

impl TheoremReport {
    pub fn all_pass(&self) -> bool {
        self.failures().next().is_none()
    }

    /// Whether every guaranteed claim passes.
    pub fn guaranteed_pass(&self) -> bool {
        self.failures().all(|c| !c.claim.is_guaranteed())
    }

    pub fn failures(&self) -> impl Iterator<Item = &TheoremCheck> {
        self.checks
            .iter()
            .filter(|c| matches!(c.status, CheckStatus::Fail(_)))
    }

    pub fn status(&self, claim: Claim) -> &CheckStatus {
        &self
            .checks
            .iter()
            .find(|c| c.claim == claim)
            .expect("every claim is reported")
            .status
    }
}

/// Builds the hierarchy and checks level `k`.
pub fn verify_level_theorems(
    g: &WeightedDigraph,
    k: usize,
    cap: usize,
) -> Result<TheoremReport, HierarchyError> {
    build_hierarchy(g, cap)?.verify_level(k)
}

type Restrictions = BTreeSet<Vec<(usize, usize)>>;

fn restrictions(forests: &[SpanningForest], atom: &VertexSet) -> Restrictions {
    forests.iter().map(|f| f.restricted_arcs(atom)).collect()
}

fn verdict(failure: Option<String>) -> CheckStatus {
    failure.map_or(CheckStatus::Pass, CheckStatus::Fail)
}

pub(crate) fn verify_chain_level(
    chain: &HierarchyChain,
    k: usize,
) -> Result<TheoremReport, HierarchyError> {
    let n = chain.vertex_count();
    let profile = &chain.profile;
    let level = chain.complete_level(k)?;
    let forests = &chain.complete_extremes(k)?.forests;
    let strict = profile.is_strict(k);
    let lower_finite = k > 1 && profile.is_finite(k - 1);
    let lower = if lower_finite {
        Some((
            chain.complete_level(k - 1)?,
            &chain.complete_extremes(k - 1)?.forests,
        ))
    } else {
        None
    };
    let mut checks = Vec::new();
    let mut push = |claim, status| checks.push(TheoremCheck { claim, status });

    push(
        Claim::Nesting,
        match lower {
            Some((lower_level, _)) => verdict(
                (!level.refines(lower_level))
                    .then(|| format!("an atom of level {k} straddles atoms of level {}", k - 1)),
            ),
            None => CheckStatus::NotApplicable,
        },
    );

    if profile.is_equality(k) {
        let upper_level = chain.complete_level(k + 1)?;
        let upper = &chain.complete_extremes(k + 1)?.forests;
        let (_, lower_forests) = lower.expect("equality levels have a finite lower neighbour");
        let mut failure = None;
        if level.atoms != upper_level.atoms {
            failure = Some(format!("algebras of levels {k} and {} differ", k + 1));
        }
        for atom in &level.atoms {
            if failure.is_some() {
                break;
            }
            let here = restrictions(forests, atom);
            if !restrictions(lower_forests, atom).is_subset(&here) {
                failure = Some(format!(
                    "restriction of level {} to {atom:?} not found at level {k}",
                    k - 1
                ));
            } else if !restrictions(upper, atom).is_subset(&here) {
                failure = Some(format!(
                    "restriction of level {} to {atom:?} not found at level {k}",
                    k + 1
                ));
            }
        }
        push(Claim::PlateauCollapse, verdict(failure));
    } else {
        push(Claim::PlateauCollapse, CheckStatus::NotApplicable);
    }

    if !strict {
        for claim in &Claim::ALL[2..] {
            push(*claim, CheckStatus::NotApplicable);
        }
        return Ok(TheoremReport { k, strict, checks });
    }

    push(
        Claim::MarkedAtomCount,
        verdict((level.marked.len() != k).then(|| format!("{} marked atoms", level.marked.len()))),
    );

    let not_tree = |fs: &[SpanningForest]| {
        fs.iter().find_map(|f| {
            level
                .atoms
                .iter()
                .find(|atom| !f.is_tree_on(atom))
                .map(|atom| format!("{f:?} is not a tree on {atom:?}"))
        })
    };
    push(Claim::AtomsSpanTrees, verdict(not_tree(forests)));

    match lower {
        Some((_, lower_forests)) => {
            push(
                Claim::LowerLevelAtomsSpanTrees,
                verdict(not_tree(lower_forests)),
            );
            let unmarked: Vec<(Restrictions, Restrictions, &VertexSet)> = level
                .atoms
                .iter()
                .enumerate()
                .filter(|(idx, _)| !level.is_marked(*idx))
                .map(|(_, atom)| {
                    (
                        restrictions(lower_forests, atom),
                        restrictions(forests, atom),
                        atom,
                    )
                })
                .collect();
            let failure =
                unmarked
                    .iter()
                    .find(|(lo, hi, _)| !lo.is_subset(hi))
                    .map(|(_, _, atom)| {
                        format!("a level {} restriction to {atom:?} is missing", k - 1)
                    });
            push(Claim::UnmarkedRestrictionsInherited, verdict(failure));
            let failure = unmarked
                .iter()
                .find(|(lo, hi, _)| lo != hi)
                .map(|(_, _, atom)| format!("restrictions to {atom:?} differ"));
            push(Claim::UnmarkedRestrictionsAgree, verdict(failure));
        }
        None => {
            push(Claim::LowerLevelAtomsSpanTrees, CheckStatus::NotApplicable);
            push(
                Claim::UnmarkedRestrictionsInherited,
                CheckStatus::NotApplicable,
            );
            push(Claim::UnmarkedRestrictionsAgree, CheckStatus::NotApplicable);
        }
    }

    // reach[j][i]: some extreme forest has a j·i-walk
    let mut reach = vec![vec![false; n]; n];
    for f in forests.iter() {
        for (j, row) in reach.iter_mut().enumerate() {
            let mut v = j;
            row[v] = true;
            while let Some(next) = f.out(v) {
                v = next;
                row[v] = true;
            }
        }
    }
    let marked: Vec<usize> = level.marked_vertices.iter().collect();

    let mut failure = None;
    'pairs: for &i in &marked {
        for &j in &marked {
            if reach[j][i] && (!reach[i][j] || level.atom_of(i) != level.atom_of(j)) {
                failure = Some(format!("marked vertices {i} and {j}"));
                break 'pairs;
            }
        }
    }
    push(Claim::MarkedAttainability, verdict(failure));

    let domains: Vec<VertexSet> = marked
        .iter()
        .map(|&i| attraction_domain_of(forests, n, i))
        .collect();
    let mut failure = marked.iter().zip(&domains).find_map(|(&i, domain)| {
        (!forests
            .iter()
            .any(|f| f.is_root(i) && &f.tree_containing(i) == domain))
        .then(|| format!("domain {domain:?} of {i} is not a tree"))
    });
    if failure.is_none() {
        'domains: for (a, &i) in marked.iter().enumerate() {
            for (b, &j) in marked.iter().enumerate() {
                if reach[i][j] && reach[j][i] && domains[a] != domains[b] {
                    failure = Some(format!("domains of {i} and {j} differ"));
                    break 'domains;
                }
            }
        }
    }
    push(Claim::AttractionDomainsRealized, verdict(failure));

    let mut failure = None;
    for atom in &level.atoms {
        let isolated: HashSet<Vec<Option<usize>>> = forests
            .iter()
            .filter(|g| {
                (0..n).all(|u| atom.contains(u) || g.out(u).is_none_or(|t| !atom.contains(t)))
            })
            .map(|g| atom.iter().map(|v| g.out(v)).collect())
            .collect();
        if let Some(f) = forests
            .iter()
            .find(|f| !isolated.contains(&atom.iter().map(|v| f.out(v)).collect::<Vec<_>>()))
        {
            failure = Some(format!("{f:?} on {atom:?}"));
            break;
        }
    }
    push(Claim::AtomsIsolable, verdict(failure));

    let failure = level.marked.iter().find_map(|&idx| {
        let atom = &level.atoms[idx];
        let is_tree = forests.iter().any(|f| {
            atom.iter()
                .any(|r| f.is_root(r) && &f.tree_containing(r) == atom)
        });
        if !is_tree {
            return Some(format!("{atom:?} is no tree's vertex set"));
        }
        forests
            .iter()
            .find(|f| {
                atom.iter()
                    .any(|v| f.out(v).is_some_and(|t| !atom.contains(t)))
            })
            .map(|f| format!("{f:?} leaves {atom:?}"))
    });
    push(Claim::MarkedAtomsClosed, verdict(failure));

    Ok(TheoremReport { k, strict, checks })
}
