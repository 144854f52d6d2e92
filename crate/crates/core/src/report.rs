//! Labeled, serializable reports and their text, JSON and DOT renderings.
//!
//! Every report is built from a [`GraphDocument`] so that vertices carry the
//! document's labels. Rendering is deterministic: maps are ordered and no
//! floating point is involved.

use std::fmt::Write as _;

use serde::Serialize;

use crate::condensation::{
    condense_directed, condense_undirected, detect_potentiality, verify_condensation_consistency,
    verify_undirected_consistency, CondensedGraph, ConsistencyReport, PotentialError,
};
use crate::document::GraphDocument;
use crate::error::{CondenseError, HierarchyError, SearchError};
use crate::forest::SpanningForest;
use crate::hierarchy::{
    attraction_domain_of, build_hierarchy, undirected_algebras, AlgebraLevel, CheckStatus,
    HierarchyChain,
};
use crate::search::{kruskal_phi, oracle_enumerate, phi_profile, PhiProfile};
use crate::vertex_set::VertexSet;
use crate::weight::{Rational, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

/// φ profile of a directed document, or the Kruskal profile of an
/// undirected one.
pub fn profile_of(doc: &GraphDocument) -> PhiProfile {
    match doc.graph() {
        Some(p) => kruskal_phi(&p),
        None => phi_profile(&doc.digraph()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LevelKind {
    Strict,
    Equality,
    Infinite,
}

impl LevelKind {
    fn of(profile: &PhiProfile, k: usize) -> Self {
        if !profile.is_finite(k) {
            LevelKind::Infinite
        } else if profile.is_strict(k) {
            LevelKind::Strict
        } else {
            LevelKind::Equality
        }
    }

    fn name(self) -> &'static str {
        match self {
            LevelKind::Strict => "strict",
            LevelKind::Equality => "equality",
            LevelKind::Infinite => "infinite",
        }
    }
}

fn set_label(labels: &[String], set: &VertexSet) -> String {
    let members: Vec<&str> = set.iter().map(|v| labels[v].as_str()).collect();
    format!("{{{}}}", members.join(","))
}

fn members(labels: &[String], set: &VertexSet) -> Vec<String> {
    set.iter().map(|v| labels[v].clone()).collect()
}

fn forest_arcs(labels: &[String], f: &SpanningForest) -> Vec<[String; 2]> {
    f.arcs()
        .map(|(i, j)| [labels[i].clone(), labels[j].clone()])
        .collect()
}

fn arc_list(arcs: &[[String; 2]], directed: bool) -> String {
    if arcs.is_empty() {
        return "-".into();
    }
    let sep = if directed { "->" } else { "--" };
    arcs.iter()
        .map(|[a, b]| format!("{a}{sep}{b}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Left-aligned columns separated by two spaces.
fn table(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..columns)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            line.extend(std::iter::repeat_n(' ', widths[c] - cell.chars().count()));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", dot_escape(s))
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiRow {
    pub k: usize,
    pub phi: Weight,
    /// φ_{k-1} − φ_k; absent for `k = 1` and infinite levels.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<Weight>,
    pub kind: LevelKind,
    pub representative: Option<Vec<[String; 2]>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiReport {
    pub directed: bool,
    pub vertices: Vec<String>,
    pub levels: Vec<PhiRow>,
    pub strict_levels: Vec<usize>,
    pub distinct_condensation_count: usize,
    pub convex: bool,
    #[serde(skip)]
    arcs: Vec<(usize, usize, Rational)>,
}

pub fn phi_report(doc: &GraphDocument) -> PhiReport {
    let profile = profile_of(doc);
    let labels = &doc.labels;
    let levels = (1..=doc.vertex_count())
        .map(|k| PhiRow {
            k,
            phi: profile.phi(k).clone(),
            delta: profile.delta(k),
            kind: LevelKind::of(&profile, k),
            representative: profile.representative(k).map(|f| forest_arcs(labels, f)),
        })
        .collect();
    PhiReport {
        directed: doc.directed,
        vertices: labels.clone(),
        levels,
        strict_levels: profile.strict_levels.iter().copied().collect(),
        distinct_condensation_count: profile.distinct_condensation_count(),
        convex: profile.is_convex(),
        arcs: doc
            .arcs
            .iter()
            .map(|a| (a.from, a.to, a.weight.clone()))
            .collect(),
    }
}

impl PhiReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Text => self.text(),
            Format::Dot => self.dot(),
        }
    }

    pub fn text(&self) -> String {
        let mut rows = vec![["k", "phi", "delta", "kind", "representative"]
            .map(String::from)
            .to_vec()];
        for row in &self.levels {
            rows.push(vec![
                row.k.to_string(),
                row.phi.to_string(),
                row.delta.as_ref().map_or("-".into(), Weight::to_string),
                row.kind.name().into(),
                row.representative
                    .as_ref()
                    .map_or("-".into(), |arcs| arc_list(arcs, self.directed)),
            ]);
        }
        let mut out = table(&rows);
        let _ = writeln!(
            out,
            "distinct condensations: {}",
            self.distinct_condensation_count
        );
        out
    }

    /// The graph with the arcs of the lowest finite level's representative
    /// drawn bold.
    pub fn dot(&self) -> String {
        let bold: Vec<(String, String)> = self
            .levels
            .iter()
            .find_map(|row| row.representative.clone())
            .unwrap_or_default()
            .into_iter()
            .map(|[a, b]| (a, b))
            .collect();
        let (kind, edge) = if self.directed {
            ("digraph", "->")
        } else {
            ("graph", "--")
        };
        let mut out = format!("{kind} phi {{\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  {};", dot_id(v));
        }
        for (i, j, w) in &self.arcs {
            let (a, b) = (&self.vertices[*i], &self.vertices[*j]);
            let on = bold
                .iter()
                .any(|(x, y)| (x == a && y == b) || (!self.directed && x == b && y == a));
            let style = if on { ", style=bold" } else { "" };
            let _ = writeln!(
                out,
                "  {} {edge} {} [label={}{style}];",
                dot_id(a),
                dot_id(b),
                dot_id(&w.to_string())
            );
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AtomRow {
    pub members: Vec<String>,
    pub marked: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DomainRow {
    pub vertex: String,
    pub domain: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HierarchyLevel {
    pub k: usize,
    pub phi: Weight,
    pub kind: LevelKind,
    /// Strict level whose atoms this level shares.
    pub condensation_level: Option<usize>,
    pub complete: bool,
    /// Directed documents only.
    pub extreme_forests: Option<usize>,
    pub atoms: Vec<AtomRow>,
    pub marked_vertices: Vec<String>,
    pub attraction_domains: Vec<DomainRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremRow {
    pub k: usize,
    pub claim: &'static str,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub guaranteed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HierarchyReport {
    pub directed: bool,
    pub vertices: Vec<String>,
    pub levels: Vec<HierarchyLevel>,
    pub distinct_condensation_count: usize,
    pub warnings: Vec<String>,
    /// Present when verification was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorems: Option<Vec<TheoremRow>>,
    /// Levels that could not be verified because an enumeration was capped.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub unverified_levels: Vec<usize>,
}

impl HierarchyReport {
    /// Failed checks of guaranteed claims.
    pub fn failures(&self) -> usize {
        self.theorems
            .iter()
            .flatten()
            .filter(|t| t.guaranteed && t.status == "fail")
            .count()
    }
}

fn theorem_rows(
    chain: &HierarchyChain,
    rows: &mut Vec<TheoremRow>,
    unverified: &mut Vec<usize>,
    warnings: &mut Vec<String>,
) {
    for k in 1..=chain.vertex_count() {
        if !chain.profile.is_finite(k) {
            continue;
        }
        match chain.verify_level(k) {
            Ok(report) => rows.extend(report.checks.into_iter().map(|c| {
                let (status, detail) = match c.status {
                    CheckStatus::Pass => ("pass", None),
                    CheckStatus::Fail(d) => ("fail", Some(d)),
                    CheckStatus::NotApplicable => ("n/a", None),
                };
                TheoremRow {
                    k,
                    claim: c.claim.name(),
                    status,
                    detail,
                    guaranteed: c.claim.is_guaranteed(),
                }
            })),
            Err(e) => {
                unverified.push(k);
                warnings.push(format!("level {k} not verified: {e}"));
            }
        }
    }
}

fn level_rows(
    doc: &GraphDocument,
    profile: &PhiProfile,
    level: Option<&AlgebraLevel>,
    k: usize,
    extremes: Option<(&[SpanningForest], usize)>,
) -> HierarchyLevel {
    let labels = &doc.labels;
    let kind = LevelKind::of(profile, k);
    let (atoms, marked_vertices, complete) = match level {
        Some(level) => (
            level
                .atoms
                .iter()
                .enumerate()
                .map(|(idx, a)| AtomRow {
                    members: members(labels, a),
                    marked: level.is_marked(idx),
                })
                .collect(),
            members(labels, &level.marked_vertices),
            level.complete,
        ),
        None => (Vec::new(), Vec::new(), true),
    };
    let attraction_domains = match (level, extremes) {
        (Some(level), Some((forests, _))) if level.complete && kind == LevelKind::Strict => level
            .marked_vertices
            .iter()
            .map(|i| DomainRow {
                vertex: labels[i].clone(),
                domain: members(
                    labels,
                    &attraction_domain_of(forests, doc.vertex_count(), i),
                ),
            })
            .collect(),
        _ => Vec::new(),
    };
    HierarchyLevel {
        k,
        phi: profile.phi(k).clone(),
        kind,
        condensation_level: profile.condensation_level(k),
        complete,
        extreme_forests: extremes.map(|(_, count)| count),
        atoms,
        marked_vertices,
        attraction_domains,
    }
}

/// Per-level atoms, marks and attraction domains. With `verify`, every
/// finite level is checked against the hierarchy claims; undirected
/// documents are verified through their symmetric digraph.
pub fn hierarchy_report(
    doc: &GraphDocument,
    cap: usize,
    verify: bool,
) -> Result<HierarchyReport, HierarchyError> {
    let n = doc.vertex_count();
    let mut warnings = Vec::new();
    let mut theorems = Vec::new();
    let mut unverified = Vec::new();
    let (levels, distinct) = match doc.graph() {
        Some(p) => {
            let profile = kruskal_phi(&p);
            let algebras = undirected_algebras(&p, &profile);
            let levels = (1..=n)
                .map(|k| level_rows(doc, &profile, algebras[k - 1].as_ref(), k, None))
                .collect();
            if verify {
                let chain = build_hierarchy(&doc.digraph(), cap)?;
                theorem_rows(&chain, &mut theorems, &mut unverified, &mut warnings);
            }
            (levels, profile.distinct_condensation_count())
        }
        None => {
            let chain = build_hierarchy(&doc.digraph(), cap)?;
            let levels = (1..=n)
                .map(|k| {
                    let extremes = chain.extremes[k - 1]
                        .as_ref()
                        .map(|s| (s.forests.as_slice(), s.forests.len()));
                    level_rows(doc, &chain.profile, chain.level(k), k, extremes)
                })
                .collect();
            if verify {
                theorem_rows(&chain, &mut theorems, &mut unverified, &mut warnings);
            }
            (levels, chain.distinct_condensation_count)
        }
    };
    let levels: Vec<HierarchyLevel> = levels;
    let mut capped: Vec<String> = levels
        .iter()
        .filter(|l| !l.complete)
        .map(|l| format!("level {} enumeration stopped at {cap} extreme forests; its atoms may be too coarse", l.k))
        .collect();
    capped.append(&mut warnings);
    Ok(HierarchyReport {
        directed: doc.directed,
        vertices: doc.labels.clone(),
        levels,
        distinct_condensation_count: distinct,
        warnings: capped,
        theorems: verify.then_some(theorems),
        unverified_levels: unverified,
    })
}

impl HierarchyReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Text => self.text(),
            Format::Dot => self.dot(),
        }
    }

    fn atoms_text(atoms: &[AtomRow]) -> String {
        atoms
            .iter()
            .map(|a| {
                format!(
                    "{{{}}}{}",
                    a.members.join(","),
                    if a.marked { "*" } else { "" }
                )
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for level in &self.levels {
            let _ = write!(
                out,
                "level {}  phi {}  {}",
                level.k,
                level.phi,
                level.kind.name()
            );
            if level.kind == LevelKind::Equality {
                if let Some(top) = level.condensation_level {
                    let _ = write!(out, " (atoms of level {top})");
                }
            }
            if let Some(count) = level.extreme_forests {
                let _ = write!(
                    out,
                    "  extreme forests {count}{}",
                    if level.complete { "" } else { "+" }
                );
            }
            out.push('\n');
            if level.kind == LevelKind::Infinite {
                continue;
            }
            let _ = writeln!(out, "  atoms: {}", Self::atoms_text(&level.atoms));
            let _ = writeln!(out, "  marked: {}", level.marked_vertices.join(" "));
            for d in &level.attraction_domains {
                let _ = writeln!(out, "  domain of {}: {{{}}}", d.vertex, d.domain.join(","));
            }
        }
        let chain: Vec<String> = self
            .levels
            .iter()
            .filter(|l| l.kind != LevelKind::Infinite)
            .map(|l| Self::atoms_text(&l.atoms))
            .collect();
        let _ = writeln!(out, "nesting: {}", chain.join(" > "));
        let _ = writeln!(
            out,
            "distinct condensations: {}",
            self.distinct_condensation_count
        );
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        if let Some(theorems) = &self.theorems {
            for t in theorems {
                let mut line = format!("level {} {} {}", t.k, t.claim, t.status);
                if t.status == "fail" && !t.guaranteed {
                    line.push_str(" (not guaranteed)");
                }
                if let Some(d) = &t.detail {
                    let _ = write!(line, ": {d}");
                }
                let _ = writeln!(out, "{line}");
            }
        }
        out
    }

    /// Refinement tree of the atoms: one node per atom and level, an edge
    /// from each atom to the atoms of the next level inside it. Marked atoms
    /// are boxes.
    pub fn dot(&self) -> String {
        let mut out = String::from("digraph hierarchy {\n  rankdir=TB;\n");
        let finite: Vec<&HierarchyLevel> = self
            .levels
            .iter()
            .filter(|l| l.kind != LevelKind::Infinite)
            .collect();
        let id = |k: usize, idx: usize| format!("L{k}_{idx}");
        for level in &finite {
            let _ = write!(out, "  {{ rank=same;");
            for (idx, atom) in level.atoms.iter().enumerate() {
                let shape = if atom.marked { "box" } else { "ellipse" };
                let _ = write!(
                    out,
                    " {} [label={}, shape={shape}];",
                    id(level.k, idx),
                    dot_id(&format!("{}: {{{}}}", level.k, atom.members.join(",")))
                );
            }
            out.push_str(" }\n");
        }
        for pair in finite.windows(2) {
            let (coarse, fine) = (pair[0], pair[1]);
            for (ci, c) in coarse.atoms.iter().enumerate() {
                for (fi, f) in fine.atoms.iter().enumerate() {
                    if f.members.iter().all(|m| c.members.contains(m)) {
                        let _ = writeln!(out, "  {} -> {};", id(coarse.k, ci), id(fine.k, fi));
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CondensedArc {
    pub from: String,
    pub to: String,
    pub weight: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct CondensedAtom {
    pub label: String,
    pub members: Vec<String>,
    pub marked: bool,
    /// `null` when the atom has no spanning tree.
    pub set_weight: Option<Rational>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessRow {
    pub from: String,
    pub to: String,
    pub origin: String,
    pub terminus: String,
    pub tree: Vec<[String; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyRow {
    pub n: usize,
    pub host: Weight,
    pub condensed: Weight,
    pub required: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyRows {
    /// Directed hosts only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub potential: Option<bool>,
    pub pass: bool,
    pub checks: Vec<ConsistencyRow>,
}

/// A condensation as a graph document (`directed`, `vertices`, `arcs`) with
/// the atom data and consistency checks alongside.
#[derive(Clone, Debug, Serialize)]
pub struct CondenseReport {
    pub directed: bool,
    pub vertices: Vec<String>,
    pub arcs: Vec<CondensedArc>,
    pub k: usize,
    pub level: usize,
    pub atoms: Vec<CondensedAtom>,
    pub witnesses: Vec<WitnessRow>,
    pub consistency: ConsistencyRows,
}

fn consistency_rows(r: &ConsistencyReport) -> ConsistencyRows {
    ConsistencyRows {
        potential: r.directed.then_some(r.potential),
        pass: r.all_pass(),
        checks: r
            .checks
            .iter()
            .map(|c| ConsistencyRow {
                n: c.n,
                host: c.host.clone(),
                condensed: c.condensed.clone(),
                required: c.required,
                holds: c.holds(),
            })
            .collect(),
    }
}

/// Atom labels `{a,b}`, made unique by a `#index` suffix if labels collide.
fn atom_labels(labels: &[String], c: &CondensedGraph) -> Vec<String> {
    let mut out: Vec<String> = c.atoms.iter().map(|a| set_label(labels, a)).collect();
    for idx in 0..out.len() {
        if out[..idx].contains(&out[idx]) || out[idx + 1..].contains(&out[idx]) {
            out[idx] = format!("{}#{idx}", out[idx]);
        }
    }
    out
}

pub fn condense_report(
    doc: &GraphDocument,
    k: usize,
    cap: usize,
) -> Result<CondenseReport, CondenseError> {
    let labels = &doc.labels;
    let (c, consistency) = match doc.graph() {
        Some(p) => (
            condense_undirected(&p, k)?,
            verify_undirected_consistency(&p, k)?,
        ),
        None => {
            let g = doc.digraph();
            (
                condense_directed(&g, k, cap)?,
                verify_condensation_consistency(&g, k, cap)?,
            )
        }
    };
    let names = atom_labels(labels, &c);
    let arcs = c
        .arc_weights
        .iter()
        .map(|(&(x, y), w)| CondensedArc {
            from: names[x].clone(),
            to: names[y].clone(),
            weight: w.clone(),
        })
        .collect();
    let atoms = c
        .atoms
        .iter()
        .enumerate()
        .map(|(x, a)| CondensedAtom {
            label: names[x].clone(),
            members: members(labels, a),
            marked: c.is_marked(x),
            set_weight: c.set_weights[x].clone(),
        })
        .collect();
    let witnesses = c
        .witnesses
        .iter()
        .map(|(&(x, y), w)| WitnessRow {
            from: names[x].clone(),
            to: names[y].clone(),
            origin: labels[w.origin].clone(),
            terminus: labels[w.terminus].clone(),
            tree: w
                .tree
                .iter()
                .map(|&(i, j)| [labels[i].clone(), labels[j].clone()])
                .collect(),
        })
        .collect();
    Ok(CondenseReport {
        directed: c.directed,
        vertices: names,
        arcs,
        k: c.k,
        level: c.level,
        atoms,
        witnesses,
        consistency: consistency_rows(&consistency),
    })
}

impl CondenseReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Text => self.text(),
            Format::Dot => self.dot(),
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!("condensation of level {}", self.k);
        if self.level != self.k {
            let _ = write!(out, " (built at level {})", self.level);
        }
        out.push('\n');
        let mut rows = vec![["vertex", "atom", "marked", "set weight"]
            .map(String::from)
            .to_vec()];
        for (idx, a) in self.atoms.iter().enumerate() {
            rows.push(vec![
                idx.to_string(),
                a.label.clone(),
                if a.marked { "yes" } else { "no" }.into(),
                a.set_weight
                    .as_ref()
                    .map_or("none".into(), Rational::to_string),
            ]);
        }
        out.push_str(&table(&rows));
        let sep = if self.directed { "->" } else { "--" };
        let mut rows = vec![["arc", "weight", "via"].map(String::from).to_vec()];
        for (a, w) in self.arcs.iter().zip(&self.witnesses) {
            rows.push(vec![
                format!("{}{sep}{}", a.from, a.to),
                a.weight.to_string(),
                format!("{}{sep}{}", w.origin, w.terminus),
            ]);
        }
        out.push_str(&table(&rows));
        out.push_str("consistency:\n");
        if let Some(potential) = self.consistency.potential {
            let _ = writeln!(
                out,
                "  potential weights: {}",
                if potential { "yes" } else { "no" }
            );
        }
        let mut rows = vec![["  n", "host", "condensed", "status"]
            .map(String::from)
            .to_vec()];
        for c in &self.consistency.checks {
            let status = match (c.holds, c.required) {
                (true, _) => "equal",
                (false, true) => "FAIL",
                (false, false) => "differs (not required)",
            };
            rows.push(vec![
                format!("  {}", c.n),
                c.host.to_string(),
                c.condensed.to_string(),
                status.into(),
            ]);
        }
        out.push_str(&table(&rows));
        out
    }

    /// Set weights in node labels, arc weights on edges, marked atoms as
    /// boxes.
    pub fn dot(&self) -> String {
        let (kind, edge) = if self.directed {
            ("digraph", "->")
        } else {
            ("graph", "--")
        };
        let mut out = format!("{kind} condensation {{\n");
        for a in &self.atoms {
            let w = a
                .set_weight
                .as_ref()
                .map_or("none".into(), Rational::to_string);
            let shape = if a.marked { "box" } else { "ellipse" };
            let _ = writeln!(
                out,
                "  {} [label=\"{}\\n{w}\", shape={shape}];",
                dot_id(&a.label),
                dot_escape(&a.label)
            );
        }
        for a in &self.arcs {
            let _ = writeln!(
                out,
                "  {} {edge} {} [label={}];",
                dot_id(&a.from),
                dot_id(&a.to),
                dot_id(&a.weight.to_string())
            );
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexValue {
    pub vertex: String,
    pub q: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairValue {
    pub from: String,
    pub to: String,
    pub p: Rational,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    AsymmetricArcs {
        from: String,
        to: String,
    },
    InconsistentCycle {
        cycle: Vec<String>,
        imbalance: Rational,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct PotentialReport {
    pub vertices: Vec<String>,
    pub potential: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<VertexValue>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<PairValue>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Violation>,
}

pub fn potential_report(doc: &GraphDocument) -> PotentialReport {
    let labels = &doc.labels;
    let mut report = PotentialReport {
        vertices: labels.clone(),
        potential: false,
        q: None,
        p: None,
        violation: None,
    };
    match detect_potentiality(&doc.digraph()) {
        Ok(pot) => {
            report.potential = true;
            report.q = Some(
                pot.q
                    .iter()
                    .enumerate()
                    .map(|(v, q)| VertexValue {
                        vertex: labels[v].clone(),
                        q: q.clone(),
                    })
                    .collect(),
            );
            report.p = Some(
                pot.p
                    .iter()
                    .map(|(&(i, j), p)| PairValue {
                        from: labels[i].clone(),
                        to: labels[j].clone(),
                        p: p.clone(),
                    })
                    .collect(),
            );
        }
        Err(PotentialError::AsymmetricArcs { origin, terminus }) => {
            report.violation = Some(Violation::AsymmetricArcs {
                from: labels[origin].clone(),
                to: labels[terminus].clone(),
            });
        }
        Err(PotentialError::InconsistentCycle { cycle, imbalance }) => {
            report.violation = Some(Violation::InconsistentCycle {
                cycle: cycle.iter().map(|&v| labels[v].clone()).collect(),
                imbalance,
            });
        }
    }
    report
}

impl PotentialReport {
    pub fn render(&self, format: Format) -> Option<String> {
        match format {
            Format::Json => Some(json(self)),
            Format::Text => Some(self.text()),
            Format::Dot => None,
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        match &self.violation {
            None => {
                out.push_str("potential: yes\n");
                let mut rows = vec![vec!["vertex".to_string(), "q".to_string()]];
                for v in self.q.iter().flatten() {
                    rows.push(vec![v.vertex.clone(), v.q.to_string()]);
                }
                out.push_str(&table(&rows));
                let mut rows = vec![vec!["pair".to_string(), "p".to_string()]];
                for p in self.p.iter().flatten() {
                    rows.push(vec![format!("{} {}", p.from, p.to), p.p.to_string()]);
                }
                out.push_str(&table(&rows));
            }
            Some(Violation::AsymmetricArcs { from, to }) => {
                let _ = writeln!(out, "potential: no\narc {from}->{to} has no reverse arc");
            }
            Some(Violation::InconsistentCycle { cycle, imbalance }) => {
                let mut walk = cycle.clone();
                walk.extend(cycle.first().cloned());
                let _ = writeln!(
                    out,
                    "potential: no\ncycle {} has imbalance {imbalance}",
                    walk.join("->")
                );
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub directed: bool,
    pub k: usize,
    pub phi: Weight,
    pub count: usize,
    pub forests: Vec<Vec<[String; 2]>>,
}

/// Brute-force φ_k and every extreme forest. Undirected documents are
/// searched as their symmetric digraph, so each forest appears once per
/// choice of roots.
pub fn oracle_report(
    doc: &GraphDocument,
    k: usize,
    cap: usize,
) -> Result<OracleReport, SearchError> {
    let level = oracle_enumerate(&doc.digraph(), k, cap)?;
    let forests: Vec<Vec<[String; 2]>> = level
        .forests
        .iter()
        .map(|f| forest_arcs(&doc.labels, f))
        .collect();
    Ok(OracleReport {
        directed: doc.directed,
        k,
        phi: level.weight,
        count: forests.len(),
        forests,
    })
}

impl OracleReport {
    pub fn render(&self, format: Format) -> Option<String> {
        match format {
            Format::Json => Some(json(self)),
            Format::Text => Some(self.text()),
            Format::Dot => None,
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!(
            "k {}  phi {}  extreme forests {}\n",
            self.k, self.phi, self.count
        );
        for f in &self.forests {
            let _ = writeln!(out, "  {}", arc_list(f, true));
        }
        out
    }
}
