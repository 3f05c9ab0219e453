//! Named claims, each checked exhaustively over a bounded universe and
//! returned as a [`ClaimReport`] whose witnesses can be re-executed.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::{Error, Result};
use crate::graphs::{enumerate_connected, Dedup, EnumOptions, Multigraph};
use crate::graphs::{MAX_ENUM_EDGES, MAX_ENUM_VERTICES};
use crate::matroid::{BinaryMatroid, Label};
use crate::minors::{
    combinations, gammoid_obstruction, graphic_obstruction, has_minor, MinorTarget, MinorWitness,
    GAMMOID_OBSTRUCTIONS, GRAPHIC_OBSTRUCTIONS,
};
use crate::report::{ClaimReport, Evidence, Instance, Op, Status, TargetRef, Witness};

/// Every claim identifier understood by [`verify`], in report order.
pub const CLAIMS: [&str; 10] = [
    "L-QK4", "L-ALLQ", "T-MAIN", "T-GG2", "T-GG3", "L-GG1", "T-ESP", "T-ESSP", "T-COGR", "L-STRUCT",
];

/// At most this many counterexamples are written out per verdict.
const LISTED: usize = 10;

const QUOTIENT_NAMES: [&str; 4] = ["Q1", "Q2", "Q3", "Q4"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitKind {
    Plain,
    Element,
    Es,
}

impl SplitKind {
    pub fn name(self) -> &'static str {
        match self {
            SplitKind::Plain => "split",
            SplitKind::Element => "element-split",
            SplitKind::Es => "es-split",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [SplitKind::Plain, SplitKind::Element, SplitKind::Es]
            .into_iter()
            .find(|k| k.name() == s)
    }
}

impl fmt::Display for SplitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Every operation of the given kind on sets of `min..=max` elements.
///
/// Sets come in increasing size, each size in lexicographic order of element
/// indices; es pivots follow column order inside each set. The new elements
/// are named with fresh labels based on `q` and `gamma`.
pub fn split_ops(b: &BinaryMatroid, kind: SplitKind, min: usize, max: usize) -> Vec<Op> {
    let n = b.len();
    let q = b.fresh_label("q");
    let gamma = b.fresh_label("gamma");
    // fresh_label only avoids existing labels, so keep the two apart.
    let gamma = if gamma == q {
        let with_q = b.extend(q.clone(), 0).expect("a fresh label extends");
        with_q.fresh_label("gamma")
    } else {
        gamma
    };
    let mut ops = Vec::new();
    for size in min..=max.min(n) {
        for mask in combinations(n, size) {
            let set = b.labels_of(mask);
            match kind {
                SplitKind::Plain => ops.push(Op::Split { set }),
                SplitKind::Element => ops.push(Op::ElementSplit { set, q: q.clone() }),
                SplitKind::Es => {
                    for pivot in &set {
                        ops.push(Op::EsSplit {
                            set: set.clone(),
                            pivot: pivot.clone(),
                            gamma: gamma.clone(),
                            q: q.clone(),
                        });
                    }
                }
            }
        }
    }
    ops
}

/// A split operation whose result is not a binary gammoid, with the catalog
/// name of the obstruction and a minor witness inside the result.
pub type SplitObstruction = (Op, &'static str, MinorWitness);

/// The first operation from [`split_ops`] whose result is not a binary
/// gammoid.
pub fn first_non_gammoid_split(
    b: &BinaryMatroid,
    kind: SplitKind,
    min: usize,
    max: usize,
) -> Result<Option<SplitObstruction>> {
    for op in split_ops(b, kind, min, max) {
        let result = op.apply(b)?;
        if let Some((name, w)) = gammoid_obstruction(&result)? {
            return Ok(Some((op, name, w)));
        }
    }
    Ok(None)
}

/// `None` when every splitting of the given kind on `min..=max` elements is a
/// binary gammoid, otherwise the first one that is not.
pub fn all_splits_gammoid(
    b: &BinaryMatroid,
    kind: SplitKind,
    min: usize,
    max: usize,
) -> Result<Option<Op>> {
    Ok(first_non_gammoid_split(b, kind, min, max)?.map(|(op, _, _)| op))
}

/// Limits of the graph universe swept by the equivalence claims.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub vertices: usize,
    pub edges: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            vertices: 5,
            edges: 8,
        }
    }
}

impl Bounds {
    pub fn new(vertices: usize, edges: usize) -> Self {
        Bounds { vertices, edges }
    }

    fn check(&self) -> Result<()> {
        if self.vertices > MAX_ENUM_VERTICES || self.edges > MAX_ENUM_EDGES {
            return Err(Error::CapExceeded(format!(
                "bounds are limited to {MAX_ENUM_VERTICES} vertices and {MAX_ENUM_EDGES} edges, got {} and {}",
                self.vertices, self.edges
            )));
        }
        Ok(())
    }
}

/// Runs one claim. The report is identical for identical arguments apart
/// from `elapsed_ms`.
pub fn verify(claim: &str, bounds: Bounds) -> Result<ClaimReport> {
    let started = Instant::now();
    if !CLAIMS.contains(&claim) {
        return Err(Error::UnknownClaim(claim.to_string()));
    }
    bounds.check()?;
    let mut report = match claim {
        "L-QK4" => quotient_classes()?,
        "L-ALLQ" => graphic_quotients()?,
        "T-MAIN" => equivalence(
            "T-MAIN",
            bounds,
            SplitKind::Plain,
            &QUOTIENT_NAMES,
            false,
        )?,
        "T-COGR" => equivalence("T-COGR", bounds, SplitKind::Plain, &QUOTIENT_NAMES, true)?,
        "T-ESP" => equivalence("T-ESP", bounds, SplitKind::Element, &["G7"], false)?,
        "T-ESSP" => equivalence("T-ESSP", bounds, SplitKind::Es, &["G8"], false)?,
        "T-GG2" => gg_claim("T-GG2", 2, &["G1", "G2"], bounds)?,
        "T-GG3" => gg_claim("T-GG3", 3, &["G3", "G4", "G5", "G6"], bounds)?,
        "L-GG1" => singleton_splits(bounds)?,
        "L-STRUCT" => structure()?,
        _ => unreachable!("claim names are checked above"),
    };
    report.elapsed_ms = Some(started.elapsed().as_millis() as u64);
    Ok(report)
}

fn targets(names: &[&'static str]) -> Result<Vec<(&'static str, MinorTarget)>> {
    names
        .iter()
        .map(|&n| Ok((n, catalog::entry(n)?.target())))
        .collect()
}

fn first_minor(
    b: &BinaryMatroid,
    targets: &[(&'static str, MinorTarget)],
) -> Result<Option<(&'static str, MinorWitness)>> {
    for (name, t) in targets {
        if let Some(w) = has_minor(b, t)? {
            return Ok(Some((name, w)));
        }
    }
    Ok(None)
}

fn minor_evidence(name: &str, witness: MinorWitness) -> Evidence {
    Evidence::Minor {
        target: TargetRef::catalog(name),
        witness,
    }
}

fn no_minor_evidence(names: &[&str]) -> Vec<Evidence> {
    names
        .iter()
        .map(|n| Evidence::NoMinor {
            target: TargetRef::catalog(n),
        })
        .collect()
}

fn set_text(set: &[Label]) -> String {
    let parts: Vec<&str> = set.iter().map(Label::as_str).collect();
    format!("{{{}}}", parts.join(","))
}

fn op_text(op: &Op) -> String {
    match op {
        Op::Split { set } => format!("split on {}", set_text(set)),
        Op::ElementSplit { set, .. } => format!("element split on {}", set_text(set)),
        Op::EsSplit { set, pivot, .. } => format!("es-split on {} at {pivot}", set_text(set)),
        Op::Delete { set } => format!("deletion of {}", set_text(set)),
        Op::Contract { set } => format!("contraction of {}", set_text(set)),
        Op::Dual => "dual".to_string(),
        Op::Extend { label, column } => format!("extension by {label} = {column:#b}"),
    }
}

fn alternatives(names: &[&str]) -> String {
    match names {
        [one] => format!("M({one})"),
        _ => {
            let parts: Vec<String> = names.iter().map(|n| format!("M({n})")).collect();
            parts.join(" or ")
        }
    }
}

fn status_from_verdicts(report: &ClaimReport) -> Status {
    if report.verdicts.iter().any(|v| v.status == Status::Fail) {
        Status::Fail
    } else if report.verdicts.iter().any(|v| v.status == Status::Info) {
        Status::Info
    } else {
        Status::Pass
    }
}

fn pass_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// The graph universe, one graph per matroid class, ordered by the canonical
/// form of its cycle matroid.
fn universe(bounds: Bounds) -> Result<Vec<Multigraph>> {
    let mut opts = EnumOptions::new(bounds.vertices, bounds.edges);
    opts.dedup = Dedup::Matroid;
    let graphs = enumerate_connected(&opts)?;
    let mut keyed = graphs
        .into_par_iter()
        .map(|g| Ok((g.cycle_matroid().canonical_form()?, g)))
        .collect::<Result<Vec<_>>>()?;
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, g)| g).collect())
}

fn universe_params(report: &mut ClaimReport, bounds: Bounds, hosts: usize) {
    report.param("vertices", bounds.vertices);
    report.param("edges", bounds.edges);
    report.param("dedup", "matroid");
    report.param("hosts", hosts);
    report.instances = hosts;
}

/// The eight quotients `K4 + q / q`, one per column `q` in the normalized
/// coordinates of M(K4).
fn k4_quotients() -> Result<Vec<(u64, Instance, BinaryMatroid)>> {
    let k4 = catalog::matroid("K4")?;
    let q = k4.fresh_label("q");
    (0..1u64 << k4.rank())
        .map(|column| {
            let inst = Instance::from_catalog("K4")?
                .then(Op::Extend {
                    label: q.clone(),
                    column,
                })?
                .then(Op::Contract {
                    set: vec![q.clone()],
                })?;
            let quotient = inst.build().map_err(Error::Precondition)?;
            Ok((column, inst, quotient))
        })
        .collect()
}

fn column_text(column: u64, rows: usize) -> String {
    (0..rows)
        .map(|i| if column >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn quotient_classes() -> Result<ClaimReport> {
    let mut report = ClaimReport::new("L-QK4");
    let named: Vec<(&str, BinaryMatroid)> = QUOTIENT_NAMES
        .iter()
        .map(|&n| Ok((n, catalog::matroid(n)?)))
        .collect::<Result<_>>()?;
    let mut classes = BTreeSet::new();
    let quotients = k4_quotients()?;
    for (column, inst, quotient) in quotients {
        classes.insert(quotient.canonical_form()?);
        let mut matched = Vec::new();
        let mut evidence = Vec::new();
        for (name, m) in &named {
            if let Some(certificate) = quotient.isomorphic(m) {
                matched.push(format!("M({name})"));
                evidence.push(Evidence::Isomorphic {
                    target: TargetRef::catalog(name),
                    certificate,
                });
            }
        }
        report.instances += 1;
        let col = column_text(column, 3);
        if matched.is_empty() {
            let evidence = QUOTIENT_NAMES
                .iter()
                .map(|n| Evidence::NotIsomorphic {
                    target: TargetRef::catalog(n),
                })
                .collect();
            report.counterexamples.push(Witness::new(
                format!("column {col} gives a quotient isomorphic to no M(Qi)"),
                inst,
                evidence,
            ));
        } else {
            report.witnesses.push(Witness::new(
                format!("column {col} gives {}", matched.join(" = ")),
                inst,
                evidence,
            ));
        }
    }
    report.param("extensions", 8);
    report.param("classes", classes.len());
    let missing = report.counterexamples.len();
    report.verdict(
        "classification",
        pass_if(missing == 0),
        format!("{} of 8 quotients are isomorphic to some M(Qi)", 8 - missing),
    );
    report.note(
        "Q2 and Q3 are different graphs with isomorphic cycle matroids, \
         so the four graphs give only 3 matroid classes",
    );
    report.status = status_from_verdicts(&report);
    Ok(report)
}

fn graphic_quotients() -> Result<ClaimReport> {
    let mut report = ClaimReport::new("L-ALLQ");
    for (column, inst, quotient) in k4_quotients()? {
        report.instances += 1;
        let col = column_text(column, 3);
        match graphic_obstruction(&quotient)? {
            None => report.witnesses.push(Witness::new(
                format!("column {col} gives a quotient with no excluded minor for graphicness"),
                inst,
                no_minor_evidence(&GRAPHIC_OBSTRUCTIONS),
            )),
            Some((name, w)) => report.counterexamples.push(Witness::new(
                format!("column {col} gives a quotient with an {name} minor"),
                inst,
                vec![minor_evidence(name, w)],
            )),
        }
    }
    let bad = report.counterexamples.len();
    report.verdict(
        "graphic",
        pass_if(bad == 0),
        format!("{} of 8 quotients are graphic", 8 - bad),
    );
    report.status = status_from_verdicts(&report);
    Ok(report)
}

struct SweepOutcome {
    /// A non-gammoid split of the host.
    obstruction: Option<SplitObstruction>,
    /// A listed minor of the host.
    target: Option<(&'static str, MinorWitness)>,
}

fn host_instance(g: &Multigraph, dual: bool) -> Result<Instance> {
    let inst = Instance::from_graph(g);
    if dual {
        inst.then(Op::Dual)
    } else {
        Ok(inst)
    }
}

/// For each host in the universe (or its dual), compares "every splitting of
/// `kind` on two or more elements is a binary gammoid" with "no minor from
/// `names`".
fn equivalence(
    claim: &str,
    bounds: Bounds,
    kind: SplitKind,
    names: &[&'static str],
    dual: bool,
) -> Result<ClaimReport> {
    let mut report = ClaimReport::new(claim);
    let hosts = universe(bounds)?;
    let listed = targets(names)?;
    let outcomes = hosts
        .par_iter()
        .map(|g| {
            let m = g.cycle_matroid();
            let b = if dual { m.dual() } else { m };
            Ok(SweepOutcome {
                obstruction: first_non_gammoid_split(&b, kind, 2, b.len())?,
                target: first_minor(&b, &listed)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    universe_params(&mut report, bounds, hosts.len());
    report.param("host", if dual { "bond matroid" } else { "cycle matroid" });
    report.param("operation", kind);
    report.param("set-sizes", "2..n");

    let base = usize::from(dual);
    let mut gammoid_side = 0;
    let mut target_free = 0;
    let mut forward_bad = 0;
    let mut backward_bad = 0;
    let mut sample_forward = None;
    let mut sample_backward = None;
    let mut forward_cex = Vec::new();
    let mut backward_cex = Vec::new();
    for (g, outcome) in hosts.iter().zip(outcomes) {
        let n = g.edges().len();
        if outcome.obstruction.is_none() {
            gammoid_side += 1;
        }
        if outcome.target.is_none() {
            target_free += 1;
        }
        match (outcome.obstruction, outcome.target) {
            (None, None) => {
                if sample_forward.is_none() {
                    let mut evidence = vec![Evidence::GammoidSplits {
                        split: kind,
                        min: 2,
                        max: n,
                    }];
                    evidence.extend(no_minor_evidence(names));
                    sample_forward = Some(Witness::new(
                        format!(
                            "every {kind} on two or more elements is a binary gammoid and there is no {} minor",
                            alternatives(names)
                        ),
                        host_instance(g, dual)?,
                        evidence,
                    ));
                }
            }
            (Some((op, obs, w)), Some((name, tw))) => {
                if sample_backward.is_none() {
                    let summary = format!(
                        "{} minor present and the {} has an {obs} minor",
                        alternatives(&[name]),
                        op_text(&op)
                    );
                    let mut wit =
                        Witness::new(summary, host_instance(g, dual)?.then(op)?, vec![minor_evidence(obs, w)]);
                    wit.stage_evidence.push((base, minor_evidence(name, tw)));
                    sample_backward = Some(wit);
                }
            }
            (None, Some((name, tw))) => {
                forward_bad += 1;
                if forward_cex.len() < LISTED {
                    forward_cex.push(Witness::new(
                        format!(
                            "every {kind} on two or more elements is a binary gammoid yet there is an {} minor",
                            alternatives(&[name])
                        ),
                        host_instance(g, dual)?,
                        vec![
                            Evidence::GammoidSplits {
                                split: kind,
                                min: 2,
                                max: n,
                            },
                            minor_evidence(name, tw),
                        ],
                    ));
                }
            }
            (Some((op, obs, w)), None) => {
                backward_bad += 1;
                if backward_cex.len() < LISTED {
                    let summary = format!(
                        "no {} minor yet the {} has an {obs} minor",
                        alternatives(names),
                        op_text(&op)
                    );
                    let mut wit =
                        Witness::new(summary, host_instance(g, dual)?.then(op)?, vec![minor_evidence(obs, w)]);
                    for e in no_minor_evidence(names) {
                        wit.stage_evidence.push((base, e));
                    }
                    backward_cex.push(wit);
                }
            }
        }
    }
    report.param("gammoid-splitting-hosts", gammoid_side);
    report.param("target-free-hosts", target_free);
    report.verdict(
        "forward",
        pass_if(forward_bad == 0),
        format!(
            "{gammoid_side} hosts have only gammoid {kind}s; {forward_bad} of them have an {} minor",
            alternatives(names)
        ),
    );
    report.verdict(
        "backward",
        pass_if(backward_bad == 0),
        format!(
            "{target_free} hosts have no {} minor; {backward_bad} of them have a non-gammoid {kind}",
            alternatives(names)
        ),
    );
    report.witnesses.extend(sample_forward);
    report.witnesses.extend(sample_backward);
    report.counterexamples.extend(forward_cex);
    report.counterexamples.extend(backward_cex);
    report.status = status_from_verdicts(&report);
    Ok(report)
}

/// Membership of the listed minors, minimality under single deletions and
/// contractions, and a sweep of the universe.
fn gg_claim(claim: &str, k: usize, members: &[&'static str], bounds: Bounds) -> Result<ClaimReport> {
    let mut report = ClaimReport::new(claim);
    report.param("k", k);
    let k4 = catalog::matroid("K4")?;

    // Membership through the distinguished elements of each entry.
    let mut membership_bad = 0;
    for &name in members {
        let entry = catalog::entry(name)?;
        let set = entry.split_set();
        let split_inst = Instance::from_catalog(name)?.then(Op::Split { set: set.clone() })?;
        let (inst, summary) = if k == 2 {
            let x = entry.role("x").expect("entries with k = 2 name x").clone();
            (
                split_inst.then(Op::Contract { set: vec![x.clone()] })?,
                format!("the split of M({name}) on {} contracted by {x}", set_text(&set)),
            )
        } else {
            (split_inst, format!("the split of M({name}) on {}", set_text(&set)))
        };
        let result = inst.build().map_err(Error::Precondition)?;
        let mut evidence = Vec::new();
        let mut ok = false;
        if let Some(certificate) = result.isomorphic(&k4) {
            evidence.push(Evidence::Isomorphic {
                target: TargetRef::catalog("K4"),
                certificate,
            });
            ok = true;
        } else if k == 2 {
            evidence.push(Evidence::NotIsomorphic {
                target: TargetRef::catalog("K4"),
            });
        }
        if k != 2 {
            match has_minor(&result, &catalog::entry("K4")?.target())? {
                Some(w) => {
                    evidence.push(minor_evidence("K4", w));
                    ok = true;
                }
                None => evidence.extend(no_minor_evidence(&["K4"])),
            }
        }
        if name == "G6" {
            let rows: Vec<String> = (0..result.rank())
                .map(|i| result.matrix().row_string(i))
                .collect();
            let header: Vec<&str> = result.labels().iter().map(Label::as_str).collect();
            report.note(format!(
                "split of M(G6) on {} has reduced rows {} over columns {}",
                set_text(&set),
                rows.join(" "),
                header.join(" ")
            ));
        }
        if ok {
            let what = if result.isomorphic(&k4).is_some() {
                "is isomorphic to M(K4)"
            } else {
                "has an M(K4) minor"
            };
            report
                .witnesses
                .push(Witness::new(format!("{summary} {what}"), inst, evidence));
        } else {
            membership_bad += 1;
            report
                .counterexamples
                .push(Witness::new(format!("{summary} is a binary gammoid"), inst, evidence));
        }
    }
    report.verdict(
        "membership",
        pass_if(membership_bad == 0),
        format!(
            "{} of {} listed matroids have a {k}-element split that is not a binary gammoid",
            members.len() - membership_bad,
            members.len()
        ),
    );

    // Minimality: no single-element minor keeps a bad k-element split.
    let mut minors = Vec::new();
    for &name in members {
        let b = catalog::matroid(name)?;
        for label in b.labels() {
            for op in [
                Op::Delete {
                    set: vec![label.clone()],
                },
                Op::Contract {
                    set: vec![label.clone()],
                },
            ] {
                minors.push((name, op));
            }
        }
    }
    let checked = minors
        .par_iter()
        .map(|(name, op)| {
            let inst = Instance::from_catalog(name)?.then(op.clone())?;
            let m = inst.build().map_err(Error::Precondition)?;
            Ok((inst, first_non_gammoid_split(&m, SplitKind::Plain, k, k)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut minimality_bad = 0;
    for ((name, op), (inst, found)) in minors.iter().zip(checked) {
        let what = format!("the {} in M({name})", op_text(op));
        match found {
            None => report.witnesses.push(Witness::new(
                format!("every {k}-element split after {what} is a binary gammoid"),
                inst,
                vec![Evidence::GammoidSplits {
                    split: SplitKind::Plain,
                    min: k,
                    max: k,
                }],
            )),
            Some((split, obs, w)) => {
                minimality_bad += 1;
                report.counterexamples.push(Witness::new(
                    format!("after {what} the {} has an {obs} minor", op_text(&split)),
                    inst.then(split)?,
                    vec![minor_evidence(obs, w)],
                ));
            }
        }
    }
    report.verdict(
        "minimality",
        pass_if(minimality_bad == 0),
        format!(
            "{} single-element minors checked; {minimality_bad} have a non-gammoid {k}-element split",
            minors.len()
        ),
    );

    if k == 3 {
        let mut proof_bad = 0;
        for (host, part) in [("G1", "G4"), ("G2", "G3")] {
            let inst = Instance::from_catalog(host)?;
            let b = catalog::matroid(host)?;
            match has_minor(&b, &catalog::entry(part)?.target())? {
                Some(w) => report.witnesses.push(Witness::new(
                    format!("M({host}) has an M({part}) minor"),
                    inst,
                    vec![minor_evidence(part, w)],
                )),
                None => {
                    proof_bad += 1;
                    report.counterexamples.push(Witness::new(
                        format!("M({host}) has no M({part}) minor"),
                        inst,
                        no_minor_evidence(&[part]),
                    ));
                }
            }
        }
        report.verdict(
            "proof-minors",
            pass_if(proof_bad == 0),
            "M(G1) has an M(G4) minor and M(G2) has an M(G3) minor",
        );
    }

    // Sweep: every host with a bad k-element split has a listed minor.
    let hosts = universe(bounds)?;
    let listed = targets(members)?;
    let outcomes = hosts
        .par_iter()
        .map(|g| {
            let b = g.cycle_matroid();
            let obstruction = first_non_gammoid_split(&b, SplitKind::Plain, k, k)?;
            let target = match obstruction {
                Some(_) => first_minor(&b, &listed)?,
                None => None,
            };
            Ok(SweepOutcome {
                obstruction,
                target,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    universe_params(&mut report, bounds, hosts.len());
    report.instances += minors.len() + members.len();
    let mut in_class = 0;
    let mut sweep_bad = 0;
    let mut sample = None;
    for (g, outcome) in hosts.iter().zip(outcomes) {
        let Some((op, obs, w)) = outcome.obstruction else {
            continue;
        };
        in_class += 1;
        match outcome.target {
            Some((name, tw)) => {
                if sample.is_none() {
                    let mut wit = Witness::new(
                        format!("the {} has an {obs} minor and the host has an M({name}) minor", op_text(&op)),
                        Instance::from_graph(g).then(op)?,
                        vec![minor_evidence(obs, w)],
                    );
                    wit.stage_evidence.push((0, minor_evidence(name, tw)));
                    sample = Some(wit);
                }
            }
            None => {
                sweep_bad += 1;
                if sweep_bad <= LISTED {
                    let mut wit = Witness::new(
                        format!(
                            "the {} has an {obs} minor but the host has no {} minor",
                            op_text(&op),
                            alternatives(members)
                        ),
                        Instance::from_graph(g).then(op)?,
                        vec![minor_evidence(obs, w)],
                    );
                    for e in no_minor_evidence(members) {
                        wit.stage_evidence.push((0, e));
                    }
                    report.counterexamples.push(wit);
                }
            }
        }
    }
    report.witnesses.extend(sample);
    report.param("hosts-in-class", in_class);
    report.verdict(
        "sweep",
        pass_if(sweep_bad == 0),
        format!(
            "{in_class} hosts have a non-gammoid {k}-element split; {sweep_bad} of them have no {} minor",
            alternatives(members)
        ),
    );
    report.status = status_from_verdicts(&report);
    Ok(report)
}

/// Singleton splits under two readings: every graphic host, and only hosts
/// that are themselves binary gammoids.
fn singleton_splits(bounds: Bounds) -> Result<ClaimReport> {
    let mut report = ClaimReport::new("L-GG1");
    let hosts = universe(bounds)?;
    let outcomes = hosts
        .par_iter()
        .map(|g| {
            let b = g.cycle_matroid();
            let host_gammoid = gammoid_obstruction(&b)?.is_none();
            let bad = first_non_gammoid_split(&b, SplitKind::Plain, 1, 1)?;
            Ok((host_gammoid, bad))
        })
        .collect::<Result<Vec<_>>>()?;
    universe_params(&mut report, bounds, hosts.len());
    report.param("set-sizes", "1");

    let (mut plain_bad, mut gammoid_hosts, mut gammoid_bad) = (0, 0, 0);
    let mut plain_sample = None;
    let mut gammoid_sample = None;
    for (g, (host_gammoid, bad)) in hosts.iter().zip(outcomes) {
        if host_gammoid {
            gammoid_hosts += 1;
        }
        match bad {
            None => {
                let slot = if host_gammoid {
                    &mut gammoid_sample
                } else {
                    &mut plain_sample
                };
                if slot.is_none() {
                    let mut wit = Witness::new(
                        if host_gammoid {
                            "a binary gammoid host whose singleton splits are all binary gammoids"
                        } else {
                            "a host that is not a binary gammoid whose singleton splits are all binary gammoids"
                        },
                        Instance::from_graph(g),
                        vec![Evidence::GammoidSplits {
                            split: SplitKind::Plain,
                            min: 1,
                            max: 1,
                        }],
                    );
                    if host_gammoid {
                        wit.evidence.extend(no_minor_evidence(&GAMMOID_OBSTRUCTIONS));
                    }
                    *slot = Some(wit);
                }
            }
            Some((op, obs, w)) => {
                plain_bad += 1;
                if host_gammoid {
                    gammoid_bad += 1;
                }
                if report.counterexamples.len() < LISTED || host_gammoid {
                    let mut wit = Witness::new(
                        format!("the {} has an {obs} minor", op_text(&op)),
                        Instance::from_graph(g).then(op)?,
                        vec![minor_evidence(obs, w)],
                    );
                    if host_gammoid {
                        for e in no_minor_evidence(&GAMMOID_OBSTRUCTIONS) {
                            wit.stage_evidence.push((0, e));
                        }
                    }
                    report.counterexamples.push(wit);
                }
            }
        }
    }
    report.witnesses.extend(gammoid_sample);
    report.witnesses.extend(plain_sample);
    report.param("gammoid-hosts", gammoid_hosts);
    let plain = if plain_bad == 0 { Status::Pass } else { Status::Info };
    report.verdict(
        "every-graphic-host",
        plain,
        format!(
            "{} hosts; {plain_bad} have a singleton split that is not a binary gammoid",
            hosts.len()
        ),
    );
    report.verdict(
        "gammoid-hosts",
        pass_if(gammoid_bad == 0),
        format!("{gammoid_hosts} hosts are binary gammoids; {gammoid_bad} have a singleton split that is not"),
    );
    report.note(
        "a singleton split makes its element a coloop, so it is the deletion of that element \
         plus a coloop; it is a binary gammoid exactly when the deletion is",
    );
    report.note(
        "under the reading that ranges over every graphic matroid the class is not empty; \
         under the reading that ranges over graphic binary gammoids it is",
    );
    report.status = status_from_verdicts(&report);
    Ok(report)
}

/// Identity checks for element splitting and for splitting against minors,
/// over every binary catalog entry.
fn structure() -> Result<ClaimReport> {
    let mut report = ClaimReport::new("L-STRUCT");
    let entries: Vec<&'static str> = catalog::entries()
        .iter()
        .filter(|e| e.matroid().is_some())
        .map(|e| e.name)
        .collect();

    struct Check {
        entry: &'static str,
        kind: &'static str,
        left: Instance,
        right: Instance,
    }

    let per_entry = entries
        .par_iter()
        .map(|&name| {
            let b = catalog::matroid(name)?;
            let n = b.len();
            let q = b.fresh_label("q");
            let mut checks = Vec::new();
            for size in 0..=3.min(n) {
                for mask in combinations(n, size) {
                    let set = b.labels_of(mask);
                    let es = Instance::from_catalog(name)?.then(Op::ElementSplit {
                        set: set.clone(),
                        q: q.clone(),
                    })?;
                    checks.push(Check {
                        entry: name,
                        kind: "element-split-delete",
                        left: es.clone().then(Op::Delete {
                            set: vec![q.clone()],
                        })?,
                        right: Instance::from_catalog(name)?.then(Op::Split { set: set.clone() })?,
                    });
                    checks.push(Check {
                        entry: name,
                        kind: "element-split-contract",
                        left: es.then(Op::Contract {
                            set: vec![q.clone()],
                        })?,
                        right: Instance::from_catalog(name)?,
                    });
                    if size > 2 {
                        continue;
                    }
                    for other in b.labels().iter().filter(|l| !set.contains(l)) {
                        for minor in [
                            Op::Delete {
                                set: vec![other.clone()],
                            },
                            Op::Contract {
                                set: vec![other.clone()],
                            },
                        ] {
                            let kind = if matches!(minor, Op::Delete { .. }) {
                                "split-commutes-with-delete"
                            } else {
                                "split-commutes-with-contract"
                            };
                            checks.push(Check {
                                entry: name,
                                kind,
                                left: Instance::from_catalog(name)?
                                    .then(Op::Split { set: set.clone() })?
                                    .then(minor.clone())?,
                                right: Instance::from_catalog(name)?
                                    .then(minor)?
                                    .then(Op::Split { set: set.clone() })?,
                            });
                        }
                    }
                }
            }
            let verdicts = checks
                .into_iter()
                .map(|c| {
                    let l = c.left.build().map_err(Error::Precondition)?;
                    let r = c.right.build().map_err(Error::Precondition)?;
                    let cert = l.isomorphic(&r);
                    Ok((l == r, cert, c))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(verdicts)
        })
        .collect::<Result<Vec<_>>>()?;

    let kinds = [
        "element-split-delete",
        "element-split-contract",
        "split-commutes-with-delete",
        "split-commutes-with-contract",
    ];
    let mut totals = [0usize; 4];
    let mut failures = [0usize; 4];
    let mut sampled = BTreeSet::new();
    let mut labeled = 0;
    for (equal, cert, check) in per_entry.into_iter().flatten() {
        let slot = kinds.iter().position(|k| *k == check.kind).expect("known kind");
        totals[slot] += 1;
        report.instances += 1;
        let target = TargetRef::Instance {
            instance: Box::new(check.right),
        };
        match cert {
            Some(certificate) => {
                if equal {
                    labeled += 1;
                }
                if check.entry == "K4" && sampled.insert(check.kind) {
                    report.witnesses.push(Witness::new(
                        format!("{} holds for M(K4)", check.kind),
                        check.left,
                        vec![Evidence::Isomorphic {
                            target,
                            certificate,
                        }],
                    ));
                }
            }
            None => {
                failures[slot] += 1;
                if report.counterexamples.len() < LISTED {
                    report.counterexamples.push(Witness::new(
                        format!("{} fails for {}", check.kind, check.entry),
                        check.left,
                        vec![Evidence::NotIsomorphic { target }],
                    ));
                }
            }
        }
    }
    report.param("entries", entries.len());
    report.param("equal-as-labeled", labeled);
    report.param("set-sizes", "0..3 for element splits, 0..2 for commutation");
    for (i, kind) in kinds.iter().enumerate() {
        report.verdict(
            kind,
            pass_if(failures[i] == 0),
            format!("{} checks, {} failures", totals[i], failures[i]),
        );
    }
    report.status = status_from_verdicts(&report);
    Ok(report)
}
