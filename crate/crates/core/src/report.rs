//! Claim reports: instances rebuilt from a source by a chain of operations,
//! evidence about the final matroid, and the text and JSON encodings. Every
//! stored intermediate matrix is compared bit for bit when a report is
//! rechecked.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::graphs::Multigraph;
use crate::io::{self, parse_err, LineCursor};
use crate::matroid::{BinaryMatroid, IsoCertificate, Label};
use crate::minors::{has_minor, MinorTarget, MinorWitness};
use crate::splitting;
use crate::verify::{all_splits_gammoid, SplitKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        })
    }
}

impl std::str::FromStr for Status {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "PASS" => Ok(Status::Pass),
            "FAIL" => Ok(Status::Fail),
            "INFO" => Ok(Status::Info),
            other => Err(Error::Malformed(format!("unknown status {other:?}"))),
        }
    }
}

/// A matroid exactly as written in a report: labels and normalized rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoredMatroid {
    pub labels: Vec<Label>,
    pub rows: Vec<String>,
}

impl StoredMatroid {
    pub fn of(b: &BinaryMatroid) -> Self {
        let m = b.matrix();
        StoredMatroid {
            labels: b.labels().to_vec(),
            rows: (0..m.row_count()).map(|i| m.row_string(i)).collect(),
        }
    }

    /// True when `b` has exactly these labels and rows.
    pub fn matches(&self, b: &BinaryMatroid) -> bool {
        *self == Self::of(b)
    }

    pub fn to_matroid(&self) -> Result<BinaryMatroid> {
        let m = BitMatrix::from_strings(&self.rows, self.labels.len())?;
        BinaryMatroid::from_matrix(&m, self.labels.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Source {
    Catalog { name: String },
    Graph { graph: Multigraph },
    /// The starting matrix is the definition.
    Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum Op {
    Dual,
    Split { set: Vec<Label> },
    ElementSplit { set: Vec<Label>, q: Label },
    EsSplit { set: Vec<Label>, pivot: Label, gamma: Label, q: Label },
    Delete { set: Vec<Label> },
    Contract { set: Vec<Label> },
    /// New element whose column has the given bits in the normalized rows.
    Extend { label: Label, column: u64 },
}

impl Op {
    pub fn apply(&self, b: &BinaryMatroid) -> Result<BinaryMatroid> {
        match self {
            Op::Dual => Ok(b.dual()),
            Op::Split { set } => splitting::split(b, set),
            Op::ElementSplit { set, q } => splitting::element_split(b, set, q.as_str()),
            Op::EsSplit {
                set,
                pivot,
                gamma,
                q,
            } => splitting::es_split(b, set, pivot.as_str(), gamma.as_str(), q.as_str()),
            Op::Delete { set } => b.delete(set),
            Op::Contract { set } => b.contract(set),
            Op::Extend { label, column } => b.extend(label.clone(), *column),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub op: Op,
    pub result: StoredMatroid,
}

/// A matroid given by how to rebuild it, with every intermediate result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub source: Source,
    pub start: StoredMatroid,
    pub steps: Vec<Step>,
}

impl Instance {
    pub fn from_catalog(name: &str) -> Result<Self> {
        let b = catalog::matroid(name)?;
        Ok(Instance {
            source: Source::Catalog {
                name: name.to_string(),
            },
            start: StoredMatroid::of(&b),
            steps: Vec::new(),
        })
    }

    pub fn from_graph(g: &Multigraph) -> Self {
        Instance {
            source: Source::Graph { graph: g.clone() },
            start: StoredMatroid::of(&g.cycle_matroid()),
            steps: Vec::new(),
        }
    }

    pub fn from_matroid(b: &BinaryMatroid) -> Self {
        Instance {
            source: Source::Matrix,
            start: StoredMatroid::of(b),
            steps: Vec::new(),
        }
    }

    /// Appends one operation, recording its result.
    pub fn then(mut self, op: Op) -> Result<Self> {
        let current = self.build().map_err(Error::Precondition)?;
        let next = op.apply(&current)?;
        self.steps.push(Step {
            op,
            result: StoredMatroid::of(&next),
        });
        Ok(self)
    }

    /// The matroid the last stage records, without recomputation.
    pub fn last_stored(&self) -> &StoredMatroid {
        self.steps.last().map_or(&self.start, |s| &s.result)
    }

    /// Rebuilds from the source, checking every stored stage bit for bit.
    pub fn build(&self) -> std::result::Result<BinaryMatroid, String> {
        Ok(self.build_stages()?.pop().expect("the start is a stage"))
    }

    /// The start and the result of every step, each checked against its
    /// stored matrix.
    pub fn build_stages(&self) -> std::result::Result<Vec<BinaryMatroid>, String> {
        let mut current = match &self.source {
            Source::Catalog { name } => catalog::matroid(name).map_err(|e| e.to_string())?,
            Source::Graph { graph } => graph.cycle_matroid(),
            Source::Matrix => self.start.to_matroid().map_err(|e| e.to_string())?,
        };
        if !self.start.matches(&current) {
            return Err("starting matrix differs from its source".into());
        }
        let mut stages = Vec::with_capacity(self.steps.len() + 1);
        for (i, step) in self.steps.iter().enumerate() {
            let next = step
                .op
                .apply(&current)
                .map_err(|e| format!("step {}: {e}", i + 1))?;
            if !step.result.matches(&next) {
                return Err(format!("step {} result differs from recomputation", i + 1));
            }
            stages.push(std::mem::replace(&mut current, next));
        }
        stages.push(current);
        Ok(stages)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TargetRef {
    Catalog { name: String },
    Instance { instance: Box<Instance> },
}

impl TargetRef {
    pub fn catalog(name: &str) -> Self {
        TargetRef::Catalog {
            name: name.to_string(),
        }
    }

    pub fn resolve(&self) -> std::result::Result<MinorTarget, String> {
        match self {
            TargetRef::Catalog { name } => catalog::entry(name)
                .map(|e| e.target())
                .map_err(|e| e.to_string()),
            TargetRef::Instance { instance } => instance.build().map(MinorTarget::Binary),
        }
    }

    fn describe(&self) -> String {
        match self {
            TargetRef::Catalog { name } => name.clone(),
            TargetRef::Instance { .. } => "derived matroid".into(),
        }
    }
}

/// A checkable statement about the final matroid of an instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    Isomorphic { target: TargetRef, certificate: IsoCertificate },
    NotIsomorphic { target: TargetRef },
    Minor { target: TargetRef, witness: MinorWitness },
    NoMinor { target: TargetRef },
    /// Every splitting of the given kind on sets with `min..=max` elements
    /// is a binary gammoid.
    GammoidSplits { split: SplitKind, min: usize, max: usize },
}

impl Evidence {
    pub fn check(&self, b: &BinaryMatroid) -> std::result::Result<(), String> {
        match self {
            Evidence::Isomorphic {
                target,
                certificate,
            } => {
                if target.resolve()?.check(b, certificate) {
                    Ok(())
                } else {
                    Err(format!("certificate onto {} fails", target.describe()))
                }
            }
            Evidence::NotIsomorphic { target } => match target.resolve()?.certify(b) {
                None => Ok(()),
                Some(_) => Err(format!("matroid is isomorphic to {}", target.describe())),
            },
            Evidence::Minor { target, witness } => {
                if witness.verify(b, &target.resolve()?) {
                    Ok(())
                } else {
                    Err(format!("minor witness for {} fails", target.describe()))
                }
            }
            Evidence::NoMinor { target } => {
                match has_minor(b, &target.resolve()?).map_err(|e| e.to_string())? {
                    None => Ok(()),
                    Some(_) => Err(format!("a {} minor exists", target.describe())),
                }
            }
            Evidence::GammoidSplits { split, min, max } => {
                match all_splits_gammoid(b, *split, *min, *max).map_err(|e| e.to_string())? {
                    None => Ok(()),
                    Some(op) => Err(format!("{op:?} is not a binary gammoid")),
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub summary: String,
    pub instance: Instance,
    /// Statements about intermediate stages; stage 0 is the start.
    #[serde(default)]
    pub stage_evidence: Vec<(usize, Evidence)>,
    /// Statements about the final matroid of the instance.
    pub evidence: Vec<Evidence>,
}

impl Witness {
    pub fn new(summary: impl Into<String>, instance: Instance, evidence: Vec<Evidence>) -> Self {
        Witness {
            summary: one_line(&summary.into()),
            instance,
            stage_evidence: Vec::new(),
            evidence,
        }
    }

    pub fn check(&self) -> std::result::Result<(), String> {
        let stages = self.instance.build_stages()?;
        for (k, e) in &self.stage_evidence {
            let b = stages
                .get(*k)
                .ok_or_else(|| format!("no stage {k}"))?;
            e.check(b)?;
        }
        let last = stages.last().expect("the start is a stage");
        self.evidence.iter().try_for_each(|e| e.check(last))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim: String,
    pub status: Status,
    pub instances: usize,
    pub params: Vec<(String, String)>,
    pub verdicts: Vec<Verdict>,
    pub notes: Vec<String>,
    pub witnesses: Vec<Witness>,
    pub counterexamples: Vec<Witness>,
    /// Wall-clock time; the only field that varies between identical runs.
    pub elapsed_ms: Option<u64>,
}

impl ClaimReport {
    pub fn new(claim: &str) -> Self {
        ClaimReport {
            claim: claim.to_string(),
            status: Status::Pass,
            instances: 0,
            params: Vec::new(),
            verdicts: Vec::new(),
            notes: Vec::new(),
            witnesses: Vec::new(),
            counterexamples: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn param(&mut self, key: &str, value: impl fmt::Display) {
        self.params.push((key.to_string(), value.to_string()));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(one_line(&text.into()));
    }

    pub fn verdict(&mut self, name: &str, status: Status, detail: impl Into<String>) {
        self.verdicts.push(Verdict {
            name: name.to_string(),
            status,
            detail: one_line(&detail.into()),
        });
    }

    /// Lists every problem found by re-executing the report: broken
    /// witnesses and counterexamples, and a status that disagrees with them.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (kind, list) in [("witness", &self.witnesses), ("counterexample", &self.counterexamples)] {
            for (i, w) in list.iter().enumerate() {
                if let Err(e) = w.check() {
                    out.push(format!("{kind} {} ({}): {e}", i + 1, w.summary));
                }
            }
        }
        match self.status {
            Status::Fail if self.counterexamples.is_empty() => {
                out.push("FAIL without counterexamples".into())
            }
            Status::Pass if !self.counterexamples.is_empty() => {
                out.push("PASS with counterexamples".into())
            }
            _ => {}
        }
        out
    }

    /// True when every witness and counterexample re-validates.
    pub fn check(&self) -> bool {
        self.problems().is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "CLAIM {} {} instances={}",
            self.claim, self.status, self.instances
        );
        for (k, v) in &self.params {
            let _ = writeln!(out, "PARAM {k}={v}");
        }
        for v in &self.verdicts {
            let _ = writeln!(out, "VERDICT {} {} {}", v.name, v.status, v.detail);
        }
        for n in &self.notes {
            let _ = writeln!(out, "NOTE {n}");
        }
        for (tag, list) in [("WITNESS", &self.witnesses), ("COUNTEREXAMPLE", &self.counterexamples)] {
            for w in list {
                let _ = writeln!(out, "{tag} {}", w.summary);
                write_instance(&mut out, &w.instance);
                for (k, e) in &w.stage_evidence {
                    let _ = write!(out, "STAGE {k} ");
                    write_evidence(&mut out, e);
                }
                for e in &w.evidence {
                    write_evidence(&mut out, e);
                }
                out.push_str("END\n");
            }
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "ELAPSED {ms}ms");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut c = LineCursor::new(text);
        let report = Self::read_text(&mut c)?;
        if let Some((line, _)) = c.peek() {
            return Err(parse_err(line, "a second report follows"));
        }
        Ok(report)
    }

    /// Reads one report, stopping before the next `CLAIM` header.
    fn read_text(c: &mut LineCursor<'_>) -> Result<Self> {
        let (line, header) = c.expect("CLAIM header")?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let [tag, claim, status, count] = parts[..] else {
            return Err(parse_err(line, "expected `CLAIM <id> <status> instances=<n>`"));
        };
        if tag != "CLAIM" {
            return Err(parse_err(line, "expected CLAIM"));
        }
        let mut report = ClaimReport::new(claim);
        report.status = status.parse().map_err(|e: Error| parse_err(line, e.to_string()))?;
        report.instances = count
            .strip_prefix("instances=")
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| parse_err(line, "bad instance count"))?;
        while let Some((_, next)) = c.peek() {
            if split_tag(next).0 == "CLAIM" {
                break;
            }
            let (line, text) = c.next_line().expect("peeked");
            let (tag, rest) = split_tag(text);
            match tag {
                "PARAM" => {
                    let (k, v) = rest
                        .split_once('=')
                        .ok_or_else(|| parse_err(line, "expected key=value"))?;
                    report.params.push((k.to_string(), v.to_string()));
                }
                "VERDICT" => {
                    let mut it = rest.splitn(3, ' ');
                    let name = it.next().unwrap_or_default();
                    let status = it
                        .next()
                        .ok_or_else(|| parse_err(line, "missing verdict status"))?
                        .parse()
                        .map_err(|e: Error| parse_err(line, e.to_string()))?;
                    report.verdicts.push(Verdict {
                        name: name.to_string(),
                        status,
                        detail: it.next().unwrap_or_default().to_string(),
                    });
                }
                "NOTE" => report.notes.push(rest.to_string()),
                "WITNESS" | "COUNTEREXAMPLE" => {
                    let w = read_witness(c, rest)?;
                    if tag == "WITNESS" {
                        report.witnesses.push(w);
                    } else {
                        report.counterexamples.push(w);
                    }
                }
                "ELAPSED" => {
                    let ms = rest
                        .strip_suffix("ms")
                        .and_then(|n| n.parse().ok())
                        .ok_or_else(|| parse_err(line, "bad elapsed time"))?;
                    report.elapsed_ms = Some(ms);
                }
                other => return Err(parse_err(line, format!("unexpected {other:?}"))),
            }
        }
        Ok(report)
    }

    /// Reads any number of reports: concatenated text reports, a JSON array,
    /// or a single JSON object.
    pub fn parse_many(text: &str) -> Result<Vec<Self>> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('[') {
            return serde_json::from_str(text).map_err(|e| Error::Parse {
                line: e.line(),
                message: e.to_string(),
            });
        }
        if trimmed.starts_with('{') {
            return Ok(vec![Self::from_json(text)?]);
        }
        let mut c = LineCursor::new(text);
        let mut out = vec![Self::read_text(&mut c)?];
        while !c.is_done() {
            out.push(Self::read_text(&mut c)?);
        }
        Ok(out)
    }

    /// Reads either encoding.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::from_text(text)
        }
    }
}

/// A set of labels list as `{a,b}`.
fn write_set(out: &mut String, set: &[Label]) {
    out.push('{');
    for (i, l) in set.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(l.as_str());
    }
    out.push('}');
}

fn set_string(set: &[Label]) -> String {
    let mut s = String::new();
    write_set(&mut s, set);
    s
}

fn parse_set(line: usize, text: &str) -> Result<Vec<Label>> {
    let inner = text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| parse_err(line, format!("expected {{...}}, found {text:?}")))?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|s| Label::new(s).map_err(|e| parse_err(line, e.to_string())))
        .collect()
}

fn parse_label(line: usize, text: &str) -> Result<Label> {
    Label::new(text).map_err(|e| parse_err(line, e.to_string()))
}

fn one_line(text: &str) -> String {
    text.replace(['\n', '\r'], " ")
}

fn split_tag(text: &str) -> (&str, &str) {
    match text.split_once(' ') {
        Some((a, b)) => (a, b),
        None => (text, ""),
    }
}

fn write_stored(out: &mut String, m: &StoredMatroid) {
    let _ = writeln!(out, "{} {}", m.rows.len(), m.labels.len());
    let names: Vec<&str> = m.labels.iter().map(Label::as_str).collect();
    let _ = writeln!(out, "{}", names.join(" "));
    for r in &m.rows {
        let _ = writeln!(out, "{r}");
    }
}

/// Reads a matroid block verbatim, without normalizing it.
fn read_stored(c: &mut LineCursor<'_>) -> Result<StoredMatroid> {
    let (line, header) = c.expect("matroid header `r n`")?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_err(line, format!("bad number {t:?}"))))
        .collect::<Result<_>>()?;
    let [r, n] = dims[..] else {
        return Err(parse_err(line, "expected `r n`"));
    };
    if n == 0 {
        if r != 0 {
            return Err(parse_err(line, "rows declared for a matroid with no elements"));
        }
        return Ok(StoredMatroid {
            labels: Vec::new(),
            rows: Vec::new(),
        });
    }
    let (line, names) = c.expect("label line")?;
    let labels: Vec<Label> = names
        .split_whitespace()
        .map(|s| parse_label(line, s))
        .collect::<Result<_>>()?;
    if labels.len() != n {
        return Err(parse_err(line, format!("expected {n} labels, found {}", labels.len())));
    }
    let mut rows = Vec::with_capacity(r);
    for _ in 0..r {
        let (line, row) = c.expect("matrix row")?;
        if row.len() != n || !row.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(parse_err(line, format!("expected {n} characters from 0/1")));
        }
        rows.push(row.to_string());
    }
    Ok(StoredMatroid { labels, rows })
}

fn write_instance(out: &mut String, inst: &Instance) {
    match &inst.source {
        Source::Catalog { name } => {
            let _ = writeln!(out, "SOURCE catalog {name}");
        }
        Source::Graph { graph } => {
            out.push_str("SOURCE graph\n");
            out.push_str(&io::write_graph(graph));
        }
        Source::Matrix => out.push_str("SOURCE matrix\n"),
    }
    out.push_str("START\n");
    write_stored(out, &inst.start);
    for step in &inst.steps {
        let text = match &step.op {
            Op::Dual => "dual".to_string(),
            Op::Split { set } => format!("split {}", set_string(set)),
            Op::ElementSplit { set, q } => format!("element-split {} {q}", set_string(set)),
            Op::EsSplit {
                set,
                pivot,
                gamma,
                q,
            } => format!("es-split {} {pivot} {gamma} {q}", set_string(set)),
            Op::Delete { set } => format!("delete {}", set_string(set)),
            Op::Contract { set } => format!("contract {}", set_string(set)),
            Op::Extend { label, column } => format!("extend {label} {column}"),
        };
        let _ = writeln!(out, "STEP {text}");
        write_stored(out, &step.result);
    }
}

fn read_instance(c: &mut LineCursor<'_>) -> Result<Instance> {
    let (line, text) = c.expect("SOURCE line")?;
    let (tag, rest) = split_tag(text);
    if tag != "SOURCE" {
        return Err(parse_err(line, "expected SOURCE"));
    }
    let source = match split_tag(rest) {
        ("catalog", name) if !name.is_empty() => Source::Catalog {
            name: name.to_string(),
        },
        ("graph", "") => Source::Graph {
            graph: io::read_graph(c)?,
        },
        ("matrix", "") => Source::Matrix,
        _ => return Err(parse_err(line, format!("unknown source {rest:?}"))),
    };
    let (line, start) = c.expect("START")?;
    if start != "START" {
        return Err(parse_err(line, "expected START"));
    }
    let start = read_stored(c)?;
    let mut steps = Vec::new();
    while let Some((line, text)) = c.peek() {
        let (tag, rest) = split_tag(text);
        if tag != "STEP" {
            break;
        }
        c.next_line();
        let words: Vec<&str> = rest.split_whitespace().collect();
        let op = match words[..] {
            ["dual"] => Op::Dual,
            ["split", s] => Op::Split {
                set: parse_set(line, s)?,
            },
            ["element-split", s, q] => Op::ElementSplit {
                set: parse_set(line, s)?,
                q: parse_label(line, q)?,
            },
            ["es-split", s, e, g, q] => Op::EsSplit {
                set: parse_set(line, s)?,
                pivot: parse_label(line, e)?,
                gamma: parse_label(line, g)?,
                q: parse_label(line, q)?,
            },
            ["delete", s] => Op::Delete {
                set: parse_set(line, s)?,
            },
            ["contract", s] => Op::Contract {
                set: parse_set(line, s)?,
            },
            ["extend", l, col] => Op::Extend {
                label: parse_label(line, l)?,
                column: col
                    .parse()
                    .map_err(|_| parse_err(line, format!("bad column {col:?}")))?,
            },
            _ => return Err(parse_err(line, format!("unknown step {rest:?}"))),
        };
        let result = read_stored(c)?;
        steps.push(Step { op, result });
    }
    Ok(Instance {
        source,
        start,
        steps,
    })
}

fn write_target(out: &mut String, t: &TargetRef) {
    match t {
        TargetRef::Catalog { name } => {
            let _ = writeln!(out, " catalog {name}");
        }
        TargetRef::Instance { instance } => {
            out.push_str(" instance\n");
            write_instance(out, instance);
        }
    }
}

fn read_target(c: &mut LineCursor<'_>, line: usize, text: &str) -> Result<TargetRef> {
    match split_tag(text) {
        ("catalog", name) if !name.is_empty() => Ok(TargetRef::catalog(name)),
        ("instance", "") => Ok(TargetRef::Instance {
            instance: Box::new(read_instance(c)?),
        }),
        _ => Err(parse_err(line, format!("unknown target {text:?}"))),
    }
}

fn write_map(out: &mut String, cert: &IsoCertificate) {
    out.push_str("MAP");
    for (a, b) in &cert.pairs {
        let _ = write!(out, " {a}={b}");
    }
    out.push('\n');
}

fn read_map(c: &mut LineCursor<'_>) -> Result<IsoCertificate> {
    let (line, text) = c.expect("MAP line")?;
    let (tag, rest) = split_tag(text);
    if tag != "MAP" {
        return Err(parse_err(line, "expected MAP"));
    }
    let pairs = rest
        .split_whitespace()
        .map(|p| {
            let (a, b) = p
                .split_once('=')
                .ok_or_else(|| parse_err(line, format!("bad pair {p:?}")))?;
            Ok((parse_label(line, a)?, parse_label(line, b)?))
        })
        .collect::<Result<_>>()?;
    Ok(IsoCertificate { pairs })
}

fn read_labeled_set(c: &mut LineCursor<'_>, tag: &str) -> Result<Vec<Label>> {
    let (line, text) = c.expect(tag)?;
    match split_tag(text) {
        (t, set) if t == tag => parse_set(line, set),
        _ => Err(parse_err(line, format!("expected {tag}"))),
    }
}

fn write_evidence(out: &mut String, e: &Evidence) {
    match e {
        Evidence::Isomorphic {
            target,
            certificate,
        } => {
            out.push_str("EVIDENCE iso");
            write_target(out, target);
            write_map(out, certificate);
        }
        Evidence::NotIsomorphic { target } => {
            out.push_str("EVIDENCE noniso");
            write_target(out, target);
        }
        Evidence::Minor { target, witness } => {
            out.push_str("EVIDENCE minor");
            write_target(out, target);
            let _ = writeln!(out, "DELETE {}", set_string(&witness.deleted));
            let _ = writeln!(out, "CONTRACT {}", set_string(&witness.contracted));
            write_map(out, &witness.mapping);
        }
        Evidence::NoMinor { target } => {
            out.push_str("EVIDENCE nominor");
            write_target(out, target);
        }
        Evidence::GammoidSplits { split, min, max } => {
            let _ = writeln!(out, "EVIDENCE gammoid-splits {} {min} {max}", split.name());
        }
    }
}

fn read_witness(c: &mut LineCursor<'_>, summary: &str) -> Result<Witness> {
    let instance = read_instance(c)?;
    let mut stage_evidence = Vec::new();
    let mut evidence = Vec::new();
    loop {
        let (line, text) = c.expect("EVIDENCE or END")?;
        if text == "END" {
            break;
        }
        let (mut tag, mut rest) = split_tag(text);
        let mut stage = None;
        if tag == "STAGE" {
            let (k, tail) = split_tag(rest);
            stage = Some(
                k.parse::<usize>()
                    .map_err(|_| parse_err(line, format!("bad stage {k:?}")))?,
            );
            (tag, rest) = split_tag(tail);
        }
        if tag != "EVIDENCE" {
            return Err(parse_err(line, format!("unexpected {tag:?}")));
        }
        let (kind, rest) = split_tag(rest);
        let e = match kind {
            "iso" => {
                let target = read_target(c, line, rest)?;
                Evidence::Isomorphic {
                    target,
                    certificate: read_map(c)?,
                }
            }
            "noniso" => Evidence::NotIsomorphic {
                target: read_target(c, line, rest)?,
            },
            "minor" => {
                let target = read_target(c, line, rest)?;
                let deleted = read_labeled_set(c, "DELETE")?;
                let contracted = read_labeled_set(c, "CONTRACT")?;
                let mapping = read_map(c)?;
                Evidence::Minor {
                    target,
                    witness: MinorWitness {
                        deleted,
                        contracted,
                        mapping,
                    },
                }
            }
            "nominor" => Evidence::NoMinor {
                target: read_target(c, line, rest)?,
            },
            "gammoid-splits" => {
                let words: Vec<&str> = rest.split_whitespace().collect();
                let [kind, min, max] = words[..] else {
                    return Err(parse_err(line, "expected `gammoid-splits <kind> <min> <max>`"));
                };
                let num = |t: &str| {
                    t.parse()
                        .map_err(|_| parse_err(line, format!("bad number {t:?}")))
                };
                Evidence::GammoidSplits {
                    split: SplitKind::from_name(kind)
                        .ok_or_else(|| parse_err(line, format!("unknown split {kind:?}")))?,
                    min: num(min)?,
                    max: num(max)?,
                }
            }
            other => return Err(parse_err(line, format!("unknown evidence {other:?}"))),
        };
        match stage {
            Some(k) => stage_evidence.push((k, e)),
            None => evidence.push(e),
        }
    }
    Ok(Witness {
        summary: summary.to_string(),
        instance,
        stage_evidence,
        evidence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ClaimReport {
        let mut r = ClaimReport::new("DEMO");
        r.instances = 2;
        r.param("vertices", 3);
        r.verdict("plain", Status::Pass, "all good");
        r.note("two lines\nbecome one");
        let inst = Instance::from_catalog("G6")
            .unwrap()
            .then(Op::Split {
                set: crate::matroid::labels(&["x", "y", "z"]),
            })
            .unwrap();
        let b = inst.build().unwrap();
        let k4 = catalog::matroid("K4").unwrap();
        let cert = b.isomorphic(&k4).unwrap();
        let derived = Instance::from_graph(catalog::entry("K4").unwrap().graph().unwrap())
            .then(Op::Dual)
            .unwrap();
        let dual_cert = b.isomorphic(&derived.build().unwrap()).unwrap();
        r.witnesses.push(Witness::new(
            "split of G6 is K4",
            inst,
            vec![
                Evidence::Isomorphic {
                    target: TargetRef::catalog("K4"),
                    certificate: cert,
                },
                Evidence::Isomorphic {
                    target: TargetRef::Instance {
                        instance: Box::new(derived),
                    },
                    certificate: dual_cert,
                },
                Evidence::NoMinor {
                    target: TargetRef::catalog("U24"),
                },
                Evidence::NotIsomorphic {
                    target: TargetRef::catalog("F7"),
                },
            ],
        ));
        let q4 = Instance::from_matroid(&catalog::matroid("Q4").unwrap());
        let mut w = Witness::new(
            "Q4 splits on pairs stay gammoids",
            q4.then(Op::Contract {
                set: crate::matroid::labels(&["x"]),
            })
            .unwrap(),
            vec![Evidence::NotIsomorphic {
                target: TargetRef::catalog("Q4"),
            }],
        );
        w.stage_evidence.push((
            0,
            Evidence::GammoidSplits {
                split: SplitKind::Plain,
                min: 2,
                max: 2,
            },
        ));
        r.witnesses.push(w);
        r.elapsed_ms = Some(7);
        r
    }

    #[test]
    fn text_round_trip() {
        let r = sample();
        let text = r.to_text();
        assert!(text.starts_with("CLAIM DEMO PASS instances=2\n"));
        assert!(text.ends_with("ELAPSED 7ms\n"));
        let back = ClaimReport::parse(&text).unwrap();
        assert_eq!(back, r);
        assert!(back.check(), "{:?}", back.problems());
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let back = ClaimReport::parse(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn flipped_bit_is_detected() {
        let r = sample();
        let text = r.to_text();
        // The split of G6 is stored after the STEP line; flip its first bit.
        let pos = text.find("STEP split").unwrap();
        let row_start = pos + text[pos..].find('\n').unwrap() + 1;
        let row_start = row_start + text[row_start..].find('\n').unwrap() + 1;
        let row_start = row_start + text[row_start..].find('\n').unwrap() + 1;
        let mut bytes = text.into_bytes();
        bytes[row_start] = if bytes[row_start] == b'0' { b'1' } else { b'0' };
        let corrupted = ClaimReport::parse(std::str::from_utf8(&bytes).unwrap()).unwrap();
        assert!(!corrupted.check());
    }

    #[test]
    fn status_consistency() {
        let mut r = sample();
        r.status = Status::Fail;
        assert!(!r.check());
    }

    #[test]
    fn parse_errors_name_lines() {
        let bad = "CLAIM X PASS instances=1\nWITNESS w\nSOURCE nowhere\n";
        match ClaimReport::parse(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }
}
