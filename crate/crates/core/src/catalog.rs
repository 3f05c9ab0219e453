//! Named graphs and matroids: the excluded minors, the splitting obstructions
//! with their distinguished elements, and the coextension families.
//!
//! Square graphs use vertices 0 (top left), 1 (top right), 2 (bottom right)
//! and 3 (bottom left). Distinguished elements are listed first in each
//! construction, so the column-order search for them finds the drawn labels.

use std::fmt::Write as _;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::graphs::Multigraph;
use crate::matroid::{labels, BinaryMatroid, CircuitMatroid, Label};
use crate::minors::{has_minor, MinorTarget};
use crate::splitting::{element_split, es_split, split};

#[derive(Clone, Debug)]
pub enum Construction {
    Graph(Multigraph),
    Matroid(BinaryMatroid),
    Circuits(CircuitMatroid),
}

/// Which property the distinguished elements of an entry must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distinguished {
    None,
    /// Ordered `(x, y)` with `split({x, y}) / x` isomorphic to M(K4).
    SplitThenContract,
    /// `{x, y, z}` whose split has an M(K4) minor.
    SplitHasK4,
    /// `{x, y}` whose element splitting is isomorphic to M(K4).
    ElementSplitIsK4,
    /// Ordered `(x, y)` whose es-splitting with `e = x` is isomorphic to M(K4).
    EsSplitIsK4,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub construction: Construction,
    /// Role name (`x`, `y`, `z`, `e`) and the element playing it.
    pub distinguished: Vec<(String, Label)>,
    pub note: &'static str,
}

impl CatalogEntry {
    /// The entry as a binary matroid; `None` for a circuit-only entry.
    pub fn matroid(&self) -> Option<BinaryMatroid> {
        match &self.construction {
            Construction::Graph(g) => Some(g.cycle_matroid()),
            Construction::Matroid(b) => Some(b.clone()),
            Construction::Circuits(_) => None,
        }
    }

    pub fn graph(&self) -> Option<&Multigraph> {
        match &self.construction {
            Construction::Graph(g) => Some(g),
            _ => None,
        }
    }

    pub fn target(&self) -> MinorTarget {
        match &self.construction {
            Construction::Circuits(c) => MinorTarget::Circuits(c.clone()),
            _ => MinorTarget::Binary(self.matroid().expect("binary entry")),
        }
    }

    /// The element playing `role`.
    pub fn role(&self, role: &str) -> Option<&Label> {
        self.distinguished
            .iter()
            .find(|(r, _)| r == role)
            .map(|(_, l)| l)
    }

    /// The distinguished elements other than the es pivot, in role order.
    pub fn split_set(&self) -> Vec<Label> {
        self.distinguished
            .iter()
            .filter(|(r, _)| r != "e")
            .map(|(_, l)| l.clone())
            .collect()
    }

    /// `# name: …` comment line followed by the entry in the matroid text format.
    pub fn show(&self) -> String {
        let mut out = format!("# {}: {}\n", self.name, self.note);
        if !self.distinguished.is_empty() {
            let roles: Vec<String> = self
                .distinguished
                .iter()
                .map(|(r, l)| format!("{r}={l}"))
                .collect();
            let _ = writeln!(out, "# distinguished: {}", roles.join(" "));
        }
        match &self.construction {
            Construction::Circuits(c) => {
                let _ = writeln!(
                    out,
                    "# not binary; rank {} on {}, every {}-subset is a circuit",
                    c.rank,
                    c.labels.len(),
                    c.rank + 1
                );
            }
            _ => out.push_str(&crate::io::write_matroid(&self.matroid().expect("binary"))),
        }
        out
    }
}

fn graph(v: usize, edges: &[(usize, usize, &str)]) -> Multigraph {
    Multigraph::labeled(v, edges).expect("catalog graph")
}

fn numbered(v: usize, pairs: &[(usize, usize)]) -> Multigraph {
    Multigraph::from_pairs(v, pairs).expect("catalog graph")
}

fn complete(v: usize) -> Vec<(usize, usize)> {
    (0..v)
        .flat_map(|a| (a + 1..v).map(move |b| (a, b)))
        .collect()
}

fn fano() -> BinaryMatroid {
    let m = BitMatrix::from_strings(&["1001101", "0101011", "0010111"], 7).expect("fano");
    BinaryMatroid::from_matrix(&m, labels(&["f1", "f2", "f3", "f4", "f5", "f6", "f7"]))
        .expect("fano")
}

fn k33() -> Multigraph {
    let pairs: Vec<(usize, usize)> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
    numbered(6, &pairs)
}

fn g1() -> Multigraph {
    graph(
        4,
        &[
            (0, 3, "x"),
            (3, 2, "y"),
            (0, 1, "a"),
            (1, 2, "b"),
            (3, 2, "c"),
            (0, 3, "d"),
            (1, 3, "e"),
        ],
    )
}

fn g2() -> Multigraph {
    graph(
        4,
        &[
            (0, 1, "x"),
            (1, 1, "y"),
            (1, 2, "a"),
            (2, 3, "b"),
            (0, 3, "c"),
            (0, 2, "d"),
            (1, 3, "e"),
        ],
    )
}

fn k4_star() -> Multigraph {
    graph(
        4,
        &[
            (0, 1, "x"),
            (0, 2, "y"),
            (0, 3, "z"),
            (1, 2, "a"),
            (2, 3, "b"),
            (1, 3, "c"),
        ],
    )
}

/// Apex 0 with both sides doubled, a single base edge, and a loop at `loop_at`.
fn two_doubled_with_loop(loop_at: usize) -> Multigraph {
    graph(
        3,
        &[
            (0, 1, "x"),
            (0, 2, "y"),
            (loop_at, loop_at, "z"),
            (0, 1, "u"),
            (0, 2, "v"),
            (1, 2, "w"),
        ],
    )
}

fn doubled_triangle() -> Multigraph {
    graph(
        3,
        &[
            (0, 2, "x"),
            (1, 2, "y"),
            (0, 1, "z"),
            (0, 2, "u"),
            (1, 2, "v"),
            (0, 1, "w"),
        ],
    )
}

fn g7() -> Multigraph {
    graph(3, &[(0, 1, "x"), (0, 2, "y"), (0, 1, "a"), (0, 2, "b"), (1, 2, "c")])
}

fn g8() -> Multigraph {
    graph(3, &[(0, 1, "x"), (1, 2, "y"), (0, 2, "a"), (1, 2, "b")])
}

fn w2() -> Multigraph {
    numbered(4, &[(0, 1), (0, 1), (3, 2), (3, 2), (0, 3), (0, 3), (1, 2)])
}

fn w3() -> Multigraph {
    numbered(4, &[(0, 1), (0, 1), (3, 2), (3, 2), (0, 3), (1, 2), (0, 0)])
}

fn v1() -> Multigraph {
    numbered(
        5,
        &[
            (0, 1),
            (1, 2),
            (3, 2),
            (0, 3),
            (0, 3),
            (0, 4),
            (0, 4),
            (4, 1),
            (1, 2),
        ],
    )
}

fn v2() -> Multigraph {
    numbered(5, &[(0, 1), (1, 2), (3, 2), (0, 3), (0, 3), (0, 4), (4, 1), (4, 2)])
}

fn v3() -> Multigraph {
    numbered(5, &[(0, 1), (1, 2), (3, 2), (0, 3), (3, 2), (0, 4), (0, 4), (4, 1)])
}

fn k4_matroid() -> BinaryMatroid {
    k4_star().cycle_matroid()
}

fn iso_to_k4(b: &BinaryMatroid) -> bool {
    b.isomorphic(&k4_matroid()).is_some()
}

fn tuples(n: usize, k: usize, ordered: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(n: usize, k: usize, ordered: bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let start = if ordered { 0 } else { cur.last().map_or(0, |&l| l + 1) };
        for i in start..n {
            if !cur.contains(&i) {
                cur.push(i);
                go(n, k, ordered, cur, out);
                cur.pop();
            }
        }
    }
    go(n, k, ordered, &mut cur, &mut out);
    out
}

/// True when the labels satisfy the defining property of `kind`.
pub fn satisfies(kind: Distinguished, b: &BinaryMatroid, chosen: &[Label]) -> Result<bool> {
    let set: Vec<&str> = chosen.iter().map(Label::as_str).collect();
    Ok(match kind {
        Distinguished::None => true,
        Distinguished::SplitThenContract => {
            iso_to_k4(&split(b, &set)?.contract(&set[..1])?)
        }
        Distinguished::SplitHasK4 => {
            has_minor(&split(b, &set)?, &MinorTarget::Binary(k4_matroid()))?.is_some()
        }
        Distinguished::ElementSplitIsK4 => {
            iso_to_k4(&element_split(b, &set, b.fresh_label("q").as_str())?)
        }
        Distinguished::EsSplitIsK4 => iso_to_k4(&es_split(
            b,
            &set,
            set[0],
            b.fresh_label("gamma").as_str(),
            b.fresh_label("q").as_str(),
        )?),
    })
}

/// First assignment in column order satisfying the property of `kind`.
pub fn resolve_distinguished(
    kind: Distinguished,
    b: &BinaryMatroid,
) -> Result<Vec<(String, Label)>> {
    let (k, ordered, roles): (usize, bool, &[&str]) = match kind {
        Distinguished::None => return Ok(Vec::new()),
        Distinguished::SplitThenContract => (2, true, &["x", "y"]),
        Distinguished::SplitHasK4 => (3, false, &["x", "y", "z"]),
        Distinguished::ElementSplitIsK4 => (2, false, &["x", "y"]),
        Distinguished::EsSplitIsK4 => (2, true, &["x", "y"]),
    };
    for t in tuples(b.len(), k, ordered) {
        let chosen: Vec<Label> = t.iter().map(|&i| b.labels()[i].clone()).collect();
        if satisfies(kind, b, &chosen)? {
            let mut out: Vec<(String, Label)> = roles
                .iter()
                .zip(&chosen)
                .map(|(r, l)| (r.to_string(), l.clone()))
                .collect();
            if kind == Distinguished::EsSplitIsK4 {
                out.push(("e".to_string(), chosen[0].clone()));
            }
            return Ok(out);
        }
    }
    Err(Error::Precondition(format!(
        "no assignment satisfies {kind:?}"
    )))
}

struct Spec {
    name: &'static str,
    aliases: &'static [&'static str],
    construction: Construction,
    kind: Distinguished,
    /// Documented elements, rank and loops.
    shape: (usize, usize, usize),
    note: &'static str,
}

fn specs() -> Vec<Spec> {
    use Construction::{Circuits, Graph, Matroid};
    use Distinguished as D;
    let k5 = numbered(5, &complete(5));
    vec![
        Spec { name: "K4", aliases: &["MK4"], construction: Graph(k4_star()), kind: D::None, shape: (6, 3, 0), note: "complete graph on four vertices" },
        Spec { name: "Q1", aliases: &[], construction: Graph(k4_star()), kind: D::None, shape: (6, 3, 0), note: "K4" },
        Spec { name: "Q2", aliases: &[], construction: Graph(two_doubled_with_loop(0)), kind: D::None, shape: (6, 2, 1), note: "triangle with two sides doubled and a loop at their common vertex" },
        Spec { name: "Q3", aliases: &[], construction: Graph(two_doubled_with_loop(2)), kind: D::None, shape: (6, 2, 1), note: "triangle with two sides doubled and a loop at a base vertex" },
        Spec { name: "Q4", aliases: &[], construction: Graph(doubled_triangle()), kind: D::None, shape: (6, 2, 0), note: "triangle with every side doubled" },
        Spec { name: "G1", aliases: &["W1"], construction: Graph(g1()), kind: D::SplitThenContract, shape: (7, 3, 0), note: "4-cycle with one diagonal; x doubles the left side and y the bottom side" },
        Spec { name: "G2", aliases: &[], construction: Graph(g2()), kind: D::SplitThenContract, shape: (7, 3, 1), note: "K4 with a loop y at an end of the edge x" },
        Spec { name: "G3", aliases: &[], construction: Graph(k4_star()), kind: D::SplitHasK4, shape: (6, 3, 0), note: "K4 with x, y, z the edges at one vertex" },
        Spec { name: "G4", aliases: &[], construction: Graph(two_doubled_with_loop(0)), kind: D::SplitHasK4, shape: (6, 2, 1), note: "Q2" },
        Spec { name: "G5", aliases: &[], construction: Graph(two_doubled_with_loop(2)), kind: D::SplitHasK4, shape: (6, 2, 1), note: "Q3" },
        Spec { name: "G6", aliases: &[], construction: Graph(doubled_triangle()), kind: D::SplitHasK4, shape: (6, 2, 0), note: "Q4; rows reduce to the 2x6 matrix 101101 / 011011" },
        Spec { name: "G7", aliases: &[], construction: Graph(g7()), kind: D::ElementSplitIsK4, shape: (5, 2, 0), note: "triangle with two sides doubled" },
        Spec { name: "G8", aliases: &[], construction: Graph(g8()), kind: D::EsSplitIsK4, shape: (4, 2, 0), note: "triangle with one side doubled" },
        Spec { name: "W2", aliases: &[], construction: Graph(w2()), kind: D::None, shape: (7, 3, 0), note: "4-cycle with three sides doubled" },
        Spec { name: "W3", aliases: &[], construction: Graph(w3()), kind: D::None, shape: (7, 3, 1), note: "4-cycle with two opposite sides doubled and a loop" },
        Spec { name: "V1", aliases: &[], construction: Graph(v1()), kind: D::None, shape: (9, 4, 0), note: "4-cycle plus an apex on the top side; left side, right side and one apex edge doubled" },
        Spec { name: "V2", aliases: &[], construction: Graph(v2()), kind: D::None, shape: (8, 4, 0), note: "4-cycle with the left side doubled plus an apex joined to three corners" },
        Spec { name: "V3", aliases: &[], construction: Graph(v3()), kind: D::None, shape: (8, 4, 0), note: "4-cycle with the bottom side doubled plus an apex on the top side, one apex edge doubled" },
        Spec { name: "K5", aliases: &[], construction: Graph(k5.clone()), kind: D::None, shape: (10, 4, 0), note: "complete graph on five vertices" },
        Spec { name: "K33", aliases: &["K3,3"], construction: Graph(k33()), kind: D::None, shape: (9, 5, 0), note: "complete bipartite graph K3,3" },
        Spec { name: "U24", aliases: &["U2,4"], construction: Circuits(CircuitMatroid::uniform(2, 4)), kind: D::None, shape: (4, 2, 0), note: "four points on a line" },
        Spec { name: "F7", aliases: &["Fano"], construction: Matroid(fano()), kind: D::None, shape: (7, 3, 0), note: "Fano plane" },
        Spec { name: "F7*", aliases: &["F7star"], construction: Matroid(fano().dual()), kind: D::None, shape: (7, 4, 0), note: "dual of the Fano plane" },
        Spec { name: "M*(K5)", aliases: &["K5star", "K5*"], construction: Matroid(k5.cycle_matroid().dual()), kind: D::None, shape: (10, 6, 0), note: "bond matroid of K5" },
        Spec { name: "M*(K33)", aliases: &["K33star", "K33*", "M*(K3,3)"], construction: Matroid(k33().cycle_matroid().dual()), kind: D::None, shape: (9, 4, 0), note: "bond matroid of K3,3" },
    ]
}

fn build(spec: Spec) -> CatalogEntry {
    let entry = CatalogEntry {
        name: spec.name,
        aliases: spec.aliases,
        construction: spec.construction,
        distinguished: Vec::new(),
        note: spec.note,
    };
    let shape = match (&entry.construction, entry.matroid()) {
        (_, Some(b)) => (b.len(), b.rank(), b.loops().len()),
        (Construction::Circuits(c), None) => (c.len(), c.rank, c.loops()),
        _ => unreachable!(),
    };
    assert_eq!(shape, spec.shape, "catalog entry {} has the wrong shape", spec.name);
    let distinguished = match entry.matroid() {
        Some(b) => resolve_distinguished(spec.kind, &b)
            .unwrap_or_else(|e| panic!("catalog entry {}: {e}", spec.name)),
        None => Vec::new(),
    };
    CatalogEntry {
        distinguished,
        ..entry
    }
}

/// All entries in listing order. Built once on first use.
pub fn entries() -> &'static [CatalogEntry] {
    static ENTRIES: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    ENTRIES.get_or_init(|| {
        specs().into_iter().map(build).collect()
    })
}

/// Looks an entry up by name or alias; case-sensitive.
pub fn entry(name: &str) -> Result<&'static CatalogEntry> {
    entries()
        .iter()
        .find(|e| e.name == name || e.aliases.contains(&name))
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

/// The entry as a binary matroid.
pub fn matroid(name: &str) -> Result<BinaryMatroid> {
    entry(name)?
        .matroid()
        .ok_or_else(|| Error::Precondition(format!("{name} is not binary")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minors::is_graphic;

    fn m(name: &str) -> BinaryMatroid {
        matroid(name).unwrap()
    }

    #[test]
    fn fano_columns_are_the_seven_nonzero_vectors() {
        let f = matroid("F7").unwrap();
        let mut cols = f.columns().to_vec();
        cols.sort_unstable();
        assert_eq!(cols, (1..8).collect::<Vec<u64>>());
    }

    #[test]
    fn g6_reduces_to_a6() {
        let g6 = m("G6");
        assert_eq!(g6.matrix().row_string(0), "101101");
        assert_eq!(g6.matrix().row_string(1), "011011");
        let set = entry("G6").unwrap().split_set();
        let roles: Vec<&str> = set.iter().map(|l| l.as_str()).collect();
        assert_eq!(roles, ["x", "y", "z"]);
    }

    #[test]
    fn fixed_identifications() {
        assert!(m("Q1").isomorphic(&m("K4")).is_some());
        assert!(m("Q2").isomorphic(&m("Q3")).is_some());
        assert!(m("G4").isomorphic(&m("G5")).is_some());
        assert!(entry("W1").unwrap().name == "G1");
        let f7 = m("F7");
        assert_eq!((f7.len(), f7.rank(), f7.circuits(Some(3)).len()), (7, 3, 7));
        assert!(m("F7").isomorphic(&m("F7*")).is_none());
    }

    #[test]
    fn distinguished_labels() {
        let g2 = entry("G2").unwrap();
        assert_eq!(g2.role("y").unwrap().as_str(), "y");
        assert!(m("G2").loops().contains(g2.role("y").unwrap()));
        let g7 = entry("G7").unwrap();
        let set = g7.split_set();
        assert_eq!(set.len(), 2);
        let classes = m("G7").parallel_classes();
        for l in &set {
            assert!(classes.iter().any(|c| c.len() == 2 && c.contains(l)));
        }
        let g8 = entry("G8").unwrap();
        assert_eq!(g8.role("e"), g8.role("x"));
        for name in ["G1", "G2", "G3", "G4", "G5", "G6", "G7", "G8"] {
            assert!(!entry(name).unwrap().distinguished.is_empty(), "{name}");
        }
    }

    #[test]
    fn minor_relations() {
        use crate::minors::has_minor;
        let target = |n: &str| entry(n).unwrap().target();
        assert!(has_minor(&m("G7"), &target("G8")).unwrap().is_some());
        for q in ["Q1", "Q2", "Q3", "Q4"] {
            assert!(has_minor(&m(q), &target("G7")).unwrap().is_some(), "{q}");
        }
    }

    #[test]
    fn graphic_entries_are_graphic() {
        for e in entries() {
            match &e.construction {
                Construction::Graph(g) if g.edges().len() <= 10 => {
                    assert!(is_graphic(&g.cycle_matroid()).unwrap(), "{}", e.name)
                }
                _ => {}
            }
        }
        for name in ["F7", "F7*", "M*(K5)", "M*(K33)"] {
            assert!(!is_graphic(&m(name)).unwrap(), "{name}");
        }
    }

    #[test]
    fn unknown_names() {
        assert!(matches!(entry("G9"), Err(Error::UnknownEntry(_))));
        assert!(matroid("U24").is_err());
    }

    #[test]
    fn show_lists_distinguished() {
        let text = entry("G6").unwrap().show();
        assert!(text.contains("# distinguished: x=x y=y z=z"));
        assert!(crate::io::parse_matroid(&text).unwrap() == m("G6"));
    }
}
