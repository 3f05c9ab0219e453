//! Multigraphs with loops and parallel edges, their cycle matroids, and
//! exhaustive enumeration of small connected multigraphs.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::matroid::{BinaryMatroid, CanonicalForm, Label};

/// Enumeration refuses bounds above these.
pub const MAX_ENUM_VERTICES: usize = 6;
pub const MAX_ENUM_EDGES: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub label: Label,
}

/// An undirected multigraph. `u == v` is a loop.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    vertices: usize,
    edges: Vec<Edge>,
}

impl TryFrom<RawGraph> for Multigraph {
    type Error = Error;
    fn try_from(raw: RawGraph) -> Result<Self> {
        Multigraph::new(raw.vertices, raw.edges)
    }
}

impl From<Multigraph> for RawGraph {
    fn from(g: Multigraph) -> Self {
        RawGraph {
            vertices: g.vertex_count,
            edges: g.edges,
        }
    }
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = HashSet::new();
        for e in &edges {
            if e.u >= vertex_count || e.v >= vertex_count {
                return Err(Error::OutOfRange(format!(
                    "edge {} joins {} and {} but there are {vertex_count} vertices",
                    e.label, e.u, e.v
                )));
            }
            if !seen.insert(e.label.as_str()) {
                return Err(Error::DuplicateLabel(e.label.to_string()));
            }
        }
        if edges.len() > crate::gf2::MAX_COLUMNS {
            return Err(Error::CapExceeded(format!("{} edges", edges.len())));
        }
        Ok(Self {
            vertex_count,
            edges,
        })
    }

    /// Graph with edges labeled `e0`, `e1`, … in the given order.
    pub fn from_pairs(vertex_count: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let edges = pairs
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| Edge {
                u,
                v,
                label: Label::new(format!("e{i}")).expect("valid"),
            })
            .collect();
        Self::new(vertex_count, edges)
    }

    /// Graph from `(u, v, label)` triples.
    pub fn labeled(vertex_count: usize, edges: &[(usize, usize, &str)]) -> Result<Self> {
        let edges = edges
            .iter()
            .map(|&(u, v, l)| {
                Ok(Edge {
                    u,
                    v,
                    label: Label::new(l)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertex_count, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut count = self.vertex_count;
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Cycle matroid from the vertex-edge incidence matrix over GF(2).
    pub fn cycle_matroid(&self) -> BinaryMatroid {
        let mut rows = vec![0u64; self.vertex_count];
        for (j, e) in self.edges.iter().enumerate() {
            if e.u != e.v {
                rows[e.u] |= 1 << j;
                rows[e.v] |= 1 << j;
            }
        }
        let m = BitMatrix::from_row_bits(rows, self.edges.len()).expect("edges fit a word");
        let labels = self.edges.iter().map(|e| e.label.clone()).collect();
        BinaryMatroid::from_matrix(&m, labels).expect("edge labels are distinct")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Dedup {
    None,
    GraphIso,
    #[default]
    Matroid,
}

impl std::str::FromStr for Dedup {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Dedup::None),
            "graph" | "graph-iso" => Ok(Dedup::GraphIso),
            "matroid" => Ok(Dedup::Matroid),
            other => Err(Error::Malformed(format!("unknown dedup mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumOptions {
    pub max_vertices: usize,
    pub min_edges: usize,
    pub max_edges: usize,
    /// `None` leaves loops unbounded up to the edge budget.
    pub max_loops_per_vertex: Option<usize>,
    /// Bound on the number of edges joining one pair of distinct vertices.
    pub max_multiplicity: Option<usize>,
    pub dedup: Dedup,
}

impl EnumOptions {
    pub fn new(max_vertices: usize, max_edges: usize) -> Self {
        Self {
            max_vertices,
            min_edges: 0,
            max_edges,
            max_loops_per_vertex: None,
            max_multiplicity: None,
            dedup: Dedup::Matroid,
        }
    }
}

/// Vertex pairs `(a, b)` with `a <= b`, in lexicographic order.
fn pair_types(v: usize) -> Vec<(usize, usize)> {
    (0..v).flat_map(|a| (a..v).map(move |b| (a, b))).collect()
}

struct Generator<'a> {
    types: Vec<(usize, usize)>,
    opts: &'a EnumOptions,
    vertices: usize,
    edges: usize,
    current: Vec<usize>,
    out: Vec<Vec<usize>>,
}

impl Generator<'_> {
    fn run(&mut self, start: usize) {
        if self.current.len() == self.edges {
            self.out.push(self.current.clone());
            return;
        }
        for t in start..self.types.len() {
            let used = self.current.iter().rev().take_while(|&&c| c == t).count();
            let (a, b) = self.types[t];
            let limit = if a == b {
                self.opts.max_loops_per_vertex
            } else {
                self.opts.max_multiplicity
            };
            if limit.is_some_and(|l| used >= l) {
                continue;
            }
            self.current.push(t);
            self.run(t);
            self.current.pop();
        }
    }

    fn connected(&self, multiset: &[usize]) -> bool {
        let mut reached = 1u64;
        loop {
            let before = reached;
            for &t in multiset {
                let (a, b) = self.types[t];
                if reached >> a & 1 == 1 || reached >> b & 1 == 1 {
                    reached |= 1 << a | 1 << b;
                }
            }
            if reached == before {
                return reached.count_ones() as usize == self.vertices;
            }
        }
    }
}

/// True when no vertex relabeling gives a lexicographically smaller sorted
/// pair list.
fn is_graph_canonical(pairs: &[(usize, usize)], perms: &[Vec<usize>]) -> bool {
    let mut image = Vec::with_capacity(pairs.len());
    for p in perms {
        image.clear();
        image.extend(pairs.iter().map(|&(a, b)| {
            let (x, y) = (p[a], p[b]);
            (x.min(y), x.max(y))
        }));
        image.sort_unstable();
        if image.as_slice() < pairs {
            return false;
        }
    }
    true
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(p.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, p, out);
            let j = if k % 2 == 0 { i } else { 0 };
            p.swap(j, k - 1);
        }
    }
    heap(n, &mut p, &mut out);
    out
}

/// All connected multigraphs within the bounds, ordered by vertex count, then
/// edge count, then the sorted edge list. Deduplication keeps the first
/// member of each class in that order. Single-vertex graphs are included; the
/// empty graph is not.
pub fn enumerate_connected(opts: &EnumOptions) -> Result<Vec<Multigraph>> {
    if opts.max_vertices > MAX_ENUM_VERTICES || opts.max_edges > MAX_ENUM_EDGES {
        return Err(Error::CapExceeded(format!(
            "enumeration is limited to {MAX_ENUM_VERTICES} vertices and {MAX_ENUM_EDGES} edges"
        )));
    }
    let mut graphs = Vec::new();
    for v in 1..=opts.max_vertices {
        let perms = permutations(v);
        for m in opts.min_edges.max(v - 1)..=opts.max_edges {
            let mut gen = Generator {
                types: pair_types(v),
                opts,
                vertices: v,
                edges: m,
                current: Vec::with_capacity(m),
                out: Vec::new(),
            };
            gen.run(0);
            let candidates = std::mem::take(&mut gen.out);
            let kept: Vec<Vec<(usize, usize)>> = candidates
                .into_par_iter()
                .filter(|c| gen.connected(c))
                .map(|c| c.iter().map(|&t| gen.types[t]).collect::<Vec<_>>())
                .filter(|pairs| {
                    opts.dedup == Dedup::None || is_graph_canonical(pairs, &perms)
                })
                .collect();
            graphs.extend(
                kept.iter()
                    .map(|pairs| Multigraph::from_pairs(v, pairs).expect("in range")),
            );
        }
    }
    if opts.dedup == Dedup::Matroid {
        let forms: Vec<CanonicalForm> = graphs
            .par_iter()
            .map(|g| CanonicalForm::of_columns(g.cycle_matroid().columns()))
            .collect();
        let mut seen = HashSet::new();
        let mut kept = Vec::new();
        for (g, f) in graphs.into_iter().zip(forms) {
            if seen.insert(f) {
                kept.push(g);
            }
        }
        graphs = kept;
    }
    Ok(graphs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(v: usize, min_e: usize, max_e: usize) -> EnumOptions {
        EnumOptions {
            min_edges: min_e,
            ..EnumOptions::new(v, max_e)
        }
    }

    #[test]
    fn cycle_matroid_examples() {
        let tri = Multigraph::from_pairs(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let m = tri.cycle_matroid();
        assert_eq!((m.rank(), m.circuits(None).len()), (2, 1));
        let k4 = Multigraph::from_pairs(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
            .unwrap()
            .cycle_matroid();
        assert_eq!((k4.rank(), k4.circuits(None).len()), (3, 7));
        let loopy = Multigraph::from_pairs(2, &[(0, 0), (0, 1)]).unwrap().cycle_matroid();
        assert_eq!(loopy.loops().len(), 1);
        assert_eq!(loopy.coloops().len(), 1);
    }

    #[test]
    fn doubled_triangle_is_a6() {
        let g = Multigraph::labeled(
            3,
            &[(0, 2, "x"), (1, 2, "y"), (0, 1, "z"), (0, 2, "u"), (1, 2, "v"), (0, 1, "w")],
        )
        .unwrap();
        let m = g.cycle_matroid();
        assert_eq!(m.matrix().row_string(0), "101101");
        assert_eq!(m.matrix().row_string(1), "011011");
    }

    #[test]
    fn rank_is_vertices_minus_components() {
        let g = Multigraph::from_pairs(5, &[(0, 1), (2, 3), (3, 3)]).unwrap();
        assert_eq!(g.component_count(), 3);
        assert_eq!(g.cycle_matroid().rank(), 2);
    }

    #[test]
    fn five_edges_on_three_vertices() {
        let o = EnumOptions {
            max_loops_per_vertex: Some(0),
            max_multiplicity: Some(2),
            ..opts(3, 5, 5)
        };
        assert_eq!(enumerate_connected(&o).unwrap().len(), 1);
        let o6 = EnumOptions {
            min_edges: 6,
            max_edges: 6,
            ..o
        };
        let six = enumerate_connected(&o6).unwrap();
        assert_eq!(six.len(), 1);
        assert_eq!(six[0].cycle_matroid().parallel_classes().len(), 3);
    }

    #[test]
    fn tiny_enumeration_by_hand() {
        // One vertex: 0, 1 or 2 loops. Two vertices: one or two joining edges,
        // or one joining edge plus a loop.
        let o = EnumOptions {
            dedup: Dedup::GraphIso,
            ..opts(2, 0, 2)
        };
        let got: Vec<(usize, Vec<(usize, usize)>)> = enumerate_connected(&o)
            .unwrap()
            .iter()
            .map(|g| (g.vertex_count(), g.edges().iter().map(|e| (e.u, e.v)).collect()))
            .collect();
        assert_eq!(
            got,
            vec![
                (1, vec![]),
                (1, vec![(0, 0)]),
                (1, vec![(0, 0), (0, 0)]),
                (2, vec![(0, 1)]),
                (2, vec![(0, 0), (0, 1)]),
                (2, vec![(0, 1), (0, 1)]),
            ]
        );
        // These six are pairwise distinct as matroids too.
        let matroid_level = enumerate_connected(&opts(2, 0, 2)).unwrap();
        assert_eq!(matroid_level.len(), 6);
    }

    #[test]
    fn enumeration_caps() {
        assert!(enumerate_connected(&EnumOptions::new(7, 3)).is_err());
        assert!(enumerate_connected(&EnumOptions::new(3, 10)).is_err());
    }

    #[test]
    fn dedup_is_a_refinement() {
        let none = enumerate_connected(&EnumOptions {
            dedup: Dedup::None,
            ..opts(3, 0, 4)
        })
        .unwrap();
        let graph = enumerate_connected(&EnumOptions {
            dedup: Dedup::GraphIso,
            ..opts(3, 0, 4)
        })
        .unwrap();
        let matroid = enumerate_connected(&opts(3, 0, 4)).unwrap();
        assert!(none.len() > graph.len() && graph.len() > matroid.len());
        let forms: HashSet<_> = none
            .iter()
            .map(|g| g.cycle_matroid().canonical_form().unwrap())
            .collect();
        assert_eq!(forms.len(), matroid.len());
    }
}
