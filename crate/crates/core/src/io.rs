//! Plain-text formats for matroids and graphs.
//!
//! Matroid: a `r n` header, one line of `n` labels, then `r` rows of `n`
//! characters from `{0,1}`. Graph: a `V E` header then `E` lines `u v label`
//! with 0-based vertices (`u u label` is a loop). Lines starting with `#` are
//! comments everywhere; blank lines are ignored.

use crate::error::{Error, Result};
use crate::gf2::{parse_row, BitMatrix};
use crate::graphs::{Edge, Multigraph};
use crate::matroid::{BinaryMatroid, Label};

/// Reader over the content lines of a document, keeping 1-based line numbers.
pub struct LineCursor<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> LineCursor<'a> {
    pub fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
            .filter(|(_, l)| {
                let t = l.trim_start();
                !t.is_empty() && !t.starts_with('#')
            })
            .collect();
        Self { lines, pos: 0 }
    }

    pub fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    pub fn next_line(&mut self) -> Option<(usize, &'a str)> {
        let l = self.peek()?;
        self.pos += 1;
        Some(l)
    }

    /// Next content line or a parse error naming what was expected.
    pub fn expect(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let last = self.lines.last().map_or(0, |l| l.0);
        self.next_line().ok_or_else(|| Error::Parse {
            line: last + 1,
            message: format!("unexpected end of input, expected {what}"),
        })
    }

    pub fn is_done(&self) -> bool {
        self.pos >= self.lines.len()
    }
}

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_pair(line: usize, text: &str, what: &str) -> Result<(usize, usize)> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.len() != 2 {
        return Err(parse_err(
            line,
            format!("expected `{what}`, found {} fields", tokens.len()),
        ));
    }
    let a = tokens[0]
        .parse()
        .map_err(|_| parse_err(line, format!("bad number {:?}", tokens[0])))?;
    let b = tokens[1]
        .parse()
        .map_err(|_| parse_err(line, format!("bad number {:?}", tokens[1])))?;
    Ok((a, b))
}

fn parse_label(line: usize, text: &str) -> Result<Label> {
    Label::new(text).map_err(|e| parse_err(line, e.to_string()))
}

/// Writes a matroid in the text format, using its normalized representation.
pub fn write_matroid(b: &BinaryMatroid) -> String {
    let m = b.matrix();
    let mut out = format!("{} {}\n", m.row_count(), b.len());
    let names: Vec<&str> = b.labels().iter().map(Label::as_str).collect();
    out.push_str(&names.join(" "));
    out.push('\n');
    for i in 0..m.row_count() {
        out.push_str(&m.row_string(i));
        out.push('\n');
    }
    out
}

/// Reads one matroid block from the cursor.
pub fn read_matroid(cursor: &mut LineCursor<'_>) -> Result<BinaryMatroid> {
    let (line, header) = cursor.expect("matroid header `r n`")?;
    let (r, n) = parse_pair(line, header, "r n")?;
    if n > crate::gf2::MAX_COLUMNS {
        return Err(parse_err(line, format!("{n} columns exceeds the 64-column limit")));
    }
    if n == 0 {
        if r != 0 {
            return Err(parse_err(line, "rows declared for a matroid with no elements"));
        }
        return Ok(BinaryMatroid::empty());
    }
    let (line, label_line) = cursor.expect("label line")?;
    let names: Vec<&str> = label_line.split_whitespace().collect();
    if names.len() != n {
        return Err(parse_err(
            line,
            format!("expected {n} labels, found {}", names.len()),
        ));
    }
    let labels = names
        .iter()
        .map(|s| parse_label(line, s))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::with_capacity(r);
    for _ in 0..r {
        let (line, text) = cursor.expect("matrix row")?;
        rows.push(parse_row(text, n).map_err(|m| parse_err(line, m))?);
    }
    let matrix = BitMatrix::from_row_bits(rows, n)?;
    BinaryMatroid::from_matrix(&matrix, labels).map_err(|e| parse_err(line, e.to_string()))
}

pub fn parse_matroid(text: &str) -> Result<BinaryMatroid> {
    let mut cursor = LineCursor::new(text);
    let b = read_matroid(&mut cursor)?;
    if let Some((line, _)) = cursor.peek() {
        return Err(parse_err(line, "trailing content after matroid"));
    }
    Ok(b)
}

pub fn write_graph(g: &Multigraph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edges().len());
    for e in g.edges() {
        out.push_str(&format!("{} {} {}\n", e.u, e.v, e.label));
    }
    out
}

pub fn read_graph(cursor: &mut LineCursor<'_>) -> Result<Multigraph> {
    let (line, header) = cursor.expect("graph header `V E`")?;
    let (v, e) = parse_pair(line, header, "V E")?;
    let mut edges = Vec::with_capacity(e);
    for _ in 0..e {
        let (line, text) = cursor.expect("edge line `u v label`")?;
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(parse_err(line, "expected `u v label`"));
        }
        let u = tokens[0]
            .parse()
            .map_err(|_| parse_err(line, format!("bad vertex {:?}", tokens[0])))?;
        let w = tokens[1]
            .parse()
            .map_err(|_| parse_err(line, format!("bad vertex {:?}", tokens[1])))?;
        edges.push(Edge {
            u,
            v: w,
            label: parse_label(line, tokens[2])?,
        });
    }
    Multigraph::new(v, edges).map_err(|err| parse_err(line, err.to_string()))
}

pub fn parse_graph(text: &str) -> Result<Multigraph> {
    let mut cursor = LineCursor::new(text);
    let g = read_graph(&mut cursor)?;
    if let Some((line, _)) = cursor.peek() {
        return Err(parse_err(line, "trailing content after graph"));
    }
    Ok(g)
}

/// A document that is either a matroid or a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Matroid(BinaryMatroid),
    Graph(Multigraph),
}

impl Document {
    pub fn into_matroid(self) -> BinaryMatroid {
        match self {
            Document::Matroid(b) => b,
            Document::Graph(g) => g.cycle_matroid(),
        }
    }
}

/// Parses a matroid, falling back to the graph format. The matroid error is
/// reported when neither parse succeeds.
pub fn parse_document(text: &str) -> Result<Document> {
    match parse_matroid(text) {
        Ok(b) => Ok(Document::Matroid(b)),
        Err(matroid_err) => parse_graph(text)
            .map(Document::Graph)
            .map_err(|_| matroid_err),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matroid_round_trip() {
        let text = "2 6\nx y z u v w\n101101\n011011\n";
        let b = parse_matroid(text).unwrap();
        assert_eq!(write_matroid(&b), text);
        let empty = parse_matroid("0 0\n").unwrap();
        assert_eq!(empty, BinaryMatroid::empty());
        assert_eq!(parse_matroid(&write_matroid(&empty)).unwrap(), empty);
    }

    #[test]
    fn matroid_normalizes_on_read() {
        let b = parse_matroid("# comment\n3 2\na b\n11\n11\n00\n").unwrap();
        assert_eq!(write_matroid(&b), "1 2\na b\n11\n");
    }

    #[test]
    fn matroid_rejects_bad_dimensions() {
        for (bad, line) in [
            ("2 3\na b c\n101\n", 4),
            ("1 3\na b\n101\n", 2),
            ("1 3\na b c\n1012\n", 3),
            ("1 2 3\n", 1),
            ("1 0\n", 1),
            ("1 2\na a\n11\n", 2),
        ] {
            match parse_matroid(bad) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{bad:?}"),
                other => panic!("{bad:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn graph_round_trip() {
        let text = "3 4\n0 1 a\n1 2 b\n0 2 c\n2 2 l\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(write_graph(&g), text);
        assert!(parse_graph("2 1\n0 5 a\n").is_err());
    }

    #[test]
    fn document_detection() {
        assert!(matches!(
            parse_document("3 2\n0 1 a\n1 2 b\n").unwrap(),
            Document::Graph(_)
        ));
        assert!(matches!(
            parse_document("2 3\na b c\n101\n011\n").unwrap(),
            Document::Matroid(_)
        ));
        assert!(matches!(
            parse_document("2 3\n0 1 a\n0 1 b\n0 1 c\n").unwrap(),
            Document::Graph(_)
        ));
    }
}
