//! Binary matroids carried by a normalized GF(2) representation with one label
//! per column.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::canon;
use crate::error::{Error, Result};
use crate::gf2::{rank_of_mask, BitMatrix};

/// Canonical forms are only guaranteed up to this ground-set size.
pub const CANONICAL_FORM_CAP: usize = 12;

/// Name of one ground-set element.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Label(String);

impl Label {
    /// Labels are non-empty and avoid whitespace and the separators used by the
    /// text formats (`,` `=` `#` `{` `}`).
    pub fn new(text: impl Into<String>) -> Result<Self> {
        let text = text.into();
        let bad = text.is_empty()
            || text
                .chars()
                .any(|c| c.is_whitespace() || matches!(c, ',' | '=' | '#' | '{' | '}'));
        if bad {
            return Err(Error::InvalidLabel(text));
        }
        Ok(Label(text))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for Label {
    type Error = Error;
    fn try_from(value: String) -> Result<Self> {
        Label::new(value)
    }
}

impl From<Label> for String {
    fn from(value: Label) -> Self {
        value.0
    }
}

impl AsRef<str> for Label {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Builds labels from string slices; panics on invalid text. Test and catalog helper.
pub fn labels(names: &[&str]) -> Vec<Label> {
    names
        .iter()
        .map(|n| Label::new(*n).expect("valid label"))
        .collect()
}

/// A binary matroid: the column matroid of a GF(2) matrix with labeled columns.
///
/// The stored matrix is always in reduced row echelon form without zero rows, so
/// its row count is the rank and two equal labeled matroids have equal matrices.
#[derive(Clone)]
pub struct BinaryMatroid {
    labels: Vec<Label>,
    matrix: BitMatrix,
    columns: Vec<u64>,
    circuits: OnceLock<Vec<u64>>,
}

impl PartialEq for BinaryMatroid {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.matrix == other.matrix
    }
}

impl Eq for BinaryMatroid {}

impl fmt::Debug for BinaryMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BinaryMatroid")
            .field("labels", &self.labels)
            .field("matrix", &self.matrix)
            .finish()
    }
}

fn check_labels(labels: &[Label]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.to_string()));
        }
    }
    Ok(())
}

impl BinaryMatroid {
    /// Column matroid of `matrix`; the representation is row-reduced, column
    /// order and labels are kept.
    pub fn from_matrix(matrix: &BitMatrix, labels: Vec<Label>) -> Result<Self> {
        if labels.len() != matrix.col_count() {
            return Err(Error::Malformed(format!(
                "{} labels for {} columns",
                labels.len(),
                matrix.col_count()
            )));
        }
        check_labels(&labels)?;
        let (reduced, _) = matrix.rref();
        Ok(Self::from_reduced(reduced, labels))
    }

    fn from_reduced(matrix: BitMatrix, labels: Vec<Label>) -> Self {
        let columns = matrix.columns();
        Self {
            labels,
            matrix,
            columns,
            circuits: OnceLock::new(),
        }
    }

    /// Matroid whose element `j` is the packed vector `columns[j]`.
    #[cfg(test)]
    pub(crate) fn from_columns(columns: &[u64], labels: Vec<Label>) -> Result<Self> {
        let rows = columns
            .iter()
            .map(|c| 64 - c.leading_zeros() as usize)
            .max()
            .unwrap_or(0);
        let m = BitMatrix::from_column_bits(columns, rows)?;
        Self::from_matrix(&m, labels)
    }

    /// The rank-0 matroid on the empty set.
    pub fn empty() -> Self {
        Self::from_reduced(BitMatrix::zeros(0, 0).expect("empty"), Vec::new())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.matrix.row_count()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Normalized representation (reduced row echelon form, no zero rows).
    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    /// Packed column vectors of the normalized representation.
    pub fn columns(&self) -> &[u64] {
        &self.columns
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.as_str() == label)
    }

    /// Element mask of a label set.
    pub fn mask_of<S: AsRef<str>>(&self, set: &[S]) -> Result<u64> {
        set.iter().try_fold(0u64, |acc, s| {
            self.index_of(s.as_ref())
                .map(|i| acc | 1 << i)
                .ok_or_else(|| Error::UnknownLabel(s.as_ref().to_string()))
        })
    }

    pub fn labels_of(&self, mask: u64) -> Vec<Label> {
        (0..self.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.labels[i].clone())
            .collect()
    }

    pub(crate) fn full_mask(&self) -> u64 {
        crate::gf2::low_mask(self.len())
    }

    /// Rank of a set of elements given as a mask.
    pub fn rank_of(&self, mask: u64) -> usize {
        rank_of_mask(&self.columns, mask)
    }

    /// Same matroid with the labels replaced positionally.
    pub fn with_labels(&self, labels: Vec<Label>) -> Result<Self> {
        Self::from_matrix(&self.matrix, labels)
    }

    /// Deletes the listed elements.
    pub fn delete<S: AsRef<str>>(&self, set: &[S]) -> Result<Self> {
        let mask = self.mask_of(set)?;
        Ok(self.delete_mask(mask))
    }

    pub(crate) fn delete_mask(&self, mask: u64) -> Self {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| mask >> i & 1 == 0).collect();
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let (reduced, _) = self.matrix.select_columns(&keep).rref();
        Self::from_reduced(reduced, labels)
    }

    /// Contracts the listed elements. Loops among them are deleted; every other
    /// element is contracted by pivoting on one of its nonzero entries.
    pub fn contract<S: AsRef<str>>(&self, set: &[S]) -> Result<Self> {
        let mask = self.mask_of(set)?;
        Ok(self.contract_mask(mask))
    }

    pub(crate) fn contract_mask(&self, mask: u64) -> Self {
        let mut matrix = self.matrix.clone();
        let mut labels = self.labels.clone();
        for label in self.labels_of(mask) {
            let col = labels.iter().position(|l| *l == label).expect("present");
            let pivot_row = (0..matrix.row_count()).find(|&r| matrix.get(r, col));
            matrix = match pivot_row {
                Some(r) => matrix.pivot_eliminate(r, col).expect("nonzero pivot"),
                None => {
                    let keep: Vec<usize> = (0..matrix.col_count()).filter(|&c| c != col).collect();
                    matrix.select_columns(&keep)
                }
            };
            labels.remove(col);
        }
        let (reduced, _) = matrix.rref();
        Self::from_reduced(reduced, labels)
    }

    /// `self \ deleted / contracted`.
    pub fn minor<S: AsRef<str>>(&self, deleted: &[S], contracted: &[S]) -> Result<Self> {
        let d = self.mask_of(deleted)?;
        let c = self.mask_of(contracted)?;
        if d & c != 0 {
            return Err(Error::Precondition(
                "deleted and contracted sets overlap".into(),
            ));
        }
        let after = self.contract_mask(c);
        after.delete(&self.labels_of(d))
    }

    /// Dual matroid on the same labels. Rows of the dual representation span the
    /// cycle space of this one.
    pub fn dual(&self) -> Self {
        let n = self.len();
        let pivots = pivot_columns(&self.matrix);
        let non_pivots: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        // For a non-pivot column j, the row is column j of A placed on the pivot
        // columns plus a one at j.
        let rows: Vec<u64> = non_pivots
            .iter()
            .map(|&j| {
                let mut row = 1u64 << j;
                for (i, &p) in pivots.iter().enumerate() {
                    if self.matrix.get(i, j) {
                        row |= 1 << p;
                    }
                }
                row
            })
            .collect();
        let m = BitMatrix::from_row_bits(rows, n).expect("width unchanged");
        let (reduced, _) = m.rref();
        Self::from_reduced(reduced, self.labels.clone())
    }

    pub(crate) fn circuit_masks(&self) -> &[u64] {
        self.circuits
            .get_or_init(|| canon::circuits(&self.columns, None))
    }

    /// All circuits of size at most `max_size` (no bound when `None`).
    pub fn circuits(&self, max_size: Option<usize>) -> CircuitSet {
        let limit = max_size.unwrap_or(usize::MAX);
        CircuitSet {
            ground: self.labels.clone(),
            masks: self
                .circuit_masks()
                .iter()
                .copied()
                .filter(|m| m.count_ones() as usize <= limit)
                .collect(),
        }
    }

    pub fn cocircuits(&self, max_size: Option<usize>) -> CircuitSet {
        self.dual().circuits(max_size)
    }

    pub(crate) fn loop_mask(&self) -> u64 {
        self.columns
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 0)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    pub(crate) fn coloop_mask(&self) -> u64 {
        let full = self.full_mask();
        (0..self.len())
            .filter(|&i| self.rank_of(full & !(1u64 << i)) < self.rank())
            .fold(0, |acc, i| acc | 1 << i)
    }

    pub fn loops(&self) -> Vec<Label> {
        self.labels_of(self.loop_mask())
    }

    /// Elements lying in no circuit.
    pub fn coloops(&self) -> Vec<Label> {
        self.labels_of(self.coloop_mask())
    }

    pub(crate) fn parallel_class_masks(&self) -> Vec<u64> {
        parallel_classes_of(&self.columns)
    }

    /// Non-loop elements grouped by equal columns, in order of first appearance.
    pub fn parallel_classes(&self) -> Vec<Vec<Label>> {
        self.parallel_class_masks()
            .into_iter()
            .map(|m| self.labels_of(m))
            .collect()
    }

    /// True when some cocircuit has exactly two elements.
    pub fn has_2_cocircuit(&self) -> bool {
        self.dual()
            .parallel_class_masks()
            .iter()
            .any(|m| m.count_ones() >= 2)
    }

    pub fn fingerprint(&self) -> Fingerprint {
        Fingerprint::of_columns(&self.columns, self.circuit_masks())
    }

    /// Canonical byte string: equal exactly for isomorphic matroids.
    pub fn canonical_form(&self) -> Result<CanonicalForm> {
        if self.len() > CANONICAL_FORM_CAP {
            return Err(Error::CapExceeded(format!(
                "canonical form needs at most {CANONICAL_FORM_CAP} elements, got {}",
                self.len()
            )));
        }
        Ok(CanonicalForm(canon::canonical(&self.columns).code))
    }

    /// A label bijection carrying the circuits of `self` onto those of `other`,
    /// if one exists.
    pub fn isomorphic(&self, other: &BinaryMatroid) -> Option<IsoCertificate> {
        if self.len() != other.len() || self.rank() != other.rank() {
            return None;
        }
        if self.fingerprint() != other.fingerprint() {
            return None;
        }
        let a = canon::canonical(&self.columns);
        let b = canon::canonical(&other.columns);
        if a.code != b.code {
            return None;
        }
        let pairs = a
            .order
            .iter()
            .zip(&b.order)
            .map(|(&i, &j)| (self.labels[i].clone(), other.labels[j].clone()))
            .collect();
        Some(IsoCertificate { pairs })
    }

    /// Appends one element with the given column, expressed in the rows of the
    /// normalized representation.
    pub fn extend(&self, label: Label, column: u64) -> Result<Self> {
        if self.index_of(label.as_str()).is_some() {
            return Err(Error::DuplicateLabel(label.to_string()));
        }
        if column >> self.rank() != 0 {
            return Err(Error::OutOfRange(format!(
                "column has entries beyond rank {}",
                self.rank()
            )));
        }
        let entries: Vec<bool> = (0..self.rank()).map(|i| column >> i & 1 == 1).collect();
        let m = self.matrix.append_column(&entries)?;
        let mut labels = self.labels.clone();
        labels.push(label);
        Self::from_matrix(&m, labels)
    }

    /// A label of the form `base`, `base1`, `base2`, … not yet in the ground set.
    pub fn fresh_label(&self, base: &str) -> Label {
        std::iter::once(base.to_string())
            .chain((1..).map(|i| format!("{base}{i}")))
            .find(|cand| self.index_of(cand).is_none())
            .map(|s| Label::new(s).expect("valid base"))
            .expect("unbounded")
    }
}

pub(crate) fn pivot_columns(m: &BitMatrix) -> Vec<usize> {
    (0..m.row_count())
        .map(|r| m.rows()[r].trailing_zeros() as usize)
        .collect()
}

pub(crate) fn parallel_classes_of(columns: &[u64]) -> Vec<u64> {
    let mut classes: Vec<(u64, u64)> = Vec::new();
    for (i, &c) in columns.iter().enumerate() {
        if c == 0 {
            continue;
        }
        match classes.iter_mut().find(|(v, _)| *v == c) {
            Some((_, mask)) => *mask |= 1 << i,
            None => classes.push((c, 1 << i)),
        }
    }
    classes.into_iter().map(|(_, m)| m).collect()
}

/// Cheap isomorphism invariants used to reject candidates before a full test.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub elements: usize,
    pub rank: usize,
    pub loops: usize,
    /// Sizes of the parallel classes, largest first.
    pub parallel_profile: Vec<usize>,
    /// Number of circuits of sizes 1 through 4.
    pub small_circuits: [usize; 4],
}

impl Fingerprint {
    pub(crate) fn of_columns(columns: &[u64], circuits: &[u64]) -> Self {
        let mut profile: Vec<usize> = parallel_classes_of(columns)
            .iter()
            .map(|m| m.count_ones() as usize)
            .collect();
        profile.sort_unstable_by(|a, b| b.cmp(a));
        let mut small = [0usize; 4];
        for c in circuits {
            let k = c.count_ones() as usize;
            if (1..=4).contains(&k) {
                small[k - 1] += 1;
            }
        }
        Fingerprint {
            elements: columns.len(),
            rank: canon::rank(columns),
            loops: columns.iter().filter(|&&c| c == 0).count(),
            parallel_profile: profile,
            small_circuits: small,
        }
    }
}

/// Isomorphism invariant byte string.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(pub(crate) Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub(crate) fn of_columns(columns: &[u64]) -> Self {
        CanonicalForm(canon::canonical(columns).code)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({self})")
    }
}

/// The circuits of a matroid over a fixed ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitSet {
    ground: Vec<Label>,
    masks: Vec<u64>,
}

impl CircuitSet {
    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    /// Circuits as label lists in ground-set order.
    pub fn sets(&self) -> Vec<Vec<Label>> {
        self.masks
            .iter()
            .map(|&m| {
                (0..self.ground.len())
                    .filter(|&i| m >> i & 1 == 1)
                    .map(|i| self.ground[i].clone())
                    .collect()
            })
            .collect()
    }

    /// `histogram[k]` is the number of circuits with `k` elements.
    pub fn size_histogram(&self) -> Vec<usize> {
        let mut hist = vec![0; self.ground.len() + 1];
        for m in &self.masks {
            hist[m.count_ones() as usize] += 1;
        }
        hist
    }
}

/// A matroid given only by its circuits; used for non-binary minor targets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitMatroid {
    pub name: String,
    pub labels: Vec<Label>,
    pub rank: usize,
    /// Circuits as element masks, sorted.
    pub circuits: Vec<u64>,
}

impl CircuitMatroid {
    /// The uniform matroid U_{r,n}: every (r+1)-subset is a circuit.
    pub fn uniform(rank: usize, n: usize) -> Self {
        let labels = (1..=n)
            .map(|i| Label::new(format!("u{i}")).expect("valid"))
            .collect();
        let mut circuits: Vec<u64> = (0u64..1 << n)
            .filter(|m| m.count_ones() as usize == rank + 1)
            .collect();
        circuits.sort_unstable();
        CircuitMatroid {
            name: format!("U{rank}{n}"),
            labels,
            rank,
            circuits,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn loops(&self) -> usize {
        self.circuits.iter().filter(|c| c.count_ones() == 1).count()
    }

    /// Parallel classes from the 2-circuits, largest first (singletons included).
    pub fn parallel_profile(&self) -> Vec<usize> {
        let loops: u64 = self
            .circuits
            .iter()
            .filter(|c| c.count_ones() == 1)
            .fold(0, |a, c| a | c);
        let mut assigned = loops;
        let mut profile = Vec::new();
        for i in 0..self.len() {
            if assigned >> i & 1 == 1 {
                continue;
            }
            let mut class = 1u64 << i;
            for c in self.circuits.iter().filter(|c| c.count_ones() == 2) {
                if c >> i & 1 == 1 {
                    class |= c;
                }
            }
            assigned |= class;
            profile.push(class.count_ones() as usize);
        }
        profile.sort_unstable_by(|a, b| b.cmp(a));
        profile
    }
}

/// A bijection between two ground sets claimed to preserve circuits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoCertificate {
    pub pairs: Vec<(Label, Label)>,
}

impl IsoCertificate {
    pub fn identity(b: &BinaryMatroid) -> Self {
        IsoCertificate {
            pairs: b.labels.iter().map(|l| (l.clone(), l.clone())).collect(),
        }
    }

    pub fn as_map(&self) -> BTreeMap<&Label, &Label> {
        self.pairs.iter().map(|(a, b)| (a, b)).collect()
    }

    /// Index permutation `source index -> target index`, if the pairs form a
    /// bijection between the two ground sets.
    fn index_map(&self, from: &[Label], to: &[Label]) -> Option<Vec<usize>> {
        if self.pairs.len() != from.len() || from.len() != to.len() {
            return None;
        }
        let mut map = vec![usize::MAX; from.len()];
        let mut used = vec![false; to.len()];
        for (a, b) in &self.pairs {
            let i = from.iter().position(|l| l == a)?;
            let j = to.iter().position(|l| l == b)?;
            if map[i] != usize::MAX || used[j] {
                return None;
            }
            map[i] = j;
            used[j] = true;
        }
        Some(map)
    }

    fn circuits_match(map: &[usize], source: &[u64], target: &[u64]) -> bool {
        let mut image: Vec<u64> = source
            .iter()
            .map(|&c| {
                (0..map.len())
                    .filter(|&i| c >> i & 1 == 1)
                    .fold(0u64, |acc, i| acc | 1 << map[i])
            })
            .collect();
        image.sort_unstable();
        let mut target = target.to_vec();
        target.sort_unstable();
        image == target
    }

    /// Checks that the bijection maps the circuits of `from` exactly onto those of `to`.
    pub fn verify(&self, from: &BinaryMatroid, to: &BinaryMatroid) -> bool {
        match self.index_map(&from.labels, &to.labels) {
            Some(map) => Self::circuits_match(&map, from.circuit_masks(), to.circuit_masks()),
            None => false,
        }
    }

    pub fn verify_against_circuits(&self, from: &BinaryMatroid, to: &CircuitMatroid) -> bool {
        match self.index_map(&from.labels, &to.labels) {
            Some(map) => Self::circuits_match(&map, from.circuit_masks(), &to.circuits),
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> BinaryMatroid {
        let m = BitMatrix::from_strings(&["100101", "010110", "001011"], 6).unwrap();
        BinaryMatroid::from_matrix(&m, labels(&["a", "b", "c", "d", "e", "f"])).unwrap()
    }

    fn a6() -> BinaryMatroid {
        let m = BitMatrix::from_strings(&["101101", "011011"], 6).unwrap();
        BinaryMatroid::from_matrix(&m, labels(&["x", "y", "z", "u", "v", "w"])).unwrap()
    }

    #[test]
    fn construction_examples() {
        let q4 = a6();
        assert_eq!((q4.len(), q4.rank()), (6, 2));
        let empty = BinaryMatroid::from_matrix(&BitMatrix::zeros(0, 0).unwrap(), vec![]).unwrap();
        assert_eq!((empty.len(), empty.rank()), (0, 0));
        assert_eq!(k4().circuits(None).len(), 7);
    }

    #[test]
    fn construction_errors() {
        let m = BitMatrix::identity(2).unwrap();
        assert_eq!(
            BinaryMatroid::from_matrix(&m, labels(&["a", "a"])),
            Err(Error::DuplicateLabel("a".into()))
        );
        assert!(BinaryMatroid::from_matrix(&m, labels(&["a"])).is_err());
        assert!(Label::new("a b").is_err());
        assert!(Label::new("").is_err());
    }

    #[test]
    fn delete_examples() {
        let k = k4();
        assert_eq!(k.delete::<&str>(&[]).unwrap(), k);
        let q = a6().delete(&["x"]).unwrap();
        assert_eq!((q.len(), q.rank()), (5, 2));
        let mut sizes: Vec<usize> = q.parallel_classes().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 2]);
        let all = k.delete(&["a", "b", "c", "d", "e", "f"]).unwrap();
        assert_eq!((all.len(), all.rank()), (0, 0));
        assert_eq!(k.delete(&["zz"]), Err(Error::UnknownLabel("zz".into())));
    }

    #[test]
    fn contract_examples() {
        let with_loop = k4().extend(Label::new("l").unwrap(), 0).unwrap();
        assert_eq!(
            with_loop.contract(&["l"]).unwrap(),
            with_loop.delete(&["l"]).unwrap()
        );
        let g7 = k4().contract(&["a"]).unwrap();
        assert_eq!((g7.len(), g7.rank()), (5, 2));
        let mut sizes: Vec<usize> = g7.parallel_classes().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 2]);
        assert_eq!(k4().contract::<&str>(&[]).unwrap(), k4());
    }

    #[test]
    fn dual_examples() {
        let loops = BinaryMatroid::from_matrix(
            &BitMatrix::zeros(0, 3).unwrap(),
            labels(&["a", "b", "c"]),
        )
        .unwrap();
        let d = loops.dual();
        assert_eq!(d.rank(), 3);
        assert_eq!(d.coloops().len(), 3);
        let k = k4();
        assert!(k.dual().isomorphic(&k).is_some());
        assert_eq!(k.dual().dual(), k);
    }

    #[test]
    fn loops_coloops_parallel() {
        let id = BinaryMatroid::from_matrix(&BitMatrix::identity(3).unwrap(), labels(&["a", "b", "c"]))
            .unwrap();
        assert!(id.loops().is_empty());
        assert_eq!(id.coloops().len(), 3);
        assert!(id.circuits(None).is_empty());
        let q4 = a6();
        assert!(q4.loops().is_empty());
        assert_eq!(q4.parallel_classes(), vec![
            labels(&["x", "u"]),
            labels(&["y", "v"]),
            labels(&["z", "w"]),
        ]);
    }

    #[test]
    fn two_cocircuits() {
        assert!(!k4().has_2_cocircuit());
        assert!(!BinaryMatroid::empty().has_2_cocircuit());
        // 4-cycle: U_{3,4}; opposite edges form 2-cocircuits.
        let m = BitMatrix::from_strings(&["1001", "0101", "0011"], 4).unwrap();
        let c4 = BinaryMatroid::from_matrix(&m, labels(&["a", "b", "c", "d"])).unwrap();
        assert!(c4.has_2_cocircuit());
    }

    #[test]
    fn isomorphism_and_canonical_forms() {
        let k = k4();
        let cert = k.isomorphic(&k).unwrap();
        assert!(cert.verify(&k, &k));
        assert!(k.isomorphic(&a6()).is_none());
        let relabeled = k.with_labels(labels(&["p", "q", "r", "s", "t", "u"])).unwrap();
        assert_eq!(k.canonical_form(), relabeled.canonical_form());
        let fano = BinaryMatroid::from_columns(&(1..8).collect::<Vec<_>>(), labels(&["1", "2", "3", "4", "5", "6", "7"])).unwrap();
        assert_ne!(k.canonical_form(), fano.canonical_form());
    }

    #[test]
    fn corrupted_certificate_fails() {
        let k = k4();
        let mut cert = IsoCertificate::identity(&k);
        // a and b share the triangle {a,b,d} but {a,c,e} is not a circuit.
        let first = cert.pairs[0].1.clone();
        cert.pairs[0].1 = cert.pairs[1].1.clone();
        cert.pairs[1].1 = first;
        assert!(!cert.verify(&k, &k));
        cert.pairs[1].1 = cert.pairs[0].1.clone();
        assert!(!cert.verify(&k, &k));
    }

    #[test]
    fn fresh_labels_avoid_collisions() {
        let b = BinaryMatroid::from_matrix(&BitMatrix::identity(2).unwrap(), labels(&["q", "q1"])).unwrap();
        assert_eq!(b.fresh_label("q").as_str(), "q2");
        assert_eq!(b.fresh_label("gamma").as_str(), "gamma");
    }

    #[test]
    fn canonical_cap() {
        let cols: Vec<u64> = (0..13).map(|i| 1u64 << (i % 5)).collect();
        let names: Vec<String> = (0..13).map(|i| format!("e{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let b = BinaryMatroid::from_columns(&cols, labels(&refs)).unwrap();
        assert!(matches!(b.canonical_form(), Err(Error::CapExceeded(_))));
    }
}
