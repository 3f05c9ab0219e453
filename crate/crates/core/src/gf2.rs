//! Dense GF(2) matrices with one machine word per row.
//!
//! Column `j` of a row lives in bit `j` of that row's `u64`, so a matrix has at
//! most [`MAX_COLUMNS`] columns. Every operation returns a fresh matrix; nothing
//! here reorders columns.

use std::fmt;

use crate::error::{Error, Result};

/// Upper bound on the number of columns a [`BitMatrix`] can hold.
pub const MAX_COLUMNS: usize = 64;

#[inline]
pub(crate) fn low_mask(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// A GF(2) matrix stored row-major, one `u64` per row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: Vec<u64>,
    cols: usize,
}

impl BitMatrix {
    /// All-zero matrix.
    pub fn zeros(row_count: usize, col_count: usize) -> Result<Self> {
        Self::check_width(col_count)?;
        Ok(Self {
            rows: vec![0; row_count],
            cols: col_count,
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::check_width(n)?;
        Ok(Self {
            rows: (0..n).map(|i| 1u64 << i).collect(),
            cols: n,
        })
    }

    /// Builds a matrix from packed rows. Bits at or beyond `col_count` must be clear.
    pub fn from_row_bits(rows: Vec<u64>, col_count: usize) -> Result<Self> {
        Self::check_width(col_count)?;
        let mask = low_mask(col_count);
        if let Some(pos) = rows.iter().position(|r| r & !mask != 0) {
            return Err(Error::Malformed(format!(
                "row {pos} has bits set beyond column {col_count}"
            )));
        }
        Ok(Self {
            rows,
            cols: col_count,
        })
    }

    /// Builds a matrix from rows of `0`/`1` characters, e.g. `["101", "011"]`.
    pub fn from_strings<S: AsRef<str>>(rows: &[S], col_count: usize) -> Result<Self> {
        Self::check_width(col_count)?;
        let mut packed = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            packed.push(parse_row(row.as_ref(), col_count).map_err(|msg| {
                Error::Malformed(format!("row {i}: {msg}"))
            })?);
        }
        Ok(Self {
            rows: packed,
            cols: col_count,
        })
    }

    /// Builds a matrix whose columns are the given packed column vectors
    /// (bit `i` of a column is its entry in row `i`).
    pub fn from_column_bits(columns: &[u64], row_count: usize) -> Result<Self> {
        Self::check_width(columns.len())?;
        if row_count > 64 {
            return Err(Error::CapExceeded(format!(
                "{row_count} rows exceeds the 64-row column packing"
            )));
        }
        let mut rows = vec![0u64; row_count];
        for (j, &col) in columns.iter().enumerate() {
            if col & !low_mask(row_count) != 0 {
                return Err(Error::Malformed(format!(
                    "column {j} has entries beyond row {row_count}"
                )));
            }
            for (i, row) in rows.iter_mut().enumerate() {
                if col >> i & 1 == 1 {
                    *row |= 1 << j;
                }
            }
        }
        Ok(Self {
            rows,
            cols: columns.len(),
        })
    }

    fn check_width(col_count: usize) -> Result<()> {
        if col_count > MAX_COLUMNS {
            return Err(Error::CapExceeded(format!(
                "{col_count} columns exceeds the {MAX_COLUMNS}-column limit"
            )));
        }
        Ok(())
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    /// Packed rows; bit `j` of each word is column `j`.
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.rows[row] >> col & 1 == 1
    }

    /// Column `col` packed with row `i` in bit `i`. Only meaningful for at most 64 rows.
    pub fn column_bits(&self, col: usize) -> u64 {
        debug_assert!(self.rows.len() <= 64);
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, row)| acc | (row >> col & 1) << i)
    }

    /// Packed column vectors for every column.
    pub fn columns(&self) -> Vec<u64> {
        (0..self.cols).map(|c| self.column_bits(c)).collect()
    }

    /// GF(2) row rank.
    pub fn rank(&self) -> usize {
        let mut basis = [0u64; 64];
        let mut rank = 0;
        for &row in &self.rows {
            let mut v = row;
            while v != 0 {
                let lead = 63 - v.leading_zeros() as usize;
                if basis[lead] == 0 {
                    basis[lead] = v;
                    rank += 1;
                    break;
                }
                v ^= basis[lead];
            }
        }
        rank
    }

    /// Reduced row echelon form with zero rows dropped, plus the pivot columns in
    /// increasing order. The row space is unchanged.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            let bit = 1u64 << col;
            let Some(found) = (next..rows.len()).find(|&r| rows[r] & bit != 0) else {
                continue;
            };
            rows.swap(next, found);
            let pivot_row = rows[next];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && *row & bit != 0 {
                    *row ^= pivot_row;
                }
            }
            pivots.push(col);
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        rows.truncate(next);
        (
            BitMatrix {
                rows,
                cols: self.cols,
            },
            pivots,
        )
    }

    /// Clears column `col` outside row `row` using that row, then drops both.
    pub fn pivot_eliminate(&self, row: usize, col: usize) -> Result<BitMatrix> {
        if row >= self.rows.len() || col >= self.cols {
            return Err(Error::OutOfRange(format!(
                "pivot ({row}, {col}) outside a {}x{} matrix",
                self.rows.len(),
                self.cols
            )));
        }
        if !self.get(row, col) {
            return Err(Error::ZeroPivot { row, col });
        }
        let pivot_row = self.rows[row];
        let rows = self
            .rows
            .iter()
            .enumerate()
            .filter(|&(r, _)| r != row)
            .map(|(_, &v)| {
                let v = if v >> col & 1 == 1 { v ^ pivot_row } else { v };
                remove_bit(v, col)
            })
            .collect();
        Ok(BitMatrix {
            rows,
            cols: self.cols - 1,
        })
    }

    /// Appends a final row with ones exactly in `support`.
    pub fn append_row(&self, support: &[usize]) -> Result<BitMatrix> {
        let mut row = 0u64;
        for &c in support {
            if c >= self.cols {
                return Err(Error::OutOfRange(format!(
                    "column {c} outside {} columns",
                    self.cols
                )));
            }
            row |= 1 << c;
        }
        let mut rows = self.rows.clone();
        rows.push(row);
        Ok(BitMatrix {
            rows,
            cols: self.cols,
        })
    }

    /// Appends a final column with the given entries, one per row.
    pub fn append_column(&self, entries: &[bool]) -> Result<BitMatrix> {
        if entries.len() != self.rows.len() {
            return Err(Error::Malformed(format!(
                "column has {} entries for {} rows",
                entries.len(),
                self.rows.len()
            )));
        }
        Self::check_width(self.cols + 1)?;
        let rows = self
            .rows
            .iter()
            .zip(entries)
            .map(|(&r, &e)| r | (e as u64) << self.cols)
            .collect();
        Ok(BitMatrix {
            rows,
            cols: self.cols + 1,
        })
    }

    /// Keeps the listed columns, in the listed order.
    pub fn select_columns(&self, keep: &[usize]) -> BitMatrix {
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                keep.iter()
                    .enumerate()
                    .fold(0u64, |acc, (new, &old)| acc | (r >> old & 1) << new)
            })
            .collect();
        BitMatrix {
            rows,
            cols: keep.len(),
        }
    }

    pub fn transpose(&self) -> Result<BitMatrix> {
        Self::check_width(self.rows.len())?;
        let rows = (0..self.cols).map(|c| self.column_bits(c)).collect();
        Ok(BitMatrix {
            rows,
            cols: self.rows.len(),
        })
    }

    /// Row `i` as a string of `0`/`1` characters.
    pub fn row_string(&self, i: usize) -> String {
        (0..self.cols)
            .map(|c| if self.get(i, c) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix({}x{}", self.rows.len(), self.cols)?;
        for i in 0..self.rows.len() {
            write!(f, " {}", self.row_string(i))?;
        }
        write!(f, ")")
    }
}

pub(crate) fn parse_row(row: &str, col_count: usize) -> std::result::Result<u64, String> {
    let row = row.trim();
    if row.chars().count() != col_count {
        return Err(format!(
            "expected {col_count} entries, found {}",
            row.chars().count()
        ));
    }
    let mut bits = 0u64;
    for (j, ch) in row.chars().enumerate() {
        match ch {
            '0' => {}
            '1' => bits |= 1 << j,
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok(bits)
}

/// Drops bit `pos`, shifting higher bits down by one.
#[inline]
pub(crate) fn remove_bit(v: u64, pos: usize) -> u64 {
    let low = v & low_mask(pos);
    let high = if pos >= 63 { 0 } else { (v >> (pos + 1)) << pos };
    low | high
}

/// Incremental xor basis keyed by leading bit, used for rank and span tests on
/// packed column vectors.
#[derive(Clone, Debug)]
pub(crate) struct XorBasis {
    slots: [u64; 64],
    len: usize,
}

impl XorBasis {
    pub fn new() -> Self {
        XorBasis {
            slots: [0; 64],
            len: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn reduce(&self, mut v: u64) -> u64 {
        while v != 0 {
            let lead = 63 - v.leading_zeros() as usize;
            if self.slots[lead] == 0 {
                break;
            }
            v ^= self.slots[lead];
        }
        v
    }

    /// Fully reduces `v`: the result has no bit at any basis leading position.
    pub fn reduce_full(&self, v: u64) -> u64 {
        let mut v = v;
        for lead in (0..64).rev() {
            if v >> lead & 1 == 1 && self.slots[lead] != 0 {
                v ^= self.slots[lead];
            }
        }
        v
    }

    /// Inserts `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: u64) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        let lead = 63 - r.leading_zeros() as usize;
        self.slots[lead] = r;
        self.len += 1;
        true
    }
}

/// Rank of the column vectors selected by `mask`.
pub(crate) fn rank_of_mask(columns: &[u64], mask: u64) -> usize {
    let mut basis = XorBasis::new();
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        basis.insert(columns[i]);
    }
    basis.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a6() -> BitMatrix {
        BitMatrix::from_strings(&["101101", "011011"], 6).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::identity(3).unwrap().rank(), 3);
        assert_eq!(BitMatrix::zeros(2, 5).unwrap().rank(), 0);
        assert_eq!(a6().rank(), 2);
    }

    #[test]
    fn rref_collapses_duplicates() {
        let m = BitMatrix::from_strings(&["11", "11"], 2).unwrap();
        let (r, pivots) = m.rref();
        assert_eq!(r, BitMatrix::from_strings(&["11"], 2).unwrap());
        assert_eq!(pivots, vec![0]);
        let id = BitMatrix::identity(4).unwrap();
        assert_eq!(id.rref(), (id.clone(), vec![0, 1, 2, 3]));
    }

    #[test]
    fn rref_of_split_a6() {
        // Hand elimination: rows 101101, 011011, 111000.
        // R3 += R1 -> 010101; R3 += R2 -> 001110; R1 += R3 -> 100011; R2 += R3 -> 010101.
        let m = a6().append_row(&[0, 1, 2]).unwrap();
        let (r, pivots) = m.rref();
        assert_eq!(
            r,
            BitMatrix::from_strings(&["100011", "010101", "001110"], 6).unwrap()
        );
        assert_eq!(pivots, vec![0, 1, 2]);
        assert_eq!(r.rank(), 3);
    }

    #[test]
    fn pivot_examples() {
        let id = BitMatrix::identity(2).unwrap();
        assert_eq!(
            id.pivot_eliminate(0, 0).unwrap(),
            BitMatrix::from_strings(&["1"], 1).unwrap()
        );
        // rows 110, 101 pivot (0,0): row 1 becomes 011, drop column 0 -> 11.
        let m = BitMatrix::from_strings(&["110", "101"], 3).unwrap();
        assert_eq!(
            m.pivot_eliminate(0, 0).unwrap(),
            BitMatrix::from_strings(&["11"], 2).unwrap()
        );
        assert!(matches!(
            m.pivot_eliminate(0, 2),
            Err(Error::ZeroPivot { row: 0, col: 2 })
        ));
    }

    #[test]
    fn append_row_examples() {
        let m = a6();
        let z = m.append_row(&[]).unwrap();
        assert_eq!(z.row_count(), 3);
        assert_eq!(z.rows()[2], 0);
        let x = m.append_row(&[0, 1, 2]).unwrap();
        assert_eq!(x.row_string(2), "111000");
        let one = BitMatrix::from_strings(&["1"], 1).unwrap();
        assert_eq!(
            one.append_row(&[0]).unwrap(),
            BitMatrix::from_strings(&["1", "1"], 1).unwrap()
        );
        assert!(m.append_row(&[6]).is_err());
    }

    #[test]
    fn append_column_examples() {
        let m = a6();
        assert_eq!(m.append_column(&[false, false]).unwrap().rank(), 2);
        let padded = m.append_row(&[]).unwrap();
        assert_eq!(padded.append_column(&[false, false, true]).unwrap().rank(), 3);
        // M(K4) in standard form plus the all-ones column gives the Fano representation.
        let k4 = BitMatrix::from_strings(&["100101", "010110", "001011"], 6).unwrap();
        let fano = k4.append_column(&[true, true, true]).unwrap();
        assert_eq!(fano.col_count(), 7);
        assert_eq!(fano.rank(), 3);
        assert!(m.append_column(&[true]).is_err());
    }

    #[test]
    fn remove_bit_shifts() {
        assert_eq!(remove_bit(0b1011, 1), 0b101);
        assert_eq!(remove_bit(0b1011, 0), 0b101);
        assert_eq!(remove_bit(u64::MAX, 63), u64::MAX >> 1);
    }

    #[test]
    fn column_round_trip() {
        let m = a6();
        let back = BitMatrix::from_column_bits(&m.columns(), m.row_count()).unwrap();
        assert_eq!(back, m);
        assert_eq!(m.transpose().unwrap().transpose().unwrap(), m);
    }

    #[test]
    fn width_cap() {
        assert!(BitMatrix::zeros(1, 65).is_err());
        assert!(BitMatrix::from_row_bits(vec![0b100], 2).is_err());
    }
}
