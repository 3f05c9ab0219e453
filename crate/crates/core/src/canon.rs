//! Circuit enumeration and canonical labeling for binary matroids given as
//! packed column vectors.
//!
//! The canonical code of a matroid is the lexicographically least column-by-column
//! echelon encoding over all element orders that respect a refined element
//! coloring. For a fixed order the encoding reconstructs the representation up to
//! row operations, and binary matroids are uniquely representable over GF(2), so
//! two matroids share a code exactly when they are isomorphic.

use crate::gf2::{rank_of_mask, XorBasis};

/// Element masks spanning the cycle space (the kernel of the column map).
pub(crate) fn kernel_basis(cols: &[u64]) -> Vec<u64> {
    let mut slots: [(u64, u64); 64] = [(0, 0); 64];
    let mut kernel = Vec::new();
    for (j, &col) in cols.iter().enumerate() {
        let mut v = col;
        let mut combo = 1u64 << j;
        loop {
            if v == 0 {
                kernel.push(combo);
                break;
            }
            let lead = 63 - v.leading_zeros() as usize;
            if slots[lead].0 == 0 {
                slots[lead] = (v, combo);
                break;
            }
            v ^= slots[lead].0;
            combo ^= slots[lead].1;
        }
    }
    kernel
}

/// Columns of a representation of the dual: its rows span the cycle space.
pub(crate) fn dual_columns(cols: &[u64]) -> Vec<u64> {
    let kernel = kernel_basis(cols);
    (0..cols.len())
        .map(|j| {
            kernel
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, k)| acc | (k >> j & 1) << i)
        })
        .collect()
}

pub(crate) fn rank(cols: &[u64]) -> usize {
    let mut basis = XorBasis::new();
    for &c in cols {
        basis.insert(c);
    }
    basis.len()
}

/// Circuits as element masks, sorted by size then mask.
pub(crate) fn circuits(cols: &[u64], max_size: Option<usize>) -> Vec<u64> {
    let kernel = kernel_basis(cols);
    let limit = max_size.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    if kernel.is_empty() {
        return out;
    }
    // Gray-code walk over the nonzero cycle-space vectors.
    let mut current = 0u64;
    for step in 1u64..(1u64 << kernel.len()) {
        current ^= kernel[step.trailing_zeros() as usize];
        let size = current.count_ones() as usize;
        if size <= limit && rank_of_mask(cols, current) + 1 == size {
            out.push(current);
        }
    }
    out.sort_unstable_by_key(|&m| (m.count_ones(), m));
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Twin {
    None,
    Class(usize),
}

/// Groups elements whose transposition is an automorphism: all loops, all
/// coloops, each nontrivial parallel class and each nontrivial series class.
fn twin_classes(cols: &[u64], dual: &[u64]) -> Vec<Twin> {
    let n = cols.len();
    let mut twins = vec![Twin::None; n];
    let mut next = 0;
    let mut assign = |members: Vec<usize>, twins: &mut Vec<Twin>| {
        if members.len() >= 2 {
            for &m in &members {
                twins[m] = Twin::Class(next);
            }
            next += 1;
        }
    };
    assign((0..n).filter(|&i| cols[i] == 0).collect(), &mut twins);
    assign((0..n).filter(|&i| dual[i] == 0).collect(), &mut twins);
    for vectors in [cols, dual] {
        let mut seen = vec![false; n];
        for i in 0..n {
            if seen[i] || vectors[i] == 0 || twins[i] != Twin::None {
                continue;
            }
            let members: Vec<usize> = (i..n)
                .filter(|&j| vectors[j] == vectors[i] && twins[j] == Twin::None)
                .collect();
            for &m in &members {
                seen[m] = true;
            }
            assign(members, &mut twins);
        }
    }
    twins
}

fn size_histogram(sets: &[u64], element: usize, n: usize) -> Vec<u32> {
    let mut hist = vec![0u32; n + 1];
    for &s in sets {
        if s >> element & 1 == 1 {
            hist[s.count_ones() as usize] += 1;
        }
    }
    hist
}

fn ranks_of<T: Ord + Clone>(sigs: &[T]) -> (Vec<u32>, usize) {
    let mut distinct: Vec<T> = sigs.to_vec();
    distinct.sort();
    distinct.dedup();
    let ranks = sigs
        .iter()
        .map(|s| distinct.binary_search(s).expect("present") as u32)
        .collect();
    (ranks, distinct.len())
}

/// Isomorphism-invariant element coloring refined along circuits and cocircuits.
fn refined_colors(cols: &[u64], dual: &[u64], circ: &[u64], cocirc: &[u64]) -> Vec<u32> {
    let n = cols.len();
    let initial: Vec<Vec<u32>> = (0..n)
        .map(|e| {
            let parallel = cols.iter().filter(|&&c| c != 0 && c == cols[e]).count() as u32;
            let series = dual.iter().filter(|&&c| c != 0 && c == dual[e]).count() as u32;
            let mut sig = vec![(cols[e] == 0) as u32, (dual[e] == 0) as u32, parallel, series];
            sig.extend(size_histogram(circ, e, n));
            sig.extend(size_histogram(cocirc, e, n));
            sig
        })
        .collect();
    let (mut colors, mut count) = ranks_of(&initial);
    loop {
        let sigs: Vec<Vec<u32>> = (0..n)
            .map(|e| {
                let mut sig = vec![colors[e]];
                for (marker, family) in [(u32::MAX, circ), (u32::MAX - 1, cocirc)] {
                    let mut groups: Vec<Vec<u32>> = family
                        .iter()
                        .filter(|&&s| s >> e & 1 == 1)
                        .map(|&s| {
                            let mut g: Vec<u32> = (0..n)
                                .filter(|&i| i != e && s >> i & 1 == 1)
                                .map(|i| colors[i])
                                .collect();
                            g.sort_unstable();
                            g
                        })
                        .collect();
                    groups.sort();
                    sig.push(marker);
                    for g in groups {
                        sig.push(g.len() as u32);
                        sig.extend(g);
                    }
                }
                sig
            })
            .collect();
        let (next, next_count) = ranks_of(&sigs);
        if next_count == count {
            return colors;
        }
        colors = next;
        count = next_count;
    }
}

/// Echelon basis over the chosen pivot elements, tracking coordinates.
#[derive(Clone)]
struct Coordinates {
    slots: [(u64, u64); 64],
    pivots: usize,
}

impl Coordinates {
    fn new() -> Self {
        Self {
            slots: [(0, 0); 64],
            pivots: 0,
        }
    }

    /// Coordinates of `v` in terms of the pivots so far, or `None` when `v` is
    /// independent of them (reduced remainder returned for insertion).
    fn express(&self, mut v: u64) -> Result<u64, (u64, u64)> {
        let mut combo = 0u64;
        while v != 0 {
            let lead = 63 - v.leading_zeros() as usize;
            if self.slots[lead].0 == 0 {
                return Err((v, combo));
            }
            v ^= self.slots[lead].0;
            combo ^= self.slots[lead].1;
        }
        Ok(combo)
    }

    fn add_pivot(&mut self, remainder: u64, combo: u64) {
        let lead = 63 - remainder.leading_zeros() as usize;
        self.slots[lead] = (remainder, combo ^ (1u64 << self.pivots));
        self.pivots += 1;
    }
}

const PIVOT_TOKEN: u64 = u64::MAX;

/// Result of canonical labeling.
#[derive(Clone, Debug)]
pub(crate) struct Canon {
    pub code: Vec<u8>,
    /// `order[p]` is the element placed at canonical position `p`.
    pub order: Vec<usize>,
}

struct Search<'a> {
    cols: &'a [u64],
    cell_of_position: Vec<u32>,
    colors: Vec<u32>,
    twins: Vec<Twin>,
    best_tokens: Vec<u64>,
    best_order: Vec<usize>,
    tokens: Vec<u64>,
    order: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, placed: u64, coords: &Coordinates, below_best: bool) {
        let depth = self.order.len();
        if depth == self.cols.len() {
            if below_best || self.best_order.is_empty() {
                self.best_tokens = self.tokens.clone();
                self.best_order = self.order.clone();
            }
            return;
        }
        let cell = self.cell_of_position[depth];
        let mut candidates: Vec<(u64, usize, Result<u64, (u64, u64)>)> = Vec::new();
        for e in 0..self.cols.len() {
            if placed >> e & 1 == 1 || self.colors[e] != cell {
                continue;
            }
            let expressed = coords.express(self.cols[e]);
            let token = match expressed {
                Ok(combo) => combo,
                Err(_) => PIVOT_TOKEN,
            };
            candidates.push((token, e, expressed));
        }
        let least = candidates.iter().map(|c| c.0).min().expect("cell has room");
        let mut below = below_best;
        if !below && !self.best_order.is_empty() {
            match least.cmp(&self.best_tokens[depth]) {
                std::cmp::Ordering::Greater => return,
                std::cmp::Ordering::Less => below = true,
                std::cmp::Ordering::Equal => {}
            }
        }
        let mut tried_twins: Vec<usize> = Vec::new();
        for (token, e, expressed) in candidates {
            if token != least {
                continue;
            }
            if let Twin::Class(id) = self.twins[e] {
                if tried_twins.contains(&id) {
                    continue;
                }
                tried_twins.push(id);
            }
            let mut next = coords.clone();
            if let Err((remainder, combo)) = expressed {
                next.add_pivot(remainder, combo);
            }
            self.tokens.push(token);
            self.order.push(e);
            // A sibling may already have lowered the best code below this prefix.
            let still_below = below
                && (self.best_order.is_empty()
                    || self.tokens[..=depth] < self.best_tokens[..=depth]);
            self.run(placed | 1 << e, &next, still_below);
            self.tokens.pop();
            self.order.pop();
        }
    }
}

pub(crate) fn canonical(cols: &[u64]) -> Canon {
    let n = cols.len();
    let r = rank(cols);
    let mut code = vec![n as u8, r as u8];
    if n == 0 {
        return Canon {
            code,
            order: Vec::new(),
        };
    }
    let dual = dual_columns(cols);
    let circ = circuits(cols, None);
    let cocirc = circuits(&dual, None);
    let colors = refined_colors(cols, &dual, &circ, &cocirc);
    let mut sorted = colors.clone();
    sorted.sort_unstable();
    let mut search = Search {
        cols,
        cell_of_position: sorted,
        colors,
        twins: twin_classes(cols, &dual),
        best_tokens: Vec::new(),
        best_order: Vec::new(),
        tokens: Vec::with_capacity(n),
        order: Vec::with_capacity(n),
    };
    search.run(0, &Coordinates::new(), false);
    for &t in &search.best_tokens {
        code.extend_from_slice(&t.to_be_bytes());
    }
    Canon {
        code,
        order: search.best_order,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Vec<u64> {
        // [I3 | D] with D columns 110, 011, 101 (bit i = row i).
        vec![0b001, 0b010, 0b100, 0b011, 0b110, 0b101]
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(kernel_basis(&[1, 2, 4]).is_empty());
        assert_eq!(kernel_basis(&[1, 1]).len(), 1);
    }

    #[test]
    fn k4_circuit_census() {
        let c = circuits(&k4(), None);
        assert_eq!(c.len(), 7);
        assert_eq!(c.iter().filter(|m| m.count_ones() == 3).count(), 4);
        assert_eq!(c.iter().filter(|m| m.count_ones() == 4).count(), 3);
        assert_eq!(circuits(&k4(), Some(3)).len(), 4);
    }

    #[test]
    fn dual_has_complementary_rank() {
        let d = dual_columns(&k4());
        assert_eq!(rank(&d), 3);
        let f = dual_columns(&[1, 2, 4]);
        assert_eq!(f, vec![0, 0, 0]);
    }

    #[test]
    fn canonical_ignores_column_order() {
        let a = k4();
        let mut b = a.clone();
        b.reverse();
        assert_eq!(canonical(&a).code, canonical(&b).code);
        let fano: Vec<u64> = (1..8).collect();
        assert_ne!(canonical(&a).code, canonical(&fano).code);
    }

    #[test]
    fn canonical_order_is_a_permutation() {
        let c = canonical(&[0, 1, 1, 2, 3, 0]);
        let mut order = c.order.clone();
        order.sort_unstable();
        assert_eq!(order, vec![0, 1, 2, 3, 4, 5]);
    }
}
