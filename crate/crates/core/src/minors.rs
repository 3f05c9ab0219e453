//! Exhaustive minor search with re-checkable witnesses, and the excluded-minor
//! tests for binary gammoids and graphic and cographic matroids.
//!
//! A minor `b \ D / C` can always be written with `C` independent and `D`
//! coindependent, in which case its rank is `r(b) - |C|`. The search therefore
//! walks independent contraction sets of exactly that size, and for each one
//! picks the kept elements class by class: elements that are parallel in
//! `b / C` are interchangeable, so only the number taken from each parallel
//! class matters.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon;
use crate::catalog;
use crate::error::{Error, Result};
use crate::gf2::XorBasis;
use crate::matroid::{BinaryMatroid, CanonicalForm, CircuitMatroid, IsoCertificate, Label};

/// Largest host the minor search accepts.
pub const HOST_CAP: usize = 14;

/// What a minor search looks for.
#[derive(Clone, Debug)]
pub enum MinorTarget {
    Binary(BinaryMatroid),
    /// A matroid known only through its circuits, matched by brute force.
    Circuits(CircuitMatroid),
}

impl MinorTarget {
    pub fn len(&self) -> usize {
        match self {
            MinorTarget::Binary(b) => b.len(),
            MinorTarget::Circuits(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rank(&self) -> usize {
        match self {
            MinorTarget::Binary(b) => b.rank(),
            MinorTarget::Circuits(c) => c.rank,
        }
    }

    pub fn labels(&self) -> &[Label] {
        match self {
            MinorTarget::Binary(b) => b.labels(),
            MinorTarget::Circuits(c) => &c.labels,
        }
    }

    fn loops(&self) -> usize {
        match self {
            MinorTarget::Binary(b) => b.loops().len(),
            MinorTarget::Circuits(c) => c.loops(),
        }
    }

    fn parallel_profile(&self) -> Vec<usize> {
        match self {
            MinorTarget::Binary(b) => b.fingerprint().parallel_profile,
            MinorTarget::Circuits(c) => c.parallel_profile(),
        }
    }

    /// Certificate from `minor` onto this target, if they are isomorphic.
    pub fn certify(&self, minor: &BinaryMatroid) -> Option<IsoCertificate> {
        match self {
            MinorTarget::Binary(t) => minor.isomorphic(t),
            MinorTarget::Circuits(t) => {
                let circuits = minor.circuits(None);
                permutation_match(circuits.masks(), &t.circuits, minor.len()).map(|perm| {
                    IsoCertificate {
                        pairs: perm
                            .iter()
                            .enumerate()
                            .map(|(i, &j)| (minor.labels()[i].clone(), t.labels[j].clone()))
                            .collect(),
                    }
                })
            }
        }
    }

    /// Checks a certificate from `minor` onto this target.
    pub fn check(&self, minor: &BinaryMatroid, cert: &IsoCertificate) -> bool {
        match self {
            MinorTarget::Binary(t) => cert.verify(minor, t),
            MinorTarget::Circuits(t) => cert.verify_against_circuits(minor, t),
        }
    }
}

/// First permutation (in lexicographic order) mapping `source` circuits onto
/// `target` circuits.
fn permutation_match(source: &[u64], target: &[u64], n: usize) -> Option<Vec<usize>> {
    if source.len() != target.len() {
        return None;
    }
    let mut target = target.to_vec();
    target.sort_unstable();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let mut image: Vec<u64> = source
            .iter()
            .map(|&c| (0..n).filter(|&i| c >> i & 1 == 1).fold(0, |a, i| a | 1 << perm[i]))
            .collect();
        image.sort_unstable();
        if image == target {
            return Some(perm);
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// `b \ deleted / contracted`, carried onto a target by `mapping`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorWitness {
    pub deleted: Vec<Label>,
    pub contracted: Vec<Label>,
    pub mapping: IsoCertificate,
}

impl MinorWitness {
    /// Recomputes the minor and checks the mapping against the target's circuits.
    pub fn verify(&self, host: &BinaryMatroid, target: &MinorTarget) -> bool {
        match host.minor(&self.deleted, &self.contracted) {
            Ok(minor) => target.check(&minor, &self.mapping),
            Err(_) => false,
        }
    }
}

/// Precomputed data about a target shared by every branch of one search.
struct Plan<'a> {
    target: &'a MinorTarget,
    rank: usize,
    loops: usize,
    profile: Vec<usize>,
    form: Option<CanonicalForm>,
    /// A simple binary matroid of rank 3 on 6 elements can only be M(K4).
    is_k4_shape: bool,
}

impl<'a> Plan<'a> {
    fn new(target: &'a MinorTarget) -> Self {
        let profile = target.parallel_profile();
        let loops = target.loops();
        let form = match target {
            MinorTarget::Binary(b) => Some(CanonicalForm::of_columns(b.columns())),
            MinorTarget::Circuits(_) => None,
        };
        let is_k4_shape = matches!(target, MinorTarget::Binary(_))
            && target.rank() == 3
            && target.len() == 6
            && loops == 0
            && profile.iter().all(|&s| s == 1);
        Plan {
            target,
            rank: target.rank(),
            loops,
            profile,
            form,
            is_k4_shape,
        }
    }

    /// True when the elements of `keep` (reduced columns) form a copy of the target.
    fn matches(&self, reduced: &[u64], keep: u64) -> bool {
        let cols: Vec<u64> = (0..reduced.len())
            .filter(|&i| keep >> i & 1 == 1)
            .map(|i| reduced[i])
            .collect();
        if canon::rank(&cols) != self.rank {
            return false;
        }
        if self.is_k4_shape {
            return true;
        }
        match (&self.form, self.target) {
            (Some(form), _) => CanonicalForm::of_columns(&cols) == *form,
            (None, MinorTarget::Circuits(t)) => {
                permutation_match(&canon::circuits(&cols, None), &t.circuits, cols.len()).is_some()
            }
            (None, MinorTarget::Binary(_)) => unreachable!("binary targets carry a form"),
        }
    }
}

/// Assigns target class sizes to distinct host classes; `chosen` collects the
/// kept elements. Calls `found` on every complete assignment until it succeeds.
fn assign(
    classes: &[Vec<usize>],
    at: usize,
    remaining: &mut Vec<usize>,
    chosen: u64,
    found: &mut dyn FnMut(u64) -> bool,
) -> bool {
    if remaining.is_empty() {
        return found(chosen);
    }
    if at == classes.len() {
        return false;
    }
    let available = classes.len() - at;
    if available < remaining.len() {
        return false;
    }
    let class = &classes[at];
    let mut tried = Vec::new();
    for k in 0..remaining.len() {
        let size = remaining[k];
        if size > class.len() || tried.contains(&size) {
            continue;
        }
        tried.push(size);
        let taken = class[..size].iter().fold(chosen, |a, &i| a | 1 << i);
        let s = remaining.remove(k);
        let hit = assign(classes, at + 1, remaining, taken, found);
        remaining.insert(k, s);
        if hit {
            return true;
        }
    }
    assign(classes, at + 1, remaining, chosen, found)
}

/// Searches one contraction set; returns the kept-element mask on success.
fn search_contraction(b: &BinaryMatroid, plan: &Plan<'_>, contract: u64) -> Option<u64> {
    let columns = b.columns();
    let mut basis = XorBasis::new();
    for (i, &c) in columns.iter().enumerate() {
        if contract >> i & 1 == 1 {
            basis.insert(c);
        }
    }
    let reduced: Vec<u64> = columns.iter().map(|&c| basis.reduce_full(c)).collect();
    let mut loops = Vec::new();
    let mut classes: Vec<(u64, Vec<usize>)> = Vec::new();
    for (i, &v) in reduced.iter().enumerate() {
        if contract >> i & 1 == 1 {
            continue;
        }
        if v == 0 {
            loops.push(i);
        } else if let Some((_, members)) = classes.iter_mut().find(|(w, _)| *w == v) {
            members.push(i);
        } else {
            classes.push((v, vec![i]));
        }
    }
    if loops.len() < plan.loops {
        return None;
    }
    let base = loops[..plan.loops].iter().fold(0u64, |a, &i| a | 1 << i);
    let classes: Vec<Vec<usize>> = classes.into_iter().map(|(_, m)| m).collect();
    let mut remaining = plan.profile.clone();
    let mut hit = None;
    assign(&classes, 0, &mut remaining, base, &mut |keep| {
        if plan.matches(&reduced, keep) {
            hit = Some(keep);
            true
        } else {
            false
        }
    });
    hit
}

/// Subsets of `0..n` of size `k` in lexicographic order of their sorted
/// index lists.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<u64> {
    fn go(n: usize, k: usize, start: usize, acc: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..=n - k {
            go(n, k - 1, i + 1, acc | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(n, k, 0, 0, &mut out);
    }
    out
}

/// A witness that `b` has a minor isomorphic to `target`, if there is one.
///
/// Contraction sets are tried in lexicographic order of their index lists and
/// the witness for the first successful one is returned, so the answer does
/// not depend on the thread count.
pub fn has_minor(b: &BinaryMatroid, target: &MinorTarget) -> Result<Option<MinorWitness>> {
    if b.len() > HOST_CAP {
        return Err(Error::CapExceeded(format!(
            "minor search is limited to {HOST_CAP} elements, got {}",
            b.len()
        )));
    }
    let (n, r) = (b.len(), b.rank());
    let (nt, rt) = (target.len(), target.rank());
    if nt > n || rt > r || nt - rt > n - r {
        return Ok(None);
    }
    let plan = Plan::new(target);
    let k = r - rt;
    let candidates: Vec<u64> = combinations(n, k)
        .into_iter()
        .filter(|&c| b.rank_of(c) == k)
        .collect();
    let hit = candidates
        .par_iter()
        .find_map_first(|&c| search_contraction(b, &plan, c).map(|keep| (c, keep)));
    let Some((contract, keep)) = hit else {
        return Ok(None);
    };
    let deleted_mask = b.full_mask() & !contract & !keep;
    let deleted = b.labels_of(deleted_mask);
    let contracted = b.labels_of(contract);
    let minor = b.minor(&deleted, &contracted)?;
    let mapping = target
        .certify(&minor)
        .expect("search only accepts isomorphic minors");
    Ok(Some(MinorWitness {
        deleted,
        contracted,
        mapping,
    }))
}

/// Decision by trying every delete/contract/keep assignment without pruning.
/// Exponential; intended as a test oracle for small hosts.
pub fn has_minor_brute_force(b: &BinaryMatroid, target: &MinorTarget) -> bool {
    let n = b.len();
    let total = 3usize.pow(n as u32);
    (0..total).any(|mut code| {
        let (mut deleted, mut contracted) = (0u64, 0u64);
        for i in 0..n {
            match code % 3 {
                1 => deleted |= 1 << i,
                2 => contracted |= 1 << i,
                _ => {}
            }
            code /= 3;
        }
        if n - (deleted | contracted).count_ones() as usize != target.len() {
            return false;
        }
        let minor = b.contract_mask(contracted);
        let minor = minor
            .delete(&b.labels_of(deleted))
            .expect("labels survive contraction");
        target.certify(&minor).is_some()
    })
}

fn standard_targets() -> &'static [(&'static str, MinorTarget); 6] {
    static TARGETS: OnceLock<[(&'static str, MinorTarget); 6]> = OnceLock::new();
    TARGETS.get_or_init(|| {
        let get = |name: &str| catalog::entry(name).expect("standard entry").target();
        [
            ("K4", get("K4")),
            ("U24", get("U24")),
            ("F7", get("F7")),
            ("F7*", get("F7*")),
            ("M*(K5)", get("M*(K5)")),
            ("M*(K33)", get("M*(K33)")),
        ]
    })
}

/// The catalog name of an excluded minor together with a witness for it.
pub type Obstruction = (&'static str, MinorWitness);

fn first_obstruction(b: &BinaryMatroid, names: &[&str]) -> Result<Option<Obstruction>> {
    for (name, target) in standard_targets() {
        if !names.contains(name) {
            continue;
        }
        if let Some(w) = has_minor(b, target)? {
            return Ok(Some((name, w)));
        }
    }
    Ok(None)
}

pub const GAMMOID_OBSTRUCTIONS: [&str; 2] = ["K4", "U24"];
pub const GRAPHIC_OBSTRUCTIONS: [&str; 4] = ["F7", "F7*", "M*(K5)", "M*(K33)"];

/// An M(K4) or U_{2,4} minor of `b`, if there is one.
pub fn gammoid_obstruction(b: &BinaryMatroid) -> Result<Option<Obstruction>> {
    first_obstruction(b, &GAMMOID_OBSTRUCTIONS)
}

/// True when `b` has neither an M(K4) nor a U_{2,4} minor.
pub fn is_binary_gammoid(b: &BinaryMatroid) -> Result<bool> {
    Ok(gammoid_obstruction(b)?.is_none())
}

/// An F7, F7*, M*(K5) or M*(K3,3) minor of `b`, if there is one.
pub fn graphic_obstruction(b: &BinaryMatroid) -> Result<Option<Obstruction>> {
    first_obstruction(b, &GRAPHIC_OBSTRUCTIONS)
}

pub fn is_graphic(b: &BinaryMatroid) -> Result<bool> {
    Ok(graphic_obstruction(b)?.is_none())
}

pub fn is_cographic(b: &BinaryMatroid) -> Result<bool> {
    is_graphic(&b.dual())
}

#[cfg(test)]
mod tests {
    use super::*;
    fn matroid(name: &str) -> BinaryMatroid {
        catalog::matroid(name).unwrap()
    }

    fn target(name: &str) -> MinorTarget {
        catalog::entry(name).unwrap().target()
    }

    #[test]
    fn self_minor_has_empty_sets() {
        let k4 = matroid("K4");
        let w = has_minor(&k4, &target("K4")).unwrap().unwrap();
        assert!(w.deleted.is_empty() && w.contracted.is_empty());
        assert!(w.verify(&k4, &target("K4")));
    }

    #[test]
    fn g1_has_a_q2_minor() {
        let g1 = matroid("G1");
        let t = target("Q2");
        let w = has_minor(&g1, &t).unwrap().expect("minor exists");
        assert!(w.verify(&g1, &t));
    }

    #[test]
    fn v_family_contains_g1() {
        for v in ["V1", "V2", "V3"] {
            let host = matroid(v);
            let w = has_minor(&host, &target("G1")).unwrap();
            assert!(w.is_some_and(|w| w.verify(&host, &target("G1"))), "{v}");
        }
    }

    #[test]
    fn gammoid_examples() {
        assert!(!is_binary_gammoid(&matroid("K4")).unwrap());
        assert!(is_binary_gammoid(&matroid("Q4")).unwrap());
        assert!(is_binary_gammoid(&BinaryMatroid::empty()).unwrap());
        assert!(has_minor(&matroid("F7"), &target("U24")).unwrap().is_none());
    }

    #[test]
    fn graphic_examples() {
        assert!(!is_graphic(&matroid("F7")).unwrap());
        assert!(!is_graphic(&matroid("F7*")).unwrap());
        assert!(is_graphic(&matroid("K4")).unwrap());
        assert!(is_graphic(&matroid("M*(K5)").dual()).unwrap());
        assert!(!is_cographic(&matroid("K5")).unwrap());
        assert!(is_cographic(&matroid("K4")).unwrap());
    }

    #[test]
    fn corrupted_witness_fails() {
        let g1 = matroid("G1");
        let t = target("Q2");
        let mut w = has_minor(&g1, &t).unwrap().unwrap();
        assert!(w.verify(&g1, &t));
        let moved = w.contracted.pop().expect("one contraction");
        w.deleted.push(moved);
        assert!(!w.verify(&g1, &t));
    }

    #[test]
    fn host_cap() {
        let big = crate::graphs::Multigraph::from_pairs(2, &[(0, 1); 15])
            .unwrap()
            .cycle_matroid();
        assert!(matches!(has_minor(&big, &target("K4")), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn agrees_with_brute_force_on_catalog() {
        for host in ["G1", "G2", "G4", "G6", "G7", "G8", "K4", "F7", "W2"] {
            for t in ["K4", "U24", "G7", "G8", "Q4"] {
                let h = matroid(host);
                let fast = has_minor(&h, &target(t)).unwrap().is_some();
                assert_eq!(fast, has_minor_brute_force(&h, &target(t)), "{host} / {t}");
            }
        }
    }

    #[test]
    fn combination_order() {
        assert_eq!(combinations(4, 2), vec![0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
        assert_eq!(combinations(3, 0), vec![0]);
        assert!(combinations(2, 3).is_empty());
    }
}
