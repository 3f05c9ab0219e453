//! Splitting, element splitting and es-splitting of binary matroids, and the
//! single-element extensions, coextensions and quotients used alongside them.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matroid::{BinaryMatroid, CanonicalForm, Label};

/// Appends a row with ones exactly in the columns of `x`.
pub fn split<S: AsRef<str>>(b: &BinaryMatroid, x: &[S]) -> Result<BinaryMatroid> {
    let mask = b.mask_of(x)?;
    let support: Vec<usize> = (0..b.len()).filter(|&i| mask >> i & 1 == 1).collect();
    let m = b.matrix().append_row(&support)?;
    BinaryMatroid::from_matrix(&m, b.labels().to_vec())
}

fn fresh(b: &BinaryMatroid, label: &str) -> Result<Label> {
    let label = Label::new(label)?;
    if b.index_of(label.as_str()).is_some() {
        return Err(Error::DuplicateLabel(label.to_string()));
    }
    Ok(label)
}

/// Splits on `x` and adds an element `q` that is the unit vector of the new row.
pub fn element_split<S: AsRef<str>>(b: &BinaryMatroid, x: &[S], q: &str) -> Result<BinaryMatroid> {
    let q = fresh(b, q)?;
    let mask = b.mask_of(x)?;
    let support: Vec<usize> = (0..b.len()).filter(|&i| mask >> i & 1 == 1).collect();
    let with_row = b.matrix().append_row(&support)?;
    let mut unit = vec![false; with_row.row_count()];
    *unit.last_mut().expect("a row was appended") = true;
    let m = with_row.append_column(&unit)?;
    let mut labels = b.labels().to_vec();
    labels.push(q);
    BinaryMatroid::from_matrix(&m, labels)
}

/// Adds `gamma` as a copy of `e` (outside `x`), then element-splits on `x`.
pub fn es_split<S: AsRef<str>>(
    b: &BinaryMatroid,
    x: &[S],
    e: &str,
    gamma: &str,
    q: &str,
) -> Result<BinaryMatroid> {
    if !x.iter().any(|l| l.as_ref() == e) {
        return Err(Error::Precondition(format!("pivot {e} is not in the split set")));
    }
    b.mask_of(x)?;
    let idx = b
        .index_of(e)
        .ok_or_else(|| Error::UnknownLabel(e.to_string()))?;
    let gamma = fresh(b, gamma)?;
    if gamma.as_str() == q {
        return Err(Error::DuplicateLabel(q.to_string()));
    }
    let with_gamma = b.extend(gamma, b.columns()[idx])?;
    element_split(&with_gamma, x, q)
}

fn dedup_sorted(items: Vec<BinaryMatroid>) -> Result<Vec<BinaryMatroid>> {
    let mut classes: BTreeMap<CanonicalForm, BinaryMatroid> = BTreeMap::new();
    for m in items {
        let form = m.canonical_form()?;
        classes.entry(form).or_insert(m);
    }
    Ok(classes.into_values().collect())
}

/// Every matroid obtained by adding one column `q` in the coordinates of the
/// normalized representation, one per isomorphism class, sorted by canonical
/// form. Coloop extensions are not in this universe.
pub fn extensions(b: &BinaryMatroid, q: &str) -> Result<Vec<BinaryMatroid>> {
    let q = fresh(b, q)?;
    let all = (0u64..1 << b.rank())
        .map(|c| b.extend(q.clone(), c))
        .collect::<Result<Vec<_>>>()?;
    dedup_sorted(all)
}

/// Filters for [`coextensions`]. The default keeps everything.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CoextensionFilter {
    /// Drop results that have a cocircuit of size two.
    pub no_2_cocircuit: bool,
    /// Drop results in which the new element is a coloop.
    pub no_coloop: bool,
    pub max_loops: Option<usize>,
}

/// Single-element coextensions `N` with `N / y = b`, one per isomorphism class,
/// sorted by canonical form. These are the duals of the extensions of the dual,
/// together with `b` plus a loop `y`, which the extension universe misses.
pub fn coextensions(
    b: &BinaryMatroid,
    y: &str,
    filter: CoextensionFilter,
) -> Result<Vec<BinaryMatroid>> {
    let y_label = fresh(b, y)?;
    let mut all: Vec<BinaryMatroid> = extensions(&b.dual(), y)?
        .into_iter()
        .map(|m| m.dual())
        .collect();
    all.push(b.extend(y_label, 0)?);
    let kept = all
        .into_iter()
        .filter(|n| {
            !(filter.no_2_cocircuit && n.has_2_cocircuit())
                && !(filter.no_coloop && n.coloops().iter().any(|l| l.as_str() == y))
                && filter.max_loops.is_none_or(|k| n.loops().len() <= k)
        })
        .collect();
    dedup_sorted(kept)
}

/// `Z / q` for every extension `Z` of `b` by a column `q`, one per isomorphism
/// class, sorted by canonical form.
pub fn quotients(b: &BinaryMatroid, q: &str) -> Result<Vec<BinaryMatroid>> {
    let q = fresh(b, q)?;
    let all = (0u64..1 << b.rank())
        .map(|c| Ok(b.extend(q.clone(), c)?.contract(&[q.as_str()])?))
        .collect::<Result<Vec<_>>>()?;
    dedup_sorted(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitMatrix;
    use crate::matroid::labels;

    fn k4() -> BinaryMatroid {
        let m = BitMatrix::from_strings(&["100101", "010110", "001011"], 6).unwrap();
        BinaryMatroid::from_matrix(&m, labels(&["a", "b", "c", "d", "e", "f"])).unwrap()
    }

    fn a6() -> BinaryMatroid {
        let m = BitMatrix::from_strings(&["101101", "011011"], 6).unwrap();
        BinaryMatroid::from_matrix(&m, labels(&["x", "y", "z", "u", "v", "w"])).unwrap()
    }

    #[test]
    fn split_a6_is_k4() {
        let s = split(&a6(), &["x", "y", "z"]).unwrap();
        assert_eq!(s.rank(), 3);
        assert!(s.isomorphic(&k4()).is_some());
    }

    #[test]
    fn split_on_empty_set_is_identity() {
        assert_eq!(split(&k4(), &[] as &[&str]).unwrap(), k4());
    }

    #[test]
    fn split_on_one_element_makes_a_coloop() {
        let b = k4();
        let s = split(&b, &["a"]).unwrap();
        assert_eq!(s.coloops(), labels(&["a"]));
        assert!(s.delete(&["a"]).unwrap().isomorphic(&b.delete(&["a"]).unwrap()).is_some());
    }

    #[test]
    fn split_rank_grows_unless_x_is_in_the_row_space() {
        let b = k4();
        // {a, d, f} is the first row: a cocycle of K4.
        assert_eq!(split(&b, &["a", "d", "f"]).unwrap().rank(), 3);
        assert_eq!(split(&b, &["a", "b"]).unwrap().rank(), 4);
    }

    #[test]
    fn element_split_identities() {
        let b = a6();
        let x = ["x", "y"];
        let es = element_split(&b, &x, "q").unwrap();
        assert_eq!(es.len(), 7);
        assert_eq!(es.delete(&["q"]).unwrap(), split(&b, &x).unwrap());
        assert!(es.contract(&["q"]).unwrap().isomorphic(&b).is_some());
        assert!(element_split(&b, &x, "x").is_err());
    }

    #[test]
    fn element_split_on_empty_set_adds_a_coloop() {
        let es = element_split(&k4(), &[] as &[&str], "q").unwrap();
        assert_eq!(es.coloops(), labels(&["q"]));
        assert_eq!(es.rank(), 4);
    }

    #[test]
    fn es_split_examples() {
        let single = BinaryMatroid::from_matrix(
            &BitMatrix::from_strings(&["1"], 1).unwrap(),
            labels(&["e"]),
        )
        .unwrap();
        let s = es_split(&single, &["e"], "e", "gamma", "q").unwrap();
        assert_eq!((s.len(), s.rank()), (3, 2));
        assert_eq!(s.labels(), labels(&["e", "gamma", "q"]).as_slice());

        let b = a6();
        let s = es_split(&b, &["x", "y"], "x", "gamma", "q").unwrap();
        let expected = b.extend(Label::new("gamma").unwrap(), b.columns()[0]).unwrap();
        assert!(s.contract(&["q"]).unwrap().isomorphic(&expected).is_some());
        assert!(es_split(&b, &["x", "y"], "z", "gamma", "q").is_err());
        assert!(es_split(&b, &["x", "y"], "x", "q", "q").is_err());
        assert!(es_split(&b, &["x", "y"], "x", "u", "q").is_err());
    }

    #[test]
    fn extension_classes() {
        let one = BinaryMatroid::from_matrix(
            &BitMatrix::from_strings(&["1"], 1).unwrap(),
            labels(&["a"]),
        )
        .unwrap();
        assert_eq!(extensions(&one, "q").unwrap().len(), 2);
        let ext = extensions(&k4(), "q").unwrap();
        assert_eq!(ext.len(), 3);
        assert!(ext.iter().any(|m| m.circuits(Some(3)).len() == 7));
    }

    #[test]
    fn quotient_classes_of_k4() {
        let qs = quotients(&k4(), "q").unwrap();
        assert_eq!(qs.len(), 3);
        let mut shapes: Vec<(usize, usize)> = qs.iter().map(|m| (m.rank(), m.loops().len())).collect();
        shapes.sort();
        assert_eq!(shapes, vec![(2, 0), (2, 1), (3, 0)]);
        let empty = quotients(&BinaryMatroid::empty(), "q").unwrap();
        assert_eq!(empty.len(), 1);
        assert!(empty[0].is_empty());
    }

    #[test]
    fn coextensions_contract_back() {
        let b = a6();
        let all = coextensions(&b, "y0", CoextensionFilter::default()).unwrap();
        assert!(!all.is_empty());
        for n in &all {
            assert!(n.contract(&["y0"]).unwrap().isomorphic(&b).is_some());
        }
        let with_loop = b.extend(Label::new("y0").unwrap(), 0).unwrap();
        assert!(all.iter().any(|n| n.isomorphic(&with_loop).is_some()));
        let filtered = coextensions(
            &b,
            "y0",
            CoextensionFilter {
                no_coloop: true,
                max_loops: Some(0),
                ..Default::default()
            },
        )
        .unwrap();
        assert!(filtered.len() < all.len());
        assert!(filtered.iter().all(|n| n.loops().is_empty()));
    }
}
