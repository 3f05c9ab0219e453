mod oracle;

use proptest::prelude::*;

use splitgam::catalog;
use splitgam::matroid::Label;
use splitgam::minors::{has_minor, MinorTarget};
use splitgam::splitting::{element_split, es_split, split};
use splitgam::{BinaryMatroid, BitMatrix};

fn names(n: usize) -> Vec<Label> {
    (0..n).map(|i| Label::new(format!("e{i}")).unwrap()).collect()
}

fn build(rows: Vec<u64>, cols: usize) -> BinaryMatroid {
    let m = BitMatrix::from_row_bits(rows, cols).unwrap();
    BinaryMatroid::from_matrix(&m, names(cols)).unwrap()
}

/// Random binary matroids with `1..=max_cols` elements and at most four rows.
fn matroid(max_cols: usize) -> impl Strategy<Value = BinaryMatroid> {
    (1..=max_cols).prop_flat_map(|cols| {
        prop::collection::vec(0u64..1 << cols, 0..=4).prop_map(move |rows| build(rows, cols))
    })
}

/// A matroid together with a nonempty subset mask of its elements.
fn with_subset(max_cols: usize) -> impl Strategy<Value = (BinaryMatroid, u64)> {
    matroid(max_cols).prop_flat_map(|b| {
        let n = b.len();
        (Just(b), 0u64..1 << n)
    })
}

fn sorted(set: &splitgam::CircuitSet) -> Vec<u64> {
    let mut v = set.masks().to_vec();
    v.sort_unstable();
    v
}

fn pick(b: &BinaryMatroid, mask: u64) -> Vec<Label> {
    b.labels_of(mask)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normalized_rows_are_the_rank(rows in prop::collection::vec(0u64..256, 0..6)) {
        let m = BitMatrix::from_row_bits(rows, 8).unwrap();
        let (r, pivots) = m.rref();
        prop_assert_eq!(r.row_count(), m.rank());
        prop_assert_eq!(pivots.len(), m.rank());
        prop_assert_eq!(r.rref().0, r.clone());
        let b = BinaryMatroid::from_matrix(&m, names(8)).unwrap();
        prop_assert_eq!(b.rank(), m.rank());
    }

    #[test]
    fn appending_a_row_raises_rank_by_at_most_one(
        rows in prop::collection::vec(0u64..64, 0..5),
        support in prop::collection::btree_set(0usize..6, 0..6),
    ) {
        let m = BitMatrix::from_row_bits(rows, 6).unwrap();
        let support: Vec<usize> = support.into_iter().collect();
        let grown = m.append_row(&support).unwrap();
        prop_assert!(grown.rank() == m.rank() || grown.rank() == m.rank() + 1);
    }

    #[test]
    fn circuits_match_the_cycle_space(b in matroid(8)) {
        prop_assert_eq!(sorted(&b.circuits(None)), oracle::circuits(&b));
    }

    #[test]
    fn dual_is_an_involution(b in matroid(8)) {
        let d = b.dual();
        prop_assert_eq!(d.rank(), b.len() - b.rank());
        prop_assert_eq!(d.dual(), b.clone());
        prop_assert_eq!(sorted(&b.cocircuits(None)), oracle::circuits(&d));
    }

    #[test]
    fn deletion_and_contraction_commute((b, mask) in with_subset(7)) {
        let n = b.len();
        prop_assume!(n >= 2);
        let e = mask.trailing_zeros() as usize % n;
        let f = (e + 1 + (mask >> 8) as usize) % n;
        prop_assume!(e != f);
        let (le, lf) = (b.labels()[e].as_str(), b.labels()[f].as_str());
        let a = b.delete(&[le]).unwrap().contract(&[lf]).unwrap();
        let c = b.contract(&[lf]).unwrap().delete(&[le]).unwrap();
        prop_assert_eq!(&a, &c);
        prop_assert_eq!(b.minor(&[le], &[lf]).unwrap(), a);
        // Contraction is deletion in the dual.
        prop_assert_eq!(b.contract(&[le]).unwrap().dual(), b.dual().delete(&[le]).unwrap());
    }

    #[test]
    fn element_split_identities((b, mask) in with_subset(7)) {
        let x = pick(&b, mask);
        let es = element_split(&b, &x, "q").unwrap();
        let s = split(&b, &x).unwrap();
        prop_assert_eq!(es.delete(&["q"]).unwrap(), s.clone());
        prop_assert_eq!(es.contract(&["q"]).unwrap(), b.clone());
        prop_assert!(s.rank() == b.rank() || s.rank() == b.rank() + 1);
        prop_assert_eq!(s.delete(&x).unwrap(), b.delete(&x).unwrap());
    }

    #[test]
    fn es_split_contracts_to_a_parallel_extension((b, mask) in with_subset(6)) {
        prop_assume!(mask != 0);
        let x = pick(&b, mask);
        let e = x[0].clone();
        let s = es_split(&b, &x, e.as_str(), "gamma", "q").unwrap();
        let idx = b.index_of(e.as_str()).unwrap();
        let expected = b.extend(Label::new("gamma").unwrap(), b.columns()[idx]).unwrap();
        prop_assert_eq!(s.contract(&["q"]).unwrap(), expected);
    }

    #[test]
    fn split_commutes_with_minors_off_the_set((b, mask) in with_subset(7)) {
        let n = b.len();
        let x = pick(&b, mask);
        let outside: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 0).collect();
        prop_assume!(!outside.is_empty());
        let e = b.labels()[outside[0]].as_str();
        let sx = split(&b, &x).unwrap();
        prop_assert_eq!(sx.delete(&[e]).unwrap(), split(&b.delete(&[e]).unwrap(), &x).unwrap());
        prop_assert_eq!(sx.contract(&[e]).unwrap(), split(&b.contract(&[e]).unwrap(), &x).unwrap());
    }

    #[test]
    fn relabeling_and_row_operations_preserve_the_canonical_form(
        b in matroid(7),
        seed in any::<u64>(),
    ) {
        let n = b.len();
        // Column order from a seeded Fisher-Yates shuffle.
        let mut order: Vec<usize> = (0..n).collect();
        let mut s = seed | 1;
        for i in (1..n).rev() {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            order.swap(i, (s % (i as u64 + 1)) as usize);
        }
        let mut rows: Vec<u64> = b
            .matrix()
            .rows()
            .iter()
            .map(|&r| (0..n).fold(0u64, |acc, j| acc | (r >> order[j] & 1) << j))
            .collect();
        // Add each row into the next one, which keeps the row space.
        for i in 1..rows.len() {
            rows[i] ^= rows[i - 1];
        }
        let labels: Vec<Label> = order.iter().map(|&j| b.labels()[j].clone()).collect();
        let shuffled = BinaryMatroid::from_matrix(&BitMatrix::from_row_bits(rows, n).unwrap(), labels).unwrap();
        prop_assert_eq!(shuffled.canonical_form().unwrap(), b.canonical_form().unwrap());
        let cert = b.isomorphic(&shuffled).expect("isomorphic");
        prop_assert!(cert.verify(&b, &shuffled));
    }

    #[test]
    fn canonical_forms_agree_with_the_permutation_oracle(a in matroid(6), b in matroid(6)) {
        let same = a.canonical_form().unwrap() == b.canonical_form().unwrap();
        prop_assert_eq!(same, oracle::isomorphic(&a, &b));
        prop_assert_eq!(a.isomorphic(&b).is_some(), same);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn minor_search_agrees_with_the_oracle(b in matroid(7)) {
        for name in ["K4", "U24", "G7", "G8", "Q4"] {
            let target = catalog::entry(name).unwrap().target();
            let (circuits, len) = match &target {
                MinorTarget::Binary(t) => (oracle::circuits(t), t.len()),
                MinorTarget::Circuits(c) => (c.circuits.clone(), c.len()),
            };
            let found = has_minor(&b, &target).unwrap();
            prop_assert_eq!(found.is_some(), oracle::has_minor(&b, &circuits, len), "{}", name);
            if let Some(w) = found {
                prop_assert!(w.verify(&b, &target));
            }
        }
    }
}
