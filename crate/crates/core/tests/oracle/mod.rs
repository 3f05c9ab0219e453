//! Reference implementations that share nothing with the library beyond its
//! matrix accessors: circuits from the cycle space, isomorphism by trying
//! every permutation, and minors by trying every delete/contract/keep split.

#![allow(dead_code)]

use splitgam::BinaryMatroid;

/// Element masks whose columns sum to zero.
pub fn cycle_space(columns: &[u64]) -> Vec<u64> {
    let n = columns.len();
    (0u64..1 << n)
        .filter(|&s| {
            (0..n)
                .filter(|&i| s >> i & 1 == 1)
                .fold(0u64, |acc, i| acc ^ columns[i])
                == 0
        })
        .collect()
}

/// The inclusion-minimal nonempty members, sorted.
pub fn minimal_nonempty(sets: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut sets: Vec<u64> = sets.into_iter().filter(|&s| s != 0).collect();
    sets.sort_unstable_by_key(|s| (s.count_ones(), *s));
    sets.dedup();
    let mut out: Vec<u64> = Vec::new();
    for s in sets {
        if !out.iter().any(|&c| c & s == c) {
            out.push(s);
        }
    }
    out.sort_unstable();
    out
}

pub fn circuits(b: &BinaryMatroid) -> Vec<u64> {
    minimal_nonempty(cycle_space(&b.matrix().columns()))
}

/// Squeezes the bits of `mask` at positions `kept` into positions `0..`.
fn compress(mask: u64, kept: &[usize]) -> u64 {
    kept.iter()
        .enumerate()
        .fold(0, |acc, (j, &i)| acc | (mask >> i & 1) << j)
}

/// Circuits of `host \ deleted / contracted` over the remaining elements in
/// their original order, computed from the cycle space of the host.
pub fn minor_circuits(cycles: &[u64], n: usize, deleted: u64, contracted: u64) -> Vec<u64> {
    let kept: Vec<usize> = (0..n)
        .filter(|&i| (deleted | contracted) >> i & 1 == 0)
        .collect();
    minimal_nonempty(
        cycles
            .iter()
            .filter(|&&z| z & deleted == 0)
            .map(|&z| compress(z & !contracted, &kept)),
    )
}

fn histogram(sets: &[u64]) -> Vec<u32> {
    let mut h: Vec<u32> = sets.iter().map(|s| s.count_ones()).collect();
    h.sort_unstable();
    h
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

/// Whether some permutation of `0..n` carries the family `a` onto `b`.
pub fn same_up_to_permutation(a: &[u64], b: &[u64], n: usize) -> bool {
    if a.len() != b.len() || histogram(a) != histogram(b) {
        return false;
    }
    let mut target = b.to_vec();
    target.sort_unstable();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut image = vec![0u64; a.len()];
    loop {
        for (slot, &c) in image.iter_mut().zip(a) {
            *slot = (0..n)
                .filter(|&i| c >> i & 1 == 1)
                .fold(0, |acc, i| acc | 1 << perm[i]);
        }
        image.sort_unstable();
        if image == target {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

pub fn isomorphic(a: &BinaryMatroid, b: &BinaryMatroid) -> bool {
    a.len() == b.len() && same_up_to_permutation(&circuits(a), &circuits(b), a.len())
}

/// Whether `host` has a minor whose circuits match `target` (on `target_len`
/// elements) up to relabeling.
pub fn has_minor(host: &BinaryMatroid, target: &[u64], target_len: usize) -> bool {
    let n = host.len();
    if target_len > n {
        return false;
    }
    let cycles = cycle_space(&host.matrix().columns());
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
        n - (deleted | contracted).count_ones() as usize == target_len
            && same_up_to_permutation(
                &minor_circuits(&cycles, n, deleted, contracted),
                target,
                target_len,
            )
    })
}
