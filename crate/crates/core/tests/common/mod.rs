//! Oracles computed independently of the library: brute-force counts over
//! explicit permutation lists and a character table built from permutation
//! modules. Frozen spectra were obtained by dense floating-point
//! eigendecomposition of the adjacency matrices and rounded.

#![allow(dead_code)]

use std::collections::BTreeMap;

use itertools::Itertools;

/// All permutations of `0..n` as image vectors, lexicographic.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    (0..n).permutations(n).collect()
}

pub fn brute_derangements(n: usize) -> u64 {
    permutations(n)
        .iter()
        .filter(|p| p.iter().enumerate().all(|(i, &x)| i != x))
        .count() as u64
}

/// Cycle lengths in decreasing order.
pub fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut lens = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        lens.push(len);
    }
    lens.sort_unstable_by(|a, b| b.cmp(a));
    lens
}

/// Partitions of `n` in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(acc.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            acc.push(k);
            go(n - k, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Row labels of every tabloid of shape `shape`.
fn tabloids(shape: &[usize]) -> Vec<Vec<usize>> {
    let n: usize = shape.iter().sum();
    let labels: Vec<usize> = shape
        .iter()
        .enumerate()
        .flat_map(|(row, &len)| std::iter::repeat(row).take(len))
        .collect();
    labels.into_iter().permutations(n).unique().collect()
}

/// Irreducible characters by Gram–Schmidt on permutation-module characters.
///
/// The character of the permutation module on tabloids of shape `λ`
/// contains the irreducible `χ_λ` once, and otherwise only irreducibles of
/// shapes that come earlier in reverse lexicographic order. Subtracting
/// their projections in that order leaves `χ_λ`. Returns
/// `(partition, cycle type) → value`.
pub fn character_table_by_modules(n: usize) -> BTreeMap<(Vec<usize>, Vec<usize>), i64> {
    let elems = permutations(n);
    let order = elems.len() as i64;
    let types: Vec<Vec<usize>> = elems.iter().map(|p| cycle_type(p)).collect();
    let mut chars: Vec<Vec<i64>> = Vec::new();
    for shape in partitions(n) {
        let tabs = tabloids(&shape);
        let mut perm_char: Vec<i64> = elems
            .iter()
            .map(|p| {
                tabs.iter()
                    .filter(|t| (0..n).all(|i| t[p[i]] == t[i]))
                    .count() as i64
            })
            .collect();
        for chi in &chars {
            let inner: i64 = perm_char.iter().zip(chi).map(|(a, b)| a * b).sum();
            assert_eq!(inner % order, 0, "multiplicities are integers");
            let mult = inner / order;
            for (v, c) in perm_char.iter_mut().zip(chi) {
                *v -= mult * c;
            }
        }
        let norm: i64 = perm_char.iter().map(|v| v * v).sum();
        assert_eq!(norm, order, "remainder is irreducible");
        chars.push(perm_char);
    }
    let mut table = BTreeMap::new();
    for (shape, chi) in partitions(n).into_iter().zip(&chars) {
        for (t, v) in types.iter().zip(chi) {
            table.insert((shape.clone(), t.clone()), *v);
        }
    }
    table
}

/// `(eigenvalue, multiplicity)` of `P_0(n)`.
pub const SPECTRUM_P3: &[(i64, u64)] = &[(2, 2), (-1, 4)];
pub const SPECTRUM_P4: &[(i64, u64)] = &[(9, 1), (-3, 10), (3, 4), (1, 9)];
pub const SPECTRUM_P5: &[(i64, u64)] = &[(44, 1), (-11, 16), (-4, 25), (-1, 16), (4, 62)];
/// `P_1(5)`, valency 89.
pub const SPECTRUM_P1_5: &[(i64, u64)] = &[(89, 1), (-11, 17), (-1, 52), (1, 25), (5, 25)];

/// Rows `π_{a,b}` for `n = 4`, columns `1→2, 1→3, 2→3, 2→1, 3→1, 3→2`.
pub const PAIR_TABLE_N4: [[u8; 6]; 6] = [
    [0, 0, 1, 0, 1, 0],
    [0, 0, 0, 1, 0, 1],
    [1, 0, 0, 0, 1, 0],
    [0, 1, 0, 0, 0, 1],
    [1, 0, 1, 0, 0, 0],
    [0, 1, 0, 1, 0, 0],
];

/// Cycle notation of `π_{a,b}` for `n = 4`, by `a` then `b`.
pub const PAIR_CYCLES_N4: [&str; 6] = [
    "(1,4,2,3)",
    "(1,4,3,2)",
    "(1,2,4,3)",
    "(1,3,2,4)",
    "(1,2,3,4)",
    "(1,3,4,2)",
];
