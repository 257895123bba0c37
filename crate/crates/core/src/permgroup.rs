//! Permutations of `{1, ..., n}`, integer partitions, cycle types and the
//! conjugacy-class combinatorics of the symmetric group.
//!
//! Points are 1-based at every public boundary (one-line notation, cycle
//! notation, `apply`). Internally images are stored 0-based in a `u8`
//! array, which caps the degree at 255; everything in this crate works at
//! degree 12 or below anyway.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest degree whose lexicographic rank fits in a `u64` (20! < 2^64 < 21!).
pub const MAX_RANKED_DEGREE: usize = 20;

const MAX_DEGREE: usize = u8::MAX as usize;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u8]>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!((1..=MAX_DEGREE).contains(&n), "degree {n} out of range");
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    /// Builds a permutation from 1-based one-line notation.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::InvalidPermutation(format!(
                "degree {n} outside 1..={MAX_DEGREE}"
            )));
        }
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &v in images {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "image {v} not in 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::InvalidPermutation(format!("image {v} repeated")));
            }
            out.push((v - 1) as u8);
        }
        Ok(Permutation {
            images: out.into_boxed_slice(),
        })
    }

    /// Caller guarantees `images` is a bijection of `0..len`.
    pub(crate) fn from_zero_based_unchecked(images: Vec<u8>) -> Self {
        debug_assert!(is_bijection(&images));
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// Parses cycle notation such as `(1,4,2,3)(5,6)`; points not mentioned
    /// are fixed. `()` is the identity.
    pub fn from_cycles(text: &str, n: usize) -> Result<Self> {
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::InvalidPermutation(format!(
                "degree {n} outside 1..={MAX_DEGREE}"
            )));
        }
        let mut images: Vec<u8> = (0..n as u8).collect();
        let mut touched = vec![false; n];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body_start = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            let close = body_start
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
            let body = body_start[..close].trim();
            rest = body_start[close + 1..].trim_start();
            if body.is_empty() {
                continue;
            }
            let points = body
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|e| Error::Parse(format!("bad point {s:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            for &p in &points {
                if p == 0 || p > n {
                    return Err(Error::InvalidPermutation(format!(
                        "point {p} not in 1..={n}"
                    )));
                }
                if std::mem::replace(&mut touched[p - 1], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "point {p} appears in two cycles"
                    )));
                }
            }
            for (k, &p) in points.iter().enumerate() {
                let next = points[(k + 1) % points.len()];
                images[p - 1] = (next - 1) as u8;
            }
        }
        Ok(Permutation::from_zero_based_unchecked(images))
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize + 1).collect()
    }

    pub(crate) fn zero_based(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// `compose(p, q)(i) = p(q(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        self.check_degree(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other
                .images
                .iter()
                .map(|&j| self.images[j as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &v)| i == v as usize)
            .count()
    }

    /// Number of points on which the two permutations agree. Equals
    /// `fixed_points(inverse(p) * q)`.
    pub fn agreements(&self, other: &Permutation) -> Result<usize> {
        self.check_degree(other)?;
        Ok(self.agreements_unchecked(other))
    }

    pub(crate) fn agreements_unchecked(&self, other: &Permutation) -> usize {
        self.images
            .iter()
            .zip(other.images.iter())
            .filter(|(a, b)| a == b)
            .count()
    }

    /// Cycles as lists of 1-based points, each starting at its smallest
    /// point, ordered by that point. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.images[i] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut parts: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(IntegerPartition { parts })
    }

    pub fn is_n_cycle(&self) -> bool {
        self.cycle_type().parts() == [self.degree()]
    }

    /// Cycle notation with fixed points omitted, e.g. `(1,4,2,3)`. The
    /// identity prints as `()`.
    pub fn to_cycle_string(&self) -> String {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let body: Vec<String> = c.iter().map(usize::to_string).collect();
                format!("({})", body.join(","))
            })
            .collect()
    }

    /// Lexicographic rank of the one-line notation (Lehmer code).
    pub fn rank(&self) -> Result<u64> {
        let n = self.degree();
        if n > MAX_RANKED_DEGREE {
            return Err(Error::DegreeOutOfRange {
                what: "permutation ranking",
                degree: n,
                min: 1,
                max: MAX_RANKED_DEGREE,
            });
        }
        Ok(lehmer_rank(&self.images))
    }

    pub fn unrank(rank: u64, n: usize) -> Result<Permutation> {
        if n == 0 || n > MAX_RANKED_DEGREE {
            return Err(Error::DegreeOutOfRange {
                what: "permutation ranking",
                degree: n,
                min: 1,
                max: MAX_RANKED_DEGREE,
            });
        }
        if rank >= factorial_u64(n) {
            return Err(Error::RankOutOfRange { rank, degree: n });
        }
        let mut available: Vec<u8> = (0..n as u8).collect();
        let mut images = Vec::with_capacity(n);
        let mut r = rank;
        for k in (0..n).rev() {
            let f = factorial_u64(k);
            let idx = (r / f) as usize;
            r %= f;
            images.push(available.remove(idx));
        }
        Ok(Permutation::from_zero_based_unchecked(images))
    }

    fn check_degree(&self, other: &Permutation) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }
}

pub(crate) fn lehmer_rank(images: &[u8]) -> u64 {
    let n = images.len();
    let mut rank = 0u64;
    let mut used: u64 = 0;
    for (pos, &v) in images.iter().enumerate() {
        let smaller_unused = (v as u32 - (used & ((1u64 << v) - 1)).count_ones()) as u64;
        rank += smaller_unused * factorial_u64(n - 1 - pos);
        used |= 1u64 << v;
    }
    rank
}

fn is_bijection(images: &[u8]) -> bool {
    let mut seen = vec![false; images.len()];
    images
        .iter()
        .all(|&v| (v as usize) < images.len() && !std::mem::replace(&mut seen[v as usize], true))
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", *v as usize + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Parses comma-separated one-line notation (`4,3,1,2`); surrounding
/// brackets are tolerated.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let images = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad image {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(&images)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.one_line())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Permutation::from_images(&images).map_err(serde::de::Error::custom)
    }
}

/// All permutations of degree `n` in lexicographic order, so that the
/// element at index `r` has rank `r`.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let total = factorial_u64(n) as usize;
    let mut out = Vec::with_capacity(total);
    let mut current: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(Permutation::from_zero_based_unchecked(current.clone()));
        if !next_lexicographic(&mut current) {
            break;
        }
    }
    out
}

fn next_lexicographic(a: &mut [u8]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Parses newline-separated one-line permutations. Blank lines and lines
/// starting with `#` are ignored.
pub fn parse_permutation_list(text: &str) -> Result<Vec<Permutation>> {
    let perms = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            if l.starts_with('(') {
                Err(Error::Parse(format!(
                    "cycle notation needs an explicit degree: {l:?}"
                )))
            } else {
                l.parse()
            }
        })
        .collect::<Result<Vec<Permutation>>>()?;
    if let Some(first) = perms.first() {
        for p in &perms {
            first.check_degree(p)?;
        }
    }
    Ok(perms)
}

pub fn format_permutation_list(perms: &[Permutation]) -> String {
    let mut out = String::new();
    for p in perms {
        out.push_str(&p.to_string());
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Partitions
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IntegerPartition {
    parts: Vec<usize>,
}

impl IntegerPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("zero part in {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts not weakly decreasing: {parts:?}"
            )));
        }
        Ok(IntegerPartition { parts })
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(!parts.is_empty() && parts.windows(2).all(|w| w[0] >= w[1]));
        IntegerPartition { parts }
    }

    /// The one-row partition `[n]`.
    pub fn trivial(n: usize) -> Self {
        IntegerPartition { parts: vec![n] }
    }

    /// `[n-1, 1]`; requires `n >= 2`.
    pub fn standard(n: usize) -> Self {
        assert!(n >= 2);
        IntegerPartition {
            parts: vec![n - 1, 1],
        }
    }

    /// The hook `[n - k, 1^k]`.
    pub fn hook(n: usize, leg: usize) -> Self {
        assert!(leg < n);
        let mut parts = vec![n - leg];
        parts.extend(std::iter::repeat(1).take(leg));
        IntegerPartition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `n - λ₁`.
    pub fn depth(&self) -> usize {
        self.n() - self.parts[0]
    }

    pub fn is_hook(&self) -> bool {
        self.parts.iter().skip(1).all(|&p| p == 1)
    }

    pub fn conjugate(&self) -> IntegerPartition {
        let cols = self.parts[0];
        let parts = (0..cols)
            .map(|c| self.parts.iter().filter(|&&p| p > c).count())
            .collect();
        IntegerPartition { parts }
    }

    /// Hook lengths of every cell, row by row.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.n());
        for (r, &row_len) in self.parts.iter().enumerate() {
            for c in 0..row_len {
                let arm = row_len - c - 1;
                let leg = conj.parts[c] - r - 1;
                out.push(arm + leg + 1);
            }
        }
        out
    }

    /// Number of parts equal to `k`.
    pub fn multiplicity(&self, k: usize) -> usize {
        self.parts.iter().filter(|&&p| p == k).count()
    }
}

impl TryFrom<Vec<usize>> for IntegerPartition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        IntegerPartition::new(parts)
    }
}

impl From<IntegerPartition> for Vec<usize> {
    fn from(p: IntegerPartition) -> Self {
        p.parts
    }
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for IntegerPartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad part {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        IntegerPartition::new(parts)
    }
}

/// All partitions of `n` in reverse lexicographic order: `[n]` first and
/// `[1^n]` last.
pub fn partitions_of(n: usize) -> Vec<IntegerPartition> {
    assert!(n >= 1, "partitions_of needs n >= 1");
    let mut out = Vec::new();
    let mut current = vec![n];
    loop {
        out.push(IntegerPartition::from_sorted_unchecked(current.clone()));
        // Find the rightmost part larger than one, decrement it, and
        // redistribute the remainder greedily.
        let Some(pos) = current.iter().rposition(|&p| p > 1) else {
            break;
        };
        let ones = current.len() - pos - 1;
        let new_part = current[pos] - 1;
        current.truncate(pos);
        current.push(new_part);
        let mut remainder = ones + 1;
        while remainder > 0 {
            let take = remainder.min(new_part);
            current.push(take);
            remainder -= take;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Cycle types and classes
// ---------------------------------------------------------------------------

/// Cycle lengths of a permutation, indexing a conjugacy class of S(n).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleType(IntegerPartition);

impl CycleType {
    pub fn new(partition: IntegerPartition) -> Self {
        CycleType(partition)
    }

    pub fn partition(&self) -> &IntegerPartition {
        &self.0
    }

    pub fn parts(&self) -> &[usize] {
        self.0.parts()
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn identity(n: usize) -> Self {
        CycleType(IntegerPartition::from_sorted_unchecked(vec![1; n]))
    }

    pub fn fixed_points(&self) -> usize {
        self.0.multiplicity(1)
    }

    pub fn is_identity(&self) -> bool {
        self.fixed_points() == self.n()
    }

    pub fn is_derangement_class(&self) -> bool {
        self.fixed_points() == 0
    }

    /// `n! / prod_k k^{m_k} m_k!`.
    pub fn class_size(&self) -> BigUint {
        let mut centralizer = BigUint::one();
        let mut k = 0;
        while k < self.parts().len() {
            let part = self.parts()[k];
            let m = self.0.multiplicity(part);
            centralizer *= BigUint::from(part).pow(m as u32) * factorial(m);
            k += m;
        }
        factorial(self.n()) / centralizer
    }

    /// The permutation whose cycles are consecutive runs of points,
    /// longest cycle first: `[3,2]` gives `(1,2,3)(4,5)`.
    pub fn representative(&self) -> Permutation {
        let mut images = Vec::with_capacity(self.n());
        let mut start = 0u8;
        for &len in self.parts() {
            for k in 0..len as u8 {
                images.push(start + (k + 1) % len as u8);
            }
            start += len as u8;
        }
        Permutation::from_zero_based_unchecked(images)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub cycle_type: CycleType,
    pub size: BigUint,
    pub representative: Permutation,
}

impl ClassInfo {
    pub fn new(cycle_type: CycleType) -> Self {
        ClassInfo {
            size: cycle_type.class_size(),
            representative: cycle_type.representative(),
            cycle_type,
        }
    }
}

/// Conjugacy classes of S(n), in the same reverse-lexicographic order as
/// [`partitions_of`].
pub fn conjugacy_classes(n: usize) -> Vec<ClassInfo> {
    partitions_of(n)
        .into_iter()
        .map(|p| ClassInfo::new(CycleType(p)))
        .collect()
}

pub fn class_size(t: &CycleType) -> BigUint {
    t.class_size()
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// `n!` as a `u64`; panics above 20.
pub fn factorial_u64(n: usize) -> u64 {
    assert!(n <= MAX_RANKED_DEGREE, "{n}! does not fit in u64");
    (1..=n as u64).product()
}

/// Number of fixed-point-free permutations of `n` points, by
/// `d(n) = (n-1)(d(n-1) + d(n-2))` from `d(1) = 0`, `d(2) = 1`.
pub fn derangement_count(n: usize) -> BigUint {
    assert!(n >= 1, "derangement_count needs n >= 1");
    let mut prev = BigUint::zero(); // d(1)
    if n == 1 {
        return prev;
    }
    let mut cur = BigUint::one(); // d(2)
    for m in 3..=n {
        let next = BigUint::from(m - 1) * (&cur + &prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::from_images(v).unwrap()
    }

    #[test]
    fn rank_unrank_endpoints() {
        assert_eq!(Permutation::identity(4).rank().unwrap(), 0);
        assert_eq!(Permutation::unrank(23, 4).unwrap(), perm(&[4, 3, 2, 1]));
        assert!(matches!(
            Permutation::unrank(24, 4),
            Err(Error::RankOutOfRange { rank: 24, degree: 4 })
        ));
    }

    #[test]
    fn rank_unrank_exhaustive_small() {
        for n in 1..=6 {
            let all = all_permutations(n);
            assert_eq!(all.len() as u64, factorial_u64(n));
            for (r, p) in all.iter().enumerate() {
                assert_eq!(p.rank().unwrap(), r as u64);
                assert_eq!(&Permutation::unrank(r as u64, n).unwrap(), p);
            }
        }
    }

    #[test]
    fn compose_and_inverse() {
        let q = perm(&[2, 3, 1]);
        assert_eq!(Permutation::identity(3).compose(&q).unwrap(), q);
        assert_eq!(q.inverse(), perm(&[3, 1, 2]));
        let p = perm(&[2, 1, 3]);
        // p(q(1)) = p(2) = 1
        assert_eq!(p.compose(&q).unwrap().apply(1), 1);
        assert!(matches!(
            p.compose(&Permutation::identity(4)),
            Err(Error::DegreeMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn cycle_types() {
        let id = Permutation::identity(5);
        assert_eq!(id.cycle_type().parts(), [1, 1, 1, 1, 1]);
        assert_eq!(id.fixed_points(), 5);
        let c = perm(&[4, 3, 1, 2]);
        assert_eq!(c.cycle_type().parts(), [4]);
        assert_eq!(c.fixed_points(), 0);
        assert_eq!(c.to_cycle_string(), "(1,4,2,3)");
    }

    #[test]
    fn cycle_type_counts_match_class_sizes() {
        for n in 1..=6 {
            let mut counts = std::collections::HashMap::new();
            for p in all_permutations(n) {
                *counts.entry(p.cycle_type()).or_insert(0usize) += 1;
            }
            for class in conjugacy_classes(n) {
                assert_eq!(
                    BigUint::from(counts[&class.cycle_type]),
                    class.size,
                    "n={n} class {}",
                    class.cycle_type
                );
                assert_eq!(class.representative.cycle_type(), class.cycle_type);
            }
        }
    }

    #[test]
    fn small_class_sizes() {
        let ct = |v: Vec<usize>| CycleType::new(IntegerPartition::new(v).unwrap());
        assert_eq!(ct(vec![1, 1, 1, 1]).class_size(), BigUint::from(1u32));
        assert_eq!(ct(vec![2, 2]).class_size(), BigUint::from(3u32));
        assert_eq!(ct(vec![4]).class_size(), BigUint::from(6u32));
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 1..=10 {
            let total: BigUint = conjugacy_classes(n).iter().map(|c| &c.size).sum();
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn agreements_examples() {
        let a = perm(&[1, 2, 4, 3]);
        let b = perm(&[1, 3, 4, 2]);
        assert_eq!(a.agreements(&b).unwrap(), 2);
        assert_eq!(a.agreements(&a).unwrap(), 4);
        let der = perm(&[2, 3, 4, 1]);
        assert_eq!(Permutation::identity(4).agreements(&der).unwrap(), 0);
    }

    #[test]
    fn partition_enumeration() {
        assert_eq!(partitions_of(1), vec![IntegerPartition::trivial(1)]);
        let p4: Vec<Vec<usize>> = partitions_of(4).into_iter().map(Into::into).collect();
        assert_eq!(
            p4,
            vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
        // Classical partition numbers.
        let counts: Vec<usize> = (1..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        for n in 1..=10 {
            let ps = partitions_of(n);
            assert!(ps.windows(2).all(|w| w[0] > w[1]), "not reverse lex at {n}");
            assert!(ps.iter().all(|p| p.n() == n));
        }
    }

    #[test]
    fn derangements_match_brute_force() {
        assert_eq!(derangement_count(1), BigUint::zero());
        assert_eq!(derangement_count(2), BigUint::one());
        for n in 1..=8 {
            let brute = all_permutations(n)
                .iter()
                .filter(|p| p.fixed_points() == 0)
                .count();
            assert_eq!(derangement_count(n), BigUint::from(brute), "n={n}");
        }
        assert_eq!(derangement_count(4), BigUint::from(9u32));
        assert_eq!(derangement_count(7), BigUint::from(1854u32));
    }

    #[test]
    fn hook_and_depth() {
        let p = IntegerPartition::new(vec![3, 2, 1]).unwrap();
        assert_eq!(p.depth(), 3);
        assert_eq!(p.conjugate(), p);
        assert_eq!(p.hook_lengths(), vec![5, 3, 1, 3, 1, 1]);
        assert!(IntegerPartition::hook(5, 3).is_hook());
        assert!(IntegerPartition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn parsing() {
        let p: Permutation = "4,3,1,2".parse().unwrap();
        assert_eq!(p, Permutation::from_cycles("(1,4,2,3)", 4).unwrap());
        assert_eq!(Permutation::from_cycles("()", 3).unwrap(), Permutation::identity(3));
        assert_eq!(
            Permutation::from_cycles("(1,2)(3,4)", 5).unwrap(),
            perm(&[2, 1, 4, 3, 5])
        );
        assert!("1,1,2".parse::<Permutation>().is_err());
        assert!(Permutation::from_cycles("(1,2)(2,3)", 3).is_err());
        let list = parse_permutation_list("# family\n1,2,3\n\n2,1,3\n").unwrap();
        assert_eq!(list.len(), 2);
        assert_eq!(format_permutation_list(&list), "1,2,3\n2,1,3\n");
        assert!(parse_permutation_list("1,2\n1,2,3").is_err());
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        (0..factorial_u64(n)).prop_map(move |r| Permutation::unrank(r, n).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_cancels(p in arb_perm(7)) {
            prop_assert!(p.inverse().compose(&p).unwrap().is_identity());
            prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        }

        #[test]
        fn agreements_reduce_to_fixed_points(p in arb_perm(8), q in arb_perm(8)) {
            let via_quotient = p.inverse().compose(&q).unwrap().fixed_points();
            prop_assert_eq!(p.agreements(&q).unwrap(), via_quotient);
        }

        #[test]
        fn rank_round_trip(r in 0u64..factorial_u64(12)) {
            let p = Permutation::unrank(r, 12).unwrap();
            prop_assert_eq!(p.rank().unwrap(), r);
        }

        #[test]
        fn cycle_string_round_trip(p in arb_perm(9)) {
            let s = p.to_cycle_string();
            prop_assert_eq!(Permutation::from_cycles(&s, 9).unwrap(), p);
        }
    }
}
