//! The permutation graphs `P_t(n)`, explicit cliques, point-pair families
//! and independent-set search.
//!
//! `P_t(n)` has the permutations of degree `n` as vertices, two of them
//! adjacent when they agree on at most `t` points. `P_0(n)` is the
//! derangement graph.

mod cliques;
mod field;
mod latin;
mod search;

pub use cliques::{
    affine_clique, arcs_partition_digraph, cycle_decomposition_clique, latin_clique,
    odd_n_latin_clique, CliqueCertificate, Construction, MAX_EVEN_CYCLE_DEGREE,
};
pub use field::{FiniteField, SUPPORTED_ORDERS};
pub use latin::{complete_latin_rectangle, is_latin_rectangle};
pub use search::{coset_cover, cover_clique, max_independent_sets, SearchResult, MAX_SEARCH_DEGREE};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::permgroup::{all_permutations, conjugacy_classes, derangement_count, Permutation};

/// Largest degree stored as an explicit adjacency bit-matrix.
pub const MAX_EXPLICIT_DEGREE: usize = 6;

/// Largest degree for which [`equitable_quotient`] counts edges directly.
pub const MAX_QUOTIENT_DEGREE: usize = 7;

enum Adjacency {
    Explicit {
        vertices: Vec<Permutation>,
        words: usize,
        bits: Vec<u64>,
    },
    Predicate,
}

pub struct PermutationGraph {
    n: usize,
    t: usize,
    valency: BigUint,
    adjacency: Adjacency,
}

/// Builds `P_t(n)`; explicit for `n ≤ 6`, predicate-backed above.
pub fn build_graph(n: usize, t: usize) -> Result<PermutationGraph> {
    if n < 2 || n > u8::MAX as usize {
        return Err(Error::DegreeOutOfRange {
            what: "permutation graph",
            degree: n,
            min: 2,
            max: u8::MAX as usize,
        });
    }
    if t + 1 >= n {
        return Err(Error::ParameterOutOfRange(format!(
            "threshold t={t} must satisfy t < n - 1 = {}",
            n - 1
        )));
    }
    let valency = conjugacy_classes(n)
        .into_iter()
        .filter(|c| !c.cycle_type.is_identity() && c.cycle_type.fixed_points() <= t)
        .map(|c| c.size)
        .sum();
    let adjacency = if n <= MAX_EXPLICIT_DEGREE {
        let vertices = all_permutations(n);
        let size = vertices.len();
        let words = size.div_ceil(64);
        let mut bits = vec![0u64; size * words];
        for (a, p) in vertices.iter().enumerate() {
            for (b, q) in vertices.iter().enumerate().skip(a + 1) {
                if p.agreements_unchecked(q) <= t {
                    bits[a * words + b / 64] |= 1 << (b % 64);
                    bits[b * words + a / 64] |= 1 << (a % 64);
                }
            }
        }
        Adjacency::Explicit {
            vertices,
            words,
            bits,
        }
    } else {
        Adjacency::Predicate
    };
    Ok(PermutationGraph {
        n,
        t,
        valency,
        adjacency,
    })
}

impl PermutationGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Common degree: the total size of the non-identity classes with at
    /// most `t` fixed points.
    pub fn valency(&self) -> &BigUint {
        &self.valency
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self.adjacency, Adjacency::Explicit { .. })
    }

    pub fn adjacent(&self, p: &Permutation, q: &Permutation) -> Result<bool> {
        let a = p.agreements(q)?;
        if p.degree() != self.n {
            return Err(Error::DegreeMismatch {
                left: self.n,
                right: p.degree(),
            });
        }
        Ok(p != q && a <= self.t)
    }

    /// Degree of every vertex, from the bit-matrix. `None` in predicate mode.
    pub fn degrees(&self) -> Option<Vec<usize>> {
        match &self.adjacency {
            Adjacency::Explicit { words, bits, .. } => Some(
                bits.chunks(*words)
                    .map(|row| row.iter().map(|w| w.count_ones() as usize).sum())
                    .collect(),
            ),
            Adjacency::Predicate => None,
        }
    }

    /// Neighbour ranks of the vertex with rank `r`, explicit mode only.
    pub fn neighbors(&self, r: usize) -> Option<Vec<usize>> {
        match &self.adjacency {
            Adjacency::Explicit {
                vertices,
                words,
                bits,
            } => Some(
                (0..vertices.len())
                    .filter(|&b| bits[r * words + b / 64] >> (b % 64) & 1 == 1)
                    .collect(),
            ),
            Adjacency::Predicate => None,
        }
    }

    /// Simple (symmetric, loopless) and regular of the class-sum valency.
    pub fn check_structure(&self) -> Option<bool> {
        let Adjacency::Explicit { vertices, words, bits } = &self.adjacency else {
            return None;
        };
        let bit = |a: usize, b: usize| bits[a * words + b / 64] >> (b % 64) & 1 == 1;
        let size = vertices.len();
        let symmetric = (0..size).all(|a| !bit(a, a) && (0..size).all(|b| bit(a, b) == bit(b, a)));
        let regular = self
            .degrees()?
            .iter()
            .all(|&d| BigUint::from(d) == self.valency);
        Some(symmetric && regular)
    }
}

/// `S_A = {π : π(x) = y for all (x, y) ∈ A}`, 1-based points.
#[derive(Clone, Debug, Serialize)]
pub struct Family {
    pub n: usize,
    pub constraints: Vec<(usize, usize)>,
    pub members: Vec<Permutation>,
}

impl Family {
    pub fn new(n: usize, constraints: &[(usize, usize)]) -> Result<Self> {
        if constraints.len() >= n {
            return Err(Error::ParameterOutOfRange(format!(
                "{} constraints on {n} points; at most {} allowed",
                constraints.len(),
                n.saturating_sub(1)
            )));
        }
        let mut fixed = vec![None; n];
        let mut used = vec![false; n];
        for &(x, y) in constraints {
            if !(1..=n).contains(&x) || !(1..=n).contains(&y) {
                return Err(Error::ParameterOutOfRange(format!(
                    "constraint ({x},{y}) outside 1..={n}"
                )));
            }
            if fixed[x - 1].is_some() || used[y - 1] {
                return Err(Error::ConflictingConstraints(format!(
                    "point {x} or image {y} appears twice"
                )));
            }
            fixed[x - 1] = Some(y - 1);
            used[y - 1] = true;
        }
        let free_points: Vec<usize> = (0..n).filter(|&i| fixed[i].is_none()).collect();
        let free_images: Vec<usize> = (0..n).filter(|&j| !used[j]).collect();
        let mut members = Vec::new();
        for arrangement in all_permutations(free_points.len()) {
            let mut images = vec![0u8; n];
            for (i, f) in fixed.iter().enumerate() {
                if let Some(y) = f {
                    images[i] = *y as u8;
                }
            }
            for (k, &i) in free_points.iter().enumerate() {
                images[i] = free_images[arrangement.apply(k + 1) - 1] as u8;
            }
            members.push(Permutation::from_zero_based_unchecked(images));
        }
        Ok(Family {
            n,
            constraints: constraints.to_vec(),
            members,
        })
    }

    /// `S_{i,j}`.
    pub fn point(n: usize, i: usize, j: usize) -> Result<Self> {
        Family::new(n, &[(i, j)])
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.constraints.iter().all(|&(x, y)| p.apply(x) == y)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyValidation {
    pub valid: bool,
    /// An adjacent pair and its number of agreements.
    pub witness: Option<(Permutation, Permutation, usize)>,
}

/// Whether the set is independent in `P_t(n)`: every two distinct members
/// agree on more than `t` points.
pub fn validate_family(members: &[Permutation], t: usize) -> FamilyValidation {
    for (i, p) in members.iter().enumerate() {
        for q in &members[i + 1..] {
            let a = if p.degree() == q.degree() {
                p.agreements_unchecked(q)
            } else {
                0
            };
            if p != q && a <= t {
                return FamilyValidation {
                    valid: false,
                    witness: Some((p.clone(), q.clone(), a)),
                };
            }
        }
    }
    FamilyValidation {
        valid: true,
        witness: None,
    }
}

#[derive(Clone, Debug)]
pub struct EquitableQuotient {
    pub n: usize,
    /// Edge counts between `S_{n,n}` (cell 0) and its complement (cell 1).
    pub matrix: RationalMatrix,
    /// `[[0, d], [d/(n−1), d − d/(n−1)]]` with `d = d(n)`.
    pub closed_form: RationalMatrix,
    /// Whether every vertex of a cell saw the same counts.
    pub equitable: bool,
    /// Eigenvalues of `matrix`, largest first.
    pub eigenvalues: Vec<BigRational>,
}

/// Partition of `P_0(n)` into the stabilizer of point `n` and its
/// complement, with edge counts taken directly from the graph.
pub fn equitable_quotient(n: usize) -> Result<EquitableQuotient> {
    if !(2..=MAX_QUOTIENT_DEGREE).contains(&n) {
        return Err(Error::DegreeOutOfRange {
            what: "equitable quotient",
            degree: n,
            min: 2,
            max: MAX_QUOTIENT_DEGREE,
        });
    }
    let vertices = all_permutations(n);
    let cell = |p: &Permutation| usize::from(p.apply(n) != n);
    let mut counts: [Option<[usize; 2]>; 2] = [None, None];
    let mut equitable = true;
    for p in &vertices {
        let mut row = [0usize; 2];
        for q in &vertices {
            if p.agreements_unchecked(q) == 0 {
                row[cell(q)] += 1;
            }
        }
        match &counts[cell(p)] {
            None => counts[cell(p)] = Some(row),
            Some(seen) => equitable &= *seen == row,
        }
    }
    let rows: Vec<[usize; 2]> = counts.iter().map(|c| c.expect("both cells nonempty")).collect();
    let matrix = RationalMatrix::from_integer_fn(2, 2, |r, c| rows[r][c] as i64);

    let d = BigRational::from_integer(BigInt::from(derangement_count(n)));
    let share = &d / BigRational::from_integer(BigInt::from(n - 1));
    let closed_entries = [
        [BigRational::zero(), d.clone()],
        [share.clone(), &d - &share],
    ];
    let closed_form = RationalMatrix::from_fn(2, 2, |r, c| closed_entries[r][c].clone());
    let eigenvalues = eigenvalues_2x2(&matrix)?;
    Ok(EquitableQuotient {
        n,
        matrix,
        closed_form,
        equitable,
        eigenvalues,
    })
}

/// Rational eigenvalues of a 2×2 matrix; errors if they are irrational.
fn eigenvalues_2x2(m: &RationalMatrix) -> Result<Vec<BigRational>> {
    let tr = &m[(0, 0)] + &m[(1, 1)];
    let det = &m[(0, 0)] * &m[(1, 1)] - &m[(0, 1)] * &m[(1, 0)];
    let disc = &tr * &tr - BigRational::from_integer(4.into()) * det;
    let irrational = || Error::ParameterOutOfRange(format!("discriminant {disc} is not a rational square"));
    if disc.is_negative() {
        return Err(irrational());
    }
    let (num, den) = (disc.numer().clone(), disc.denom().clone());
    let (rn, rd) = (num.sqrt(), den.sqrt());
    if &rn * &rn != num || &rd * &rd != den {
        return Err(irrational());
    }
    let root = BigRational::new(rn, rd);
    let two = BigRational::from_integer(2.into());
    Ok(vec![(&tr + &root) / &two, (&tr - &root) / &two])
}
