//! Maximum independent sets of the derangement graph, matched against the
//! point stabilizer cosets `S_{i,j}`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::incidence::IncidenceH;
use crate::error::Result;
use crate::graphs::{max_independent_sets, Family};
use crate::linalg::RationalVector;
use crate::permgroup::Permutation;
use crate::scheme::ser_rational;

#[derive(Clone, Debug, Serialize)]
pub struct SetClassification {
    /// `(i, j)` with the set equal to `S_{i,j}`, if any.
    pub matches: Option<(usize, usize)>,
    /// After left-multiplying by the inverse of the first member, the set
    /// is `S_{k,k}` for this `k`.
    pub translated_point: Option<usize>,
    /// 1 when the translated vector is in the column space of `H`, 2 when
    /// it needs `𝟙` as well.
    pub case: u8,
    /// Coefficient of `𝟙` in case 2.
    #[serde(serialize_with = "ser_opt_rational")]
    pub ones_coefficient: Option<BigRational>,
    /// The recovered coordinates are `e_{(k,k)}` in case 1 and
    /// `(1, …, 1, −(n−2))` in case 2.
    pub coefficients_match: bool,
}

fn ser_opt_rational<S: serde::Serializer>(
    v: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => ser_rational(x, s),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub alpha: usize,
    pub count: usize,
    pub all_canonical: bool,
    pub all_coefficients_match: bool,
    pub sets: Vec<SetClassification>,
}

impl ClassificationReport {
    pub fn pass(&self) -> bool {
        self.count == self.n * self.n && self.all_canonical && self.all_coefficients_match
    }
}

fn rank_set(members: &[Permutation]) -> Result<HashSet<u64>> {
    members.iter().map(Permutation::rank).collect()
}

/// Exhaustive search, then for each maximum set: match it to some
/// `S_{i,j}`, translate it to contain the identity, and recover its
/// coordinates against `[H | 𝟙]`.
pub fn classify_maximum_sets(n: usize, workers: usize) -> Result<ClassificationReport> {
    let search = max_independent_sets(n, 0, workers)?;
    let h = IncidenceH::new(n)?;
    let hm = h.matrix();
    let with_ones = hm.append_column(&RationalVector::constant(h.rows(), BigRational::one()));
    let mut stabilizers = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            stabilizers.push(((i, j), rank_set(&Family::point(n, i, j)?.members)?));
        }
    }
    let find = |ranks: &HashSet<u64>| stabilizers.iter().find(|(_, s)| s == ranks).map(|(p, _)| *p);

    let mut sets = Vec::new();
    for set in &search.sets {
        let matches = find(&rank_set(set)?);
        let g_inv = set[0].inverse();
        let translated: Vec<Permutation> = set.iter().map(|s| g_inv.compose_unchecked(s)).collect();
        let translated_point = find(&rank_set(&translated)?).and_then(|(i, j)| (i == j).then_some(i));

        let v = RationalVector::indicator(
            h.rows(),
            translated.iter().map(|p| p.rank().expect("small degree") as usize),
        );
        let (case, ones_coefficient, coefficients_match) = match hm.solve(&v)? {
            Some(y) => {
                let expected = translated_point.filter(|&k| k < n).map(|k| {
                    RationalVector::indicator(h.cols(), [h.column_index(k, k)])
                });
                (1, None, expected.as_ref() == Some(&y))
            }
            None => {
                let y = with_ones.solve(&v)?.unwrap_or_else(|| RationalVector::zeros(h.cols() + 1));
                let mut expected = vec![BigRational::one(); h.cols()];
                expected.push(BigRational::from_integer(-BigInt::from(n - 2)));
                let c = y[h.cols()].clone();
                (2, Some(c), y == RationalVector(expected))
            }
        };
        sets.push(SetClassification {
            matches,
            translated_point,
            case,
            ones_coefficient,
            coefficients_match,
        });
    }
    Ok(ClassificationReport {
        n,
        alpha: search.alpha,
        count: sets.len(),
        all_canonical: sets.iter().all(|s| s.matches.is_some() && s.translated_point.is_some()),
        all_coefficients_match: sets.iter().all(|s| s.coefficients_match),
        sets,
    })
}
