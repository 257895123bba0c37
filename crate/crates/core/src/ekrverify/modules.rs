//! Which isotypic components characteristic vectors of families meet.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::incidence::IncidenceH;
use crate::error::{Error, Result};
use crate::graphs::Family;
use crate::linalg::{bareiss_rank, integer_rank_mod_p, RationalMatrix, RationalVector, MERSENNE_61};
use crate::permgroup::{IntegerPartition, Permutation};
use crate::scheme::{ser_rational, ConjugacyScheme};

/// Largest degree for support and span computations.
pub const MAX_MODULE_DEGREE: usize = 6;

#[derive(Clone, Debug, Serialize)]
pub struct SupportEntry {
    pub partition: IntegerPartition,
    /// `‖E_λ (v_S − c𝟙)‖²`.
    #[serde(serialize_with = "ser_rational")]
    pub norm_sq: BigRational,
}

impl SupportEntry {
    pub fn nonzero(&self) -> bool {
        !self.norm_sq.is_zero()
    }
}

fn check_module_degree(n: usize) -> Result<()> {
    if n > MAX_MODULE_DEGREE {
        return Err(Error::DegreeOutOfRange {
            what: "module support",
            degree: n,
            min: 1,
            max: MAX_MODULE_DEGREE,
        });
    }
    Ok(())
}

/// Projections of `v_S − c𝟙` for every partition.
///
/// Only `E_[n]` sees the constant vector (`E_λ 𝟙 = 0` otherwise), so the
/// sparse `v_S` is projected and the trivial component corrected:
/// `E_[n](v_S − c𝟙) = (|S|/n! − c) 𝟙`.
pub fn shifted_support(
    scheme: &ConjugacyScheme,
    members: &[Permutation],
    shift: &BigRational,
) -> Result<Vec<SupportEntry>> {
    check_module_degree(scheme.n())?;
    let v = scheme.characteristic_vector(members)?;
    let order = BigRational::from_integer(BigInt::from(scheme.order().clone()));
    let mut out = Vec::new();
    for (row, proj) in scheme.project_all(&v)?.into_iter().enumerate() {
        let norm_sq = if row == 0 {
            let level = BigRational::from_integer(BigInt::from(members.len())) / &order - shift;
            &level * &level * &order
        } else {
            proj.norm_sq().clone()
        };
        out.push(SupportEntry {
            partition: proj.partition,
            norm_sq,
        });
    }
    Ok(out)
}

/// Support of `v_S − (1/n)𝟙`.
pub fn module_support(scheme: &ConjugacyScheme, members: &[Permutation]) -> Result<Vec<SupportEntry>> {
    let shift = BigRational::new(BigInt::one(), BigInt::from(scheme.n()));
    shifted_support(scheme, members, &shift)
}

pub fn support_partitions(entries: &[SupportEntry]) -> Vec<IntegerPartition> {
    entries
        .iter()
        .filter(|e| e.nonzero())
        .map(|e| e.partition.clone())
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisReport {
    pub n: usize,
    /// Rank of `{h_{i,j} − (1/n)𝟙}`.
    pub rank: usize,
    /// `χ_[n−1,1](1)² = (n−1)²`.
    pub expected: usize,
    /// Every `S_{i,j}` has support exactly `{[n−1,1]}`.
    pub supports_ok: bool,
    /// `rank [H | 𝟙] = rank H + 1`.
    pub ones_outside_span: bool,
}

impl BasisReport {
    pub fn pass(&self) -> bool {
        self.rank == self.expected && self.supports_ok && self.ones_outside_span
    }
}

/// The shifted columns of `H` are independent, lie in the `[n−1,1]`
/// module, and match its dimension.
pub fn basis_check(scheme: &ConjugacyScheme) -> Result<BasisReport> {
    let n = scheme.n();
    check_module_degree(n)?;
    let h = IncidenceH::new(n)?;
    let standard = IntegerPartition::standard(n);
    let row = scheme.table().row_of(&standard).expect("standard partition");
    let expected = scheme.table().dimension(row).pow(2);
    let expected = usize::try_from(&expected).expect("small dimension");

    // n·h − 𝟙 is a nonzero multiple of each shifted column.
    let nn = n as i64;
    let shifted = RationalMatrix::from_integer_fn(h.rows(), h.cols(), |r, c| {
        nn * i64::from(h.entry(r, c)) - 1
    });
    let rank = shifted.rank();

    let mut supports_ok = true;
    for (i, j) in h.columns() {
        let fam = Family::point(n, i, j)?;
        let support = support_partitions(&module_support(scheme, &fam.members)?);
        supports_ok &= support == [standard.clone()];
    }

    let hm = h.matrix();
    let with_ones = hm.append_column(&RationalVector::constant(h.rows(), BigRational::one()));
    let ones_outside_span = with_ones.rank() == h.rank() + 1;
    Ok(BasisReport {
        n,
        rank,
        expected,
        supports_ok,
        ones_outside_span,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RankCertificate {
    pub rank: usize,
    /// `"modular-meets-support"` when the rank mod `2^61−1` equals the
    /// dimension of the modules the vectors are confined to, `"bareiss"`
    /// otherwise.
    pub method: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct DepthReport {
    pub n: usize,
    pub t: usize,
    pub depth: usize,
    /// Partitions of depth at most `depth`.
    pub partitions: Vec<IntegerPartition>,
    #[serde(serialize_with = "crate::scheme::ser_display")]
    pub module_dim_sum: BigUint,
    /// Number of families `S_A` with `|A| = t + 1`.
    pub families: usize,
    /// Rank of `{v_{S_A} − (|S_A|/n!)𝟙}`.
    pub span_rank_shifted: RankCertificate,
    /// Rank of the same vectors together with `𝟙`.
    pub span_rank_with_ones: RankCertificate,
    /// Partitions met by at least one shifted vector.
    pub support_union: Vec<IntegerPartition>,
    /// Every shifted vector lies in the depth-bounded modules.
    pub support_contained: bool,
    pub agrees_shifted: bool,
    pub agrees_with_ones: bool,
}

/// All `A` of size `k`: increasing points `x`, distinct images `y`.
pub fn constraint_sets(n: usize, k: usize) -> Vec<Vec<(usize, usize)>> {
    fn points(start: usize, n: usize, k: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for x in start..=n {
            acc.push(x);
            points(x + 1, n, k, acc, out);
            acc.pop();
        }
    }
    fn images(n: usize, k: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for y in 1..=n {
            if !acc.contains(&y) {
                acc.push(y);
                images(n, k, acc, out);
                acc.pop();
            }
        }
    }
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    points(1, n, k, &mut Vec::new(), &mut xs);
    images(n, k, &mut Vec::new(), &mut ys);
    xs.iter()
        .flat_map(|x| ys.iter().map(move |y| x.iter().copied().zip(y.iter().copied()).collect()))
        .collect()
}

fn certified_rank(rows: &[Vec<i64>], cols: usize, upper: usize) -> RankCertificate {
    let lower = integer_rank_mod_p(rows, cols, MERSENNE_61);
    if lower == upper {
        RankCertificate {
            rank: lower,
            method: "modular-meets-support",
        }
    } else {
        RankCertificate {
            rank: bareiss_rank(
                rows.iter()
                    .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                    .collect(),
                cols,
            ),
            method: "bareiss",
        }
    }
}

/// Dimensions behind the conjecture that maximum `t`-intersecting families
/// live in the modules of shallow partitions.
pub fn depth_conjecture_dims(scheme: &ConjugacyScheme, t: usize, depth: usize) -> Result<DepthReport> {
    let n = scheme.n();
    check_module_degree(n)?;
    if t == 0 || t + 1 >= n {
        return Err(Error::ParameterOutOfRange(format!(
            "threshold t={t} must satisfy 1 ≤ t < n − 1 = {}",
            n.saturating_sub(1)
        )));
    }
    let table = scheme.table();
    let in_depth: Vec<bool> = table.partitions().iter().map(|l| l.depth() <= depth).collect();
    let dim = |rows: &mut dyn Iterator<Item = usize>| -> BigUint {
        rows.map(|r| table.dimension(r).pow(2)).sum()
    };
    let module_dim_sum = dim(&mut (0..table.size()).filter(|&r| in_depth[r]));

    let order = BigInt::from(scheme.order().clone());
    let mut met = vec![false; table.size()];
    let mut vectors = Vec::new();
    for a in constraint_sets(n, t + 1) {
        let fam = Family::new(n, &a)?;
        let shift = BigRational::new(BigInt::from(fam.len()), order.clone());
        for (r, e) in shifted_support(scheme, &fam.members, &shift)?.iter().enumerate() {
            met[r] |= e.nonzero();
        }
        // n!·v − |S|·𝟙, a positive multiple of the shifted vector.
        let ranks: Vec<usize> = fam
            .members
            .iter()
            .map(|p| p.rank().map(|r| r as usize))
            .collect::<Result<_>>()?;
        let mut row = vec![-(fam.len() as i64); scheme.group_size()];
        let scale = i64::try_from(&order).expect("n! fits i64");
        for r in ranks {
            row[r] += scale;
        }
        vectors.push(row);
    }
    let families = vectors.len();
    let size = scheme.group_size();

    let support_contained = (0..table.size()).all(|r| !met[r] || in_depth[r]);
    let support_union: Vec<IntegerPartition> = (0..table.size())
        .filter(|&r| met[r])
        .map(|r| table.partitions()[r].clone())
        .collect();
    let upper_shifted = dim(&mut (0..table.size()).filter(|&r| met[r]));
    let upper_ones = dim(&mut (0..table.size()).filter(|&r| met[r] || r == 0));
    let to_usize = |x: BigUint| usize::try_from(&x).expect("dimension fits usize");
    let span_rank_shifted = certified_rank(&vectors, size, to_usize(upper_shifted));
    vectors.push(vec![1; size]);
    let span_rank_with_ones = certified_rank(&vectors, size, to_usize(upper_ones));
    let dim_sum = to_usize(module_dim_sum.clone());
    Ok(DepthReport {
        n,
        t,
        depth,
        partitions: table
            .partitions()
            .iter()
            .zip(&in_depth)
            .filter(|(_, &d)| d)
            .map(|(l, _)| l.clone())
            .collect(),
        agrees_shifted: span_rank_shifted.rank == dim_sum,
        agrees_with_ones: span_rank_with_ones.rank == dim_sum,
        module_dim_sum,
        families,
        span_rank_shifted,
        span_rank_with_ones,
        support_union,
        support_contained,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational;

    fn part(v: &[usize]) -> IntegerPartition {
        IntegerPartition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn shortcut_matches_dense_projection() {
        let s = ConjugacyScheme::new(4).unwrap();
        let fam = Family::new(4, &[(1, 2), (3, 3)]).unwrap();
        let shift = rational(1, 4);
        let fast = shifted_support(&s, &fam.members, &shift).unwrap();
        let dense = s
            .characteristic_vector(&fam.members)
            .unwrap()
            .sub(&RationalVector::constant(24, shift));
        for (e, p) in fast.iter().zip(s.project_all(&dense).unwrap()) {
            assert_eq!(&e.norm_sq, p.norm_sq());
        }
    }

    #[test]
    fn point_family_support() {
        let s = ConjugacyScheme::new(5).unwrap();
        let fam = Family::point(5, 2, 3).unwrap();
        let support = support_partitions(&module_support(&s, &fam.members).unwrap());
        assert_eq!(support, vec![part(&[4, 1])]);
        // The whole group is constant, so it sits in the trivial module.
        let all = s.elements().unwrap().to_vec();
        let support = support_partitions(&module_support(&s, &all).unwrap());
        assert_eq!(support, vec![part(&[5])]);
    }

    #[test]
    fn basis_small() {
        for n in 3..=5 {
            let r = basis_check(&ConjugacyScheme::new(n).unwrap()).unwrap();
            assert!(r.pass(), "{r:?}");
            assert_eq!(r.rank, (n - 1) * (n - 1));
        }
    }

    #[test]
    fn constraint_set_count() {
        assert_eq!(constraint_sets(4, 2).len(), 6 * 12);
        assert_eq!(constraint_sets(5, 1).len(), 25);
    }

    #[test]
    fn depth_n4() {
        let s = ConjugacyScheme::new(4).unwrap();
        let r = depth_conjecture_dims(&s, 1, 2).unwrap();
        assert_eq!(r.module_dim_sum, BigUint::from(23u32));
        assert!(r.support_contained);
        let fam = Family::new(4, &[(1, 1), (2, 2)]).unwrap();
        let support = support_partitions(&shifted_support(&s, &fam.members, &rational(2, 24)).unwrap());
        assert!(support
            .iter()
            .all(|l| [part(&[3, 1]), part(&[2, 2]), part(&[2, 1, 1])].contains(l)));
    }
}
