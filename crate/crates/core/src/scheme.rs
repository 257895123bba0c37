//! The conjugacy-class association scheme on S(n).
//!
//! Vectors over the group are indexed by lexicographic rank. Every operator
//! in the scheme's Bose-Mesner algebra is a class function `f` acting by
//! `(F x)_π = Σ_σ f(π⁻¹σ) x_σ`, so both the class adjacency matrices `A_C`
//! and the idempotents `E_λ = (χ_λ(1)/n!) Σ_C χ_λ(C) A_C` are applied from
//! one table of class sums `s[π][C] = Σ_{σ : π⁻¹σ ∈ C} x_σ`. No `n! × n!`
//! matrix is formed outside [`ConjugacyScheme::idempotent_matrix`].
//!
//! The union graph `P_t(n)` joins permutations that agree on at most `t`
//! points. Its connection set is every non-identity class with at most `t`
//! fixed points; the identity class is always left out so the graph stays
//! loopless.

use std::ops::AddAssign;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::chartab::CharacterTable;
use crate::error::{Error, Result};
use crate::linalg::{is_integral, RationalMatrix, RationalVector};
use crate::permgroup::{
    all_permutations, factorial, lehmer_rank, ClassInfo, IntegerPartition, Permutation,
};

/// Projections and adjacency products enumerate all pairs of group
/// elements; 7! squared is the most we are willing to pay.
pub const MAX_CONVOLUTION_DEGREE: usize = 7;

/// Degrees whose full quotient-class table (n!² bytes) is cached.
const QUOTIENT_TABLE_DEGREE: usize = 6;

/// Largest degree for which [`ConjugacyScheme::idempotent_matrix`]
/// materializes a dense matrix.
pub const MAX_DENSE_IDEMPOTENT_DEGREE: usize = 4;

struct GroupData {
    elements: Vec<Permutation>,
    /// Class column of the element with each rank.
    class_of: Vec<u8>,
    /// `quotient[a * N + b]` is the class of `π_a⁻¹ π_b`.
    quotient: Option<Vec<u8>>,
}

pub struct ConjugacyScheme {
    n: usize,
    table: CharacterTable,
    order: BigUint,
    group: OnceLock<GroupData>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumEntry {
    pub partition: IntegerPartition,
    #[serde(serialize_with = "ser_rational")]
    pub eigenvalue: BigRational,
    #[serde(serialize_with = "ser_display")]
    pub multiplicity: BigUint,
}

/// Eigenvalues of `P_t(n)`, one per partition in reverse-lex order.
#[derive(Clone, Debug)]
pub struct SchemeSpectrum {
    pub n: usize,
    pub t: usize,
    pub entries: Vec<SpectrumEntry>,
    pub valency: BigUint,
}

impl SchemeSpectrum {
    pub fn eigenvalue(&self, lambda: &IntegerPartition) -> Option<&BigRational> {
        self.entries
            .iter()
            .find(|e| &e.partition == lambda)
            .map(|e| &e.eigenvalue)
    }

    /// The least eigenvalue and every partition achieving it.
    pub fn least(&self) -> (BigRational, Vec<IntegerPartition>) {
        let min = self
            .entries
            .iter()
            .map(|e| &e.eigenvalue)
            .min()
            .expect("nonempty spectrum")
            .clone();
        let at = self
            .entries
            .iter()
            .filter(|e| e.eigenvalue == min)
            .map(|e| e.partition.clone())
            .collect();
        (min, at)
    }

    pub fn total_multiplicity(&self) -> BigUint {
        self.entries.iter().map(|e| &e.multiplicity).sum()
    }

    /// `{n, t, entries: [{partition, eigenvalue, multiplicity}], least, valency}`.
    pub fn to_json(&self) -> serde_json::Value {
        let (least, at) = self.least();
        serde_json::json!({
            "n": self.n,
            "t": self.t,
            "entries": self.entries,
            "least": least.to_string(),
            "least_at": at,
            "valency": self.valency.to_string(),
        })
    }
}

/// `E_λ x`, stored as an integer vector times a common rational scale.
#[derive(Clone, Debug)]
pub struct ProjectionResult {
    pub partition: IntegerPartition,
    scale: BigRational,
    numerators: Vec<BigInt>,
    norm_sq: BigRational,
}

impl ProjectionResult {
    pub fn is_zero(&self) -> bool {
        self.norm_sq.is_zero()
    }

    /// `‖E_λ x‖² = xᵀ E_λ x`.
    pub fn norm_sq(&self) -> &BigRational {
        &self.norm_sq
    }

    pub fn vector(&self) -> RationalVector {
        RationalVector(
            self.numerators
                .iter()
                .map(|w| BigRational::from_integer(w.clone()) * &self.scale)
                .collect(),
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportPair {
    pub partition: IntegerPartition,
    pub clique_nonzero: bool,
    pub independent_nonzero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CliqueCocliqueReport {
    pub n: usize,
    pub t: usize,
    pub clique_size: usize,
    pub independent_size: usize,
    #[serde(serialize_with = "ser_display")]
    pub product: BigUint,
    #[serde(serialize_with = "ser_display")]
    pub bound: BigUint,
    pub within_bound: bool,
    pub tight: bool,
    /// Per non-trivial partition, whether `E_λ x` and `E_λ y` are nonzero.
    pub supports: Vec<SupportPair>,
    /// When tight: no partition other than `[n]` has both projections
    /// nonzero. `None` when the bound is not attained.
    pub disjoint_supports: Option<bool>,
}

impl ConjugacyScheme {
    pub fn new(n: usize) -> Result<Self> {
        let table = CharacterTable::new(n)?;
        Ok(ConjugacyScheme {
            n,
            table,
            order: factorial(n),
            group: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn classes(&self) -> &[ClassInfo] {
        self.table.classes()
    }

    /// `n!`.
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Class columns of `P_t(n)`: non-identity classes with at most `t`
    /// fixed points.
    pub fn union_classes(&self, t: usize) -> Vec<usize> {
        self.classes()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.cycle_type.is_identity() && c.cycle_type.fixed_points() <= t)
            .map(|(i, _)| i)
            .collect()
    }

    fn check_threshold(&self, t: usize) -> Result<()> {
        if t >= self.n {
            return Err(Error::ParameterOutOfRange(format!(
                "threshold t={t} must be below n={}",
                self.n
            )));
        }
        Ok(())
    }

    /// `p_C^λ = |C| χ_λ(c) / χ_λ(1)`, required to be an integer.
    pub fn class_eigenvalue(&self, row: usize, col: usize) -> Result<BigRational> {
        let class = &self.classes()[col];
        let value = BigRational::new(
            BigInt::from(class.size.clone()) * self.table.value(row, col),
            BigInt::from(self.table.dimension(row)),
        );
        if !is_integral(&value) {
            return Err(Error::NonIntegralEigenvalue {
                partition: self.table.partitions()[row].to_string(),
                value: value.to_string(),
            });
        }
        Ok(value)
    }

    pub fn union_spectrum(&self, t: usize) -> Result<SchemeSpectrum> {
        self.check_threshold(t)?;
        let cols = self.union_classes(t);
        let valency: BigUint = cols.iter().map(|&c| &self.classes()[c].size).sum();
        let entries = self
            .table
            .partitions()
            .iter()
            .enumerate()
            .map(|(row, lambda)| {
                let eigenvalue = cols
                    .iter()
                    .map(|&c| self.class_eigenvalue(row, c))
                    .sum::<Result<BigRational>>()?;
                Ok(SpectrumEntry {
                    partition: lambda.clone(),
                    eigenvalue,
                    multiplicity: self.table.dimension(row).pow(2),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SchemeSpectrum {
            n: self.n,
            t,
            entries,
            valency,
        })
    }

    /// `n! / (1 - valency/τ)` with `τ` the least eigenvalue of `P_t(n)`.
    pub fn ratio_bound(&self, t: usize) -> Result<BigRational> {
        let spectrum = self.union_spectrum(t)?;
        let (tau, _) = spectrum.least();
        if !tau.is_negative() {
            return Err(Error::ParameterOutOfRange(format!(
                "least eigenvalue {tau} is not negative"
            )));
        }
        let valency = BigRational::from_integer(spectrum.valency.into());
        let order = BigRational::from_integer(self.order.clone().into());
        Ok(order / (BigRational::one() - valency / tau))
    }

    fn group(&self) -> Result<&GroupData> {
        if self.n > MAX_CONVOLUTION_DEGREE {
            return Err(Error::DegreeOutOfRange {
                what: "group-algebra convolution",
                degree: self.n,
                min: 1,
                max: MAX_CONVOLUTION_DEGREE,
            });
        }
        Ok(self.group.get_or_init(|| {
            let elements = all_permutations(self.n);
            let class_of: Vec<u8> = elements
                .iter()
                .map(|p| {
                    self.table
                        .column_of(&p.cycle_type())
                        .expect("cycle type present") as u8
                })
                .collect();
            let quotient = (self.n <= QUOTIENT_TABLE_DEGREE).then(|| {
                let inverses: Vec<Permutation> = elements.iter().map(Permutation::inverse).collect();
                let mut q = Vec::with_capacity(elements.len() * elements.len());
                for inv in &inverses {
                    for sigma in &elements {
                        let prod = inv.compose_unchecked(sigma);
                        q.push(class_of[lehmer_rank(prod.zero_based()) as usize]);
                    }
                }
                q
            });
            GroupData {
                elements,
                class_of,
                quotient,
            }
        }))
    }

    pub fn group_size(&self) -> usize {
        self.order.to_usize().expect("group order fits usize")
    }

    /// Permutations in rank order. Fails above [`MAX_CONVOLUTION_DEGREE`].
    pub fn elements(&self) -> Result<&[Permutation]> {
        Ok(&self.group()?.elements)
    }

    /// Class sums `s[π·k + C]` of an integer vector, `k` = number of classes.
    fn class_sums<T>(&self, z: &[T]) -> Result<Vec<T>>
    where
        T: Zero + Clone + for<'a> AddAssign<&'a T>,
    {
        let g = self.group()?;
        let size = g.elements.len();
        let k = self.table.size();
        let support: Vec<usize> = (0..size).filter(|&i| !z[i].is_zero()).collect();
        let mut sums = vec![T::zero(); size * k];
        match &g.quotient {
            Some(q) => {
                for a in 0..size {
                    let row = &q[a * size..(a + 1) * size];
                    let out = &mut sums[a * k..(a + 1) * k];
                    for &b in &support {
                        out[row[b] as usize] += &z[b];
                    }
                }
            }
            None => {
                for (a, pi) in g.elements.iter().enumerate() {
                    let inv = pi.inverse();
                    let out = &mut sums[a * k..(a + 1) * k];
                    for &b in &support {
                        let prod = inv.compose_unchecked(&g.elements[b]);
                        let c = g.class_of[lehmer_rank(prod.zero_based()) as usize];
                        out[c as usize] += &z[b];
                    }
                }
            }
        }
        Ok(sums)
    }

    /// Class sums of `x = z / den`, returned as big integers (still scaled by
    /// `den`). Uses machine integers when no partial sum can overflow.
    fn integer_class_sums(&self, x: &RationalVector) -> Result<(Vec<BigInt>, BigInt)> {
        let size = self.group_size();
        if x.len() != size {
            return Err(Error::LengthMismatch {
                expected: size,
                got: x.len(),
            });
        }
        let (z, den) = x.to_integers();
        let max_abs = z.iter().map(|v| v.magnitude().bits()).max().unwrap_or(0);
        let size_bits = u64::from(usize::BITS - size.leading_zeros());
        let sums = if max_abs + size_bits < 62 {
            let small: Vec<i64> = z.iter().map(|v| v.to_i64().expect("bounded")).collect();
            self.class_sums(&small)?
                .into_iter()
                .map(BigInt::from)
                .collect()
        } else {
            self.class_sums(&z)?
        };
        Ok((sums, den))
    }

    fn project_from_sums(&self, row: usize, sums: &[BigInt], den: &BigInt) -> ProjectionResult {
        let k = self.table.size();
        let chi = self.table.row(row);
        let numerators: Vec<BigInt> = sums
            .chunks(k)
            .map(|s| {
                s.iter()
                    .zip(chi)
                    .filter(|(v, c)| !v.is_zero() && !c.is_zero())
                    .map(|(v, c)| v * c)
                    .sum()
            })
            .collect();
        let scale = BigRational::new(
            BigInt::from(self.table.dimension(row)),
            BigInt::from(self.order.clone()) * den,
        );
        let sum_sq: BigInt = numerators.iter().map(|w| w * w).sum();
        let norm_sq = BigRational::from_integer(sum_sq) * &scale * &scale;
        ProjectionResult {
            partition: self.table.partitions()[row].clone(),
            scale,
            numerators,
            norm_sq,
        }
    }

    /// `E_λ x` with `(E_λ)_{π,σ} = (χ_λ(1)/n!) χ_λ(π⁻¹σ)`.
    pub fn project(&self, lambda: &IntegerPartition, x: &RationalVector) -> Result<ProjectionResult> {
        let row = self.row(lambda)?;
        let (sums, den) = self.integer_class_sums(x)?;
        Ok(self.project_from_sums(row, &sums, &den))
    }

    /// Projections onto every isotypic component, in partition order.
    pub fn project_all(&self, x: &RationalVector) -> Result<Vec<ProjectionResult>> {
        let (sums, den) = self.integer_class_sums(x)?;
        Ok((0..self.table.size())
            .map(|row| self.project_from_sums(row, &sums, &den))
            .collect())
    }

    fn row(&self, lambda: &IntegerPartition) -> Result<usize> {
        self.table.row_of(lambda).ok_or_else(|| {
            Error::InvalidPartition(format!("{lambda} is not a partition of {}", self.n))
        })
    }

    /// Adjacency operator of `P_t(n)` applied to `x`.
    pub fn adjacency_apply(&self, x: &RationalVector, t: usize) -> Result<RationalVector> {
        self.check_threshold(t)?;
        let cols = self.union_classes(t);
        let (sums, den) = self.integer_class_sums(x)?;
        let k = self.table.size();
        Ok(RationalVector(
            sums.chunks(k)
                .map(|s| {
                    let total: BigInt = cols.iter().map(|&c| &s[c]).sum();
                    BigRational::new(total, den.clone())
                })
                .collect(),
        ))
    }

    /// `xᵀ A_C x` for every class `C`, in column order.
    pub fn class_quadratic_forms(&self, x: &RationalVector) -> Result<Vec<BigRational>> {
        let (sums, den) = self.integer_class_sums(x)?;
        let (z, _) = x.to_integers();
        let k = self.table.size();
        let mut forms = vec![BigInt::zero(); k];
        for (zi, s) in z.iter().zip(sums.chunks(k)) {
            if zi.is_zero() {
                continue;
            }
            for (f, v) in forms.iter_mut().zip(s) {
                *f += zi * v;
            }
        }
        let den_sq = &den * &den;
        Ok(forms
            .into_iter()
            .map(|f| BigRational::new(f, den_sq.clone()))
            .collect())
    }

    /// Both sides of
    /// `Σ_C (1/(v·v_C)) xᵀA_Cx · yᵀA_Cy = Σ_λ (1/m_λ) xᵀE_λx · yᵀE_λy`
    /// where the left sum runs over every class including the identity and
    /// `m_λ = χ_λ(1)²`.
    pub fn fundamental_identity(
        &self,
        x: &RationalVector,
        y: &RationalVector,
    ) -> Result<(BigRational, BigRational)> {
        let ax = self.class_quadratic_forms(x)?;
        let ay = self.class_quadratic_forms(y)?;
        let v = BigInt::from(self.order.clone());
        let lhs: BigRational = self
            .classes()
            .iter()
            .zip(ax.iter().zip(&ay))
            .map(|(c, (a, b))| a * b / BigRational::from_integer(&v * BigInt::from(c.size.clone())))
            .sum();
        let ex = self.project_all(x)?;
        let ey = self.project_all(y)?;
        let rhs: BigRational = ex
            .iter()
            .zip(&ey)
            .enumerate()
            .map(|(row, (px, py))| {
                let m = BigInt::from(self.table.dimension(row).pow(2));
                px.norm_sq() * py.norm_sq() / BigRational::from_integer(m)
            })
            .sum();
        Ok((lhs, rhs))
    }

    pub fn characteristic_vector<'a>(
        &self,
        members: impl IntoIterator<Item = &'a Permutation>,
    ) -> Result<RationalVector> {
        let size = self.group_size();
        let mut ranks = Vec::new();
        for p in members {
            if p.degree() != self.n {
                return Err(Error::DegreeMismatch {
                    left: self.n,
                    right: p.degree(),
                });
            }
            ranks.push(p.rank()? as usize);
        }
        Ok(RationalVector::indicator(size, ranks))
    }

    /// Checks `|C|·|S| ≤ n!` for a clique and an independent set of
    /// `P_t(n)`, and when tight, that for every `λ ≠ [n]` at most one of
    /// `E_λ x`, `E_λ y` is nonzero.
    pub fn clique_coclique_check(
        &self,
        clique: &[Permutation],
        independent: &[Permutation],
        t: usize,
    ) -> Result<CliqueCocliqueReport> {
        self.check_threshold(t)?;
        validate_pairs(clique, self.n, |a| a <= t, "clique members not adjacent")?;
        validate_pairs(independent, self.n, |a| a > t, "independent-set members adjacent")?;
        let product = BigUint::from(clique.len()) * BigUint::from(independent.len());
        let tight = product == self.order;
        let x = self.characteristic_vector(clique)?;
        let y = self.characteristic_vector(independent)?;
        let px = self.project_all(&x)?;
        let py = self.project_all(&y)?;
        let supports: Vec<SupportPair> = px
            .iter()
            .zip(&py)
            .skip(1)
            .map(|(a, b)| SupportPair {
                partition: a.partition.clone(),
                clique_nonzero: !a.is_zero(),
                independent_nonzero: !b.is_zero(),
            })
            .collect();
        let disjoint = supports
            .iter()
            .all(|s| !(s.clique_nonzero && s.independent_nonzero));
        Ok(CliqueCocliqueReport {
            n: self.n,
            t,
            clique_size: clique.len(),
            independent_size: independent.len(),
            within_bound: product <= self.order,
            bound: self.order.clone(),
            product,
            tight,
            supports,
            disjoint_supports: tight.then_some(disjoint),
        })
    }

    /// Checks `A (E_λ z) = p_λ (E_λ z)` for every partition.
    pub fn eigenvector_identity(&self, z: &RationalVector, t: usize) -> Result<bool> {
        let spectrum = self.union_spectrum(t)?;
        for (entry, proj) in spectrum.entries.iter().zip(self.project_all(z)?) {
            let u = proj.vector();
            let au = self.adjacency_apply(&u, t)?;
            if au != u.scale(&entry.eigenvalue) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Dense `E_λ`, only for `n ≤ 4`.
    pub fn idempotent_matrix(&self, lambda: &IntegerPartition) -> Result<RationalMatrix> {
        if self.n > MAX_DENSE_IDEMPOTENT_DEGREE {
            return Err(Error::DegreeOutOfRange {
                what: "dense idempotent",
                degree: self.n,
                min: 1,
                max: MAX_DENSE_IDEMPOTENT_DEGREE,
            });
        }
        let row = self.row(lambda)?;
        let g = self.group()?;
        let size = g.elements.len();
        let q = g.quotient.as_ref().expect("small degree has quotient table");
        let scale = BigRational::new(
            BigInt::from(self.table.dimension(row)),
            BigInt::from(self.order.clone()),
        );
        Ok(RationalMatrix::from_fn(size, size, |a, b| {
            BigRational::from_integer(self.table.value(row, q[a * size + b] as usize).clone())
                * &scale
        }))
    }
}

/// Pairwise agreement check; `ok(agreements)` must hold for every pair of
/// distinct members.
pub(crate) fn validate_pairs(
    members: &[Permutation],
    n: usize,
    ok: impl Fn(usize) -> bool,
    kind: &'static str,
) -> Result<()> {
    for p in members {
        if p.degree() != n {
            return Err(Error::DegreeMismatch {
                left: n,
                right: p.degree(),
            });
        }
    }
    for (i, p) in members.iter().enumerate() {
        for q in &members[i + 1..] {
            let a = p.agreements_unchecked(q);
            if p == q {
                return Err(Error::Validation {
                    kind: "duplicate member",
                    left: p.to_string(),
                    right: q.to_string(),
                    agreements: a,
                });
            }
            if !ok(a) {
                return Err(Error::Validation {
                    kind,
                    left: p.to_string(),
                    right: q.to_string(),
                    agreements: a,
                });
            }
        }
    }
    Ok(())
}

pub fn union_spectrum(n: usize, t: usize) -> Result<SchemeSpectrum> {
    ConjugacyScheme::new(n)?.union_spectrum(t)
}

pub fn least_eigenvalue(n: usize, t: usize) -> Result<(BigRational, Vec<IntegerPartition>)> {
    Ok(union_spectrum(n, t)?.least())
}

pub fn ratio_bound(n: usize, t: usize) -> Result<BigRational> {
    ConjugacyScheme::new(n)?.ratio_bound(t)
}

pub(crate) fn ser_rational<S: serde::Serializer>(
    v: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub(crate) fn ser_display<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
