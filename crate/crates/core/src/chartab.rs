//! Irreducible characters of the symmetric group.
//!
//! Values come from the Murnaghan-Nakayama rule: strip a border strip of
//! length `μ₁` from `λ` in every possible way, weight by `(-1)^{height}`,
//! recurse on the rest of `μ`. Border strips are removed on the beta-set
//! (first-column hook lengths) representation, where removing a strip of
//! length `k` is moving one bead from position `b` to a free position
//! `b - k`, and the height is the number of beads jumped over.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::permgroup::{
    conjugacy_classes, factorial, partitions_of, ClassInfo, CycleType, IntegerPartition,
};

/// Character tables are only built up to this degree (77 classes).
pub const MAX_TABLE_DEGREE: usize = 12;

/// `χ_λ(1) = n! / ∏ hook lengths`.
pub fn dimension(lambda: &IntegerPartition) -> BigUint {
    let hooks = lambda
        .hook_lengths()
        .into_iter()
        .fold(BigUint::one(), |acc, h| acc * BigUint::from(h));
    factorial(lambda.n()) / hooks
}

/// Memoized Murnaghan-Nakayama evaluator. Keys are (shape, remaining cycle
/// lengths), both sorted descending.
#[derive(Default)]
pub struct MurnaghanNakayama {
    memo: HashMap<(Vec<u8>, Vec<u8>), i64>,
}

impl MurnaghanNakayama {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn value(&mut self, lambda: &IntegerPartition, mu: &CycleType) -> Result<BigInt> {
        check_same_degree(lambda, mu)?;
        let shape: Vec<u8> = lambda.parts().iter().map(|&p| p as u8).collect();
        let cycles: Vec<u8> = mu.parts().iter().map(|&p| p as u8).collect();
        Ok(BigInt::from(self.eval(shape, cycles)))
    }

    fn eval(&mut self, shape: Vec<u8>, cycles: Vec<u8>) -> i64 {
        if cycles.is_empty() {
            return if shape.is_empty() { 1 } else { 0 };
        }
        let key = (shape, cycles);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let (shape, cycles) = &key;
        let strip = cycles[0] as i32;
        let rest = cycles[1..].to_vec();

        let len = shape.len() as i32;
        let beta: Vec<i32> = shape
            .iter()
            .enumerate()
            .map(|(i, &p)| p as i32 + len - 1 - i as i32)
            .collect();
        let mut total = 0i64;
        for (idx, &b) in beta.iter().enumerate() {
            let target = b - strip;
            if target < 0 || beta.contains(&target) {
                continue;
            }
            let jumped = beta.iter().filter(|&&x| x > target && x < b).count();
            let mut moved = beta.clone();
            moved[idx] = target;
            moved.sort_unstable_by(|a, b| b.cmp(a));
            let new_shape: Vec<u8> = moved
                .iter()
                .enumerate()
                .map(|(i, &x)| (x - (len - 1 - i as i32)) as u8)
                .filter(|&p| p > 0)
                .collect();
            let sign = if jumped % 2 == 0 { 1 } else { -1 };
            total += sign * self.eval(new_shape, rest.clone());
        }
        self.memo.insert(key, total);
        total
    }
}

fn check_same_degree(lambda: &IntegerPartition, mu: &CycleType) -> Result<()> {
    if lambda.n() != mu.n() {
        return Err(Error::DegreeMismatch {
            left: lambda.n(),
            right: mu.n(),
        });
    }
    check_table_degree(lambda.n())
}

fn check_table_degree(n: usize) -> Result<()> {
    if !(1..=MAX_TABLE_DEGREE).contains(&n) {
        return Err(Error::DegreeOutOfRange {
            what: "character values",
            degree: n,
            min: 1,
            max: MAX_TABLE_DEGREE,
        });
    }
    Ok(())
}

/// `χ_λ(μ)` with a fresh memo. Prefer [`CharacterTable`] for repeated use.
pub fn character_value(lambda: &IntegerPartition, mu: &CycleType) -> Result<BigInt> {
    MurnaghanNakayama::new().value(lambda, mu)
}

/// `χ_λ` on the class of `n`-cycles: `(-1)^leg` on the hook with that leg
/// length, zero off hooks.
pub fn n_cycle_character(lambda: &IntegerPartition) -> Result<BigInt> {
    let n = lambda.n();
    let mu = CycleType::new(IntegerPartition::trivial(n));
    character_value(lambda, &mu)
}

/// Rows are partitions, columns cycle types, both in reverse
/// lexicographic order, so row 0 is the trivial character and column
/// `len - 1` is the identity class.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    n: usize,
    partitions: Vec<IntegerPartition>,
    classes: Vec<ClassInfo>,
    values: Vec<Vec<BigInt>>,
    row_index: HashMap<IntegerPartition, usize>,
}

impl CharacterTable {
    pub fn new(n: usize) -> Result<Self> {
        check_table_degree(n)?;
        let partitions = partitions_of(n);
        let classes = conjugacy_classes(n);
        let mut mn = MurnaghanNakayama::new();
        let values = partitions
            .iter()
            .map(|lambda| {
                classes
                    .iter()
                    .map(|c| mn.value(lambda, &c.cycle_type))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let row_index = partitions
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        Ok(CharacterTable {
            n,
            partitions,
            classes,
            values,
            row_index,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partitions(&self) -> &[IntegerPartition] {
        &self.partitions
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn cycle_types(&self) -> impl Iterator<Item = &CycleType> {
        self.classes.iter().map(|c| &c.cycle_type)
    }

    pub fn size(&self) -> usize {
        self.partitions.len()
    }

    pub fn row_of(&self, lambda: &IntegerPartition) -> Option<usize> {
        self.row_index.get(lambda).copied()
    }

    /// Column index of a cycle type (columns share the partition ordering).
    pub fn column_of(&self, mu: &CycleType) -> Option<usize> {
        self.row_index.get(mu.partition()).copied()
    }

    pub fn value(&self, row: usize, col: usize) -> &BigInt {
        &self.values[row][col]
    }

    pub fn row(&self, row: usize) -> &[BigInt] {
        &self.values[row]
    }

    pub fn identity_column(&self) -> usize {
        self.classes.len() - 1
    }

    /// `χ_λ(1)` for the given row.
    pub fn dimension(&self, row: usize) -> BigUint {
        self.values[row][self.identity_column()]
            .to_biguint()
            .expect("dimensions are positive")
    }

    pub fn character(&self, lambda: &IntegerPartition, mu: &CycleType) -> Option<&BigInt> {
        Some(self.value(self.row_of(lambda)?, self.column_of(mu)?))
    }

    /// `Σ_μ |C_μ| χ_λ(μ) χ_κ(μ) = n!·[λ = κ]` for all pairs.
    pub fn check_row_orthogonality(&self) -> bool {
        let order = BigInt::from(factorial(self.n));
        (0..self.size()).all(|a| {
            (0..self.size()).all(|b| {
                let sum: BigInt = self
                    .classes
                    .iter()
                    .enumerate()
                    .map(|(c, class)| {
                        BigInt::from(class.size.clone()) * &self.values[a][c] * &self.values[b][c]
                    })
                    .sum();
                if a == b {
                    sum == order
                } else {
                    sum.is_zero()
                }
            })
        })
    }

    /// `Σ_λ χ_λ(μ) χ_λ(ν) = [μ = ν]·n!/|C_μ|`.
    pub fn check_column_orthogonality(&self) -> bool {
        let order = factorial(self.n);
        (0..self.size()).all(|c| {
            (0..self.size()).all(|d| {
                let sum: BigInt = (0..self.size())
                    .map(|r| &self.values[r][c] * &self.values[r][d])
                    .sum();
                if c == d {
                    sum == BigInt::from(&order / &self.classes[c].size)
                } else {
                    sum.is_zero()
                }
            })
        })
    }

    /// CSV with a header row of cycle types and one row per partition.
    /// Partitions and cycle types are written as space-separated parts.
    pub fn to_csv(&self) -> String {
        let fmt_parts = |p: &[usize]| {
            p.iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut out = String::new();
        out.push_str(&format!("# character table of S({})\n", self.n));
        out.push_str("partition\\cycle_type");
        for c in &self.classes {
            out.push(',');
            out.push_str(&fmt_parts(c.cycle_type.parts()));
        }
        out.push('\n');
        for (r, lambda) in self.partitions.iter().enumerate() {
            out.push_str(&fmt_parts(lambda.parts()));
            for v in &self.values[r] {
                out.push(',');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }

    /// `Σ_{x ∈ set} χ_λ(x)` for a set of permutations of degree `n`.
    pub fn class_function_sum<'a>(
        &self,
        row: usize,
        members: impl IntoIterator<Item = &'a crate::permgroup::Permutation>,
    ) -> BigInt {
        members
            .into_iter()
            .map(|p| {
                let col = self
                    .column_of(&p.cycle_type())
                    .expect("member degree matches table");
                self.values[row][col].clone()
            })
            .sum()
    }
}

/// True iff every entry of `v` is in {-1, 0, 1} and nonzero exactly on hooks.
pub fn n_cycle_values_are_hook_signs(n: usize) -> Result<bool> {
    for lambda in partitions_of(n) {
        let v = n_cycle_character(&lambda)?;
        let ok = if lambda.is_hook() {
            v.abs().is_one()
        } else {
            v.is_zero()
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> IntegerPartition {
        IntegerPartition::new(v.to_vec()).unwrap()
    }

    fn ct(v: &[usize]) -> CycleType {
        CycleType::new(part(v))
    }

    #[test]
    fn dimensions() {
        for n in 1..=8 {
            assert_eq!(dimension(&IntegerPartition::trivial(n)), BigUint::one());
            if n >= 2 {
                assert_eq!(
                    dimension(&IntegerPartition::standard(n)),
                    BigUint::from(n - 1)
                );
            }
            let total: BigUint = partitions_of(n).iter().map(|l| dimension(l).pow(2)).sum();
            assert_eq!(total, factorial(n));
        }
        assert_eq!(dimension(&part(&[2, 2])), BigUint::from(2u32));
    }

    #[test]
    fn small_values() {
        assert_eq!(character_value(&part(&[2, 2]), &ct(&[2, 2])).unwrap(), 2.into());
        assert_eq!(character_value(&part(&[2, 2]), &ct(&[4])).unwrap(), 0.into());
        assert_eq!(character_value(&part(&[3]), &ct(&[2, 1])).unwrap(), 1.into());
        assert!(character_value(&part(&[3]), &ct(&[2, 2])).is_err());
    }

    #[test]
    fn s2_table() {
        let t = CharacterTable::new(2).unwrap();
        let rows: Vec<Vec<i64>> = (0..2)
            .map(|r| t.row(r).iter().map(|v| v.try_into().unwrap()).collect())
            .collect();
        // Columns are [2] then [1,1].
        assert_eq!(rows, vec![vec![1, 1], vec![-1, 1]]);
        assert_eq!(t.character(&part(&[1, 1]), &ct(&[2])).unwrap(), &BigInt::from(-1));
        assert_eq!(t.character(&part(&[1, 1]), &ct(&[1, 1])).unwrap(), &BigInt::from(1));
    }

    #[test]
    fn standard_character_is_fixed_points_minus_one() {
        for n in 2..=8 {
            let t = CharacterTable::new(n).unwrap();
            let row = t.row_of(&IntegerPartition::standard(n)).unwrap();
            for (c, class) in t.classes().iter().enumerate() {
                let expected = BigInt::from(class.cycle_type.fixed_points() as i64 - 1);
                assert_eq!(t.value(row, c), &expected);
            }
        }
    }

    #[test]
    fn orthogonality_small() {
        for n in 1..=6 {
            let t = CharacterTable::new(n).unwrap();
            assert!(t.check_row_orthogonality(), "rows n={n}");
            assert!(t.check_column_orthogonality(), "cols n={n}");
        }
    }

    #[test]
    fn n_cycle_values() {
        assert_eq!(n_cycle_character(&part(&[2, 2])).unwrap(), 0.into());
        for n in [4, 6, 8] {
            let alt = IntegerPartition::hook(n, n - 2);
            assert_eq!(n_cycle_character(&alt).unwrap(), 1.into());
        }
        for n in 1..=10 {
            assert!(n_cycle_values_are_hook_signs(n).unwrap());
        }
    }

    #[test]
    fn degree_ceiling() {
        assert!(CharacterTable::new(13).is_err());
        assert!(CharacterTable::new(0).is_err());
    }

    #[test]
    fn csv_layout() {
        let csv = CharacterTable::new(3).unwrap().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# character table of S(3)");
        assert_eq!(lines[1], "partition\\cycle_type,3,2 1,1 1 1");
        assert_eq!(lines[2], "3,1,1,1");
        assert_eq!(lines[3], "2 1,-1,0,2");
        assert_eq!(lines[4], "1 1 1,1,-1,1");
    }
}
