//! Dense exact linear algebra over the rationals.
//!
//! Ranks use fraction-free (Bareiss) elimination on an integer copy of the
//! matrix: each row is first scaled by the lcm of its denominators, which
//! does not change the row space. Kernels are taken from the Gram matrix
//! `AᵀA`, whose kernel over Q equals that of `A`, and every returned basis
//! vector is checked against `A` before it leaves this module.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::{BigInt, ToBigInt};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RationalVector(pub Vec<BigRational>);

impl RationalVector {
    pub fn zeros(len: usize) -> Self {
        RationalVector(vec![BigRational::zero(); len])
    }

    pub fn constant(len: usize, value: BigRational) -> Self {
        RationalVector(vec![value; len])
    }

    pub fn from_integers<I: Into<BigInt>>(values: impl IntoIterator<Item = I>) -> Self {
        RationalVector(
            values
                .into_iter()
                .map(|v| BigRational::from_integer(v.into()))
                .collect(),
        )
    }

    /// 0/1 vector of length `len` with ones at `support`.
    pub fn indicator(len: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in support {
            v.0[i] = BigRational::one();
        }
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &RationalVector) -> BigRational {
        assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm_sq(&self) -> BigRational {
        self.dot(self)
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        assert_eq!(self.len(), other.len());
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        assert_eq!(self.len(), other.len());
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &BigRational) -> RationalVector {
        RationalVector(self.0.iter().map(|a| a * c).collect())
    }

    /// Writes `self = numerators / denominator` with integer numerators and
    /// the least common denominator.
    pub fn to_integers(&self) -> (Vec<BigInt>, BigInt) {
        let den = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let nums = self
            .0
            .iter()
            .map(|x| x.numer() * (&den / x.denom()))
            .collect();
        (nums, den)
    }
}

impl Index<usize> for RationalVector {
    type Output = BigRational;
    fn index(&self, i: usize) -> &BigRational {
        &self.0[i]
    }
}

impl IndexMut<usize> for RationalVector {
    fn index_mut(&mut self, i: usize) -> &mut BigRational {
        &mut self.0[i]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RationalMatrix { rows, cols, data }
    }

    pub fn from_integer_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        Self::from_fn(rows, cols, |r, c| BigRational::from_integer(f(r, c).into()))
    }

    /// Rows given as vectors; all must share a length.
    pub fn from_rows(rows: Vec<RationalVector>) -> Self {
        let cols = rows.first().map_or(0, RationalVector::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        RationalMatrix {
            rows: n,
            cols,
            data: rows.into_iter().flat_map(|r| r.0).collect(),
        }
    }

    pub fn from_columns(cols: Vec<RationalVector>) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> RationalVector {
        RationalVector((0..self.rows).map(|r| self[(r, c)].clone()).collect())
    }

    pub fn transpose(&self) -> RationalMatrix {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::DegreeMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &RationalVector) -> Result<RationalVector> {
        if self.cols != v.len() {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok(RationalVector(
            (0..self.rows)
                .map(|r| {
                    self.row(r)
                        .iter()
                        .zip(&v.0)
                        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                        .map(|(a, b)| a * b)
                        .sum()
                })
                .collect(),
        ))
    }

    pub fn select_rows(&self, rows: &[usize]) -> RationalMatrix {
        Self::from_fn(rows.len(), self.cols, |r, c| self[(rows[r], c)].clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> RationalMatrix {
        Self::from_fn(self.rows, cols.len(), |r, c| self[(r, cols[c])].clone())
    }

    pub fn append_column(&self, col: &RationalVector) -> RationalMatrix {
        assert_eq!(col.len(), self.rows);
        Self::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                col[r].clone()
            }
        })
    }

    pub fn kron(&self, other: &RationalMatrix) -> RationalMatrix {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            &self[(r / other.rows, c / other.cols)] * &other[(r % other.rows, c % other.cols)]
        })
    }

    pub fn scale(&self, s: &BigRational) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Rows scaled to integers (row-space preserving).
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let v = RationalVector(self.row(r).to_vec());
                v.to_integers().0
            })
            .collect()
    }

    /// Exact rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        bareiss_rank(self.integer_rows(), self.cols)
    }

    /// Rank modulo the prime `p` (< 2^63). Never exceeds the rational rank.
    pub fn rank_mod_p(&self, p: u64) -> usize {
        let pb = BigInt::from(p);
        let rows = self
            .integer_rows()
            .into_iter()
            .map(|row| {
                row.iter()
                    .map(|x| x.mod_floor(&pb).to_u64().expect("reduced below p"))
                    .collect()
            })
            .collect();
        modular_rank(rows, self.cols, p)
    }

    /// Basis of `{x : A x = 0}`, one vector per free column of the reduced
    /// Gram matrix, each with a 1 in its free coordinate.
    pub fn kernel_basis(&self) -> Vec<RationalVector> {
        let ints = self.integer_rows();
        let k = self.cols;
        let mut gram = vec![vec![BigInt::zero(); k]; k];
        for row in &ints {
            let nz: Vec<usize> = (0..k).filter(|&c| !row[c].is_zero()).collect();
            for &a in &nz {
                for &b in &nz {
                    gram[a][b] += &row[a] * &row[b];
                }
            }
        }
        let gram = RationalMatrix::from_fn(k, k, |r, c| BigRational::from_integer(gram[r][c].clone()));
        let (rref, pivots) = gram.rref();
        let mut basis = Vec::new();
        for free in (0..k).filter(|c| !pivots.contains(c)) {
            let mut v = RationalVector::zeros(k);
            v[free] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -rref[(row, free)].clone();
            }
            basis.push(v);
        }
        for v in &basis {
            let image = self.mul_vec(v).expect("shapes agree");
            assert!(image.is_zero(), "kernel vector failed verification");
        }
        basis
    }

    /// Some `x` with `A x = b` (free variables set to zero), or `None` when
    /// the system is inconsistent.
    pub fn solve(&self, b: &RationalVector) -> Result<Option<RationalVector>> {
        if b.len() != self.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                got: b.len(),
            });
        }
        let (rref, pivots) = self.append_column(b).rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = RationalVector::zeros(self.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = rref[(row, self.cols)].clone();
        }
        debug_assert_eq!(&self.mul_vec(&x)?, b);
        Ok(Some(x))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(i, j)] - &f * &m[(r, j)];
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Plain-text exact format: a `rows cols` header, then one line per row
    /// of space-separated rationals (`p` or `p/q`).
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<RationalMatrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|e| Error::Parse(format!("bad dimension {t:?}: {e}"))))
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(Error::Parse(format!("bad header {header:?}")));
        };
        let mut data = Vec::with_capacity(rows * cols);
        for line in lines {
            for tok in line.split_whitespace() {
                data.push(parse_rational(tok)?);
            }
        }
        if data.len() != rows * cols {
            return Err(Error::Parse(format!(
                "expected {} entries, found {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(RationalMatrix { rows, cols, data })
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = BigRational;
    fn index(&self, (r, c): (usize, usize)) -> &BigRational {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigRational {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub fn parse_rational(tok: &str) -> Result<BigRational> {
    let bad = |e: &dyn fmt::Display| Error::Parse(format!("bad rational {tok:?}: {e}"));
    match tok.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().map_err(|e| bad(&e))?;
            let q: BigInt = q.parse().map_err(|e| bad(&e))?;
            if q.is_zero() {
                return Err(bad(&"zero denominator"));
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(tok.parse().map_err(|e| bad(&e))?)),
    }
}

/// Fraction-free Gaussian elimination. After a pivot step every entry below
/// is a minor of the original matrix, so the division by the previous pivot
/// is exact.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = pivot_row[c].clone();
        for row in bottom.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let mut v = &pivot * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v -= &factor * &pivot_row[j];
                }
                if !v.is_zero() {
                    v /= &prev;
                }
                row[j] = v;
            }
        }
        prev = pivot;
        r += 1;
    }
    r
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Rank modulo `p` of an integer matrix given by rows.
pub fn integer_rank_mod_p(rows: &[Vec<i64>], cols: usize, p: u64) -> usize {
    let pi = i128::from(p);
    let reduced = rows
        .iter()
        .map(|row| row.iter().map(|&x| i128::from(x).rem_euclid(pi) as u64).collect())
        .collect();
    modular_rank(reduced, cols, p)
}

fn modular_rank(mut a: Vec<Vec<u64>>, cols: usize, p: u64) -> usize {
    let rows = a.len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(piv, r);
        let inv = pow_mod(a[r][c], p - 2, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let f = mul_mod(row[c], inv, p);
            for j in c..cols {
                if pivot_row[j] != 0 {
                    row[j] = (row[j] + p - mul_mod(f, pivot_row[j], p)) % p;
                }
            }
        }
        r += 1;
    }
    r
}

/// `2^61 - 1`.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

pub fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

pub fn integer(v: impl ToBigInt) -> BigRational {
    BigRational::from_integer(v.to_bigint().expect("integral"))
}

pub(crate) fn is_integral(x: &BigRational) -> bool {
    x.denom().abs().is_one()
}
