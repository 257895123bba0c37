//! The point-pair incidence matrix `H` and its derangement blocks.
//!
//! Columns of `H` are the pairs `(i, j)` with `i, j ≤ n−1` in row-major
//! order; the `(π, (i, j))` entry is 1 iff `π(i) = j`. Column `(i, j)` is
//! therefore the characteristic vector of `S_{i,j}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{bareiss_rank, RationalMatrix, RationalVector};
use crate::permgroup::{all_permutations, factorial_u64, Permutation};

pub const MAX_INCIDENCE_DEGREE: usize = 7;

pub struct IncidenceH {
    n: usize,
    elements: Vec<Permutation>,
    /// `entries[r][c]` for the permutation of rank `r` and column `c`.
    entries: Vec<Vec<u8>>,
}

impl IncidenceH {
    pub fn new(n: usize) -> Result<Self> {
        if !(3..=MAX_INCIDENCE_DEGREE).contains(&n) {
            return Err(Error::DegreeOutOfRange {
                what: "incidence matrix",
                degree: n,
                min: 3,
                max: MAX_INCIDENCE_DEGREE,
            });
        }
        let elements = all_permutations(n);
        let m = n - 1;
        let entries = elements
            .iter()
            .map(|p| {
                let mut row = vec![0u8; m * m];
                for i in 1..=m {
                    let j = p.apply(i);
                    if j <= m {
                        row[(i - 1) * m + (j - 1)] = 1;
                    }
                }
                row
            })
            .collect();
        Ok(IncidenceH {
            n,
            elements,
            entries,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        (self.n - 1) * (self.n - 1)
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    /// Column labels `(i, j)`, 1-based, in column order.
    pub fn columns(&self) -> Vec<(usize, usize)> {
        let m = self.n - 1;
        (1..=m).flat_map(|i| (1..=m).map(move |j| (i, j))).collect()
    }

    pub fn column_index(&self, i: usize, j: usize) -> usize {
        (i - 1) * (self.n - 1) + (j - 1)
    }

    pub fn entry(&self, rank: usize, col: usize) -> u8 {
        self.entries[rank][col]
    }

    pub fn row(&self, rank: usize) -> &[u8] {
        &self.entries[rank]
    }

    pub fn matrix(&self) -> RationalMatrix {
        self.submatrix(&(0..self.rows()).collect::<Vec<_>>(), &(0..self.cols()).collect::<Vec<_>>())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RationalMatrix {
        RationalMatrix::from_integer_fn(rows.len(), cols.len(), |r, c| {
            i64::from(self.entries[rows[r]][cols[c]])
        })
    }

    fn integer_rows(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|&r| cols.iter().map(|&c| BigInt::from(self.entries[r][c])).collect())
            .collect()
    }

    /// Exact rank of `H`.
    pub fn rank(&self) -> usize {
        let all_cols: Vec<usize> = (0..self.cols()).collect();
        let all_rows: Vec<usize> = (0..self.rows()).collect();
        bareiss_rank(self.integer_rows(&all_rows, &all_cols), self.cols())
    }

    /// `HᵀH`, counted directly from the rows.
    pub fn gram(&self) -> Vec<Vec<u64>> {
        let k = self.cols();
        let mut g = vec![vec![0u64; k]; k];
        for row in &self.entries {
            let ones: Vec<usize> = (0..k).filter(|&c| row[c] == 1).collect();
            for &a in &ones {
                for &b in &ones {
                    g[a][b] += 1;
                }
            }
        }
        g
    }

    /// `(n−1)! I + (n−2)! (K_{n−1} ⊗ K_{n−1})`.
    pub fn expected_gram(&self) -> Vec<Vec<u64>> {
        let m = self.n - 1;
        let diag = factorial_u64(self.n - 1);
        let off = factorial_u64(self.n - 2);
        let k = m * m;
        (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| {
                        let (i, j, p, q) = (a / m, a % m, b / m, b % m);
                        if a == b {
                            diag
                        } else if i != p && j != q {
                            off
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn gram_check(&self) -> bool {
        self.gram() == self.expected_gram()
    }

    pub fn blocks(&self) -> BlockDecomposition {
        let m = self.n - 1;
        let derangements: Vec<usize> = (0..self.rows())
            .filter(|&r| self.elements[r].fixed_points() == 0)
            .collect();
        let diagonal: Vec<usize> = (1..=m).map(|i| self.column_index(i, i)).collect();
        let off_diagonal: Vec<usize> = self
            .columns()
            .into_iter()
            .filter(|(i, j)| i != j)
            .map(|(i, j)| self.column_index(i, j))
            .collect();
        let all_cols: Vec<usize> = (0..self.cols()).collect();
        let all_rows: Vec<usize> = (0..self.rows()).collect();
        let identity_row = 0;

        // Rows: identity, derangements, the rest. Columns: diagonal first.
        let others: Vec<usize> = (1..self.rows())
            .filter(|r| !derangements.contains(r))
            .collect();
        let top_ok = diagonal.iter().all(|&c| self.entries[identity_row][c] == 1)
            && off_diagonal.iter().all(|&c| self.entries[identity_row][c] == 0);
        let middle_ok = derangements
            .iter()
            .all(|&r| diagonal.iter().all(|&c| self.entries[r][c] == 0));
        let block_form = top_ok && middle_ok && others.len() + derangements.len() + 1 == self.rows();

        BlockDecomposition {
            n: self.n,
            derangement_rows: derangements.clone(),
            diagonal_cols: diagonal.clone(),
            off_diagonal_cols: off_diagonal.clone(),
            n_block: self.submatrix(&derangements, &all_cols),
            m_block: self.submatrix(&derangements, &off_diagonal),
            w_block: self.submatrix(&all_rows, &diagonal),
            block_form,
        }
    }
}

/// Submatrices of `H`: `N` (derangement rows), `M` (its off-diagonal
/// columns) and `W` (the diagonal columns of all of `H`).
pub struct BlockDecomposition {
    pub n: usize,
    pub derangement_rows: Vec<usize>,
    pub diagonal_cols: Vec<usize>,
    pub off_diagonal_cols: Vec<usize>,
    pub n_block: RationalMatrix,
    pub m_block: RationalMatrix,
    pub w_block: RationalMatrix,
    /// The identity row is 1 on diagonal columns and 0 elsewhere, and every
    /// derangement row is 0 on diagonal columns.
    pub block_form: bool,
}

impl BlockDecomposition {
    /// Every row of `M` has exactly `n − 2` ones.
    pub fn m_row_sums_ok(&self) -> bool {
        let expected = BigRational::from_integer(BigInt::from(self.n - 2));
        (0..self.m_block.rows()).all(|r| self.m_block.row(r).iter().sum::<BigRational>() == expected)
    }

    /// `[M | 1]`.
    pub fn m_with_ones(&self) -> RationalMatrix {
        self.m_block
            .append_column(&RationalVector::constant(self.m_block.rows(), BigRational::one()))
    }

    /// Basis of `ker [M | 1]` and whether it is spanned by
    /// `(1, …, 1, −(n−2))`.
    pub fn kernel_with_ones(&self) -> (Vec<RationalVector>, bool) {
        let basis = self.m_with_ones().kernel_basis();
        let mut expected = vec![BigRational::one(); self.m_block.cols()];
        expected.push(BigRational::from_integer(-BigInt::from(self.n - 2)));
        let expected = RationalVector(expected);
        let ok = basis.len() == 1 && {
            let v = &basis[0];
            let scale = &v[0] / &expected[0];
            !scale.is_zero() && v == &expected.scale(&scale)
        };
        (basis, ok)
    }

    /// For `samples` random integer combinations `y` of a kernel basis of
    /// `N`, checks that `H y` lies in the column space of `W`.
    pub fn kernel_spot_checks(&self, h: &IncidenceH, samples: usize, seed: u64) -> bool {
        let basis = self.n_block.kernel_basis();
        let w_rank = self.w_block.rank();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let hm = h.matrix();
        (0..samples).all(|_| {
            let mut y = RationalVector::zeros(h.cols());
            for b in &basis {
                let c = BigRational::from_integer(BigInt::from(rng.gen_range(-9i64..=9)));
                y = y.add(&b.scale(&c));
            }
            let hy = hm.mul_vec(&y).expect("shapes agree");
            self.w_block.append_column(&hy).rank() == w_rank
        })
    }
}

/// The derangement with `π(a) = n` and `π(i) = i + b` (wrapping past `n` to
/// `i + b + 1 − n`) for the other `i ≤ n−1`; `π(n)` is what remains.
pub fn pi_ab(a: usize, b: usize, n: usize) -> Result<Permutation> {
    if n < 3 || !(1..n).contains(&a) || !(1..=n - 2).contains(&b) {
        return Err(Error::ParameterOutOfRange(format!(
            "(a,b)=({a},{b}) needs 1 ≤ a ≤ n−1 and 1 ≤ b ≤ n−2 with n={n} ≥ 3"
        )));
    }
    let mut images = vec![0; n];
    let mut used = vec![false; n + 1];
    for i in 1..n {
        let v = if i == a {
            n
        } else if i + b < n {
            i + b
        } else {
            i + b + 1 - n
        };
        images[i - 1] = v;
        used[v] = true;
    }
    images[n - 1] = (1..=n).find(|&v| !used[v]).expect("one value left");
    Permutation::from_images(&images)
}

/// Columns `(i, i + j mod (n−1))`, residues in `1..=n−1`, for `i` then `j`.
pub fn shifted_pair_order(n: usize) -> Vec<(usize, usize)> {
    let m = n - 1;
    (1..=m)
        .flat_map(|i| (1..=m - 1).map(move |j| (i, (i - 1 + j) % m + 1)))
        .collect()
}

/// Rows `π_{a,b}` (by `a` then `b`) against the shifted pair order.
pub fn pi_ab_submatrix(h: &IncidenceH) -> Result<RationalMatrix> {
    let n = h.n();
    let mut rows = Vec::new();
    for a in 1..n {
        for b in 1..=n - 2 {
            rows.push(pi_ab(a, b, n)?.rank()? as usize);
        }
    }
    let cols: Vec<usize> = shifted_pair_order(n)
        .into_iter()
        .map(|(i, j)| h.column_index(i, j))
        .collect();
    Ok(h.submatrix(&rows, &cols))
}

/// `K_{n−1} ⊗ I_{n−2}`.
pub fn k_kron_i(n: usize) -> RationalMatrix {
    let k = RationalMatrix::from_integer_fn(n - 1, n - 1, |r, c| i64::from(r != c));
    k.kron(&RationalMatrix::identity(n - 2))
}
