//! Explicit cliques in the permutation graphs.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::field::FiniteField;
use super::latin::complete_latin_rectangle;
use crate::chartab::CharacterTable;
use crate::error::{Error, Result};
use crate::permgroup::{IntegerPartition, Permutation};
use crate::scheme::validate_pairs;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    Latin,
    Cycles,
    Affine,
    User,
}

#[derive(Clone, Debug, Serialize)]
pub struct CliqueCertificate {
    pub n: usize,
    pub t: usize,
    pub construction: Construction,
    pub members: Vec<Permutation>,
    pub validated: bool,
}

impl CliqueCertificate {
    /// Checks pairwise agreements `≤ t` and records the outcome.
    pub fn new(n: usize, t: usize, construction: Construction, members: Vec<Permutation>) -> Result<Self> {
        validate_pairs(&members, n, |a| a <= t, "clique members not adjacent")?;
        Ok(CliqueCertificate {
            n,
            t,
            construction,
            members,
            validated: true,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Re-runs the pairwise check.
    pub fn revalidate(&self) -> Result<()> {
        validate_pairs(&self.members, self.n, |a| a <= self.t, "clique members not adjacent")
    }

    /// `χ_λ(C) = Σ_{x ∈ C} χ_λ(x)` for every partition, in table row order.
    pub fn character_sums(&self, table: &CharacterTable) -> Result<Vec<(IntegerPartition, BigInt)>> {
        if table.n() != self.n {
            return Err(Error::DegreeMismatch {
                left: table.n(),
                right: self.n,
            });
        }
        Ok(table
            .partitions()
            .iter()
            .enumerate()
            .map(|(row, l)| (l.clone(), table.class_function_sum(row, &self.members)))
            .collect())
    }
}

fn from_zero_based(images: &[usize]) -> Permutation {
    Permutation::from_zero_based_unchecked(images.iter().map(|&x| x as u8).collect())
}

/// Rows of the cyclic Latin square, `i ↦ i + k (mod n)`. Row `0` is the
/// identity and the rows form a cyclic group.
pub fn latin_clique(n: usize) -> Result<CliqueCertificate> {
    check_degree("latin clique", n, 1)?;
    let members = (0..n)
        .map(|k| from_zero_based(&(0..n).map(|i| (i + k) % n).collect::<Vec<_>>()))
        .collect();
    CliqueCertificate::new(n, 0, Construction::Latin, members)
}

/// A Latin square with first row `1, 2, …, n` and second row
/// `2, 1, n, 3, 4, …, n−1`, completed by bipartite matching.
pub fn odd_n_latin_clique(n: usize) -> Result<CliqueCertificate> {
    if n < 5 || n % 2 == 0 {
        return Err(Error::UnsupportedDegree {
            construction: "odd-n Latin clique",
            degree: n,
            reason: "requires odd n ≥ 5".into(),
        });
    }
    check_degree("odd-n Latin clique", n, 5)?;
    let first: Vec<usize> = (0..n).collect();
    let mut second = vec![1, 0, n - 1];
    second.extend(2..n - 1);
    let square = complete_latin_rectangle(&[first, second], n)?;
    let members = square.iter().map(|r| from_zero_based(r)).collect();
    CliqueCertificate::new(n, 0, Construction::Latin, members)
}

/// The identity together with `n − 1` arc-disjoint directed Hamiltonian
/// cycles of the complete digraph, each read as an `n`-cycle permutation.
pub fn cycle_decomposition_clique(n: usize) -> Result<CliqueCertificate> {
    check_degree("cycle decomposition clique", n, 3)?;
    let cycles = if n % 2 == 1 {
        walecki_cycles(n)
    } else if n == 4 || n == 6 {
        return Err(Error::UnsupportedDegree {
            construction: "cycle decomposition clique",
            degree: n,
            reason: "the complete digraph has no Hamiltonian cycle decomposition".into(),
        });
    } else if n <= MAX_EVEN_CYCLE_DEGREE {
        even_cycles_by_search(n)?
    } else {
        return Err(Error::UnsupportedDegree {
            construction: "cycle decomposition clique",
            degree: n,
            reason: format!("search only attempted for even n ≤ {MAX_EVEN_CYCLE_DEGREE}"),
        });
    };
    if !arcs_partition_digraph(&cycles, n) {
        return Err(Error::SearchExhausted(
            "cycle decomposition failed arc check".into(),
        ));
    }
    let mut members = vec![Permutation::identity(n)];
    members.extend(cycles.iter().map(|c| cycle_to_permutation(c, n)));
    CliqueCertificate::new(n, 0, Construction::Cycles, members)
}

/// Largest even degree for which the backtracking decomposition runs.
pub const MAX_EVEN_CYCLE_DEGREE: usize = 8;

fn check_degree(what: &'static str, n: usize, min: usize) -> Result<()> {
    if n < min || n > u8::MAX as usize {
        return Err(Error::DegreeOutOfRange {
            what,
            degree: n,
            min,
            max: u8::MAX as usize,
        });
    }
    Ok(())
}

/// Vertex sequence `v₀ v₁ … v_{n−1}` to the permutation `v_i ↦ v_{i+1}`.
fn cycle_to_permutation(cycle: &[usize], n: usize) -> Permutation {
    let mut images = vec![0; n];
    for (i, &v) in cycle.iter().enumerate() {
        images[v] = cycle[(i + 1) % n];
    }
    from_zero_based(&images)
}

/// True iff the cycles are Hamiltonian and use every arc `u → v`, `u ≠ v`,
/// exactly once.
pub fn arcs_partition_digraph(cycles: &[Vec<usize>], n: usize) -> bool {
    let mut used = vec![false; n * n];
    for c in cycles {
        if c.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for (i, &u) in c.iter().enumerate() {
            if u >= n || seen[u] {
                return false;
            }
            seen[u] = true;
            let v = c[(i + 1) % n];
            if v >= n || u == v || used[u * n + v] {
                return false;
            }
            used[u * n + v] = true;
        }
    }
    (0..n).all(|u| (0..n).all(|v| u == v || used[u * n + v]))
}

/// Walecki's zigzag Hamiltonian paths on `Z_{2m}` closed through an extra
/// vertex, each cycle taken in both directions. Vertex `2m` is the extra one.
fn walecki_cycles(n: usize) -> Vec<Vec<usize>> {
    let m = (n - 1) / 2;
    let z = 2 * m;
    let mut out = Vec::with_capacity(n - 1);
    for k in 0..m {
        let mut cycle = vec![z];
        for i in 0..z {
            let offset = if i % 2 == 1 {
                k + i.div_ceil(2)
            } else {
                k + z - i / 2
            };
            cycle.push(offset % z);
        }
        let mut reversed = cycle.clone();
        reversed[1..].reverse();
        out.push(cycle);
        out.push(reversed);
    }
    out
}

const EVEN_SEARCH_BUDGET: u64 = 2_000_000;
const EVEN_SEARCH_RESTARTS: u64 = 200;

struct CycleSearch {
    n: usize,
    /// Bit `v` of `avail[u]` is set while the arc `u → v` is unused.
    avail: Vec<u32>,
    cycles: Vec<Vec<usize>>,
    nodes: u64,
    budget: u64,
    rng: ChaCha8Rng,
}

impl CycleSearch {
    fn next_cycle(&mut self) -> bool {
        if self.cycles.len() == self.n - 1 {
            return true;
        }
        let mut path = vec![0];
        self.grow(&mut path, 1)
    }

    fn grow(&mut self, path: &mut Vec<usize>, visited: u32) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        let u = *path.last().expect("nonempty path");
        if path.len() == self.n {
            if self.avail[u] & 1 == 0 {
                return false;
            }
            self.avail[u] &= !1;
            self.cycles.push(path.clone());
            if self.next_cycle() {
                return true;
            }
            self.cycles.pop();
            self.avail[u] |= 1;
            return false;
        }
        let open = self.avail[u] & !visited;
        let mut targets: Vec<usize> = (0..self.n).filter(|&v| open >> v & 1 == 1).collect();
        if path.len() == 1 {
            // Cycles are unordered: each one takes the smallest free arc out of 0.
            targets.truncate(1);
        } else {
            targets.shuffle(&mut self.rng);
        }
        for v in targets {
            self.avail[u] &= !(1 << v);
            path.push(v);
            if self.feasible(path, visited | 1 << v) && self.grow(path, visited | 1 << v) {
                return true;
            }
            path.pop();
            self.avail[u] |= 1 << v;
        }
        false
    }

    /// Every unvisited vertex still needs a free in-arc from the tail or
    /// another unvisited vertex.
    fn feasible(&self, path: &[usize], visited: u32) -> bool {
        let tail = *path.last().expect("nonempty path");
        let full = (1u32 << self.n) - 1;
        let sources = (full & !visited) | 1 << tail;
        for w in 0..self.n {
            if visited >> w & 1 == 1 {
                continue;
            }
            let has_in = (0..self.n).any(|s| sources >> s & 1 == 1 && s != w && self.avail[s] >> w & 1 == 1);
            if !has_in {
                return false;
            }
        }
        true
    }
}

/// Randomized backtracking with a node budget and seeded restarts.
fn even_cycles_by_search(n: usize) -> Result<Vec<Vec<usize>>> {
    let full = (1u32 << n) - 1;
    for seed in 0..EVEN_SEARCH_RESTARTS {
        let mut search = CycleSearch {
            n,
            avail: (0..n).map(|u| full & !(1 << u)).collect(),
            cycles: Vec::new(),
            nodes: 0,
            budget: EVEN_SEARCH_BUDGET,
            rng: ChaCha8Rng::seed_from_u64(seed),
        };
        if search.next_cycle() {
            return Ok(search.cycles);
        }
    }
    Err(Error::SearchExhausted(format!(
        "no Hamiltonian decomposition of the complete digraph on {n} vertices within {EVEN_SEARCH_RESTARTS} restarts"
    )))
}

/// The maps `x ↦ a·x + b`, `a ≠ 0`, over the field of order `q`, acting on
/// points `1..=q` (field element `e` is point `e + 1`). Sharply
/// 2-transitive, so any two members agree on at most one point.
pub fn affine_clique(q: usize) -> Result<CliqueCertificate> {
    let field = FiniteField::new(q)?;
    let mut members = Vec::with_capacity(q * (q - 1));
    for a in 1..q {
        for b in 0..q {
            let images: Vec<usize> = (0..q).map(|x| field.add(field.mul(a, x), b)).collect();
            members.push(from_zero_based(&images));
        }
    }
    CliqueCertificate::new(q, 1, Construction::Affine, members)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn latin_examples() {
        let c = latin_clique(2).unwrap();
        assert_eq!(c.members[0].one_line(), vec![1, 2]);
        assert_eq!(c.members[1].one_line(), vec![2, 1]);
        for n in 1..=8 {
            let c = latin_clique(n).unwrap();
            assert_eq!(c.len(), n);
            assert!(c.revalidate().is_ok());
        }
    }

    #[test]
    fn odd_latin_rows() {
        let c = odd_n_latin_clique(5).unwrap();
        assert_eq!(c.members[0].one_line(), vec![1, 2, 3, 4, 5]);
        assert_eq!(c.members[1].one_line(), vec![2, 1, 5, 3, 4]);
        assert_eq!(c.len(), 5);
        assert!(odd_n_latin_clique(6).is_err());
        assert!(odd_n_latin_clique(3).is_err());
    }

    #[test]
    fn walecki_decomposes() {
        for n in [3, 5, 7, 9, 11] {
            let cycles = walecki_cycles(n);
            assert_eq!(cycles.len(), n - 1);
            assert!(arcs_partition_digraph(&cycles, n), "n={n}");
        }
    }

    #[test]
    fn cycle_cliques() {
        for n in [3, 5, 7, 8] {
            let c = cycle_decomposition_clique(n).unwrap();
            assert_eq!(c.len(), n);
            assert!(c.members[1..].iter().all(Permutation::is_n_cycle));
        }
        for n in [4, 6] {
            assert!(matches!(
                cycle_decomposition_clique(n),
                Err(Error::UnsupportedDegree { .. })
            ));
        }
    }

    #[test]
    fn affine_examples() {
        assert_eq!(affine_clique(3).unwrap().len(), 6);
        for q in [4, 5, 7, 8, 9] {
            let c = affine_clique(q).unwrap();
            assert_eq!(c.len(), q * (q - 1));
        }
        assert!(affine_clique(6).is_err());
    }

    #[test]
    fn cycle_clique_character_sum_formula() {
        let table = CharacterTable::new(7).unwrap();
        let c = cycle_decomposition_clique(7).unwrap();
        for (lambda, sum) in c.character_sums(&table).unwrap() {
            let row = table.row_of(&lambda).unwrap();
            let n_cycle = crate::chartab::n_cycle_character(&lambda).unwrap();
            assert_eq!(sum, BigInt::from(table.dimension(row)) + 6 * n_cycle);
        }
    }
}
