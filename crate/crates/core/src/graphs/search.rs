//! Exhaustive maximum independent sets by clique-cover branch and bound.
//!
//! The vertex set is split into cosets of a group that is a clique in
//! `P_t(n)`; an independent set meets each coset at most once. The search
//! decides the cosets one at a time (fewest live candidates first), either
//! picking one live member or skipping the coset, and prunes when the chosen
//! count plus the number of undecided cosets that still have a live member
//! falls below the best size known.
//!
//! The best size starts at `(n−t−1)!`, the size of a point-pair family that
//! is checked to be independent first, so every set at least that large is
//! found and nothing smaller is ever reported.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::Serialize;

use super::cliques::{affine_clique, latin_clique, CliqueCertificate};
use super::field::SUPPORTED_ORDERS;
use super::{validate_family, Family};
use crate::error::{Error, Result};
use crate::permgroup::{all_permutations, factorial_u64, lehmer_rank, Permutation};

pub const MAX_SEARCH_DEGREE: usize = 6;

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub n: usize,
    pub t: usize,
    pub alpha: usize,
    /// Size of the cover clique, a lower bound on the clique number.
    pub omega: usize,
    /// `alpha · omega = n!`, which certifies both values.
    pub tight: bool,
    pub cover: super::Construction,
    pub sets: Vec<Vec<Permutation>>,
}

/// The clique whose cosets cover the vertex set: the cyclic Latin group for
/// `t = 0` and, when `n` is a field order, the affine group for `t ≥ 1`.
pub fn cover_clique(n: usize, t: usize) -> Result<CliqueCertificate> {
    if t >= 1 && SUPPORTED_ORDERS.contains(&n) {
        let mut c = affine_clique(n)?;
        c.t = t;
        Ok(c)
    } else {
        let mut c = latin_clique(n)?;
        c.t = t;
        Ok(c)
    }
}

/// Right cosets `{ℓσ : ℓ ∈ L}` of the cover group, as vertex ranks, in
/// order of their smallest member.
pub fn coset_cover(n: usize, t: usize) -> Result<Vec<Vec<usize>>> {
    let clique = cover_clique(n, t)?;
    let elements = all_permutations(n);
    let mut assigned = vec![false; elements.len()];
    let mut cosets = Vec::new();
    for (r, sigma) in elements.iter().enumerate() {
        if assigned[r] {
            continue;
        }
        let mut coset: Vec<usize> = clique
            .members
            .iter()
            .map(|l| lehmer_rank(l.compose_unchecked(sigma).zero_based()) as usize)
            .collect();
        coset.sort_unstable();
        for &m in &coset {
            assert!(!assigned[m], "cover group is not closed");
            assigned[m] = true;
        }
        cosets.push(coset);
    }
    Ok(cosets)
}

struct Problem {
    cosets: Vec<Vec<usize>>,
    /// `conflict[v][c]`: members of coset `c` adjacent to vertex `v`, as a mask.
    conflict: Vec<Vec<u32>>,
}

#[derive(Default)]
struct Found {
    best: usize,
    sets: Vec<Vec<usize>>,
}

impl Found {
    fn offer(&mut self, set: &[usize]) {
        if set.len() > self.best {
            self.best = set.len();
            self.sets.clear();
        }
        if set.len() == self.best {
            self.sets.push(set.to_vec());
        }
    }
}

struct Worker<'a> {
    problem: &'a Problem,
    shared_best: &'a AtomicUsize,
    chosen: Vec<usize>,
    found: Found,
}

impl Worker<'_> {
    fn bound_ok(&self, live: usize) -> bool {
        self.chosen.len() + live >= self.shared_best.load(Ordering::Relaxed)
    }

    /// `masks[c]` holds live members of undecided coset `c`; decided cosets
    /// are zeroed.
    fn explore(&mut self, masks: &mut [u32]) {
        let live = masks.iter().filter(|&&m| m != 0).count();
        if !self.bound_ok(live) {
            return;
        }
        let Some(c) = (0..masks.len())
            .filter(|&c| masks[c] != 0)
            .min_by_key(|&c| masks[c].count_ones())
        else {
            self.record();
            return;
        };
        self.branch(masks, c);
    }

    fn branch(&mut self, masks: &mut [u32], c: usize) {
        let mask = masks[c];
        masks[c] = 0;
        for bit in 0..32 {
            if mask >> bit & 1 == 0 {
                continue;
            }
            let v = self.problem.cosets[c][bit];
            let mut next = masks.to_vec();
            for (m, conflict) in next.iter_mut().zip(&self.problem.conflict[v]) {
                *m &= !conflict;
            }
            self.chosen.push(v);
            self.explore(&mut next);
            self.chosen.pop();
        }
        self.explore(masks);
        masks[c] = mask;
    }

    fn record(&mut self) {
        let size = self.chosen.len();
        if size < self.shared_best.load(Ordering::Relaxed) {
            return;
        }
        self.shared_best.fetch_max(size, Ordering::Relaxed);
        let mut set = self.chosen.clone();
        set.sort_unstable();
        self.found.offer(&set);
    }
}

/// All maximum independent sets of `P_t(n)`, `n ≤ 6`.
///
/// `workers > 1` splits the first branching across threads; the result does
/// not depend on the worker count.
pub fn max_independent_sets(n: usize, t: usize, workers: usize) -> Result<SearchResult> {
    if !(2..=MAX_SEARCH_DEGREE).contains(&n) {
        return Err(Error::DegreeOutOfRange {
            what: "independent-set search",
            degree: n,
            min: 2,
            max: MAX_SEARCH_DEGREE,
        });
    }
    if t + 1 >= n {
        return Err(Error::ParameterOutOfRange(format!(
            "threshold t={t} must satisfy t < n - 1 = {}",
            n - 1
        )));
    }
    let elements = all_permutations(n);
    let clique = cover_clique(n, t)?;
    let cosets = coset_cover(n, t)?;
    let conflict: Vec<Vec<u32>> = elements
        .iter()
        .map(|v| {
            cosets
                .iter()
                .map(|coset| {
                    coset.iter().enumerate().fold(0u32, |m, (bit, &u)| {
                        if elements[u].agreements_unchecked(v) <= t {
                            m | 1 << bit
                        } else {
                            m
                        }
                    })
                })
                .collect()
        })
        .collect();
    let problem = Problem { cosets, conflict };

    let seed = Family::new(n, &(1..=t + 1).map(|i| (i, i)).collect::<Vec<_>>())?;
    assert!(validate_family(&seed.members, t).valid);
    let shared_best = AtomicUsize::new(seed.members.len());

    let full: Vec<u32> = problem
        .cosets
        .iter()
        .map(|c| ((1u64 << c.len()) - 1) as u32)
        .collect();

    let found = if workers <= 1 {
        let mut w = Worker {
            problem: &problem,
            shared_best: &shared_best,
            chosen: Vec::new(),
            found: Found::default(),
        };
        w.explore(&mut full.clone());
        w.found
    } else {
        // Root branches: each member of coset 0, then skipping it.
        let first = problem.cosets[0].len();
        let next_task = AtomicUsize::new(0);
        let merged = Mutex::new(Found::default());
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| {
                    let mut w = Worker {
                        problem: &problem,
                        shared_best: &shared_best,
                        chosen: Vec::new(),
                        found: Found::default(),
                    };
                    loop {
                        let task = next_task.fetch_add(1, Ordering::Relaxed);
                        if task > first {
                            break;
                        }
                        let mut masks = full.clone();
                        masks[0] = 0;
                        if task < first {
                            let v = problem.cosets[0][task];
                            for (m, conflict) in masks.iter_mut().zip(&problem.conflict[v]) {
                                *m &= !conflict;
                            }
                            w.chosen.push(v);
                            w.explore(&mut masks);
                            w.chosen.pop();
                        } else {
                            w.explore(&mut masks);
                        }
                    }
                    let mut m = merged.lock().expect("no poisoned workers");
                    let found = std::mem::take(&mut w.found);
                    for s in found.sets {
                        m.offer(&s);
                    }
                });
            }
        });
        merged.into_inner().expect("no poisoned workers")
    };

    let best = shared_best.load(Ordering::Relaxed);
    let mut sets: Vec<Vec<usize>> = found.sets.into_iter().filter(|s| s.len() == best).collect();
    sets.sort();
    sets.dedup();
    let omega = clique.len();
    Ok(SearchResult {
        n,
        t,
        alpha: best,
        omega,
        tight: best as u64 * omega as u64 == factorial_u64(n),
        cover: clique.construction,
        sets: sets
            .into_iter()
            .map(|s| s.into_iter().map(|r| elements[r].clone()).collect())
            .collect(),
    })
}

impl SearchResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "t": self.t,
            "alpha": self.alpha,
            "omega": self.omega,
            "tight": self.tight,
            "cover": self.cover,
            "count": self.sets.len(),
            "sets": self.sets,
        })
    }
}
