//! Exact checks of the linear algebra behind the characterization of
//! maximum intersecting families of permutations: the incidence matrix `H`
//! and its blocks, module membership of characteristic vectors, the
//! character sums of explicit cliques, and the classification of maximum
//! independent sets.

mod classify;
mod incidence;
mod modules;

pub use classify::{classify_maximum_sets, ClassificationReport, SetClassification};
pub use incidence::{
    k_kron_i, pi_ab, pi_ab_submatrix, shifted_pair_order, BlockDecomposition, IncidenceH,
    MAX_INCIDENCE_DEGREE,
};
pub use modules::{
    basis_check, constraint_sets, depth_conjecture_dims, module_support, shifted_support,
    support_partitions, BasisReport, DepthReport, RankCertificate, SupportEntry, MAX_MODULE_DEGREE,
};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use serde_json::json;

use crate::chartab::{n_cycle_character, CharacterTable};
use crate::error::Result;
use crate::graphs::{cycle_decomposition_clique, odd_n_latin_clique, CliqueCertificate, Family};
use crate::permgroup::IntegerPartition;
use crate::scheme::ConjugacyScheme;

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub n: usize,
    pub pass: bool,
    pub details: serde_json::Value,
}

impl LemmaReport {
    fn new(lemma: &str, n: usize, pass: bool, details: serde_json::Value) -> Self {
        LemmaReport {
            lemma: lemma.to_string(),
            n,
            pass,
            details,
        }
    }
}

/// Number of random kernel vectors per spot check.
pub const KERNEL_SAMPLES: usize = 20;

/// The incidence-matrix checks for `3 ≤ n ≤ 7`, plus module support and
/// the basis check for `n ≤ 6`.
pub fn lemma_reports(n: usize) -> Result<Vec<LemmaReport>> {
    let h = IncidenceH::new(n)?;
    let mut out = Vec::new();

    out.push(LemmaReport::new(
        "gram",
        n,
        h.gram_check(),
        json!({ "diagonal": (n - 1).to_string(), "columns": h.cols() }),
    ));

    let rank_h = h.rank();
    out.push(LemmaReport::new(
        "rank-H",
        n,
        rank_h == (n - 1) * (n - 1),
        json!({ "rank": rank_h, "expected": (n - 1) * (n - 1) }),
    ));

    let blocks = h.blocks();
    let rank_m = blocks.m_block.rank();
    out.push(LemmaReport::new(
        "rank-M",
        n,
        blocks.block_form && blocks.m_row_sums_ok() && rank_m == (n - 1) * (n - 2),
        json!({
            "rank": rank_m,
            "expected": (n - 1) * (n - 2),
            "N": [blocks.n_block.rows(), blocks.n_block.cols()],
            "M": [blocks.m_block.rows(), blocks.m_block.cols()],
            "W": [blocks.w_block.rows(), blocks.w_block.cols()],
            "block_form": blocks.block_form,
        }),
    ));

    let sub = pi_ab_submatrix(&h)?;
    out.push(LemmaReport::new(
        "pi-ab-submatrix",
        n,
        sub == k_kron_i(n),
        json!({ "rows": sub.rows(), "cols": sub.cols() }),
    ));

    let (basis, ok) = blocks.kernel_with_ones();
    out.push(LemmaReport::new(
        "kernel-M-ones",
        n,
        ok,
        json!({
            "dimension": basis.len(),
            "basis": basis.iter().map(|v| v.0.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        }),
    ));

    out.push(LemmaReport::new(
        "kernel-N-in-W",
        n,
        blocks.kernel_spot_checks(&h, KERNEL_SAMPLES, n as u64),
        json!({ "samples": KERNEL_SAMPLES, "kernel_dimension": blocks.n_block.kernel_basis().len() }),
    ));

    if n <= MAX_MODULE_DEGREE {
        let scheme = ConjugacyScheme::new(n)?;
        let standard = IntegerPartition::standard(n);
        let mut all_standard = true;
        for (i, j) in (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))) {
            let fam = Family::point(n, i, j)?;
            all_standard &= support_partitions(&module_support(&scheme, &fam.members)?) == [standard.clone()];
        }
        out.push(LemmaReport::new(
            "module-support",
            n,
            all_standard,
            json!({ "families": n * n, "support": [standard] }),
        ));
        let basis = basis_check(&scheme)?;
        out.push(LemmaReport::new(
            "basis",
            n,
            basis.pass(),
            serde_json::to_value(&basis).expect("serializable"),
        ));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CliqueCharacterReport {
    pub n: usize,
    pub cliques: Vec<&'static str>,
    /// Partitions other than `[n−1,1]` on which every clique sums to zero.
    pub uncovered: Vec<IntegerPartition>,
    /// `χ_λ(T) = χ_λ(1) + (n−1) χ_λ(n-cycle)` on the cycle clique.
    pub cycle_formula_holds: Option<bool>,
}

impl CliqueCharacterReport {
    pub fn pass(&self) -> bool {
        self.uncovered.is_empty() && self.cycle_formula_holds != Some(false)
    }
}

/// For each `λ ≠ [n−1,1]`, some explicit clique `C` of size `n` has
/// `χ_λ(C) ≠ 0`. Uses the cycle-decomposition clique when it exists and
/// the prescribed Latin clique for odd `n`.
pub fn clique_character_check(n: usize) -> Result<CliqueCharacterReport> {
    let table = CharacterTable::new(n)?;
    let mut cliques: Vec<(&'static str, CliqueCertificate)> = Vec::new();
    if let Ok(c) = cycle_decomposition_clique(n) {
        cliques.push(("cycles", c));
    }
    if n % 2 == 1 && n >= 5 {
        cliques.push(("odd-latin", odd_n_latin_clique(n)?));
    }
    let mut sums = Vec::new();
    for (_, c) in &cliques {
        sums.push(c.character_sums(&table)?);
    }
    let standard = IntegerPartition::standard(n);
    let uncovered = table
        .partitions()
        .iter()
        .enumerate()
        .filter(|(_, l)| **l != standard)
        .filter(|(r, _)| sums.iter().all(|s| s[*r].1.is_zero()))
        .map(|(_, l)| l.clone())
        .collect();
    let cycle_formula_holds = match cliques.iter().position(|(name, _)| *name == "cycles") {
        Some(i) => {
            let mut ok = true;
            for (r, (l, sum)) in sums[i].iter().enumerate() {
                let expected = BigInt::from(table.dimension(r)) + BigInt::from(n - 1) * n_cycle_character(l)?;
                ok &= *sum == expected;
            }
            Some(ok)
        }
        None => None,
    };
    Ok(CliqueCharacterReport {
        n,
        cliques: cliques.iter().map(|(name, _)| *name).collect(),
        uncovered,
        cycle_formula_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemmas_small() {
        for n in 3..=5 {
            for r in lemma_reports(n).unwrap() {
                assert!(r.pass, "n={n} {}: {}", r.lemma, r.details);
            }
        }
    }

    #[test]
    fn clique_characters() {
        for n in [7, 8, 9] {
            let r = clique_character_check(n).unwrap();
            assert!(r.pass(), "{r:?}");
        }
    }
}
