use std::path::Path;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use permekr::chartab::CharacterTable;
use permekr::ekrverify::{
    classify_maximum_sets, clique_character_check, depth_conjecture_dims, lemma_reports,
};
use permekr::graphs::{
    affine_clique, cover_clique, cycle_decomposition_clique, latin_clique, max_independent_sets,
    odd_n_latin_clique, validate_family, CliqueCertificate, Family,
};
use permekr::linalg::RationalVector;
use permekr::permgroup::{
    all_permutations, conjugacy_classes, derangement_count, factorial, parse_permutation_list,
    IntegerPartition, MAX_RANKED_DEGREE,
};
use permekr::scheme::{union_spectrum, ConjugacyScheme, MAX_CONVOLUTION_DEGREE};
use permekr::{Error, Result};

use crate::report::Report;

/// Largest `n` accepted by `derangements`.
pub const MAX_DERANGEMENT_DEGREE: usize = 1000;
/// Brute-force enumeration cutoff for `derangements`.
const BRUTE_FORCE_DEGREE: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Latin,
    OddLatin,
    Cycles,
    Affine,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Latin => "latin",
            Method::OddLatin => "odd-latin",
            Method::Cycles => "cycles",
            Method::Affine => "affine",
        }
    }
}

fn degree_range(what: &'static str, n: usize, min: usize, max: usize) -> Result<()> {
    if (min..=max).contains(&n) {
        Ok(())
    } else {
        Err(Error::DegreeOutOfRange {
            what,
            degree: n,
            min,
            max,
        })
    }
}

fn threshold_range(n: usize, t: usize) -> Result<()> {
    if t + 1 < n {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange(format!(
            "threshold t={t} must satisfy t < n - 1 = {}",
            n.saturating_sub(1)
        )))
    }
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

fn ratio(a: &BigUint, b: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(a.clone()), BigInt::from(b.clone()))
}

pub fn derangements(n: usize) -> Result<Report> {
    degree_range("derangement count", n, 1, MAX_DERANGEMENT_DEGREE)?;
    let mut r = Report::new("derangements", json!({ "n": n }));
    let d = derangement_count(n);

    // Inclusion-exclusion: Σ (−1)^k n!/k!.
    let mut term = BigInt::from(factorial(n));
    let mut alternating = BigInt::zero();
    for k in 0..=n {
        if k > 0 {
            term /= BigInt::from(k);
        }
        if k % 2 == 0 {
            alternating += &term;
        } else {
            alternating -= &term;
        }
    }
    r.check(
        "inclusion-exclusion",
        alternating == BigInt::from(d.clone()),
        alternating.to_string(),
    );
    if n <= MAX_RANKED_DEGREE {
        let by_classes: BigUint = conjugacy_classes(n)
            .iter()
            .filter(|c| c.cycle_type.is_derangement_class())
            .map(|c| c.size.clone())
            .sum();
        r.check("class-sizes", by_classes == d, by_classes.to_string());
    }
    if n <= BRUTE_FORCE_DEGREE {
        let brute = all_permutations(n).iter().filter(|p| p.fixed_points() == 0).count();
        r.check("enumeration", BigUint::from(brute) == d, brute.to_string());
    }
    r.result = json!({ "n": n, "derangements": d.to_string() });
    r.text.push(format!("d({n}) = {d}"));
    Ok(r)
}

pub fn chartab(n: usize) -> Result<(Report, CharacterTable)> {
    let table = CharacterTable::new(n)?;
    let mut r = Report::new("chartab", json!({ "n": n }));
    r.check("row-orthogonality", table.check_row_orthogonality(), "");
    r.check("column-orthogonality", table.check_column_orthogonality(), "");
    let squares: BigUint = (0..table.size()).map(|i| table.dimension(i).pow(2)).sum();
    r.check("dimension-squares", squares == factorial(n), squares.to_string());
    let classes: Vec<String> = table.cycle_types().map(ToString::to_string).collect();
    r.result = json!({
        "n": n,
        "partitions": strings(table.partitions()),
        "classes": classes,
        "class_sizes": table.classes().iter().map(|c| c.size.to_string()).collect::<Vec<_>>(),
        "values": (0..table.size()).map(|i| strings(table.row(i))).collect::<Vec<_>>(),
    });
    let width = 6usize.max(
        (0..table.size())
            .flat_map(|i| table.row(i).iter().map(|v| v.to_string().len()))
            .max()
            .unwrap_or(1)
            + 1,
    );
    let label = table.partitions().iter().map(|p| p.to_string().len()).max().unwrap_or(3) + 1;
    r.text.push(format!(
        "{:label$}{}",
        "",
        classes.iter().map(|c| format!("{c:>width$}", width = width.max(c.len() + 1))).collect::<String>()
    ));
    for (i, p) in table.partitions().iter().enumerate() {
        let cells: String = table
            .row(i)
            .iter()
            .zip(&classes)
            .map(|(v, c)| format!("{:>w$}", v.to_string(), w = width.max(c.len() + 1)))
            .collect();
        r.text.push(format!("{:label$}{cells}", p.to_string()));
    }
    Ok((r, table))
}

pub fn spectrum(n: usize, t: usize) -> Result<Report> {
    let spec = union_spectrum(n, t)?;
    let mut r = Report::new("spectrum", json!({ "n": n, "t": t }));
    let total = spec.total_multiplicity();
    r.check("multiplicities-sum", total == factorial(n), total.to_string());
    let trivial = spec.eigenvalue(&IntegerPartition::trivial(n)).cloned();
    let valency = BigRational::from_integer(BigInt::from(spec.valency.clone()));
    r.check(
        "trivial-eigenvalue-is-valency",
        trivial.as_ref() == Some(&valency),
        spec.valency.to_string(),
    );
    let (least, at) = spec.least();
    if t == 0 && n >= 2 {
        let expected = ratio(&derangement_count(n), &BigUint::from(n - 1));
        let standard = spec.eigenvalue(&IntegerPartition::standard(n)).cloned();
        let ok = standard == Some(-expected.clone()) && (n < 4 || least == -expected.clone());
        r.check("standard-eigenvalue", ok, format!("-{expected}"));
    }
    r.result = spec.to_json();
    r.text.push(format!("{:<16}{:>24}{:>20}", "partition", "eigenvalue", "multiplicity"));
    for e in &spec.entries {
        r.text.push(format!(
            "{:<16}{:>24}{:>20}",
            e.partition.to_string(),
            e.eigenvalue.to_string(),
            e.multiplicity.to_string()
        ));
    }
    r.text.push(format!("least {least} at {}", strings(&at).join(" ")));
    Ok(r)
}

pub fn bounds(n: usize, t: usize) -> Result<Report> {
    degree_range("clique-coclique check", n, 2, MAX_CONVOLUTION_DEGREE)?;
    threshold_range(n, t)?;
    let scheme = ConjugacyScheme::new(n)?;
    let clique = cover_clique(n, t)?;
    let constraints: Vec<(usize, usize)> = (1..=t + 1).map(|i| (i, i)).collect();
    let family = Family::new(n, &constraints)?;
    let cc = scheme.clique_coclique_check(&clique.members, &family.members, t)?;
    let ratio_bound = scheme.ratio_bound(t)?;
    let alpha_bound = ratio(&factorial(n), &BigUint::from(clique.len()));

    let mut r = Report::new("bounds", json!({ "n": n, "t": t }));
    r.check("within-bound", cc.within_bound, format!("{} <= {}", cc.product, cc.bound));
    r.check("tight", cc.tight, "");
    if let Some(disjoint) = cc.disjoint_supports {
        r.check("disjoint-supports", disjoint, "");
    }
    let size = BigRational::from_integer(BigInt::from(family.len()));
    r.check("ratio-bound-holds", size <= ratio_bound, ratio_bound.to_string());
    r.result = json!({
        "omega": clique.len(),
        "clique": clique.construction,
        "alpha_bound": alpha_bound.to_string(),
        "independent_size": family.len(),
        "independent_constraints": constraints,
        "product": cc.product.to_string(),
        "bound": cc.bound.to_string(),
        "tight": cc.tight,
        "ratio_bound": ratio_bound.to_string(),
        "supports": cc.supports,
        "disjoint_supports": cc.disjoint_supports,
    });
    r.text.push(format!(
        "omega {} alpha-bound {} independent {} product {} of {} ratio-bound {}",
        clique.len(),
        alpha_bound,
        family.len(),
        cc.product,
        cc.bound,
        ratio_bound
    ));
    Ok(r)
}

pub fn clique(n: usize, method: Method) -> Result<Report> {
    let cert: CliqueCertificate = match method {
        Method::Latin => latin_clique(n)?,
        Method::OddLatin => odd_n_latin_clique(n)?,
        Method::Cycles => cycle_decomposition_clique(n)?,
        Method::Affine => affine_clique(n)?,
    };
    let mut r = Report::new("clique", json!({ "n": n, "method": method.name() }));
    let expected = if method == Method::Affine { n * (n - 1) } else { n };
    r.check("pairwise-agreements", cert.revalidate().is_ok(), format!("t={}", cert.t));
    r.check("size", cert.len() == expected, cert.len().to_string());
    let mut result = json!({
        "n": cert.n,
        "t": cert.t,
        "construction": cert.construction,
        "size": cert.len(),
        "members": cert.members,
    });
    if cert.n <= permekr::chartab::MAX_TABLE_DEGREE {
        let table = CharacterTable::new(cert.n)?;
        let sums = cert.character_sums(&table)?;
        result["character_sums"] = sums
            .iter()
            .map(|(l, s)| json!({ "partition": l, "sum": s.to_string() }))
            .collect();
    }
    r.result = result;
    r.text.extend(cert.members.iter().map(ToString::to_string));
    Ok(r)
}

pub fn search(n: usize, t: usize, workers: usize) -> Result<Report> {
    let found = max_independent_sets(n, t, workers)?;
    let mut r = Report::new("search", json!({ "n": n, "t": t }));
    let independent = found.sets.iter().all(|s| validate_family(s, t).valid);
    r.check("sets-independent", independent, found.sets.len().to_string());
    let product = BigUint::from(found.alpha) * BigUint::from(found.omega);
    r.check("within-bound", product <= factorial(n), product.to_string());
    if t == 0 {
        r.check(
            "alpha-is-(n-1)!",
            BigUint::from(found.alpha) == factorial(n - 1),
            found.alpha.to_string(),
        );
        r.check("count-is-n^2", found.sets.len() == n * n, found.sets.len().to_string());
    }
    r.result = found.to_json();
    r.text.push(format!(
        "alpha {} omega {} maximum sets {} tight {}",
        found.alpha,
        found.omega,
        found.sets.len(),
        found.tight
    ));
    Ok(r)
}

pub fn classify(n: usize, workers: usize) -> Result<Report> {
    let c = classify_maximum_sets(n, workers)?;
    let mut r = Report::new("classify", json!({ "n": n }));
    r.check("count-is-n^2", c.count == n * n, c.count.to_string());
    r.check("all-point-stabilizer-cosets", c.all_canonical, "");
    r.check("coordinates-recovered", c.all_coefficients_match, "");
    let case_two = c.sets.iter().filter(|s| s.case == 2).count();
    r.text.push(format!(
        "alpha {} sets {} (in span of H: {}, needing the all-ones vector: {})",
        c.alpha,
        c.count,
        c.count - case_two,
        case_two
    ));
    r.result = serde_json::to_value(&c).expect("serializable");
    Ok(r)
}

pub fn lemmas(n: usize) -> Result<Report> {
    let reports = lemma_reports(n)?;
    let mut r = Report::new("lemmas", json!({ "n": n }));
    for l in &reports {
        r.check(l.lemma.clone(), l.pass, "");
    }
    r.result = json!({ "lemmas": reports });
    Ok(r)
}

pub fn conjecture(n: usize, t: usize, depth: usize) -> Result<Report> {
    let scheme = ConjugacyScheme::new(n)?;
    let d = depth_conjecture_dims(&scheme, t, depth)?;
    let mut r = Report::new("conjecture", json!({ "n": n, "t": t, "depth": depth }));
    r.check("support-contained", d.support_contained, strings(&d.support_union).join(" "));
    r.check(
        "span-rank-matches-module-dimension",
        d.agrees_shifted || d.agrees_with_ones,
        format!(
            "modules {} shifted {} with-ones {}",
            d.module_dim_sum, d.span_rank_shifted.rank, d.span_rank_with_ones.rank
        ),
    );
    r.text.push(format!(
        "depth<={depth}: {} partitions, module dimension {}, {} families",
        d.partitions.len(),
        d.module_dim_sum,
        d.families
    ));
    r.text.push(format!(
        "rank of shifted vectors {} ({}), with all-ones {} ({})",
        d.span_rank_shifted.rank,
        d.span_rank_shifted.method,
        d.span_rank_with_ones.rank,
        d.span_rank_with_ones.method
    ));
    r.result = serde_json::to_value(&d).expect("serializable");
    Ok(r)
}

pub fn identity_check(n: usize, pairs: usize, seed: u64) -> Result<Report> {
    degree_range("fundamental identity", n, 2, MAX_CONVOLUTION_DEGREE)?;
    let scheme = ConjugacyScheme::new(n)?;
    let v = scheme.group_size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = Report::new("identity-check", json!({ "n": n, "pairs": pairs, "seed": seed }));

    let mut failures = Vec::new();
    for k in 0..pairs {
        let mut draw = || {
            let bits: Vec<i64> = (0..v).map(|_| rng.gen_range(0..=1)).collect();
            RationalVector::from_integers(bits)
        };
        let (x, y) = (draw(), draw());
        let (lhs, rhs) = scheme.fundamental_identity(&x, &y)?;
        if lhs != rhs {
            failures.push(k);
        }
    }
    r.check("random-pairs", failures.is_empty(), format!("{} of {pairs} equal", pairs - failures.len()));

    let ones = RationalVector::constant(v, BigRational::one());
    let (lhs, rhs) = scheme.fundamental_identity(&ones, &ones)?;
    let square = BigRational::from_integer(BigInt::from(v) * BigInt::from(v));
    r.check("all-ones", lhs == rhs && lhs == square, lhs.to_string());

    let clique = latin_clique(n)?;
    let family = Family::point(n, 1, 1)?;
    let x = scheme.characteristic_vector(&clique.members)?;
    let y = scheme.characteristic_vector(&family.members)?;
    let (elhs, erhs) = scheme.fundamental_identity(&x, &y)?;
    r.check("clique-vs-point-stabilizer", elhs == erhs, elhs.to_string());

    r.result = json!({
        "pairs": pairs,
        "failed_pairs": failures,
        "all_ones": { "lhs": lhs.to_string(), "rhs": rhs.to_string() },
        "clique_vs_point_stabilizer": { "lhs": elhs.to_string(), "rhs": erhs.to_string() },
    });
    Ok(r)
}

pub fn validate(text: &str, path: &Path, t: usize) -> Result<Report> {
    let members = parse_permutation_list(text)?;
    let n = members.first().map_or(0, |p| p.degree());
    if let Some(p) = members.iter().find(|p| p.degree() != n) {
        return Err(Error::DegreeMismatch {
            left: n,
            right: p.degree(),
        });
    }
    let v = validate_family(&members, t);
    let mut r = Report::new(
        "validate",
        json!({ "family": path.display().to_string(), "t": t }),
    );
    let detail = match &v.witness {
        Some((p, q, a)) => format!("[{p}] and [{q}] agree on {a} points"),
        None => String::new(),
    };
    r.check("pairwise-agreements", v.valid, detail);
    let witness = v
        .witness
        .as_ref()
        .map(|(p, q, a)| json!({ "left": p, "right": q, "agreements": a }));
    let mut result = json!({
        "n": n,
        "size": members.len(),
        "valid": v.valid,
        "witness": witness,
    });
    if t < n {
        result["largest_point_family"] = json!(factorial(n - t - 1).to_string());
    }
    r.result = result;
    r.text.push(format!("{} permutations of degree {n}", members.len()));
    Ok(r)
}

/// One section of the `verify-all` scoreboard.
fn section(board: &mut Report, sections: &mut Vec<Value>, label: String, outcome: Result<Report>) {
    match outcome {
        Ok(sub) => {
            let failed: Vec<&str> = sub.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
            board.check(label.clone(), sub.pass(), failed.join(" "));
            sections.push(json!({
                "section": label,
                "command": sub.command,
                "parameters": sub.parameters,
                "pass": sub.pass(),
                "checks": sub.checks,
            }));
        }
        Err(e) => {
            board.check(label.clone(), false, e.to_string());
            sections.push(json!({ "section": label, "pass": false, "error": e.to_string() }));
        }
    }
}

fn clique_characters(n: usize) -> Result<Report> {
    let c = clique_character_check(n)?;
    let mut r = Report::new("clique-characters", json!({ "n": n }));
    r.check("every-nonstandard-character-met", c.uncovered.is_empty(), strings(&c.uncovered).join(" "));
    if let Some(ok) = c.cycle_formula_holds {
        r.check("cycle-clique-formula", ok, "");
    }
    r.result = serde_json::to_value(&c).expect("serializable");
    Ok(r)
}

/// Every desk-scale check, one scoreboard line per section.
pub fn verify_all(workers: usize) -> Report {
    let mut board = Report::new("verify-all", json!({ "workers": workers }));
    let mut sections = Vec::new();
    let mut run = |label: String, outcome: Result<Report>| section(&mut board, &mut sections, label, outcome);

    for n in 1..=10 {
        run(format!("derangements {n}"), derangements(n));
    }
    for n in 1..=8 {
        run(format!("chartab {n}"), chartab(n).map(|(r, _)| r));
    }
    for n in 2..=8 {
        for t in 0..n - 1 {
            run(format!("spectrum {n} --t {t}"), spectrum(n, t));
        }
    }
    for n in 3..=7 {
        run(format!("bounds {n}"), bounds(n, 0));
    }
    for n in [4, 5, 7] {
        run(format!("bounds {n} --t 1"), bounds(n, 1));
    }
    for n in 3..=8 {
        run(format!("clique {n} --method latin"), clique(n, Method::Latin));
    }
    for n in [5, 7, 9] {
        run(format!("clique {n} --method odd-latin"), clique(n, Method::OddLatin));
    }
    for n in [3, 5, 7, 8, 9] {
        run(format!("clique {n} --method cycles"), clique(n, Method::Cycles));
    }
    for q in permekr::graphs::SUPPORTED_ORDERS {
        run(format!("clique {q} --method affine"), clique(q, Method::Affine));
    }
    for n in [7, 8, 9] {
        run(format!("clique characters {n}"), clique_characters(n));
    }
    for n in 3..=6 {
        run(format!("search {n}"), search(n, 0, workers));
    }
    run("search 5 --t 1".into(), search(5, 1, workers));
    for n in 3..=6 {
        run(format!("classify {n}"), classify(n, workers));
    }
    for n in 3..=7 {
        run(format!("lemmas {n}"), lemmas(n));
    }
    for n in [4, 5] {
        run(format!("identity-check {n}"), identity_check(n, 20, 0));
    }
    for n in 4..=6 {
        run(format!("conjecture {n} --t 1 --depth 2"), conjecture(n, 1, 2));
    }

    let passed = board.checks.iter().filter(|c| c.pass).count();
    board.text.push(format!("{passed} of {} sections pass", board.checks.len()));
    board.result = json!({ "sections": sections, "passed": passed, "total": board.checks.len() });
    board
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derangement_checks_agree_beyond_enumeration() {
        for n in [1, 9, 20, 21, 60] {
            let r = derangements(n).unwrap();
            assert!(r.pass(), "n={n} {:?}", r.checks);
        }
        assert_eq!(derangements(4).unwrap().result["derangements"], "9");
    }

    #[test]
    fn spectrum_checks_small_degrees() {
        for n in 2..=6 {
            for t in 0..n - 1 {
                assert!(spectrum(n, t).unwrap().pass(), "n={n} t={t}");
            }
        }
    }

    #[test]
    fn threshold_must_leave_an_edge() {
        assert!(matches!(bounds(4, 3), Err(Error::ParameterOutOfRange(_))));
        assert!(matches!(bounds(8, 0), Err(Error::DegreeOutOfRange { .. })));
    }
}
