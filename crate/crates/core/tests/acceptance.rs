//! Desk-scale acceptance checks, all exact. Each criterion prints one
//! PASS/FAIL line; the test fails if any criterion does.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use permekr::chartab::CharacterTable;
use permekr::ekrverify::{
    basis_check, clique_character_check, depth_conjecture_dims, lemma_reports, module_support,
    pi_ab, pi_ab_submatrix, support_partitions, IncidenceH,
};
use permekr::graphs::{
    affine_clique, cycle_decomposition_clique, latin_clique, max_independent_sets,
    odd_n_latin_clique, Family,
};
use permekr::linalg::RationalVector;
use permekr::permgroup::{conjugacy_classes, derangement_count, CycleType, IntegerPartition};
use permekr::scheme::{least_eigenvalue, union_spectrum, ConjugacyScheme};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn d(n: usize) -> BigInt {
    BigInt::from(derangement_count(n))
}

fn criterion_1() -> Outcome {
    for n in 1..=9usize {
        let rec = derangement_count(n);
        if n <= 8 {
            let brute = common::brute_derangements(n);
            ensure(rec == BigUint::from(brute), || format!("d({n}) = {rec}, brute force {brute}"))?;
        }
        let class_sum: BigUint = conjugacy_classes(n)
            .into_iter()
            .filter(|c| c.cycle_type.fixed_points() == 0)
            .map(|c| c.size)
            .sum();
        ensure(rec == class_sum, || format!("d({n}) = {rec}, class sum {class_sum}"))?;
    }
    ensure(derangement_count(2) == BigUint::from(1u32), || "d(2) != 1".into())?;
    Ok("d(1..9) = recursion = brute force = class sums".into())
}

fn criterion_2() -> Outcome {
    for n in 1..=8 {
        let t = CharacterTable::new(n).map_err(e)?;
        ensure(t.check_row_orthogonality(), || format!("row orthogonality fails at n={n}"))?;
        ensure(t.check_column_orthogonality(), || format!("column orthogonality fails at n={n}"))?;
        if n >= 2 {
            let row = t.row_of(&IntegerPartition::standard(n)).expect("standard");
            for (c, class) in t.classes().iter().enumerate() {
                let fix = class.cycle_type.fixed_points() as i64;
                ensure(t.value(row, c) == &BigInt::from(fix - 1), || {
                    format!("standard character at n={n}, class {}", class.cycle_type.partition())
                })?;
            }
        }
    }
    for n in [4, 5] {
        let t = CharacterTable::new(n).map_err(e)?;
        let oracle = common::character_table_by_modules(n);
        for ((shape, ty), v) in &oracle {
            let lambda = IntegerPartition::new(shape.clone()).map_err(e)?;
            let mu = CycleType::new(IntegerPartition::new(ty.clone()).map_err(e)?);
            let got = t.character(&lambda, &mu).ok_or("missing table entry")?;
            ensure(got == &BigInt::from(*v), || format!("χ_{lambda}({mu:?}) = {got}, oracle {v}"))?;
        }
    }
    Ok("orthogonality n ≤ 8, standard character = fix − 1, n = 4, 5 match module oracle".into())
}

fn multiset(n: usize, t: usize) -> Result<BTreeMap<BigRational, BigUint>, String> {
    let mut out = BTreeMap::new();
    for entry in union_spectrum(n, t).map_err(e)?.entries {
        *out.entry(entry.eigenvalue).or_insert_with(BigUint::default) += entry.multiplicity;
    }
    Ok(out)
}

fn frozen(pairs: &[(i64, u64)]) -> BTreeMap<BigRational, BigUint> {
    pairs
        .iter()
        .map(|&(v, m)| (BigRational::from_integer(v.into()), BigUint::from(m)))
        .collect()
}

fn criterion_3() -> Outcome {
    for n in 2..=9 {
        let spec = union_spectrum(n, 0).map_err(e)?;
        let trivial = spec.eigenvalue(&IntegerPartition::trivial(n)).ok_or("no [n]")?;
        ensure(trivial == &BigRational::from_integer(d(n)), || format!("[n] eigenvalue at n={n}"))?;
        let standard = spec.eigenvalue(&IntegerPartition::standard(n)).ok_or("no [n-1,1]")?;
        ensure(
            standard == &BigRational::new(-d(n), BigInt::from(n - 1)),
            || format!("[n-1,1] eigenvalue at n={n}: {standard}"),
        )?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in 2..=6 {
        let scheme = ConjugacyScheme::new(n).map_err(e)?;
        let z = RationalVector::from_integers((0..scheme.group_size()).map(|_| rng.gen_range(-4i64..=4)));
        ensure(scheme.eigenvector_identity(&z, 0).map_err(e)?, || {
            format!("A·E_λz ≠ p_λ·E_λz at n={n}")
        })?;
    }
    for (n, t, pairs) in [
        (3, 0, common::SPECTRUM_P3),
        (4, 0, common::SPECTRUM_P4),
        (5, 0, common::SPECTRUM_P5),
        (5, 1, common::SPECTRUM_P1_5),
    ] {
        ensure(multiset(n, t)? == frozen(pairs), || format!("spectrum of P_{t}({n}) differs from oracle"))?;
    }
    Ok("[n] → d(n), [n-1,1] → −d(n)/(n−1) for n ≤ 9; eigenvector identity n ≤ 6; frozen spectra".into())
}

fn criterion_4() -> Outcome {
    for n in 2..=8 {
        let (least, _) = least_eigenvalue(n, 0).map_err(e)?;
        ensure(least == BigRational::new(-d(n), BigInt::from(n - 1)), || {
            format!("least eigenvalue at n={n} is {least}")
        })?;
    }
    Ok("least eigenvalue of P(n) is −d(n)/(n−1) for 2 ≤ n ≤ 8".into())
}

fn criterion_5() -> Outcome {
    for n in 1..=8 {
        let c = latin_clique(n).map_err(e)?;
        ensure(c.len() == n && c.validated && c.revalidate().is_ok(), || format!("latin clique n={n}"))?;
    }
    for n in 3..=5 {
        let r = max_independent_sets(n, 0, 1).map_err(e)?;
        let fact = (1..n).product::<usize>();
        ensure(r.alpha == fact && r.tight, || format!("alpha({n}) = {}", r.alpha))?;
        ensure(r.sets.len() == n * n, || format!("{} maximum sets at n={n}", r.sets.len()))?;
        let families: Vec<Family> = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .map(|(i, j)| Family::point(n, i, j))
            .collect::<Result<_, _>>()
            .map_err(e)?;
        let scheme = ConjugacyScheme::new(n).map_err(e)?;
        let clique = latin_clique(n).map_err(e)?;
        for set in &r.sets {
            let canonical = families.iter().any(|f| {
                f.members.len() == set.len() && set.iter().all(|p| f.contains(p))
            });
            ensure(canonical, || format!("non-canonical maximum set at n={n}"))?;
            let report = scheme.clique_coclique_check(&clique.members, set, 0).map_err(e)?;
            ensure(report.tight && report.disjoint_supports == Some(true), || {
                format!("tight supports overlap at n={n}")
            })?;
        }
    }
    Ok("ω = n for n ≤ 8; α = (n−1)!, n² maximum sets, all S_{i,j}, disjoint supports for n ≤ 5".into())
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in [4, 5] {
        let scheme = ConjugacyScheme::new(n).map_err(e)?;
        let size = scheme.group_size();
        for _ in 0..20 {
            let x = RationalVector::from_integers((0..size).map(|_| rng.gen_range(0i64..=1)));
            let y = RationalVector::from_integers((0..size).map(|_| rng.gen_range(0i64..=1)));
            let (lhs, rhs) = scheme.fundamental_identity(&x, &y).map_err(e)?;
            ensure(lhs == rhs, || format!("identity fails at n={n}: {lhs} vs {rhs}"))?;
        }
        let clique = latin_clique(n).map_err(e)?;
        let fam = Family::point(n, 1, 1).map_err(e)?;
        let x = scheme.characteristic_vector(&clique.members).map_err(e)?;
        let y = scheme.characteristic_vector(&fam.members).map_err(e)?;
        let (lhs, rhs) = scheme.fundamental_identity(&x, &y).map_err(e)?;
        ensure(lhs == rhs, || format!("identity fails on clique vs S_1,1 at n={n}"))?;
    }
    Ok("20 random 0/1 pairs at n = 4, 5 and clique vs S_{1,1}".into())
}

fn criterion_7() -> Outcome {
    for n in [7, 8] {
        let c = cycle_decomposition_clique(n).map_err(e)?;
        ensure(c.len() == n && c.revalidate().is_ok(), || format!("cycle clique n={n}"))?;
    }
    for n in [7, 9] {
        let c = odd_n_latin_clique(n).map_err(e)?;
        ensure(c.len() == n && c.revalidate().is_ok(), || format!("odd latin clique n={n}"))?;
    }
    for n in [7, 8, 9] {
        let r = clique_character_check(n).map_err(e)?;
        ensure(r.pass(), || format!("n={n}: uncovered {:?}, formula {:?}", r.uncovered, r.cycle_formula_holds))?;
    }
    Ok("cliques validate; every λ ≠ [n−1,1] has a clique with χ_λ(C) ≠ 0 at n = 7, 8, 9".into())
}

fn criterion_8() -> Outcome {
    for n in 3..=7 {
        for r in lemma_reports(n).map_err(e)? {
            if matches!(r.lemma.as_str(), "module-support" | "basis") {
                continue;
            }
            ensure(r.pass, || format!("{} fails at n={n}: {}", r.lemma, r.details))?;
        }
    }
    let h = IncidenceH::new(4).map_err(e)?;
    let sub = pi_ab_submatrix(&h).map_err(e)?;
    for (r, row) in common::PAIR_TABLE_N4.iter().enumerate() {
        for (c, &bit) in row.iter().enumerate() {
            ensure(sub[(r, c)] == BigRational::from_integer(bit.into()), || {
                format!("pair table differs at ({r},{c})")
            })?;
        }
    }
    let mut k = 0;
    for a in 1..=3 {
        for b in 1..=2 {
            let p = pi_ab(a, b, 4).map_err(e)?;
            ensure(p.to_cycle_string() == common::PAIR_CYCLES_N4[k], || {
                format!("π_{a},{b} = {}", p.to_cycle_string())
            })?;
            k += 1;
        }
    }
    Ok("Gram identity, rank H, rank M, K⊗I submatrix, kernels for 3 ≤ n ≤ 7; n = 4 table bit-exact".into())
}

fn criterion_9() -> Outcome {
    for n in 2..=6 {
        let scheme = ConjugacyScheme::new(n).map_err(e)?;
        let standard = IntegerPartition::standard(n);
        for i in 1..=n {
            for j in 1..=n {
                let fam = Family::point(n, i, j).map_err(e)?;
                let support = support_partitions(&module_support(&scheme, &fam.members).map_err(e)?);
                ensure(support == [standard.clone()], || format!("S_{i},{j} at n={n}: {support:?}"))?;
            }
        }
        if n >= 3 {
            let b = basis_check(&scheme).map_err(e)?;
            ensure(b.pass(), || format!("basis check at n={n}: {b:?}"))?;
        }
    }
    Ok("every S_{i,j} lies in the [n−1,1] module and the shifted columns form its basis, n ≤ 6".into())
}

fn criterion_10() -> Outcome {
    let mut lines = Vec::new();
    for n in [4, 5, 6] {
        let scheme = ConjugacyScheme::new(n).map_err(e)?;
        let r = depth_conjecture_dims(&scheme, 1, 2).map_err(e)?;
        ensure(r.support_contained, || format!("support escapes depth 2 at n={n}"))?;
        if n == 4 {
            ensure(r.module_dim_sum == BigUint::from(23u32), || format!("module sum {}", r.module_dim_sum))?;
        }
        let narrow = depth_conjecture_dims(&scheme, 1, 1).map_err(e)?;
        lines.push(format!(
            "n={n}: depth≤2 sum={} shifted={} with-ones={} (agree: {}/{}); depth≤1 sum={} contained={}",
            r.module_dim_sum,
            r.span_rank_shifted.rank,
            r.span_rank_with_ones.rank,
            r.agrees_shifted,
            r.agrees_with_ones,
            narrow.module_dim_sum,
            narrow.support_contained,
        ));
    }
    let scheme = ConjugacyScheme::new(5).map_err(e)?;
    let clique = affine_clique(5).map_err(e)?;
    let fam = Family::new(5, &[(1, 1), (2, 2)]).map_err(e)?;
    let report = scheme.clique_coclique_check(&clique.members, &fam.members, 1).map_err(e)?;
    ensure(report.product == BigUint::from(120u32) && report.tight, || {
        format!("affine product {}", report.product)
    })?;
    ensure(report.disjoint_supports == Some(true), || "affine supports overlap".into())?;
    for l in &lines {
        println!("      {l}");
    }
    Ok("depth-2 support containment n = 4, 5, 6; affine P_1(5) product 120".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome, Duration); 10] = [
        ("derangement counts", criterion_1, Duration::from_secs(10)),
        ("character tables", criterion_2, Duration::from_secs(30)),
        ("spectrum", criterion_3, Duration::from_secs(120)),
        ("least eigenvalue", criterion_4, Duration::from_secs(60)),
        ("clique-coclique", criterion_5, Duration::from_secs(300)),
        ("fundamental identity", criterion_6, Duration::from_secs(60)),
        ("clique characters", criterion_7, Duration::from_secs(120)),
        ("incidence linear algebra", criterion_8, Duration::from_secs(300)),
        ("module membership", criterion_9, Duration::from_secs(300)),
        ("depth dimensions", criterion_10, Duration::from_secs(600)),
    ];
    let mut failed = Vec::new();
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > *limit => Err(format!("{msg}; took {elapsed:?}, limit {limit:?}")),
            other => other,
        };
        match &outcome {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} [{elapsed:.2?}]", i + 1),
            Err(msg) => {
                println!("criterion {:>2} FAIL  {name}: {msg} [{elapsed:.2?}]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
