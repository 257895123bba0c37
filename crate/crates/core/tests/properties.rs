use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use permekr::graphs::{
    affine_clique, complete_latin_rectangle, is_latin_rectangle, latin_clique, validate_family,
    Family, SUPPORTED_ORDERS,
};
use permekr::linalg::{RationalMatrix, RationalVector};
use permekr::permgroup::{factorial, Permutation};
use permekr::scheme::{union_spectrum, ConjugacyScheme};

fn small_vector(len: usize) -> impl Strategy<Value = RationalVector> {
    prop::collection::vec(-3i64..=3, len).prop_map(RationalVector::from_integers)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fundamental_identity_n4(x in small_vector(24), y in small_vector(24)) {
        let s = ConjugacyScheme::new(4).unwrap();
        let (lhs, rhs) = s.fundamental_identity(&x, &y).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn projections_sum_to_input(x in small_vector(24)) {
        let s = ConjugacyScheme::new(4).unwrap();
        let total = s
            .project_all(&x)
            .unwrap()
            .iter()
            .fold(RationalVector::zeros(24), |acc, p| acc.add(&p.vector()));
        prop_assert_eq!(total, x);
    }

    #[test]
    fn families_have_factorial_size(seed in 0u64..10_000, k in 1usize..4) {
        let n = 5;
        // Distinct points 1..=k, images a rotation of 1..=n.
        let shift = (seed % n as u64) as usize;
        let constraints: Vec<(usize, usize)> = (1..=k).map(|x| (x, (x - 1 + shift) % n + 1)).collect();
        let fam = Family::new(n, &constraints).unwrap();
        prop_assert_eq!(BigUint::from(fam.len()), factorial(n - k));
        prop_assert!(validate_family(&fam.members, k - 1).valid);
        prop_assert!(fam.members.iter().all(|p| fam.contains(p)));
    }

    #[test]
    fn latin_rectangles_complete(n in 3usize..9, k in 1usize..4, shuffle in prop::collection::vec(any::<u32>(), 9)) {
        let k = k.min(n - 1);
        // Rows of the cyclic square with symbols relabelled.
        let mut symbols: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            symbols.swap(i, shuffle[i] as usize % (i + 1));
        }
        let rows: Vec<Vec<usize>> = (0..k)
            .map(|r| (0..n).map(|c| symbols[(r + c) % n]).collect())
            .collect();
        let square = complete_latin_rectangle(&rows, n).unwrap();
        prop_assert!(is_latin_rectangle(&square, n));
        prop_assert_eq!(&square[..k], &rows[..]);
    }

    #[test]
    fn rank_ignores_column_order(cols in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
        let m = RationalMatrix::from_integer_fn(5, 6, |r, c| ((r * 7 + c * 3) % 5) as i64 - 2);
        prop_assert_eq!(m.select_columns(&cols).rank(), m.rank());
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }
}

#[test]
fn spectral_moments() {
    // Σ m·θ = trace A = 0 and Σ m·θ² = trace A² = n!·valency.
    for n in 2..=8 {
        for t in 0..n - 1 {
            let spec = union_spectrum(n, t).unwrap();
            let first: BigRational = spec
                .entries
                .iter()
                .map(|e| &e.eigenvalue * BigRational::from_integer(BigInt::from(e.multiplicity.clone())))
                .sum();
            let second: BigRational = spec
                .entries
                .iter()
                .map(|e| &e.eigenvalue * &e.eigenvalue * BigRational::from_integer(BigInt::from(e.multiplicity.clone())))
                .sum();
            assert!(first.is_zero(), "n={n} t={t}");
            assert_eq!(
                second,
                BigRational::from_integer(BigInt::from(factorial(n) * &spec.valency)),
                "n={n} t={t}"
            );
        }
    }
}

#[test]
fn certificates_revalidate() {
    for n in 1..=8 {
        assert!(latin_clique(n).unwrap().revalidate().is_ok());
    }
    for q in SUPPORTED_ORDERS {
        let c = affine_clique(q).unwrap();
        assert!(c.revalidate().is_ok());
        assert_eq!(c.len(), q * (q - 1));
    }
}

#[test]
fn translation_preserves_point_families() {
    let n = 5;
    let fam = Family::point(n, 2, 4).unwrap();
    for g in permekr::permgroup::all_permutations(n).iter().step_by(7) {
        let moved: Vec<Permutation> = fam.members.iter().map(|p| g.compose(p).unwrap()).collect();
        let j = g.apply(4);
        let target = Family::point(n, 2, j).unwrap();
        assert!(moved.iter().all(|p| target.contains(p)));
    }
}
