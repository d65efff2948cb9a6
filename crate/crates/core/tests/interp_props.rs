mod common;

use common::{system, y};
use multifiber::dims::{dim_report, fiber_multiplicity_bound, FiberIndex};
use multifiber::interp::{
    build_matrix, dim_oracle, fiber_multiplicity_exact_r2, monomial_basis_two_points, sample_points, InterpConfig,
    PrimeField,
};
use multifiber::Error;
use proptest::prelude::*;

fn cfg() -> InterpConfig {
    InterpConfig::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn oracle_dominates_expected_count(c in system(2..=3, 0..=5, 4, 5)) {
        let rep = dim_oracle(&c, &cfg()).unwrap();
        let dims = dim_report(&c).unwrap();
        prop_assert!(rep.dim_affine >= dims.expected_count());
        prop_assert_eq!(rep.dim_affine + rep.rank as i64, rep.cols as i64);
        prop_assert!(rep.trials_run >= 1 && rep.trials_run <= rep.trials_requested);
    }

    #[test]
    fn oracle_is_deterministic(c in system(2..=3, 0..=4, 3, 4), seed in 0u64..1000) {
        let cfg = InterpConfig { seed, ..cfg() };
        prop_assert_eq!(dim_oracle(&c, &cfg).unwrap(), dim_oracle(&c, &cfg).unwrap());
    }

    #[test]
    fn more_degree_or_fewer_conditions_never_lose_sections(c in system(2..=3, 1..=4, 3, 4), i in 0usize..3) {
        let base = dim_oracle(&c, &cfg()).unwrap().dim_affine;
        let mut d = c.d().to_vec();
        let i = i % d.len();
        d[i] += 1;
        prop_assert!(dim_oracle(&y(&d, c.m()), &cfg()).unwrap().dim_affine >= base);
        let mut m = c.m().to_vec();
        m[0] += 1;
        prop_assert!(dim_oracle(&y(c.d(), &m), &cfg()).unwrap().dim_affine <= base);
    }

    #[test]
    fn two_point_triple_agreement(c in system(2..=4, 0..=2, 5, 10)) {
        let basis = monomial_basis_two_points(&c).unwrap().len() as i64;
        let fiber = dim_report(&c).unwrap().fiber_expected_count();
        let oracle = dim_oracle(&c, &cfg()).unwrap().dim_affine;
        prop_assert_eq!(basis, fiber);
        prop_assert_eq!(oracle, fiber);
    }

    #[test]
    fn fiber_multiplicity_attains_bound(c in system(2..=4, 1..=2, 4, 8), point in 0usize..2, mask in 1u32..15) {
        let n = c.n();
        let point = point % c.r();
        let coords: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        prop_assume!(!coords.is_empty() && coords.len() < n);
        let fiber = FiberIndex::new(point, coords);
        match fiber_multiplicity_exact_r2(&c, &fiber) {
            Ok(exact) => prop_assert_eq!(exact, fiber_multiplicity_bound(&c, &fiber).unwrap()),
            Err(Error::EmptySystem) => prop_assert_eq!(dim_report(&c).unwrap().fiber_expected_count(), 0),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}

#[test]
fn samples_are_prefix_stable_and_distinct() {
    let a = sample_points(3, 4, 101, 7, 0);
    let b = sample_points(3, 9, 101, 7, 0);
    assert_eq!(a[..], b[..4]);
    for (i, p) in b.iter().enumerate() {
        assert!(p.iter().all(|&x| (1..101).contains(&x)));
        assert!(!b[..i].contains(p));
    }
    assert_ne!(sample_points(3, 4, 101, 7, 1), a);
}

#[test]
fn rank_is_transpose_invariant() {
    let f = PrimeField::new(101).unwrap();
    let pts = sample_points(2, 3, 101, 3, 0);
    let m = build_matrix(&[3, 2], &[2, 2, 1], &pts, 101).unwrap();
    let (r, c) = m.shape();
    let mut t = multifiber::interp::Matrix::zeros(f, c, r);
    for i in 0..r {
        for j in 0..c {
            t.set(j, i, m.get(i, j));
        }
    }
    assert_eq!(m.rank(), t.rank());
}

#[test]
fn small_primes_are_rejected_when_too_small() {
    let c = y(&[5, 5], &[4]);
    let cfg = InterpConfig { prime: 7, ..cfg() };
    assert!(matches!(dim_oracle(&c, &cfg), Err(Error::InvalidPrime { .. })));
    let cfg = InterpConfig { prime: 15, ..InterpConfig::default() };
    assert!(matches!(dim_oracle(&c, &cfg), Err(Error::InvalidPrime { .. })));
}

#[test]
fn duplicate_points_are_rejected() {
    let pts = vec![vec![1, 2], vec![1, 2]];
    assert!(matches!(build_matrix(&[2, 2], &[1, 1], &pts, 101), Err(Error::InvalidPoints(_))));
}
