#![allow(dead_code)]

use multifiber::DivisorClassY;
use proptest::prelude::*;
use rand::Rng;

pub fn y(d: &[i64], m: &[i64]) -> DivisorClassY {
    DivisorClassY::new(d.to_vec(), m.to_vec()).unwrap()
}

/// Binomial coefficients from Pascal's rule, independent of the library.
pub struct Pascal(Vec<Vec<u128>>);

impl Pascal {
    pub fn new(max: usize) -> Self {
        let mut rows = vec![vec![1u128]];
        for a in 1..=max {
            let prev = &rows[a - 1];
            let mut row = vec![1u128; a + 1];
            for k in 1..a {
                row[k] = prev[k - 1] + prev[k];
            }
            rows.push(row);
        }
        Self(rows)
    }

    pub fn get(&self, a: i64, k: i64) -> u128 {
        if a < 0 || k < 0 || k > a {
            return 0;
        }
        self.0[a as usize][k as usize]
    }
}

/// Arbitrary lattice class with small entries of either sign.
pub fn lattice_class(
    n: std::ops::RangeInclusive<usize>,
    r: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = DivisorClassY> {
    (n, r).prop_flat_map(|(n, r)| {
        (prop::collection::vec(-20i64..=20, n), prop::collection::vec(-20i64..=20, r))
            .prop_map(|(d, m)| DivisorClassY::new(d, m).unwrap())
    })
}

/// Effective-looking input system: non-negative entries.
pub fn system(
    n: std::ops::RangeInclusive<usize>,
    r: std::ops::RangeInclusive<usize>,
    dmax: i64,
    mmax: i64,
) -> impl Strategy<Value = DivisorClassY> {
    (n, r).prop_flat_map(move |(n, r)| {
        (prop::collection::vec(0..=dmax, n), prop::collection::vec(0..=mmax, r))
            .prop_map(|(d, m)| DivisorClassY::new(d, m).unwrap())
    })
}

/// Random system with `2 <= n <= nmax`, `r` in the given range, `d_i <= dmax`, `m_i <= mmax`.
pub fn random_system(
    rng: &mut impl Rng,
    nmax: usize,
    r: std::ops::RangeInclusive<usize>,
    dmax: i64,
    mmax: i64,
) -> DivisorClassY {
    let n = rng.gen_range(2..=nmax);
    let r = rng.gen_range(r);
    let d = (0..n).map(|_| rng.gen_range(0..=dmax)).collect();
    let m = (0..r).map(|_| rng.gen_range(0..=mmax)).collect();
    DivisorClassY::new(d, m).unwrap()
}
