//! Closed-form counts: virtual, expected and fiber dimensions.
//!
//! For a system `L = L_(d)(m)` on `(P^1)^n`, with `s_I = sum_{i in I} d_i` and
//! `S_I = 1 + |I| + s_I` for `I` a subset of `{1..n}`:
//!
//! ```text
//! vcount = prod (d_i + 1) - sum_j C(n + m_j - 1, n)
//! fcount = prod (d_i + 1) + sum_{j, I : m_j >= S_I} (-1)^(|I|+1) C(m_j - S_I + n, n)
//! ```
//!
//! The `I = {}` terms of `fcount` are exactly the point terms of `vcount`.
//! The `*dim` quantities are projective (`count - 1`).

use serde::{Deserialize, Serialize};

use crate::lattice::DivisorClassY;
use crate::{Error, Result};

/// Binomial coefficient `C(a, k)`, zero when `a < k` or `k < 0`.
pub fn binom(a: i64, k: i64) -> Result<i128> {
    if k < 0 || a < k {
        return Ok(0);
    }
    let k = k.min(a - k);
    let mut acc: i128 = 1;
    for i in 1..=k as i128 {
        // acc * (a - k + i) is always divisible by i here.
        acc = acc.checked_mul(a as i128 - k as i128 + i).ok_or(Error::Overflow("binomial"))? / i;
    }
    Ok(acc)
}

fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow("dimension count"))
}

fn check_degrees(d: &DivisorClassY) -> Result<()> {
    if d.d().iter().any(|&x| x < 0) {
        return Err(Error::NegativeDegree(d.d().to_vec()));
    }
    Ok(())
}

fn box_count(d: &[i64]) -> Result<i128> {
    d.iter().try_fold(1i128, |acc, &x| acc.checked_mul(x as i128 + 1).ok_or(Error::Overflow("monomial count")))
}

/// Counting report for one system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimReport {
    pub vcount: i64,
    pub vdim: i64,
    pub edim: i64,
    pub fcount: i64,
    pub fdim: i64,
    pub efdim: i64,
}

impl DimReport {
    /// `max(vcount, 0)`: the expected number of independent sections.
    pub fn expected_count(&self) -> i64 {
        self.edim + 1
    }

    /// `max(fcount, 0)`.
    pub fn fiber_expected_count(&self) -> i64 {
        self.efdim + 1
    }
}

pub fn vcount(class: &DivisorClassY) -> Result<i64> {
    check_degrees(class)?;
    let n = class.n() as i64;
    let mut total = box_count(class.d())?;
    for m in class.clamped_m() {
        total -= binom(n + m - 1, n)?;
    }
    narrow(total)
}

pub fn fcount(class: &DivisorClassY) -> Result<i64> {
    check_degrees(class)?;
    let n = class.n();
    let ni = n as i64;
    if n >= 64 {
        return Err(Error::Overflow("fiber subset enumeration"));
    }
    let ms = class.clamped_m();
    let mut total = box_count(class.d())?;
    for mask in 0u64..(1u64 << n) {
        let size = mask.count_ones() as i64;
        let s: i64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| class.d()[i]).sum();
        let big_s = 1 + size + s;
        let sign: i128 = if size % 2 == 1 { 1 } else { -1 };
        for &m in &ms {
            if m >= big_s {
                total += sign * binom(m - big_s + ni, ni)?;
            }
        }
    }
    narrow(total)
}

pub fn dim_report(class: &DivisorClassY) -> Result<DimReport> {
    let vcount = vcount(class)?;
    let fcount = fcount(class)?;
    Ok(DimReport {
        vcount,
        vdim: vcount - 1,
        edim: (vcount - 1).max(-1),
        fcount,
        fdim: fcount - 1,
        efdim: (fcount - 1).max(-1),
    })
}

/// For at most two points: the system is non-empty iff
/// `d_1 + ... + d_n >= m_1 + m_2`.
pub fn effective_two_points(class: &DivisorClassY) -> Result<bool> {
    if class.r() > 2 {
        return Err(Error::TooManyPoints { max: 2, got: class.r() });
    }
    let m = class.m();
    let m1 = m.first().copied().unwrap_or(0);
    let m2 = m.get(1).copied().unwrap_or(0);
    Ok(class.degree_sum() >= m1 + m2)
}

/// The fiber `F_{j,I}` of the projection to the coordinates in `I` through
/// the point `q_j`. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiberIndex {
    pub point: usize,
    pub coords: Vec<usize>,
}

impl FiberIndex {
    pub fn new(point: usize, coords: Vec<usize>) -> Self {
        Self { point, coords }
    }

    /// Validates against a system and returns the coordinate bitmask of `I`.
    pub(crate) fn mask_for(&self, class: &DivisorClassY) -> Result<u64> {
        let n = class.n();
        if self.point >= class.r() {
            return Err(Error::IndexOutOfRange { index: self.point, limit: class.r() });
        }
        let invalid = |reason| Error::InvalidFiber { coords: self.coords.clone(), n, reason };
        let mut mask = 0u64;
        for &c in &self.coords {
            if c >= n {
                return Err(invalid("coordinate out of range"));
            }
            if mask >> c & 1 == 1 {
                return Err(invalid("repeated coordinate"));
            }
            mask |= 1 << c;
        }
        if mask == 0 || mask.count_ones() as usize == n {
            return Err(invalid("subset must be proper and nonempty"));
        }
        Ok(mask)
    }
}

/// Lower bound `max(m_j - s_{I^c}, 0)` for the multiplicity of the fiber
/// `F_{j,I}` in the base locus; it is attained when `r <= 2`.
pub fn fiber_multiplicity_bound(class: &DivisorClassY, fiber: &FiberIndex) -> Result<i64> {
    let mask = fiber.mask_for(class)?;
    let complement: i64 = (0..class.n()).filter(|i| mask >> i & 1 == 0).map(|i| class.d()[i]).sum();
    Ok((class.m()[fiber.point] - complement).max(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(d: &[i64], m: &[i64]) -> DivisorClassY {
        DivisorClassY::new(d.to_vec(), m.to_vec()).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2).unwrap(), 10);
        assert_eq!(binom(2, 3).unwrap(), 0);
        assert_eq!(binom(-1, 2).unwrap(), 0);
        assert_eq!(binom(7, 0).unwrap(), 1);
        assert_eq!(binom(60, 30).unwrap(), 118264581564861424);
    }

    #[test]
    fn worked_counts() {
        let r = dim_report(&y(&[13, 9, 5], &[11, 11, 7, 7, 3, 3])).unwrap();
        assert_eq!((r.vcount, r.fcount), (80, 154));
        let r = dim_report(&y(&[1; 7], &[3, 3, 3])).unwrap();
        assert_eq!((r.vcount, r.fcount), (20, 41));
        let r = dim_report(&y(&[5, 5, 5], &[3; 6])).unwrap();
        assert_eq!((r.vcount, r.fcount), (156, 156));
    }

    #[test]
    fn projective_fields() {
        let r = dim_report(&y(&[1, 1], &[2, 2])).unwrap();
        assert_eq!(r.vcount, -2);
        assert_eq!(r.vdim, -3);
        assert_eq!(r.edim, -1);
        assert_eq!(r.expected_count(), 0);
    }

    #[test]
    fn negative_multiplicities_are_clamped() {
        assert_eq!(vcount(&y(&[2, 2], &[3, -4])).unwrap(), vcount(&y(&[2, 2], &[3, 0])).unwrap());
    }

    #[test]
    fn negative_degrees_rejected() {
        assert!(matches!(dim_report(&y(&[-1, 2], &[])), Err(Error::NegativeDegree(_))));
    }

    #[test]
    fn effectivity() {
        assert!(effective_two_points(&y(&[1, 1], &[1, 1])).unwrap());
        assert!(!effective_two_points(&y(&[1, 1], &[2, 1])).unwrap());
        assert!(effective_two_points(&y(&[13, 9, 5], &[11, 11])).unwrap());
        assert!(effective_two_points(&y(&[1, 1], &[1, 1, 1])).is_err());
    }

    #[test]
    fn fiber_bounds() {
        let b = |d: &[i64], m: &[i64], j, i: Vec<usize>| {
            fiber_multiplicity_bound(&y(d, m), &FiberIndex::new(j, i)).unwrap()
        };
        assert_eq!(b(&[2, 2], &[3, 1], 0, vec![0]), 1);
        assert_eq!(b(&[2, 2], &[1, 1], 0, vec![0]), 0);
        assert_eq!(b(&[1; 7], &[3, 3, 3], 0, vec![0, 1, 2, 3, 4, 5]), 2);
    }

    #[test]
    fn fiber_validation() {
        let c = y(&[2, 2], &[3]);
        for f in [
            FiberIndex::new(1, vec![0]),
            FiberIndex::new(0, vec![]),
            FiberIndex::new(0, vec![0, 1]),
            FiberIndex::new(0, vec![2]),
            FiberIndex::new(0, vec![0, 0]),
        ] {
            assert!(fiber_multiplicity_bound(&c, &f).is_err(), "{f:?}");
        }
    }
}
