//! Picard lattices of the blow-ups `Y` of `(P^1)^n` and `X` of `P^n`.
//!
//! On `Y` the tautological basis is `H_1, ..., H_n, E_1, ..., E_r` with
//! `H_i . H_j = 1 - delta_ij`, `E_k . E_s = -delta_ks` and `H_i . E_k = 0`.
//! On `X` the basis is `H, E_1, ..., E_s` with `H^2 = n - 1`; this is the
//! unique form for which the push-forward along the correspondence in
//! [`crate::weyl::phi_push`] is an isometry.
//!
//! A class is stored as `sum d_i H_i - sum m_j E_j`, i.e. the `m` vector holds
//! the multiplicities that are *subtracted*. Lattice-internal classes may have
//! negative entries in either vector.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

fn narrow(x: i128, what: &'static str) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow(what))
}

/// A class `sum d_i H_i - sum m_j E_j` on the blow-up of `(P^1)^n` at `r` points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorClassY {
    d: Vec<i64>,
    m: Vec<i64>,
}

impl DivisorClassY {
    pub fn new(d: Vec<i64>, m: Vec<i64>) -> Result<Self> {
        if d.len() < 2 {
            return Err(Error::TooFewFactors(d.len()));
        }
        Ok(Self { d, m })
    }

    pub fn zero(n: usize, r: usize) -> Result<Self> {
        Self::new(vec![0; n], vec![0; r])
    }

    /// The class `H_i` (0-based `i`).
    pub fn h(n: usize, r: usize, i: usize) -> Result<Self> {
        let mut c = Self::zero(n, r)?;
        *c.d.get_mut(i).ok_or(Error::IndexOutOfRange { index: i, limit: n })? = 1;
        Ok(c)
    }

    /// The class `E_j` (0-based `j`), stored with `m_j = -1`.
    pub fn e(n: usize, r: usize, j: usize) -> Result<Self> {
        let mut c = Self::zero(n, r)?;
        *c.m.get_mut(j).ok_or(Error::IndexOutOfRange { index: j, limit: r })? = -1;
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }

    pub fn r(&self) -> usize {
        self.m.len()
    }

    pub fn d(&self) -> &[i64] {
        &self.d
    }

    pub fn m(&self) -> &[i64] {
        &self.m
    }

    pub fn into_parts(self) -> (Vec<i64>, Vec<i64>) {
        (self.d, self.m)
    }

    pub(crate) fn d_mut(&mut self) -> &mut Vec<i64> {
        &mut self.d
    }

    pub(crate) fn m_mut(&mut self) -> &mut Vec<i64> {
        &mut self.m
    }

    /// Multiplicities with negative entries replaced by zero.
    pub fn clamped_m(&self) -> Vec<i64> {
        self.m.iter().map(|&x| x.max(0)).collect()
    }

    pub fn degree_sum(&self) -> i64 {
        self.d.iter().sum()
    }

    /// A copy with both vectors sorted non-increasing.
    pub fn sorted(&self) -> Self {
        let mut c = self.clone();
        c.d.sort_by(|a, b| b.cmp(a));
        c.m.sort_by(|a, b| b.cmp(a));
        c
    }

    pub(crate) fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() || self.r() != other.r() {
            return Err(Error::ShapeMismatch { n1: self.n(), r1: self.r(), n2: other.n(), r2: other.r() });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let add = |a: &[i64], b: &[i64]| -> Result<Vec<i64>> {
            a.iter().zip(b).map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow("class sum"))).collect()
        };
        Ok(Self { d: add(&self.d, &other.d)?, m: add(&self.m, &other.m)? })
    }

    pub fn checked_scale(&self, k: i64) -> Result<Self> {
        let scale = |a: &[i64]| -> Result<Vec<i64>> {
            a.iter().map(|x| x.checked_mul(k).ok_or(Error::Overflow("class scaling"))).collect()
        };
        Ok(Self { d: scale(&self.d)?, m: scale(&self.m)? })
    }
}

/// Intersection pairing on `Pic(Y)`:
/// `sum_{i != j} a_i b_j - sum_k a.m_k b.m_k`.
pub fn pair_y(a: &DivisorClassY, b: &DivisorClassY) -> Result<i64> {
    a.check_same_shape(b)?;
    let sa: i128 = a.d.iter().map(|&x| x as i128).sum();
    let sb: i128 = b.d.iter().map(|&x| x as i128).sum();
    let diag: i128 = a.d.iter().zip(&b.d).map(|(&x, &y)| x as i128 * y as i128).sum();
    let exc: i128 = a.m.iter().zip(&b.m).map(|(&x, &y)| x as i128 * y as i128).sum();
    let total = sa
        .checked_mul(sb)
        .and_then(|p| p.checked_sub(diag))
        .and_then(|p| p.checked_sub(exc))
        .ok_or(Error::Overflow("pair_y"))?;
    narrow(total, "pair_y")
}

/// The canonical class `K_Y = -2 sum H_i + (n-1) sum E_j`.
pub fn canonical_y(n: usize, r: usize) -> Result<DivisorClassY> {
    if n < 2 {
        return Err(Error::TooFewFactors(n));
    }
    let c = -((n as i64) - 1);
    DivisorClassY::new(vec![-2; n], vec![c; r])
}

/// Numerical `(-1)`-class test: `D^2 = -1` and `D . K_Y = -(n-1)`.
///
/// Irreducibility and reducedness are not visible on the lattice and are not
/// checked.
pub fn is_minus_one_class(d: &DivisorClassY) -> bool {
    let Ok(k) = canonical_y(d.n(), d.r()) else { return false };
    let n1 = d.n() as i64 - 1;
    matches!((pair_y(d, d), pair_y(d, &k)), (Ok(-1), Ok(dk)) if dk == -n1)
}

/// A class of self-intersection `-2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Root(DivisorClassY);

impl Root {
    pub fn new(class: DivisorClassY) -> Result<Self> {
        match pair_y(&class, &class)? {
            -2 => Ok(Self(class)),
            other => Err(Error::NotARoot(other)),
        }
    }

    pub fn class(&self) -> &DivisorClassY {
        &self.0
    }
}

/// Picard-Lefschetz reflection `D -> D + (D.R) R`.
pub fn reflect(d: &DivisorClassY, root: &Root) -> Result<DivisorClassY> {
    let k = pair_y(d, &root.0)?;
    d.checked_add(&root.0.checked_scale(k)?)
}

/// The generators `H_1 - E_1 - E_2`, `H_i - H_{i+1}` and `E_j - E_{j+1}` of
/// the Weyl group of `Y`.
pub fn weyl_generators(n: usize, r: usize) -> Result<Vec<Root>> {
    if n < 2 {
        return Err(Error::TooFewFactors(n));
    }
    if r < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: r });
    }
    let mut out = Vec::with_capacity(n + r - 1);
    let mut first = DivisorClassY::zero(n, r)?;
    first.d[0] = 1;
    first.m[0] = 1;
    first.m[1] = 1;
    out.push(Root::new(first)?);
    for i in 0..n - 1 {
        let mut c = DivisorClassY::zero(n, r)?;
        c.d[i] = 1;
        c.d[i + 1] = -1;
        out.push(Root::new(c)?);
    }
    for j in 0..r - 1 {
        // E_j - E_{j+1} in the subtracted-multiplicity convention.
        let mut c = DivisorClassY::zero(n, r)?;
        c.m[j] = -1;
        c.m[j + 1] = 1;
        out.push(Root::new(c)?);
    }
    Ok(out)
}

/// A class `d0 H - sum m_j E_j` on the blow-up of `P^n` at `s` points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorClassX {
    n: usize,
    d0: i64,
    m: Vec<i64>,
}

impl DivisorClassX {
    pub fn new(n: usize, d0: i64, m: Vec<i64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewFactors(n));
        }
        Ok(Self { n, d0, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.m.len()
    }

    pub fn d0(&self) -> i64 {
        self.d0
    }

    pub fn m(&self) -> &[i64] {
        &self.m
    }
}

/// Intersection pairing on `Pic(X)`: `(n-1) d0 d0' - sum m_k m'_k`.
pub fn pair_x(a: &DivisorClassX, b: &DivisorClassX) -> Result<i64> {
    if a.n != b.n || a.s() != b.s() {
        return Err(Error::ShapeMismatch { n1: a.n, r1: a.s(), n2: b.n, r2: b.s() });
    }
    let h = (a.n as i128 - 1) * a.d0 as i128 * b.d0 as i128;
    let exc: i128 = a.m.iter().zip(&b.m).map(|(&x, &y)| x as i128 * y as i128).sum();
    narrow(h - exc, "pair_x")
}
