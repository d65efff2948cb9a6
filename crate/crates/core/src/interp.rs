//! Interpolation oracle over a prime field.
//!
//! The space of polynomials of multidegree at most `d` in the affine chart
//! `y_1 = ... = y_n = 1` has the monomial basis `x^b`, `0 <= b <= d`. A point
//! of multiplicity `m` imposes the vanishing of every derivative `d^a / dx^a`
//! with `|a| <= m - 1` and `a <= d`. Stacking those conditions at random
//! points gives the interpolation matrix; its corank is the section count of
//! the system at that specialization, which is never below the very general
//! value.
//!
//! For systems through at most two points the space has an exact monomial
//! description (points at `0` and `infinity` of every factor), exposed by
//! [`monomial_basis_two_points`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dims::FiberIndex;
use crate::lattice::DivisorClassY;
use crate::{Error, Result};

pub const DEFAULT_PRIME: u64 = 2_147_483_647;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterpConfig {
    /// A prime below `2^32`.
    pub prime: u64,
    pub seed: u64,
    /// Number of independent point samples; the maximum rank is kept.
    pub trials: u32,
}

impl Default for InterpConfig {
    fn default() -> Self {
        Self { prime: DEFAULT_PRIME, seed: 0, trials: 3 }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2u64;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

/// Arithmetic modulo a prime `p < 2^32`; products of reduced values fit in
/// a `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    /// `floor(2^64 / p)` for Barrett reduction.
    barrett: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 {
            return Err(Error::InvalidPrime { prime: p, reason: "must be below 2^32".into() });
        }
        if !is_prime(p) {
            return Err(Error::InvalidPrime { prime: p, reason: "not prime".into() });
        }
        Ok(Self { p, barrett: (u64::MAX / p) + u64::from(u64::MAX % p == p - 1) })
    }

    /// `x mod p` for any `x < 2^64`.
    #[inline(always)]
    pub fn reduce(&self, x: u64) -> u64 {
        let q = ((x as u128 * self.barrett as u128) >> 64) as u64;
        let mut r = x - q * self.p;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
}

/// Dense row-major matrix over a prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.field.p;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Rank by forward Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let f = self.field;
        let p = f.p;
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(piv) = (rank..rows).find(|&i| a[i * cols + col] != 0) else { continue };
            if piv != rank {
                for j in col..cols {
                    a.swap(piv * cols + j, rank * cols + j);
                }
            }
            let inv = f.inv(a[rank * cols + col]);
            for j in col..cols {
                a[rank * cols + j] = f.mul(a[rank * cols + j], inv);
            }
            let (head, tail) = a.split_at_mut((rank + 1) * cols);
            let pivot_row = &head[rank * cols..];
            for row in tail.chunks_exact_mut(cols) {
                let factor = row[col];
                if factor == 0 {
                    continue;
                }
                let neg = p - factor;
                for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x = f.reduce(*x + neg * y);
                }
            }
            rank += 1;
        }
        rank
    }
}

/// All `v` in `N^n` with `v <= bound` componentwise, last coordinate fastest.
fn box_points(bound: &[i64]) -> Vec<Vec<i64>> {
    if bound.iter().any(|&b| b < 0) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0i64; bound.len()];
    loop {
        out.push(cur.clone());
        let mut i = bound.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < bound[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
        }
    }
}

/// Derivative multi-indices imposed by a point of multiplicity `m`:
/// `|a| <= m - 1` and `a_j <= d_j`.
pub fn condition_multiindices(m: i64, d: &[i64]) -> Vec<Vec<i64>> {
    if m <= 0 {
        return Vec::new();
    }
    let bound: Vec<i64> = d.iter().map(|&x| x.min(m - 1)).collect();
    box_points(&bound).into_iter().filter(|a| a.iter().sum::<i64>() < m).collect()
}

/// Exponent vectors of the monomial basis, in column order.
pub fn monomial_exponents(d: &[i64]) -> Vec<Vec<i64>> {
    box_points(d)
}

fn check_prime_floor(d: &[i64], m: &[i64], prime: u64) -> Result<()> {
    let sum: i64 = d.iter().sum();
    let top = m.iter().copied().max().unwrap_or(0).max(sum);
    if (prime as i128) <= 2 * top as i128 {
        return Err(Error::InvalidPrime {
            prime,
            reason: format!("must exceed 2 * max(sum d, max m) = {}", 2 * top as i128),
        });
    }
    Ok(())
}

/// Interpolation matrix for degrees `d` and multiplicities `m` at the given
/// affine points. Rows are grouped by point, then by derivative multi-index;
/// columns follow [`monomial_exponents`]. The entry for derivative `a` and
/// monomial `x^b` at point `t` is `prod_j (b_j)_(a_j) t_j^(b_j - a_j)` with
/// falling factorials `(b)_(a)`.
pub fn build_matrix(d: &[i64], m: &[i64], points: &[Vec<u64>], prime: u64) -> Result<Matrix> {
    let field = PrimeField::new(prime)?;
    if d.iter().any(|&x| x < 0) {
        return Err(Error::NegativeDegree(d.to_vec()));
    }
    check_prime_floor(d, m, prime)?;
    if points.len() != m.len() {
        return Err(Error::InvalidPoints(format!("{} points for {} multiplicities", points.len(), m.len())));
    }
    for (i, pt) in points.iter().enumerate() {
        if pt.len() != d.len() {
            return Err(Error::InvalidPoints(format!("point {i} has {} coordinates, expected {}", pt.len(), d.len())));
        }
        if pt.iter().any(|&c| c == 0 || c >= prime) {
            return Err(Error::InvalidPoints(format!("point {i} has a coordinate outside 1..p")));
        }
        if points[..i].contains(pt) {
            return Err(Error::InvalidPoints(format!("point {i} repeats an earlier point")));
        }
    }

    let cols_exp = monomial_exponents(d);
    let conditions: Vec<(usize, Vec<i64>)> = m
        .iter()
        .enumerate()
        .flat_map(|(i, &mi)| condition_multiindices(mi, d).into_iter().map(move |a| (i, a)))
        .collect();
    let mut mat = Matrix::zeros(field, conditions.len(), cols_exp.len());

    // tables[i][j][a][b] = (b)_(a) * t^(b-a) for point i, coordinate j.
    let tables: Vec<Vec<Vec<Vec<u64>>>> = points
        .iter()
        .zip(m)
        .map(|(pt, &mi)| {
            pt.iter()
                .zip(d)
                .map(|(&t, &dj)| {
                    let amax = (mi - 1).clamp(0, dj);
                    (0..=amax)
                        .map(|a| {
                            (0..=dj)
                                .map(|b| {
                                    if b < a {
                                        return 0;
                                    }
                                    let fall = (b - a + 1..=b).fold(1u64, |acc, k| field.mul(acc, k as u64));
                                    field.mul(fall, field.pow(t, (b - a) as u64))
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    for (row, (i, a)) in conditions.iter().enumerate() {
        let tab = &tables[*i];
        for (col, b) in cols_exp.iter().enumerate() {
            let v = a
                .iter()
                .zip(b)
                .enumerate()
                .fold(1u64, |acc, (j, (&aj, &bj))| field.mul(acc, tab[j][aj as usize][bj as usize]));
            mat.set(row, col, v);
        }
    }
    Ok(mat)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterpReport {
    pub cols: usize,
    pub rows: usize,
    /// Maximum rank over the trials that were run.
    pub rank: usize,
    pub dim_affine: i64,
    pub dim_proj: i64,
    pub prime: u64,
    pub seed: u64,
    pub trials_requested: u32,
    /// Trials stop early once the rank reaches `min(rows, cols)`.
    pub trials_run: u32,
    /// Schwartz-Zippel style bound on the probability that `dim_affine`
    /// exceeds the very general section count: `(cols * sum d / p)^trials_run`.
    pub failure_bound: f64,
}

/// Seeded random sample of `r` pairwise distinct points in `(F_p^*)^n`.
/// The sample depends only on `(seed, trial)`, and point `i` does not depend
/// on how many points follow it.
pub fn sample_points(n: usize, r: usize, prime: u64, seed: u64, trial: u64) -> Vec<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let mut pts: Vec<Vec<u64>> = Vec::with_capacity(r);
    while pts.len() < r {
        let pt: Vec<u64> = (0..n).map(|_| rng.gen_range(1..prime)).collect();
        if !pts.contains(&pt) {
            pts.push(pt);
        }
    }
    pts
}

/// Section count of the system at random points, via the rank of the
/// interpolation matrix. Negative multiplicities are treated as zero.
///
/// A random specialization can only lose rank, so `dim_affine` is never
/// below the very general section count; it equals it unless every trial hit
/// the vanishing locus of a maximal minor.
pub fn dim_oracle(class: &DivisorClassY, cfg: &InterpConfig) -> Result<InterpReport> {
    dim_oracle_raw(class.d(), &class.clamped_m(), cfg)
}

/// [`dim_oracle`] on raw degree and multiplicity vectors (any `n >= 1`).
pub fn dim_oracle_raw(d: &[i64], m: &[i64], cfg: &InterpConfig) -> Result<InterpReport> {
    if cfg.trials == 0 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    PrimeField::new(cfg.prime)?;
    if d.iter().any(|&x| x < 0) {
        return Err(Error::NegativeDegree(d.to_vec()));
    }
    check_prime_floor(d, m, cfg.prime)?;
    let m: Vec<i64> = m.iter().map(|&x| x.max(0)).collect();

    let mut best = 0usize;
    let mut shape = (0, 0);
    let mut trials_run = 0;
    for trial in 0..cfg.trials {
        let pts = sample_points(d.len(), m.len(), cfg.prime, cfg.seed, trial as u64);
        let mat = build_matrix(d, &m, &pts, cfg.prime)?;
        shape = mat.shape();
        best = best.max(mat.rank());
        trials_run += 1;
        if best == shape.0.min(shape.1) {
            break;
        }
    }
    let (rows, cols) = shape;
    let dim_affine = cols as i64 - best as i64;
    let per_trial = (cols as f64 * d.iter().sum::<i64>() as f64 / cfg.prime as f64).min(1.0);
    Ok(InterpReport {
        cols,
        rows,
        rank: best,
        dim_affine,
        dim_proj: dim_affine - 1,
        prime: cfg.prime,
        seed: cfg.seed,
        trials_requested: cfg.trials,
        trials_run,
        failure_bound: per_trial.powi(trials_run as i32),
    })
}

/// A monomial `prod x_i^(a_i) y_i^(b_i)` with `a_i + b_i = d_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialPair {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
}

fn two_point_mults(class: &DivisorClassY) -> Result<(i64, i64)> {
    if class.r() > 2 {
        return Err(Error::TooManyPoints { max: 2, got: class.r() });
    }
    let m = class.clamped_m();
    Ok((m.first().copied().unwrap_or(0), m.get(1).copied().unwrap_or(0)))
}

/// Basis of the system through (at most) two points placed at
/// `([0:1],...,[0:1])` and `([1:0],...,[1:0])`: the monomials with
/// `sum a_i >= m_1` and `sum b_i >= m_2`.
pub fn monomial_basis_two_points(class: &DivisorClassY) -> Result<Vec<MonomialPair>> {
    if class.d().iter().any(|&x| x < 0) {
        return Err(Error::NegativeDegree(class.d().to_vec()));
    }
    let (m1, m2) = two_point_mults(class)?;
    let total = class.degree_sum();
    Ok(box_points(class.d())
        .into_iter()
        .filter(|a| {
            let sa: i64 = a.iter().sum();
            sa >= m1 && total - sa >= m2
        })
        .map(|a| {
            let b = class.d().iter().zip(&a).map(|(d, a)| d - a).collect();
            MonomialPair { a, b }
        })
        .collect())
}

/// Exact multiplicity of the fiber `F_{j,I}` (`j` in `{0, 1}`) in the base
/// locus of a system through at most two points: the minimum over the
/// monomial basis of the exponent sum over `I` at the point.
pub fn fiber_multiplicity_exact_r2(class: &DivisorClassY, fiber: &FiberIndex) -> Result<i64> {
    two_point_mults(class)?;
    let mask = fiber.mask_for(class)?;
    let basis = monomial_basis_two_points(class)?;
    basis
        .iter()
        .map(|mono| {
            let exps = if fiber.point == 0 { &mono.a } else { &mono.b };
            (0..class.n()).filter(|i| mask >> i & 1 == 1).map(|i| exps[i]).sum::<i64>()
        })
        .min()
        .ok_or(Error::EmptySystem)
}
