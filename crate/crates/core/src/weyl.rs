//! Reduction to standard form and the correspondence between the blow-ups
//! of `P^n` and `(P^1)^n`.

use serde::{Deserialize, Serialize};

use crate::lattice::{DivisorClassX, DivisorClassY};
use crate::{Error, Result};

fn is_non_increasing(v: &[i64]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}

/// `sum_{i>=2} d_i - m_1 - m_2`, with missing multiplicities read as zero.
fn excess(d: &[i64], m: &[i64]) -> i64 {
    let tail: i64 = d.iter().skip(1).sum();
    tail - m.first().copied().unwrap_or(0) - m.get(1).copied().unwrap_or(0)
}

/// Sorted degrees with `d_n >= 0`, sorted multiplicities and
/// `d_2 + ... + d_n >= m_1 + m_2`.
pub fn is_pre_standard(d: &DivisorClassY) -> bool {
    is_non_increasing(d.d())
        && d.d().last().is_some_and(|&x| x >= 0)
        && is_non_increasing(d.m())
        && excess(d.d(), d.m()) >= 0
}

/// Pre-standard with all multiplicities non-negative.
pub fn is_standard(d: &DivisorClassY) -> bool {
    is_pre_standard(d) && d.m().last().is_none_or(|&x| x >= 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "class", rename_all = "snake_case")]
pub enum Reduction {
    /// The reduced class, pre-standard and in the Weyl orbit of the input.
    Final(DivisorClassY),
    /// The linear system is empty.
    Empty,
}

impl Reduction {
    pub fn class(&self) -> Option<&DivisorClassY> {
        match self {
            Reduction::Final(c) => Some(c),
            Reduction::Empty => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    /// The class after each reflection-and-sort round.
    pub steps: Vec<DivisorClassY>,
    pub outcome: Reduction,
}

/// Sort, then reflect in `H_1 - E_1 - E_2` and re-sort while
/// `k = d_2 + ... + d_n - m_1 - m_2 < 0` and all degrees are non-negative.
///
/// Systems with fewer than two points are padded with zero multiplicities for
/// the loop guard; padding entries that are still zero at the end are
/// dropped again.
pub fn standard_form(class: &DivisorClassY) -> ReductionTrace {
    let r = class.r();
    let mut cur = class.sorted();
    let pad = 2usize.saturating_sub(r);
    cur.m_mut().extend(std::iter::repeat_n(0, pad));

    let mut steps = Vec::new();
    loop {
        let k = excess(cur.d(), cur.m());
        if k >= 0 || cur.d().iter().any(|&x| x < 0) {
            break;
        }
        cur.d_mut()[0] += k;
        cur.m_mut()[0] += k;
        cur.m_mut()[1] += k;
        cur = cur.sorted();
        steps.push(unpad(&cur, pad));
    }

    let outcome = if cur.d().iter().any(|&x| x < 0) { Reduction::Empty } else { Reduction::Final(unpad(&cur, pad)) };
    ReductionTrace { steps, outcome }
}

fn unpad(c: &DivisorClassY, pad: usize) -> DivisorClassY {
    let mut c = c.clone();
    for _ in 0..pad {
        // Multiplicities are sorted, so the last zero keeps the order intact.
        if let Some(pos) = c.m().iter().rposition(|&x| x == 0) {
            c.m_mut().remove(pos);
        }
    }
    c
}

/// Push-forward `Pic(X) -> Pic(Y)` along the small modification between the
/// blow-up of `P^n` at `s` points and the blow-up of `(P^1)^n` at
/// `s - n + 1` points:
///
/// ```text
/// H       -> H_1 + ... + H_n - (n-1) E_1
/// E_i     -> H_{n+1-i} - E_1      (1 <= i <= n)
/// E_{n+1} -> E_2
/// E_i     -> E_{i-n+1}            (i > n+1)
/// ```
pub fn phi_push(x: &DivisorClassX) -> Result<DivisorClassY> {
    let n = x.n();
    let s = x.s();
    if s < n + 1 {
        return Err(Error::TooFewPoints { needed: n + 1, got: s });
    }
    let m = x.m();
    let d0 = x.d0() as i128;
    let narrow = |v: i128| i64::try_from(v).map_err(|_| Error::Overflow("phi_push"));

    let d = (1..=n).map(|j| narrow(d0 - m[n - j] as i128)).collect::<Result<Vec<_>>>()?;
    let sum_first: i128 = m[..n].iter().map(|&v| v as i128).sum();
    let mut my = Vec::with_capacity(s - n + 1);
    my.push(narrow((n as i128 - 1) * d0 - sum_first)?);
    my.push(m[n]);
    my.extend_from_slice(&m[n + 1..]);
    DivisorClassY::new(d, my)
}

/// Inverse of [`phi_push`].
pub fn phi_pull(y: &DivisorClassY) -> Result<DivisorClassX> {
    let n = y.n();
    let r = y.r();
    if r < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: r });
    }
    let narrow = |v: i128| i64::try_from(v).map_err(|_| Error::Overflow("phi_pull"));
    let d0 = y.d().iter().map(|&v| v as i128).sum::<i128>() - y.m()[0] as i128;
    let mut m = Vec::with_capacity(r + n - 1);
    // E_i for i <= n pairs with H_{n+1-i}.
    for i in 1..=n {
        m.push(narrow(d0 - y.d()[n - i] as i128)?);
    }
    m.push(y.m()[1]);
    m.extend_from_slice(&y.m()[2..]);
    DivisorClassX::new(n, narrow(d0)?, m)
}
