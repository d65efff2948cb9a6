//! Speciality by degeneration.
//!
//! A system is first reduced to standard form. The reduced system `L` is then
//! certified *fiber non-special* (its section count equals `max(fcount, 0)`)
//! either directly, when it has at most two base points, or by splitting the
//! largest degree `d_1 = (k - 1) + 1 + (d_1 - k)` and the points into
//!
//! ```text
//! L1 = L_(k-1, d_2, ..., d_n)(m_1, ..., m_s)
//! L2 = L_(d_1-k, d_2, ..., d_n)(m_{s+1}, ..., m_r)
//! ```
//!
//! where both children are recursively certified fiber non-special,
//! `fcount(L1) * fcount(L2) >= 0`, `m_i <= k` for `i <= s` and
//! `m_j <= d_1 - k + 1` for `j > s`.
//!
//! The search memoizes verdicts per query and keeps the first admissible
//! split; see [`speciality`] for the order.
//!
//! A certificate pins the exact section count of the input, since reflections
//! preserve it. The verdict kind compares that count with the expected count
//! of the reduced system; [`Verdict::input_special`] compares with the
//! expected count of the input as given.

mod conjecture;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::dims::{dim_report, DimReport};
use crate::lattice::DivisorClassY;
use crate::weyl::{standard_form, Reduction};
use crate::{Error, Result};

pub use conjecture::{
    conjecture_predict, conjecture_test, minus_quadric, q_value, ChainStep, ConjectureReport, Prediction, Terminal,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenConfig {
    pub max_depth: usize,
    /// Stricter variant: `>=` in the two-point test, tail bound
    /// `m_j <= d_n - k`, `k < d_1`, and children must themselves be
    /// classified non-special.
    pub strict_compat: bool,
}

impl Default for DegenConfig {
    fn default() -> Self {
        Self { max_depth: 64, strict_compat: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictKind {
    NonSpecial,
    Special,
    Undecided,
}

impl VerdictKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerdictKind::NonSpecial => "non-special",
            VerdictKind::Special => "special",
            VerdictKind::Undecided => "undecided",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "trace", rename_all = "snake_case")]
pub enum Certificate {
    /// The standard-form reduction ended in the empty system.
    Empty,
    /// The reduced system has at most two base points.
    TwoPoint,
    Degeneration(Box<DegenTrace>),
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    /// The child system exactly as formed by the split.
    pub system: DivisorClassY,
    pub dims: DimReport,
    pub verdict: Box<Verdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenTrace {
    /// The reduced, sorted system being split.
    pub node: DivisorClassY,
    pub k: i64,
    pub s: usize,
    /// Largest admissible multiplicity among the second group of points.
    pub tail_bound: i64,
    pub strict_compat: bool,
    pub first: Branch,
    pub second: Branch,
}

impl DegenTrace {
    /// Every system appearing in this tree (split nodes and children), depth first.
    pub fn systems(&self) -> Vec<DivisorClassY> {
        let mut out = vec![self.node.clone()];
        for b in [&self.first, &self.second] {
            out.push(b.system.clone());
            if let Certificate::Degeneration(t) = &b.verdict.certificate {
                out.extend(t.systems());
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub input: DivisorClassY,
    /// `None` when the reduction ended in the empty system.
    pub standard: Option<DivisorClassY>,
    pub input_dims: DimReport,
    pub standard_dims: Option<DimReport>,
    /// Exact section count, when certified.
    pub certified_count: Option<i64>,
    /// Speciality of the input itself (`h^0 > max(vcount, 0)`), when known.
    /// A fiber count of the reduced system above the expected count of the
    /// input proves speciality even without a certificate.
    pub input_special: Option<bool>,
    pub certificate: Certificate,
    /// Some branch of the search hit the depth limit.
    pub truncated: bool,
}

impl Verdict {
    /// The degeneration tree, if the certificate has one.
    pub fn trace(&self) -> Option<&DegenTrace> {
        match &self.certificate {
            Certificate::Degeneration(t) => Some(t),
            _ => None,
        }
    }

    /// The certified dimension equals the fiber-expected dimension of `class`.
    fn certifies_fiber_non_special(&self, class_dims: &DimReport) -> bool {
        self.certified_count == Some(class_dims.fiber_expected_count())
    }
}

/// Decides speciality of a system with non-negative degrees and
/// multiplicities. Systems with fewer than two points are accepted and
/// handled by the two-point case.
pub fn speciality(class: &DivisorClassY, cfg: &DegenConfig) -> Result<Verdict> {
    if class.d().iter().any(|&x| x < 0) {
        return Err(Error::NegativeDegree(class.d().to_vec()));
    }
    if class.m().iter().any(|&x| x < 0) {
        return Err(Error::Config(format!("multiplicities must be non-negative, got {:?}", class.m())));
    }
    let mut prover = Prover { cfg: *cfg, memo: HashMap::new() };
    prover.decide(class, 0)
}

struct Prover {
    cfg: DegenConfig,
    memo: HashMap<DivisorClassY, Verdict>,
}

impl Prover {
    fn decide(&mut self, class: &DivisorClassY, depth: usize) -> Result<Verdict> {
        let key = class.sorted();
        if let Some(v) = self.memo.get(&key) {
            let mut v = v.clone();
            v.input = class.clone();
            return Ok(v);
        }
        let v = self.decide_uncached(class, depth)?;
        if !v.truncated {
            self.memo.insert(key, v.clone());
        }
        Ok(v)
    }

    fn decide_uncached(&mut self, class: &DivisorClassY, depth: usize) -> Result<Verdict> {
        let input_dims = dim_report(class)?;
        let reduced = match standard_form(class).outcome {
            Reduction::Empty => {
                // dim >= edim, so an empty system has non-positive vcount.
                debug_assert!(input_dims.vcount <= 0, "empty reduction of {class:?} with {input_dims:?}");
                return Ok(Verdict {
                    kind: VerdictKind::NonSpecial,
                    input: class.clone(),
                    standard: None,
                    input_dims,
                    standard_dims: None,
                    certified_count: Some(0),
                    input_special: Some(false),
                    certificate: Certificate::Empty,
                    truncated: false,
                });
            }
            Reduction::Final(c) => c,
        };
        let std_dims = dim_report(&reduced)?;

        // Points of multiplicity <= 0 impose nothing.
        let (d, m_all) = reduced.clone().into_parts();
        let m: Vec<i64> = m_all.into_iter().filter(|&x| x > 0).collect();

        let mut truncated = false;
        let certificate = if m.len() <= 2 {
            Certificate::TwoPoint
        } else if depth >= self.cfg.max_depth {
            truncated = true;
            Certificate::None
        } else {
            let (cert, trunc) = self.search(&d, &m, depth)?;
            truncated = trunc;
            cert
        };

        let certified_count = match certificate {
            Certificate::None => None,
            _ => Some(std_dims.fiber_expected_count()),
        };
        let kind = match certified_count {
            None => VerdictKind::Undecided,
            Some(_) if matches!(certificate, Certificate::TwoPoint) && self.cfg.strict_compat => {
                if std_dims.fdim >= std_dims.edim {
                    VerdictKind::Special
                } else {
                    VerdictKind::NonSpecial
                }
            }
            Some(c) if c > std_dims.expected_count() => VerdictKind::Special,
            Some(_) => VerdictKind::NonSpecial,
        };
        let lower = std_dims.fiber_expected_count().max(input_dims.fiber_expected_count());
        let input_special = match certified_count {
            Some(c) => Some(c > input_dims.expected_count()),
            None if lower > input_dims.expected_count() => Some(true),
            None => None,
        };
        Ok(Verdict {
            kind,
            input: class.clone(),
            standard: Some(reduced),
            input_dims,
            standard_dims: Some(std_dims),
            certified_count,
            input_special,
            certificate,
            truncated,
        })
    }

    /// Tries splits in order of increasing `k`; for each `k`, point splits
    /// `s` are tried from the most balanced (`|2s - r|` smallest, smaller `s`
    /// first on ties) to the least.
    fn search(&mut self, d: &[i64], m: &[i64], depth: usize) -> Result<(Certificate, bool)> {
        let compat = self.cfg.strict_compat;
        let d1 = d[0];
        let dn = *d.last().expect("n >= 2");
        let r = m.len();
        let k_max = if compat { d1 - 1 } else { d1 };
        let mut splits: Vec<usize> = (1..r).collect();
        splits.sort_by_key(|&s| ((2 * s).abs_diff(r), s));
        let mut truncated = false;
        for k in 1..=k_max {
            let tail_bound = if compat { dn - k } else { d1 - k + 1 };
            for &s in &splits {
                if m[..s].iter().any(|&x| x > k) || m[s..].iter().any(|&x| x > tail_bound) {
                    continue;
                }
                let mut d_first = d.to_vec();
                d_first[0] = k - 1;
                let mut d_second = d.to_vec();
                d_second[0] = d1 - k;
                let c1 = DivisorClassY::new(d_first, m[..s].to_vec())?;
                let c2 = DivisorClassY::new(d_second, m[s..].to_vec())?;
                let dims1 = dim_report(&c1)?;
                let dims2 = dim_report(&c2)?;
                if (dims1.fcount as i128) * (dims2.fcount as i128) < 0 {
                    continue;
                }
                let v1 = self.decide(&c1, depth + 1)?;
                truncated |= v1.truncated;
                if !self.child_ok(&v1, &dims1) {
                    continue;
                }
                let v2 = self.decide(&c2, depth + 1)?;
                truncated |= v2.truncated;
                if !self.child_ok(&v2, &dims2) {
                    continue;
                }
                let node = DivisorClassY::new(d.to_vec(), m.to_vec())?;
                let trace = DegenTrace {
                    node,
                    k,
                    s,
                    tail_bound,
                    strict_compat: compat,
                    first: Branch { system: c1, dims: dims1, verdict: Box::new(v1) },
                    second: Branch { system: c2, dims: dims2, verdict: Box::new(v2) },
                };
                return Ok((Certificate::Degeneration(Box::new(trace)), false));
            }
        }
        Ok((Certificate::None, truncated))
    }

    fn child_ok(&self, v: &Verdict, dims: &DimReport) -> bool {
        let fiber_ok = v.certifies_fiber_non_special(dims);
        if self.cfg.strict_compat {
            fiber_ok && v.kind == VerdictKind::NonSpecial
        } else {
            fiber_ok
        }
    }
}
