//! The quadric conjecture on `(P^1)^3`.
//!
//! `Q` is the class `(1,1,1)(1^7)`. For a class `D` in standard form,
//! `q(D) = (d_1+1)(d_2+1)(d_3+1) - d_1 d_2 d_3 - sum_{i<=7} m_i (m_i+1) / 2`,
//! and the conjecture predicts:
//!
//! - `q(D) <= 0`: `h^0(D) = h^0(D - Q)`;
//! - `q(D) > 0`: `D` is special iff `m_1 > d_3 + 1` and `D` is fiber
//!   non-special.

use serde::{Deserialize, Serialize};

use crate::dims::dim_report;
use crate::interp::{dim_oracle, InterpConfig};
use crate::lattice::DivisorClassY;
use crate::weyl::{is_standard, standard_form, Reduction};
use crate::{Error, Result};

const QUADRIC_POINTS: usize = 7;

fn require_three(class: &DivisorClassY) -> Result<()> {
    if class.n() != 3 {
        return Err(Error::WrongDimension { expected: 3, got: class.n() });
    }
    Ok(())
}

/// `q(D)`; multiplicities beyond the seventh are ignored and missing ones
/// read as zero.
pub fn q_value(class: &DivisorClassY) -> Result<i64> {
    require_three(class)?;
    let d: Vec<i128> = class.d().iter().map(|&x| x as i128).collect();
    let boxed = (d[0] + 1) * (d[1] + 1) * (d[2] + 1) - d[0] * d[1] * d[2];
    let pts: i128 = class.m().iter().take(QUADRIC_POINTS).map(|&x| x as i128 * (x as i128 + 1) / 2).sum();
    i64::try_from(boxed - pts).map_err(|_| Error::Overflow("q_value"))
}

/// `D - Q`: subtract one from every degree and from the first
/// `min(r, 7)` multiplicities.
pub fn minus_quadric(class: &DivisorClassY) -> Result<DivisorClassY> {
    require_three(class)?;
    let d = class.d().iter().map(|x| x - 1).collect();
    let m = class.m().iter().enumerate().map(|(i, &x)| if i < QUADRIC_POINTS { x - 1 } else { x }).collect();
    DivisorClassY::new(d, m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Prediction {
    ReduceByQ,
    Special,
    NonSpecial,
}

/// Evaluates the conjectural rule on a class in standard form. Fiber
/// non-speciality, needed only when `q > 0` and `m_1 > d_3 + 1`, is read off
/// the interpolation oracle.
pub fn conjecture_predict(class: &DivisorClassY, cfg: &InterpConfig) -> Result<Prediction> {
    require_three(class)?;
    if !is_standard(class) {
        return Err(Error::NotStandard(format!("{:?} {:?}", class.d(), class.m())));
    }
    if q_value(class)? <= 0 {
        return Ok(Prediction::ReduceByQ);
    }
    let m1 = class.m().first().copied().unwrap_or(0);
    if m1 <= class.d()[2] + 1 {
        return Ok(Prediction::NonSpecial);
    }
    let dims = dim_report(class)?;
    let oracle = dim_oracle(class, cfg)?;
    if oracle.dim_affine == dims.fiber_expected_count() {
        Ok(Prediction::Special)
    } else {
        Ok(Prediction::NonSpecial)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub class: DivisorClassY,
    pub q: i64,
    pub prediction: Prediction,
    pub expected_count: i64,
    pub oracle_count: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Terminal {
    /// The chain ended in a class with `q > 0`.
    Class(Prediction),
    /// Reduction reached the empty system.
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub input: DivisorClassY,
    /// Standard forms visited, starting with that of the input.
    pub chain: Vec<ChainStep>,
    pub terminal: Terminal,
    /// Section count of the input implied by the prediction, if it pins one.
    pub predicted_count: Option<i64>,
    pub oracle_count: i64,
    pub agree: bool,
}

/// Standard form with fixed exceptional components (negative multiplicities)
/// removed, reducing again if that breaks the standard-form inequality.
/// Section counts are unchanged throughout.
fn reduce_effective(class: &DivisorClassY) -> Result<Reduction> {
    let mut cur = class.clone();
    loop {
        let Reduction::Final(c) = standard_form(&cur).outcome else {
            return Ok(Reduction::Empty);
        };
        let (d, m) = c.into_parts();
        let clamped = DivisorClassY::new(d, m.into_iter().map(|x| x.max(0)).collect())?;
        if is_standard(&clamped) {
            return Ok(Reduction::Final(clamped));
        }
        cur = clamped;
    }
}

/// Follows `D -> std(D - Q)` while the prediction is `ReduceByQ` and checks
/// every predicted equality and the terminal prediction against the oracle.
pub fn conjecture_test(class: &DivisorClassY, cfg: &InterpConfig) -> Result<ConjectureReport> {
    require_three(class)?;
    let oracle_count = dim_oracle(class, cfg)?.dim_affine;
    let mut chain: Vec<ChainStep> = Vec::new();
    let mut agree = true;
    let mut current = reduce_effective(class)?;
    // Each reduction lowers every degree by one.
    let max_steps = class.d().iter().copied().max().unwrap_or(0).max(0) as usize + 2;

    let terminal = loop {
        let Reduction::Final(c) = current else {
            agree &= chain.last().map_or(oracle_count, |s| s.oracle_count) == 0;
            break Terminal::Empty;
        };
        if chain.len() > max_steps {
            return Err(Error::Config("conjecture chain did not terminate".into()));
        }
        let oracle = dim_oracle(&c, cfg)?.dim_affine;
        if let Some(prev) = chain.last() {
            agree &= prev.oracle_count == oracle;
        } else {
            agree &= oracle == oracle_count;
        }
        let prediction = conjecture_predict(&c, cfg)?;
        let expected_count = dim_report(&c)?.expected_count();
        chain.push(ChainStep { class: c.clone(), q: q_value(&c)?, prediction, expected_count, oracle_count: oracle });
        match prediction {
            Prediction::ReduceByQ => current = reduce_effective(&minus_quadric(&c)?)?,
            Prediction::NonSpecial => {
                agree &= oracle == expected_count;
                break Terminal::Class(prediction);
            }
            Prediction::Special => {
                agree &= oracle > expected_count;
                break Terminal::Class(prediction);
            }
        }
    };

    let predicted_count = match (&terminal, chain.last()) {
        (Terminal::Empty, _) => Some(0),
        (Terminal::Class(Prediction::NonSpecial), Some(last)) => Some(last.expected_count),
        _ => None,
    };
    Ok(ConjectureReport { input: class.clone(), chain, terminal, predicted_count, oracle_count, agree })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(d: &[i64], m: &[i64]) -> DivisorClassY {
        DivisorClassY::new(d.to_vec(), m.to_vec()).unwrap()
    }

    #[test]
    fn q_values() {
        assert_eq!(q_value(&y(&[1, 1, 1], &[1; 7])).unwrap(), 0);
        assert_eq!(q_value(&y(&[5, 5, 5], &[3; 6])).unwrap(), 55);
        assert_eq!(q_value(&y(&[2, 2, 2], &[2; 7])).unwrap(), -2);
        // The eighth point does not enter.
        assert_eq!(q_value(&y(&[1, 1, 1], &[1; 8])).unwrap(), 0);
        assert!(matches!(q_value(&y(&[1, 1], &[1])), Err(Error::WrongDimension { .. })));
    }

    #[test]
    fn predictions() {
        let cfg = InterpConfig::default();
        assert_eq!(conjecture_predict(&y(&[2, 2, 2], &[2; 7]), &cfg).unwrap(), Prediction::ReduceByQ);
        assert_eq!(conjecture_predict(&y(&[5, 5, 5], &[3; 6]), &cfg).unwrap(), Prediction::NonSpecial);
        assert_eq!(conjecture_predict(&y(&[4, 4, 4], &[2, 2]), &cfg).unwrap(), Prediction::NonSpecial);
        assert!(matches!(conjecture_predict(&y(&[13, 9, 5], &[11, 11, 7, 7, 3, 3]), &cfg), Err(Error::NotStandard(_))));
    }

    #[test]
    fn chains_clamp_fixed_components() {
        // Reduces to (1,0,0)(-1) before clamping.
        let rep = conjecture_test(&y(&[2, 0, 0], &[1]), &InterpConfig::default()).unwrap();
        assert!(rep.chain[0].class.m().iter().all(|&x| x >= 0));
        assert!(rep.agree);
    }

    #[test]
    fn minus_quadric_subtracts_seven_points() {
        let c = minus_quadric(&y(&[3, 3, 3], &[2; 8])).unwrap();
        assert_eq!(c.d(), &[2, 2, 2]);
        assert_eq!(c.m(), &[1, 1, 1, 1, 1, 1, 1, 2]);
    }
}
