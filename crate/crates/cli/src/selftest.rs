//! `selftest`: the worked examples, checked end to end.

use multifiber::degen::{conjecture_predict, conjecture_test, speciality, DegenConfig, Prediction, VerdictKind};
use multifiber::dims::dim_report;
use multifiber::interp::{dim_oracle, InterpConfig};
use multifiber::notation::{parse_class_x, parse_system, render, render_ordered};
use multifiber::weyl::{phi_push, standard_form};
use multifiber::DivisorClassY;
use serde::Serialize;

use crate::{Failure, Format};

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

type Probe = fn() -> multifiber::Result<(bool, String)>;

fn sys(text: &str) -> multifiber::Result<DivisorClassY> {
    parse_system(text)
}

fn quadric_multiple(n: i64) -> multifiber::Result<DivisorClassY> {
    DivisorClassY::new(vec![n; 3], vec![n; 7])
}

const CHECKS: &[(&str, Probe)] = &[
    ("standard form of (13,9,5)(11^2,7^2,3^2)", || {
        let got = standard_form(&sys("(13,9,5)(11^2,7^2,3^2)")?).outcome.class().map(render);
        Ok((got.as_deref() == Some("(5,5,5)(3^6)"), format!("{got:?}")))
    }),
    ("counts of (13,9,5)(11^2,7^2,3^2)", || {
        let d = dim_report(&sys("(13,9,5)(11^2,7^2,3^2)")?)?;
        Ok(((d.vcount, d.fcount) == (80, 154), format!("vcount {} fcount {}", d.vcount, d.fcount)))
    }),
    ("counts of (5,5,5)(3^6)", || {
        let d = dim_report(&sys("(5,5,5)(3^6)")?)?;
        Ok(((d.vcount, d.fcount) == (156, 156), format!("vcount {} fcount {}", d.vcount, d.fcount)))
    }),
    ("counts of (1^7)(3^3)", || {
        let d = dim_report(&sys("(1,1,1,1,1,1,1)(3^3)")?)?;
        Ok(((d.vcount, d.fcount) == (20, 41), format!("vcount {} fcount {}", d.vcount, d.fcount)))
    }),
    ("sections of (5,5,5)(3^6)", || {
        let r = dim_oracle(&sys("(5,5,5)(3^6)")?, &InterpConfig::default())?;
        Ok((r.dim_affine == 156, format!("count {}", r.dim_affine)))
    }),
    ("sections of (1^7)(3^3)", || {
        let r = dim_oracle(&sys("(1,1,1,1,1,1,1)(3^3)")?, &InterpConfig::default())?;
        Ok((r.dim_affine == 42 && r.rank == 86, format!("count {} rank {}", r.dim_affine, r.rank)))
    }),
    ("sections of nQ, n = 1..4", || {
        let mut counts = Vec::new();
        for n in 1..=4 {
            counts.push(dim_oracle(&quadric_multiple(n)?, &InterpConfig::default())?.dim_affine);
        }
        Ok((counts.iter().all(|&c| c == 1), format!("{counts:?}")))
    }),
    ("degeneration of (13,9,5)(11^2,7^2,3^2)", || {
        let v = speciality(&sys("(13,9,5)(11^2,7^2,3^2)")?, &DegenConfig::default())?;
        Ok((v.kind == VerdictKind::NonSpecial && v.certified_count == Some(156), v.kind.as_str().into()))
    }),
    ("degeneration of (1^7)(3^3)", || {
        let v = speciality(&sys("(1,1,1,1,1,1,1)(3^3)")?, &DegenConfig::default())?;
        Ok((v.kind == VerdictKind::Undecided, v.kind.as_str().into()))
    }),
    ("phi push of 4H - 3(E_1+...+E_9) on P^7", || {
        let y = phi_push(&parse_class_x(7, "(4)(3^9)")?)?;
        let got = render_ordered(&y);
        Ok((got == "(1,1,1,1,1,1,1)(3^3)", got))
    }),
    ("quadric conjecture on nQ and (5,5,5)(3^6)", || {
        let cfg = InterpConfig::default();
        let mut ok = true;
        for n in 1..=4 {
            ok &= conjecture_test(&quadric_multiple(n)?, &cfg)?.agree;
        }
        let p = conjecture_predict(&sys("(5,5,5)(3^6)")?, &cfg)?;
        ok &= p == Prediction::NonSpecial;
        Ok((ok, format!("(5,5,5)(3^6): {p:?}")))
    }),
];

pub fn run(f: Format) -> Result<(), Failure> {
    let results: Vec<Check> = CHECKS
        .iter()
        .map(|(name, probe)| match probe() {
            Ok((passed, detail)) => Check { name, passed, detail },
            Err(e) => Check { name, passed: false, detail: format!("error: {e}") },
        })
        .collect();
    match f {
        Format::Json => println!("{}", serde_json::to_string_pretty(&results).expect("serializes")),
        Format::Text => {
            for c in &results {
                println!("[{}] {}: {}", if c.passed { " ok " } else { "FAIL" }, c.name, c.detail);
            }
        }
    }
    if results.iter().all(|c| c.passed) {
        Ok(())
    } else {
        Err(Failure::Silent(1))
    }
}
