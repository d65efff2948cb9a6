//! One function per subcommand: run it and print text or JSON.

use std::fmt::Write;

use multifiber::degen::{
    conjecture_test, speciality, Certificate, ConjectureReport, DegenConfig, DegenTrace, Prediction, Terminal, Verdict,
};
use multifiber::dims::{dim_report, DimReport};
use multifiber::interp::{dim_oracle, InterpConfig, InterpReport};
use multifiber::notation::{parse_class_x, parse_class_y, parse_system, render, render_ordered, render_x};
use multifiber::weyl::{phi_pull as pull, phi_push as push, standard_form, Reduction, ReductionTrace};
use serde::Serialize;

use crate::{Failure, Format};

fn emit<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
}

#[derive(Serialize)]
struct DimsOut {
    input: String,
    #[serde(flatten)]
    dims: DimReport,
}

pub fn dims_text(d: &DimReport) -> String {
    format!(
        "virtual  count {:>6}  dim {:>6}  expected dim {:>6}\nfiber    count {:>6}  dim {:>6}  expected dim {:>6}",
        d.vcount, d.vdim, d.edim, d.fcount, d.fdim, d.efdim
    )
}

pub fn dims(f: Format, system: &str) -> Result<(), Failure> {
    let c = parse_system(system)?;
    let d = dim_report(&c)?;
    match f {
        Format::Json => emit(&DimsOut { input: render(&c), dims: d }),
        Format::Text => {
            println!("system   {}", render(&c));
            println!("{}", dims_text(&d));
        }
    }
    Ok(())
}

#[derive(Serialize)]
pub struct StdOut {
    pub input: String,
    /// Rendered standard form, or `null` for the empty system.
    pub standard: Option<String>,
    pub steps: Vec<String>,
    pub outcome: Reduction,
}

pub fn std_out(input: &multifiber::DivisorClassY, t: ReductionTrace) -> StdOut {
    StdOut {
        input: render(input),
        standard: t.outcome.class().map(render),
        steps: t.steps.iter().map(render).collect(),
        outcome: t.outcome,
    }
}

pub fn std_form(f: Format, system: &str, trace: bool) -> Result<(), Failure> {
    let c = parse_system(system)?;
    let out = std_out(&c, standard_form(&c));
    match f {
        Format::Json => emit(&out),
        Format::Text => {
            if trace {
                println!("   {}", out.input);
                for s in &out.steps {
                    println!("-> {s}");
                }
            }
            let last = out.standard.as_deref().unwrap_or("empty");
            if trace {
                println!("=> {last}");
            } else {
                println!("{last}");
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct DimOut {
    input: String,
    #[serde(flatten)]
    report: InterpReport,
}

pub fn dim(f: Format, system: &str, cfg: &InterpConfig) -> Result<(), Failure> {
    let c = parse_system(system)?;
    let report = dim_oracle(&c, cfg)?;
    match f {
        Format::Json => emit(&DimOut { input: render(&c), report }),
        Format::Text => {
            println!("system      {}", render(&c));
            println!("count       {}", report.dim_affine);
            println!("dim         {}", report.dim_proj);
            println!("matrix      {}x{}, rank {}", report.rows, report.cols, report.rank);
            println!(
                "prime       {}, seed {}, trials {}/{}",
                report.prime, report.seed, report.trials_run, report.trials_requested
            );
            println!("error bound {:.3e}", report.failure_bound);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct DegenOut<'a> {
    input: String,
    verdict: &'a str,
    standard: Option<String>,
    #[serde(rename = "report")]
    full: &'a Verdict,
}

fn tree_text(t: &DegenTrace, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let _ = writeln!(out, "{pad}{}  split k={} s={} (tail bound {})", render_ordered(&t.node), t.k, t.s, t.tail_bound);
    for b in [&t.first, &t.second] {
        match &b.verdict.certificate {
            Certificate::Degeneration(child) if b.system.sorted() == child.node.sorted() => {
                tree_text(child, depth + 1, out)
            }
            Certificate::Degeneration(child) => {
                let _ = writeln!(out, "{pad}  {} ~> {}", render_ordered(&b.system), render_ordered(&child.node));
                tree_text(child, depth + 2, out);
            }
            cert => {
                let how = match cert {
                    Certificate::Empty => "empty",
                    Certificate::TwoPoint => "two points",
                    _ => "uncertified",
                };
                let _ = writeln!(
                    out,
                    "{pad}  {}  count {} ({how})",
                    render_ordered(&b.system),
                    b.verdict.certified_count.map_or("?".into(), |c| c.to_string())
                );
            }
        }
    }
}

pub fn verdict_text(v: &Verdict) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", v.kind.as_str());
    let _ = writeln!(out, "input      {}", render(&v.input));
    let _ = writeln!(out, "{}", dims_text(&v.input_dims));
    match (&v.standard, &v.standard_dims) {
        (Some(s), Some(d)) => {
            let _ = writeln!(out, "standard   {}", render(s));
            let _ = writeln!(out, "{}", dims_text(d));
        }
        _ => {
            let _ = writeln!(out, "standard   empty");
        }
    }
    let cert = match &v.certificate {
        Certificate::Empty => "empty reduction",
        Certificate::TwoPoint => "at most two points",
        Certificate::Degeneration(_) => "degeneration",
        Certificate::None => "none",
    };
    let _ = writeln!(out, "certificate {cert}");
    if let Some(c) = v.certified_count {
        let _ = writeln!(out, "count      {c}");
    }
    let special = match v.input_special {
        Some(true) => "yes",
        Some(false) => "no",
        None => "unknown",
    };
    let _ = writeln!(out, "input special {special}");
    if v.truncated {
        let _ = writeln!(out, "search truncated at the depth limit");
    }
    if let Some(t) = v.trace() {
        let _ = writeln!(out, "tree");
        tree_text(t, 1, &mut out);
    }
    out.trim_end().to_string()
}

pub fn degen(f: Format, system: &str, cfg: &DegenConfig) -> Result<(), Failure> {
    let c = parse_system(system)?;
    let v = speciality(&c, cfg)?;
    match f {
        Format::Json => emit(&DegenOut {
            input: render(&c),
            verdict: v.kind.as_str(),
            standard: v.standard.as_ref().map(render),
            full: &v,
        }),
        Format::Text => println!("{}", verdict_text(&v)),
    }
    Ok(())
}

fn prediction_str(p: Prediction) -> &'static str {
    match p {
        Prediction::ReduceByQ => "reduce by Q",
        Prediction::Special => "special",
        Prediction::NonSpecial => "non-special",
    }
}

#[derive(Serialize)]
struct ConjectureOut<'a> {
    input: String,
    /// The chain rendered as text, one entry per visited class.
    systems: Vec<String>,
    report: &'a ConjectureReport,
}

pub fn conjecture(f: Format, system: &str, cfg: &InterpConfig) -> Result<(), Failure> {
    let c = parse_system(system)?;
    let rep = conjecture_test(&c, cfg)?;
    match f {
        Format::Json => emit(&ConjectureOut {
            input: render(&c),
            systems: rep.chain.iter().map(|s| render(&s.class)).collect(),
            report: &rep,
        }),
        Format::Text => {
            println!("input      {}  count {}", render(&c), rep.oracle_count);
            for s in &rep.chain {
                println!(
                    "  {}  q={}  {}  expected {}  count {}",
                    render(&s.class),
                    s.q,
                    prediction_str(s.prediction),
                    s.expected_count,
                    s.oracle_count
                );
            }
            let terminal = match rep.terminal {
                Terminal::Empty => "empty",
                Terminal::Class(p) => prediction_str(p),
            };
            println!("terminal   {terminal}");
            if let Some(p) = rep.predicted_count {
                println!("predicted  {p}");
            }
            println!("agree      {}", if rep.agree { "yes" } else { "no" });
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct PhiOut<T> {
    input: String,
    output: String,
    class: T,
}

pub fn phi_push(f: Format, n: usize, class: &str) -> Result<(), Failure> {
    let x = parse_class_x(n, class)?;
    let y = push(&x)?;
    match f {
        Format::Json => emit(&PhiOut { input: render_x(&x), output: render_ordered(&y), class: y }),
        Format::Text => println!("{}", render_ordered(&y)),
    }
    Ok(())
}

pub fn phi_pull(f: Format, class: &str) -> Result<(), Failure> {
    let y = parse_class_y(class)?;
    let x = pull(&y)?;
    match f {
        Format::Json => emit(&PhiOut { input: render_ordered(&y), output: render_x(&x), class: x }),
        Format::Text => println!("{}", render_x(&x)),
    }
    Ok(())
}
