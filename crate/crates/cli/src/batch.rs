//! `batch`: one system per input line, one JSON object per output line.
//!
//! Blank lines and lines starting with `#` are skipped; a system may be
//! wrapped in double quotes. Records carry their 1-based line number and are
//! written in input order whatever the number of jobs.

use std::io::{self, BufWriter, Read, Write};
use std::path::Path;

use multifiber::degen::{speciality, DegenConfig, VerdictKind};
use multifiber::dims::{dim_report, DimReport};
use multifiber::interp::{dim_oracle, InterpConfig, InterpReport};
use multifiber::notation::{parse_system, render};
use multifiber::weyl::standard_form;
use multifiber::Error;
use rayon::prelude::*;
use serde::Serialize;

use crate::Failure;

pub struct Options {
    pub jobs: usize,
    pub oracle: Option<InterpConfig>,
    pub verdict: Option<DegenConfig>,
}

#[derive(Serialize, Debug, PartialEq)]
pub struct VerdictSummary {
    pub kind: VerdictKind,
    pub certified_count: Option<i64>,
    pub input_special: Option<bool>,
    pub truncated: bool,
}

#[derive(Serialize, Debug, PartialEq)]
#[serde(untagged)]
pub enum Record {
    Ok {
        line: usize,
        input: String,
        dims: DimReport,
        /// `null` when the system reduces to the empty system.
        std: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        oracle: Option<InterpReport>,
        #[serde(skip_serializing_if = "Option::is_none")]
        verdict: Option<VerdictSummary>,
    },
    Err {
        line: usize,
        input: String,
        error: String,
        #[serde(skip)]
        parse: bool,
    },
}

fn strip(line: &str) -> Option<&str> {
    let t = line.trim();
    if t.is_empty() || t.starts_with('#') {
        return None;
    }
    Some(t.strip_prefix('"').and_then(|s| s.strip_suffix('"')).unwrap_or(t))
}

fn process(line: usize, text: &str, opts: &Options) -> Record {
    let go = || -> Result<Record, Error> {
        let c = parse_system(text)?;
        let dims = dim_report(&c)?;
        let std = standard_form(&c).outcome.class().map(render);
        let oracle = opts.oracle.as_ref().map(|cfg| dim_oracle(&c, cfg)).transpose()?;
        let verdict = opts.verdict.as_ref().map(|cfg| speciality(&c, cfg)).transpose()?.map(|v| VerdictSummary {
            kind: v.kind,
            certified_count: v.certified_count,
            input_special: v.input_special,
            truncated: v.truncated,
        });
        Ok(Record::Ok { line, input: render(&c), dims, std, oracle, verdict })
    };
    go().unwrap_or_else(|e| Record::Err {
        line,
        input: text.to_string(),
        parse: matches!(e, Error::Parse { .. }),
        error: e.to_string(),
    })
}

/// Processes the lines of `src`; the result does not depend on `opts.jobs`.
pub fn process_all(src: &str, opts: &Options) -> Vec<Record> {
    let items: Vec<(usize, &str)> = src.lines().enumerate().filter_map(|(i, l)| strip(l).map(|t| (i + 1, t))).collect();
    let work = || items.par_iter().map(|&(i, t)| process(i, t, opts)).collect();
    match rayon::ThreadPoolBuilder::new().num_threads(opts.jobs.max(1)).build() {
        Ok(pool) => pool.install(work),
        Err(_) => items.iter().map(|&(i, t)| process(i, t, opts)).collect(),
    }
}

pub fn run(path: &Path, opts: &Options) -> Result<(), Failure> {
    let mut src = String::new();
    let read = if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut src)
    } else {
        std::fs::File::open(path).and_then(|mut f| f.read_to_string(&mut src))
    };
    read.map_err(|e| Failure::Io(path.to_path_buf(), e))?;

    let records = process_all(&src, opts);
    let mut out = BufWriter::new(io::stdout().lock());
    let mut code = 0u8;
    for r in &records {
        if let Record::Err { line, error, parse, .. } = r {
            eprintln!("line {line}: {error}");
            code = code.max(if *parse { 2 } else { 1 });
        }
        let json = serde_json::to_string(r).expect("record serializes");
        writeln!(out, "{json}").map_err(|e| Failure::Io(path.to_path_buf(), e))?;
    }
    out.flush().map_err(|e| Failure::Io(path.to_path_buf(), e))?;
    if code == 0 {
        Ok(())
    } else {
        Err(Failure::Silent(code))
    }
}
