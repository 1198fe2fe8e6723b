use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use charsum_core::verify::Claim;
use clap::Args;

use crate::records::{ScanRow, VerdictRow};
use crate::{open_out, UsageError, EXIT_OK};

#[derive(Debug, Args)]
pub struct TableArgs {
    /// A json-lines file written by `verify` or `scan`.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub const CLAIM_HEADER: [&str; 7] = [
    "claim",
    "total",
    "pass",
    "fail",
    "vacuous",
    "skipped",
    "pass_rate",
];
pub const SCAN_HEADER: [&str; 12] = [
    "p",
    "problem",
    "h_order",
    "h_ratio",
    "chi",
    "max_ratio",
    "a",
    "b",
    "k",
    "l",
    "tuples",
    "mean_ratio",
];

#[derive(Default)]
struct Tally {
    total: u64,
    pass: u64,
    vacuous: u64,
    skipped: u64,
}

enum Input {
    Verdicts(Vec<VerdictRow>),
    Scans(Vec<ScanRow>),
}

fn parse(text: &str) -> Result<Input, UsageError> {
    let mut verdicts = Vec::new();
    let mut scans = Vec::new();
    for (i, line) in text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
    {
        let bad = |e: serde_json::Error| UsageError(format!("line {}: {e}", i + 1));
        let value: serde_json::Value = serde_json::from_str(line).map_err(bad)?;
        if value.get("claim").is_some() {
            verdicts.push(serde_json::from_value(value).map_err(bad)?);
        } else if value.get("problem").is_some() {
            scans.push(serde_json::from_value(value).map_err(bad)?);
        } else {
            return Err(UsageError(format!(
                "line {}: neither a verdict nor a scan record",
                i + 1
            )));
        }
    }
    match (verdicts.is_empty(), scans.is_empty()) {
        (_, true) => Ok(Input::Verdicts(verdicts)),
        (true, false) => Ok(Input::Scans(scans)),
        (false, false) => Err(UsageError("input mixes verdict and scan records".into())),
    }
}

fn claim_rows(rows: &[VerdictRow]) -> Result<Vec<[String; 7]>, UsageError> {
    let mut tallies: BTreeMap<Claim, Tally> = BTreeMap::new();
    for r in rows {
        let claim: Claim = r.claim.parse().map_err(|e| UsageError(format!("{e}")))?;
        let t = tallies.entry(claim).or_default();
        t.total += 1;
        t.pass += r.pass as u64;
        t.vacuous += r.vacuous as u64;
        t.skipped += r.is_skipped() as u64;
    }
    Ok(tallies
        .into_iter()
        .map(|(claim, t)| {
            [
                claim.id().to_string(),
                t.total.to_string(),
                t.pass.to_string(),
                (t.total - t.pass - t.skipped).to_string(),
                t.vacuous.to_string(),
                t.skipped.to_string(),
                (t.pass as f64 / t.total as f64).to_string(),
            ]
        })
        .collect())
}

fn opt(v: Option<u32>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn scan_rows(mut rows: Vec<ScanRow>) -> Vec<[String; 12]> {
    // stable sort keeps the scan's own order within a prime
    rows.sort_by_key(|r| r.p);
    rows.into_iter()
        .map(|r| {
            [
                r.p.to_string(),
                r.problem,
                r.h_order.to_string(),
                r.h_ratio,
                opt(r.chi),
                r.max_ratio,
                opt(r.a),
                opt(r.b),
                opt(r.k),
                opt(r.l),
                r.tuples.to_string(),
                r.mean_ratio,
            ]
        })
        .collect()
}

pub(crate) fn run(args: &TableArgs, stdout: &mut dyn Write) -> Result<i32, UsageError> {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", args.input.display())))?;
    let input = parse(&text)?;
    let mut out = open_out(&args.out, stdout)?;
    {
        let mut w = csv::Writer::from_writer(&mut *out);
        match input {
            Input::Verdicts(rows) => {
                w.write_record(CLAIM_HEADER)?;
                for row in claim_rows(&rows)? {
                    w.write_record(&row)?;
                }
            }
            Input::Scans(rows) => {
                w.write_record(SCAN_HEADER)?;
                for row in scan_rows(rows) {
                    w.write_record(&row)?;
                }
            }
        }
        w.flush()?;
    }
    out.flush()?;
    Ok(EXIT_OK)
}
