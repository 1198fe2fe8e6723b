//! Flat record types shared by the json-lines and CSV writers. Numeric
//! values are carried as strings so that exact integers and shortest
//! round-trip floats survive untouched.

use std::io::Write;

use charsum_core::scan::{ScanRecord, HISTOGRAM_BIN};
use charsum_core::verify::{Record, Verdict};
use serde::{Deserialize, Serialize};

use crate::{Format, UsageError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictRow {
    /// `verdict` or `skipped`.
    pub kind: String,
    pub claim: String,
    pub modulus: u32,
    pub chi: Option<u32>,
    pub h_order: Option<u32>,
    /// Space-separated residues of an explicit set.
    pub set: Option<String>,
    pub a: Option<u32>,
    pub eps: Option<String>,
    pub sample: Option<u32>,
    pub mode: Option<String>,
    pub computed: Option<String>,
    pub target: Option<String>,
    pub margin: Option<String>,
    pub pass: bool,
    pub vacuous: bool,
    pub reason: Option<String>,
}

impl VerdictRow {
    pub fn is_skipped(&self) -> bool {
        self.kind == "skipped"
    }
}

fn join(xs: &[u32]) -> String {
    xs.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

impl From<&Verdict> for VerdictRow {
    fn from(v: &Verdict) -> Self {
        let p = &v.params;
        VerdictRow {
            kind: "verdict".into(),
            claim: v.claim.id().into(),
            modulus: p.modulus,
            chi: p.chi,
            h_order: p.h_order,
            set: p.set.as_deref().map(join),
            a: p.a,
            eps: p.eps.map(|e| e.to_string()),
            sample: p.sample,
            mode: Some(v.mode.as_str().into()),
            computed: Some(v.computed.to_string()),
            target: Some(v.target.to_string()),
            margin: Some(v.margin.to_string()),
            pass: v.pass,
            vacuous: v.vacuous,
            reason: None,
        }
    }
}

impl From<&Record> for VerdictRow {
    fn from(r: &Record) -> Self {
        match r {
            Record::Verdict(v) => v.into(),
            Record::Skipped {
                claim,
                modulus,
                reason,
            } => VerdictRow {
                kind: "skipped".into(),
                claim: claim.id().into(),
                modulus: *modulus,
                chi: None,
                h_order: None,
                set: None,
                a: None,
                eps: None,
                sample: None,
                mode: None,
                computed: None,
                target: None,
                margin: None,
                pass: false,
                vacuous: false,
                reason: Some(reason.to_string()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub problem: String,
    pub p: u32,
    pub h_order: u32,
    pub h_ratio: String,
    pub chi: Option<u32>,
    pub max_ratio: String,
    pub a: Option<u32>,
    pub b: Option<u32>,
    pub k: Option<u32>,
    pub l: Option<u32>,
    pub tuples: u64,
    pub mean_ratio: String,
    /// Counts per bin of `bin_width`, space-separated; the last bin is open.
    pub histogram: String,
    pub bin_width: String,
}

impl From<&ScanRecord> for ScanRow {
    fn from(r: &ScanRecord) -> Self {
        ScanRow {
            problem: r.problem.id().into(),
            p: r.p,
            h_order: r.h_order,
            h_ratio: r.h_ratio.to_string(),
            chi: r.chi,
            max_ratio: r.max_ratio.to_string(),
            a: r.achiever.a,
            b: r.achiever.b,
            k: r.achiever.k,
            l: r.achiever.l,
            tuples: r.tuples,
            mean_ratio: r.mean_ratio.to_string(),
            histogram: r
                .histogram
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(" "),
            bin_width: HISTOGRAM_BIN.to_string(),
        }
    }
}

/// Writes rows as json-lines or as CSV with a header.
pub fn write_rows<T: Serialize>(
    out: &mut dyn Write,
    rows: &[T],
    format: Format,
) -> Result<(), UsageError> {
    match format {
        Format::Jsonl => {
            for row in rows {
                serde_json::to_writer(&mut *out, row)?;
                out.write_all(b"\n")?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
    }
    out.flush()?;
    Ok(())
}
