use std::io::Write;
use std::path::PathBuf;

use charsum_core::scan::{scan_prime, CharSelector, Problem, ScanConfig, ScanRecord};
use charsum_core::{is_prime, FieldCtx, MAX_TABLE_PRIME};
use clap::Args;
use rayon::prelude::*;

use crate::records::{write_rows, ScanRow};
use crate::{open_out, pool, resolve_workers, Format, UsageError, EXIT_OK};

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// 1: shifted sums; 5: products of two shifts; 6: both Kloosterman-type sums.
    #[arg(long, value_parser = ["1", "5", "6"])]
    pub problem: String,
    #[arg(long, default_value_t = 3)]
    pub p_min: u64,
    #[arg(long)]
    pub p_max: u64,
    /// `quadratic`, `all`, or a dual-group index (character problems only).
    #[arg(long, default_value = "quadratic")]
    pub chi: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random parameter tuples per prime above the full-grid limit.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Largest prime whose parameter grid is enumerated in full.
    #[arg(long, default_value_t = 101)]
    pub full_grid_limit: u32,
    /// Defaults to CHARSUM_WORKERS, then to the number of CPUs.
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    pub format: Format,
}

pub(crate) fn scan_config(args: &ScanArgs) -> Result<ScanConfig, UsageError> {
    let problems = match args.problem.as_str() {
        "1" => vec![Problem::ShiftedSum],
        "5" => vec![Problem::ShiftedProduct],
        _ => vec![Problem::Kloosterman, Problem::InverseShift],
    };
    let chars = match args.chi.as_str() {
        "quadratic" => CharSelector::Quadratic,
        "all" => CharSelector::All,
        s => CharSelector::Index(s.parse().map_err(|_| {
            UsageError(format!(
                "--chi must be `quadratic`, `all` or an index, got {s:?}"
            ))
        })?),
    };
    if chars == CharSelector::Index(0) {
        return Err(UsageError(
            "the principal character is not allowed here".into(),
        ));
    }
    if args.samples == 0 {
        return Err(UsageError("--samples must be positive".into()));
    }
    Ok(ScanConfig {
        problems,
        chars,
        seed: args.seed,
        full_grid_limit: args.full_grid_limit,
        samples: args.samples,
    })
}

/// Scans every odd prime in `[p_min, p_max]`, in ascending order of `p`.
pub fn scan_range(
    p_min: u64,
    p_max: u64,
    cfg: &ScanConfig,
    workers: usize,
) -> Result<Vec<ScanRecord>, UsageError> {
    if p_max > MAX_TABLE_PRIME && p_min <= p_max {
        return Err(UsageError(format!(
            "p_max {p_max} exceeds the table limit {MAX_TABLE_PRIME}"
        )));
    }
    let primes: Vec<u64> = (p_min.max(3)..=p_max).filter(|&p| is_prime(p)).collect();
    let per_prime: Vec<Result<Vec<ScanRecord>, charsum_core::Error>> =
        pool(workers)?.install(|| {
            primes
                .par_iter()
                .map(|&p| scan_prime(&FieldCtx::new(p)?, cfg))
                .collect()
        });
    let mut out = Vec::new();
    for r in per_prime {
        out.extend(r?);
    }
    Ok(out)
}

pub(crate) fn run(args: &ScanArgs, stdout: &mut dyn Write) -> Result<i32, UsageError> {
    let cfg = scan_config(args)?;
    let workers = resolve_workers(args.workers)?;
    let records = scan_range(args.p_min, args.p_max, &cfg, workers)?;
    let rows: Vec<ScanRow> = records.iter().map(ScanRow::from).collect();
    let mut out = open_out(&args.out, stdout)?;
    write_rows(&mut *out, &rows, args.format)?;
    Ok(EXIT_OK)
}
