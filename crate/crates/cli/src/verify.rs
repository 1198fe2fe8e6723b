use std::io::Write;
use std::path::PathBuf;

use charsum_core::verify::{run_unit, Claim, ModePolicy, Record, SuiteConfig};
use clap::Args;
use rayon::prelude::*;

use crate::records::{write_rows, VerdictRow};
use crate::{open_out, pool, resolve_workers, Format, ModeArg, UsageError, EXIT_FAIL, EXIT_OK};

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 2)]
    pub p_min: u32,
    #[arg(long)]
    pub p_max: u32,
    /// Comma-separated claim ids; all claims when omitted.
    #[arg(long, value_delimiter = ',')]
    pub claims: Vec<Claim>,
    /// Mode for the inequality checks; identities always run exact.
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub eps: Option<f64>,
    /// Defaults to CHARSUM_WORKERS, then to the number of CPUs.
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    pub format: Format,
}

pub(crate) fn suite_config(args: &VerifyArgs) -> Result<SuiteConfig, UsageError> {
    let mut cfg = SuiteConfig {
        p_min: args.p_min,
        p_max: args.p_max,
        claims: args.claims.clone(),
        mode: match args.mode {
            ModeArg::Exact => ModePolicy::Exact,
            ModeArg::Numeric => ModePolicy::Numeric,
            ModeArg::Auto => ModePolicy::Auto,
        },
        seed: args.seed,
        ..SuiteConfig::default()
    };
    if let Some(eps) = args.eps {
        if !(eps > 0.0 && eps < 0.5) {
            return Err(UsageError(format!("--eps must lie in (0, 1/2), got {eps}")));
        }
        cfg.eps = eps;
    }
    Ok(cfg)
}

pub(crate) fn run(
    args: &VerifyArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, UsageError> {
    let cfg = suite_config(args)?;
    let workers = resolve_workers(args.workers)?;
    // each modulus is an independent, deterministic unit; the ordered collect
    // makes the output independent of the worker count
    let records: Vec<Record> = pool(workers)?.install(|| {
        (cfg.p_min..=cfg.p_max)
            .into_par_iter()
            .flat_map_iter(|n| run_unit(n, &cfg))
            .collect()
    });
    let rows: Vec<VerdictRow> = records.iter().map(VerdictRow::from).collect();
    let mut out = open_out(&args.out, stdout)?;
    write_rows(&mut *out, &rows, args.format)?;

    let skipped = rows.iter().filter(|r| r.is_skipped()).count();
    let passed = rows.iter().filter(|r| r.pass).count();
    let vacuous = rows.iter().filter(|r| r.vacuous).count();
    let failed = rows.len() - passed - skipped;
    writeln!(
        stderr,
        "verify: {} records, {passed} pass ({vacuous} vacuous), {failed} fail, {skipped} skipped",
        rows.len()
    )?;
    Ok(if failed == 0 && skipped == 0 {
        EXIT_OK
    } else {
        EXIT_FAIL
    })
}
