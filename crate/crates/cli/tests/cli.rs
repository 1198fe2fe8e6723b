use std::fs;
use std::path::PathBuf;
use std::process::Command;

use charsum_cli::records::{ScanRow, VerdictRow};
use charsum_cli::run_args;
use charsum_core::engines::{
    inverse_shift_sum, kloosterman_over_h, shifted_product_sum, shifted_sum,
};
use charsum_core::{Character, FieldCtx, Mode};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("charsum").chain(args.iter().copied());
    let code = run_args(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).map(str::trim))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

fn verdicts(text: &str) -> Vec<VerdictRow> {
    text.lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn sum_shifted_example() {
    let (code, out, _) = run(&[
        "sum",
        "--p",
        "7",
        "--chi",
        "quadratic",
        "--subgroup-order",
        "3",
        "--a",
        "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(field(&out, "value"), "-1");
    assert_eq!(field(&out, "mode"), "exact");
    let ratio: f64 = field(&out, "ratio").parse().unwrap();
    assert!((ratio - 0.37796).abs() < 5e-6);
}

#[test]
fn sum_numeric_and_explicit_set() {
    let (code, out, _) = run(&[
        "sum", "--p", "7", "--set", "1,2,4", "--a", "1", "--mode", "numeric",
    ]);
    assert_eq!(code, 0);
    let re: f64 = field(&out, "re").parse().unwrap();
    assert!((re + 1.0).abs() < 1e-12);
}

#[test]
fn sum_other_kinds() {
    let (code, out, _) = run(&[
        "sum",
        "--p",
        "7",
        "--kind",
        "inverse-shift",
        "--subgroup-order",
        "3",
        "--k",
        "1",
        "--a",
        "3",
    ]);
    assert_eq!(code, 0);
    // e_7(2) + e_7(3)
    let want = (2.0 * std::f64::consts::PI * 2.0 / 7.0).cos()
        + (2.0 * std::f64::consts::PI * 3.0 / 7.0).cos();
    assert!((field(&out, "re").parse::<f64>().unwrap() - want).abs() < 1e-12);

    let (code, out, _) = run(&[
        "sum",
        "--p",
        "13",
        "--kind",
        "product",
        "--subgroup-order",
        "4",
        "--a",
        "1",
        "--b",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(field(&out, "mode"), "exact");
    let (code, _, _) = run(&[
        "sum",
        "--p",
        "13",
        "--kind",
        "kloosterman",
        "--k",
        "1",
        "--l",
        "1",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn sum_usage_errors() {
    let cases: &[&[&str]] = &[
        &[
            "sum",
            "--p",
            "7",
            "--chi",
            "0",
            "--subgroup-order",
            "3",
            "--a",
            "1",
        ],
        &[
            "sum",
            "--p",
            "7",
            "--chi",
            "0",
            "--kind",
            "nonlinear",
            "--a",
            "1",
        ],
        &["sum", "--p", "9", "--a", "1"],
        &["sum", "--p", "7", "--subgroup-order", "4", "--a", "1"],
        &[
            "sum", "--p", "7", "--kind", "product", "--a", "1", "--b", "1",
        ],
        &["sum", "--p", "7"],
        &[
            "sum",
            "--p",
            "7",
            "--kind",
            "kloosterman",
            "--k",
            "1",
            "--l",
            "1",
            "--mode",
            "exact",
        ],
        &["sum", "--p", "7", "--chi", "6", "--a", "1"],
        &["sum", "--p", "7", "--bogus"],
    ];
    for args in cases {
        let (code, _, err) = run(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
    let (_, _, err) = run(&["sum", "--p", "7", "--chi", "0", "--a", "1"]);
    assert!(err.contains("principal"));
    let (_, _, err) = run(&["sum", "--p", "9", "--a", "1"]);
    assert!(err.contains("not an odd prime"));
}

#[test]
fn verify_small_range() {
    let (code, out, err) = run(&["verify", "--p-max", "3"]);
    assert_eq!(code, 0);
    let rows = verdicts(&out);
    assert!(rows.iter().any(|r| r.modulus == 3 && r.claim == "thm2"));
    assert!(rows.iter().all(|r| r.pass));
    assert!(err.contains(&format!("{} records", rows.len())));
}

#[test]
fn verify_identities_to_61() {
    let (code, out, _) = run(&[
        "verify",
        "--p-max",
        "61",
        "--claims",
        "eq2,granville,konyagin",
    ]);
    assert_eq!(code, 0);
    let rows = verdicts(&out);
    assert!(rows
        .iter()
        .all(|r| r.pass && r.margin.as_deref() == Some("0")));
    for claim in ["eq2", "granville", "konyagin"] {
        assert!(rows.iter().any(|r| r.claim == claim));
    }
}

#[test]
fn verify_capacity_skips_exit_one() {
    let (code, out, err) = run(&[
        "verify", "--p-min", "10007", "--p-max", "10007", "--mode", "exact", "--claims", "thm2",
    ]);
    assert_eq!(code, 1);
    let rows = verdicts(&out);
    assert_eq!(rows.len(), 1);
    assert!(rows[0].is_skipped() && !rows[0].pass);
    assert!(
        rows[0].reason.as_deref().unwrap().contains("capacity"),
        "{:?}",
        rows[0].reason
    );
    assert!(err.contains("1 skipped"));
}

#[test]
fn verify_usage_errors() {
    assert_eq!(run(&["verify", "--p-max", "7", "--claims", "nope"]).0, 2);
    assert_eq!(run(&["verify"]).0, 2);
    assert_eq!(run(&["verify", "--p-max", "7", "--workers", "0"]).0, 2);
    assert_eq!(run(&["verify", "--p-max", "7", "--eps", "0.7"]).0, 2);
}

#[test]
fn verify_output_independent_of_workers() {
    let (_, one, _) = run(&["verify", "--p-max", "31", "--seed", "9", "--workers", "1"]);
    let (_, four, _) = run(&["verify", "--p-max", "31", "--seed", "9", "--workers", "4"]);
    assert_eq!(one, four);
    let (_, other, _) = run(&["verify", "--p-max", "31", "--seed", "10", "--workers", "1"]);
    assert_ne!(one, other);
}

#[test]
fn verify_csv_and_file_output() {
    let path = tmp("verify7.csv");
    let (code, out, _) = run(&[
        "verify",
        "--p-max",
        "7",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("kind,claim,modulus,"));
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<VerdictRow> = rdr.deserialize().map(Result::unwrap).collect();
    assert!(!rows.is_empty() && rows.iter().all(|r| r.pass));
}

#[test]
fn scan_shifted_sums_at_seven() {
    let (code, out, _) = run(&["scan", "--problem", "1", "--p-min", "7", "--p-max", "7"]);
    assert_eq!(code, 0);
    let rows: Vec<ScanRow> = out
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].h_order, 3);
    let r: f64 = rows[0].max_ratio.parse().unwrap();
    assert!((r - 0.37796).abs() < 5e-6);
}

#[test]
fn scan_empty_range() {
    let (code, out, _) = run(&["scan", "--problem", "1", "--p-min", "24", "--p-max", "28"]);
    assert_eq!((code, out.as_str()), (0, ""));
    let (code, out, _) = run(&["scan", "--problem", "5", "--p-min", "50", "--p-max", "10"]);
    assert_eq!((code, out.as_str()), (0, ""));
}

#[test]
fn scan_usage_errors() {
    assert_eq!(run(&["scan", "--problem", "2", "--p-max", "10"]).0, 2);
    assert_eq!(
        run(&["scan", "--problem", "1", "--p-max", "10", "--chi", "0"]).0,
        2
    );
    assert_eq!(run(&["scan", "--problem", "1", "--p-max", "20000000"]).0, 2);
}

#[test]
fn scan_achievers_reproduce() {
    // p = 101 is the last full grid, the rest are sampled
    for problem in ["1", "5", "6"] {
        let (code, out, _) = run(&[
            "scan",
            "--problem",
            problem,
            "--p-min",
            "97",
            "--p-max",
            "140",
            "--samples",
            "300",
            "--seed",
            "3",
        ]);
        assert_eq!(code, 0);
        for row in out
            .lines()
            .map(|l| serde_json::from_str::<ScanRow>(l).unwrap())
        {
            let ctx = FieldCtx::new(row.p as u64).unwrap();
            let h = ctx.subgroup(row.h_order).unwrap();
            let value = match row.problem.as_str() {
                "p1" => {
                    let chi = Character::new(&ctx, row.chi.unwrap()).unwrap();
                    shifted_sum(&ctx, &chi, h.elements(), row.a.unwrap(), Mode::Exact).unwrap()
                }
                "p5" => {
                    let chi = Character::new(&ctx, row.chi.unwrap()).unwrap();
                    shifted_product_sum(&ctx, &chi, &h, row.a.unwrap(), row.b.unwrap(), Mode::Exact)
                        .unwrap()
                }
                "p6_kloosterman" => {
                    kloosterman_over_h(&ctx, &h, row.k.unwrap(), row.l.unwrap()).unwrap()
                }
                "p6_inverse_shift" => {
                    inverse_shift_sum(&ctx, &h, row.k.unwrap(), row.a.unwrap()).unwrap()
                }
                other => panic!("{other}"),
            };
            let ratio = value.abs() / (row.p as f64).sqrt();
            let recorded: f64 = row.max_ratio.parse().unwrap();
            assert!((ratio - recorded).abs() < 1e-9, "{row:?}");
            let hist: u64 = row
                .histogram
                .split(' ')
                .map(|c| c.parse::<u64>().unwrap())
                .sum();
            assert_eq!(hist, row.tuples);
        }
    }
}

#[test]
fn scan_output_independent_of_workers() {
    let args = |w: &'static str| {
        [
            "scan",
            "--problem",
            "5",
            "--p-min",
            "90",
            "--p-max",
            "200",
            "--samples",
            "50",
            "--chi",
            "all",
            "--workers",
            w,
        ]
    };
    assert_eq!(run(&args("1")).1, run(&args("3")).1);
}

#[test]
fn table_from_verify_output() {
    let input = tmp("verify61.jsonl");
    let (code, _, _) = run(&["verify", "--p-max", "61", "--out", input.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, out, _) = run(&["table", "--input", input.to_str().unwrap()]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(
        lines.next(),
        Some("claim,total,pass,fail,vacuous,skipped,pass_rate")
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[0][0], "thm2");
    for row in rows {
        assert_eq!(row[6], "1", "{row:?}");
        assert_eq!(row[3], "0");
    }
}

#[test]
fn table_from_scan_output_sorted_by_p() {
    let input = tmp("scan.jsonl");
    // write the records out of order
    let (_, hi, _) = run(&["scan", "--problem", "6", "--p-min", "50", "--p-max", "60"]);
    let (_, lo, _) = run(&["scan", "--problem", "6", "--p-min", "3", "--p-max", "20"]);
    fs::write(&input, format!("{hi}{lo}")).unwrap();
    let out_path = tmp("scan.csv");
    let (code, out, _) = run(&[
        "table",
        "--input",
        input.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!((code, out.as_str()), (0, ""));
    let text = fs::read_to_string(&out_path).unwrap();
    let ps: Vec<u32> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(ps.len(), 2 * 9);
    assert!(ps.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn table_edge_cases() {
    let empty = tmp("empty.jsonl");
    fs::write(&empty, "").unwrap();
    let (code, out, _) = run(&["table", "--input", empty.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "claim,total,pass,fail,vacuous,skipped,pass_rate\n");

    let bad = tmp("bad.jsonl");
    fs::write(&bad, "{\"claim\": 3}\n").unwrap();
    assert_eq!(run(&["table", "--input", bad.to_str().unwrap()]).0, 2);
    fs::write(&bad, "not json\n").unwrap();
    assert_eq!(run(&["table", "--input", bad.to_str().unwrap()]).0, 2);
    assert_eq!(run(&["table", "--input", "/nonexistent/file"]).0, 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_charsum");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["sum", "--p", "7", "--subgroup-order", "3", "--a", "1"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("0.37796"));
    assert_eq!(
        status(&["sum", "--p", "9", "--a", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(status(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(status(&["--help"]).status.code(), Some(0));
}

#[test]
fn workers_from_environment() {
    let bin = env!("CARGO_BIN_EXE_charsum");
    let out = Command::new(bin)
        .args(["verify", "--p-max", "5"])
        .env("CHARSUM_WORKERS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(bin)
        .args(["verify", "--p-max", "5"])
        .env("CHARSUM_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
