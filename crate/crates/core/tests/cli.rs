use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const TABLE_1A_PUBS: &str = "journal,year,pubs\nJ,2009,10\nJ,2008,10\nJ',2009,30\nJ',2008,30\n";
const TABLE_1A_CITS: &str =
    "journal,citing_year,cited_year,count\nJ,2010,2009,30\nJ,2010,2008,30\nJ',2010,2009,60\nJ',2010,2008,60\n";

fn jif(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jif"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_tables(dir: &Path, pubs: &str, cits: &str) -> (PathBuf, PathBuf) {
    let (p, c) = (dir.join("pubs.csv"), dir.join("cits.csv"));
    fs::write(&p, pubs).unwrap();
    fs::write(&c, cits).unwrap();
    (p, c)
}

fn table_args<'a>(cmd: &'a str, p: &'a Path, c: &'a Path, rest: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec![
        cmd,
        "--pubs",
        p.to_str().unwrap(),
        "--cits",
        c.to_str().unwrap(),
    ];
    v.extend_from_slice(rest);
    v
}

#[test]
fn compute_example_1a() {
    let dir = TempDir::new().unwrap();
    let (p, c) = write_tables(dir.path(), TABLE_1A_PUBS, TABLE_1A_CITS);
    let o = jif(&table_args(
        "compute",
        &p,
        &c,
        &["--kind", "sync-roa", "-n", "2", "--year", "2010"],
    ));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "journal\tvalue\tdecimal\nJ\t3/1\t3.00\nJ'\t2/1\t2.00\n"
    );
}

#[test]
fn output_is_byte_deterministic() {
    let dir = TempDir::new().unwrap();
    let (p, c) = write_tables(dir.path(), TABLE_1A_PUBS, TABLE_1A_CITS);
    for cmd in ["compute", "rank", "sensitivity"] {
        for format in ["tsv", "json"] {
            let args = table_args(
                cmd,
                &p,
                &c,
                &["--kind", "sync-roa", "--year", "2010", "--format", format],
            );
            let a = jif(&args);
            let b = jif(&args);
            assert_eq!(a.status.code(), Some(0));
            assert_eq!(a.stdout, b.stdout);
        }
    }
    let args = [
        "mine", "--kind", "sync-aor", "--limit", "20", "--format", "json",
    ];
    assert_eq!(jif(&args).stdout, jif(&args).stdout);
}

#[test]
fn json_decimals_are_rounded_exact_values() {
    let dir = TempDir::new().unwrap();
    let (p, c) = write_tables(dir.path(), TABLE_1A_PUBS, TABLE_1A_CITS);
    let o = jif(&table_args(
        "rank",
        &p,
        &c,
        &[
            "--kind", "sync-roa", "--year", "2010", "--format", "json", "--places", "3",
        ],
    ));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for e in v["entries"].as_array().unwrap() {
        let exact: impact_core::Ratio = e["value"]["exact"].as_str().unwrap().parse().unwrap();
        assert_eq!(e["value"]["decimal"].as_str().unwrap(), exact.to_decimal(3));
    }
    assert_eq!(v["entries"][0]["journal"], "J");
    assert_eq!(v["entries"][0]["rank"], 1);
}

#[test]
fn sensitivity_reports_per_year_minimum() {
    let dir = TempDir::new().unwrap();
    let (p, c) = write_tables(dir.path(), TABLE_1A_PUBS, TABLE_1A_CITS);
    let o = jif(&table_args(
        "sensitivity",
        &p,
        &c,
        &["--kind", "sync-roa", "--year", "2010", "--k-max", "100"],
    ));
    assert_eq!(
        stdout(&o),
        "upper\tlower\tyear\tmin_k\tk_max\nJ\tJ'\t2008\t21\t100\nJ\tJ'\t2009\t21\t100\n"
    );
    let o = jif(&table_args(
        "sensitivity",
        &p,
        &c,
        &["--kind", "sync-roa", "--year", "2010", "--k-max", "20"],
    ));
    assert!(stdout(&o).contains("J\tJ'\t2009\t-\t20\n"));
}

#[test]
fn corpus_json_input_matches_csv() {
    let dir = TempDir::new().unwrap();
    let (p, c) = write_tables(dir.path(), TABLE_1A_PUBS, TABLE_1A_CITS);
    let corpus = impact_core::corpus::load_corpus_files(&p, &c).unwrap();
    let json_path = dir.path().join("corpus.json");
    fs::write(&json_path, corpus.to_json()).unwrap();
    let from_csv = jif(&table_args(
        "rank",
        &p,
        &c,
        &["--kind", "sync-roa", "--year", "2010"],
    ));
    let from_json = jif(&[
        "rank",
        "--corpus",
        json_path.to_str().unwrap(),
        "--kind",
        "sync-roa",
        "--year",
        "2010",
    ]);
    assert_eq!(from_csv.stdout, from_json.stdout);
}

#[test]
fn lenient_skips_with_warning_and_strict_fails() {
    let dir = TempDir::new().unwrap();
    let (p, c) = write_tables(
        dir.path(),
        "journal,year,pubs\nA,2009,2\nA,2008,2\nB,2009,5\n",
        "journal,citing_year,cited_year,count\nA,2010,2009,1\nB,2010,2009,1\n",
    );
    let o = jif(&table_args(
        "rank",
        &p,
        &c,
        &["--kind", "sync-aor", "--year", "2010"],
    ));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stderr(&o),
        "warning: journal \"B\" skipped: zero denominator (no publications in 2008)\n"
    );
    let o = jif(&table_args(
        "rank",
        &p,
        &c,
        &["--kind", "sync-aor", "--year", "2010", "--strict"],
    ));
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error: "));
    assert_eq!(stderr(&o).lines().count(), 1);
}

#[test]
fn validation_errors_exit_1() {
    let dir = TempDir::new().unwrap();
    let (p, c) = write_tables(
        dir.path(),
        "journal,year,pubs\nJ,2009,10\nJ,2009,10\n",
        "journal,citing_year,cited_year,count\n",
    );
    let o = jif(&table_args(
        "compute",
        &p,
        &c,
        &["--kind", "sync-roa", "--year", "2010"],
    ));
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error: "));
    assert!(stderr(&o).contains(":3: duplicate row"));

    let o = jif(&[
        "compute",
        "--pubs",
        "/nonexistent/p.csv",
        "--cits",
        "/nonexistent/c.csv",
        "--kind",
        "sync-roa",
        "--year",
        "2010",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    let o = jif(&["compute", "--no-such-flag"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Usage:"));
    assert_eq!(jif(&[]).status.code(), Some(2));
    assert_eq!(
        jif(&["mine", "--kind", "sync-roa", "-s", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        jif(&["mine", "--kind", "sync-roa", "--pub-max", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(jif(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_paper_exits_zero() {
    let o = jif(&["verify-paper"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().take(15).all(|l| l.starts_with("ok\t")));
    let o = jif(&["verify-paper", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn mine_roa_rediscovers_reversals() {
    let o = jif(&[
        "mine",
        "--kind",
        "sync-roa",
        "--pub-max",
        "30",
        "--cit-max",
        "60",
        "--k-max",
        "25",
        "--limit",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 4);
    assert!(out.lines().skip(1).all(|l| l.ends_with("\tREVERSED")));
}
