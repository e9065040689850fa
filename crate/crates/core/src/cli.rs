//! The `jif` command line.
//!
//! Exit codes: 0 success, 1 data or validation error, 2 usage error.
//! Diagnostics go to the error stream as single lines prefixed `error:` or
//! `warning:`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::consistency::ReversalWitness;
use crate::corpus::{self, Corpus, RankMode, Ranking};
use crate::indicator::{compute, IndicatorKind, IndicatorSpec};
use crate::journal::{JournalData, Year};
use crate::miner::{mine_counterexamples, Candidate, SearchBounds};
use crate::published;
use crate::ratio::Ratio;

#[derive(Debug, Parser)]
#[command(
    name = "jif",
    version,
    about = "Exact journal impact factors and Z-consistency audits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the indicator for every journal in a corpus.
    Compute(TableArgs),
    /// Rank journals by indicator value (competition ranking).
    Rank(TableArgs),
    /// Smallest common uncited injection that swaps each adjacent ranked pair.
    Sensitivity {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long = "k-max", default_value_t = 100)]
        k_max: u64,
    },
    /// Exhaustively search bounded integer data for order reversals.
    Mine(MineArgs),
    /// Recompute the three worked examples and check their printed values.
    VerifyPaper(OutputArgs),
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Fail instead of skipping journals whose indicator is undefined.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Publications CSV (`journal,year,pubs`).
    #[arg(long, requires = "cits", conflicts_with = "corpus")]
    pub pubs: Option<PathBuf>,
    /// Citations CSV (`journal,citing_year,cited_year,count`).
    #[arg(long, requires = "pubs", conflicts_with = "corpus")]
    pub cits: Option<PathBuf>,
    /// Canonical JSON corpus, instead of the two CSV files.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Window length.
    #[arg(short = 'n', default_value_t = 2)]
    pub n: u32,
    /// Target year Y.
    #[arg(long, allow_negative_numbers = true)]
    pub year: i32,
    /// Diachronous only: 0 includes the publication year, 1 starts a year later.
    #[arg(short = 's', default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub s: u8,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
    /// Decimal places for the rounded column.
    #[arg(long, default_value_t = 2)]
    pub places: u32,
}

#[derive(Debug, Args)]
pub struct MineArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(short = 'n', default_value_t = 2)]
    pub n: u32,
    /// Year Y anchoring the window layout.
    #[arg(long, default_value_t = published::REFERENCE_YEAR.0, allow_negative_numbers = true)]
    pub year: i32,
    #[arg(short = 's', default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub s: u8,
    #[arg(long = "pub-max", default_value_t = 4)]
    pub pub_max: u64,
    #[arg(long = "cit-max", default_value_t = 8)]
    pub cit_max: u64,
    #[arg(long = "k-max", default_value_t = 4)]
    pub k_max: u64,
    #[arg(long, default_value_t = 10)]
    pub limit: usize,
    /// Give both journals the same publication vector.
    #[arg(long = "equal-pubs")]
    pub equal_pubs: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    SyncRoa,
    SyncAor,
    Diachronous,
}

impl From<KindArg> for IndicatorKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::SyncRoa => IndicatorKind::SyncRoa,
            KindArg::SyncAor => IndicatorKind::SyncAor,
            KindArg::Diachronous => IndicatorKind::Diachronous,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

enum Failure {
    Usage(String),
    Data(String),
}

type Outcome = Result<(), Failure>;

fn data_err(e: impl std::fmt::Display) -> Failure {
    Failure::Data(e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Data(msg)) => {
            let _ = writeln!(err, "error: {}", msg.replace('\n', " "));
            1
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Compute(args) => cmd_compute(&args, out, err),
        Command::Rank(args) => cmd_rank(&args, out, err),
        Command::Sensitivity { table, k_max } => cmd_sensitivity(&table, k_max, out, err),
        Command::Mine(args) => cmd_mine(&args, out),
        Command::VerifyPaper(args) => cmd_verify(&args, out),
    }
}

fn load_input(input: &InputArgs) -> Result<Corpus, Failure> {
    match (&input.pubs, &input.cits, &input.corpus) {
        (Some(p), Some(c), None) => corpus::load_corpus_files(p, c).map_err(data_err),
        (None, None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| data_err(format!("{}: {e}", path.display())))?;
            Corpus::from_json(&text).map_err(data_err)
        }
        _ => Err(Failure::Usage(
            "give either --pubs and --cits, or --corpus".into(),
        )),
    }
}

fn build_spec(args: &SpecArgs) -> Result<IndicatorSpec, Failure> {
    IndicatorSpec::new(args.kind.into(), args.n, Year(args.year), args.s)
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn emit(out: &mut dyn Write, text: &str) -> Outcome {
    out.write_all(text.as_bytes()).map_err(data_err)
}

fn emit_json(out: &mut dyn Write, value: &Value) -> Outcome {
    let mut text = serde_json::to_string_pretty(value).map_err(data_err)?;
    text.push('\n');
    emit(out, &text)
}

fn value_json(v: &Ratio, places: u32) -> Value {
    json!({ "exact": v.to_string(), "decimal": v.to_decimal(places) })
}

fn warn_skipped(ranking: &Ranking, err: &mut dyn Write) {
    for s in &ranking.skipped {
        let _ = writeln!(
            err,
            "warning: journal {:?} skipped: {}",
            s.journal_id, s.error
        );
    }
}

fn mode(strict: bool) -> RankMode {
    if strict {
        RankMode::Strict
    } else {
        RankMode::Lenient
    }
}

fn cmd_compute(args: &TableArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let spec = build_spec(&args.spec)?;
    let corpus = load_input(&args.input)?;
    let places = args.output.places;
    let mut rows = Vec::new();
    for (id, data) in corpus.journals() {
        match compute(data, &spec) {
            Ok(v) => rows.push((id, v)),
            Err(e) if args.strict => return Err(data_err(format!("journal {id:?}: {e}"))),
            Err(e) => {
                let _ = writeln!(err, "warning: journal {id:?} skipped: {e}");
            }
        }
    }
    match args.output.format {
        Format::Tsv => {
            let mut text = String::from("journal\tvalue\tdecimal\n");
            for (id, v) in &rows {
                text += &format!("{id}\t{v}\t{}\n", v.to_decimal(places));
            }
            emit(out, &text)
        }
        Format::Json => emit_json(
            out,
            &json!({
                "spec": spec,
                "values": rows.iter().map(|(id, v)| json!({ "journal": id, "value": value_json(v, places) })).collect::<Vec<_>>(),
            }),
        ),
    }
}

fn cmd_rank(args: &TableArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let spec = build_spec(&args.spec)?;
    let corpus = load_input(&args.input)?;
    let ranking = corpus::rank(&corpus, &spec, mode(args.strict)).map_err(data_err)?;
    warn_skipped(&ranking, err);
    let places = args.output.places;
    match args.output.format {
        Format::Tsv => {
            let mut text = String::from("rank\tjournal\tvalue\tdecimal\ttied_with\n");
            for e in &ranking.entries {
                text += &format!(
                    "{}\t{}\t{}\t{}\t{}\n",
                    e.rank,
                    e.journal_id,
                    e.value,
                    e.value.to_decimal(places),
                    e.tied_with.join(",")
                );
            }
            emit(out, &text)
        }
        Format::Json => emit_json(
            out,
            &json!({
                "spec": spec,
                "entries": ranking.entries.iter().map(|e| json!({
                    "rank": e.rank,
                    "journal": e.journal_id,
                    "value": value_json(&e.value, places),
                    "tied_with": e.tied_with,
                })).collect::<Vec<_>>(),
                "skipped": ranking.skipped.iter().map(|s| json!({
                    "journal": s.journal_id,
                    "error": s.error.to_string(),
                })).collect::<Vec<_>>(),
            }),
        ),
    }
}

fn cmd_sensitivity(
    args: &TableArgs,
    k_max: u64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let spec = build_spec(&args.spec)?;
    let corpus = load_input(&args.input)?;
    let ranking = corpus::rank(&corpus, &spec, mode(args.strict)).map_err(data_err)?;
    warn_skipped(&ranking, err);
    let rows =
        corpus::sensitivity_for_ranking(&corpus, &ranking, &spec, k_max).map_err(data_err)?;
    match args.output.format {
        Format::Tsv => {
            let mut text = String::from("upper\tlower\tyear\tmin_k\tk_max\n");
            for row in &rows {
                for (year, k) in &row.per_year_min_k {
                    let k = k.map_or_else(|| "-".to_string(), |k| k.to_string());
                    text += &format!(
                        "{}\t{}\t{year}\t{k}\t{}\n",
                        row.upper_id, row.lower_id, row.k_max
                    );
                }
            }
            emit(out, &text)
        }
        Format::Json => emit_json(out, &json!({ "spec": spec, "rows": rows })),
    }
}

fn counts(data: &JournalData, spec: &IndicatorSpec) -> (String, String) {
    let c = Candidate::from_journal(data, spec);
    let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    (join(&c.pubs), join(&c.cits))
}

fn cmd_mine(args: &MineArgs, out: &mut dyn Write) -> Outcome {
    let kind: IndicatorKind = args.kind.into();
    let bounds = SearchBounds::new(
        args.n,
        args.pub_max,
        args.cit_max,
        args.k_max,
        Year(args.year),
    )
    .map(|b| b.with_inclusion(args.s).with_equal_pubs(args.equal_pubs))
    .map_err(|e| Failure::Usage(e.to_string()))?;
    if args.limit == 0 {
        return Err(Failure::Usage("--limit must be at least 1".into()));
    }
    let witnesses = mine_counterexamples(kind, &bounds, args.limit)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let spec = bounds
        .spec(kind)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let places = args.output.places;
    match args.output.format {
        Format::Tsv => {
            let mut text = String::from(
                "left_pubs\tleft_cits\tright_pubs\tright_cits\tinjection\t\
                 left_before\tleft_before_dec\tright_before\tright_before_dec\t\
                 left_after\tleft_after_dec\tright_after\tright_after_dec\tverdict\n",
            );
            for w in &witnesses {
                text += &witness_tsv(w, &spec, places);
            }
            emit(out, &text)
        }
        Format::Json => emit_json(
            out,
            &json!({
                "kind": kind,
                "bounds": {
                    "n": bounds.n, "pub_max": bounds.pub_max, "cit_max": bounds.cit_max,
                    "k_max": bounds.k_max, "year": bounds.target_year, "s": bounds.s,
                    "equal_pubs": bounds.equal_pubs,
                },
                "witnesses": witnesses.iter().map(|w| witness_json(w, &spec, places)).collect::<Vec<_>>(),
            }),
        ),
    }
}

fn witness_tsv(w: &ReversalWitness, spec: &IndicatorSpec, places: u32) -> String {
    let s = w.scenario();
    let v = w.verdict();
    let (lp, lc) = counts(&s.left, spec);
    let (rp, rc) = counts(&s.right, spec);
    let cells: Vec<String> = [v.before.0, v.before.1, v.after.0, v.after.1]
        .iter()
        .flat_map(|r| [r.to_string(), r.to_decimal(places)])
        .collect();
    format!(
        "{lp}\t{lc}\t{rp}\t{rc}\t{}\t{}\t{}\n",
        s.injection,
        cells.join("\t"),
        v.tag
    )
}

fn witness_json(w: &ReversalWitness, spec: &IndicatorSpec, places: u32) -> Value {
    let s = w.scenario();
    let v = w.verdict();
    let side = |data: &JournalData, before: &Ratio, after: &Ratio| {
        let c = Candidate::from_journal(data, spec);
        json!({
            "pubs": c.pubs,
            "cits": c.cits,
            "before": value_json(before, places),
            "after": value_json(after, places),
        })
    };
    json!({
        "left": side(&s.left, &v.before.0, &v.after.0),
        "right": side(&s.right, &v.before.1, &v.after.1),
        "injection": s.injection.additions().iter().map(|(y, k)| json!({ "year": y, "k": k })).collect::<Vec<_>>(),
        "verdict": v.tag,
    })
}

fn cmd_verify(args: &OutputArgs, out: &mut dyn Write) -> Outcome {
    let checks = published::verify_all();
    let failed = checks.iter().filter(|c| !c.passed).count();
    match args.format {
        Format::Tsv => {
            let mut text = String::new();
            for c in &checks {
                let status = if c.passed { "ok" } else { "FAIL" };
                text += &format!(
                    "{status}\t{}\t{}\texpected {}\tgot {}\n",
                    c.table, c.quantity, c.expected, c.actual
                );
            }
            text += &format!(
                "{} of {} checks passed\n",
                checks.len() - failed,
                checks.len()
            );
            emit(out, &text)?;
        }
        Format::Json => emit_json(
            out,
            &json!({
                "checks": checks.iter().map(|c| json!({
                    "table": c.table,
                    "quantity": c.quantity,
                    "expected": c.expected,
                    "actual": c.actual,
                    "passed": c.passed,
                })).collect::<Vec<_>>(),
                "passed": failed == 0,
            }),
        )?,
    }
    if failed > 0 {
        return Err(Failure::Data(format!(
            "{failed} published-table check(s) failed"
        )));
    }
    Ok(())
}
