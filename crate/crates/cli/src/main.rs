mod cache;
mod eval;
mod render;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hzeta::engine::Engine;
use hzeta::identities::{run_suite, Fault, Suite, SuiteOptions};
use hzeta::key::{parse_rational, ConstantId, ConstantKey, Family, MIN_DIGITS};
use rug::Rational;
use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;

use cache::{params_json, Cache};
use eval::{evaluate_all, Row};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Key(hzeta::error::Error),
    #[error("{key}: {source}")]
    Eval { key: String, source: hzeta::error::Error },
    #[error("{key}: error bound {bound} is not below half a unit in the last of {digits} digits")]
    Precision { key: String, digits: u32, bound: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("failing identities: {}", .0.join("; "))]
    VerifyFailed(Vec<String>),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::VerifyFailed(_) => 1,
            CliError::Precision { .. } => 3,
            _ => 2,
        }
    }
}

#[derive(Parser)]
#[command(name = "hzeta", version, about = "Stieltjes-type constants of harmonic zeta functions")]
struct Cli {
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate a family over parameter ranges.
    Constants(ConstantsArgs),
    /// Run a verification suite and write the full report.
    Verify(VerifyArgs),
    /// Print a single constant.
    Value(ValueArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct CacheArgs {
    /// Cache directory.
    #[arg(long, env = "HZETA_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Neither read nor write the cache.
    #[arg(long)]
    no_cache: bool,
}

impl CacheArgs {
    fn open(&self) -> Result<Option<Cache>, CliError> {
        match (&self.cache_dir, self.no_cache) {
            (Some(dir), false) => Cache::open(dir).map(Some),
            _ => Ok(None),
        }
    }
}

#[derive(Args)]
struct ConstantsArgs {
    #[arg(long)]
    family: String,
    /// Values of k: `2`, `0..5` (inclusive) or `1,3,5`.
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    v: Option<String>,
    #[arg(long)]
    j: Option<String>,
    #[arg(long)]
    r: Option<String>,
    /// Rational parameter, e.g. `1/2` or `1/3,2/3`.
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    s: Option<String>,
    /// Significant digits.
    #[arg(long, default_value_t = 20)]
    digits: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    cache: CacheArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 30)]
    digits: u32,
    /// Where the full report is written.
    #[arg(long, default_value = "hzeta-verify-report.txt")]
    report: PathBuf,
    /// Flip the sign of one term of the gamma_A formula (1-based).
    #[arg(long, hide = true)]
    inject_fault: Option<usize>,
}

#[derive(Args)]
struct ValueArgs {
    /// e.g. `gammaA(k=2,m=0)`.
    #[arg(long)]
    key: String,
    #[arg(long, default_value_t = 20)]
    digits: u32,
    /// Print the exact rational value.
    #[arg(long)]
    exact: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    cache: CacheArgs,
}

fn parse_values(name: &str, spec: &str) -> Result<Vec<Rational>, CliError> {
    let bad = |msg: String| CliError::Usage(format!("--{name} {spec}: {msg}"));
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim) {
        if let Some((lo, hi)) = part.split_once("..") {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let lo: u32 = lo.trim().parse().map_err(|_| bad(format!("bad range start '{lo}'")))?;
            let hi: u32 = hi.trim().parse().map_err(|_| bad(format!("bad range end '{hi}'")))?;
            if lo > hi {
                return Err(bad("empty range".into()));
            }
            out.extend((lo..=hi).map(Rational::from));
        } else {
            out.push(parse_rational(part).map_err(|e| bad(e.to_string()))?);
        }
    }
    Ok(out)
}

fn expand(family: Family, given: &[(&str, Option<&String>)]) -> Result<Vec<ConstantId>, CliError> {
    for (name, v) in given {
        if v.is_some() && !family.params().contains(name) {
            return Err(CliError::Usage(format!("{family} has no parameter '{name}'")));
        }
    }
    let mut combos: Vec<Vec<(String, Rational)>> = vec![Vec::new()];
    for name in family.params() {
        let spec = given
            .iter()
            .find(|(n, _)| n == name)
            .and_then(|(_, v)| *v)
            .ok_or_else(|| CliError::Usage(format!("{family} needs --{name}")))?;
        let values = parse_values(name, spec)?;
        combos = combos
            .into_iter()
            .flat_map(|c| {
                values.iter().map(move |v| {
                    let mut c = c.clone();
                    c.push((name.to_string(), v.clone()));
                    c
                })
            })
            .collect();
    }
    let mut ids = combos
        .iter()
        .map(|c| ConstantId::new(family, c).map_err(CliError::Key))
        .collect::<Result<Vec<_>, _>>()?;
    ids.sort();
    ids.dedup();
    Ok(ids)
}

#[derive(Serialize)]
struct JsonRow {
    family: String,
    params: Map<String, Value>,
    digits: u32,
    value: String,
    error_bound: String,
}

impl From<&Row> for JsonRow {
    fn from(r: &Row) -> Self {
        JsonRow {
            family: r.id.family.name().to_string(),
            params: params_json(&r.id),
            digits: r.digits,
            value: r.value_string(),
            error_bound: r.bound_string(),
        }
    }
}

fn params_text(id: &ConstantId) -> String {
    id.named()
        .into_iter()
        .map(|(n, v)| format!("{n}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn render_rows(rows: &[Row], format: Format) -> String {
    match format {
        Format::Json => {
            let rows: Vec<JsonRow> = rows.iter().map(JsonRow::from).collect();
            serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n"
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["family", "params", "digits", "value", "error_bound"])
                .expect("in-memory csv");
            for r in rows {
                w.write_record([
                    r.id.family.name().to_string(),
                    params_text(&r.id),
                    r.digits.to_string(),
                    r.value_string(),
                    r.bound_string(),
                ])
                .expect("in-memory csv");
            }
            String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
        }
        Format::Text => {
            let names: Vec<String> = rows.iter().map(|r| r.id.to_string()).collect();
            let width = names.iter().map(String::len).max().unwrap_or(0);
            let mut out = String::new();
            for (n, r) in names.iter().zip(rows) {
                let v = r.value_string();
                let pad = if v.starts_with('-') { "" } else { " " };
                writeln!(out, "{n:<width$}  {pad}{v}").expect("string write");
            }
            out
        }
    }
}

fn check_digits(d: u32) -> Result<(), CliError> {
    if d < MIN_DIGITS {
        return Err(CliError::Usage(format!("--digits must be at least {MIN_DIGITS}")));
    }
    Ok(())
}

fn cmd_constants(a: &ConstantsArgs) -> Result<String, CliError> {
    check_digits(a.digits)?;
    let family = Family::from_str(&a.family).map_err(CliError::Key)?;
    let given = [
        ("k", a.k.as_ref()),
        ("m", a.m.as_ref()),
        ("v", a.v.as_ref()),
        ("j", a.j.as_ref()),
        ("r", a.r.as_ref()),
        ("a", a.a.as_ref()),
        ("s", a.s.as_ref()),
    ];
    let ids = expand(family, &given)?;
    let mut cache = a.cache.open()?;
    let rows = evaluate_all(&ids, a.digits, cache.as_mut())?;
    Ok(render_rows(&rows, a.format))
}

fn cmd_value(a: &ValueArgs) -> Result<String, CliError> {
    let key = ConstantKey::parse(&a.key, a.digits).map_err(CliError::Key)?;
    if a.exact {
        let q = key.id.exact().map_err(CliError::Key)?;
        return Ok(match a.format {
            Format::Json => {
                let mut obj = Map::new();
                obj.insert("family".into(), key.id.family.name().into());
                obj.insert("params".into(), Value::Object(params_json(&key.id)));
                obj.insert("exact".into(), q.to_string().into());
                serde_json::to_string(&obj).expect("object serializes") + "\n"
            }
            _ => format!("{q}\n"),
        });
    }
    let mut cache = a.cache.open()?;
    let rows = evaluate_all(std::slice::from_ref(&key.id), key.digits, cache.as_mut())?;
    let row = &rows[0];
    Ok(match a.format {
        Format::Json => serde_json::to_string(&JsonRow::from(row)).expect("row serializes") + "\n",
        Format::Csv => render_rows(&rows, Format::Csv),
        Format::Text => format!("{}\n", row.value_string()),
    })
}

fn cmd_verify(a: &VerifyArgs) -> Result<String, CliError> {
    check_digits(a.digits)?;
    let suite = Suite::from_str(&a.suite).map_err(CliError::Key)?;
    let opts = SuiteOptions {
        fault: a.inject_fault.map(Fault::Ev1TermSign),
    };
    let engine = Engine::with_digits(a.digits);
    let reports = run_suite(&engine, suite, &opts);
    let mut full = String::new();
    let mut summary = String::new();
    let mut failed = Vec::new();
    for r in &reports {
        writeln!(full, "{r}").expect("string write");
        let tag = if r.pass { "PASS" } else { "FAIL" };
        writeln!(summary, "{tag} {}", r.identity_id).expect("string write");
        if !r.pass {
            failed.push(r.identity_id.clone());
        }
    }
    fs::write(&a.report, &full).map_err(|e| CliError::io(&a.report, e))?;
    writeln!(
        summary,
        "{} of {} checks passed; report written to {}",
        reports.len() - failed.len(),
        reports.len(),
        a.report.display()
    )
    .expect("string write");
    if failed.is_empty() {
        Ok(summary)
    } else {
        print!("{summary}");
        Err(CliError::VerifyFailed(failed))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("hzeta: cannot configure {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Constants(a) => cmd_constants(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Value(a) => cmd_value(a),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("hzeta: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
