//! The `tauforge` command line.
//!
//! Exit codes: 0 success, 1 verification failure or I/O error, 2 usage error.

pub mod suites;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::exact_core::format_rational;
use crate::hurwitz::{HurwitzOracle, HurwitzSource, HurwitzTable, OracleBounds};
use crate::intersection::{
    gate_valid_keys, hodge_solve, write_correlators, write_hodge, CorrelatorTable, HodgeOptions,
    HodgeTable, Window,
};
use crate::partitions::Partition;
use crate::report::Report;
use crate::symmetrize::f_table;

pub const CACHE_ENV: &str = "TAUFORGE_CACHE_DIR";
pub const CACHE_FILE: &str = "hurwitz.jsonl";
const DEFAULT_CACHE_DIR: &str = ".tauforge-cache";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Parser)]
#[command(name = "tauforge", version, about = "Exact Hurwitz numbers, psi-class correlators and linear Hodge integrals")]
pub struct Cli {
    /// Directory holding the Hurwitz number cache
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Print only values; verification prints nothing and reports by exit code
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Psi-class correlator <tau_b1 ... tau_bn>_g
    Tau {
        #[arg(long)]
        g: u32,
        #[arg(long, value_parser = parse_list)]
        b: IntList,
    },
    /// Simple Hurwitz number H_{g,mu}
    Hurwitz {
        #[arg(long)]
        g: u32,
        #[arg(long, value_parser = parse_partition)]
        mu: Partition,
        /// Also count by brute force and compare
        #[arg(long)]
        oracle: bool,
    },
    /// Linear Hodge integrals <tau_b lambda_k>_g with n marked points
    Hodge {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        max_part: u32,
    },
    /// Coefficients f(j, i) of F_i(y)
    Ftable {
        #[arg(long, default_value_t = 15)]
        imax: u32,
    },
    /// Run a verification suite
    Verify(VerifyArgs),
    /// Write a table to a file
    Export(ExportArgs),
    /// Manage the Hurwitz number cache
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Kdv,
    CutjoinPde,
    Elsv,
    Dvv,
    Lemma31,
    Lemma32,
    Ftable,
    Master,
    Oracle,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long)]
    pub g: Option<u32>,
    /// Point count (master, lemma31, elsv) or largest KdV index (kdv)
    #[arg(long)]
    pub n: Option<usize>,
    /// Total x-degree (master, lemma31) or series order (lemma32)
    #[arg(long = "N")]
    pub big_n: Option<usize>,
    /// KdV window: number of times t_0..t_{K-1}
    #[arg(long = "K")]
    pub big_k: Option<usize>,
    /// KdV window: total degree
    #[arg(long = "D")]
    pub big_d: Option<usize>,
    #[arg(long)]
    pub dmax: Option<u32>,
    #[arg(long)]
    pub rmax: Option<u32>,
    #[arg(long)]
    pub imax: Option<u32>,
    /// Largest 2g - 2 + n (dvv)
    #[arg(long)]
    pub max_euler: Option<u32>,
    /// Print every check, not only failures
    #[arg(long, short)]
    pub verbose: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Table {
    Hurwitz,
    Tau,
    Hodge,
    Ftable,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(value_enum)]
    pub table: Table,
    pub path: PathBuf,
    /// tau: largest 2g - 2 + n
    #[arg(long, default_value_t = 4)]
    pub max_euler: u32,
    /// hodge: genus and point count (default: all g <= 2, n <= 2)
    #[arg(long)]
    pub g: Option<u32>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 15)]
    pub imax: u32,
}

#[derive(Debug, Subcommand)]
pub enum CacheAction {
    /// Delete the cache file
    Clear,
    /// Show the cache location and entry count
    Stats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntList(pub Vec<u32>);

fn parse_list(s: &str) -> std::result::Result<IntList, String> {
    if s.trim().is_empty() {
        return Err("expected a comma-separated list of integers".into());
    }
    s.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(IntList)
}

fn parse_partition(s: &str) -> std::result::Result<Partition, String> {
    Partition::new(parse_list(s)?.0).map_err(|e| e.to_string())
}

/// The resolved settings of one invocation.
#[derive(Debug, Clone)]
pub struct CliConfig {
    pub cache_dir: PathBuf,
    pub format: Option<Format>,
    pub quiet: bool,
}

impl CliConfig {
    pub fn cache_file(&self) -> PathBuf {
        self.cache_dir.join(CACHE_FILE)
    }

    fn open_table(&self) -> Result<HurwitzTable> {
        std::fs::create_dir_all(&self.cache_dir)?;
        HurwitzTable::with_cache_file(&self.cache_file())
    }
}

enum Failure {
    Usage(String),
    Failed(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Precondition(_)
            | Error::OracleOutOfRange { .. }
            | Error::UnstableKey(_)
            | Error::InvalidPartition(_)
            | Error::InsufficientPartitions { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Failed(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Failed(e.to_string())
    }
}

type CliResult = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let config = CliConfig {
        cache_dir: cli.cache_dir.unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR)),
        format: cli.format,
        quiet: cli.quiet,
    };
    match dispatch(&config, cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Verification) => 1,
        Err(Failure::Failed(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
    }
}

fn dispatch(config: &CliConfig, command: Command, out: &mut dyn Write) -> CliResult {
    match command {
        Command::Tau { g, b } => cmd_tau(config, g, &b.0, out),
        Command::Hurwitz { g, mu, oracle } => cmd_hurwitz(config, g, &mu, oracle, out),
        Command::Hodge { g, n, max_part } => cmd_hodge(config, g, n, max_part, out),
        Command::Ftable { imax } => cmd_ftable(config, imax, out),
        Command::Verify(args) => cmd_verify(config, &args, out),
        Command::Export(args) => cmd_export(config, &args, out),
        Command::Cache { action } => cmd_cache(config, action, out),
    }
}

fn csv_list(v: &[u32]) -> String {
    let s: Vec<String> = v.iter().map(u32::to_string).collect();
    format!("\"{}\"", s.join(","))
}

fn cmd_tau(config: &CliConfig, g: u32, b: &[u32], out: &mut dyn Write) -> CliResult {
    let v = format_rational(&CorrelatorTable::new().tau(g, b));
    match config.format {
        Some(Format::Json) => writeln!(out, "{}", json!({"g": g, "b": b, "v": v}))?,
        Some(Format::Csv) => writeln!(out, "g,b,v\n{g},{},{v}", csv_list(b))?,
        _ => writeln!(out, "{v}")?,
    }
    Ok(())
}

fn cmd_hurwitz(config: &CliConfig, g: u32, mu: &Partition, oracle: bool, out: &mut dyn Write) -> CliResult {
    let table = config.open_table()?;
    let h = table.hurwitz(g, mu)?;
    table.flush()?;
    let agree = if oracle {
        let o = HurwitzOracle::new(OracleBounds::default()).hurwitz(g, mu)?;
        Some((o == h, o))
    } else {
        None
    };
    let hs = format_rational(&h);
    match config.format {
        Some(Format::Json) => {
            let mut rec = json!({"g": g, "mu": mu.parts(), "h": hs});
            if let Some((ok, o)) = &agree {
                rec["oracle"] = json!(format_rational(o));
                rec["agree"] = json!(ok);
            }
            writeln!(out, "{rec}")?;
        }
        Some(Format::Csv) => writeln!(out, "g,mu,h\n{g},{},{hs}", csv_list(mu.parts()))?,
        _ => match &agree {
            Some((true, _)) => writeln!(out, "{hs} (oracle: agree)")?,
            Some((false, o)) => writeln!(out, "{hs} (oracle: disagree, oracle count {})", format_rational(o))?,
            None => writeln!(out, "{hs}")?,
        },
    }
    match agree {
        Some((false, _)) => Err(Failure::Verification),
        _ => Ok(()),
    }
}

fn hodge_table(config: &CliConfig, cases: &[(u32, usize)], max_part: u32) -> std::result::Result<HodgeTable, Failure> {
    let source = config.open_table()?;
    let options = HodgeOptions {
        max_part,
        ..HodgeOptions::default()
    };
    let mut all = HodgeTable::new();
    for &(g, n) in cases {
        all.extend(hodge_solve(&source, g, n, options)?.table);
    }
    source.flush()?;
    Ok(all)
}

fn cmd_hodge(config: &CliConfig, g: u32, n: usize, max_part: u32, out: &mut dyn Write) -> CliResult {
    let table = hodge_table(config, &[(g, n)], max_part)?;
    match config.format {
        Some(Format::Json) => write_hodge(&mut &mut *out, table.iter())?,
        Some(Format::Csv) => {
            writeln!(out, "g,b,k,v")?;
            for (key, v) in &table {
                writeln!(out, "{},{},{},{}", key.g, csv_list(&key.b), key.k, format_rational(v))?;
            }
        }
        _ => {
            for (key, v) in &table {
                writeln!(out, "{key} = {}", format_rational(v))?;
            }
        }
    }
    Ok(())
}

fn cmd_ftable(config: &CliConfig, imax: u32, out: &mut dyn Write) -> CliResult {
    let t = f_table(imax)?;
    match config.format {
        Some(Format::Json) => {
            let rows: Vec<_> = t
                .entries()
                .map(|(i, j, v)| json!({"i": i, "j": j, "f": format_rational(v)}))
                .collect();
            writeln!(out, "{}", serde_json::Value::Array(rows))?;
        }
        Some(Format::Csv) => t.write_csv(&mut &mut *out)?,
        _ => {
            for (i, j, v) in t.entries() {
                writeln!(out, "f({j},{i}) = {}", format_rational(v))?;
            }
        }
    }
    Ok(())
}

fn single_or(g: Option<u32>, n: Option<usize>, default: &[(u32, usize)]) -> Result<Vec<(u32, usize)>> {
    match (g, n) {
        (Some(g), Some(n)) => Ok(vec![(g, n)]),
        (None, None) => Ok(default.to_vec()),
        _ => Err(Error::Precondition("--g and --n must be given together".into())),
    }
}

/// Builds the report for one suite from its flags and defaults.
pub fn build_report(table: &HurwitzTable, args: &VerifyArgs) -> Result<Report> {
    let cases = |default: &[(u32, usize)]| single_or(args.g, args.n, default);
    match args.suite {
        Suite::Oracle => suites::oracle_suite(table, args.dmax.unwrap_or(6), args.rmax.unwrap_or(10)),
        Suite::CutjoinPde => suites::cutjoin_suite(table, args.dmax.unwrap_or(5), args.rmax.unwrap_or(8)),
        Suite::Elsv => suites::elsv_suite(table, &cases(suites::ELSV_CASES)?, HodgeOptions::default()),
        Suite::Dvv => suites::dvv_suite(table, args.max_euler.unwrap_or(3), args.max_euler.unwrap_or(4)),
        Suite::Kdv => suites::kdv_suite(
            args.n.unwrap_or(4) as u32,
            Window::new(args.big_k.unwrap_or(4), args.big_d.unwrap_or(4)),
        ),
        Suite::Lemma31 => suites::lemma31_suite(table, &cases(suites::LEMMA31_CASES)?, args.big_n.unwrap_or(8)),
        Suite::Lemma32 => suites::lemma32_suite(args.imax.unwrap_or(6), args.big_n.unwrap_or(20), 30),
        Suite::Ftable => suites::ftable_suite(args.imax.unwrap_or(15)),
        Suite::Master => {
            let explicit = args.g.is_some() || args.n.is_some();
            let list = cases(suites::MASTER_CASES)?;
            let exploratory = if explicit { &[][..] } else { suites::MASTER_EXPLORATORY };
            suites::master_suite(table, &list, exploratory, args.big_n.unwrap_or(8))
        }
        Suite::All => suites::all_suites(table),
    }
}

fn check_bounds(args: &VerifyArgs) -> CliResult {
    let too_big = |v: Option<usize>, max: usize| v.is_some_and(|v| v > max);
    if too_big(args.big_k, 8) || too_big(args.big_d, 8) || too_big(args.big_n, 30) || args.imax.is_some_and(|i| i > 40) {
        return Err(Failure::Usage("orders beyond desk-scale bounds (K, D <= 8, N <= 30, imax <= 40)".into()));
    }
    Ok(())
}

fn cmd_verify(config: &CliConfig, args: &VerifyArgs, out: &mut dyn Write) -> CliResult {
    check_bounds(args)?;
    let table = config.open_table()?;
    let report = build_report(&table, args);
    table.flush()?;
    let report = report?;
    if !config.quiet {
        match config.format {
            Some(Format::Json) => writeln!(out, "{}", report.to_json())?,
            Some(Format::Csv) => {
                writeln!(out, "name,pass,counterexample")?;
                for c in &report.checks {
                    let ce = c.counterexample.as_deref().unwrap_or("").replace('"', "\"\"");
                    writeln!(out, "\"{}\",{},\"{ce}\"", c.name.replace('"', "\"\""), c.pass)?;
                }
            }
            _ => write!(out, "{}", report.to_plain(args.verbose))?,
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn create(path: &Path) -> std::result::Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::Failed(format!("{}: {e}", path.display())))
}

fn cmd_export(config: &CliConfig, args: &ExportArgs, out: &mut dyn Write) -> CliResult {
    let rows = match args.table {
        Table::Hurwitz => {
            let file = config.cache_file();
            let table = if file.exists() {
                HurwitzTable::cache_load(&file)?
            } else {
                HurwitzTable::new()
            };
            create(&args.path)?;
            table.cache_store(&args.path)?;
            table.len()
        }
        Table::Tau => {
            let t = CorrelatorTable::new();
            let keys = gate_valid_keys(args.max_euler);
            let values: Vec<_> = keys.iter().map(|k| t.tau(k.g, &k.b)).collect();
            let mut w = create(&args.path)?;
            write_correlators(&mut w, keys.iter().zip(&values))?;
            w.flush()?;
            keys.len()
        }
        Table::Hodge => {
            let cases = single_or(args.g, args.n, suites::ELSV_CASES)?;
            let table = hodge_table(config, &cases, HodgeOptions::default().max_part)?;
            let mut w = create(&args.path)?;
            write_hodge(&mut w, table.iter())?;
            w.flush()?;
            table.len()
        }
        Table::Ftable => {
            let t = f_table(args.imax)?;
            let mut w = create(&args.path)?;
            if config.format == Some(Format::Json) {
                for (i, j, v) in t.entries() {
                    writeln!(w, "{}", json!({"i": i, "j": j, "f": format_rational(v)}))?;
                }
            } else {
                t.write_csv(&mut w)?;
            }
            w.flush()?;
            t.entries().count()
        }
    };
    if !config.quiet {
        writeln!(out, "wrote {rows} rows to {}", args.path.display())?;
    }
    Ok(())
}

fn cmd_cache(config: &CliConfig, action: CacheAction, out: &mut dyn Write) -> CliResult {
    let file = config.cache_file();
    match action {
        CacheAction::Clear => {
            if file.exists() {
                std::fs::remove_file(&file)?;
            }
            if !config.quiet {
                writeln!(out, "cleared {}", file.display())?;
            }
        }
        CacheAction::Stats => {
            let n = if file.exists() { HurwitzTable::cache_load(&file)?.len() } else { 0 };
            match config.format {
                Some(Format::Json) => writeln!(out, "{}", json!({"path": file.display().to_string(), "entries": n}))?,
                _ => writeln!(out, "{}: {n} entries", file.display())?,
            }
        }
    }
    Ok(())
}
