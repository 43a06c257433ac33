//! Command-line front end: `decide`, `construct`, `verify`, `oracle` and
//! `table`.

mod document;
mod lambdas;
mod table;

pub use document::{
    DecompositionDocument, DocumentMeta, DocumentParams, DOCUMENT_FORMAT_VERSION, GRAPH_KIND,
    MAX_DOCUMENT_PAIRS,
};
pub use lambdas::{parse_lambda_list, MAX_LAMBDAS};
pub use table::{table_rows, write_csv, TableOptions, TableRow};

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use crate::blocks::BlockCache;
use crate::error::{Error, Result};
use crate::feasibility::{decide, expected_cycle_count, necessity_certificate, Params};
use crate::multigraph::MultiGraph;
use crate::pipeline::{construct_with_cache, plan, LineDecomposition};
use crate::solver::{find_decomposition, CandidateOrder, SearchBudget, SearchMode, SearchOutcome};

pub const EXIT_OK: i32 = 0;
/// Infeasible parameters or a failed verification.
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
/// The oracle disagrees with `decide`.
pub const EXIT_CONTRADICTION: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "c4line",
    version,
    about = "4-cycle decompositions of lambda-fold line graphs of K_{m,n}"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct ParamArgs {
    m: usize,
    n: usize,
    lambda: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a decomposition exists
    Decide(ParamArgs),
    /// Build and verify a decomposition, then write it as JSON
    Construct {
        #[command(flatten)]
        params: ParamArgs,
        /// Output file; stdout when omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Block cache file
        #[arg(long, conflicts_with = "no_cache")]
        cache: Option<PathBuf>,
        /// Keep solver-built blocks in memory only
        #[arg(long)]
        no_cache: bool,
    },
    /// Check a decomposition document
    Verify { path: PathBuf },
    /// Run the exact search directly on the graph
    Oracle {
        #[command(flatten)]
        params: ParamArgs,
        /// Node limit
        #[arg(long, default_value_t = 10_000_000)]
        nodes: u64,
        /// Time limit in seconds
        #[arg(long, default_value_t = 60.0)]
        time_limit: f64,
        /// Search the whole tree instead of stopping at the first solution
        #[arg(long)]
        prove_none: bool,
        /// Try candidate cycles in reverse order
        #[arg(long)]
        reverse: bool,
        /// Write a found decomposition here
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print a CSV grid of verdicts
    Table {
        max_m: usize,
        max_n: usize,
        /// e.g. `1..4` or `1,2,8`
        lambdas: String,
        /// Construct feasible cells and run the oracle on infeasible ones
        #[arg(long)]
        check: bool,
        /// Oracle node limit per infeasible cell
        #[arg(long, default_value_t = 200_000)]
        oracle_nodes: u64,
        /// Oracle time limit per infeasible cell, in seconds
        #[arg(long, default_value_t = 5.0)]
        oracle_time_limit: f64,
        /// Block cache file
        #[arg(long, conflicts_with = "no_cache")]
        cache: Option<PathBuf>,
        #[arg(long)]
        no_cache: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Parses `args` (program name first) and runs one command. Returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Decide(p) => cmd_decide(p, out),
        Command::Construct {
            params,
            output,
            cache,
            no_cache,
        } => open_cache(cache, no_cache, err)
            .and_then(|c| cmd_construct(params, output.as_deref(), &c, out, err)),
        Command::Verify { path } => cmd_verify(&path, out),
        Command::Oracle {
            params,
            nodes,
            time_limit,
            prove_none,
            reverse,
            output,
        } => seconds(time_limit).and_then(|time_limit| {
            let budget = SearchBudget {
                node_limit: nodes,
                time_limit,
                mode: if prove_none {
                    SearchMode::ProveNone
                } else {
                    SearchMode::FindOne
                },
                order: if reverse {
                    CandidateOrder::Reversed
                } else {
                    CandidateOrder::Canonical
                },
            };
            cmd_oracle(params, budget, output.as_deref(), out)
        }),
        Command::Table {
            max_m,
            max_n,
            lambdas,
            check,
            oracle_nodes,
            oracle_time_limit,
            cache,
            no_cache,
            output,
        } => (|| {
            let lambdas = parse_lambda_list(&lambdas)?;
            let opts = TableOptions {
                check,
                oracle_nodes,
                oracle_time: seconds(oracle_time_limit)?,
            };
            let cache = open_cache(cache, no_cache, err)?;
            cmd_table(max_m, max_n, &lambdas, &opts, &cache, output.as_deref(), out)
        })(),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::NotFeasible { .. } | Error::InfeasibleBlock { .. } => EXIT_FAILURE,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::InternalVerification { .. } => EXIT_FAILURE,
        _ => EXIT_USAGE,
    }
}

fn seconds(s: f64) -> Result<Duration> {
    Duration::try_from_secs_f64(s).map_err(|_| Error::Parse(format!("invalid time limit {s}")))
}

fn params(p: ParamArgs) -> Result<Params> {
    Params::new(p.m, p.n, p.lambda)
}

/// `$XDG_DATA_HOME/c4line/blocks.json`, falling back to
/// `~/.local/share/c4line/blocks.json`.
pub fn default_cache_path() -> Option<PathBuf> {
    let base = match std::env::var_os("XDG_DATA_HOME").filter(|v| !v.is_empty()) {
        Some(dir) => PathBuf::from(dir),
        None => PathBuf::from(std::env::var_os("HOME").filter(|v| !v.is_empty())?).join(".local/share"),
    };
    Some(base.join("c4line").join("blocks.json"))
}

fn open_cache(path: Option<PathBuf>, no_cache: bool, err: &mut dyn Write) -> Result<BlockCache> {
    if no_cache {
        return Ok(BlockCache::in_memory());
    }
    let explicit = path.is_some();
    let Some(path) = path.or_else(default_cache_path) else {
        return Ok(BlockCache::in_memory());
    };
    if !explicit {
        if let Some(dir) = path.parent() {
            let _ = fs::create_dir_all(dir);
        }
    }
    match BlockCache::open(&path) {
        Ok((cache, stats)) => {
            if stats.discarded > 0 {
                let _ = writeln!(
                    err,
                    "warning: discarded {} invalid cache entries from {}",
                    stats.discarded,
                    path.display()
                );
            }
            Ok(cache)
        }
        Err(e) if !explicit => {
            let _ = writeln!(
                err,
                "warning: cache {} unusable ({e}); using memory",
                path.display()
            );
            Ok(BlockCache::in_memory())
        }
        Err(e) => Err(e),
    }
}

fn cmd_decide(p: ParamArgs, out: &mut dyn Write) -> Result<i32> {
    let p = params(p)?;
    let v = decide(p);
    writeln!(out, "params: {p}")?;
    if v.feasible {
        writeln!(out, "verdict: feasible")?;
        if let Some(tag) = v.case_tag {
            writeln!(out, "case: {tag}")?;
        }
        if let Some(mu) = v.base_multiplicity {
            writeln!(out, "base multiplicity: {mu}")?;
        }
        writeln!(out, "expected cycles: {}", expected_cycle_count(p)?)?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "verdict: infeasible")?;
        let failed: Vec<String> = v.failed_conditions.iter().map(ToString::to_string).collect();
        writeln!(out, "failed conditions: {}", failed.join(", "))?;
        let cert = necessity_certificate(p)?;
        writeln!(out, "certificate: {}", serde_json::to_string(&cert)?)?;
        writeln!(out, "certificate checks: {}", cert.check())?;
        Ok(EXIT_FAILURE)
    }
}

fn write_document(doc: &DecompositionDocument, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    let text = doc.to_json();
    match path {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_construct(
    p: ParamArgs,
    path: Option<&Path>,
    cache: &BlockCache,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let p = params(p)?;
    let plan = plan(p)?;
    let d = construct_with_cache(p, cache)?;
    if let Some(e) = cache.last_write_error() {
        let _ = writeln!(err, "warning: block cache not saved: {e}");
    }
    let doc = DecompositionDocument::from_decomposition(&d, Some(plan.to_string()));
    let report = doc.verify()?;
    if !report.is_ok() {
        return Err(Error::InternalVerification {
            what: format!("document for {p}"),
            report: report.to_string(),
        });
    }
    write_document(&doc, path, out)?;
    if let Some(path) = path {
        writeln!(
            out,
            "wrote {} cycles for {p} to {}",
            doc.cycles.len(),
            path.display()
        )?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(path: &Path, out: &mut dyn Write) -> Result<i32> {
    let text = fs::read_to_string(path)?;
    let doc = DecompositionDocument::parse(&text)?;
    let report = doc.verify()?;
    if !report.is_ok() {
        writeln!(out, "FAIL: {report}")?;
        return Ok(EXIT_FAILURE);
    }
    if doc.meta.cycle_count != doc.cycles.len() {
        writeln!(
            out,
            "FAIL: meta.cycle_count is {} but the document has {} cycles",
            doc.meta.cycle_count,
            doc.cycles.len()
        )?;
        return Ok(EXIT_FAILURE);
    }
    writeln!(out, "OK: {} cycles decompose {}", doc.cycles.len(), doc.params()?)?;
    Ok(EXIT_OK)
}

fn cmd_oracle(p: ParamArgs, budget: SearchBudget, path: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    let p = params(p)?;
    let feasible = decide(p).feasible;
    let g = MultiGraph::line_graph_kmn(p.m, p.n, p.lambda);
    match find_decomposition(&g, budget) {
        SearchOutcome::Found(d) => {
            writeln!(out, "Found {} cycles", d.len())?;
            if let Some(path) = path {
                let d = LineDecomposition::new(p, d)?;
                write_document(
                    &DecompositionDocument::from_decomposition(&d, None),
                    Some(path),
                    out,
                )?;
            }
            if !feasible {
                writeln!(out, "CONTRADICTION: decide reports {p} infeasible")?;
                return Ok(EXIT_CONTRADICTION);
            }
            Ok(EXIT_OK)
        }
        SearchOutcome::NoneExists => {
            writeln!(out, "NoneExists")?;
            if feasible {
                writeln!(out, "CONTRADICTION: decide reports {p} feasible")?;
                return Ok(EXIT_CONTRADICTION);
            }
            Ok(EXIT_OK)
        }
        SearchOutcome::BudgetExceeded(stats) => {
            writeln!(
                out,
                "BudgetExceeded after {} nodes in {:.3}s",
                stats.nodes,
                stats.elapsed.as_secs_f64()
            )?;
            Ok(EXIT_BUDGET)
        }
    }
}

fn cmd_table(
    max_m: usize,
    max_n: usize,
    lambdas: &[u32],
    opts: &TableOptions,
    cache: &BlockCache,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32> {
    let rows = table_rows(max_m, max_n, lambdas, opts, cache);
    match path {
        Some(path) => write_csv(&rows, fs::File::create(path)?)?,
        None => write_csv(&rows, &mut *out)?,
    }
    Ok(if rows.iter().any(|r| r.contradiction) {
        EXIT_CONTRADICTION
    } else {
        EXIT_OK
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("c4line").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn decide_exit_codes() {
        let (code, out, _) = call(&["decide", "3", "7", "1"]);
        assert_eq!(code, 1);
        assert!(out.contains("C3") && out.contains("HorizontalParity"), "{out}");
        let (code, out, _) = call(&["decide", "2", "2", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("expected cycles: 1"));
        let (code, out, _) = call(&["decide", "2", "5", "8"]);
        assert_eq!(code, 0);
        assert!(out.contains("expected cycles: 50"));
        assert_eq!(call(&["decide", "1", "2", "1"]).0, 2);
        assert_eq!(call(&["decide", "x", "2", "1"]).0, 2);
        assert_eq!(call(&["decide"]).0, 2);
    }

    #[test]
    fn help_and_version() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("construct"));
        assert_eq!(call(&["--version"]).0, 0);
    }

    #[test]
    fn construct_to_stdout() {
        let (code, out, _) = call(&["construct", "3", "4", "2", "--no-cache"]);
        assert_eq!(code, 0);
        let doc = DecompositionDocument::parse(&out).unwrap();
        assert_eq!(doc.cycles.len(), 15);
        assert_eq!(call(&["construct", "2", "3", "8", "--no-cache"]).0, 1);
    }

    #[test]
    fn oracle_outcomes() {
        let (code, out, _) = call(&["oracle", "2", "3", "4"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("NoneExists"));
        let (code, out, _) = call(&["oracle", "2", "2", "1"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("Found 1 cycles"));
        let (code, out, _) = call(&["oracle", "3", "3", "2", "--nodes", "1"]);
        assert_eq!(code, 3);
        assert!(out.starts_with("BudgetExceeded"));
        assert_eq!(call(&["oracle", "2", "2", "1", "--time-limit", "-1"]).0, 2);
    }

    #[test]
    fn table_output() {
        let (code, out, _) = call(&["table", "2", "5", "8", "--check", "--no-cache"]);
        assert_eq!(code, 0);
        assert!(out.contains("2,5,8,true,,50,verified 50 cycles"), "{out}");
        assert_eq!(call(&["table", "2", "2", "0"]).0, 2);
    }
}
