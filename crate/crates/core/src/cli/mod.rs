//! Command-line front end: documents, corpus, cache and the `lucascert` binary's argument handling.

pub mod cache;
pub mod corpus;
pub mod document;
pub mod run;

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

pub use cache::{Cache, CACHE_ENV};
pub use document::{emit_problem, emit_report, parse_problem, DocumentError, Problem, ProblemDocument};
pub use run::{run_command, Command, CommandOutput, ExitStatus, Flags};

#[derive(Debug, Parser)]
#[command(name = "lucascert", version, about = "Certify and check Lucas congruences of hypergeometric series")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Primes to check (comma separated or repeated)
    #[arg(long, global = true, value_delimiter = ',')]
    p: Vec<u64>,
    /// Lucas exponent k (check modulo p, digit blocks of size p^k)
    #[arg(long, global = true)]
    k: Option<u32>,
    /// Largest residue coordinate v checked
    #[arg(long, global = true)]
    vmax: Option<u64>,
    /// Largest m coordinate checked
    #[arg(long, global = true)]
    mmax: Option<u64>,
    /// Number of coefficients (coeffs) or series order N (relation search)
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Height bound H for rational fractions
    #[arg(long, global = true)]
    height: Option<usize>,
    /// Degree bound for monomial relations
    #[arg(long, global = true)]
    dmax: Option<u32>,
    /// Cache directory (default: $LUCASCERT_CACHE_DIR; no caching if unset)
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
    /// Print the full JSON report instead of a summary line
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Debug, Args)]
struct Input {
    /// Problem document; `-` reads standard input
    #[arg(required_unless_present = "corpus")]
    file: Option<PathBuf>,
    /// Use a corpus entry instead of a file
    #[arg(long, conflicts_with = "file")]
    corpus: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Factorial ratio to hypergeometric parameters
    Translate(Input),
    /// Search for a certificate of the Lucas property
    Certify(Input),
    /// Brute-force p^k-Lucas congruences on a box
    Verify(Input),
    /// p-adic valuations of coefficients
    Valuation(Input),
    /// First coefficients of the series
    Coeffs(Input),
    /// Bounded search for monomial relations
    RelationSearch(Input),
    /// Independence verdict for a list of series
    Verdict(Input),
    /// Bundled example corpus
    #[command(subcommand)]
    Corpus(CorpusCmd),
}

#[derive(Debug, Subcommand)]
enum CorpusCmd {
    /// List entry ids
    List,
    /// Check entries against their expectations (all when no id is given)
    Run { ids: Vec<String> },
    /// Print one entry
    Show { id: String },
}

fn load(input: &Input) -> Result<ProblemDocument, String> {
    if let Some(id) = &input.corpus {
        return corpus::entry(id).map(|e| e.document.clone()).ok_or_else(|| format!("unknown corpus entry {id:?}"));
    }
    let path = input.file.as_ref().expect("clap enforces file or --corpus");
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?
    };
    parse_problem(&text).map_err(|e| e.to_string())
}

fn run_corpus_cmd(c: &CorpusCmd, json_out: bool, out: &mut dyn Write) -> std::io::Result<ExitStatus> {
    match c {
        CorpusCmd::List => {
            let rows: Vec<_> = corpus::corpus()
                .iter()
                .map(|e| json!({ "id": e.id, "kind": e.raw.kind, "basis": e.basis }))
                .collect();
            if json_out {
                write!(out, "{}", emit_report(&rows))?;
            } else {
                for e in corpus::corpus() {
                    writeln!(out, "{:<36} {:<16} {}", e.id, format!("{:?}", e.raw.kind).to_lowercase(), e.basis)?;
                }
            }
            Ok(ExitStatus::Ok)
        }
        CorpusCmd::Run { ids } => match corpus::run_corpus(ids) {
            Ok(results) => {
                let failed = results.iter().filter(|r| !r.ok).count();
                if json_out {
                    let report = json!({ "passed": results.len() - failed, "failed": failed, "entries": results });
                    write!(out, "{}", emit_report(&report))?;
                } else {
                    for r in &results {
                        writeln!(out, "{} {}", if r.ok { "ok  " } else { "FAIL" }, r.id)?;
                        for c in r.checks.iter().filter(|c| !c.ok) {
                            writeln!(out, "     {}: {}", c.check, c.detail)?;
                        }
                    }
                    writeln!(out, "{} passed, {} failed", results.len() - failed, failed)?;
                }
                Ok(if failed == 0 { ExitStatus::Ok } else { ExitStatus::Failed })
            }
            Err(m) => {
                writeln!(out, "error: {m}")?;
                Ok(ExitStatus::Usage)
            }
        },
        CorpusCmd::Show { id } => match corpus::entry(id) {
            Some(e) => {
                let doc = serde_json::to_value(e.document.to_raw()).unwrap();
                let report = json!({ "id": e.id, "basis": e.basis, "document": doc, "expect": e.expect });
                write!(out, "{}", emit_report(&report))?;
                Ok(ExitStatus::Ok)
            }
            None => {
                writeln!(out, "error: unknown corpus entry {id:?}")?;
                Ok(ExitStatus::Usage)
            }
        },
    }
}

/// Runs the binary with explicit arguments and sinks; returns the process exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = write!(err, "{e}");
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => ExitStatus::Usage.code(),
            };
        }
    };
    let c = &cli.common;
    let (cmd, input) = match &cli.cmd {
        Cmd::Translate(i) => (Command::Translate, i),
        Cmd::Certify(i) => (Command::Certify, i),
        Cmd::Verify(i) => (Command::Verify, i),
        Cmd::Valuation(i) => (Command::Valuation, i),
        Cmd::Coeffs(i) => (Command::Coeffs, i),
        Cmd::RelationSearch(i) => (Command::RelationSearch, i),
        Cmd::Verdict(i) => (Command::Verdict, i),
        Cmd::Corpus(cc) => {
            return match run_corpus_cmd(cc, c.json, out) {
                Ok(s) => s.code(),
                Err(_) => ExitStatus::Usage.code(),
            }
        }
    };
    let doc = match load(input) {
        Ok(d) => d,
        Err(m) => {
            let _ = writeln!(err, "error: {m}");
            return ExitStatus::Usage.code();
        }
    };
    let flags = Flags {
        p: c.p.clone(),
        k: c.k,
        v_max: c.vmax,
        m_max: c.mmax,
        order: c.order,
        height: c.height,
        dmax: c.dmax,
        cache: Cache::resolve(c.cache_dir.as_deref(), c.no_cache),
    };
    let result = run_command(cmd, &doc, &flags);
    let written = if c.json {
        write!(out, "{}", emit_report(&result.report))
    } else if result.status == ExitStatus::Usage {
        writeln!(err, "{}", result.summary)
    } else {
        writeln!(out, "{}", result.summary)
    };
    if written.is_err() {
        return ExitStatus::Usage.code();
    }
    result.status.code()
}

pub fn main_entry() -> i32 {
    main_with(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
