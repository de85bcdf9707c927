//! `tensq`: closed-form and oracle computations of the non-abelian tensor
//! square of metacyclic groups `g(a,b; m,n,r,s)` with `m` odd.

mod batch;
mod cache;
mod record;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tensq_core::fpgrp::{certify_nu_order, Enumeration, Verdict, DEFAULT_MAX_COSETS};
use tensq_core::oracle::{build_tensor_oracle_with, verify_bounds, verify_identities, OracleOptions, DEFAULT_ORACLE_BOUND};
use tensq_core::presentations::{nu_presentation, tensor_presentation};
use tensq_core::{validate, GroupParams};
use thiserror::Error;

use crate::batch::Manifest;
use crate::cache::Cache;
use crate::record::{compute_record, ComputeOptions};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_FORMULA: u8 = 4;
const EXIT_USAGE: u8 = 64;
const EXIT_IO: u8 = 74;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] tensq_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("bad manifest: {0}")]
    Manifest(String),
    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
    #[error("enumeration overflowed after {0} cosets")]
    Inconclusive(usize),
}

impl CliError {
    pub fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    fn exit_code(&self) -> u8 {
        use tensq_core::Error as E;
        match self {
            CliError::Core(E::Validation(_) | E::OutOfScope(_)) => EXIT_VALIDATION,
            CliError::Core(E::Resource(_)) | CliError::Inconclusive(_) => EXIT_RESOURCE,
            CliError::Core(E::FormulaInconsistency(_)) => EXIT_FORMULA,
            CliError::Core(E::Usage(_) | E::Syntax { .. }) | CliError::Manifest(_) => EXIT_USAGE,
            CliError::Core(E::Domain(_) | E::Overflow(_)) => EXIT_FORMULA,
            CliError::Io { .. } => EXIT_IO,
            CliError::ChecksFailed(_) => EXIT_CHECK_FAILED,
        }
    }
}

#[derive(Parser)]
#[command(name = "tensq", version, about = "Tensor squares of metacyclic groups g(a,b;m,n,r,s), m odd")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Tuple {
    #[arg(long, allow_negative_numbers = true)]
    m: i64,
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
    #[arg(long, allow_negative_numbers = true)]
    r: i64,
    #[arg(long, allow_negative_numbers = true)]
    s: i64,
}

impl Tuple {
    fn params(self) -> Result<GroupParams, CliError> {
        Ok(validate(self.m, self.n, self.r, self.s)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form sections, optionally checked against the oracle.
    Compute {
        #[command(flatten)]
        tuple: Tuple,
        /// Also build the relation-matrix oracle and compare.
        #[arg(long)]
        oracle: bool,
        /// Also certify |ν(G)| by coset enumeration.
        #[arg(long)]
        certify: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
        #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
        oracle_bound: u64,
        /// Write the record here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run verification suites and list PASS/FAIL per check.
    Verify {
        #[command(flatten)]
        tuple: Tuple,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
        #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
        oracle_bound: u64,
    },
    /// Print a presentation.
    Emit {
        #[command(flatten)]
        tuple: Tuple,
        #[arg(long, value_enum)]
        what: What,
        #[arg(long, value_enum, default_value_t = Format::Native)]
        format: Format,
    },
    /// Compute many tuples; writes JSON lines and a summary on stderr.
    Batch {
        /// TOML manifest; flags below are merged into it.
        manifest: Option<PathBuf>,
        #[arg(long)]
        max_order: Option<u64>,
        #[arg(long)]
        include_s0: bool,
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        certify: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
        #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
        oracle_bound: u64,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Cache directory; overrides TENSQ_CACHE_DIR.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Identities,
    Bounds,
    Nu,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Nu,
    Tensor,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Native,
    Gap,
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io(Path::new("<stdout>"), e))
        }
    }
}

#[derive(Default)]
struct Listing {
    lines: Vec<String>,
    failed: usize,
}

impl Listing {
    fn check(&mut self, ok: bool, text: String) {
        self.failed += usize::from(!ok);
        self.lines.push(format!("{} {text}", if ok { "PASS" } else { "FAIL" }));
    }

    fn note(&mut self, tag: &str, text: String) {
        self.lines.push(format!("{tag} {text}"));
    }
}

fn verify(p: &GroupParams, suite: Suite, max_cosets: usize, oracle_bound: u64) -> Result<(), CliError> {
    let mut out = Listing::default();
    let wants = |s: Suite| suite == s || suite == Suite::All;
    let model = if wants(Suite::Identities) || wants(Suite::Bounds) {
        let opts = OracleOptions {
            max_group_order: Some(oracle_bound),
            relabel: None,
        };
        Some(build_tensor_oracle_with(p, &opts)?)
    } else {
        None
    };
    if let (true, Some(model)) = (wants(Suite::Identities), &model) {
        let rep = verify_identities(model);
        for (name, count) in &rep.per_check {
            let bad: Vec<_> = rep.failures.iter().filter(|f| &f.check == name).collect();
            let mut text = format!("identity {name}: {count} instances");
            if let Some(f) = bad.first() {
                text.push_str(&format!(", {} failed (first: {})", bad.len(), f.instance));
            }
            out.check(bad.is_empty(), text);
        }
        out.note("INFO", format!("identity ns branch: {}", rep.ns_branch));
    }
    if let (true, Some(model)) = (wants(Suite::Bounds), &model) {
        let rep = verify_bounds(model);
        for g in &rep.generators {
            out.check(
                g.holds(),
                format!("bound {}: order {} divides {}", g.generator.name(), g.measured, g.bound),
            );
        }
        let first = rep.diagonal_failures.first().map(|f| format!(" (first: {})", f.instance));
        out.check(
            rep.diagonal_failures.is_empty(),
            format!(
                "bound diagonal: {} elements with o'(h) odd{}",
                rep.diagonal_checked,
                first.unwrap_or_default()
            ),
        );
    }
    let mut inconclusive = None;
    if wants(Suite::Nu) {
        let cert = certify_nu_order(p, max_cosets);
        match (cert.verdict, cert.enumeration) {
            (Verdict::Inconclusive, Enumeration::Overflow { cosets_used }) => {
                out.note(
                    "INCONCLUSIVE",
                    format!("nu: overflow after {cosets_used} cosets, predicted {}", cert.predicted),
                );
                inconclusive = Some(cosets_used);
            }
            (v, e) => out.check(
                v == Verdict::Pass,
                format!(
                    "nu: order {} predicted {} ({} cosets)",
                    e.order().unwrap_or(0),
                    cert.predicted,
                    e.cosets_used()
                ),
            ),
        }
    }
    let mut text = out.lines.join("\n");
    text.push('\n');
    write_output(None, &text)?;
    if out.failed > 0 {
        return Err(CliError::ChecksFailed(out.failed));
    }
    if let Some(c) = inconclusive {
        return Err(CliError::Inconclusive(c));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Compute {
            tuple,
            oracle,
            certify,
            max_cosets,
            oracle_bound,
            json,
        } => {
            let p = tuple.params()?;
            let opts = ComputeOptions {
                oracle,
                certify,
                max_cosets,
                oracle_bound,
            };
            let rec = compute_record(&p, &opts)?;
            let text = serde_json::to_string_pretty(&rec).expect("serializable") + "\n";
            write_output(json.as_deref(), &text)?;
            if record::is_mismatch(&rec) {
                return Err(CliError::ChecksFailed(1));
            }
            Ok(())
        }
        Command::Verify {
            tuple,
            suite,
            max_cosets,
            oracle_bound,
        } => verify(&tuple.params()?, suite, max_cosets, oracle_bound),
        Command::Emit { tuple, what, format } => {
            let p = tuple.params()?;
            let pres = match what {
                What::Nu => nu_presentation(&p),
                What::Tensor => tensor_presentation(&p),
            };
            let text = match format {
                Format::Native => pres.to_native(),
                Format::Gap => pres.to_gap(),
            };
            write_output(None, &text)
        }
        Command::Batch {
            manifest,
            max_order,
            include_s0,
            oracle,
            certify,
            max_cosets,
            oracle_bound,
            out,
            cache_dir,
        } => {
            let mut m = match &manifest {
                Some(path) => Manifest::load(path)?,
                None => Manifest::default(),
            };
            m.max_order = max_order.or(m.max_order);
            m.include_s0 |= include_s0;
            m.oracle |= oracle;
            m.certify |= certify;
            let opts = ComputeOptions {
                oracle: m.oracle,
                certify: m.certify,
                max_cosets,
                oracle_bound,
            };
            let cache = match &cache_dir {
                Some(d) => Some(Cache::open(d).map_err(|e| CliError::io(d, e))?),
                None => Cache::from_env().map_err(|e| CliError::io(Path::new(cache::CACHE_ENV), e))?,
            };
            let mut buf = Vec::new();
            let summary = batch::run(&m, &opts, cache.as_ref(), &mut buf)?;
            write_output(out.as_deref(), std::str::from_utf8(&buf).expect("JSON is UTF-8"))?;
            eprintln!(
                "batch: {} rows, {} mismatches, {} errors, {} cache hits",
                summary.rows, summary.mismatches, summary.errors, summary.cache_hits
            );
            if summary.mismatches > 0 {
                return Err(CliError::ChecksFailed(summary.mismatches));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
