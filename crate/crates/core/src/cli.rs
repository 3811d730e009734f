//! Command-line front end. Machine-readable JSON goes to `--out`, human
//! summaries to stdout and progress to stderr.

use crate::constructions::{admissible_q, tensor_mubs, wf_mubs, WfParams};
use crate::error::{Error, Result};
use crate::hermitian::{verify_mub_set, Certificate, MubSet, VerificationReport};
use crate::nfield::{reduce_mod, verify_quiver_char0};
use crate::polysys::{generate_system, PolyType};
use crate::search::{search_full, SearchOptions, SearchReportJson, DEFAULT_TABLE_CAP_BYTES};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_BAD_ARGS: i32 = 2;
pub const EXIT_RESOURCE_CAP: i32 = 3;

/// Environment variable consulted when `--threads` is absent.
pub const THREADS_ENV: &str = "GFMUB_THREADS";

#[derive(Debug, Parser)]
#[command(name = "gfmub", version, about = "Mutually unbiased bases over F_{q^2}")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exhaustive search for M and nu.
    Search {
        #[arg(long = "dim")]
        dim: usize,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        galois_quotient: bool,
        /// Ratio table memory cap in bytes.
        #[arg(long, default_value_t = DEFAULT_TABLE_CAP_BYTES)]
        table_cap: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a certificate or every witness of a search report.
    Verify {
        cert: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    #[command(subcommand)]
    Construct(Construct),
    #[command(subcommand)]
    Quiver(Quiver),
    /// Export the defining polynomial system.
    Polysys {
        #[arg(long = "dim")]
        dim: usize,
        #[arg(long)]
        bases: usize,
        #[arg(long, allow_hyphen_values = true, default_value_t = -1)]
        c: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute the tabulated search results and diff against them.
    Tables {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        table: u8,
        #[arg(long)]
        max_q: Option<u64>,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// Wootters–Fields set in dimension l^k.
    Wf {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Kronecker product of two certificates.
    Tensor {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Field orders admitting a tensor construction in dimension D.
    Admissible {
        #[arg(long = "dim")]
        dim: u64,
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Quiver {
    /// Exact verification over the number field.
    VerifyChar0 {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce to F_{q^2} for q = 5 mod 12.
    Reduce {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Txt,
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_BAD_ARGS } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::MemoryCap { .. } | Error::TableCap { .. } => EXIT_RESOURCE_CAP,
        _ => EXIT_BAD_ARGS,
    }
}

fn write_json<T: Serialize>(out: &Option<PathBuf>, value: &T) -> Result<()> {
    if let Some(path) = out {
        let s = serde_json::to_string_pretty(value)?;
        std::fs::write(path, s + "\n")?;
    }
    Ok(())
}

fn threads(flag: Option<usize>) -> Option<usize> {
    flag.or_else(|| std::env::var(THREADS_ENV).ok()?.parse().ok())
}

fn field(q: u64) -> Result<Arc<crate::gf::FieldCtx>> {
    let (p, r) = crate::arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
    Ok(Arc::new(crate::gf::FieldCtx::new(p, r, crate::gf::DEFAULT_MAX_Q)?))
}

fn print_report(label: &str, r: &VerificationReport) {
    println!(
        "{label}: {} (d = {}, {} bases, {} extra vectors)",
        if r.pass { "PASS" } else { "FAIL" },
        r.d,
        r.num_bases,
        r.num_extras
    );
    for (check, n) in &r.checks {
        println!("  {check:?}: {n} checks");
    }
    for v in &r.violations {
        println!("  violated {:?}: {:?} vs {:?}, value {}{}", v.check, v.left, v.right, v.value, v.norm.as_ref().map(|n| format!(", norm {n}")).unwrap_or_default());
    }
}

fn read_certificates(path: &Path) -> Result<Vec<Certificate>> {
    let text = std::fs::read_to_string(path)?;
    if let Ok(c) = serde_json::from_str::<Certificate>(&text) {
        return Ok(vec![c]);
    }
    let report: SearchReportJson = serde_json::from_str(&text)?;
    Ok(report.witnesses)
}

fn verify_and_write(set: &MubSet, out: &Option<PathBuf>, label: &str) -> Result<i32> {
    let report = verify_mub_set(set);
    print_report(label, &report);
    write_json(out, &set.to_certificate()?)?;
    Ok(if report.pass { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Search {
            dim,
            q,
            threads: t,
            galois_quotient,
            table_cap,
            out,
        } => {
            let opts = SearchOptions {
                threads: threads(t),
                galois_quotient,
                table_cap_bytes: table_cap,
            };
            let report = search_full(dim, q, &opts)?;
            println!("d = {dim}, q = {q}: M = {}, nu = {}", report.m, report.nu);
            println!(
                "{} inequivalent maximal sets; {} first bases, {} representatives, {} nodes, {:.2} s",
                report.witnesses.len(),
                report.stats.first_bases,
                report.stats.representatives,
                report.stats.nodes,
                report.stats.seconds
            );
            write_json(&out, &report.to_json()?)?;
            Ok(EXIT_OK)
        }
        Command::Verify { cert, out } => {
            let certs = read_certificates(&cert)?;
            let mut reports = Vec::new();
            for (k, c) in certs.iter().enumerate() {
                let set = MubSet::from_certificate(c)?;
                let r = verify_mub_set(&set);
                print_report(&format!("certificate {k}"), &r);
                reports.push(r);
            }
            write_json(&out, &reports)?;
            Ok(if reports.iter().all(|r| r.pass) { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Construct(Construct::Wf { l, k, q, out }) => {
            let ctx = field(q)?;
            let set = wf_mubs(&ctx, WfParams { l, k })?;
            verify_and_write(&set, &out, &format!("wf l = {l}, k = {k}, q = {q}"))
        }
        Command::Construct(Construct::Tensor { a, b, out }) => {
            let ca = read_certificates(&a)?;
            let cb = read_certificates(&b)?;
            let (Some(ca), Some(cb)) = (ca.first(), cb.first()) else {
                return Err(Error::Certificate("empty input".into()));
            };
            let sa = MubSet::from_certificate(ca)?;
            let sb = MubSet::from_certificate_in(sa.ctx.clone(), cb)?;
            let set = tensor_mubs(&sa, &sb)?;
            verify_and_write(&set, &out, &format!("tensor d = {}", set.d))
        }
        Command::Construct(Construct::Admissible { dim, bound, out }) => {
            let list = admissible_q(dim, bound);
            for a in &list {
                let cong: Vec<String> = a.congruences.iter().map(|(n, r)| format!("q = {r} mod {n}")).collect();
                println!("q = {} = {}^{}  ({})", a.q, a.p, a.r, cong.join(", "));
            }
            if list.is_empty() {
                println!("no admissible q <= {bound}");
            }
            write_json(&out, &list)?;
            Ok(EXIT_OK)
        }
        Command::Quiver(Quiver::VerifyChar0 { out }) => {
            let r = verify_quiver_char0();
            print_report("characteristic zero", &r);
            write_json(&out, &r)?;
            Ok(if r.pass { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Quiver(Quiver::Reduce { q, out }) => {
            let set = reduce_mod(q)?;
            verify_and_write(&set, &out, &format!("reduction mod q = {q}"))
        }
        Command::Polysys {
            dim,
            bases,
            c,
            format,
            out,
        } => {
            let sys = generate_system(dim, bases, c)?;
            println!(
                "d = {dim}, n = {bases}, c = {c}: {} variables, {} polynomials (I: {}, II: {}, III: {})",
                sys.vars.len(),
                sys.polys.len(),
                sys.count(PolyType::I),
                sys.count(PolyType::II),
                sys.count(PolyType::III)
            );
            match format {
                Format::Json => write_json(&out, &sys.to_json())?,
                Format::Txt => {
                    if let Some(path) = &out {
                        std::fs::write(path, sys.to_text())?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Tables {
            table,
            max_q,
            threads: t,
            out,
        } => {
            let cells = crate::tables::run_table(table, max_q, threads(t))?;
            for c in &cells {
                println!("{}", c.line());
            }
            let failed = cells.iter().filter(|c| !c.pass).count();
            println!("{} cells, {} failed", cells.len(), failed);
            write_json(&out, &cells)?;
            Ok(if failed == 0 { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
    }
}
