//! `feec`: verification sweeps, basis tables and worked examples.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use feec_kernel::polyform::Family;
use feec_kernel::verify::commands::{
    basis_table, counterexample, gram_table, render_counterexample,
};
use feec_kernel::verify::two_cell::{two_cell_continuity, TwoCellMesh};
use feec_kernel::verify::{run_suite, write_jsonl, Config};

#[derive(Parser)]
#[command(
    name = "feec",
    version,
    about = "Exact checks for polynomial differential forms on a simplex"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite and write JSON Lines reports.
    Verify {
        /// JSON config file; flags below override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Base seed for random simplices and forms
        #[arg(long)]
        seed: Option<u64>,
        /// Largest simplex dimension (default 3)
        #[arg(long)]
        max_n: Option<usize>,
        /// Cap on the polynomial degree (default depends on n)
        #[arg(long)]
        max_r: Option<u32>,
        /// Allow n = 4.
        #[arg(long)]
        include_n4: bool,
        /// Restrict to the named statements (repeatable).
        #[arg(long = "statement")]
        statements: Vec<String>,
        /// Output file (stdout by default).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record per-case wall time (makes output nondeterministic).
        #[arg(long)]
        timing: bool,
    },
    /// Geometrically decomposed basis of P_rΛ^k or P⁻_rΛ^k.
    Basis(SpaceArgs),
    /// ⋆̊ Gram matrix of the basis of P_rΛ^k or P⁻_rΛ^k.
    Gram(SpaceArgs),
    /// Reproduce the incompatibility examples for the legacy extensions.
    Counterexample {
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Trace continuity of Ė across two simplices sharing a facet.
    TwoCell(SpaceArgs),
    /// List the registered statements.
    Statements,
}

#[derive(Args)]
struct SpaceArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    r: u32,
    #[arg(long, default_value = "full")]
    family: Family,
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn exit(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Verify {
            config,
            seed,
            max_n,
            max_r,
            include_n4,
            statements,
            out,
            timing,
        } => {
            let mut cfg = match &config {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    Config::from_json(&text)
                        .with_context(|| format!("parsing {}", path.display()))?
                }
                None => Config::default(),
            };
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(n) = max_n {
                cfg.max_n = n;
            }
            if max_r.is_some() {
                cfg.max_r = max_r;
            }
            cfg.include_n4 |= include_n4;
            cfg.timing |= timing;
            if !statements.is_empty() {
                cfg.statements = Some(statements);
            }
            cfg.validate().context("invalid configuration")?;
            let reports = run_suite(&cfg)?;
            match &out {
                Some(path) => {
                    let file = File::create(path)
                        .with_context(|| format!("creating {}", path.display()))?;
                    let mut w = BufWriter::new(file);
                    write_jsonl(&reports, &mut w)?;
                    w.flush()?;
                }
                None => write_jsonl(&reports, io::stdout().lock())?,
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            eprintln!(
                "{} cases, {} passed, {} failed",
                reports.len(),
                reports.len() - failed,
                failed
            );
            Ok(exit(failed == 0))
        }
        Command::Basis(a) => {
            let table = basis_table(a.n, a.k, a.r, a.family)?;
            print_json(&table)?;
            Ok(exit(table.direct_sum))
        }
        Command::Gram(a) => {
            let table = gram_table(a.n, a.k, a.r, a.family)?;
            print_json(&table)?;
            Ok(exit(table.symmetric && table.positive_definite))
        }
        Command::Counterexample { json } => {
            let ex = counterexample()?;
            if json {
                print_json(&ex)?;
            } else {
                write!(io::stdout().lock(), "{}", render_counterexample(&ex))?;
            }
            Ok(exit(ex.holds()))
        }
        Command::TwoCell(a) => {
            let mesh = TwoCellMesh::reference(a.n)?;
            let report = two_cell_continuity(&mesh, a.k, a.r, a.family)?;
            print_json(&report)?;
            Ok(exit(report.holds()))
        }
        Command::Statements => {
            let mut out = io::stdout().lock();
            for st in feec_kernel::verify::statements() {
                writeln!(out, "{:<34} {}", st.name, st.about)?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        // a closed pipe (`feec ... | head`) is not an error
        Err(e)
            if e.downcast_ref::<io::Error>()
                .is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe) =>
        {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
