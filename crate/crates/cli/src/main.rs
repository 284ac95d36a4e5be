mod repl;
mod session;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use session::{CmdResult, Config, Session};

/// Load, check and query the modeus archival ontology.
#[derive(Parser, Debug)]
#[command(name = "modeus", version, about)]
struct Cli {
    /// Ontology file to load; repeat for several. Defaults to the bundled corpus.
    #[arg(long = "kb", value_name = "FILE", global = true)]
    kb: Vec<PathBuf>,
    /// Skip unsupported axioms with a warning instead of failing.
    #[arg(long, global = true)]
    lax: bool,
    /// Allow distinct names to denote the same individual when counting successors.
    #[arg(long, global = true)]
    no_una: bool,
    /// Literals match only with identical datatypes.
    #[arg(long, global = true)]
    strict_literals: bool,
    /// Use asserted facts only.
    #[arg(long, global = true)]
    no_reasoning: bool,
    /// Print full IRIs instead of prefixed names.
    #[arg(long, global = true)]
    full_iris: bool,
    /// Also report parcel representations sharing one titling.
    #[arg(long, global = true)]
    lint_one_to_one: bool,
    /// Write the command output to FILE.
    #[arg(long, value_name = "FILE", global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Load ontology files and print axiom and entity counts.
    Load { files: Vec<PathBuf> },
    /// Check consistency and completeness; prints a JSON report.
    Validate,
    /// Run a SELECT query given as a file or as text.
    Query {
        query: String,
        /// Print rows as JSON instead of TSV.
        #[arg(long)]
        json: bool,
    },
    /// Show how a fact such as "member(:mappa1, :Mappa)" is derived.
    Explain { fact: String },
    /// Write the materialized facts and/or the report.
    Export {
        #[arg(long, value_name = "FILE")]
        facts: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        report: Option<PathBuf>,
    },
    /// Read commands from standard input.
    Repl,
}

fn run(cli: Cli) -> CmdResult {
    let config = Config {
        lax: cli.lax,
        no_una: cli.no_una,
        strict_literals: cli.strict_literals,
        no_reasoning: cli.no_reasoning,
        full_iris: cli.full_iris,
        lint_one_to_one: cli.lint_one_to_one,
        out: cli.out,
    };
    let mut session = Session::new(config);
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut err = std::io::stderr();
    if !cli.kb.is_empty() {
        session.add_files(&cli.kb, &mut err)?;
    }
    let code = match cli.command {
        Command::Load { files } => session.load(&files, &mut out, &mut err)?,
        Command::Validate => session.validate(&mut out)?,
        Command::Query { query, json } => session.query(&query, json, &mut out)?,
        Command::Explain { fact } => session.explain(&fact, &mut out)?,
        Command::Export { facts, report } => session.export(facts.as_deref(), report.as_deref(), &mut out)?,
        Command::Repl => {
            let stdin = std::io::stdin();
            repl::run(&mut session, &mut stdin.lock(), &mut out, &mut err)
        }
    };
    out.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) if e.broken_pipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
