use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fuseries_core::verifier::{fixtures, reports_json, run_suite, with_jobs, Outcome, Params, Suite};

/// Exact verification of the identities behind Fu's power series conjecture.
#[derive(Parser, Debug)]
#[command(name = "fuseries", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a group of checks and report pass/fail per check.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SuiteArg {
    Tutte,
    Template,
    Hm,
    Holonomic,
    Conjecture,
    Hilbert,
    Iso,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Tutte => Suite::Tutte,
            SuiteArg::Template => Suite::Template,
            SuiteArg::Hm => Suite::Hm,
            SuiteArg::Holonomic => Suite::Holonomic,
            SuiteArg::Conjecture => Suite::Conjecture,
            SuiteArg::Hilbert => Suite::Hilbert,
            SuiteArg::Iso => Suite::Iso,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Args, Debug)]
struct Opts {
    /// Largest dimension n (conjecture: 8, hilbert: 5).
    #[arg(long)]
    n_max: Option<u32>,
    /// Largest λ-order i of the relations.
    #[arg(long)]
    i_max: Option<u32>,
    /// Largest m (template: 8, hm: 6).
    #[arg(long)]
    m_max: Option<u32>,
    /// x-order of the combinatorial series identity.
    #[arg(long)]
    order: Option<u32>,
    /// s-degree cap (hm: 12, holonomic: 14).
    #[arg(long)]
    s_cap: Option<u32>,
    /// λ-order cap for h_m.
    #[arg(long)]
    lambda_cap: Option<u32>,
    /// Largest Tutte coefficient index.
    #[arg(long)]
    max_i: Option<u32>,
    /// Largest Tamari lattice size to enumerate.
    #[arg(long)]
    tamari_max: Option<usize>,
    /// Height of the derivative tower Q_0..Q_k.
    #[arg(long)]
    tower: Option<usize>,
    /// Number of b_l coefficients beyond b_0.
    #[arg(long)]
    b_orders: Option<usize>,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    jobs: Option<usize>,
    /// Write all reports as a JSON array to this file.
    #[arg(long)]
    emit_json: Option<PathBuf>,
    /// Pin or compare R, R̂, b_l and κ_m against files in this directory.
    #[arg(long)]
    fixtures: Option<PathBuf>,
    /// Record wall-clock milliseconds per report.
    #[arg(long)]
    timings: bool,
}

impl Opts {
    fn params(&self) -> Params {
        Params {
            n_max: self.n_max,
            i_max: self.i_max,
            m_max: self.m_max,
            order: self.order,
            s_cap: self.s_cap,
            lambda_cap: self.lambda_cap,
            max_i: self.max_i,
            tamari_max: self.tamari_max,
            tower: self.tower,
            b_orders: self.b_orders,
            timings: self.timings,
        }
    }
}

fn run(suite: Suite, opts: &Opts) -> fuseries_core::Result<Outcome> {
    let params = opts.params();
    let mut outcome = match opts.jobs {
        Some(j) => with_jobs(j.max(1), || run_suite(suite, &params))??,
        None => run_suite(suite, &params)?,
    };
    if let Some(dir) = &opts.fixtures {
        let r = fixtures(dir, &outcome.artifacts)?;
        outcome.reports.push(r);
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Verify { suite, opts } = cli.command;
    let outcome = match run(suite.into(), &opts) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    for r in &outcome.reports {
        println!("{}", r.summary_line());
    }
    if let Some(path) = &opts.emit_json {
        if let Err(e) = fs::write(path, reports_json(&outcome.reports)) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if outcome.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
