//! Command line driver: executes session files and runs the built-in
//! verification suites.
//!
//! Exit codes: 0 on success, 1 when a command's mathematical
//! preconditions fail (or a suite case fails), 2 on syntax errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tracealg::{
    parse_session, paper_suite, property_suite, run_session, MonomialOrder, OraclePath,
    SessionOptions, SuiteReport,
};

#[derive(Parser)]
#[command(
    name = "tracealg",
    version,
    about = "Exact trace ideals, annihilators, socles and Gorenstein verdicts over quotients of polynomial rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a session file and print each command's output
    Run(RunArgs),
    /// Run the built-in verification suites
    Check(CheckArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Session file to execute
    file: PathBuf,
    /// Emit one JSON object per command instead of text
    #[arg(long)]
    json: bool,
    /// Seed for sampling commands that do not set their own
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Monomial order used by every ring in the session
    #[arg(long, value_enum, default_value_t = OrderArg::Degrevlex)]
    order: OrderArg,
    /// Trace computation route; both cross-checks wherever the quotient
    /// is finite-dimensional
    #[arg(long, value_enum, default_value_t = OracleArg::Both)]
    oracle: OracleArg,
}

#[derive(Args)]
struct CheckArgs {
    /// Which suite to run
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    /// Emit one JSON object per case instead of text
    #[arg(long)]
    json: bool,
    /// Seed driving the property suite's sampling
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Degrevlex,
    Lex,
}

impl From<OrderArg> for MonomialOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Degrevlex => MonomialOrder::DegRevLex,
            OrderArg::Lex => MonomialOrder::Lex,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    Groebner,
    Linear,
    Both,
}

impl From<OracleArg> for OraclePath {
    fn from(o: OracleArg) -> Self {
        match o {
            OracleArg::Groebner => OraclePath::Groebner,
            OracleArg::Linear => OraclePath::Linear,
            OracleArg::Both => OraclePath::Both,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Paper,
    Property,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run(args) => run_file(&args),
        Command::Check(args) => run_check(&args),
    };
    ExitCode::from(code)
}

fn run_file(args: &RunArgs) -> u8 {
    let text = match std::fs::read_to_string(&args.file) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.file.display());
            return 1;
        }
    };
    let ast = match parse_session(&text, args.order.into()) {
        Ok(ast) => ast,
        Err(e) => {
            eprintln!("parse error: {e}");
            return 2;
        }
    };
    let opts = SessionOptions {
        json: args.json,
        seed: args.seed,
        oracle: args.oracle.into(),
    };
    let (lines, failure) = run_session(&ast, &opts);
    for line in &lines {
        println!("{line}");
    }
    match failure {
        None => 0,
        Some(f) => {
            eprintln!("error at {}:{}: {}", f.line, f.col, f.message);
            1
        }
    }
}

fn run_check(args: &CheckArgs) -> u8 {
    let mut reports: Vec<SuiteReport> = Vec::new();
    if matches!(args.suite, SuiteArg::Paper | SuiteArg::All) {
        reports.push(paper_suite());
    }
    if matches!(args.suite, SuiteArg::Property | SuiteArg::All) {
        reports.push(property_suite(args.seed));
    }
    let mut all_passed = true;
    for report in &reports {
        let mut failures = 0usize;
        for case in &report.cases {
            if !case.passed {
                failures += 1;
            }
            if args.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "suite": report.name,
                        "case": case.name,
                        "passed": case.passed,
                        "detail": case.detail,
                    })
                );
            } else {
                let tag = if case.passed { "PASS" } else { "FAIL" };
                println!("{tag} [{}] {}: {}", report.name, case.name, case.detail);
            }
        }
        if args.json {
            println!(
                "{}",
                serde_json::json!({
                    "suite": report.name,
                    "cases": report.cases.len(),
                    "failures": failures,
                    "passed": failures == 0,
                })
            );
        } else {
            println!(
                "{}: {}/{} passed",
                report.name,
                report.cases.len() - failures,
                report.cases.len()
            );
        }
        all_passed &= failures == 0;
    }
    if all_passed {
        0
    } else {
        1
    }
}
