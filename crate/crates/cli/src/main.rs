//! `semikit`: one entry point for table construction, classification,
//! semilattice decomposition, exhaustive enumeration, theorem audits,
//! proof replay, and the Prover9 emitter.
//!
//! Exit codes: 0 success or claim holds, 1 violation or failed claim
//! (witness on standard output), 2 usage or parse error, 3 hypothesis
//! never satisfied. Diagnostics go to standard error, results to
//! standard output.

use clap::Parser;

mod args;
mod render;
mod run;

fn main() {
    let cli = args::Cli::parse();
    std::process::exit(run::run(cli));
}
