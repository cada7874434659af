use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "semikit", version, about = "Finite semigroup toolkit")]
pub struct Cli {
    /// Output format for results on standard output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads for counting and audits. Results are identical
    /// for any value; 1 keeps logs reproducible.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Human-oriented lines.
    Text,
    /// One JSON record per result, newline-delimited.
    Records,
}

#[derive(Subcommand)]
pub enum Command {
    /// Build a named table and emit it as an `.sg` document.
    ///
    /// Families: cyclic N, monogenic INDEX PERIOD, left-zero N,
    /// right-zero N, brandt-b2, heisenberg P, symmetric N,
    /// opposite FILE.sg, product A.sg B.sg.
    Construct {
        /// Family name.
        name: String,
        /// Family parameters (integers, or `.sg` paths for
        /// opposite/product).
        params: Vec<String>,
        /// Write the document here instead of standard output.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },

    /// Report the classification predicates of a table, one
    /// `key=value` line per predicate.
    Classify {
        /// Table in `.sg` format.
        file: PathBuf,
    },

    /// Split a table into its finest semilattice of components and
    /// report each component plus the quotient.
    Decompose {
        /// Table in `.sg` format.
        file: PathBuf,
        /// Write the quotient and components as `.sg` files into this
        /// directory instead of printing a summary.
        #[arg(short, long)]
        out_dir: Option<PathBuf>,
    },

    /// Stream every associative table of a given order as `.sg`
    /// records separated by blank lines, or just report the count.
    Enumerate {
        #[arg(long)]
        order: usize,
        /// Print only the number of tables.
        #[arg(long)]
        count_only: bool,
        /// Keep one representative per isomorphism class.
        #[arg(long)]
        iso: bool,
        /// Keep only tables satisfying this predicate; repeatable, all
        /// must hold. Prefix with `!` to negate. Predicates:
        /// commutative, cancellative, separative, has-identity, band,
        /// regular, inverse, completely-regular, clifford, group.
        #[arg(long)]
        filter: Vec<String>,
    },

    /// Audit a theorem claim over every enumerated table up to a
    /// bound, checking the conclusion wherever the hypothesis holds.
    Verify {
        /// One of: main1, main2_part1, main2_part2, main3_part1,
        /// main3_part2, lemma31, lemma41, prop11, cor13.
        #[arg(long)]
        claim: String,
        #[arg(long, default_value_t = 4)]
        max_order: usize,
        /// First power exponent (claims main1, prop11, cor13).
        #[arg(long)]
        p: Option<u32>,
        /// Second power exponent (claims main1, prop11, cor13).
        #[arg(long)]
        q: Option<u32>,
        /// Power-map exponent (claim lemma31).
        #[arg(long)]
        k: Option<u32>,
        /// Largest starting exponent tried when hunting consecutive
        /// commuting powers.
        #[arg(long, default_value_t = 8)]
        exponent_bound: u32,
    },

    /// Re-verify every property one of the bundled counterexamples
    /// asserts. Ids: ex22, ex32, ex33, ex42, ex43.
    AuditExample {
        id: String,
    },

    /// Parse a proof script and replay every claim against its goal.
    Replay {
        /// Proof script in `.prf` format.
        file: PathBuf,
    },

    /// Print a Prover9 input that derives commutativity from the
    /// coprime power hypotheses.
    #[command(name = "emit-prover9")]
    EmitProver9 {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        /// Base theory: group or cancellative.
        #[arg(long, default_value = "group")]
        theory: String,
        /// Write the input here instead of standard output.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}
