use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use wordlab::enumeration::DEFAULT_BUDGET;

/// Subword complexity, de Bruijn words, Sturmian words and complexity-sequence
/// censuses.
#[derive(Debug, Parser)]
#[command(name = "wordlab", version)]
pub struct Cli {
    /// Emit a JSON envelope {schema_version, command, params, result}.
    #[arg(long, global = true, conflicts_with_all = ["csv", "plot_csv"])]
    pub json: bool,

    /// Emit CSV with a fixed header.
    #[arg(long, global = true, conflicts_with = "plot_csv")]
    pub csv: bool,

    /// Emit `n,p` pairs of the complexity profile of the produced word.
    #[arg(long, global = true)]
    pub plot_csv: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Complexity profile, R, K and special subwords of a word.
    Complexity(ComplexityArgs),
    /// De Bruijn words and graphs.
    Debruijn(DebruijnArgs),
    /// Sturmian word generators and the balance check.
    #[command(subcommand)]
    Sturmian(SturmianCommand),
    /// Census of distinct complexity sequences a_k(n).
    Census(CensusArgs),
    /// Check the profile theorems on every word of a file or generator.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct ComplexityArgs {
    pub word: String,

    /// Alphabet size; inferred from the largest letter when absent.
    #[arg(short = 'k', long)]
    pub alphabet: Option<usize>,

    #[arg(long, value_enum, default_value_t = EngineArg::Automaton)]
    pub engine: EngineArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Automaton,
    Naive,
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true, subcommand_negates_reqs = true)]
pub struct DebruijnArgs {
    #[command(subcommand)]
    pub graph: Option<DebruijnCommand>,

    /// Alphabet size.
    #[arg(long, required = true)]
    pub k: Option<usize>,

    /// Word length; k^n + n - 1 gives a de Bruijn word of order n.
    #[arg(long, required = true)]
    pub len: Option<usize>,

    #[arg(long, value_enum, default_value_t = Emit::Word)]
    pub emit: Emit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Word,
    Profile,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum DebruijnCommand {
    /// The de Bruijn graph B_k(n).
    Graph {
        /// Alphabet size.
        #[arg(long)]
        k: usize,
        /// Vertex length.
        #[arg(long)]
        order: usize,
        /// Emit Graphviz DOT.
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum SturmianCommand {
    /// Prefix of the Fibonacci word, or the iterate f_n.
    #[command(group(ArgGroup::new("size").required(true).args(["len", "index"])))]
    Fib {
        /// Prefix length.
        #[arg(long)]
        len: Option<usize>,
        /// Iterate index n for f_n.
        #[arg(long)]
        index: Option<usize>,
    },
    /// Mechanical word with slope alpha and intercept rho.
    Mech {
        /// `P/Q` or `surd:a,b,c,d` for (a + b√d)/c.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Intercept, in the same forms as alpha.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        rho: String,
        #[arg(long, default_value = "lower", value_parser = ["lower", "upper"])]
        variant: String,
        #[arg(long)]
        len: usize,
    },
    /// Cutting sequence of the line y = θx.
    Cutting {
        /// Positive slope, `P/Q` or `surd:a,b,c,d`.
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long)]
        len: usize,
    },
    /// Balance, finite-Sturmian verdict, R, K and the N = R + K check.
    Check { word: String },
    /// Binary word of length N whose profile peaks at N/2.
    Peak {
        #[arg(long)]
        len: usize,
    },
    /// Prefix of the image of the Fibonacci word under 0 -> 0^{l+1}1, 1 -> 0^l 1.
    Psi {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        len: usize,
    },
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Worker threads.
    #[arg(long, env = "WORDLAB_JOBS")]
    pub jobs: Option<usize>,

    /// Largest estimated number of window operations per census cell.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true, subcommand_negates_reqs = true)]
pub struct CensusArgs {
    #[command(subcommand)]
    pub table: Option<CensusCommand>,

    /// Alphabet size.
    #[arg(long, required = true)]
    pub k: Option<usize>,

    /// Word length.
    #[arg(long, required = true)]
    pub n: Option<usize>,

    /// Include the sorted list of sequences.
    #[arg(long)]
    pub list: bool,

    /// Also write the JSON envelope to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Subcommand)]
pub enum CensusCommand {
    /// a_k(n) for k in kmin..=kmax and n in 1..=nmax.
    Table {
        #[arg(long, default_value_t = 2)]
        kmin: usize,
        #[arg(long)]
        kmax: usize,
        #[arg(long)]
        nmax: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// a_{k+1}(n) - a_k(n) for k in klo..khi.
    Diff {
        #[arg(long, default_value_t = 2)]
        klo: usize,
        #[arg(long)]
        khi: usize,
        #[arg(long)]
        nmax: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Growth ratios and the difference identity check.
    Conjectures {
        #[arg(long)]
        kmax: usize,
        #[arg(long)]
        nmax: usize,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["file", "exhaustive"])))]
pub struct VerifyArgs {
    /// One word per line; `-` reads standard input.
    #[arg(long)]
    pub file: Option<PathBuf>,

    /// Every word of length --len over --k letters.
    #[arg(long, requires_all = ["k", "len"])]
    pub exhaustive: bool,

    /// Alphabet size for --exhaustive.
    #[arg(long)]
    pub k: Option<usize>,

    /// Word length for --exhaustive.
    #[arg(long)]
    pub len: Option<usize>,

    /// Alphabet size for words read from --file.
    #[arg(long)]
    pub alphabet: Option<usize>,
}
