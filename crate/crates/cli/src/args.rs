use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use splitenergy::io::Format;
use splitenergy::Method;

/// Energies of generalized splitting and shadow-splitting graphs.
#[derive(Debug, Parser)]
#[command(name = "splitenergy", version, about)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Graph format for files the command writes
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Graph6)]
    pub format: FormatArg,

    /// Which energy route to run
    #[arg(long, global = true, value_enum, default_value_t = MethodArg::Both)]
    pub method: MethodArg,

    /// Override the comparison tolerance (must be positive)
    #[arg(long, global = true, value_name = "REAL")]
    pub tol: Option<f64>,

    /// Worker threads for sweeps [default: available cores]
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,

    /// Write to this path instead of stdout
    #[arg(short, long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Render reports as a plain-text table instead of JSON
    #[arg(long, global = true)]
    pub table: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Graph6,
    Mtx,
    Edges,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Graph6 => Format::Graph6,
            FormatArg::Mtx => Format::Mtx,
            FormatArg::Edges => Format::Edges,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Formula,
    Oracle,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Formula => Method::Formula,
            MethodArg::Oracle => Method::Oracle,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a standard graph
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Apply an operator to a graph file
    Construct {
        /// Base graph file (format detected from contents)
        input: PathBuf,
        #[command(subcommand)]
        op: ConstructOp,
    },
    /// Adjacency spectrum as JSON
    Spectrum(AnalyseArgs),
    /// Adjacency energy as JSON
    Energy(AnalyseArgs),
    /// Check one family instance; exit status 1 when it fails
    Verify {
        /// Family id, e.g. C6_2 or C5_4
        corollary: String,
        /// Parameter bindings such as t=1
        #[arg(value_name = "NAME=VALUE")]
        bindings: Vec<String>,
        /// Base graph file or generator (cycle:4); repeat for two-base families
        #[arg(long, value_name = "FILE|GEN")]
        base: Vec<String>,
    },
    /// Check a family over a parameter grid; exit status 1 when any point fails
    Sweep {
        corollary: String,
        /// Ranges such as k=1..5, k=-1,1 or m=2
        #[arg(value_name = "NAME=RANGE")]
        ranges: Vec<String>,
        #[arg(long, value_name = "FILE|GEN")]
        base: Vec<String>,
    },
    /// Re-encode a graph file in --format
    Convert { input: PathBuf },
}

#[derive(Debug, Args)]
pub struct AnalyseArgs {
    /// Graph file; with --apply this is the base graph
    pub input: PathBuf,
    /// Analyse OP(input) instead, e.g. split:2:1, shadow-split:4:3, shadow:3, splitting:2
    #[arg(long, value_name = "OP")]
    pub apply: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum GenFamily {
    /// K_n
    Complete { n: usize },
    /// C_n, n >= 3
    Cycle { n: usize },
    /// P_n
    Path { n: usize },
    /// n isolated vertices
    Empty { n: usize },
    /// K_{m,n}
    Bipartite { m: usize, n: usize },
    /// G(n, p) from a seeded ChaCha8 stream
    Random { n: usize, p: f64, seed: u64 },
    /// Disjoint union of generator specs such as complete:7 cycle:4 bipartite:2:3
    Union {
        #[arg(required = true)]
        parts: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConstructOp {
    /// S_{p,q}(G)
    Split { p: usize, q: usize },
    /// H_{c,k}(G)
    ShadowSplit { c: usize, k: usize },
    /// D_m(G)
    Shadow { m: usize },
    /// S_m(G)
    Splitting { m: usize },
    /// input ⊗ other
    Kron {
        #[arg(long = "with", value_name = "FILE")]
        with: PathBuf,
    },
}
