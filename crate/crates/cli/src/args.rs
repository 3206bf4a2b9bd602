use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use finlat_core::Budget;

/// Finite lattices, ranks, representations, canonical Ramsey search,
/// congruence lattices and reasonableness.
///
/// Inputs are JSON files or built-ins written `std:NAME`, for example
/// `std:m3`, `std:pentagon`, `std:pairs(4)`, `std:m3-power(2)`, `std:z(4)`.
#[derive(Debug, Parser)]
#[command(name = "finlat", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Human-readable rendering instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,

    /// Write the result here (atomically) instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Assert a verdict, e.g. `distributive=false`; exit 1 when it differs.
    #[arg(long = "expect", value_name = "NAME=BOOL", global = true)]
    pub expect: Vec<String>,

    /// Include wall-clock timings (makes the output nondeterministic).
    #[arg(long, global = true)]
    pub timings: bool,

    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    #[arg(long, global = true, env = "FINLAT_MAX_ELEMENTS", value_name = "N")]
    pub max_elements: Option<usize>,
    #[arg(long, global = true, env = "FINLAT_MAX_SEARCH_TARGET", value_name = "N")]
    pub max_search_target: Option<usize>,
    #[arg(long, global = true, env = "FINLAT_MAX_RANK_LATTICE", value_name = "N")]
    pub max_rank_lattice: Option<usize>,
    #[arg(long, global = true, env = "FINLAT_MAX_REASONABLE_LATTICE", value_name = "N")]
    pub max_reasonable_lattice: Option<usize>,
    #[arg(long, global = true, env = "FINLAT_MAX_CPP_GROUND", value_name = "N")]
    pub max_cpp_ground: Option<usize>,
    #[arg(long, global = true, env = "FINLAT_MAX_POWER_GROUND", value_name = "N")]
    pub max_power_ground: Option<usize>,
    #[arg(long, global = true, env = "FINLAT_MAX_SURVEY_KERNELS", value_name = "N")]
    pub max_survey_kernels: Option<usize>,
    #[arg(long, global = true, env = "FINLAT_MAX_RAMSEY_BASE", value_name = "N")]
    pub max_ramsey_base: Option<usize>,
    #[arg(long, global = true, env = "FINLAT_MAX_JOIN_IRREDUCIBLES", value_name = "N")]
    pub max_join_irreducibles: Option<usize>,
    #[arg(long, global = true, env = "FINLAT_MAX_CARRIER", value_name = "N")]
    pub max_carrier: Option<usize>,
}

impl BudgetArgs {
    pub fn resolve(&self) -> Budget {
        let d = Budget::default();
        Budget {
            max_elements: self.max_elements.unwrap_or(d.max_elements),
            max_search_target: self.max_search_target.unwrap_or(d.max_search_target),
            max_rank_lattice: self.max_rank_lattice.unwrap_or(d.max_rank_lattice),
            max_reasonable_lattice: self.max_reasonable_lattice.unwrap_or(d.max_reasonable_lattice),
            max_cpp_ground: self.max_cpp_ground.unwrap_or(d.max_cpp_ground),
            max_power_ground: self.max_power_ground.unwrap_or(d.max_power_ground),
            max_survey_kernels: self.max_survey_kernels.unwrap_or(d.max_survey_kernels),
            max_ramsey_base: self.max_ramsey_base.unwrap_or(d.max_ramsey_base),
            max_join_irreducibles: self.max_join_irreducibles.unwrap_or(d.max_join_irreducibles),
            max_carrier: self.max_carrier.unwrap_or(d.max_carrier),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lattice axioms, distributivity three ways, forbidden sublattices.
    Analyze { lattice: String },
    /// Enumerate admissible ranks and their ranksets.
    Ranks {
        lattice: String,
        #[arg(long)]
        blass: bool,
        #[arg(long)]
        gaifman: bool,
    },
    /// Representations into equivalence-relation lattices.
    #[command(subcommand)]
    Rep(RepCommand),
    /// Canonical Ramsey search for pair functions.
    Crt2(Crt2Args),
    /// Finite algebras and congruence lattices.
    #[command(subcommand)]
    Alg(AlgCommand),
    /// Decide reasonableness of an equivalenced lattice.
    Reasonable { input: String },
    /// Hasse diagram in DOT.
    ExportDot {
        lattice: String,
        /// Graph name; defaults to the input name.
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum RepCommand {
    /// Pseudo-representation laws, injectivity, 0-CPP.
    Verify { rep: String },
    /// Exhaustive n-CPP check.
    Cpp {
        rep: String,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        /// Emit the nested certificate tree.
        #[arg(long)]
        certificate: bool,
    },
    /// Ranked-representation condition with a finite boundedness threshold.
    Ranked {
        rep: String,
        /// Rank map as comma-separated elements (indices or labels).
        #[arg(long, value_delimiter = ',', required = true)]
        rank: Vec<String>,
        /// A set of classes counts as bounded when it has at most this many members.
        #[arg(long)]
        bound: usize,
    },
    /// Closure property of a finite family of representations.
    FamilyClosure { family: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SurveyFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Crt2Args {
    /// Size of the base set.
    #[arg(long)]
    pub n: Option<usize>,
    /// Size of the canonical subset sought.
    #[arg(long)]
    pub k: usize,
    /// Run over every kernel on the pairs of an n-set.
    #[arg(long, conflicts_with = "function")]
    pub survey: bool,
    /// Pair-function JSON file.
    #[arg(long)]
    pub function: Option<String>,
    #[arg(long, value_enum, default_value_t = SurveyFormat::Csv)]
    pub format: SurveyFormat,
}

#[derive(Debug, Subcommand)]
pub enum AlgCommand {
    /// Compute the congruence lattice.
    Cg { algebra: String },
    /// Check a relation for compatibility, or a lattice for being a
    /// congruence representation.
    Check {
        algebra: String,
        #[arg(long, conflicts_with = "lattice", required_unless_present = "lattice")]
        relation: Option<String>,
        #[arg(long)]
        lattice: Option<String>,
    },
    /// Search small algebras whose congruence lattice matches.
    Search {
        lattice: String,
        #[arg(long, default_value_t = 4)]
        max_carrier_size: usize,
        #[arg(long, default_value_t = 2)]
        max_unary: usize,
        #[arg(long, default_value_t = 0)]
        max_binary: usize,
        /// Match against the dual lattice.
        #[arg(long)]
        dual: bool,
    },
}
