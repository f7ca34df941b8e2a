//! Argument types shared by the command line and by experiment spec files.
//!
//! Every subcommand's arguments are also a serde struct, so a spec such as
//! `{"cmd": "mis", "n": 5}` deserializes to the same value the command line
//! would have produced.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "biaslab", version, about = "Exact enumeration and verification for biased graphs on [n]")]
pub struct Cli {
    #[command(flatten)]
    pub globals: Globals,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Directory for cached overlap graphs.
    #[arg(long, global = true, env = "BIASLAB_CACHE_DIR", value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads; defaults to one per core.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Add a `timestamp` field to the report.
    #[arg(long, global = true)]
    pub timestamp: bool,
    #[command(subcommand)]
    pub command: TopCommand,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
pub struct Globals {
    /// Number of vertices.
    #[arg(long, global = true, default_value_t = 5)]
    #[serde(default = "default_n")]
    pub n: usize,
    #[arg(long, global = true, default_value_t = 0)]
    #[serde(default)]
    pub seed: u64,
    /// Overrides the work cap of the chosen operation.
    #[arg(long, global = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<u64>,
}

fn default_n() -> usize {
    5
}

#[derive(Debug, Subcommand)]
pub enum TopCommand {
    #[command(flatten)]
    Op(Command),
    /// Run one experiment spec (or an array of them) from a JSON file.
    Run { spec: PathBuf },
}

#[derive(Clone, Debug, Subcommand, Serialize, Deserialize)]
#[serde(tag = "cmd", rename_all = "snake_case")]
pub enum Command {
    /// Cycle catalog of K_n with per-length counts.
    Cycles(CyclesArgs),
    /// Build the overlap graph and report its size.
    Omega(OmegaArgs),
    /// Check a bias set for the theta-property.
    Validate(ValidateArgs),
    /// Exact count of biased cliques or biased graphs.
    Count(CountArgs),
    /// Maximum stable sets of the overlap graph.
    Mis(MisArgs),
    /// Run the container iteration on sampled or given scarce sets.
    Containers(ContainersArgs),
    /// Compress a biased clique to a scarce set.
    Compress(CompressArgs),
    /// Rebuild a biased clique from its compression and short cycles.
    Reconstruct(ReconstructArgs),
    /// Abelian labellings: balanced sets, labellability, pattern decomposition.
    Label(LabelArgs),
    /// Zero-patterns of the cycle polynomials over F_q.
    Patterns(PatternsArgs),
    /// Diamond rings and their Hamilton-cycle dependencies.
    Rings(RingsArgs),
    /// Monte Carlo count of bad diamond rings.
    Mc(McArgs),
    /// Exponents of the counting bounds.
    Bounds(BoundsArgs),
    /// Write or verify the overlap-graph cache.
    Cache(CacheArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Cycles(_) => "cycles",
            Command::Omega(_) => "omega",
            Command::Validate(_) => "validate",
            Command::Count(_) => "count",
            Command::Mis(_) => "mis",
            Command::Containers(_) => "containers",
            Command::Compress(_) => "compress",
            Command::Reconstruct(_) => "reconstruct",
            Command::Label(_) => "label",
            Command::Patterns(_) => "patterns",
            Command::Rings(_) => "rings",
            Command::Mc(_) => "mc",
            Command::Bounds(_) => "bounds",
            Command::Cache(_) => "cache",
        }
    }
}

/// A cycle set given inline, from a file, or as the balanced set of a
/// random labelling.
#[derive(Clone, Debug, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct BiasInput {
    /// Cycles as dash-separated vertex sequences, e.g. `1-2-3,1-2-4`.
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cycles: Vec<String>,
    /// JSON file holding `{"n", "ids", "cycles"}` or a bare id list.
    #[arg(long, value_name = "PATH")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bias_file: Option<PathBuf>,
    /// Use the balanced set of a random labelling into these moduli (0 is Z).
    #[arg(long, value_delimiter = ',', value_name = "MODULI")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labelled: Option<Vec<u64>>,
}

impl BiasInput {
    pub fn is_given(&self) -> bool {
        !self.cycles.is_empty() || self.bias_file.is_some() || self.labelled.is_some()
    }
}

#[derive(Clone, Debug, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct CyclesArgs {
    /// Include every cycle's vertex sequence.
    #[arg(long)]
    pub list: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Pairwise,
    #[default]
    Extension,
}

#[derive(Clone, Debug, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct OmegaArgs {
    #[arg(long, value_enum, default_value_t)]
    pub method: Method,
    /// Include the degree of every vertex.
    #[arg(long)]
    pub degrees: bool,
}

#[derive(Clone, Debug, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct ValidateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub bias: BiasInput,
    /// Edges of the host graph, e.g. `1-2,2-3,1-3`; defaults to K_n.
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountKind {
    #[default]
    Cliques,
    Graphs,
}

#[derive(Clone, Debug, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct CountArgs {
    #[arg(long, value_enum, default_value_t)]
    pub kind: CountKind,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MisMode {
    Size,
    One,
    #[default]
    All,
}

#[derive(Clone, Debug, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct MisArgs {
    #[arg(long, value_enum, default_value_t)]
    pub mode: MisMode,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct ContainersArgs {
    /// Threshold `a` in place of the default.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    /// Number of random scarce sets, when no set is given.
    #[arg(long, default_value_t = 1)]
    pub samples: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub bias: BiasInput,
    /// Include the pivot and outcome of every step.
    #[arg(long)]
    pub steps: bool,
}

impl Default for ContainersArgs {
    fn default() -> Self {
        ContainersArgs { a: None, s: None, alpha: None, samples: 1, bias: BiasInput::default(), steps: false }
    }
}

#[derive(Clone, Debug, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct CompressArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub bias: BiasInput,
}

#[derive(Clone, Debug, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct ReconstructArgs {
    /// The compressed set, as vertex sequences.
    #[arg(long, value_delimiter = ',')]
    pub compressed: Vec<String>,
    /// The short cycles of the original set.
    #[arg(long, value_delimiter = ',')]
    pub short: Vec<String>,
    /// A report written by `compress`; overrides the two lists.
    #[arg(long, value_name = "PATH")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub from: Option<PathBuf>,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct LabelArgs {
    /// Group `Z_{q1} + Z_{q2} + ...`; `0` is Z.
    #[arg(long, value_delimiter = ',', default_values_t = [2u64])]
    pub moduli: Vec<u64>,
    /// Host graph edges; defaults to K_n.
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<Vec<String>>,
    /// Decide labellability of this set instead of sampling a labelling.
    #[command(flatten)]
    #[serde(flatten)]
    pub bias: BiasInput,
}

impl Default for LabelArgs {
    fn default() -> Self {
        LabelArgs { moduli: vec![2], graph: None, bias: BiasInput::default() }
    }
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct PatternsArgs {
    /// Prime field size.
    #[arg(long, default_value_t = 3)]
    pub q: u64,
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<Vec<String>>,
    /// Include every pattern.
    #[arg(long)]
    pub list: bool,
}

impl Default for PatternsArgs {
    fn default() -> Self {
        PatternsArgs { q: 3, graph: None, list: false }
    }
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct RingsArgs {
    /// Random abelian labellings to test for rings with three balanced Hamiltons.
    #[arg(long, default_value_t = 0)]
    pub labelled_trials: u64,
    #[arg(long, value_delimiter = ',', default_values_t = [2u64])]
    pub moduli: Vec<u64>,
    /// Include every ring.
    #[arg(long)]
    pub list: bool,
}

impl Default for RingsArgs {
    fn default() -> Self {
        RingsArgs { labelled_trials: 0, moduli: vec![2], list: false }
    }
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct McArgs {
    #[arg(long, default_value_t = 200)]
    pub trials: u64,
    /// Include per-trial counts in the report.
    #[arg(long)]
    pub per_trial: bool,
    /// Also write per-trial counts as CSV.
    #[arg(long, value_name = "PATH")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
}

impl Default for McArgs {
    fn default() -> Self {
        McArgs { trials: 200, per_trial: false, csv: None }
    }
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct BoundsArgs {
    /// Scan `3..=this` for the crossover.
    #[arg(long, default_value_t = 40)]
    pub crossover_max: u64,
}

impl Default for BoundsArgs {
    fn default() -> Self {
        BoundsArgs { crossover_max: 40 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CacheAction {
    /// Load from the cache directory, building and saving on a miss.
    #[default]
    Ensure,
    /// Rebuild and overwrite.
    Rebuild,
    /// Load a file and compare with a fresh build.
    Verify,
}

#[derive(Clone, Debug, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct CacheArgs {
    #[arg(value_enum, default_value_t)]
    pub action: CacheAction,
    /// Cache file for `verify`; defaults to the one in the cache directory.
    #[arg(long, value_name = "PATH")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
}

/// One experiment: global parameters and a command.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Experiment {
    #[serde(flatten)]
    pub globals: Globals,
    #[serde(flatten)]
    pub command: Command,
}
