use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "dmv",
    version,
    about = "Exact dual volumes and dual mixed volume functions"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct GlobalOpts {
    /// Seed for every random choice (lifting heights); echoed in the output.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Include the single-fraction normal form in rational function records.
    #[arg(long, global = true)]
    pub normal: bool,
    /// Worker thread hint; computations currently run on one thread.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dual volume of a polytope, or f_fan of ingested fan data.
    Dualvol {
        #[arg(long, conflicts_with = "fan", required_unless_present = "fan")]
        polytope: Option<PathBuf>,
        /// Support data record {"fan": .., "values": [..]}.
        #[arg(long)]
        fan: Option<PathBuf>,
    },
    /// Dual volume function Vol_z(P) with numerator and denominator factors.
    DualvolFn {
        #[arg(long)]
        polytope: PathBuf,
        /// Report the result as the canonical form coefficient.
        #[arg(long)]
        canonical: bool,
    },
    /// Adjoint of the dual cone C(P)* and its agreement with the numerator.
    Adjoint {
        #[arg(long)]
        polytope: PathBuf,
    },
    /// Dual mixed volume function m(x), or m(x, z) with --with-z.
    Mixedvol {
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        with_z: bool,
    },
    /// Validates a mixed subdivision and checks additivity of m(x, z).
    VerifySubdivision {
        #[arg(long)]
        seq: PathBuf,
        #[arg(
            long,
            conflicts_with = "generate",
            required_unless_present = "generate"
        )]
        sub: Option<PathBuf>,
        /// Generate a fine subdivision from a random lifting (uses --seed).
        #[arg(long)]
        generate: bool,
    },
    /// Checks the Cayley change-of-variables identity.
    VerifyCayley {
        #[arg(long)]
        seq: PathBuf,
    },
    /// Hyperplane dual volume of an affine polytope or sequence.
    Evol {
        #[arg(long, conflicts_with = "seq", required_unless_present = "seq")]
        polytope: Option<PathBuf>,
        #[arg(long)]
        seq: Option<PathBuf>,
        /// For sequences: drop z, giving the function of x alone.
        #[arg(long)]
        no_z: bool,
    },
    /// Generalized permutohedron dual mixed volume closed form.
    Genperm {
        #[arg(long)]
        n: usize,
        /// Compare with the geometric computation.
        #[arg(long)]
        check: bool,
    },
    /// Associahedron dual mixed volume closed form.
    Associahedron {
        #[arg(long)]
        n: usize,
        /// Compare with the geometric and restricted-permutohedron forms.
        #[arg(long)]
        check: bool,
    },
    /// Planar cubic amplitude on n particles and its associahedron image.
    Amplitude {
        #[arg(long)]
        n: usize,
    },
    /// Zonotope dual mixed volume, with an optional deletion-contraction split.
    Zonotope {
        #[arg(long)]
        generators: PathBuf,
        /// Direction such as "1,0" or "[1,-1/2]".
        #[arg(long, allow_hyphen_values = true)]
        split_dir: Option<String>,
    },
    /// Deletion-contraction halves W+ and W- of a polytope along a direction.
    Split {
        #[arg(long)]
        polytope: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        dir: String,
    },
    /// Quadrature of the dual volume integral against the exact value.
    CheckIntegral {
        #[arg(long)]
        polytope: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
    /// Dual mixed volume of one spanning-tree cell of the permutohedron.
    PermutohedronCell {
        /// JSON list of subset labels, one per nonempty subset in size order.
        #[arg(long = "J", value_name = "FILE")]
        j: PathBuf,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Dualvol { .. } => "dualvol",
            Command::DualvolFn { .. } => "dualvol-fn",
            Command::Adjoint { .. } => "adjoint",
            Command::Mixedvol { .. } => "mixedvol",
            Command::VerifySubdivision { .. } => "verify-subdivision",
            Command::VerifyCayley { .. } => "verify-cayley",
            Command::Evol { .. } => "evol",
            Command::Genperm { .. } => "genperm",
            Command::Associahedron { .. } => "associahedron",
            Command::Amplitude { .. } => "amplitude",
            Command::Zonotope { .. } => "zonotope",
            Command::Split { .. } => "split",
            Command::CheckIntegral { .. } => "check-integral",
            Command::PermutohedronCell { .. } => "permutohedron-cell",
        }
    }
}
