//! Command-line surface.

use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use gvfan_core::Sampler;
use serde::Serialize;

fn existing_file(s: &str) -> Result<PathBuf, String> {
    let p = PathBuf::from(s);
    if p.is_file() {
        Ok(p)
    } else {
        Err(format!("no such file `{s}`"))
    }
}

#[derive(Parser, Debug, Clone, Serialize)]
#[command(name = "gvfan", version, about = "g-vector fans, two-term complexes and scattering diagrams")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
    /// Directory for cached seed sets and mutation classes.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Report path; stdout when absent.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Recompute every cache hit and fail unless the bytes agree.
    #[arg(long, global = true)]
    pub verify_cache: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Mutate a quiver along a sequence of vertices.
    Mutate(MutateArgs),
    /// Explore the mutation class of a quiver.
    Class(ClassArgs),
    /// Name the mutation class of a quiver.
    Classify(ClassArgs),
    /// Enumerate seeds and build the g-vector fan.
    Fan(FanArgs),
    /// Sampled coverage of the sphere by the fan.
    Density(DensityArgs),
    /// Look for a closed half-space containing every ray of the fan.
    Halfspace(HalfspaceArgs),
    /// Two-term complexes over a finite-dimensional algebra.
    #[command(subcommand)]
    Alg(AlgCommand),
    /// Rank-two scattering diagrams and wall functions on fans.
    #[command(subcommand)]
    Scatter(ScatterCommand),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct MutateArgs {
    #[arg(long, value_parser = existing_file)]
    pub quiver: PathBuf,
    /// Vertices to mutate at, in order, e.g. `0,1,0`.
    #[arg(long, value_delimiter = ',', default_value = "")]
    pub seq: Vec<usize>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ClassArgs {
    #[arg(long, value_parser = existing_file)]
    pub quiver: PathBuf,
    /// Largest number of quivers to visit.
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SeedArgs {
    #[arg(long, value_parser = existing_file)]
    pub quiver: PathBuf,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub depth: u64,
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_seeds: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct FanArgs {
    #[command(flatten)]
    pub seeds: SeedArgs,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long)]
    pub sampler: Option<Sampler>,
    /// Cone pairs to test for a proper intersection.
    #[arg(long, default_value_t = 20_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_pairs: u64,
    /// Also write the fan itself to this file.
    #[arg(long)]
    pub fan_out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct DensityArgs {
    #[command(flatten)]
    pub seeds: SeedArgs,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long)]
    pub sampler: Option<Sampler>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct HalfspaceArgs {
    #[command(flatten)]
    pub seeds: SeedArgs,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgCommand {
    /// dim Hom(X, Σ^shift Y) in the homotopy category.
    Hom(HomArgs),
    /// Is Hom(X, ΣX) zero?
    Presilt(PresiltArgs),
    /// Iterated cylinders of U along H.
    Cyl(CylArgs),
    /// Generic decomposition of a g-vector.
    Gdecomp(GdecompArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct HomArgs {
    #[arg(long, value_parser = existing_file)]
    pub algebra: PathBuf,
    #[arg(long, value_parser = existing_file)]
    pub x: PathBuf,
    #[arg(long, value_parser = existing_file)]
    pub y: PathBuf,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub shift: u8,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct PresiltArgs {
    #[arg(long, value_parser = existing_file)]
    pub algebra: PathBuf,
    #[arg(long, value_parser = existing_file)]
    pub complex: PathBuf,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CylArgs {
    #[arg(long, value_parser = existing_file)]
    pub algebra: PathBuf,
    #[arg(long, value_parser = existing_file)]
    pub u: PathBuf,
    #[arg(long, value_parser = existing_file)]
    pub h: PathBuf,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub iterations: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GdecompArgs {
    #[arg(long, value_parser = existing_file)]
    pub algebra: PathBuf,
    /// Comma separated, e.g. `-2,2`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub g: Vec<i64>,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(2..))]
    pub trials: u64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub coeff_range: u64,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScatterCommand {
    /// Consistent completion of the initial rank-two diagram.
    Complete(CompleteArgs),
    /// Dilogarithm wall functions on the facets of a fan.
    Attach(AttachArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CompleteArgs {
    /// JSON skew-symmetric matrix, bare or as `{"form": ..}`.
    #[arg(long, value_parser = existing_file)]
    pub form: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub order: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
#[command(group(ArgGroup::new("lattice").required(true).args(["form", "quiver"])))]
pub struct AttachArgs {
    #[arg(long, value_parser = existing_file)]
    pub fan: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub order: u64,
    #[arg(long, value_parser = existing_file)]
    pub form: Option<PathBuf>,
    /// Take the form from a quiver file instead.
    #[arg(long, value_parser = existing_file)]
    pub quiver: Option<PathBuf>,
}
