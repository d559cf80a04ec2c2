use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::functions::Function;

#[derive(Debug, Parser)]
#[command(
    name = "jfourier",
    version,
    about = "Bessel functions of complex order and Neumann series"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a function at every point of a parameter grid.
    Eval(EvalArgs),
    /// Evaluate two or more methods on a grid and report their discrepancies.
    Compare(CompareArgs),
    /// Time methods over a grid and measure their accuracy against the oracle.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub function: Function,
    /// Evaluation route; defaults to the function's reference method.
    #[arg(long)]
    pub method: Option<String>,
    #[command(flatten)]
    pub points: PointArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(value_enum)]
    pub function: Function,
    /// Comma-separated methods; the first is the reference.
    #[arg(long, value_delimiter = ',', required = true)]
    pub methods: Vec<String>,
    /// Largest acceptable |difference| / max(1, |reference|).
    #[arg(long, default_value_t = 1e-7)]
    pub tol: f64,
    #[command(flatten)]
    pub points: PointArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(value_enum)]
    pub function: Function,
    /// Comma-separated methods to time; defaults to the reference method and
    /// the function's integral route.
    #[arg(long, value_delimiter = ',')]
    pub methods: Vec<String>,
    /// Timed evaluations per point and method; the median is reported.
    #[arg(long, default_value_t = 5)]
    pub repetitions: usize,
    #[command(flatten)]
    pub points: PointArgs,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    /// One JSON object per line.
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; output order follows input order regardless.
    #[arg(long)]
    pub jobs: Option<usize>,
}

/// Parameter flags. Every flag may be repeated; the grid is the cartesian
/// product of all values given. Complex numbers are written `re,im` or `re`.
#[derive(Debug, Default, Args)]
pub struct PointArgs {
    /// Order.
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Vec<String>,
    /// Complex argument.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Vec<String>,
    /// Second complex argument (Lommel, erf, Fresnel).
    #[arg(long, allow_hyphen_values = true)]
    pub w: Vec<String>,
    /// Real argument (Kelvin).
    #[arg(long, allow_hyphen_values = true)]
    pub x: Vec<String>,
    /// Angle in (0, pi) with cos u the Gegenbauer argument.
    #[arg(long, allow_hyphen_values = true)]
    pub u: Vec<String>,
    /// Gegenbauer degree.
    #[arg(long)]
    pub ell: Vec<String>,
    /// Fresnel scale in [0, 1].
    #[arg(long, allow_hyphen_values = true)]
    pub a: Vec<String>,
    /// erf evaluates at w sin(phi); defaults to pi/2.
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Vec<String>,
    /// Neumann coefficient sequence, e.g. `geometric:0.6` or `kelvin:0.5,2`.
    #[arg(long)]
    pub seq: Vec<String>,
    /// File with one parameter tuple per line, written like the flags
    /// (`--nu 0.5 --z 1,1`). Flags given on the command line fill in
    /// parameters a line leaves out.
    #[arg(long)]
    pub grid: Option<PathBuf>,
}

impl PointArgs {
    pub fn flag_values(&self) -> BTreeMap<String, Vec<String>> {
        let all = [
            ("a", &self.a),
            ("ell", &self.ell),
            ("nu", &self.nu),
            ("phi", &self.phi),
            ("seq", &self.seq),
            ("u", &self.u),
            ("w", &self.w),
            ("x", &self.x),
            ("z", &self.z),
        ];
        all.into_iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_none() && self.flag_values().is_empty()
    }
}
