use clap::{Args, Parser, Subcommand, ValueEnum};
use ptspectra::diag::DiagConfig;
use ptspectra::potential::Sign;
use ptspectra::shooting::{MatchPoint, RhoMax, ShootingConfig};
use ptspectra::{PotentialSpec, WedgeMode};
use std::ops::RangeInclusive;
use std::path::PathBuf;

use crate::UsageError;

#[derive(Debug, Parser)]
#[command(name = "ptspectra", version, about = "Spectra of PT-symmetric anharmonic oscillators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form semiclassical energies.
    Wkb(WkbArgs),
    /// Numerical spectrum by shooting or diagonalization.
    Spectrum(SpectrumArgs),
    /// Stokes and anti-Stokes directions, optionally traced from the turning points.
    Stokes(StokesArgs),
    /// Recompute the published reference values and report deviations.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to a file instead of stdout. Relative paths are resolved against
    /// PTSPECTRA_OUTPUT_DIR when it is set.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Significant digits of real-valued output.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..=17))]
    pub digits: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    #[arg(long = "M")]
    pub m: Option<u32>,
    #[arg(long)]
    pub epsilon: Option<u32>,
    #[arg(long, value_parser = parse_sign, default_value = "+", allow_hyphen_values = true)]
    pub sign: Sign,
    /// Coefficient of the i*b*x term.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub b: f64,
    /// Shorthand for V = (ix)^K.
    #[arg(long = "ixK", conflicts_with_all = ["m", "epsilon", "neg_ix_k"])]
    pub ix_k: Option<u32>,
    /// Shorthand for V = -(ix)^K, stored in canonical form.
    #[arg(long = "neg-ixK", conflicts_with_all = ["m", "epsilon"])]
    pub neg_ix_k: Option<u32>,
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+" | "+1" | "1" | "plus" => Ok(Sign::Plus),
        "-" | "-1" | "minus" => Ok(Sign::Minus),
        other => Err(format!("sign must be + or -, got {other:?}")),
    }
}

impl SpecArgs {
    pub fn spec(&self) -> Result<PotentialSpec, UsageError> {
        let base = match (self.ix_k, self.neg_ix_k, self.m, self.epsilon) {
            (Some(k), None, None, None) => checked_degree(k).map(|_| PotentialSpec::ix_power(k))?,
            (None, Some(k), None, None) => checked_degree(k).map(|_| PotentialSpec::neg_ix_power(k))?,
            (None, None, m, eps) if m.is_some() || eps.is_some() => {
                PotentialSpec::new(m.unwrap_or(0), eps.unwrap_or(0), self.sign, 0.0).map_err(|e| UsageError(e.to_string()))?
            }
            _ => return Err(UsageError("specify the potential with --M/--epsilon, --ixK or --neg-ixK".into())),
        };
        if (self.ix_k.is_some() || self.neg_ix_k.is_some()) && self.sign == Sign::Minus {
            return Err(UsageError("--sign cannot be combined with --ixK or --neg-ixK".into()));
        }
        PotentialSpec::new(base.m, base.epsilon, base.sign, self.b).map_err(|e| UsageError(e.to_string()))
    }
}

fn checked_degree(k: u32) -> Result<u32, UsageError> {
    if k < 2 {
        return Err(UsageError(format!("degree must be at least 2, got {k}")));
    }
    Ok(k)
}

/// `a..b` (inclusive) or a single level.
pub fn parse_levels(s: &str) -> Result<RangeInclusive<usize>, String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad level {t:?}: {e}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty level range {s}"));
            }
            Ok(a..=b)
        }
        None => parse(s).map(|n| n..=n),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WkbMethod {
    Bb,
    Nm,
    General,
}

#[derive(Debug, Clone, Args)]
pub struct WkbArgs {
    #[arg(long, value_enum)]
    pub method: WkbMethod,
    /// Odd degree K = 2N + 1 for the bb and nm formulas.
    #[arg(long = "N")]
    pub big_n: Option<u32>,
    #[arg(long = "M")]
    pub m: Option<u32>,
    #[arg(long)]
    pub epsilon: Option<u32>,
    #[arg(long, value_parser = parse_levels, default_value = "0..10")]
    pub n: RangeInclusive<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Solver {
    Shoot,
    Diag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RaysArg {
    /// Anti-Stokes pair whose wedges contain the real axis.
    ContainsRealAxis,
    /// The next PT-mirrored pair away from the real axis.
    OffAxis,
    /// The pair -pi/2 +- 2pi/(K+2).
    Bb,
}

impl RaysArg {
    pub fn mode(self) -> Option<WedgeMode> {
        match self {
            RaysArg::ContainsRealAxis => Some(WedgeMode::ContainsRealAxis),
            RaysArg::OffAxis => Some(WedgeMode::OffAxis),
            RaysArg::Bb => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatchArg {
    Origin,
    ChordMidpoint,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[arg(value_enum)]
    pub solver: Solver,
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long, default_value_t = 10)]
    pub nmax: usize,
    #[arg(long, value_enum, default_value_t = RaysArg::ContainsRealAxis)]
    pub rays: RaysArg,
    /// Fixed truncation radius of the rays (default: chosen per energy).
    #[arg(long)]
    pub rho_max: Option<f64>,
    /// Decay action targeted when the radius is chosen automatically.
    #[arg(long, default_value_t = 40.0)]
    pub rho_action: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub ode_rtol: f64,
    #[arg(long, default_value_t = 1e-14)]
    pub ode_atol: f64,
    #[arg(long, default_value_t = 0.1)]
    pub scan_step: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub root_tol: f64,
    #[arg(long, value_enum, default_value_t = MatchArg::ChordMidpoint)]
    pub match_point: MatchArg,
    /// Basis sizes for diagonalization.
    #[arg(long, value_delimiter = ',', default_value = "80,120,160,200")]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub im_tol: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub stab_tol: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub stab_tol_excited: f64,
    #[arg(long)]
    pub threads: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

impl SpectrumArgs {
    pub fn shooting_config(&self) -> ShootingConfig {
        let base = ShootingConfig::default();
        ShootingConfig {
            rho_max: match self.rho_max {
                Some(r) => RhoMax::Fixed(r),
                None => RhoMax::Auto { action: self.rho_action },
            },
            ode_rel_tol: self.ode_rtol,
            ode_abs_tol: self.ode_atol,
            scan_step: self.scan_step,
            root_tol: self.root_tol,
            threads: self.threads.unwrap_or(base.threads),
            match_point: match self.match_point {
                MatchArg::Origin => MatchPoint::Origin,
                MatchArg::ChordMidpoint => MatchPoint::ChordMidpoint,
            },
            ..base
        }
    }

    pub fn diag_config(&self) -> DiagConfig {
        let base = DiagConfig::default();
        DiagConfig {
            alpha: self.alpha,
            im_tol: self.im_tol,
            stab_tol: self.stab_tol,
            stab_tol_excited: self.stab_tol_excited,
            threads: self.threads.unwrap_or(base.threads),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct StokesArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Trace the lines leaving every turning point at this energy.
    #[arg(long)]
    pub trace: bool,
    #[arg(long = "E")]
    pub energy: Option<f64>,
    /// Arc length of each traced line, in units of E^(1/K).
    #[arg(long, default_value_t = 2.5)]
    pub arc: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Table1,
    Table2,
    Figures,
}

#[derive(Debug, Clone, Args)]
pub struct ReproduceArgs {
    #[arg(value_enum)]
    pub target: Target,
    #[command(flatten)]
    pub out: OutputArgs,
}
