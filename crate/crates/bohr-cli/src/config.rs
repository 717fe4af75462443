use std::path::PathBuf;

use bohr_core::radii::PhaseConvention;
use bohr_core::series::family::FamilyKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Debug, Clone, Parser)]
#[command(
    name = "bohr",
    version,
    about = "Bohr-radius constants and seeded inequality sweeps"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Table of ξ_p over a p-grid.
    Xi,
    /// Table of r*_N over a (p, N) grid.
    Rstar,
    /// Sampled family infimum of the order-N p-Bohr radius.
    Radius,
    /// Sampled upper estimate of the convexity constant A_{p,N}.
    Convexity,
    /// Consistency of radius and convexity estimates with the bound chains.
    Chains,
    /// ℓ_q² witnesses whose radius tends to 0.
    LqWitness,
    /// Run one verifier over a seeded sweep.
    Verify {
        #[arg(value_enum)]
        check: Check,
    },
}

impl Command {
    /// Name used in output file names.
    pub fn name(&self) -> String {
        match self {
            Command::Xi => "xi".into(),
            Command::Rstar => "rstar".into(),
            Command::Radius => "radius".into(),
            Command::Convexity => "convexity".into(),
            Command::Chains => "chains".into(),
            Command::LqWitness => "lq-witness".into(),
            Command::Verify { check } => format!("verify-{}", check.name()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Bohr,
    Refined,
    RogosinskiA,
    RogosinskiB,
    Subordination,
    Wiener,
    Majorant,
    Parseval,
    Abel,
    Milne,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Bohr => "bohr",
            Check::Refined => "refined",
            Check::RogosinskiA => "rogosinski-a",
            Check::RogosinskiB => "rogosinski-b",
            Check::Subordination => "subordination",
            Check::Wiener => "wiener",
            Check::Majorant => "majorant",
            Check::Parseval => "parseval",
            Check::Abel => "abel",
            Check::Milne => "milne",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Mobius,
    Blaschke,
    PolyRandom,
    Subordination,
}

impl From<FamilyArg> for FamilyKind {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Mobius => FamilyKind::Mobius,
            FamilyArg::Blaschke => FamilyKind::Blaschke,
            FamilyArg::PolyRandom => FamilyKind::PolyRandom,
            FamilyArg::Subordination => FamilyKind::Subordination,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PhaseArg {
    CommonPhase,
    PowerPhase,
}

impl From<PhaseArg> for PhaseConvention {
    fn from(p: PhaseArg) -> Self {
        match p {
            PhaseArg::CommonPhase => PhaseConvention::CommonPhase,
            PhaseArg::PowerPhase => PhaseConvention::PowerPhase,
        }
    }
}

/// Options shared by every command. List-valued options take
/// comma-separated values.
#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Exponent p (list).
    #[arg(long, global = true, value_delimiter = ',')]
    pub p: Option<Vec<f64>>,

    /// Exponent q of the ℓ_q space.
    #[arg(long, global = true)]
    pub q: Option<f64>,

    /// Order N (list).
    #[arg(long = "N", global = true, value_delimiter = ',')]
    pub order: Option<Vec<usize>>,

    /// Series degree D (maximum degree for poly_random).
    #[arg(long = "D", global = true, default_value_t = 64)]
    pub degree: usize,

    /// Matrix size d.
    #[arg(long = "d", global = true, default_value_t = 2)]
    pub dim: usize,

    #[arg(long, global = true, value_enum)]
    pub family: Option<FamilyArg>,

    #[arg(long, global = true, default_value_t = 200)]
    pub samples: usize,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, default_value_t = 16)]
    pub r_grid: usize,

    #[arg(long, global = true, default_value_t = 256)]
    pub t_grid: usize,

    /// Radius r (list); overrides the r-grid where a command uses one.
    #[arg(long, global = true, value_delimiter = ',')]
    pub r: Option<Vec<f64>>,

    /// Witness parameter a for lq-witness (list).
    #[arg(long, global = true, value_delimiter = ',')]
    pub a: Option<Vec<f64>>,

    /// Real Möbius parameter for the closed-form refined check.
    #[arg(long, global = true)]
    pub alpha: Option<f64>,

    /// Schwarz function for the closed-form refined check: z or z^k.
    #[arg(long, global = true)]
    pub psi: Option<String>,

    /// Vector length for the Milne sweep.
    #[arg(long, global = true, default_value_t = 10)]
    pub len: usize,

    #[arg(long, global = true, default_value_t = 1e-12)]
    pub tol: f64,

    /// Numerical slack; defaults to 1e-9 for closed forms, 1e-7 for random
    /// families.
    #[arg(long, global = true)]
    pub slack: Option<f64>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    pub output: OutputFormat,

    #[arg(long, global = true, value_enum, default_value_t = PhaseArg::PowerPhase)]
    pub phase_convention: PhaseArg,

    /// Also run the exploratory uncoupled Rogosinski sweep.
    #[arg(long, global = true)]
    pub uncoupled: bool,

    /// Directory for report files.
    #[arg(long, global = true, env = "BOHR_OUT_DIR", default_value = ".")]
    pub out_dir: PathBuf,

    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
}

fn usage(field: &'static str, message: impl Into<String>) -> CliError {
    CliError::Usage {
        field,
        message: message.into(),
    }
}

impl Options {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.samples == 0 {
            return Err(usage("samples", "must be at least 1"));
        }
        if self.dim == 0 {
            return Err(usage("d", "must be at least 1"));
        }
        if self.degree == 0 {
            return Err(usage("D", "must be at least 1"));
        }
        if self.r_grid == 0 {
            return Err(usage("r-grid", "must be at least 1"));
        }
        if self.t_grid == 0 {
            return Err(usage("t-grid", "must be at least 1"));
        }
        if self.len == 0 {
            return Err(usage("len", "must be at least 1"));
        }
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(usage("tol", format!("must be positive, got {}", self.tol)));
        }
        if let Some(s) = self.slack {
            if !(s >= 0.0) || !s.is_finite() {
                return Err(usage("slack", format!("must be nonnegative, got {s}")));
            }
        }
        if let Some(p) = &self.p {
            if p.iter().any(|&x| !(x >= 1.0) || !x.is_finite()) {
                return Err(usage("p", "every p must be finite and at least 1"));
            }
        }
        if let Some(n) = &self.order {
            if n.contains(&0) {
                return Err(usage("N", "every N must be at least 1"));
            }
        }
        if let Some(r) = &self.r {
            if r.iter().any(|x| !(0.0..=1.0).contains(x)) {
                return Err(usage("r", "every r must lie in [0, 1]"));
            }
        }
        Ok(())
    }

    pub fn p_values(&self, default: &[f64]) -> Vec<f64> {
        self.p.clone().unwrap_or_else(|| default.to_vec())
    }

    pub fn orders(&self, default: &[usize]) -> Vec<usize> {
        self.order.clone().unwrap_or_else(|| default.to_vec())
    }

    pub fn family_or(&self, default: FamilyKind) -> FamilyKind {
        self.family.map_or(default, FamilyKind::from)
    }

    pub fn slack_or(&self, default: f64) -> f64 {
        self.slack.unwrap_or(default)
    }

    /// `r` values: the explicit list, or `(j+1)·max/r_grid` for `j < r_grid`.
    pub fn radii_up_to(&self, max: f64) -> Result<Vec<f64>, CliError> {
        match &self.r {
            Some(r) => {
                if r.iter().any(|&x| x > max) {
                    return Err(usage("r", format!("this check needs r <= {max}")));
                }
                Ok(r.clone())
            }
            None => Ok((0..self.r_grid)
                .map(|j| (j + 1) as f64 * max / self.r_grid as f64)
                .collect()),
        }
    }

    /// Power `k` of `--psi z^k` (`z` means 1).
    pub fn psi_power(&self) -> Result<usize, CliError> {
        let raw = self.psi.as_deref().unwrap_or("z");
        let k = match raw.strip_prefix("z") {
            Some("") => Some(1),
            Some(rest) => rest.trim_start_matches('^').parse().ok(),
            None => None,
        };
        match k {
            Some(k) if k >= 1 => Ok(k),
            _ => Err(usage(
                "psi",
                format!("expected z or z^k with k >= 1, got '{raw}'"),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> RunConfig {
        RunConfig::try_parse_from(std::iter::once("bohr").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn flags_after_the_subcommand() {
        let c = parse(&["rstar", "--p", "1,2", "--N", "2"]);
        assert_eq!(c.opts.p, Some(vec![1.0, 2.0]));
        assert_eq!(c.opts.order, Some(vec![2]));
        assert_eq!(c.command.name(), "rstar");
    }

    #[test]
    fn verify_names() {
        let c = parse(&["verify", "rogosinski-a", "--family", "poly-random"]);
        assert_eq!(c.command.name(), "verify-rogosinski-a");
        assert_eq!(c.opts.family, Some(FamilyArg::PolyRandom));
    }

    #[test]
    fn zero_samples_is_a_usage_error() {
        let c = parse(&["verify", "bohr", "--samples", "0"]);
        assert!(matches!(
            c.opts.validate(),
            Err(CliError::Usage {
                field: "samples",
                ..
            })
        ));
    }

    #[test]
    fn psi_parsing() {
        let mut c = parse(&["verify", "refined"]);
        assert_eq!(c.opts.psi_power().unwrap(), 1);
        c.opts.psi = Some("z^2".into());
        assert_eq!(c.opts.psi_power().unwrap(), 2);
        c.opts.psi = Some("w".into());
        assert!(c.opts.psi_power().is_err());
    }

    #[test]
    fn default_radius_grid() {
        let c = parse(&["verify", "bohr", "--r-grid", "3"]);
        let r = c.opts.radii_up_to(1.0 / 3.0).unwrap();
        assert_eq!(r.len(), 3);
        assert!((r[2] - 1.0 / 3.0).abs() < 1e-15);
    }
}
