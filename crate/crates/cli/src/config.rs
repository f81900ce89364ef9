//! Command-line arguments and the run configuration they describe.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hirota_core::chain::ChainSpec;
use hirota_core::{Error, Result};
use serde::Serialize;

#[derive(Parser, Debug, Clone)]
#[command(
    name = "hirota",
    version,
    about = "Spectra and functional relations of small XXX spin chains"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: RunConfig,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Hamiltonian spectrum and interpolated eigenvalue functions per eigenstate.
    Spectrum,
    /// Run verification suites.
    Verify {
        #[arg(value_enum, default_value_t = Suite::All)]
        which: Suite,
    },
    /// Solve for Q-functions, their roots and Bethe residuals per eigenstate.
    SolveQ,
}

impl Command {
    pub fn name(&self) -> String {
        match self {
            Command::Spectrum => "spectrum".into(),
            Command::Verify { which } => format!("verify {}", which.name()),
            Command::SolveQ => "solve-q".into(),
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Hirota,
    Lax,
    Tq,
    HirotaLike,
    Plucker,
    Identities,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Hirota,
        Suite::Lax,
        Suite::Tq,
        Suite::HirotaLike,
        Suite::Plucker,
        Suite::Identities,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hirota => "hirota",
            Suite::Lax => "lax",
            Suite::Tq => "tq",
            Suite::HirotaLike => "hirota-like",
            Suite::Plucker => "plucker",
            Suite::Identities => "identities",
            Suite::All => "all",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TopologyArg {
    Periodic,
    Open,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Exact,
    Float,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    /// Number of sites N.
    #[arg(long, global = true, default_value_t = 2)]
    pub sites: usize,
    #[arg(long, global = true, value_enum, default_value_t = TopologyArg::Periodic)]
    pub topology: TopologyArg,
    /// Boundary parameter α (open chains).
    #[arg(
        long,
        global = true,
        default_value_t = 0.7,
        allow_negative_numbers = true
    )]
    pub alpha: f64,
    /// Boundary parameter β (open chains).
    #[arg(
        long,
        global = true,
        default_value_t = 1.3,
        allow_negative_numbers = true
    )]
    pub beta: f64,
    /// Boundary parameter ξ (open chains).
    #[arg(
        long,
        global = true,
        default_value_t = 0.5,
        allow_negative_numbers = true
    )]
    pub xi: f64,
    /// Highest fusion level k.
    #[arg(long, global = true, default_value_t = 3)]
    pub kmax: usize,
    /// Arithmetic of the Plücker construction.
    #[arg(long, global = true, value_enum, default_value_t = Model::Float)]
    pub model: Model,
    /// Pass threshold for residuals.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Number of sample points of the spectral parameter.
    #[arg(long, global = true, default_value_t = 20)]
    pub samples: usize,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Constant added to Δ in the T-Q suite.
    #[arg(
        long,
        global = true,
        hide = true,
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    pub delta_shift: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            sites: 2,
            topology: TopologyArg::Periodic,
            alpha: 0.7,
            beta: 1.3,
            xi: 0.5,
            kmax: 3,
            model: Model::Float,
            tol: 1e-8,
            seed: 42,
            samples: 20,
            out: None,
            format: Format::Json,
            delta_shift: 0.0,
        }
    }
}

impl RunConfig {
    pub fn chain(&self) -> ChainSpec {
        match self.topology {
            TopologyArg::Periodic => ChainSpec::periodic(self.sites),
            TopologyArg::Open => ChainSpec::open(self.sites, self.alpha, self.beta, self.xi),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.chain().validate()?;
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "tol",
                reason: format!("must be positive, got {}", self.tol),
            });
        }
        if self.samples == 0 {
            return Err(Error::InvalidParameter {
                name: "samples",
                reason: "must be at least 1".into(),
            });
        }
        if !self.delta_shift.is_finite() {
            return Err(Error::InvalidParameter {
                name: "delta-shift",
                reason: "must be finite".into(),
            });
        }
        Ok(())
    }
}
