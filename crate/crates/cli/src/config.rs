use std::path::{Path, PathBuf};

use qcr_core::bounds::{BoundModel, Method};
use qcr_core::inequalities::{SuiteConfig, SuiteName};

use crate::args::{BoundsArgs, Format, VerifyArgs};
use crate::error::{CliError, CliResult};
use crate::range::parse_grid;

#[derive(Debug, Clone, PartialEq)]
pub enum CommandKind {
    Bounds {
        models: Vec<BoundModel>,
        k: f64,
        method: Method,
    },
    Verify {
        suites: Vec<SuiteName>,
        extremal_iters: usize,
        tamper: f64,
    },
}

/// Validated settings for the grid-driven commands.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub rho: Vec<f64>,
    pub gamma: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub tolerance: Option<f64>,
    pub out_dir: PathBuf,
    pub format: Format,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl RunConfig {
    pub fn for_bounds(args: &BoundsArgs, out_dir: &Path) -> CliResult<Self> {
        let mut models = Vec::new();
        for m in &args.models {
            let model: BoundModel = m.parse()?;
            if !models.contains(&model) {
                models.push(model);
            }
        }
        let method: Method = args.method.parse()?;
        let rho = parse_grid(&args.rho).map_err(|e| usage(format!("--rho: {e}")))?;
        if rho.iter().any(|r| !(0.0..=1.0).contains(r)) {
            return Err(usage("--rho values must lie in [0, 1]"));
        }
        if rho.windows(2).any(|w| w[0] >= w[1]) {
            return Err(usage("--rho values must be strictly ascending"));
        }
        let gamma = parse_grid(&args.gamma).map_err(|e| usage(format!("--gamma: {e}")))?;
        if gamma.iter().any(|g| !(*g > 0.0 && *g < 1.0)) {
            return Err(usage("--gamma values must lie in (0, 1)"));
        }
        if !args.k.is_finite() || args.k < 0.0 {
            return Err(usage("--k must be a finite number >= 0"));
        }
        Ok(Self {
            command: CommandKind::Bounds {
                models,
                k: args.k,
                method,
            },
            rho,
            gamma,
            trials: 0,
            seed: 0,
            tolerance: None,
            out_dir: out_dir.to_path_buf(),
            format: args.format,
        })
    }

    pub fn for_verify(args: &VerifyArgs, out_dir: &Path) -> CliResult<Self> {
        let suites = if args.suite == "all" {
            SuiteName::ALL.to_vec()
        } else {
            vec![args.suite.parse::<SuiteName>()?]
        };
        if args.trials == 0 {
            return Err(usage("--trials must be >= 1"));
        }
        if let Some(t) = args.tolerance {
            if !(t.is_finite() && t >= 0.0) {
                return Err(usage("--tolerance must be a finite number >= 0"));
            }
        }
        if !args.tamper.is_finite() {
            return Err(usage("--tamper must be finite"));
        }
        Ok(Self {
            command: CommandKind::Verify {
                suites,
                extremal_iters: args.extremal_iters,
                tamper: args.tamper,
            },
            rho: Vec::new(),
            gamma: Vec::new(),
            trials: args.trials,
            seed: args.seed,
            tolerance: args.tolerance,
            out_dir: out_dir.to_path_buf(),
            format: args.format,
        })
    }

    pub fn suite_config(&self) -> SuiteConfig {
        let (extremal_iters, tamper) = match &self.command {
            CommandKind::Verify {
                extremal_iters,
                tamper,
                ..
            } => (*extremal_iters, *tamper),
            CommandKind::Bounds { .. } => (0, 0.0),
        };
        SuiteConfig {
            trials: self.trials,
            seed: self.seed,
            tolerance: self.tolerance,
            extremal_iters,
            tamper,
        }
    }
}
