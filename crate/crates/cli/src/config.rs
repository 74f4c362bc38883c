//! Run configuration: seeded determinism plus tolerance overrides, loadable
//! from a JSON file.

use serde::Deserialize;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: u32,
    /// Threshold for float fallbacks of symbolic checks.
    pub symbolic_tolerance: f64,
    /// Positional tolerance of the ODE oracle.
    pub ode_tolerance: f64,
    /// Default family parameters for `simulate`; explicit flags win.
    pub family: FamilyDefaults,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDefaults {
    pub a: Option<String>,
    pub b: Option<String>,
    pub gamma: Option<u8>,
    pub rho0: Option<String>,
    pub phi: Option<String>,
    pub f: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            samples: 20,
            symbolic_tolerance: 1e-10,
            ode_tolerance: 1e-6,
            family: FamilyDefaults::default(),
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config: {0}")]
    Io(#[from] std::io::Error),
    #[error("config is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("config key '{key}': {problem}")]
    Invalid { key: &'static str, problem: String },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    seed: Option<u64>,
    samples: Option<u32>,
    symbolic_tolerance: Option<f64>,
    ode_tolerance: Option<f64>,
    family: Option<FamilyDefaults>,
}

pub fn load_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path)?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let raw: RawConfig = serde_json::from_str(text)?;
    let mut cfg = RunConfig::default();
    if let Some(seed) = raw.seed {
        cfg.seed = seed;
    }
    if let Some(samples) = raw.samples {
        if samples == 0 {
            return Err(ConfigError::Invalid {
                key: "samples",
                problem: "must be at least 1".into(),
            });
        }
        cfg.samples = samples;
    }
    if let Some(tol) = raw.symbolic_tolerance {
        if !(tol > 0.0) {
            return Err(ConfigError::Invalid {
                key: "symbolic_tolerance",
                problem: "must be positive".into(),
            });
        }
        cfg.symbolic_tolerance = tol;
    }
    if let Some(tol) = raw.ode_tolerance {
        if !(tol > 0.0) {
            return Err(ConfigError::Invalid {
                key: "ode_tolerance",
                problem: "must be positive".into(),
            });
        }
        cfg.ode_tolerance = tol;
    }
    if let Some(family) = raw.family {
        if let Some(g) = family.gamma {
            if g > 1 {
                return Err(ConfigError::Invalid {
                    key: "family.gamma",
                    problem: "must be 0 or 1".into(),
                });
            }
        }
        cfg.family = family;
    }
    Ok(cfg)
}
