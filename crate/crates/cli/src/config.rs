use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::Failure;

/// Parameter values read from `--config`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub a: Option<f64>,
    pub b: Option<f64>,
    #[serde(rename = "D")]
    pub d: Option<f64>,
    pub n: Option<usize>,
    pub r: Option<f64>,
    pub delta: Option<f64>,
    pub r_list: Option<Vec<f64>>,
    pub delta_ratio: Option<f64>,
    pub grid_points: Option<usize>,
    pub order: Option<usize>,
    pub tol: Option<f64>,
    pub jobs: Option<usize>,
    pub out: Option<PathBuf>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Self, Failure> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("bad config {}: {e}", path.display())))
    }
}

/// The flag if given, else the config value.
pub fn pick<T>(flag: Option<T>, config: Option<T>, name: &str) -> Result<T, Failure> {
    flag.or(config).ok_or_else(|| Failure::Usage(format!("missing --{name}")))
}

pub fn finite(x: f64, name: &str) -> Result<f64, Failure> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Failure::Usage(format!("--{name} = {x} is not finite")))
    }
}

pub fn positive(x: f64, name: &str) -> Result<f64, Failure> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(Failure::Usage(format!("--{name} = {x} must be positive")))
    }
}
