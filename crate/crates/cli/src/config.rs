//! Experiment configuration: a TOML file whose keys are overridden by
//! command-line flags.

use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Deserialize;

use crate::UsageError;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub surface: Option<String>,
    pub alpha: Option<String>,
    pub beta: Option<String>,
    /// Curve distance of the Pell pair used when `alpha`/`beta` are unset.
    pub d: Option<u32>,
    pub powers: Option<[i64; 2]>,
    /// `lo..hi`, inclusive, for family sweeps.
    pub range: Option<String>,
    pub max_syllables: Option<usize>,
    pub max_exp: Option<i64>,
    pub samples: Option<usize>,
    pub radius: Option<u64>,
    pub kappa: Option<i64>,
    pub a2: Option<f64>,
    pub radius_cap: Option<u64>,
    pub seed: Option<u64>,
    pub cache_dir: Option<PathBuf>,
    pub out: Option<PathBuf>,
    /// Ledger text produced by `exp constants`, reused instead of
    /// re-estimating.
    pub ledger: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())).into())
    }

    pub fn validate(&self) -> Result<(), UsageError> {
        let positive = [
            ("max_syllables", self.max_syllables.map(|v| v as i64)),
            ("max_exp", self.max_exp),
            ("samples", self.samples.map(|v| v as i64)),
            ("radius", self.radius.map(|v| v as i64)),
            ("radius_cap", self.radius_cap.map(|v| v as i64)),
            ("d", self.d.map(i64::from)),
        ];
        for (name, v) in positive {
            if matches!(v, Some(x) if x <= 0) {
                return Err(UsageError(format!("{name} must be positive")));
            }
        }
        if let Some(range) = &self.range {
            parse_range(range)?;
        }
        Ok(())
    }
}

/// `lo..hi` or `lo..=hi`, both inclusive of `hi`.
pub fn parse_range(s: &str) -> Result<(u32, u32), UsageError> {
    let bad = || UsageError(format!("expected a range like 1..8, got {s:?}"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}
