//! TOML run manifests.
//!
//! ```toml
//! version = 1
//!
//! [analytic]      # AnalyticParams
//! [frame]         # FrameTiming
//! [simulation]    # SimConfig
//! [sweep]         # techniques, g_grid, replications, base_seed, relations
//! ```
//!
//! Every section and every key inside it is optional; unknown keys are
//! rejected.

use std::path::Path;

use serde::Deserialize;

use crate::analytic::{AnalyticParams, GridRange};
use crate::frame_timing::FrameTiming;
use crate::protocols::SimConfig;
use crate::sweep::SweepSpec;
use crate::technique::{Relation, Technique};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub version: u32,
    #[serde(default)]
    pub analytic: AnalyticParams,
    #[serde(default)]
    pub frame: FrameTiming,
    #[serde(default)]
    pub simulation: SimConfig,
    #[serde(default)]
    pub sweep: SweepSection,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepSection {
    pub techniques: Vec<Technique>,
    pub g_grid: GridRange,
    pub replications: u32,
    pub base_seed: Option<u64>,
    /// Relations plotted by `compare`, one SVG each.
    pub relations: Vec<Relation>,
}

impl Default for SweepSection {
    fn default() -> Self {
        let d = SweepSpec::default();
        Self {
            techniques: d.techniques,
            g_grid: d.g_grid,
            replications: d.replications,
            base_seed: None,
            relations: Relation::ALL.to_vec(),
        }
    }
}

/// A manifest that could not be used. Maps to exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: Box<toml::de::Error> },
    #[error("{path}: unsupported version {found}, expected {SCHEMA_VERSION}")]
    Version { path: String, found: u32 },
}

impl RunConfig {
    pub fn parse(text: &str, path: &str) -> Result<Self, ConfigError> {
        let cfg: RunConfig =
            toml::from_str(text).map_err(|e| ConfigError::Parse { path: path.into(), source: Box::new(e) })?;
        if cfg.version != SCHEMA_VERSION {
            return Err(ConfigError::Version { path: path.into(), found: cfg.version });
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let name = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: name.clone(), source })?;
        Self::parse(&text, &name)
    }

    /// Sweep described by the manifest, using `seed` when the manifest
    /// leaves `base_seed` unset.
    pub fn sweep_spec(&self, seed: u64) -> SweepSpec {
        SweepSpec {
            techniques: self.sweep.techniques.clone(),
            g_grid: self.sweep.g_grid,
            replications: self.sweep.replications,
            base_seed: self.sweep.base_seed.unwrap_or(seed),
            analytic_params: self.analytic,
            sim: self.simulation.clone(),
        }
    }
}
