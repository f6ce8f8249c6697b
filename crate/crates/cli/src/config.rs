use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use succdiff_core::extremal::{Functional, Goal};
use succdiff_core::membership::Grid;
use succdiff_core::{ClassSpec, NamedFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Verify,
    Trace,
    Search,
    Sample,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    #[default]
    Csv,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedEntry {
    pub name: String,
    #[serde(default)]
    pub params: Vec<f64>,
    /// Class to check against instead of the function's own.
    pub spec: Option<ClassSpec>,
}

impl NamedEntry {
    pub fn resolve(&self) -> Result<NamedFunction> {
        Ok(NamedFunction::parse(&self.name, &self.params)?)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSection {
    pub n: usize,
    pub functional: Functional,
    #[serde(default = "default_k")]
    pub k_atoms: usize,
    pub budget: usize,
    #[serde(default = "default_restarts")]
    pub restarts: usize,
    #[serde(default)]
    pub goal: Goal,
}

fn default_k() -> usize {
    2
}

fn default_restarts() -> usize {
    succdiff_core::extremal::DEFAULT_RESTARTS
}

/// Contents of a `--config` file. Every field is optional; command-line
/// flags override the matching fields.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<Command>,
    pub spec: Option<ClassSpec>,
    #[serde(default)]
    pub named: Vec<NamedEntry>,
    pub n_range: Option<(usize, usize)>,
    pub m_range: Option<(usize, usize)>,
    #[serde(default)]
    pub trials: usize,
    pub k_atoms: Option<usize>,
    pub seed: Option<u64>,
    pub grid: Option<Grid>,
    pub order: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub search: Option<SearchSection>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| anyhow::anyhow!("config {}: {e}", path.display()))
    }

    pub fn n_range(&self) -> Result<(usize, usize)> {
        let (lo, hi) = self.n_range.unwrap_or((2, 20));
        if lo < 1 || lo > hi {
            bail!("field `n_range`: [{lo}, {hi}] is empty or starts below 1");
        }
        Ok((lo, hi))
    }

    pub fn m_range(&self) -> Result<(usize, usize)> {
        let (lo, hi) = self.m_range.unwrap_or((1, usize::MAX));
        if lo < 1 || lo > hi {
            bail!("field `m_range`: [{lo}, {hi}] is empty or starts below 1");
        }
        Ok((lo, hi))
    }

    pub fn seed(&self) -> Result<u64> {
        self.seed
            .context("field `seed` is required for this command (set it in the config or pass --seed)")
    }

    pub fn spec(&self) -> Result<ClassSpec> {
        self.spec.context("field `spec` is required for this command")
    }

    pub fn grid(&self) -> Result<Grid> {
        let grid = self.grid.clone().unwrap_or_default();
        if grid.m == 0 || grid.radii.is_empty() || grid.radii.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
            bail!("field `grid`: radii must lie in (0, 1) and m must be positive");
        }
        Ok(grid)
    }

    pub fn k_atoms(&self) -> Result<usize> {
        let k = self.k_atoms.unwrap_or(4);
        if k == 0 || k > succdiff_core::extremal::MAX_ATOMS {
            bail!("field `k_atoms`: {k} must lie in 1..=16");
        }
        Ok(k)
    }
}
