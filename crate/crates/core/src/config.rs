//! TOML scenario configuration.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{BaseStation, BsKind, OffloadMode, Scenario, TimeGrid};
use crate::scenario_gen::{
    ingest_activity_csv, synth_traffic, DemandKind, GridAssignment, Normalization, PricePolicy,
    ScenarioInputs, TrafficProfile, DEFAULT_BETA,
};
use crate::solvers::{SaParams, SolveOptions, DEFAULT_ES_CAP};

/// Optional replacements for a station's default parameters.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StationOverrides {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_o: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_tx: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_sleep: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rb_capacity: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bandwidth_mhz: Option<f64>,
}

impl StationOverrides {
    fn apply(&self, kind: BsKind) -> BaseStation {
        let mut bs = BaseStation::template(kind);
        if let Some(v) = self.p_o {
            bs.p_o = v;
        }
        if let Some(v) = self.zeta {
            bs.zeta = v;
        }
        if let Some(v) = self.p_tx {
            bs.p_tx = v;
        }
        if self.p_sleep.is_some() {
            bs.p_sleep = self.p_sleep;
        }
        if let Some(v) = self.rb_capacity {
            bs.rb_capacity = v;
        }
        if let Some(v) = self.bandwidth_mhz {
            bs.bandwidth_mhz = v;
        }
        bs
    }
}

/// `count` small cells of one kind sharing the same overrides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StationGroup {
    pub kind: BsKind,
    #[serde(default = "one")]
    pub count: usize,
    #[serde(default, flatten)]
    pub overrides: StationOverrides,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TrafficSource {
    Synthetic {
        seed: u64,
        #[serde(default)]
        profile: TrafficProfile,
    },
    /// Activity CSV; a relative path is resolved against the config file.
    Csv {
        path: PathBuf,
        #[serde(flatten)]
        assignment: GridAssignment,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DemandConfig {
    #[serde(default = "default_beta")]
    pub beta: f64,
    #[serde(default)]
    pub kind: DemandKind,
}

fn default_beta() -> f64 {
    DEFAULT_BETA
}

impl Default for DemandConfig {
    fn default() -> Self {
        DemandConfig {
            beta: DEFAULT_BETA,
            kind: DemandKind::Ndt,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    #[serde(default)]
    pub sa: SaParams,
    #[serde(default = "default_es_cap")]
    pub es_cap: usize,
}

fn default_es_cap() -> usize {
    DEFAULT_ES_CAP
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            sa: SaParams::default(),
            es_cap: DEFAULT_ES_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default)]
    pub grid: TimeGrid,
    #[serde(default, rename = "macro")]
    pub mbs: StationOverrides,
    /// Small cells, in order.
    pub stations: Vec<StationGroup>,
    pub traffic: TrafficSource,
    #[serde(default)]
    pub normalization: Normalization,
    #[serde(default)]
    pub pricing: PricePolicy,
    #[serde(default)]
    pub demand: DemandConfig,
    #[serde(default)]
    pub offload_mode: OffloadMode,
    #[serde(default = "default_limit")]
    pub mbs_capacity_limit: f64,
    #[serde(default)]
    pub solver: SolverConfig,
}

fn default_limit() -> f64 {
    1.0
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    /// Reads a config file and makes a CSV traffic path absolute.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = Self::from_toml(&text)?;
        if let TrafficSource::Csv { path: csv, .. } = &mut cfg.traffic {
            if csv.is_relative() {
                if let Some(dir) = path.parent() {
                    *csv = dir.join(&*csv);
                }
            }
        }
        Ok(cfg)
    }

    pub fn stations(&self) -> Vec<BaseStation> {
        std::iter::once(self.mbs.apply(BsKind::Macro))
            .chain(
                self.stations
                    .iter()
                    .flat_map(|g| std::iter::repeat_n(g.overrides.apply(g.kind), g.count)),
            )
            .collect()
    }

    pub fn n_sbs(&self) -> usize {
        self.stations.iter().map(|g| g.count).sum()
    }

    fn raw_activity(&self) -> Result<Vec<Vec<f64>>> {
        match &self.traffic {
            TrafficSource::Synthetic { seed, profile } => {
                Ok(synth_traffic(*seed, self.grid, self.n_sbs(), *profile))
            }
            TrafficSource::Csv { path, assignment } => {
                if assignment.sbs_grids.len() != self.n_sbs() {
                    return Err(Error::Config(format!(
                        "{} small cells but {} sbs_grids",
                        self.n_sbs(),
                        assignment.sbs_grids.len()
                    )));
                }
                Ok(ingest_activity_csv(path, assignment, self.grid.num_slots())?.series)
            }
        }
    }

    pub fn inputs(&self) -> Result<ScenarioInputs> {
        if let Some(g) = self.stations.iter().find(|g| g.kind == BsKind::Macro) {
            return Err(Error::Config(format!(
                "station groups list small cells only; found {:?}",
                g.kind
            )));
        }
        Ok(ScenarioInputs {
            grid: self.grid,
            stations: self.stations(),
            raw_activity: self.raw_activity()?,
            normalization: self.normalization,
            beta: self.demand.beta,
            demand: self.demand.kind,
            pricing: self.pricing.clone(),
            offload_mode: self.offload_mode,
            mbs_capacity_limit: self.mbs_capacity_limit,
        })
    }

    pub fn build_scenario(&self) -> Result<Scenario> {
        self.inputs()?.build()
    }

    pub fn solve_options(&self) -> SolveOptions {
        SolveOptions {
            sa: self.solver.sa.clone(),
            es_cap: self.solver.es_cap,
            parallel: true,
        }
    }
}
