//! Building scenarios from raw activity: normalization, secondary demand,
//! demand shifting and price curves.

pub mod ingest;
pub mod pricing;
pub mod synth;

use serde::{Deserialize, Serialize};

pub use ingest::{ingest_activity, ingest_activity_csv, GridAssignment, IngestReport, RawActivityRecord};
pub use pricing::{
    default_electricity_multipliers, dynamic_electricity_price, dynamic_spectrum_price, PriceKind,
    PricePolicy,
};
pub use synth::{synth_grid_activity, synth_traffic, TrafficProfile};

use crate::error::{Error, Result};
use crate::model::{BaseStation, BsKind, OffloadMode, Scenario, TimeGrid, TrafficSeries};

/// Share of a cell's normalized load that the secondary network asks for.
pub const DEFAULT_BETA: f64 = 0.7;
/// Seed of the synthetic traffic behind [`reference_scenario`].
pub const REFERENCE_SEED: u64 = 2021;
pub const REFERENCE_N_SBS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// Divide each station's series by its own maximum.
    #[default]
    Peak,
    /// Divide every series by the same constant.
    Global(f64),
}

/// How the secondary network's demand is timed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DemandKind {
    /// Served when it arises.
    #[default]
    Ndt,
    /// Delay tolerant: moved once, as a block, to the cheapest spectrum period.
    Dt,
}

impl std::str::FromStr for DemandKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ndt" => Ok(DemandKind::Ndt),
            "dt" => Ok(DemandKind::Dt),
            other => Err(Error::Config(format!("unknown demand kind '{other}'"))),
        }
    }
}

pub fn normalize_series(raw: &[Vec<f64>], how: Normalization) -> Result<Vec<TrafficSeries>> {
    raw.iter()
        .enumerate()
        .map(|(i, series)| {
            let divisor = match how {
                Normalization::Peak => series.iter().cloned().fold(0.0, f64::max),
                Normalization::Global(d) => d,
            };
            if !(divisor > 0.0 && divisor.is_finite()) {
                return Err(Error::Degenerate(format!(
                    "station {i}: cannot normalize by {divisor} (all-zero series or bad divisor)"
                )));
            }
            TrafficSeries::new(series.iter().map(|v| v / divisor).collect()).map_err(|e| {
                Error::Config(format!("station {i}: {e}; raise the global divisor"))
            })
        })
        .collect()
}

/// RBs each small cell's secondary user asks for: `floor(beta * load * capacity)`.
pub fn sn_demand_from_pn(
    sbs: &[BaseStation],
    sbs_traffic: &[TrafficSeries],
    beta: f64,
) -> Result<Vec<Vec<u32>>> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::Domain(format!("beta {beta} outside [0, 1]")));
    }
    if sbs.len() != sbs_traffic.len() {
        return Err(Error::InvalidScenario(format!(
            "{} small cells but {} traffic series",
            sbs.len(),
            sbs_traffic.len()
        )));
    }
    Ok(sbs
        .iter()
        .zip(sbs_traffic)
        .map(|(bs, series)| {
            let cap = f64::from(bs.rb_capacity);
            series
                .values()
                .iter()
                .map(|tau| ((beta * tau * cap).floor() as u32).min(bs.rb_capacity))
                .collect()
        })
        .collect())
}

fn first_extreme(v: impl Iterator<Item = f64>, better: impl Fn(f64, f64) -> bool) -> usize {
    let mut best: Option<(usize, f64)> = None;
    for (i, x) in v.enumerate() {
        if best.is_none_or(|(_, b)| better(x, b)) {
            best = Some((i, x));
        }
    }
    best.map_or(0, |(i, _)| i)
}

/// Rotation, in slots, that moves the aggregate demand peak onto the cheapest
/// spectrum slot. Ties go to the earliest slot on both sides.
pub fn dt_offset(sn_demand: &[Vec<u32>], spectrum_price: &[f64]) -> Result<usize> {
    let l = spectrum_price.len();
    if sn_demand.iter().any(|s| s.len() != l) {
        return Err(Error::InvalidScenario(
            "demand and price series differ in length".into(),
        ));
    }
    if l == 0 {
        return Ok(0);
    }
    let aggregate = (0..l).map(|t| sn_demand.iter().map(|s| f64::from(s[t])).sum::<f64>());
    let peak = first_extreme(aggregate, |x, b| x > b);
    let cheapest = first_extreme(spectrum_price.iter().copied(), |x, b| x < b);
    Ok((cheapest + l - peak) % l)
}

/// Rotates every small cell's demand by the same [`dt_offset`].
pub fn dt_shift(sn_demand: &[Vec<u32>], spectrum_price: &[f64]) -> Result<Vec<Vec<u32>>> {
    let k = dt_offset(sn_demand, spectrum_price)?;
    Ok(sn_demand
        .iter()
        .map(|s| {
            let mut s = s.clone();
            s.rotate_right(k);
            s
        })
        .collect())
}

/// Everything needed to turn raw per-station activity into a scenario.
#[derive(Debug, Clone)]
pub struct ScenarioInputs {
    pub grid: TimeGrid,
    /// Macro first.
    pub stations: Vec<BaseStation>,
    /// Raw activity per station, macro first.
    pub raw_activity: Vec<Vec<f64>>,
    pub normalization: Normalization,
    pub beta: f64,
    pub demand: DemandKind,
    pub pricing: PricePolicy,
    pub offload_mode: OffloadMode,
    pub mbs_capacity_limit: f64,
}

impl ScenarioInputs {
    pub fn build(&self) -> Result<Scenario> {
        let traffic = normalize_series(&self.raw_activity, self.normalization)?;
        let pricing = self.pricing.series(self.grid, &traffic)?;
        let sbs = self.stations.get(1..).unwrap_or_default();
        let mut demand = sn_demand_from_pn(sbs, traffic.get(1..).unwrap_or_default(), self.beta)?;
        if self.demand == DemandKind::Dt {
            demand = dt_shift(&demand, pricing.spectrum())?;
        }
        Scenario::builder(self.grid, self.stations.clone())
            .pn_traffic(traffic)
            .sn_demand(demand)
            .pricing(pricing)
            .offload_mode(self.offload_mode)
            .mbs_capacity_limit(self.mbs_capacity_limit)
            .build()
    }
}

/// Macro cell followed by `n` small cells of default parameters, cycling
/// RRH, micro, pico, femto.
pub fn cycled_stations(n: usize) -> Vec<BaseStation> {
    std::iter::once(BaseStation::template(BsKind::Macro))
        .chain((0..n).map(|j| BaseStation::template(BsKind::SMALL[j % 4])))
        .collect()
}

/// Synthetic day with `n` cycled small cells.
pub fn synthetic_inputs(n: usize, seed: u64, pricing: PriceKind, demand: DemandKind) -> ScenarioInputs {
    let grid = TimeGrid::default();
    ScenarioInputs {
        grid,
        stations: cycled_stations(n),
        raw_activity: synth_traffic(seed, grid, n, TrafficProfile::Diurnal),
        normalization: Normalization::Peak,
        beta: DEFAULT_BETA,
        demand,
        pricing: PricePolicy::default().with_kind(pricing),
        offload_mode: OffloadMode::Direct,
        mbs_capacity_limit: 1.0,
    }
}

pub fn synthetic_scenario(n: usize, seed: u64, pricing: PriceKind, demand: DemandKind) -> Result<Scenario> {
    synthetic_inputs(n, seed, pricing, demand).build()
}

/// Twelve small cells, three of each kind, on a fixed synthetic day.
pub fn reference_scenario(pricing: PriceKind, demand: DemandKind) -> Result<Scenario> {
    synthetic_scenario(REFERENCE_N_SBS, REFERENCE_SEED, pricing, demand)
}
