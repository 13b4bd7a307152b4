//! Fixed and dynamic electricity and spectrum price curves.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{PricingSeries, TimeGrid, TrafficSeries};

pub const FIXED_ELECTRICITY_PRICE: f64 = 0.1293;
pub const FIXED_SPECTRUM_PRICE: f64 = 0.13;

/// Hourly electricity price factors: cheap overnight, a morning shoulder and
/// an early-evening peak.
const HOURLY_ELECTRICITY_FACTORS: [f64; 24] = [
    0.62, 0.58, 0.55, 0.54, 0.55, 0.60, 0.78, 1.05, 1.28, 1.22, 1.10, 1.02, //
    0.98, 0.96, 0.98, 1.08, 1.30, 1.55, 1.60, 1.42, 1.18, 0.98, 0.82, 0.70,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PriceKind {
    #[default]
    Fixed,
    Dynamic,
}

impl std::str::FromStr for PriceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fixed" => Ok(PriceKind::Fixed),
            "dynamic" => Ok(PriceKind::Dynamic),
            other => Err(Error::Config(format!("unknown pricing policy '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PricePolicy {
    pub kind: PriceKind,
    /// £ per kWh.
    pub fixed_electricity: f64,
    /// £ per RB per slot.
    pub fixed_spectrum: f64,
    /// Per-slot electricity factors; the built-in daily curve when absent.
    pub electricity_multipliers: Option<Vec<f64>>,
    pub spectrum_m_min: f64,
    pub spectrum_m_max: f64,
}

impl Default for PricePolicy {
    fn default() -> Self {
        PricePolicy {
            kind: PriceKind::Fixed,
            fixed_electricity: FIXED_ELECTRICITY_PRICE,
            fixed_spectrum: FIXED_SPECTRUM_PRICE,
            electricity_multipliers: None,
            spectrum_m_min: 0.5,
            spectrum_m_max: 1.5,
        }
    }
}

impl PricePolicy {
    pub fn with_kind(mut self, kind: PriceKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.fixed_electricity > 0.0 && self.fixed_spectrum > 0.0) {
            return Err(Error::Config("fixed prices must be positive".into()));
        }
        if !(0.0 < self.spectrum_m_min && self.spectrum_m_min <= self.spectrum_m_max) {
            return Err(Error::Config(format!(
                "spectrum multiplier range [{}, {}] must be positive and ordered",
                self.spectrum_m_min, self.spectrum_m_max
            )));
        }
        if let Some(m) = &self.electricity_multipliers {
            if m.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
                return Err(Error::Config("electricity multipliers must be positive".into()));
            }
            if self.kind == PriceKind::Fixed && m.iter().any(|v| *v != 1.0) {
                return Err(Error::Config(
                    "fixed pricing takes no electricity multipliers other than 1".into(),
                ));
            }
        }
        Ok(())
    }

    /// Price series for a day with the given primary-network traffic.
    pub fn series(&self, grid: TimeGrid, traffic: &[TrafficSeries]) -> Result<PricingSeries> {
        self.validate()?;
        let l = grid.num_slots();
        match self.kind {
            PriceKind::Fixed => PricingSeries::fixed(l, self.fixed_electricity, self.fixed_spectrum),
            PriceKind::Dynamic => {
                let mult = match &self.electricity_multipliers {
                    Some(m) => m.clone(),
                    None => default_electricity_multipliers(grid),
                };
                PricingSeries::new(
                    dynamic_electricity_price(&mult, self.fixed_electricity, l)?,
                    dynamic_spectrum_price(
                        traffic,
                        self.fixed_spectrum,
                        self.spectrum_m_min,
                        self.spectrum_m_max,
                    )?,
                )
            }
        }
    }
}

/// The built-in daily electricity curve sampled at slot midpoints, linearly
/// interpolated between hourly values.
pub fn default_electricity_multipliers(grid: TimeGrid) -> Vec<f64> {
    let slot_h = f64::from(grid.slot_min()) / 60.0;
    (0..grid.num_slots())
        .map(|t| {
            // Hourly values sit at the middle of their hour.
            let x = ((t as f64 + 0.5) * slot_h - 0.5).rem_euclid(24.0);
            let i = x.floor() as usize % 24;
            let f = x - x.floor();
            HOURLY_ELECTRICITY_FACTORS[i] * (1.0 - f) + HOURLY_ELECTRICITY_FACTORS[(i + 1) % 24] * f
        })
        .collect()
}

pub fn dynamic_electricity_price(
    multipliers: &[f64],
    fixed_price: f64,
    num_slots: usize,
) -> Result<Vec<f64>> {
    if multipliers.len() != num_slots {
        return Err(Error::Config(format!(
            "{} electricity multipliers for {num_slots} slots",
            multipliers.len()
        )));
    }
    if multipliers.iter().any(|m| !(*m > 0.0)) {
        return Err(Error::Config("electricity multipliers must be positive".into()));
    }
    Ok(multipliers.iter().map(|m| m * fixed_price).collect())
}

/// Spectrum price that follows aggregate primary traffic.
///
/// Aggregate load is mapped affinely onto `[m_min, m_max]`, then the factors
/// are rescaled to average 1 so the mean price equals the fixed price.
pub fn dynamic_spectrum_price(
    traffic: &[TrafficSeries],
    fixed_price: f64,
    m_min: f64,
    m_max: f64,
) -> Result<Vec<f64>> {
    if !(fixed_price > 0.0) {
        return Err(Error::Config("fixed spectrum price must be positive".into()));
    }
    let l = traffic.first().map_or(0, |s| s.len());
    if l == 0 {
        return Err(Error::Config("no traffic to derive spectrum prices from".into()));
    }
    let aggregate: Vec<f64> = (0..l)
        .map(|t| traffic.iter().map(|s| s[t]).sum())
        .collect();
    let lo = aggregate.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = aggregate.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if hi == lo {
        log::info!("aggregate traffic is constant; spectrum price stays at the fixed price");
        return Ok(vec![fixed_price; l]);
    }
    let m: Vec<f64> = aggregate
        .iter()
        .map(|a| m_min + (m_max - m_min) * (a - lo) / (hi - lo))
        .collect();
    let mean = m.iter().sum::<f64>() / l as f64;
    Ok(m.iter().map(|v| v / mean * fixed_price).collect())
}
