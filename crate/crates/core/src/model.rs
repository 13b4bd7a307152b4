//! Domain types shared by the power model, the feasibility check and the solvers.
//!
//! A [`Scenario`] describes one macro cell over one day: the macro base station
//! (always at station index 0), its small cells, their normalized traffic, the
//! secondary network's spectrum demand and the per-slot prices. Every type here
//! is validated on construction and immutable afterwards.

use std::fmt;
use std::ops::{Add, AddAssign, Index};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance used for every currency comparison.
pub const CURRENCY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BsKind {
    Macro,
    Rrh,
    Micro,
    Pico,
    Femto,
}

impl BsKind {
    pub const ALL: [BsKind; 5] = [
        BsKind::Macro,
        BsKind::Rrh,
        BsKind::Micro,
        BsKind::Pico,
        BsKind::Femto,
    ];

    /// The four small-cell kinds, in the order used when cycling kinds.
    pub const SMALL: [BsKind; 4] = [BsKind::Rrh, BsKind::Micro, BsKind::Pico, BsKind::Femto];

    fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BsKind::Macro => "macro",
            BsKind::Rrh => "rrh",
            BsKind::Micro => "micro",
            BsKind::Pico => "pico",
            BsKind::Femto => "femto",
        }
    }
}

impl fmt::Display for BsKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BsKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "macro" | "mbs" => Ok(BsKind::Macro),
            "rrh" => Ok(BsKind::Rrh),
            "micro" => Ok(BsKind::Micro),
            "pico" => Ok(BsKind::Pico),
            "femto" => Ok(BsKind::Femto),
            other => Err(Error::Config(format!("unknown base-station kind '{other}'"))),
        }
    }
}

/// One node of the primary network with its power-model constants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaseStation {
    pub kind: BsKind,
    /// Constant circuit power in watts.
    pub p_o: f64,
    /// Load-dependent power slope (dimensionless).
    pub zeta: f64,
    /// Transmit power in watts.
    pub p_tx: f64,
    /// Sleep-mode power in watts; never read for the macro cell.
    pub p_sleep: Option<f64>,
    pub rb_capacity: u32,
    pub bandwidth_mhz: f64,
}

impl BaseStation {
    /// The default constants for `kind`.
    pub fn template(kind: BsKind) -> BaseStation {
        default_parameter_set()[kind].clone()
    }

    /// Sleep power of a small cell. The macro cell never sleeps, so this is 0 for it.
    pub fn sleep_power(&self) -> f64 {
        self.p_sleep.unwrap_or(0.0)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.p_o, self.zeta, self.p_tx, self.bandwidth_mhz]
            .iter()
            .all(|v| v.is_finite() && *v >= 0.0);
        if !finite {
            return Err(Error::InvalidScenario(format!(
                "{} station has a negative or non-finite power constant",
                self.kind
            )));
        }
        if self.rb_capacity == 0 {
            return Err(Error::InvalidScenario(format!(
                "{} station has zero resource blocks",
                self.kind
            )));
        }
        if self.kind != BsKind::Macro {
            match self.p_sleep {
                Some(ps) if ps.is_finite() && ps >= 0.0 && ps < self.p_o => {}
                Some(ps) => {
                    return Err(Error::InvalidScenario(format!(
                        "{} sleep power {ps} W must satisfy 0 <= p_sleep < p_o = {} W",
                        self.kind, self.p_o
                    )))
                }
                None => {
                    return Err(Error::InvalidScenario(format!(
                        "{} station is missing its sleep power",
                        self.kind
                    )))
                }
            }
        }
        Ok(())
    }
}

/// The five default base-station templates, indexable by [`BsKind`].
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterSet([BaseStation; 5]);

impl ParameterSet {
    pub fn iter(&self) -> impl Iterator<Item = &BaseStation> {
        self.0.iter()
    }
}

impl Index<BsKind> for ParameterSet {
    type Output = BaseStation;

    fn index(&self, kind: BsKind) -> &BaseStation {
        &self.0[kind.index()]
    }
}

/// Simulation defaults for the macro cell and the four small-cell kinds.
pub fn default_parameter_set() -> ParameterSet {
    let row = |kind, p_tx, p_o, zeta, p_sleep, rb_capacity, bandwidth_mhz| BaseStation {
        kind,
        p_o,
        zeta,
        p_tx,
        p_sleep,
        rb_capacity,
        bandwidth_mhz,
    };
    ParameterSet([
        row(BsKind::Macro, 20.0, 130.0, 4.7, None, 100, 20.0),
        row(BsKind::Rrh, 20.0, 84.0, 2.8, Some(56.0), 75, 15.0),
        row(BsKind::Micro, 6.3, 56.0, 2.6, Some(39.0), 50, 10.0),
        row(BsKind::Pico, 0.13, 6.8, 4.0, Some(4.3), 25, 5.0),
        row(BsKind::Femto, 0.05, 4.8, 8.0, Some(2.9), 15, 3.0),
    ])
}

/// A day split into equal slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TimeGridRepr", into = "TimeGridRepr")]
pub struct TimeGrid {
    horizon_min: u32,
    slot_min: u32,
}

#[derive(Serialize, Deserialize)]
struct TimeGridRepr {
    horizon_min: u32,
    slot_min: u32,
}

impl TryFrom<TimeGridRepr> for TimeGrid {
    type Error = Error;

    fn try_from(r: TimeGridRepr) -> Result<Self> {
        TimeGrid::new(r.horizon_min, r.slot_min)
    }
}

impl From<TimeGrid> for TimeGridRepr {
    fn from(g: TimeGrid) -> Self {
        TimeGridRepr {
            horizon_min: g.horizon_min,
            slot_min: g.slot_min,
        }
    }
}

impl Default for TimeGrid {
    fn default() -> Self {
        TimeGrid {
            horizon_min: 1440,
            slot_min: 10,
        }
    }
}

impl TimeGrid {
    pub fn new(horizon_min: u32, slot_min: u32) -> Result<Self> {
        if slot_min == 0 || horizon_min == 0 || horizon_min % slot_min != 0 {
            return Err(Error::InvalidScenario(format!(
                "horizon of {horizon_min} min is not a positive multiple of the {slot_min} min slot"
            )));
        }
        Ok(TimeGrid {
            horizon_min,
            slot_min,
        })
    }

    pub fn horizon_min(&self) -> u32 {
        self.horizon_min
    }

    pub fn slot_min(&self) -> u32 {
        self.slot_min
    }

    pub fn num_slots(&self) -> usize {
        (self.horizon_min / self.slot_min) as usize
    }

    /// Hour-of-day bucket a slot falls into.
    pub fn hour_of(&self, slot: usize) -> usize {
        slot * self.slot_min as usize / 60
    }
}

/// Per-slot normalized load, every element in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct TrafficSeries(Vec<f64>);

impl TrafficSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some((t, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(Error::InvalidScenario(format!(
                "traffic load {v} at slot {t} is outside [0, 1]"
            )));
        }
        Ok(TrafficSeries(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<f64>> for TrafficSeries {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        TrafficSeries::new(v)
    }
}

impl From<TrafficSeries> for Vec<f64> {
    fn from(s: TrafficSeries) -> Self {
        s.0
    }
}

impl Index<usize> for TrafficSeries {
    type Output = f64;

    fn index(&self, slot: usize) -> &f64 {
        &self.0[slot]
    }
}

/// On/off state of every station in one slot, macro cell first.
///
/// The macro bit is always on. Small cells are addressed by their 0-based
/// small-cell index, which is station index minus one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<bool>", into = "Vec<bool>")]
pub struct SwitchVector {
    gamma: Vec<bool>,
}

impl SwitchVector {
    pub fn new(gamma: Vec<bool>) -> Result<Self> {
        match gamma.first() {
            Some(true) => Ok(SwitchVector { gamma }),
            Some(false) => Err(Error::InvalidScenario(
                "the macro cell cannot be switched off".into(),
            )),
            None => Err(Error::InvalidScenario("empty switch vector".into())),
        }
    }

    pub fn all_on(n_sbs: usize) -> Self {
        SwitchVector {
            gamma: vec![true; n_sbs + 1],
        }
    }

    /// Builds a vector from a bit mask in which bit `j` set means small cell `j` is off.
    pub fn from_off_mask(n_sbs: usize, mask: u64) -> Self {
        let mut sv = SwitchVector::all_on(n_sbs);
        sv.set_off_mask(mask);
        sv
    }

    pub(crate) fn set_off_mask(&mut self, mask: u64) {
        for (j, on) in self.gamma[1..].iter_mut().enumerate() {
            *on = mask >> j & 1 == 0;
        }
    }

    /// Off-set as a bit mask (small cell `j` is bit `j`). Only meaningful for up to 64 small cells.
    pub fn off_mask(&self) -> u64 {
        self.gamma[1..]
            .iter()
            .enumerate()
            .filter(|(_, on)| !**on)
            .fold(0u64, |m, (j, _)| m | 1 << j)
    }

    pub fn n_sbs(&self) -> usize {
        self.gamma.len() - 1
    }

    /// Station-indexed view, macro at 0.
    pub fn gamma(&self) -> &[bool] {
        &self.gamma
    }

    pub fn sbs_on(&self, j: usize) -> bool {
        self.gamma[j + 1]
    }

    pub fn set_sbs(&mut self, j: usize, on: bool) {
        self.gamma[j + 1] = on;
    }

    pub fn flip_sbs(&mut self, j: usize) {
        self.gamma[j + 1] = !self.gamma[j + 1];
    }

    pub fn swap_sbs(&mut self, a: usize, b: usize) {
        self.gamma.swap(a + 1, b + 1);
    }

    pub fn off_count(&self) -> usize {
        self.gamma.iter().filter(|on| !**on).count()
    }

    pub fn off_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.gamma[1..]
            .iter()
            .enumerate()
            .filter(|(_, on)| !**on)
            .map(|(j, _)| j)
    }

    /// `1`/`0` per station, macro first.
    pub fn bitstring(&self) -> String {
        self.gamma.iter().map(|on| if *on { '1' } else { '0' }).collect()
    }

    pub fn from_bitstring(s: &str) -> Result<Self> {
        let gamma = s
            .chars()
            .map(|c| match c {
                '1' => Ok(true),
                '0' => Ok(false),
                other => Err(Error::Config(format!("invalid switch bit '{other}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        SwitchVector::new(gamma)
    }
}

impl TryFrom<Vec<bool>> for SwitchVector {
    type Error = Error;

    fn try_from(v: Vec<bool>) -> Result<Self> {
        SwitchVector::new(v)
    }
}

impl From<SwitchVector> for Vec<bool> {
    fn from(s: SwitchVector) -> Self {
        s.gamma
    }
}

impl fmt::Display for SwitchVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bitstring())
    }
}

/// Per-slot electricity (£/kWh) and spectrum (£/RB) prices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PricingRepr", into = "PricingRepr")]
pub struct PricingSeries {
    electricity: Vec<f64>,
    spectrum: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct PricingRepr {
    electricity: Vec<f64>,
    spectrum: Vec<f64>,
}

impl TryFrom<PricingRepr> for PricingSeries {
    type Error = Error;

    fn try_from(r: PricingRepr) -> Result<Self> {
        PricingSeries::new(r.electricity, r.spectrum)
    }
}

impl From<PricingSeries> for PricingRepr {
    fn from(p: PricingSeries) -> Self {
        PricingRepr {
            electricity: p.electricity,
            spectrum: p.spectrum,
        }
    }
}

impl PricingSeries {
    pub fn new(electricity: Vec<f64>, spectrum: Vec<f64>) -> Result<Self> {
        if electricity.len() != spectrum.len() {
            return Err(Error::InvalidScenario(format!(
                "electricity ({}) and spectrum ({}) price series differ in length",
                electricity.len(),
                spectrum.len()
            )));
        }
        let positive = |v: &f64| v.is_finite() && *v > 0.0;
        if !electricity.iter().all(positive) || !spectrum.iter().all(positive) {
            return Err(Error::InvalidScenario(
                "all prices must be strictly positive".into(),
            ));
        }
        Ok(PricingSeries {
            electricity,
            spectrum,
        })
    }

    /// Constant prices over `num_slots` slots.
    pub fn fixed(num_slots: usize, electricity: f64, spectrum: f64) -> Result<Self> {
        PricingSeries::new(vec![electricity; num_slots], vec![spectrum; num_slots])
    }

    pub fn electricity(&self) -> &[f64] {
        &self.electricity
    }

    pub fn spectrum(&self) -> &[f64] {
        &self.spectrum
    }

    pub fn len(&self) -> usize {
        self.electricity.len()
    }

    pub fn is_empty(&self) -> bool {
        self.electricity.is_empty()
    }
}

/// How an off small cell's load is added to the macro cell's load.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OffloadMode {
    /// Normalized loads are added as-is.
    #[default]
    Direct,
    /// Each load is weighted by the small cell's RB capacity relative to the macro's.
    CapacityScaled,
}

impl FromStr for OffloadMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(OffloadMode::Direct),
            "capacity-scaled" | "capacity_scaled" => Ok(OffloadMode::CapacityScaled),
            other => Err(Error::Config(format!("unknown offload mode '{other}'"))),
        }
    }
}

/// One macro cell over one day.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ScenarioRepr", into = "ScenarioRepr")]
pub struct Scenario {
    grid: TimeGrid,
    stations: Vec<BaseStation>,
    pn_traffic: Vec<TrafficSeries>,
    sn_demand: Vec<Vec<u32>>,
    pricing: PricingSeries,
    offload_mode: OffloadMode,
    mbs_capacity_limit: f64,
}

#[derive(Serialize, Deserialize)]
struct ScenarioRepr {
    grid: TimeGrid,
    stations: Vec<BaseStation>,
    pn_traffic: Vec<TrafficSeries>,
    sn_demand: Vec<Vec<u32>>,
    pricing: PricingSeries,
    offload_mode: OffloadMode,
    mbs_capacity_limit: f64,
}

impl TryFrom<ScenarioRepr> for Scenario {
    type Error = Error;

    fn try_from(r: ScenarioRepr) -> Result<Self> {
        Scenario::builder(r.grid, r.stations)
            .pn_traffic(r.pn_traffic)
            .sn_demand(r.sn_demand)
            .pricing(r.pricing)
            .offload_mode(r.offload_mode)
            .mbs_capacity_limit(r.mbs_capacity_limit)
            .build()
    }
}

impl From<Scenario> for ScenarioRepr {
    fn from(s: Scenario) -> Self {
        ScenarioRepr {
            grid: s.grid,
            stations: s.stations,
            pn_traffic: s.pn_traffic,
            sn_demand: s.sn_demand,
            pricing: s.pricing,
            offload_mode: s.offload_mode,
            mbs_capacity_limit: s.mbs_capacity_limit,
        }
    }
}

/// Assembles and validates a [`Scenario`].
#[derive(Debug, Clone)]
pub struct ScenarioBuilder {
    grid: TimeGrid,
    stations: Vec<BaseStation>,
    pn_traffic: Vec<TrafficSeries>,
    sn_demand: Option<Vec<Vec<u32>>>,
    pricing: Option<PricingSeries>,
    offload_mode: OffloadMode,
    mbs_capacity_limit: f64,
}

impl ScenarioBuilder {
    pub fn pn_traffic(mut self, traffic: Vec<TrafficSeries>) -> Self {
        self.pn_traffic = traffic;
        self
    }

    pub fn sn_demand(mut self, demand: Vec<Vec<u32>>) -> Self {
        self.sn_demand = Some(demand);
        self
    }

    pub fn pricing(mut self, pricing: PricingSeries) -> Self {
        self.pricing = Some(pricing);
        self
    }

    pub fn offload_mode(mut self, mode: OffloadMode) -> Self {
        self.offload_mode = mode;
        self
    }

    pub fn mbs_capacity_limit(mut self, limit: f64) -> Self {
        self.mbs_capacity_limit = limit;
        self
    }

    pub fn build(self) -> Result<Scenario> {
        let l = self.grid.num_slots();
        let invalid = |m: String| Err(Error::InvalidScenario(m));

        match self.stations.first() {
            Some(bs) if bs.kind == BsKind::Macro => {}
            _ => return invalid("station 0 must be the macro cell".into()),
        }
        if let Some(pos) = self.stations[1..]
            .iter()
            .position(|bs| bs.kind == BsKind::Macro)
        {
            return invalid(format!("station {} is a second macro cell", pos + 1));
        }
        for bs in &self.stations {
            bs.validate()?;
        }
        let n = self.stations.len() - 1;

        if self.pn_traffic.len() != n + 1 {
            return invalid(format!(
                "{} traffic series for {} stations",
                self.pn_traffic.len(),
                n + 1
            ));
        }
        if let Some(i) = self.pn_traffic.iter().position(|s| s.len() != l) {
            return invalid(format!("traffic series of station {i} is not {l} slots long"));
        }

        let sn_demand = self.sn_demand.unwrap_or_else(|| vec![vec![0; l]; n]);
        if sn_demand.len() != n {
            return invalid(format!(
                "{} demand series for {n} small cells",
                sn_demand.len()
            ));
        }
        for (j, series) in sn_demand.iter().enumerate() {
            if series.len() != l {
                return invalid(format!("demand series of small cell {j} is not {l} slots long"));
            }
            let cap = self.stations[j + 1].rb_capacity;
            if let Some((t, d)) = series.iter().enumerate().find(|(_, d)| **d > cap) {
                return invalid(format!(
                    "small cell {j} slot {t}: demand of {d} RBs exceeds its {cap} RB capacity"
                ));
            }
        }

        let pricing = match self.pricing {
            Some(p) => p,
            None => return invalid("missing pricing series".into()),
        };
        if pricing.len() != l {
            return invalid(format!("pricing series is not {l} slots long"));
        }

        if !(self.mbs_capacity_limit > 0.0 && self.mbs_capacity_limit <= 1.0) {
            return invalid(format!(
                "macro capacity limit {} must lie in (0, 1]",
                self.mbs_capacity_limit
            ));
        }
        // Keeping every cell on must always be a valid decision.
        if let Some(t) = self.pn_traffic[0]
            .values()
            .iter()
            .position(|v| *v > self.mbs_capacity_limit)
        {
            return invalid(format!(
                "macro load {} in slot {t} exceeds the capacity limit {}",
                self.pn_traffic[0][t], self.mbs_capacity_limit
            ));
        }

        Ok(Scenario {
            grid: self.grid,
            stations: self.stations,
            pn_traffic: self.pn_traffic,
            sn_demand,
            pricing,
            offload_mode: self.offload_mode,
            mbs_capacity_limit: self.mbs_capacity_limit,
        })
    }
}

impl Scenario {
    pub fn builder(grid: TimeGrid, stations: Vec<BaseStation>) -> ScenarioBuilder {
        ScenarioBuilder {
            grid,
            stations,
            pn_traffic: Vec::new(),
            sn_demand: None,
            pricing: None,
            offload_mode: OffloadMode::Direct,
            mbs_capacity_limit: 1.0,
        }
    }

    pub fn grid(&self) -> TimeGrid {
        self.grid
    }

    pub fn num_slots(&self) -> usize {
        self.grid.num_slots()
    }

    /// Number of small cells.
    pub fn n_sbs(&self) -> usize {
        self.stations.len() - 1
    }

    pub fn stations(&self) -> &[BaseStation] {
        &self.stations
    }

    pub fn mbs(&self) -> &BaseStation {
        &self.stations[0]
    }

    /// Small cell `j` (0-based).
    pub fn sbs(&self, j: usize) -> &BaseStation {
        &self.stations[j + 1]
    }

    pub fn pn_traffic(&self) -> &[TrafficSeries] {
        &self.pn_traffic
    }

    /// Load of station `station` (macro = 0) in `slot`.
    pub fn load(&self, station: usize, slot: usize) -> f64 {
        self.pn_traffic[station][slot]
    }

    pub fn sn_demand(&self) -> &[Vec<u32>] {
        &self.sn_demand
    }

    /// RBs demanded from small cell `j` in `slot`.
    pub fn demand(&self, j: usize, slot: usize) -> u32 {
        self.sn_demand[j][slot]
    }

    pub fn pricing(&self) -> &PricingSeries {
        &self.pricing
    }

    pub fn offload_mode(&self) -> OffloadMode {
        self.offload_mode
    }

    pub fn mbs_capacity_limit(&self) -> f64 {
        self.mbs_capacity_limit
    }

    /// Weight applied to small cell `j`'s load when it is moved onto the macro cell.
    pub fn offload_weight(&self, j: usize) -> f64 {
        match self.offload_mode {
            OffloadMode::Direct => 1.0,
            OffloadMode::CapacityScaled => {
                f64::from(self.sbs(j).rb_capacity) / f64::from(self.mbs().rb_capacity)
            }
        }
    }

    pub fn check_slot(&self, slot: usize) -> Result<()> {
        if slot >= self.num_slots() {
            return Err(Error::Domain(format!(
                "slot {slot} out of range for {} slots",
                self.num_slots()
            )));
        }
        Ok(())
    }

    pub fn check_switch(&self, switch: &SwitchVector) -> Result<()> {
        if switch.n_sbs() != self.n_sbs() {
            return Err(Error::InvalidScenario(format!(
                "switch vector covers {} small cells, scenario has {}",
                switch.n_sbs(),
                self.n_sbs()
            )));
        }
        Ok(())
    }

    /// A copy with the secondary demand replaced; everything else is shared verbatim.
    pub fn with_sn_demand(&self, demand: Vec<Vec<u32>>) -> Result<Scenario> {
        Scenario::builder(self.grid, self.stations.clone())
            .pn_traffic(self.pn_traffic.clone())
            .sn_demand(demand)
            .pricing(self.pricing.clone())
            .offload_mode(self.offload_mode)
            .mbs_capacity_limit(self.mbs_capacity_limit)
            .build()
    }

    /// A copy with the prices replaced.
    pub fn with_pricing(&self, pricing: PricingSeries) -> Result<Scenario> {
        Scenario::builder(self.grid, self.stations.clone())
            .pn_traffic(self.pn_traffic.clone())
            .sn_demand(self.sn_demand.clone())
            .pricing(pricing)
            .offload_mode(self.offload_mode)
            .mbs_capacity_limit(self.mbs_capacity_limit)
            .build()
    }
}

/// Revenue split into its energy-saving and spectrum-leasing parts, in pounds.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RevenueBreakdown {
    pub energy: f64,
    pub leasing: f64,
    pub total: f64,
}

impl RevenueBreakdown {
    pub fn new(energy: f64, leasing: f64) -> Self {
        RevenueBreakdown {
            energy,
            leasing,
            total: energy + leasing,
        }
    }

    pub fn zero() -> Self {
        RevenueBreakdown::default()
    }
}

impl Add for RevenueBreakdown {
    type Output = RevenueBreakdown;

    fn add(self, rhs: Self) -> Self {
        RevenueBreakdown::new(self.energy + rhs.energy, self.leasing + rhs.leasing)
    }
}

impl AddAssign for RevenueBreakdown {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl std::iter::Sum for RevenueBreakdown {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(RevenueBreakdown::zero(), Add::add)
    }
}

/// Decision procedure identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Sa,
    Es,
    AType,
    DType,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Es, Method::Sa, Method::AType, Method::DType];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Sa => "sa",
            Method::Es => "es",
            Method::AType => "a-type",
            Method::DType => "d-type",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sa" => Ok(Method::Sa),
            "es" => Ok(Method::Es),
            "a-type" | "atype" | "a" => Ok(Method::AType),
            "d-type" | "dtype" | "d" => Ok(Method::DType),
            other => Err(Error::Config(format!("unknown method '{other}'"))),
        }
    }
}

/// Outcome of solving every slot of a day with one method.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverResult {
    pub method: Method,
    pub per_slot_switch: Vec<SwitchVector>,
    pub per_slot_revenue: Vec<RevenueBreakdown>,
    pub per_slot_evaluations: Vec<u64>,
    pub daily: RevenueBreakdown,
    pub runtime_ns: u64,
    pub evaluations: u64,
}

impl SolverResult {
    /// Equality ignoring wall-clock time.
    pub fn same_outcome(&self, other: &SolverResult) -> bool {
        self.method == other.method
            && self.per_slot_switch == other.per_slot_switch
            && self.per_slot_revenue == other.per_slot_revenue
            && self.per_slot_evaluations == other.per_slot_evaluations
            && self.daily == other.daily
            && self.evaluations == other.evaluations
    }
}
