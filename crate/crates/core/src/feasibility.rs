//! Quality-of-service check: every unit of traffic of a sleeping small cell
//! moves to the macro cell, and the macro cell must stay within its limit.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{Scenario, SwitchVector};

/// Tolerance on traffic conservation (demand before vs after offloading).
pub const CONSERVATION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OffloadReport {
    /// Macro-cell load after absorbing the sleeping cells' traffic.
    pub mbs_load_after: f64,
    /// Total cell demand before offloading.
    pub demand_before: f64,
    /// Total cell demand served after offloading, in the same units.
    pub demand_after: f64,
    pub feasible: bool,
}

/// Macro-cell load after the traffic of every sleeping small cell is moved onto it.
pub fn offloaded_mbs_load(scenario: &Scenario, slot: usize, switch: &SwitchVector) -> Result<f64> {
    scenario.check_slot(slot)?;
    scenario.check_switch(switch)?;
    let mut load = scenario.load(0, slot);
    for j in switch.off_indices() {
        load += scenario.offload_weight(j) * scenario.load(j + 1, slot);
    }
    Ok(load)
}

pub fn is_feasible(scenario: &Scenario, slot: usize, switch: &SwitchVector) -> Result<OffloadReport> {
    let mbs_load_after = offloaded_mbs_load(scenario, slot, switch)?;

    let demand_before: f64 = (0..=scenario.n_sbs()).map(|i| scenario.load(i, slot)).sum();

    // Traffic the macro cell carries, re-expressed in the originating cells' units.
    let mut mbs_served = scenario.load(0, slot);
    let mut active = 0.0;
    for j in 0..scenario.n_sbs() {
        let tau = scenario.load(j + 1, slot);
        if switch.sbs_on(j) {
            active += tau;
        } else {
            let w = scenario.offload_weight(j);
            mbs_served += w * tau / w;
        }
    }
    let demand_after = mbs_served + active;

    let feasible = mbs_load_after <= scenario.mbs_capacity_limit()
        && (demand_before - demand_after).abs() <= CONSERVATION_TOL;
    Ok(OffloadReport {
        mbs_load_after,
        demand_before,
        demand_after,
        feasible,
    })
}
