//! Power consumption and revenue.
//!
//! Energy revenue is the electricity bill avoided by putting small cells to
//! sleep, where the macro cell pays for the extra load it absorbs. Leasing
//! revenue is the rent for the RBs of sleeping small cells.

use crate::error::{Error, Result};
use crate::feasibility::offloaded_mbs_load;
use crate::model::{BaseStation, RevenueBreakdown, Scenario, SwitchVector};

/// Converts watt-minutes to kilowatt-hours.
pub const KWH_PER_WATT_MINUTE: f64 = 1.0 / 60_000.0;

/// Instantaneous power draw of one active station at normalized `load`.
pub fn bs_power(bs: &BaseStation, load: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&load) {
        return Err(Error::Domain(format!("load {load} is outside [0, 1]")));
    }
    Ok(bs.p_o + load * bs.zeta * bs.p_tx)
}

/// Network power with every station on and serving its own traffic.
pub fn all_on_power_slot(scenario: &Scenario, slot: usize) -> Result<f64> {
    scenario.check_slot(slot)?;
    scenario
        .stations()
        .iter()
        .enumerate()
        .map(|(i, bs)| bs_power(bs, scenario.load(i, slot)))
        .sum()
}

/// Network power under `switch`, with the macro cell at its post-offload load.
pub fn hetnet_power_slot(scenario: &Scenario, slot: usize, switch: &SwitchVector) -> Result<f64> {
    let mbs_load = offloaded_mbs_load(scenario, slot, switch)?;
    let mut total = bs_power(scenario.mbs(), mbs_load)?;
    for j in 0..scenario.n_sbs() {
        let bs = scenario.sbs(j);
        total += if switch.sbs_on(j) {
            bs_power(bs, scenario.load(j + 1, slot))?
        } else {
            bs.sleep_power()
        };
    }
    Ok(total)
}

/// Power saved relative to the all-on baseline. Negative when the macro
/// cell's slope outweighs what the sleeping cells save.
pub fn power_saving_slot(scenario: &Scenario, slot: usize, switch: &SwitchVector) -> Result<f64> {
    let cs = hetnet_power_slot(scenario, slot, switch)?;
    Ok(all_on_power_slot(scenario, slot)? - cs)
}

pub fn energy_revenue_slot(scenario: &Scenario, slot: usize, switch: &SwitchVector) -> Result<f64> {
    let saving = power_saving_slot(scenario, slot, switch)?;
    let minutes = f64::from(scenario.grid().slot_min());
    Ok(saving * minutes * KWH_PER_WATT_MINUTE * scenario.pricing().electricity()[slot])
}

pub fn leasing_revenue_slot(
    scenario: &Scenario,
    slot: usize,
    switch: &SwitchVector,
) -> Result<f64> {
    scenario.check_slot(slot)?;
    scenario.check_switch(switch)?;
    Ok(f64::from(leased_rbs_slot(scenario, slot, switch)) * scenario.pricing().spectrum()[slot])
}

/// RBs handed to the secondary network in `slot`.
pub fn leased_rbs_slot(scenario: &Scenario, slot: usize, switch: &SwitchVector) -> u32 {
    switch
        .off_indices()
        .map(|j| scenario.demand(j, slot))
        .sum()
}

pub fn total_revenue_slot(
    scenario: &Scenario,
    slot: usize,
    switch: &SwitchVector,
) -> Result<RevenueBreakdown> {
    Ok(RevenueBreakdown::new(
        energy_revenue_slot(scenario, slot, switch)?,
        leasing_revenue_slot(scenario, slot, switch)?,
    ))
}
