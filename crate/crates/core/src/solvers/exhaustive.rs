//! Exhaustive enumeration of every small-cell on/off combination.

use super::SlotSolution;
use crate::econ::total_revenue_slot;
use crate::error::{Error, Result};
use crate::feasibility::is_feasible;
use crate::model::{RevenueBreakdown, Scenario, SwitchVector};

/// Largest instance enumerated unless the caller raises the cap.
pub const DEFAULT_ES_CAP: usize = 24;
/// Hard ceiling imposed by the 64-bit enumeration mask.
const MASK_BITS: usize = 63;

/// Visits all `2^N` vectors and returns the feasible revenue maximizer.
///
/// Ties on revenue go to the vector with the fewest sleeping cells, then to
/// the lowest off-mask (small cell `j` is bit `j`). Every visited vector counts
/// as one evaluation, feasible or not.
pub fn es_solve_slot(scenario: &Scenario, slot: usize, cap: usize) -> Result<SlotSolution> {
    scenario.check_slot(slot)?;
    let n = scenario.n_sbs();
    if n > cap.min(MASK_BITS) {
        return Err(Error::EnumerationCap {
            n_sbs: n,
            cap: cap.min(MASK_BITS),
        });
    }

    let mut switch = SwitchVector::all_on(n);
    let mut best_mask = 0u64;
    let mut best = RevenueBreakdown::zero();
    let mut best_off = u32::MAX;
    for mask in 0..1u64 << n {
        switch.set_off_mask(mask);
        if !is_feasible(scenario, slot, &switch)?.feasible {
            continue;
        }
        let revenue = total_revenue_slot(scenario, slot, &switch)?;
        let off = mask.count_ones();
        // Masks are visited in increasing order, so an equal-revenue, equal-size
        // vector seen later never replaces the incumbent.
        if best_off == u32::MAX
            || revenue.total > best.total
            || (revenue.total == best.total && off < best_off)
        {
            best = revenue;
            best_mask = mask;
            best_off = off;
        }
    }

    Ok(SlotSolution {
        switch: SwitchVector::from_off_mask(n, best_mask),
        revenue: best,
        evaluations: 1 << n,
    })
}
