//! Sorting heuristics: rank small cells by utility and put them to sleep in
//! that order until the macro cell is full.

use serde::{Deserialize, Serialize};

use super::SlotSolution;
use crate::econ::total_revenue_slot;
use crate::error::Result;
use crate::feasibility::is_feasible;
use crate::model::{Scenario, SwitchVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SortOrder {
    /// A-type.
    Ascending,
    /// D-type.
    Descending,
}

/// Per-cell utility: secondary demand as a fraction of the cell's RBs minus the cell's own load.
pub fn utility_vector(scenario: &Scenario, slot: usize) -> Result<Vec<f64>> {
    scenario.check_slot(slot)?;
    Ok((0..scenario.n_sbs())
        .map(|j| {
            f64::from(scenario.demand(j, slot)) / f64::from(scenario.sbs(j).rb_capacity)
                - scenario.load(j + 1, slot)
        })
        .collect())
}

/// Small-cell indices sorted by utility; ties keep index order.
pub fn utility_order(scenario: &Scenario, slot: usize, order: SortOrder) -> Result<Vec<usize>> {
    let utility = utility_vector(scenario, slot)?;
    let mut idx: Vec<usize> = (0..utility.len()).collect();
    match order {
        SortOrder::Ascending => idx.sort_by(|a, b| utility[*a].total_cmp(&utility[*b])),
        SortOrder::Descending => idx.sort_by(|a, b| utility[*b].total_cmp(&utility[*a])),
    }
    Ok(idx)
}

/// Switches cells off in utility order, stopping at the first one whose
/// traffic no longer fits on the macro cell. The off-set is always a prefix
/// of the sorted order.
pub fn sorting_solve_slot(
    scenario: &Scenario,
    slot: usize,
    order: SortOrder,
) -> Result<SlotSolution> {
    let mut switch = SwitchVector::all_on(scenario.n_sbs());
    for j in utility_order(scenario, slot, order)? {
        switch.set_sbs(j, false);
        if !is_feasible(scenario, slot, &switch)?.feasible {
            switch.set_sbs(j, true);
            break;
        }
    }
    let revenue = total_revenue_slot(scenario, slot, &switch)?;
    Ok(SlotSolution {
        switch,
        revenue,
        evaluations: 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{BaseStation, BsKind, PricingSeries, TimeGrid, TrafficSeries};
    use crate::test_support::random_scenario;

    fn instance(mbs: f64, loads: [f64; 3], demand: [u32; 3]) -> Scenario {
        let kinds = [BsKind::Rrh, BsKind::Micro, BsKind::Pico];
        let mut stations = vec![BaseStation::template(BsKind::Macro)];
        stations.extend(kinds.iter().map(|k| BaseStation::template(*k)));
        let mut traffic = vec![TrafficSeries::new(vec![mbs]).unwrap()];
        traffic.extend(loads.iter().map(|l| TrafficSeries::new(vec![*l]).unwrap()));
        Scenario::builder(TimeGrid::new(10, 10).unwrap(), stations)
            .pn_traffic(traffic)
            .sn_demand(demand.iter().map(|d| vec![*d]).collect())
            .pricing(PricingSeries::fixed(1, 0.1293, 0.13).unwrap())
            .build()
            .unwrap()
    }

    #[test]
    fn utility_examples() {
        let s = instance(0.2, [0.0, 0.4, 1.0], [0, 14, 17]);
        let u = utility_vector(&s, 0).unwrap();
        assert_eq!(u[0], 0.0);
        // 14 / 50 = 0.28 = 0.7 * 0.4, so the utility is -0.3 * 0.4.
        assert!((u[1] - (-0.3 * 0.4)).abs() < 1e-12);
        assert!((u[2] - (17.0 / 25.0 - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn full_macro_keeps_everything_on() {
        let s = instance(1.0, [0.1, 0.2, 0.3], [5, 5, 5]);
        for order in [SortOrder::Ascending, SortOrder::Descending] {
            let r = sorting_solve_slot(&s, 0, order).unwrap();
            assert_eq!(r.switch, SwitchVector::all_on(3));
        }
    }

    #[test]
    fn idle_cells_all_sleep() {
        let s = instance(0.9, [0.0; 3], [5, 0, 9]);
        for order in [SortOrder::Ascending, SortOrder::Descending] {
            let r = sorting_solve_slot(&s, 0, order).unwrap();
            assert_eq!(r.switch.off_count(), 3);
        }
    }

    #[test]
    fn descending_beats_ascending_on_hand_instance() {
        // Utilities: RRH 60/75 - 0.3 = 0.5, micro 5/50 - 0.4 = -0.3, pico 2/25 - 0.5 = -0.42.
        // Macro at 0.4 has room for 0.6: D-type takes RRH (0.3), then micro would need
        // 0.4 more and stops. A-type takes pico (0.5) then stops at micro.
        let s = instance(0.4, [0.3, 0.4, 0.5], [60, 5, 2]);
        let d = sorting_solve_slot(&s, 0, SortOrder::Descending).unwrap();
        let a = sorting_solve_slot(&s, 0, SortOrder::Ascending).unwrap();
        assert_eq!(d.switch.bitstring(), "1011");
        assert_eq!(a.switch.bitstring(), "1110");

        let h = 10.0 / 60_000.0 * 0.1293;
        let slope = 4.7 * 20.0;
        let rrh = (84.0 + 0.3 * 2.8 * 20.0 - 56.0 - 0.3 * slope) * h + 60.0 * 0.13;
        let pico = (6.8 + 0.5 * 4.0 * 0.13 - 4.3 - 0.5 * slope) * h + 2.0 * 0.13;
        assert!((d.revenue.total - rrh).abs() < 1e-9);
        assert!((a.revenue.total - pico).abs() < 1e-9);
        assert!(d.revenue.total > a.revenue.total);
    }

    #[test]
    fn off_set_is_sorted_prefix() {
        for case in 0..300 {
            let s = random_scenario(case, 1 + case as usize % 12, 2);
            for slot in 0..2 {
                for order in [SortOrder::Ascending, SortOrder::Descending] {
                    let r = sorting_solve_slot(&s, slot, order).unwrap();
                    assert!(is_feasible(&s, slot, &r.switch).unwrap().feasible);
                    let idx = utility_order(&s, slot, order).unwrap();
                    let k = r.switch.off_count();
                    assert!(idx[..k].iter().all(|j| !r.switch.sbs_on(*j)));
                    assert!(idx[k..].iter().all(|j| r.switch.sbs_on(*j)));
                }
            }
        }
    }
}
