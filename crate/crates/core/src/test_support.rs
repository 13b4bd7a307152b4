//! Fixtures shared by the unit tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::feasibility::is_feasible;
use crate::model::{
    BaseStation, BsKind, OffloadMode, PricingSeries, Scenario, SwitchVector, TimeGrid,
    TrafficSeries,
};

/// Random instance with `n` small cells of random kinds.
pub fn random_scenario(seed: u64, n: usize, num_slots: usize) -> Scenario {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stations = vec![BaseStation::template(BsKind::Macro)];
    for _ in 0..n {
        stations.push(BaseStation::template(BsKind::SMALL[rng.random_range(0..4)]));
    }
    let mut traffic = vec![TrafficSeries::new(
        (0..num_slots).map(|_| rng.random_range(0.0..0.9)).collect(),
    )
    .unwrap()];
    for _ in 0..n {
        traffic.push(
            TrafficSeries::new((0..num_slots).map(|_| rng.random_range(0.0..=0.6)).collect())
                .unwrap(),
        );
    }
    let demand = (0..n)
        .map(|j| {
            let cap = stations[j + 1].rb_capacity;
            (0..num_slots).map(|_| rng.random_range(0..=cap)).collect()
        })
        .collect();
    let pricing = PricingSeries::new(
        (0..num_slots).map(|_| rng.random_range(0.05..0.3)).collect(),
        (0..num_slots).map(|_| rng.random_range(0.05..0.3)).collect(),
    )
    .unwrap();
    let mode = if rng.random_bool(0.5) {
        OffloadMode::Direct
    } else {
        OffloadMode::CapacityScaled
    };
    Scenario::builder(TimeGrid::new(num_slots as u32 * 10, 10).unwrap(), stations)
        .pn_traffic(traffic)
        .sn_demand(demand)
        .pricing(pricing)
        .offload_mode(mode)
        .build()
        .unwrap()
}

pub fn random_feasible_switch(s: &Scenario, slot: usize, rng: &mut impl Rng) -> SwitchVector {
    let n = s.n_sbs();
    for _ in 0..200 {
        let sw = SwitchVector::new(
            std::iter::once(true)
                .chain((0..n).map(|_| rng.random_bool(0.5)))
                .collect(),
        )
        .unwrap();
        if is_feasible(s, slot, &sw).unwrap().feasible {
            return sw;
        }
    }
    SwitchVector::all_on(n)
}

/// Macro plus one micro cell, single slot.
pub fn two_cell(mbs_load: f64, micro_load: f64, demand: u32, ce: f64, crb: f64) -> Scenario {
    Scenario::builder(
        TimeGrid::new(10, 10).unwrap(),
        vec![
            BaseStation::template(BsKind::Macro),
            BaseStation::template(BsKind::Micro),
        ],
    )
    .pn_traffic(vec![
        TrafficSeries::new(vec![mbs_load]).unwrap(),
        TrafficSeries::new(vec![micro_load]).unwrap(),
    ])
    .sn_demand(vec![vec![demand]])
    .pricing(PricingSeries::fixed(1, ce, crb).unwrap())
    .build()
    .unwrap()
}

/// Macro plus pico, pico, femto; single slot, idle macro.
pub fn three_femto_pico(loads: &[f64; 3], demand: &[u32; 3], crb: f64) -> Scenario {
    let kinds = [BsKind::Pico, BsKind::Pico, BsKind::Femto];
    let mut stations = vec![BaseStation::template(BsKind::Macro)];
    stations.extend(kinds.iter().map(|k| BaseStation::template(*k)));
    let mut traffic = vec![TrafficSeries::new(vec![0.0]).unwrap()];
    traffic.extend(loads.iter().map(|l| TrafficSeries::new(vec![*l]).unwrap()));
    Scenario::builder(TimeGrid::new(10, 10).unwrap(), stations)
        .pn_traffic(traffic)
        .sn_demand(demand.iter().map(|d| vec![*d]).collect())
        .pricing(PricingSeries::fixed(1, 0.1293, crb).unwrap())
        .build()
        .unwrap()
}

/// `n` identical cells whose sleep saving exactly cancels the macro's extra
/// draw, with no secondary demand: every switch vector earns exactly zero.
pub fn flat_scenario(n: usize) -> Scenario {
    let mut mbs = BaseStation::template(BsKind::Macro);
    mbs.zeta = 1.0;
    mbs.p_tx = 8.0;
    let cell = BaseStation {
        kind: BsKind::Pico,
        p_o: 5.0,
        zeta: 0.0,
        p_tx: 1.0,
        p_sleep: Some(3.0),
        rb_capacity: 10,
        bandwidth_mhz: 5.0,
    };
    let mut stations = vec![mbs];
    stations.extend(std::iter::repeat_n(cell, n));
    let mut traffic = vec![TrafficSeries::new(vec![0.0]).unwrap()];
    traffic.extend((0..n).map(|_| TrafficSeries::new(vec![0.25]).unwrap()));
    Scenario::builder(TimeGrid::new(10, 10).unwrap(), stations)
        .pn_traffic(traffic)
        .sn_demand(vec![vec![0]; n])
        .pricing(PricingSeries::fixed(1, 0.1293, 0.13).unwrap())
        .build()
        .unwrap()
}
