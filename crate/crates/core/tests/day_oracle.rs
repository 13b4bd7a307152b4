use std::path::Path;

use cellswitch::econ::total_revenue_slot;
use cellswitch::{
    reference_scenario, solve_day, BaseStation, BsKind, DemandKind, Method, OffloadMode, PriceKind,
    PricingSeries, Scenario, ScenarioConfig, SolveOptions, SwitchVector, TimeGrid, TrafficSeries,
};

fn station(kind: BsKind, p_o: f64, zeta: f64, p_tx: f64, p_sleep: Option<f64>, rb: u32) -> BaseStation {
    BaseStation {
        kind,
        p_o,
        zeta,
        p_tx,
        p_sleep,
        rb_capacity: rb,
        bandwidth_mhz: 10.0,
    }
}

/// One hour of six identical slots, small enough to work out by hand.
fn hand_scenario() -> Scenario {
    let stations = vec![
        station(BsKind::Macro, 100.0, 2.0, 20.0, None, 100),
        station(BsKind::Micro, 10.0, 1.0, 10.0, Some(2.0), 50),
        station(BsKind::Pico, 5.0, 1.0, 1.0, Some(1.0), 25),
    ];
    let flat = |v: f64| TrafficSeries::new(vec![v; 6]).unwrap();
    Scenario::builder(TimeGrid::new(60, 10).unwrap(), stations)
        .pn_traffic(vec![flat(0.2), flat(0.05), flat(0.1)])
        .sn_demand(vec![vec![20; 6], vec![10; 6]])
        .pricing(PricingSeries::new(vec![0.12; 6], vec![0.05; 6]).unwrap())
        .offload_mode(OffloadMode::Direct)
        .build()
        .unwrap()
}

#[test]
fn all_off_day_matches_hand_sums() {
    // all on:  108 + 10.5 + 5.1 = 123.6 W
    // all off: macro at 0.35 -> 114, plus sleep 2 + 1 = 117 W
    // 6.6 W over 10 min = 0.0011 kWh at 0.12, plus 30 RBs at 0.05
    let s = hand_scenario();
    let off = SwitchVector::from_off_mask(2, 0b11);
    let mut day = 0.0;
    for t in 0..6 {
        let r = total_revenue_slot(&s, t, &off).unwrap();
        assert!((r.energy - 1.32e-4).abs() < 1e-12, "{}", r.energy);
        assert!((r.leasing - 1.5).abs() < 1e-12);
        day += r.total;
    }
    assert!((day - 9.000792).abs() < 1e-9, "{day}");
}

#[test]
fn single_sleeper_matches_hand_sums() {
    // micro off: macro at 0.25 -> 110, micro 2, pico 5.1 = 117.1 W, saving 6.5 W
    let s = hand_scenario();
    let r = total_revenue_slot(&s, 0, &SwitchVector::from_off_mask(2, 0b01)).unwrap();
    assert!((r.energy - 1.3e-4).abs() < 1e-12);
    assert!((r.leasing - 1.0).abs() < 1e-12);
    // pico off: macro at 0.3 -> 112, micro 10.5, pico 1 = 123.5 W
    let r = total_revenue_slot(&s, 0, &SwitchVector::from_off_mask(2, 0b10)).unwrap();
    assert!((r.energy - 2e-6).abs() < 1e-12);
    assert!((r.leasing - 0.5).abs() < 1e-12);
}

#[test]
fn every_method_sleeps_both_cells_here() {
    let s = hand_scenario();
    for m in [Method::Es, Method::Sa, Method::AType, Method::DType] {
        let r = solve_day(&s, m, &SolveOptions::default()).unwrap();
        assert!(r.per_slot_switch.iter().all(|sw| sw.bitstring() == "100"), "{m}");
        assert!((r.daily.total - 9.000792).abs() < 1e-9, "{m}");
    }
}

#[test]
fn shipped_config_is_the_reference_scenario() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/reference.toml");
    let cfg = ScenarioConfig::load(&path).unwrap();
    let from_file = cfg.build_scenario().unwrap();
    assert_eq!(from_file, reference_scenario(PriceKind::Fixed, DemandKind::Ndt).unwrap());
    let again = ScenarioConfig::from_toml(&cfg.to_toml().unwrap()).unwrap();
    assert_eq!(again, cfg);
}

#[test]
fn scenario_json_round_trip() {
    let s = reference_scenario(PriceKind::Dynamic, DemandKind::Dt).unwrap();
    let back: Scenario = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
    assert_eq!(back, s);
}
