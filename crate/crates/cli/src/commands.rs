use std::fs::{self, File};
use std::io::BufWriter;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{ensure, Context, Result};
use serde_json::json;

use cellswitch::feasibility::is_feasible;
use cellswitch::metrics::{
    average_network_throughput, runtime_scaling, sn_market, write_bench_csv, write_refusals_csv,
};
use cellswitch::{solve_day, Method, Scenario, ScenarioConfig, SolveOptions, SolverResult};

/// Exit code of `bench` when some requested runs were refused.
const EXIT_PARTIAL: u8 = 3;

pub struct Loaded {
    pub cfg: ScenarioConfig,
    pub scenario: Scenario,
}

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>> {
    let path = dir.join(name);
    let f = File::create(&path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn csv_writer(dir: &Path, name: &str) -> Result<csv::Writer<BufWriter<File>>> {
    Ok(csv::Writer::from_writer(create(dir, name)?))
}

fn out_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))
}

fn solve(loaded: &Loaded, method: Method) -> Result<SolverResult> {
    let result = solve_day(&loaded.scenario, method, &loaded.cfg.solve_options())?;
    log::info!(
        "{method}: daily revenue {:.4} in {:.3} s",
        result.daily.total,
        result.runtime_ns as f64 * 1e-9
    );
    Ok(result)
}

fn write_switches(dir: &Path, name: &str, result: &SolverResult) -> Result<()> {
    let mut w = csv_writer(dir, name)?;
    w.write_record(["slot", "gamma"])?;
    for (t, sw) in result.per_slot_switch.iter().enumerate() {
        w.write_record([t.to_string(), sw.bitstring()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn run(loaded: &Loaded, method: Method, dir: &Path) -> Result<ExitCode> {
    let s = &loaded.scenario;
    let result = solve(loaded, method)?;
    out_dir(dir)?;

    let mut w = csv_writer(dir, "revenue_per_slot.csv")?;
    w.write_record(["slot", "energy", "leasing", "total", "mbs_load", "feasible"])?;
    for (t, (sw, r)) in result
        .per_slot_switch
        .iter()
        .zip(&result.per_slot_revenue)
        .enumerate()
    {
        let report = is_feasible(s, t, sw)?;
        assert!(report.feasible, "{method} returned an infeasible vector in slot {t}");
        w.write_record([
            t.to_string(),
            r.energy.to_string(),
            r.leasing.to_string(),
            r.total.to_string(),
            report.mbs_load_after.to_string(),
            report.feasible.to_string(),
        ])?;
    }
    w.flush()?;
    write_switches(dir, "switch_per_slot.csv", &result)?;

    let summary = json!({
        "method": method,
        "seed": loaded.cfg.solver.sa.rng_seed,
        "n_sbs": s.n_sbs(),
        "num_slots": s.num_slots(),
        "pricing": loaded.cfg.pricing.kind,
        "demand": loaded.cfg.demand.kind,
        "offload_mode": s.offload_mode(),
        "daily": result.daily,
        "evaluations": result.evaluations,
        "runtime_ns": result.runtime_ns,
        "average_network_throughput": average_network_throughput(s, &result)?,
    });
    serde_json::to_writer_pretty(create(dir, "summary.json")?, &summary)?;
    println!("{method}: daily revenue {}", result.daily.total);
    Ok(ExitCode::SUCCESS)
}

pub fn compare(loaded: &Loaded, methods: &[Method], dir: &Path) -> Result<ExitCode> {
    ensure!(!methods.is_empty(), "no methods given");
    let s = &loaded.scenario;
    let results: Vec<SolverResult> = methods
        .iter()
        .map(|m| solve(loaded, *m))
        .collect::<Result<_>>()?;
    out_dir(dir)?;

    let slots_per_hour = (60 / s.grid().slot_min()).max(1) as usize;
    let hourly: Vec<Vec<f64>> = results
        .iter()
        .map(|r| {
            r.per_slot_revenue
                .chunks(slots_per_hour)
                .map(|c| c.iter().map(|x| x.total).sum())
                .collect()
        })
        .collect();

    let mut w = csv_writer(dir, "compare.csv")?;
    let mut header = vec!["slot".to_string(), "hour".into(), "mbs_load".into(), "sn_demand".into()];
    header.extend(methods.iter().map(|m| format!("{m}_total")));
    header.extend(methods.iter().map(|m| format!("{m}_hourly")));
    w.write_record(&header)?;
    for t in 0..s.num_slots() {
        let demand: u64 = (0..s.n_sbs()).map(|j| u64::from(s.demand(j, t))).sum();
        let mut row = vec![
            t.to_string(),
            s.grid().hour_of(t).to_string(),
            s.load(0, t).to_string(),
            demand.to_string(),
        ];
        row.extend(results.iter().map(|r| r.per_slot_revenue[t].total.to_string()));
        row.extend(hourly.iter().map(|h| h[t / slots_per_hour].to_string()));
        w.write_record(&row)?;
    }
    w.flush()?;

    for r in &results {
        write_switches(dir, &format!("switch_{}.csv", r.method), r)?;
        println!("{}: daily revenue {}", r.method, r.daily.total);
    }
    serde_json::to_writer(create(dir, "scenario.json")?, s)?;
    Ok(ExitCode::SUCCESS)
}

pub fn bench(
    n_list: &[usize],
    methods: &[Method],
    seed: u64,
    es_cap: usize,
    dir: &Path,
) -> Result<ExitCode> {
    ensure!(n_list.iter().all(|n| *n >= 1), "benchmark sizes must be at least 1");
    let mut opts = SolveOptions {
        es_cap,
        ..SolveOptions::default()
    };
    opts.sa.rng_seed = seed;
    let outcome = runtime_scaling(n_list, methods, seed, &opts)?;
    out_dir(dir)?;
    write_bench_csv(&outcome.records, create(dir, "bench.csv")?)?;
    for r in &outcome.records {
        println!(
            "{:>7} N={:<3} {:>14} evaluations {:>10.3} s",
            r.method.to_string(),
            r.n_sbs,
            r.evaluations,
            r.runtime_ns as f64 * 1e-9
        );
    }
    if outcome.refusals.is_empty() {
        return Ok(ExitCode::SUCCESS);
    }
    write_refusals_csv(&outcome.refusals, create(dir, "bench_refusals.csv")?)?;
    for r in &outcome.refusals {
        eprintln!("refused: {} at N = {}: {}", r.method, r.n_sbs, r.reason);
    }
    Ok(ExitCode::from(EXIT_PARTIAL))
}

pub fn market(loaded: &Loaded, dir: &Path) -> Result<ExitCode> {
    let results = [solve(loaded, Method::Sa)?, solve(loaded, Method::Es)?];
    out_dir(dir)?;
    let mut w = csv_writer(dir, "market.csv")?;
    w.write_record(["pricing", "demand", "method", "expenditure", "rbs_leased", "unit_cost"])?;
    let pricing = serde_json::to_value(loaded.cfg.pricing.kind)?;
    let demand = serde_json::to_value(loaded.cfg.demand.kind)?;
    for r in &results {
        let m = sn_market(&loaded.scenario, r);
        w.write_record([
            pricing.as_str().unwrap_or_default().to_string(),
            demand.as_str().unwrap_or_default().to_string(),
            m.method.to_string(),
            m.expenditure.to_string(),
            m.rbs_leased.to_string(),
            m.unit_cost.map(|c| c.to_string()).unwrap_or_default(),
        ])?;
        println!(
            "{}: expenditure {} for {} RBs",
            m.method, m.expenditure, m.rbs_leased
        );
    }
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}
