//! Evaluation metrics and the solver runtime study.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::econ::{leased_rbs_slot, total_revenue_slot};
use crate::error::{Error, Result};
use crate::feasibility::is_feasible;
use crate::model::{Method, Scenario, SolverResult, SwitchVector};
use crate::scenario_gen::{synthetic_scenario, DemandKind, PriceKind};
use crate::solvers::{solve_day, SolveOptions};

/// Normalized traffic carried by the network in one slot.
///
/// Traffic of a sleeping cell is carried by the macro cell, so a feasible
/// decision carries exactly the demand of the all-on network. The sum runs
/// over originating stations in index order, which makes that equality exact
/// in floating point. An infeasible switch has no defined throughput.
pub fn network_throughput(scenario: &Scenario, slot: usize, switch: &SwitchVector) -> Result<f64> {
    let report = is_feasible(scenario, slot, switch)?;
    if !report.feasible {
        return Err(Error::Infeasible(format!(
            "slot {slot}: {switch} puts the macro load at {}",
            report.mbs_load_after
        )));
    }
    Ok((0..=scenario.n_sbs()).map(|i| scenario.load(i, slot)).sum())
}

pub fn throughput_series(scenario: &Scenario, result: &SolverResult) -> Result<Vec<f64>> {
    result
        .per_slot_switch
        .iter()
        .enumerate()
        .map(|(t, sw)| network_throughput(scenario, t, sw))
        .collect()
}

pub fn average_network_throughput(scenario: &Scenario, result: &SolverResult) -> Result<f64> {
    let s = throughput_series(scenario, result)?;
    Ok(s.iter().sum::<f64>() / s.len().max(1) as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvarianceReport {
    pub invariant: bool,
    pub variants: Vec<String>,
    /// Per slot, the throughput under each variant.
    pub per_slot: Vec<Vec<f64>>,
}

/// Solves each variant with `method` and checks that per-slot throughput is
/// identical across all of them. Variants must share primary traffic.
pub fn throughput_invariance_report(
    variants: &[(&str, &Scenario)],
    method: Method,
    opts: &SolveOptions,
) -> Result<InvarianceReport> {
    let Some((_, first)) = variants.first() else {
        return Err(Error::Config("no variants to compare".into()));
    };
    if let Some((name, _)) = variants
        .iter()
        .find(|(_, s)| s.pn_traffic() != first.pn_traffic())
    {
        return Err(Error::InvalidScenario(format!(
            "variant '{name}' has different primary traffic"
        )));
    }
    let mut columns = Vec::with_capacity(variants.len());
    for (_, s) in variants {
        columns.push(throughput_series(s, &solve_day(s, method, opts)?)?);
    }
    let per_slot: Vec<Vec<f64>> = (0..first.num_slots())
        .map(|t| columns.iter().map(|c| c[t]).collect())
        .collect();
    let invariant = per_slot.iter().all(|row| row.iter().all(|v| *v == row[0]));
    Ok(InvarianceReport {
        invariant,
        variants: variants.iter().map(|(n, _)| n.to_string()).collect(),
        per_slot,
    })
}

/// What the secondary network paid over a day.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarketSummary {
    pub method: Method,
    pub expenditure: f64,
    pub rbs_leased: u64,
    /// Expenditure per leased RB; `None` when nothing was leased.
    pub unit_cost: Option<f64>,
}

/// RBs are tallied per distinct price before any multiplication, so a
/// constant price comes back as the unit cost without rounding.
pub fn sn_market(scenario: &Scenario, result: &SolverResult) -> MarketSummary {
    let mut by_price: BTreeMap<u64, u64> = BTreeMap::new();
    for (t, sw) in result.per_slot_switch.iter().enumerate() {
        let price = scenario.pricing().spectrum()[t];
        *by_price.entry(price.to_bits()).or_default() += u64::from(leased_rbs_slot(scenario, t, sw));
    }
    let rbs_leased: u64 = by_price.values().sum();
    let price_rbs = || by_price.iter().map(|(p, n)| (f64::from_bits(*p), *n));
    MarketSummary {
        method: result.method,
        expenditure: price_rbs().map(|(p, n)| p * n as f64).sum(),
        rbs_leased,
        unit_cost: (rbs_leased > 0).then(|| {
            price_rbs()
                .map(|(p, n)| p * (n as f64 / rbs_leased as f64))
                .sum()
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub method: Method,
    pub n_sbs: usize,
    pub runtime_ns: u64,
    pub evaluations: u64,
    pub daily_revenue: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRefusal {
    pub method: Method,
    pub n_sbs: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BenchOutcome {
    pub records: Vec<BenchRecord>,
    pub refusals: Vec<BenchRefusal>,
}

/// Solves one synthetic day per `(N, method)` pair, serially so timings are
/// not distorted by other work. Exhaustive search above the cap is refused
/// and listed rather than aborting the sweep.
///
/// The reported revenue is recomputed from the returned switch vectors.
pub fn runtime_scaling(
    n_list: &[usize],
    methods: &[Method],
    seed: u64,
    opts: &SolveOptions,
) -> Result<BenchOutcome> {
    let opts = SolveOptions {
        parallel: false,
        ..opts.clone()
    };
    let mut out = BenchOutcome::default();
    for &n in n_list {
        if n == 0 {
            return Err(Error::Config("benchmark sizes must be at least 1".into()));
        }
        let scenario = synthetic_scenario(n, seed, PriceKind::Fixed, DemandKind::Ndt)?;
        for &method in methods {
            let result = match solve_day(&scenario, method, &opts) {
                Ok(r) => r,
                Err(e @ Error::EnumerationCap { .. }) => {
                    log::warn!("{method} at N = {n}: {e}");
                    out.refusals.push(BenchRefusal {
                        method,
                        n_sbs: n,
                        reason: e.to_string(),
                    });
                    continue;
                }
                Err(e) => return Err(e),
            };
            let mut daily_revenue = 0.0;
            for (t, sw) in result.per_slot_switch.iter().enumerate() {
                daily_revenue += total_revenue_slot(&scenario, t, sw)?.total;
            }
            out.records.push(BenchRecord {
                method,
                n_sbs: n,
                runtime_ns: result.runtime_ns.max(1),
                evaluations: result.evaluations,
                daily_revenue,
            });
        }
    }
    Ok(out)
}

/// Writes `method,n_sbs,runtime_ns,evaluations,daily_revenue` rows.
pub fn write_bench_csv(records: &[BenchRecord], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["method", "n_sbs", "runtime_ns", "evaluations", "daily_revenue"])
        .map_err(csv_err)?;
    for r in records {
        w.write_record([
            r.method.to_string(),
            r.n_sbs.to_string(),
            r.runtime_ns.to_string(),
            r.evaluations.to_string(),
            r.daily_revenue.to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `method,n_sbs,reason` rows.
pub fn write_refusals_csv(refusals: &[BenchRefusal], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["method", "n_sbs", "reason"]).map_err(csv_err)?;
    for r in refusals {
        w.write_record([r.method.to_string(), r.n_sbs.to_string(), r.reason.clone()])
            .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}
