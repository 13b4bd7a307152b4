//! Per-slot solvers and the day-long driver.

pub mod annealing;
pub mod exhaustive;
pub mod neighborhood;
pub mod sorting;

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use annealing::{metropolis_accept, sa_best_per_level, sa_solve_slot, SaParams};
pub use exhaustive::{es_solve_slot, DEFAULT_ES_CAP};
pub use neighborhood::{neighbor_one_reserve, neighbor_swap, neighbor_two_reserve, shake};
pub use sorting::{sorting_solve_slot, utility_order, utility_vector, SortOrder};

use crate::error::{Error, Result};
use crate::feasibility::is_feasible;
use crate::model::{Method, RevenueBreakdown, Scenario, SolverResult, SwitchVector};

/// Decision and revenue for a single slot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlotSolution {
    pub switch: SwitchVector,
    pub revenue: RevenueBreakdown,
    pub evaluations: u64,
}

/// Independent random stream for one slot, so slots can be solved in any
/// order or in parallel with identical results.
pub(crate) fn slot_rng(seed: u64, slot: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(slot as u64);
    rng
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolveOptions {
    pub sa: SaParams,
    pub es_cap: usize,
    /// Solve slots on the rayon pool. Results do not depend on this flag.
    pub parallel: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            sa: SaParams::default(),
            es_cap: DEFAULT_ES_CAP,
            parallel: true,
        }
    }
}

pub fn solve_slot(
    scenario: &Scenario,
    slot: usize,
    method: Method,
    opts: &SolveOptions,
) -> Result<SlotSolution> {
    match method {
        Method::Sa => sa_solve_slot(scenario, slot, &opts.sa),
        Method::Es => es_solve_slot(scenario, slot, opts.es_cap),
        Method::AType => sorting_solve_slot(scenario, slot, SortOrder::Ascending),
        Method::DType => sorting_solve_slot(scenario, slot, SortOrder::Descending),
    }
}

/// Solves every slot of the scenario with `method`.
///
/// Each returned switch vector is re-checked against the macro capacity
/// limit; a violation is reported as [`Error::Infeasible`].
pub fn solve_day(scenario: &Scenario, method: Method, opts: &SolveOptions) -> Result<SolverResult> {
    if method == Method::Sa {
        opts.sa.validate()?;
    }
    if method == Method::Es && scenario.n_sbs() > opts.es_cap {
        return Err(Error::EnumerationCap {
            n_sbs: scenario.n_sbs(),
            cap: opts.es_cap,
        });
    }
    let start = Instant::now();
    let slots = 0..scenario.num_slots();
    let solved: Vec<SlotSolution> = if opts.parallel {
        slots
            .into_par_iter()
            .map(|t| solve_slot(scenario, t, method, opts))
            .collect::<Result<_>>()?
    } else {
        slots
            .map(|t| solve_slot(scenario, t, method, opts))
            .collect::<Result<_>>()?
    };
    let runtime_ns = start.elapsed().as_nanos() as u64;

    for (t, s) in solved.iter().enumerate() {
        let report = is_feasible(scenario, t, &s.switch)?;
        if !report.feasible {
            return Err(Error::Infeasible(format!(
                "{method} chose {} in slot {t}, macro load {}",
                s.switch, report.mbs_load_after
            )));
        }
    }

    let per_slot_revenue: Vec<RevenueBreakdown> = solved.iter().map(|s| s.revenue).collect();
    let per_slot_evaluations: Vec<u64> = solved.iter().map(|s| s.evaluations).collect();
    Ok(SolverResult {
        method,
        daily: per_slot_revenue.iter().copied().sum(),
        evaluations: per_slot_evaluations.iter().sum(),
        per_slot_switch: solved.into_iter().map(|s| s.switch).collect(),
        per_slot_revenue,
        per_slot_evaluations,
        runtime_ns,
    })
}
