//! Cell switching with spectrum leasing in a two-tier cellular network.
//!
//! A macro cell can absorb the traffic of sleeping small cells. Every small
//! cell put to sleep saves energy and frees its resource blocks for lease to a
//! secondary operator. Per time slot, the solvers pick which small cells to
//! switch off so that the combined revenue is largest while the macro cell
//! stays within its capacity.

pub mod config;
pub mod econ;
pub mod error;
pub mod feasibility;
pub mod metrics;
pub mod model;
pub mod scenario_gen;
pub mod solvers;

#[cfg(test)]
mod test_support;

pub use error::{Error, Result};
pub use model::{
    default_parameter_set, BaseStation, BsKind, Method, OffloadMode, ParameterSet, PricingSeries,
    RevenueBreakdown, Scenario, ScenarioBuilder, SolverResult, SwitchVector, TimeGrid,
    TrafficSeries,
};
pub use solvers::{solve_day, solve_slot, SaParams, SlotSolution, SolveOptions};
pub use config::ScenarioConfig;
pub use scenario_gen::{reference_scenario, DemandKind, PriceKind};
