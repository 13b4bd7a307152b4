//! Simulated annealing over small-cell on/off vectors.
//!
//! Each temperature level runs `k = k_factor * N` local iterations. One local
//! iteration applies the 1-reserve, 2-reserve and swap neighborhoods in that
//! order, each one a separate accept/reject decision against the current
//! solution. Only feasible candidates are generated. After a level the
//! temperature drops linearly by `alpha` and the search restarts from a shaken
//! copy of the best solution seen so far.
//!
//! Candidate revenue is evaluated incrementally: with the macro cell's power
//! affine in its load, the revenue of a switch vector is the sum of fixed
//! per-cell gains over the sleeping cells. The returned revenue is always
//! recomputed from scratch with [`total_revenue_slot`].

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::neighborhood::{pick_one, pick_pair};
use super::{slot_rng, SlotSolution};
use crate::econ::{bs_power, total_revenue_slot, KWH_PER_WATT_MINUTE};
use crate::error::{Error, Result};
use crate::feasibility::is_feasible;
use crate::model::{Scenario, SwitchVector};

/// Random draws tried before a neighborhood is enumerated exhaustively.
const REJECTION_DRAWS: usize = 8;
/// Random draws tried for the initial solution before falling back to a randomized greedy build.
const INITIAL_DRAWS: usize = 1_000;
/// Incremental macro loads closer than this to the limit are re-checked from scratch.
const BOUNDARY_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SaParams {
    pub t_init: f64,
    pub t_final: f64,
    /// Linear temperature decrement per level.
    pub alpha: f64,
    /// Local iterations per level, as a multiple of the number of small cells.
    pub k_factor: u32,
    pub boltzmann_k: f64,
    pub shake_flip_prob: f64,
    pub rng_seed: u64,
}

impl Default for SaParams {
    fn default() -> Self {
        SaParams {
            t_init: 1.0,
            t_final: 0.01,
            alpha: 0.01,
            k_factor: 10,
            boltzmann_k: 1.0,
            shake_flip_prob: 0.2,
            rng_seed: 0,
        }
    }
}

impl SaParams {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.t_final > 0.0
            && self.t_init > self.t_final
            && self.alpha > 0.0
            && self.boltzmann_k > 0.0
            && (0.0..=1.0).contains(&self.shake_flip_prob)
            && [self.t_init, self.t_final, self.alpha, self.boltzmann_k]
                .iter()
                .all(|v| v.is_finite());
        if !ok {
            return Err(Error::Config(format!(
                "annealing parameters need t_init > t_final > 0, alpha > 0, K > 0 and a flip probability in [0, 1]; got {self:?}"
            )));
        }
        Ok(())
    }

    /// Number of temperature levels, `ceil((t_init - t_final) / alpha)`.
    ///
    /// The ratio is snapped to the nearest integer when within 1e-9 of it so that
    /// decimal parameters such as 0.99 / 0.01 give 99 levels rather than 100.
    pub fn levels(&self) -> u64 {
        let ratio = (self.t_init - self.t_final) / self.alpha;
        let nearest = ratio.round();
        if (ratio - nearest).abs() < 1e-9 {
            nearest as u64
        } else {
            ratio.ceil() as u64
        }
    }

    pub fn temperature(&self, level: u64) -> f64 {
        self.t_init - level as f64 * self.alpha
    }

    /// Local iterations per level for `n_sbs` small cells.
    pub fn local_iterations(&self, n_sbs: usize) -> u64 {
        u64::from(self.k_factor) * n_sbs as u64
    }

    /// Objective evaluations a full run performs on `n_sbs` small cells.
    pub fn expected_evaluations(&self, n_sbs: usize) -> u64 {
        self.levels() * self.local_iterations(n_sbs) * 3
    }
}

/// Metropolis rule for maximization: improvements and ties are always taken,
/// a loss of `gap` is taken with probability `exp(-gap / (K * temperature))`.
pub fn metropolis_accept(
    current_revenue: f64,
    candidate_revenue: f64,
    temperature: f64,
    params: &SaParams,
    rng: &mut impl Rng,
) -> bool {
    debug_assert!(temperature > 0.0);
    if candidate_revenue >= current_revenue {
        return true;
    }
    let gap = current_revenue - candidate_revenue;
    let u: f64 = rng.random();
    u < (-gap / (params.boltzmann_k * temperature)).exp()
}

/// Per-slot constants for incremental evaluation.
struct SlotModel<'a> {
    scenario: &'a Scenario,
    slot: usize,
    base_load: f64,
    limit: f64,
    /// Load each small cell adds to the macro cell when it sleeps.
    moved: Vec<f64>,
    /// Revenue gained by putting each small cell to sleep.
    gain: Vec<f64>,
}

impl<'a> SlotModel<'a> {
    fn new(scenario: &'a Scenario, slot: usize) -> Result<Self> {
        let mbs = scenario.mbs();
        let mbs_slope = mbs.zeta * mbs.p_tx;
        let kwh_price = f64::from(scenario.grid().slot_min())
            * KWH_PER_WATT_MINUTE
            * scenario.pricing().electricity()[slot];
        let rb_price = scenario.pricing().spectrum()[slot];
        let n = scenario.n_sbs();
        let mut moved = Vec::with_capacity(n);
        let mut gain = Vec::with_capacity(n);
        for j in 0..n {
            let bs = scenario.sbs(j);
            let tau = scenario.load(j + 1, slot);
            let m = scenario.offload_weight(j) * tau;
            let watts = bs_power(bs, tau)? - bs.sleep_power() - m * mbs_slope;
            moved.push(m);
            gain.push(watts * kwh_price + f64::from(scenario.demand(j, slot)) * rb_price);
        }
        Ok(SlotModel {
            scenario,
            slot,
            base_load: scenario.load(0, slot),
            limit: scenario.mbs_capacity_limit(),
            moved,
            gain,
        })
    }

    fn n(&self) -> usize {
        self.moved.len()
    }

    fn state(&self, switch: SwitchVector) -> Result<State> {
        let mut moved = 0.0;
        let mut revenue = 0.0;
        for j in switch.off_indices() {
            moved += self.moved[j];
            revenue += self.gain[j];
        }
        let feasible = is_feasible(self.scenario, self.slot, &switch)?.feasible;
        Ok(State {
            switch,
            moved,
            revenue,
            feasible,
            version: 0,
        })
    }

    fn feasible_switch(&self, switch: &SwitchVector) -> bool {
        is_feasible(self.scenario, self.slot, switch)
            .map(|r| r.feasible)
            .unwrap_or(false)
    }

    /// Change in offloaded load and revenue caused by `mv` from `state`.
    fn delta(&self, state: &State, mv: Move) -> (f64, f64) {
        let flip = |j: usize| {
            if state.switch.sbs_on(j) {
                (self.moved[j], self.gain[j])
            } else {
                (-self.moved[j], -self.gain[j])
            }
        };
        match mv {
            Move::Stay => (0.0, 0.0),
            Move::Flip(j) => flip(j),
            Move::FlipPair(a, b) => {
                let (ma, ga) = flip(a);
                let (mb, gb) = flip(b);
                (ma + mb, ga + gb)
            }
            Move::Swap(a, b) => {
                if state.switch.sbs_on(a) == state.switch.sbs_on(b) {
                    (0.0, 0.0)
                } else {
                    let (ma, ga) = flip(a);
                    let (mb, gb) = flip(b);
                    (ma + mb, ga + gb)
                }
            }
        }
    }

    /// Whether applying `mv` to `state` yields a feasible vector. Loads near
    /// the limit are settled by the exact check on the candidate vector.
    fn move_feasible(&self, state: &mut State, mv: Move) -> bool {
        if matches!(mv, Move::Stay) {
            return state.feasible;
        }
        let (dm, _) = self.delta(state, mv);
        let load = self.base_load + state.moved + dm;
        if load < self.limit - BOUNDARY_MARGIN {
            return true;
        }
        if load > self.limit + BOUNDARY_MARGIN {
            return false;
        }
        mv.apply(&mut state.switch);
        let ok = self.feasible_switch(&state.switch);
        mv.apply(&mut state.switch);
        ok
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Neighborhood {
    OneReserve,
    TwoReserve,
    Swap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Move {
    /// No feasible neighbor exists: the candidate is the current solution.
    Stay,
    Flip(usize),
    FlipPair(usize, usize),
    Swap(usize, usize),
}

impl Move {
    /// Whether applying the move to `switch` changes it.
    fn changes(self, switch: &SwitchVector) -> bool {
        match self {
            Move::Stay => false,
            Move::Swap(a, b) => switch.sbs_on(a) != switch.sbs_on(b),
            Move::Flip(_) | Move::FlipPair(..) => true,
        }
    }

    /// Applying a move twice restores the original vector.
    fn apply(self, switch: &mut SwitchVector) {
        match self {
            Move::Stay => {}
            Move::Flip(j) => switch.flip_sbs(j),
            Move::FlipPair(a, b) => {
                switch.flip_sbs(a);
                switch.flip_sbs(b);
            }
            Move::Swap(a, b) => switch.swap_sbs(a, b),
        }
    }
}

impl Neighborhood {
    fn draw(self, n: usize, rng: &mut impl Rng) -> Option<Move> {
        match self {
            Neighborhood::OneReserve if n >= 1 => Some(Move::Flip(pick_one(n, rng))),
            Neighborhood::TwoReserve if n >= 2 => {
                let (a, b) = pick_pair(n, rng);
                Some(Move::FlipPair(a, b))
            }
            Neighborhood::Swap if n >= 2 => {
                let (a, b) = pick_pair(n, rng);
                Some(Move::Swap(a, b))
            }
            _ => None,
        }
    }

    fn for_each(self, n: usize, mut f: impl FnMut(Move)) {
        match self {
            Neighborhood::OneReserve => (0..n).for_each(|j| f(Move::Flip(j))),
            Neighborhood::TwoReserve | Neighborhood::Swap => {
                for a in 0..n {
                    for b in a + 1..n {
                        f(if self == Neighborhood::Swap {
                            Move::Swap(a, b)
                        } else {
                            Move::FlipPair(a, b)
                        });
                    }
                }
            }
        }
    }
}

struct State {
    switch: SwitchVector,
    /// Sum of the loads moved onto the macro cell.
    moved: f64,
    revenue: f64,
    feasible: bool,
    /// Bumped whenever `switch` may have changed.
    version: u64,
}

/// Feasible part of one neighborhood of the state with the given version.
#[derive(Default)]
struct NeighborCache {
    version: Option<u64>,
    moves: Vec<Move>,
}

/// Draws a uniformly random feasible neighbor of `state`.
///
/// Random draws are rejected until one is feasible; after a fixed number of
/// rejections the feasible part of the neighborhood is enumerated and sampled
/// directly, which gives the same distribution and also detects an empty one.
/// The enumeration is kept until the current solution changes, which makes
/// saturated slots, where almost every neighbor is infeasible, cheap.
fn feasible_neighbor(
    model: &SlotModel<'_>,
    state: &mut State,
    hood: Neighborhood,
    cache: &mut NeighborCache,
    rng: &mut ChaCha8Rng,
) -> Move {
    if cache.version != Some(state.version) {
        let n = model.n();
        for _ in 0..REJECTION_DRAWS {
            match hood.draw(n, rng) {
                Some(mv) if model.move_feasible(state, mv) => return mv,
                Some(_) => {}
                None => return Move::Stay,
            }
        }
        cache.moves.clear();
        hood.for_each(n, |mv| {
            if model.move_feasible(state, mv) {
                cache.moves.push(mv);
            }
        });
        cache.version = Some(state.version);
        if cache.moves.is_empty() {
            log::trace!("slot {}: no feasible {hood:?} neighbor", model.slot);
        }
    }
    if cache.moves.is_empty() {
        Move::Stay
    } else {
        cache.moves[rng.random_range(0..cache.moves.len())]
    }
}

fn initial_solution(model: &SlotModel<'_>, rng: &mut ChaCha8Rng) -> Result<State> {
    let n = model.n();
    let mut switch = SwitchVector::all_on(n);
    for _ in 0..INITIAL_DRAWS {
        for j in 0..n {
            switch.set_sbs(j, rng.random_bool(0.5));
        }
        if model.feasible_switch(&switch) {
            return model.state(switch);
        }
    }
    // Heavily loaded slot: switch cells off in random order while they still fit.
    log::debug!("slot {}: random initial solution fell back to greedy build", model.slot);
    let mut switch = SwitchVector::all_on(n);
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.random_range(0..=i));
    }
    for j in order {
        if rng.random_bool(0.5) {
            switch.set_sbs(j, false);
            if !model.feasible_switch(&switch) {
                switch.set_sbs(j, true);
            }
        }
    }
    model.state(switch)
}

/// Solves one slot with simulated annealing. Deterministic for a given seed and slot.
pub fn sa_solve_slot(scenario: &Scenario, slot: usize, params: &SaParams) -> Result<SlotSolution> {
    anneal(scenario, slot, params, |_, _| {})
}

/// Best revenue found after each temperature level, for convergence diagnostics.
pub fn sa_best_per_level(scenario: &Scenario, slot: usize, params: &SaParams) -> Result<Vec<f64>> {
    let mut trace = Vec::new();
    anneal(scenario, slot, params, |_, best| trace.push(best))?;
    Ok(trace)
}

fn anneal(
    scenario: &Scenario,
    slot: usize,
    params: &SaParams,
    mut on_level: impl FnMut(u64, f64),
) -> Result<SlotSolution> {
    params.validate()?;
    scenario.check_slot(slot)?;
    let n = scenario.n_sbs();
    if n == 0 {
        let switch = SwitchVector::all_on(0);
        let revenue = total_revenue_slot(scenario, slot, &switch)?;
        return Ok(SlotSolution {
            switch,
            revenue,
            evaluations: 0,
        });
    }

    let mut rng = slot_rng(params.rng_seed, slot);
    let model = SlotModel::new(scenario, slot)?;
    let mut current = initial_solution(&model, &mut rng)?;
    let mut best_switch = current.switch.clone();
    let mut best_revenue = current.revenue;
    let mut evaluations = 0u64;
    let mut caches: [NeighborCache; 3] = Default::default();
    let mut version = 0u64;
    let k = params.local_iterations(n);
    let hoods = [
        Neighborhood::OneReserve,
        Neighborhood::TwoReserve,
        Neighborhood::Swap,
    ];

    for level in 0..params.levels() {
        let temperature = params.temperature(level);
        for _ in 0..k {
            for (hood, cache) in hoods.into_iter().zip(caches.iter_mut()) {
                let mv = feasible_neighbor(&model, &mut current, hood, cache, &mut rng);
                let (dm, dr) = model.delta(&current, mv);
                let candidate_revenue = current.revenue + dr;
                evaluations += 1;
                let candidate_feasible = mv != Move::Stay || current.feasible;
                if candidate_feasible && candidate_revenue > best_revenue {
                    best_revenue = candidate_revenue;
                    best_switch.clone_from(&current.switch);
                    mv.apply(&mut best_switch);
                }
                if metropolis_accept(current.revenue, candidate_revenue, temperature, params, &mut rng)
                {
                    if mv.changes(&current.switch) {
                        mv.apply(&mut current.switch);
                        version += 1;
                        current.version = version;
                    }
                    current.moved += dm;
                    current.revenue = candidate_revenue;
                    current.feasible = candidate_feasible;
                }
            }
        }
        on_level(level, best_revenue);
        let shaken = super::neighborhood::shake(&best_switch, params.shake_flip_prob, &mut rng);
        current = model.state(shaken)?;
        version += 1;
        current.version = version;
    }

    let report = is_feasible(scenario, slot, &best_switch)?;
    if !report.feasible {
        return Err(Error::Infeasible(format!(
            "annealing returned {best_switch} with macro load {} in slot {slot}",
            report.mbs_load_after
        )));
    }
    let revenue = total_revenue_slot(scenario, slot, &best_switch)?;
    Ok(SlotSolution {
        switch: best_switch,
        revenue,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CURRENCY_TOL;
    use crate::solvers::exhaustive::es_solve_slot;
    use crate::test_support::random_scenario;
    use rand::SeedableRng;

    #[test]
    fn default_levels_and_counts() {
        let p = SaParams::default();
        assert_eq!(p.levels(), 99);
        assert_eq!(p.local_iterations(12), 120);
        assert_eq!(p.expected_evaluations(12), 99 * 120 * 3);
        assert!(p.temperature(98) > p.t_final);
        let q = SaParams {
            t_init: 1.0,
            t_final: 0.3,
            alpha: 0.25,
            ..SaParams::default()
        };
        assert_eq!(q.levels(), 3);
    }

    #[test]
    fn params_validation() {
        assert!(SaParams::default().validate().is_ok());
        let bad = SaParams {
            t_final: 2.0,
            ..SaParams::default()
        };
        assert!(bad.validate().is_err());
        let bad = SaParams {
            alpha: 0.0,
            ..SaParams::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn metropolis_edges() {
        let p = SaParams::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            assert!(metropolis_accept(1.0, 2.0, 0.5, &p, &mut rng));
            assert!(metropolis_accept(1.0, 1.0, 0.01, &p, &mut rng));
        }
        // A huge loss at low temperature is never accepted.
        assert!(!(0..1000).any(|_| metropolis_accept(100.0, 0.0, 0.01, &p, &mut rng)));
    }

    #[test]
    fn metropolis_rate_matches_boltzmann() {
        let p = SaParams::default();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let trials = 100_000;
        let hits = (0..trials)
            .filter(|_| metropolis_accept(1.0, 0.5, 1.0, &p, &mut rng))
            .count();
        let expect = (-0.5f64).exp();
        let sd = (expect * (1.0 - expect) / trials as f64).sqrt();
        let rate = hits as f64 / trials as f64;
        assert!((rate - expect).abs() < 3.0 * sd, "{rate} vs {expect}");
    }

    #[test]
    fn incremental_gain_matches_full_revenue() {
        for case in 0..50 {
            let s = random_scenario(case, 1 + case as usize % 9, 3);
            for slot in 0..3 {
                let model = SlotModel::new(&s, slot).unwrap();
                for mask in 0..1u64 << s.n_sbs() {
                    let sw = SwitchVector::from_off_mask(s.n_sbs(), mask);
                    if !is_feasible(&s, slot, &sw).unwrap().feasible {
                        continue;
                    }
                    let st = model.state(sw.clone()).unwrap();
                    let full = total_revenue_slot(&s, slot, &sw).unwrap().total;
                    assert!((st.revenue - full).abs() < CURRENCY_TOL);
                }
            }
        }
    }

    #[test]
    fn single_cell_and_empty() {
        let s = random_scenario(4, 0, 2);
        let r = sa_solve_slot(&s, 0, &SaParams::default()).unwrap();
        assert_eq!(r.switch, SwitchVector::all_on(0));
        assert_eq!(r.revenue.total, 0.0);
        assert_eq!(r.evaluations, 0);

        let s = random_scenario(5, 1, 2);
        let r = sa_solve_slot(&s, 1, &SaParams::default()).unwrap();
        assert_eq!(r.evaluations, SaParams::default().expected_evaluations(1));
        let es = es_solve_slot(&s, 1, 24).unwrap();
        assert_eq!(r.revenue.total, es.revenue.total);
    }

    #[test]
    fn deterministic_and_feasible() {
        let s = random_scenario(6, 8, 4);
        let p = SaParams::default().with_seed(99);
        for slot in 0..4 {
            let a = sa_solve_slot(&s, slot, &p).unwrap();
            let b = sa_solve_slot(&s, slot, &p).unwrap();
            assert_eq!(a, b);
            assert!(is_feasible(&s, slot, &a.switch).unwrap().feasible);
            assert_eq!(a.evaluations, p.expected_evaluations(8));
            let es = es_solve_slot(&s, slot, 24).unwrap();
            assert!(es.revenue.total >= a.revenue.total);
        }
    }
}
