//! Synthetic stand-in for measured per-grid activity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::model::TimeGrid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrafficProfile {
    /// Overnight trough, a late-morning peak and a stronger evening peak.
    #[default]
    Diurnal,
}

/// Activity scale of the synthetic series; arbitrary, like raw CDR counts.
const ACTIVITY_SCALE: f64 = 100.0;
const MAX_PHASE_H: f64 = 1.5;
const NOISE_SD: f64 = 0.08;

fn bump(hour: f64, centre: f64, width: f64) -> f64 {
    let d = (hour - centre).rem_euclid(24.0);
    let d = d.min(24.0 - d);
    (-0.5 * (d / width).powi(2)).exp()
}

fn diurnal(hour: f64, morning: f64, evening: f64) -> f64 {
    0.08 + morning * bump(hour, 11.5, 3.0) + evening * bump(hour, 20.0, 2.5)
}

/// Raw activity for one grid. Depends only on `(seed, index)`, so adding
/// stations never changes the series of existing ones.
pub fn synth_grid_activity(
    seed: u64,
    index: usize,
    grid: TimeGrid,
    profile: TrafficProfile,
) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let noise = Normal::new(0.0, NOISE_SD).expect("constant sd is valid");
    match profile {
        TrafficProfile::Diurnal => {
            let phase = rng.random_range(-MAX_PHASE_H..=MAX_PHASE_H);
            let morning = rng.random_range(0.6..0.9);
            let evening = rng.random_range(0.8..1.1);
            let slot_h = f64::from(grid.slot_min()) / 60.0;
            (0..grid.num_slots())
                .map(|t| {
                    let hour = (t as f64 + 0.5) * slot_h - phase;
                    let v = diurnal(hour, morning, evening) * (1.0 + noise.sample(&mut rng));
                    ACTIVITY_SCALE * v.max(0.0)
                })
                .collect()
        }
    }
}

/// One raw series per station: the macro cell sums grids 0 and 1, small cell
/// `j` uses grid `j + 2`.
pub fn synth_traffic(seed: u64, grid: TimeGrid, n_sbs: usize, profile: TrafficProfile) -> Vec<Vec<f64>> {
    let a = synth_grid_activity(seed, 0, grid, profile);
    let b = synth_grid_activity(seed, 1, grid, profile);
    let mut out = vec![a.iter().zip(&b).map(|(x, y)| x + y).collect()];
    out.extend((0..n_sbs).map(|j| synth_grid_activity(seed, j + 2, grid, profile)));
    out
}
