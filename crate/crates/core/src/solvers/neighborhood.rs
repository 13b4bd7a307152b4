//! Neighborhood moves over the small-cell bits of a switch vector.
//!
//! The macro bit is never touched. Pair moves pick an unordered pair of
//! distinct small cells uniformly at random.

use rand::Rng;

use crate::error::{Error, Result};
use crate::model::SwitchVector;

/// Uniform index in `0..n`.
pub(crate) fn pick_one(n: usize, rng: &mut impl Rng) -> usize {
    rng.random_range(0..n)
}

/// Uniform unordered pair of distinct indices in `0..n`, returned as `(low, high)`. Needs `n >= 2`.
pub(crate) fn pick_pair(n: usize, rng: &mut impl Rng) -> (usize, usize) {
    let a = rng.random_range(0..n);
    let mut b = rng.random_range(0..n - 1);
    if b >= a {
        b += 1;
    }
    (a.min(b), a.max(b))
}

fn need_pair(switch: &SwitchVector) -> Result<()> {
    if switch.n_sbs() < 2 {
        return Err(Error::Degenerate(format!(
            "pair move needs at least 2 small cells, got {}",
            switch.n_sbs()
        )));
    }
    Ok(())
}

/// Flips one uniformly chosen small cell.
pub fn neighbor_one_reserve(switch: &SwitchVector, rng: &mut impl Rng) -> Result<SwitchVector> {
    if switch.n_sbs() == 0 {
        return Err(Error::Degenerate("no small cells to flip".into()));
    }
    let mut out = switch.clone();
    out.flip_sbs(pick_one(switch.n_sbs(), rng));
    Ok(out)
}

/// Flips two distinct, uniformly chosen small cells.
pub fn neighbor_two_reserve(switch: &SwitchVector, rng: &mut impl Rng) -> Result<SwitchVector> {
    need_pair(switch)?;
    let (a, b) = pick_pair(switch.n_sbs(), rng);
    let mut out = switch.clone();
    out.flip_sbs(a);
    out.flip_sbs(b);
    Ok(out)
}

/// Exchanges the states of two distinct, uniformly chosen small cells.
pub fn neighbor_swap(switch: &SwitchVector, rng: &mut impl Rng) -> Result<SwitchVector> {
    need_pair(switch)?;
    let (a, b) = pick_pair(switch.n_sbs(), rng);
    let mut out = switch.clone();
    out.swap_sbs(a, b);
    Ok(out)
}

/// Flips every small-cell bit independently with probability `flip_prob`.
/// The result may violate the macro capacity limit.
pub fn shake(switch: &SwitchVector, flip_prob: f64, rng: &mut impl Rng) -> SwitchVector {
    let mut out = switch.clone();
    for j in 0..out.n_sbs() {
        if rng.random_bool(flip_prob) {
            out.flip_sbs(j);
        }
    }
    out
}
