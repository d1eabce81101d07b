//! Lap counts from lap images.
//!
//! Each lap `J` of `f^n` is carried to an interval `f^n(J)` whose ends are
//! postcritical values. The lap of `f^(n+1)` over `J` splits once for every
//! critical point inside `f^n(J)`, so
//! `ℓ(f^(n+1)) = Σ_J (1 + #{c_i ∈ int f^n(J)})`, and only the multiset of
//! images needs to be kept. Its support has at most quadratically many
//! members in `n`, which makes depths in the hundreds affordable where the
//! preimage tree of [`super::laps`] is limited to about a dozen.
//!
//! The count is exact for strictly piecewise monotone maps with
//! `f({0, 1}) ⊆ {0, 1}` as long as no turning point of an iterate lands on
//! a critical point; maps where a critical orbit hits a critical point are
//! rejected.
//!
//! Images are keyed by the exact `f64` values of their ends. Postcritical
//! values are produced by the same forward iteration at every step, so a
//! value and its image always carry the same bits.

use std::collections::HashMap;

use super::{EntropyEstimate, Method};
use crate::error::{Error, Result};
use crate::maps::{Direction, PiecewiseMonotone};

/// Cap on distinct lap images kept at one step.
const IMAGE_BUDGET: usize = 400_000;

/// How far `f(0)` and `f(1)` may sit from `{0, 1}`.
const EDGE_TOL: f64 = 1e-12;

/// `f(x)`, with the images of 0 and 1 snapped to the endpoints.
fn image<M: PiecewiseMonotone + ?Sized>(f: &M, x: f64) -> f64 {
    let y = f.eval(x);
    if x == 0.0 || x == 1.0 {
        y.round()
    } else {
        y
    }
}

/// Default depth of [`deep_lap_ratio`].
pub const DEEP_LAP_DEPTH: usize = 400;

fn check<M: PiecewiseMonotone + ?Sized>(f: &M) -> Result<()> {
    if f.branches().iter().any(|b| b.dir == Direction::Flat) {
        return Err(Error::Invalid("lap images need strictly monotone branches".into()));
    }
    for x in [0.0, 1.0] {
        let y = f.eval(x);
        if y.abs() > EDGE_TOL && (y - 1.0).abs() > EDGE_TOL {
            return Err(Error::Invalid("lap images need f({0, 1}) ⊆ {0, 1}".into()));
        }
    }
    Ok(())
}

/// Runs `depth` steps; `visit(n, weight)` receives the lap weight of
/// `f^n`. With `normalize`, weights are rescaled to total 1 after each step
/// and `weight` is the growth factor `ℓ(f^n) / ℓ(f^(n-1))` instead.
fn run<M, F>(f: &M, depth: usize, normalize: bool, mut visit: F) -> Result<()>
where
    M: PiecewiseMonotone + ?Sized,
    F: FnMut(usize, f64),
{
    check(f)?;
    let crits = f.critical_points();
    let mut images: HashMap<(u64, u64), f64> = HashMap::new();
    images.insert((0f64.to_bits(), 1f64.to_bits()), 1.0);
    for n in 1..=depth {
        let mut next: HashMap<(u64, u64), f64> = HashMap::with_capacity(images.len() * 2);
        let mut total = 0.0;
        for (&(a, b), &w) in &images {
            let (a, b) = (f64::from_bits(a), f64::from_bits(b));
            if crits.iter().any(|&c| c == a || c == b) {
                return Err(Error::Degenerate);
            }
            let mut cuts = vec![a];
            cuts.extend(crits.iter().copied().filter(|&c| c > a && c < b));
            cuts.push(b);
            for p in cuts.windows(2) {
                let (y0, y1) = (image(f, p[0]), image(f, p[1]));
                // ends that have converged onto one attracting cycle point
                // leave a collapsed image: still one lap, never split again
                let (lo, hi) = if y0 < y1 { (y0, y1) } else { (y1, y0) };
                *next.entry((lo.to_bits(), hi.to_bits())).or_insert(0.0) += w;
                total += w;
            }
        }
        if next.len() > IMAGE_BUDGET {
            return Err(Error::DepthExceeded { depth: n, cap: n - 1 });
        }
        visit(n, total);
        if normalize {
            for w in next.values_mut() {
                *w /= total;
            }
        }
        images = next;
    }
    Ok(())
}

/// `ℓ(f^n)` for `n = 1..=depth`, exact while below `2^53`.
pub fn lap_counts_by_images<M: PiecewiseMonotone + ?Sized>(f: &M, depth: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(depth);
    run(f, depth, false, |_, l| out.push(l))?;
    Ok(out)
}

/// The growth factors `ℓ(f^n) / ℓ(f^(n-1))` for `n = 1..=depth`.
pub fn lap_growth_factors<M: PiecewiseMonotone + ?Sized>(f: &M, depth: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(depth);
    run(f, depth, true, |_, r| out.push(r))?;
    Ok(out)
}

/// Lap-ratio estimate `ℓ(f^n) / ℓ(f^(n-1))` at `n = depth`, or at the
/// last depth inside the image budget.
pub fn deep_lap_ratio<M: PiecewiseMonotone + ?Sized>(f: &M, depth: usize) -> Option<EntropyEstimate> {
    let mut last = None;
    match run(f, depth, true, |n, r| last = Some((n, r))) {
        Ok(()) | Err(Error::DepthExceeded { .. }) => {}
        Err(_) => return None,
    }
    let (n, r) = last?;
    (n >= 2).then(|| EntropyEstimate::new(r, Method::LapRatio, n, f64::NAN, true))
}
