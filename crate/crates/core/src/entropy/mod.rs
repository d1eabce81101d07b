//! Growth number `s = exp(h)` by three estimators: the spectral radius of a
//! postcritical transition matrix (primary), lap-count growth, and the
//! `N(f^k)` count of critical and negative fixed points.

pub mod images;
pub mod laps;
pub mod markov;
pub mod spectral;

use serde::{Deserialize, Serialize};

pub use images::{deep_lap_ratio, lap_counts_by_images, lap_growth_factors, DEEP_LAP_DEPTH};
pub use laps::{lap_and_n_counts, lap_counts, n_counts, LapCountSequence, LapStructure, NSequence};
pub use markov::{postcritical_partition, transitions, Transitions};
pub use spectral::RangeMatrix;

use crate::maps::PiecewiseMonotone;
use crate::tolerances;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Markov,
    LapRatio,
    NCount,
}

/// A growth number with its provenance.
///
/// `err` is a heuristic spread: the disagreement between the snapping
/// variants of the transition matrix, the change over the last depth
/// doubling and, when the other estimators were run, the largest gap to
/// them (also kept separately in `cross`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyEstimate {
    pub s: f64,
    pub h: f64,
    pub method: Method,
    pub depth: usize,
    pub err: f64,
    pub converged: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross: Option<f64>,
}

impl EntropyEstimate {
    fn new(s: f64, method: Method, depth: usize, err: f64, converged: bool) -> Self {
        let s = s.max(1.0);
        EntropyEstimate {
            s,
            h: s.ln(),
            method,
            depth,
            err,
            converged,
            cross: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct serializes")
    }
}

/// Markov estimate at a fixed orbit depth.
///
/// Reports the radius of the nearest-snapped matrix; `err` is the spread
/// over the three snapping variants plus the power-iteration brackets.
pub fn entropy_markov<M: PiecewiseMonotone + ?Sized>(f: &M, depth: usize) -> EntropyEstimate {
    let t = transitions(f, postcritical_partition(f, depth));
    let (s, w) = t.nearest.spectral_radius(markov::SPECTRAL_RTOL);
    if t.is_markov() {
        return EntropyEstimate::new(s, Method::Markov, depth, w, true);
    }
    // an acyclic transition graph has radius 0 but growth number 1
    let (lo, w_lo) = t.down.spectral_radius(markov::SPECTRAL_RTOL);
    let (hi, w_hi) = t.up.spectral_radius(markov::SPECTRAL_RTOL);
    let (s, lo, hi) = (s.max(1.0), lo.max(1.0), hi.max(1.0));
    let spread = s.max(lo).max(hi) - s.min(lo).min(hi);
    EntropyEstimate::new(s, Method::Markov, depth, spread + w + w_lo + w_hi, false)
}

/// Knobs for [`entropy_with`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyOptions {
    pub tol: f64,
    /// Largest number of partition points.
    pub max_points: usize,
    /// Run the lap-ratio and `N`-count estimators as a cross-check.
    pub cross_check: bool,
}

impl EntropyOptions {
    pub fn new(tol: f64) -> Self {
        EntropyOptions {
            tol,
            max_points: tolerances::MARKOV_POINT_CAP,
            cross_check: true,
        }
    }

    pub fn fast(tol: f64) -> Self {
        EntropyOptions {
            cross_check: false,
            ..Self::new(tol)
        }
    }
}

/// Growth number to tolerance `tol`, with cross-checks.
pub fn entropy<M: PiecewiseMonotone + ?Sized>(f: &M, tol: f64) -> EntropyEstimate {
    entropy_with(f, EntropyOptions::new(tol))
}

/// Doubles the Markov depth until two successive estimates agree to
/// `tol / 2` or the partition stops growing (the map is post-critically
/// finite and the estimate is exact).
pub fn entropy_with<M: PiecewiseMonotone + ?Sized>(f: &M, opts: EntropyOptions) -> EntropyEstimate {
    let m = f.critical_points().len().max(1);
    let max_depth = (opts.max_points.saturating_sub(2) / m).saturating_sub(1).max(1);
    let mut depth = 8.min(max_depth);
    let mut prev: Option<(EntropyEstimate, usize)> = None;
    let mut best;
    loop {
        let est = entropy_markov(f, depth);
        let npts = postcritical_partition(f, depth).len();
        best = est.clone();
        if let Some((p, pn)) = &prev {
            let delta = (est.s - p.s).abs();
            best.err = best.err.max(delta);
            if npts == *pn || (delta < opts.tol / 2.0 && est.err < opts.tol) {
                best.converged = true;
                break;
            }
        }
        if depth >= max_depth {
            best.converged = best.err < opts.tol;
            break;
        }
        prev = Some((est, npts));
        depth = (depth * 2).min(max_depth);
    }
    if opts.cross_check {
        best.cross = cross_estimates(f)
            .into_iter()
            .flatten()
            .map(|o| (o.s - best.s).abs())
            .reduce(f64::max);
        if let Some(c) = best.cross {
            best.err = best.err.max(c);
        }
    }
    best
}

/// Lap-ratio and `N`-count estimates at the deepest affordable level.
///
/// The lap ratio comes from lap images at depth [`DEEP_LAP_DEPTH`] where
/// that method applies, and from the preimage tree otherwise.
pub fn cross_estimates<M: PiecewiseMonotone + ?Sized>(f: &M) -> [Option<EntropyEstimate>; 2] {
    let depth = laps::depth_cap(f).min(10);
    let (shallow, n) = match lap_and_n_counts(f, depth) {
        Ok((l, n)) => (lap_ratio_estimate(&l), n_count_estimate(&n)),
        Err(_) => (None, None),
    };
    [deep_lap_ratio(f, DEEP_LAP_DEPTH).or(shallow), n]
}

/// `ℓ(f^n) / ℓ(f^(n-1))` at the last available `n`.
pub fn lap_ratio_estimate(l: &LapCountSequence) -> Option<EntropyEstimate> {
    let k = l.counts.len();
    if k < 2 {
        return None;
    }
    let s = l.counts[k - 1] as f64 / l.counts[k - 2] as f64;
    Some(EntropyEstimate::new(s, Method::LapRatio, k, f64::NAN, true))
}

/// `max exp(log N(f^k) / k)` over the tail half of the available `k`.
pub fn n_count_estimate(n: &NSequence) -> Option<EntropyEstimate> {
    let k = n.counts.len();
    if k == 0 {
        return None;
    }
    let s = (k / 2..k)
        .map(|i| {
            let c = n.counts[i].max(1) as f64;
            (c.ln() / (i + 1) as f64).exp()
        })
        .fold(1.0, f64::max);
    Some(EntropyEstimate::new(s, Method::NCount, k, f64::NAN, true))
}
