//! Entropy scans over the parameter triangle, isentrope contours and
//! band connectivity.
//!
//! Grid nodes sit at `v1 = x0 + i·(x1-x0)/m`, `v2 = y0 + j·(y1-y0)/m` for
//! `0 ≤ i, j ≤ m`; nodes with `v2 > v1` are masked. The diagonal itself is
//! sampled with the degenerate cubic (or the merged-plateau sawtooth).

mod contour;
mod io;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use contour::{band_connectivity, contours, ContourSet, Polyline};
pub use io::{contours_svg, grid_from_csv, grid_to_csv, grid_to_pgm};

use crate::entropy::{entropy_with, EntropyOptions};
use crate::error::{Error, Result};
use crate::maps::Family;
use crate::svg::Window;

/// Smallest accepted resolution.
pub const MIN_RESOLUTION: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub s: f64,
    pub err: f64,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsentropeGrid {
    pub family: Family,
    pub m: usize,
    pub window: Window,
    pub tol: f64,
    /// Row-major by `v2` index: node `(i, j)` is at `j * (m + 1) + i`.
    pub samples: Vec<Option<Sample>>,
}

impl IsentropeGrid {
    pub fn node(&self, i: usize, j: usize) -> (f64, f64) {
        node_coords(&self.window, self.m, i, j)
    }

    pub fn get(&self, i: usize, j: usize) -> Option<Sample> {
        self.samples[j * (self.m + 1) + i]
    }

    pub fn s(&self, i: usize, j: usize) -> Option<f64> {
        self.get(i, j).map(|x| x.s)
    }

    /// Nodes whose estimate did not reach the tolerance.
    pub fn flagged(&self) -> usize {
        self.samples.iter().flatten().filter(|x| !x.converged).count()
    }

    /// Node spacing in `v1` and `v2`.
    pub fn spacing(&self) -> (f64, f64) {
        let w = self.window;
        ((w.x1 - w.x0) / self.m as f64, (w.y1 - w.y0) / self.m as f64)
    }
}

fn node_coords(w: &Window, m: usize, i: usize, j: usize) -> (f64, f64) {
    let at = |a: f64, b: f64, k: usize| if k == m { b } else { a + (b - a) * k as f64 / m as f64 };
    (at(w.x0, w.x1, i), at(w.y0, w.y1, j))
}

pub(crate) fn in_triangle(v1: f64, v2: f64) -> bool {
    (0.0..=1.0).contains(&v1) && (0.0..=1.0).contains(&v2) && v2 <= v1
}

/// Checks that `w` is a nonempty subwindow of the unit square meeting the
/// triangle.
pub fn check_window(w: &Window) -> Result<()> {
    let finite = [w.x0, w.x1, w.y0, w.y1].iter().all(|x| x.is_finite());
    if !finite || w.x0 >= w.x1 || w.y0 >= w.y1 {
        return Err(Error::Invalid(format!("empty window {},{},{},{}", w.x0, w.x1, w.y0, w.y1)));
    }
    if w.x0 < 0.0 || w.y0 < 0.0 || w.x1 > 1.0 || w.y1 > 1.0 {
        return Err(Error::Invalid("window must lie in the unit square".into()));
    }
    if w.y0 > w.x1 {
        return Err(Error::Invalid("window misses the parameter triangle".into()));
    }
    Ok(())
}

/// Growth numbers at every triangle node of an `m × m` grid on the unit
/// square.
pub fn scan(family: Family, m: usize, tol: f64) -> Result<IsentropeGrid> {
    scan_window(family, m, tol, Window::UNIT)
}

/// As [`scan`], on a subwindow.
pub fn scan_window(family: Family, m: usize, tol: f64, window: Window) -> Result<IsentropeGrid> {
    if m < MIN_RESOLUTION {
        return Err(Error::Invalid(format!("resolution must be at least {MIN_RESOLUTION}")));
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::Invalid("tolerance must lie in (0, 1)".into()));
    }
    if family == Family::Quad {
        return Err(Error::Invalid("scans cover the bimodal families".into()));
    }
    check_window(&window)?;
    let opts = EntropyOptions::fast(tol);
    let n = (m + 1) * (m + 1);
    let samples = (0..n)
        .into_par_iter()
        .map(|k| {
            let (v1, v2) = node_coords(&window, m, k % (m + 1), k / (m + 1));
            if !in_triangle(v1, v2) {
                return None;
            }
            let f = family.map_at(v1, v2).ok()?;
            let e = entropy_with(&f, opts);
            Some(Sample {
                s: e.s,
                err: e.err,
                converged: e.converged,
            })
        })
        .collect();
    Ok(IsentropeGrid {
        family,
        m,
        window,
        tol,
        samples,
    })
}
