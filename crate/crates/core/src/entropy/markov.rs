//! Transition matrices on the partition cut by postcritical points.

use super::spectral::RangeMatrix;
use crate::maps::PiecewiseMonotone;
use crate::tolerances;

/// Relative accuracy of the Perron root.
pub const SPECTRAL_RTOL: f64 = 1e-10;

/// Sorted partition points `{0, 1} ∪ {f^k(c_i) : 0 ≤ k ≤ depth}` with
/// points closer than `τ_crit` merged.
pub fn postcritical_partition<M: PiecewiseMonotone + ?Sized>(f: &M, depth: usize) -> Vec<f64> {
    let mut pts = vec![0.0, 1.0];
    for c in f.critical_points() {
        let mut x = c;
        pts.push(x);
        for _ in 0..depth {
            x = f.eval(x);
            pts.push(x);
        }
    }
    pts.sort_by(f64::total_cmp);
    let mut merged: Vec<f64> = Vec::with_capacity(pts.len());
    for p in pts {
        match merged.last() {
            Some(&q) if p - q <= tolerances::CRIT => {}
            _ => merged.push(p),
        }
    }
    // keep the exact endpoints
    if let Some(last) = merged.last_mut() {
        *last = 1.0;
    }
    merged
}

/// Which neighbouring partition point an image that misses the partition
/// is moved to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Snap {
    Nearest,
    Down,
    Up,
}

/// Transition matrices on a partition.
///
/// Images of partition points are snapped onto the partition (within
/// `τ_crit` they already are; only the last orbit points miss). Row `j` then
/// covers the intervals between the snapped images of its endpoints. The
/// snapped rows are the Markov matrix of a continuous post-critically finite
/// map whose kneading data agrees with `f` to the orbit depth, so the Perron
/// root converges geometrically in the depth. On a Markov partition the
/// three variants coincide.
#[derive(Clone, Debug)]
pub struct Transitions {
    pub points: Vec<f64>,
    pub nearest: RangeMatrix,
    pub down: RangeMatrix,
    pub up: RangeMatrix,
}

impl Transitions {
    /// True when every image already lies on the partition.
    pub fn is_markov(&self) -> bool {
        self.down == self.up
    }
}

fn snap_index(points: &[f64], y: f64, snap: Snap) -> usize {
    let tau = tolerances::CRIT;
    let k = points.partition_point(|&p| p < y);
    if k < points.len() && points[k] - y <= tau {
        return k;
    }
    if k > 0 && y - points[k - 1] <= tau {
        return k - 1;
    }
    // 0 and 1 are partition points, so 0 < k < len here
    match snap {
        Snap::Down => k - 1,
        Snap::Up => k,
        Snap::Nearest if points[k] - y < y - points[k - 1] => k,
        Snap::Nearest => k - 1,
    }
}

fn snapped_matrix(points: &[f64], images: &[f64], snap: Snap) -> RangeMatrix {
    let idx: Vec<usize> = images.iter().map(|&y| snap_index(points, y, snap)).collect();
    let ranges = idx
        .windows(2)
        .map(|w| match w[0].cmp(&w[1]) {
            std::cmp::Ordering::Less => (w[0], w[1]),
            std::cmp::Ordering::Greater => (w[1], w[0]),
            std::cmp::Ordering::Equal => (0, 0),
        })
        .collect();
    RangeMatrix { ranges }
}

pub fn transitions<M: PiecewiseMonotone + ?Sized>(f: &M, points: Vec<f64>) -> Transitions {
    let images: Vec<f64> = points.iter().map(|&p| f.eval(p).clamp(0.0, 1.0)).collect();
    Transitions {
        nearest: snapped_matrix(&points, &images, Snap::Nearest),
        down: snapped_matrix(&points, &images, Snap::Down),
        up: snapped_matrix(&points, &images, Snap::Up),
        points,
    }
}
