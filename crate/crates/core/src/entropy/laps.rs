//! Lap structure of iterates `f^n`, and the counts `ℓ(f^n)` and `N(f^n)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::{iterate_unchecked, Branch, Direction, PiecewiseMonotone};
use crate::numeric::roots::illinois;
use crate::tolerances;

/// Depth cap for piecewise-linear maps, where splitting is arithmetic.
pub const PL_DEPTH_CAP: usize = 24;

/// Hard limit on the number of monotone pieces kept for one iterate.
const SEGMENT_BUDGET: usize = 4_000_000;

/// `f^n` on `[0, 1]` as a chain of monotone pieces.
///
/// `ys[i] = f^n(xs[i])` and `dirs[i]` is the direction of `f^n` on
/// `[xs[i], xs[i+1]]`. Every turning point and plateau edge of `f^n` is a
/// node; for piecewise-linear `f` so is every kink.
#[derive(Clone, Debug)]
pub struct LapStructure {
    pub n: usize,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub dirs: Vec<Direction>,
}

impl LapStructure {
    pub fn identity() -> LapStructure {
        LapStructure {
            n: 0,
            xs: vec![0.0, 1.0],
            ys: vec![0.0, 1.0],
            dirs: vec![Direction::Up],
        }
    }

    /// Number of maximal (weakly) monotone intervals.
    pub fn lap_count(&self) -> u64 {
        let mut last = None;
        let mut changes = 0u64;
        for &d in &self.dirs {
            if d == Direction::Flat {
                continue;
            }
            if let Some(prev) = last {
                if prev != d {
                    changes += 1;
                }
            }
            last = Some(d);
        }
        1 + changes
    }

    /// Maximal runs of equal direction, as `(first segment, last segment)`.
    fn runs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..=self.dirs.len() {
            if i == self.dirs.len() || self.dirs[i] != self.dirs[start] {
                out.push((start, i - 1));
                start = i;
            }
        }
        out
    }

    /// `N(f^n)`: critical fixed points plus twice the negative ones.
    ///
    /// A decreasing run holds a negative fixed point when `f^n - id` changes
    /// sign strictly across it. A turning point within `τ_fix` of the
    /// diagonal is critical, as is a flat run containing its own value.
    pub fn n_count(&self) -> u64 {
        let tau = tolerances::FIX;
        let d = |i: usize| self.ys[i] - self.xs[i];
        let runs = self.runs();
        let mut count = 0u64;
        let mut counted_node = vec![false; self.xs.len()];
        for &(a, b) in &runs {
            let (xa, xb) = (self.xs[a], self.xs[b + 1]);
            match self.dirs[a] {
                Direction::Down => {
                    if d(a) > tau && d(b + 1) < -tau {
                        count += 2;
                    }
                }
                Direction::Flat => {
                    let c = self.ys[a];
                    if c >= xa - tau && c <= xb + tau {
                        count += 1;
                        counted_node[a] = true;
                        counted_node[b + 1] = true;
                    }
                }
                Direction::Up => {}
            }
        }
        for w in runs.windows(2) {
            let (left, right) = (self.dirs[w[0].0], self.dirs[w[1].0]);
            let node = w[1].0;
            let turning = matches!(
                (left, right),
                (Direction::Up, Direction::Down) | (Direction::Down, Direction::Up)
            );
            if turning && !counted_node[node] && d(node).abs() <= tau {
                count += 1;
                counted_node[node] = true;
            }
        }
        count
    }

    /// The next iterate `f^(n+1) = f ∘ f^n`.
    pub fn advance<M: PiecewiseMonotone + ?Sized>(&self, f: &M) -> Result<LapStructure> {
        let branches = f.branches();
        let breaks: Vec<f64> = branches.iter().skip(1).map(|b| b.lo).collect();
        let linear = f.is_piecewise_linear();
        let n = self.n;
        let mut xs = Vec::with_capacity(self.xs.len() * 2);
        let mut ys = Vec::with_capacity(self.xs.len() * 2);
        let mut dirs = Vec::with_capacity(self.dirs.len() * 2);
        xs.push(self.xs[0]);
        ys.push(self.ys[0]);
        for i in 0..self.dirs.len() {
            let (xa, xb) = (self.xs[i], self.xs[i + 1]);
            let (ya, yb) = (self.ys[i], self.ys[i + 1]);
            let dir = self.dirs[i];
            let mut cuts: Vec<(f64, f64)> = Vec::new();
            if dir != Direction::Flat {
                let (lo, hi) = if ya < yb { (ya, yb) } else { (yb, ya) };
                let inside: Vec<f64> = breaks.iter().copied().filter(|&b| b > lo && b < hi).collect();
                for &bp in &inside {
                    let x = if linear || n == 0 {
                        xa + (bp - ya) / (yb - ya) * (xb - xa)
                    } else {
                        solve_level(f, n, bp, xa, xb, ya, yb)?
                    };
                    cuts.push((x.clamp(xa, xb), bp));
                }
                if dir == Direction::Down {
                    cuts.reverse();
                }
            }
            let mut prev_y = ya;
            for (x, y) in cuts.into_iter().chain(std::iter::once((xb, yb))) {
                let d = if dir == Direction::Flat {
                    Direction::Flat
                } else {
                    Direction::compose(dir, branch_dir(&branches, 0.5 * (prev_y + y)))
                };
                xs.push(x);
                ys.push(y);
                dirs.push(d);
                prev_y = y;
            }
            if dirs.len() > SEGMENT_BUDGET {
                return Err(Error::DepthExceeded {
                    depth: n + 1,
                    cap: n,
                });
            }
        }
        let ys: Vec<f64> = ys.into_iter().map(|y| f.eval(y)).collect();
        Ok(merge(
            LapStructure {
                n: n + 1,
                xs,
                ys,
                dirs,
            },
            !linear,
        ))
    }
}

fn branch_dir(branches: &[Branch], y: f64) -> Direction {
    branches
        .iter()
        .find(|b| y >= b.lo && y <= b.hi)
        .map_or(Direction::Up, |b| b.dir)
}

/// Solves `f^n(x) = target` on a piece where `f^n` is monotone between the
/// stored endpoint values.
fn solve_level<M: PiecewiseMonotone + ?Sized>(
    f: &M,
    n: usize,
    target: f64,
    xa: f64,
    xb: f64,
    ya: f64,
    yb: f64,
) -> Result<f64> {
    let g = |x: f64| iterate_unchecked(f, x, n) - target;
    let xtol = 1e-15 * xb.abs().max(1e-300);
    match illinois(g, xa, xb, xtol) {
        Ok(x) => Ok(x),
        // rounding in the stored endpoint values can hide the sign change
        // on very short pieces; interpolation is then as good as anything
        Err(_) => Ok(xa + (target - ya) / (yb - ya) * (xb - xa)),
    }
}

/// Drops zero-length pieces and joins neighbours that carry no structure:
/// equal-valued flats always, same-direction pieces for smooth maps.
fn merge(s: LapStructure, join_monotone: bool) -> LapStructure {
    let mut xs = vec![s.xs[0]];
    let mut ys = vec![s.ys[0]];
    let mut dirs: Vec<Direction> = Vec::with_capacity(s.dirs.len());
    for i in 0..s.dirs.len() {
        let (x, y, d) = (s.xs[i + 1], s.ys[i + 1], s.dirs[i]);
        if x <= *xs.last().unwrap() {
            // zero-length piece: keep the later value
            *ys.last_mut().unwrap() = y;
            continue;
        }
        if let Some(&last) = dirs.last() {
            let same_flat = last == Direction::Flat && d == Direction::Flat && y == *ys.last().unwrap();
            let same_mono = join_monotone && last == d && d != Direction::Flat;
            if same_flat || same_mono {
                *xs.last_mut().unwrap() = x;
                *ys.last_mut().unwrap() = y;
                continue;
            }
        }
        xs.push(x);
        ys.push(y);
        dirs.push(d);
    }
    if dirs.is_empty() {
        xs.push(1.0);
        ys.push(ys[0]);
        dirs.push(Direction::Flat);
    }
    LapStructure {
        n: s.n,
        xs,
        ys,
        dirs,
    }
}

/// `ℓ(f^n)` for `n = 1..=depth`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LapCountSequence {
    pub counts: Vec<u64>,
}

/// `N(f^k)` for `k = 1..=depth`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NSequence {
    pub counts: Vec<u64>,
}

/// Default depth cap for `f`: deeper for piecewise-linear maps.
pub fn depth_cap<M: PiecewiseMonotone + ?Sized>(f: &M) -> usize {
    if f.is_piecewise_linear() {
        PL_DEPTH_CAP
    } else {
        tolerances::LAP_DEPTH_CAP
    }
}

/// Lap structures of `f^1, ..., f^depth`, visited in order.
pub fn for_each_iterate<M, F>(f: &M, depth: usize, mut visit: F) -> Result<()>
where
    M: PiecewiseMonotone + ?Sized,
    F: FnMut(&LapStructure),
{
    let cap = depth_cap(f);
    if depth > cap {
        return Err(Error::DepthExceeded { depth, cap });
    }
    let mut s = LapStructure::identity();
    for _ in 0..depth {
        s = s.advance(f)?;
        visit(&s);
    }
    Ok(())
}

pub fn lap_counts<M: PiecewiseMonotone + ?Sized>(f: &M, depth: usize) -> Result<LapCountSequence> {
    let mut counts = Vec::with_capacity(depth);
    for_each_iterate(f, depth, |s| counts.push(s.lap_count()))?;
    Ok(LapCountSequence { counts })
}

pub fn n_counts<M: PiecewiseMonotone + ?Sized>(f: &M, depth: usize) -> Result<NSequence> {
    let mut counts = Vec::with_capacity(depth);
    for_each_iterate(f, depth, |s| counts.push(s.n_count()))?;
    Ok(NSequence { counts })
}

/// Both sequences from a single pass.
pub fn lap_and_n_counts<M: PiecewiseMonotone + ?Sized>(
    f: &M,
    depth: usize,
) -> Result<(LapCountSequence, NSequence)> {
    let mut laps = Vec::with_capacity(depth);
    let mut ns = Vec::with_capacity(depth);
    for_each_iterate(f, depth, |s| {
        laps.push(s.lap_count());
        ns.push(s.n_count());
    })?;
    Ok((LapCountSequence { counts: laps }, NSequence { counts: ns }))
}
