//! Marching triangles and level-band connectivity.
//!
//! Each grid cell is split along its rising diagonal, so triangle edges
//! never cross the line `v1 = v2` and the triangulated region is exactly
//! the part of the triangle inside the window.

use std::collections::HashMap;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use super::IsentropeGrid;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polyline {
    pub points: Vec<(f64, f64)>,
    pub closed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContourSet {
    pub levels: Vec<f64>,
    /// `lines[k]` are the polylines of `levels[k]`.
    pub lines: Vec<Vec<Polyline>>,
}

impl ContourSet {
    /// Levels with at least one polyline.
    pub fn visible_levels(&self) -> usize {
        self.lines.iter().filter(|l| !l.is_empty()).count()
    }
}

type Node = (usize, usize);

/// The two triangles of cell `(i, j)`, each present only if all three
/// corners are sampled.
fn triangles(g: &IsentropeGrid, i: usize, j: usize) -> impl Iterator<Item = [Node; 3]> + '_ {
    let lower = [(i, j), (i + 1, j), (i + 1, j + 1)];
    let upper = [(i, j), (i + 1, j + 1), (i, j + 1)];
    [lower, upper]
        .into_iter()
        .filter(move |t| t.iter().all(|&(a, b)| g.get(a, b).is_some()))
}

fn edge_key(a: Node, b: Node) -> (Node, Node) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Isentropes at `1 + k·delta_s < 3`, `k ≥ 1`, by linear interpolation on
/// the triangulated grid.
pub fn contours(g: &IsentropeGrid, delta_s: f64) -> Result<ContourSet> {
    if !(delta_s >= 2.0 * g.tol) || !delta_s.is_finite() {
        return Err(Error::Invalid(format!(
            "contour interval {delta_s} is below twice the grid tolerance {}",
            g.tol
        )));
    }
    let mut levels = Vec::new();
    let mut k = 1;
    loop {
        let l = 1.0 + k as f64 * delta_s;
        if l >= 3.0 - 1e-12 {
            break;
        }
        levels.push(l);
        k += 1;
    }
    let lines = levels.iter().map(|&l| level_lines(g, l)).collect();
    Ok(ContourSet { levels, lines })
}

fn level_lines(g: &IsentropeGrid, level: f64) -> Vec<Polyline> {
    let s = |n: Node| g.s(n.0, n.1).unwrap();
    let point = |a: Node, b: Node| {
        let (sa, sb) = (s(a), s(b));
        let u = (level - sa) / (sb - sa);
        let (pa, pb) = (g.node(a.0, a.1), g.node(b.0, b.1));
        (pa.0 + u * (pb.0 - pa.0), pa.1 + u * (pb.1 - pa.1))
    };
    // segments as pairs of crossed edges
    let mut segs: Vec<[(Node, Node); 2]> = Vec::new();
    for j in 0..g.m {
        for i in 0..g.m {
            for t in triangles(g, i, j) {
                let crossed: Vec<(Node, Node)> = [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])]
                    .into_iter()
                    .filter(|&(a, b)| (s(a) >= level) != (s(b) >= level))
                    .map(|(a, b)| edge_key(a, b))
                    .collect();
                if crossed.len() == 2 {
                    segs.push([crossed[0], crossed[1]]);
                }
            }
        }
    }
    let mut at: HashMap<(Node, Node), Vec<usize>> = HashMap::new();
    for (k, sg) in segs.iter().enumerate() {
        for e in sg {
            at.entry(*e).or_default().push(k);
        }
    }
    let mut used = vec![false; segs.len()];
    let mut out = Vec::new();
    // start at open ends first so open chains come out whole
    let mut order: Vec<usize> = (0..segs.len()).collect();
    order.sort_by_key(|&k| !segs[k].iter().any(|e| at[e].len() == 1));
    for start in order {
        if used[start] {
            continue;
        }
        used[start] = true;
        let first = if at[&segs[start][1]].len() == 1 { 1 } else { 0 };
        let mut edges = vec![segs[start][first], segs[start][1 - first]];
        let mut cur = start;
        loop {
            let tail = *edges.last().unwrap();
            let next = at[&tail].iter().copied().find(|&k| k != cur && !used[k]);
            match next {
                Some(k) => {
                    used[k] = true;
                    let other = if segs[k][0] == tail { segs[k][1] } else { segs[k][0] };
                    edges.push(other);
                    cur = k;
                }
                None => break,
            }
        }
        let closed = edges.len() > 2 && edges.first() == edges.last();
        out.push(Polyline {
            points: edges.iter().map(|&(a, b)| point(a, b)).collect(),
            closed,
        });
    }
    out
}

/// Number of connected components of the band of grid triangles whose
/// corner range meets `[s0 - eps, s0 + eps]`; triangles are adjacent when
/// they share an edge.
pub fn band_connectivity(g: &IsentropeGrid, s0: f64, eps: f64) -> usize {
    let mut index: HashMap<[Node; 3], usize> = HashMap::new();
    let mut tris = Vec::new();
    for j in 0..g.m {
        for i in 0..g.m {
            for t in triangles(g, i, j) {
                let vals = t.map(|n| g.s(n.0, n.1).unwrap());
                let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
                let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                if lo <= s0 + eps && hi >= s0 - eps {
                    index.insert(t, tris.len());
                    tris.push(t);
                }
            }
        }
    }
    let mut uf = UnionFind::<usize>::new(tris.len());
    let mut by_edge: HashMap<(Node, Node), usize> = HashMap::new();
    for (k, t) in tris.iter().enumerate() {
        for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
            match by_edge.entry(edge_key(a, b)) {
                std::collections::hash_map::Entry::Occupied(o) => {
                    uf.union(*o.get(), k);
                }
                std::collections::hash_map::Entry::Vacant(v) => {
                    v.insert(k);
                }
            }
        }
    }
    let mut roots: Vec<usize> = (0..tris.len()).map(|k| uf.find(k)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}
