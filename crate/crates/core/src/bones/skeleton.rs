//! The `n`-skeleton: all bones of period `2..=n` with their endpoints,
//! left/right crossings and centers as kneading-labelled vertices.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::newton::newton2;
use super::saw::{chain_intersections, sawtooth_center};
use super::trace::{find_center, residual_fn, trace_cubic_bone};
use super::{check_period, edge_bone_endpoints, sawtooth_bone, Bone, Edge, ParamPoint, Side};
use crate::error::{Error, Result};
use crate::maps::{Family, PiecewiseMonotone};
use crate::symbolic::{kneading_data, order_types, OrderType};
use crate::tolerances;

/// Points closer than this are one vertex.
const MERGE_DIST: f64 = 1e-7;
/// Tolerance for recognising a repeated orbit point.
const ORBIT_TOL: f64 = 1e-7;
/// Largest `n` accepted by [`skeleton`].
pub const SKELETON_MAX: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Endpoint,
    Crossing,
    Center,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vertex {
    pub point: ParamPoint,
    pub kind: VertexKind,
    /// Kneading data at depth `3n` in single-line form.
    pub label: String,
    /// Set when a critical orbit was not seen to repeat within the
    /// labelling depth.
    pub flagged: bool,
    /// Indices into [`SkeletonGraph::bones`] of the bones through it.
    pub bones: Vec<usize>,
}

/// A piece of one bone between consecutive vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkeletonEdge {
    pub bone: usize,
    pub from: usize,
    pub to: usize,
    pub path: Vec<ParamPoint>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkeletonGraph {
    pub n: usize,
    pub family: Family,
    pub bones: Vec<Bone>,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<SkeletonEdge>,
}

impl SkeletonGraph {
    pub fn count(&self, kind: VertexKind) -> usize {
        self.vertices.iter().filter(|v| v.kind == kind).count()
    }

    /// Vertex labels, sorted.
    pub fn labels(&self) -> Vec<String> {
        let mut l: Vec<String> = self.vertices.iter().map(|v| v.label.clone()).collect();
        l.sort();
        l
    }

    pub fn to_json(&self) -> String {
        let vertices: Vec<_> = self
            .vertices
            .iter()
            .map(|v| {
                serde_json::json!({
                    "point": [v.point.v1, v.point.v2],
                    "kind": v.kind,
                    "label": v.label,
                    "flagged": v.flagged,
                    "bones": v.bones,
                })
            })
            .collect();
        let bones: Vec<_> = self
            .bones
            .iter()
            .map(|b| {
                serde_json::json!({
                    "side": b.side,
                    "period": b.period(),
                    "order_type": b.order_type.one_line(),
                    "endpoints": b.endpoints.iter().map(|p| [p.v1, p.v2]).collect::<Vec<_>>(),
                    "center": b.center.map(|c| [c.v1, c.v2]),
                    "flagged": b.flagged,
                })
            })
            .collect();
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|e| serde_json::json!({ "bone": e.bone, "from": e.from, "to": e.to }))
            .collect();
        let rec = serde_json::json!({
            "family": self.family,
            "n": self.n,
            "bones": bones,
            "vertices": vertices,
            "edges": edges,
        });
        serde_json::to_string_pretty(&rec).expect("json values serialize")
    }
}

/// The center of a bone: exact for sawtooth chains, Newton-refined from
/// the traced polyline for cubic bones.
pub fn bone_center(bone: &Bone) -> Result<ParamPoint> {
    match bone.family {
        Family::Saw if bone.segments.is_some() => Ok(sawtooth_center(bone.side, &bone.order_type)?.to_f64()),
        Family::Cubic => find_center(&bone.geometry, bone.side, bone.period()).ok_or(Error::NoCenter),
        _ => bone.center.ok_or(Error::NoCenter),
    }
}

/// Crossing points of two bones, sorted by `(v1, v2)`.
pub fn intersections(a: &Bone, b: &Bone) -> Vec<ParamPoint> {
    if let (Some(sa), Some(sb)) = (&a.segments, &b.segments) {
        return chain_intersections(sa, sb).into_iter().map(|p| p.to_f64()).collect();
    }
    let mut out = Vec::new();
    for wa in a.geometry.windows(2) {
        for wb in b.geometry.windows(2) {
            if let Some(x) = segment_crossing(wa[0], wa[1], wb[0], wb[1]) {
                let refined = if a.family == Family::Cubic {
                    let ra = residual_fn(a.side, a.period());
                    let rb = residual_fn(b.side, b.period());
                    newton2(&ra, &rb, x, 1e-3 * tolerances::CENTER, 40).unwrap_or(x)
                } else {
                    x
                };
                if out.iter().all(|q: &ParamPoint| q.dist(refined) > MERGE_DIST) {
                    out.push(refined);
                }
            }
        }
    }
    out.sort_by(|p, q| p.v1.total_cmp(&q.v1).then(p.v2.total_cmp(&q.v2)));
    out
}

fn segment_crossing(p0: ParamPoint, p1: ParamPoint, q0: ParamPoint, q1: ParamPoint) -> Option<ParamPoint> {
    let r = (p1.v1 - p0.v1, p1.v2 - p0.v2);
    let s = (q1.v1 - q0.v1, q1.v2 - q0.v2);
    let den = r.0 * s.1 - r.1 * s.0;
    if den == 0.0 {
        return None;
    }
    let d = (q0.v1 - p0.v1, q0.v2 - p0.v2);
    let t = (d.0 * s.1 - d.1 * s.0) / den;
    let u = (d.0 * r.1 - d.1 * r.0) / den;
    ((0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&u)).then(|| ParamPoint::new(p0.v1 + t * r.0, p0.v2 + t * r.1))
}

/// Every bone of period `2..=n` in `family`, in a fixed order: by side,
/// then period, then order type.
fn all_bones(family: Family, n: usize) -> Result<Vec<Bone>> {
    let mut jobs: Vec<(Side, OrderType)> = Vec::new();
    for side in [Side::Left, Side::Right] {
        for p in 2..=n {
            for o in order_types(p)? {
                jobs.push((side, o));
            }
        }
    }
    match family {
        Family::Saw => {
            let built: Vec<Result<Bone>> = jobs.par_iter().map(|(s, o)| sawtooth_bone(*s, o)).collect();
            let mut out = Vec::new();
            for b in built {
                match b {
                    Ok(b) => out.push(b),
                    Err(Error::Empty) => {}
                    Err(e) => return Err(e),
                }
            }
            Ok(out)
        }
        Family::Cubic => {
            let mut ends: BTreeMap<(Side, OrderType), Vec<ParamPoint>> = BTreeMap::new();
            for edge in [Edge::Bottom, Edge::Right] {
                for e in edge_bone_endpoints(family, edge, n)? {
                    ends.entry((edge.side(), e.order_type)).or_default().push(e.point);
                }
            }
            let seeded: Vec<_> = jobs
                .into_iter()
                .filter_map(|k| ends.get(&k).map(|pts| (k, pts.clone())))
                .collect();
            seeded
                .par_iter()
                .map(|((side, o), pts)| {
                    if pts.len() != 2 {
                        return Err(Error::Invalid(format!(
                            "{} bone {} has {} edge endpoints",
                            side,
                            o,
                            pts.len()
                        )));
                    }
                    let b = trace_cubic_bone(pts[0], *side, o, 1e-3)?;
                    if b.endpoints[1].dist(pts[1]) > 1e-6 {
                        return Err(Error::Invalid(format!("{side} bone {o} did not close on its endpoint")));
                    }
                    Ok(b)
                })
                .collect()
        }
        Family::Quad => Err(Error::Invalid("bones are defined for bimodal families".into())),
    }
}

/// Whether the orbit of `x` repeats a point within `steps` iterations.
fn eventually_periodic<M: PiecewiseMonotone + ?Sized>(f: &M, x: f64, steps: usize) -> bool {
    let mut orbit = vec![x];
    for _ in 0..steps {
        let y = f.eval(*orbit.last().unwrap());
        if orbit.iter().any(|&z| (z - y).abs() < ORBIT_TOL) {
            return true;
        }
        orbit.push(y);
    }
    false
}

fn label(family: Family, v: ParamPoint, depth: usize) -> (String, bool) {
    match family.map_at(v.v1, v.v2) {
        Ok(f) => {
            let pcf = f.critical_points().iter().all(|&c| eventually_periodic(&f, c, depth));
            (kneading_data(&f, depth).label(), !pcf)
        }
        Err(_) => (String::new(), true),
    }
}

/// Arclength position of `x` along a polyline (projection onto the
/// nearest segment).
fn position(g: &[ParamPoint], x: ParamPoint) -> f64 {
    let mut best = (f64::INFINITY, 0.0);
    let mut acc = 0.0;
    for w in g.windows(2) {
        let d = (w[1].v1 - w[0].v1, w[1].v2 - w[0].v2);
        let len2 = d.0 * d.0 + d.1 * d.1;
        let u = if len2 > 0.0 {
            (((x.v1 - w[0].v1) * d.0 + (x.v2 - w[0].v2) * d.1) / len2).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let q = ParamPoint::new(w[0].v1 + u * d.0, w[0].v2 + u * d.1);
        if q.dist(x) < best.0 {
            best = (q.dist(x), acc + u * len2.sqrt());
        }
        acc += len2.sqrt();
    }
    best.1
}

/// The polyline piece of `g` between arclength positions `a < b`.
fn piece(g: &[ParamPoint], a: f64, b: f64, from: ParamPoint, to: ParamPoint) -> Vec<ParamPoint> {
    let mut out = vec![from];
    let mut acc = 0.0;
    for w in g.windows(2) {
        acc += w[0].dist(w[1]);
        if acc > a && acc < b {
            out.push(w[1]);
        }
    }
    out.push(to);
    out
}

/// The `n`-skeleton of `family`, `2 ≤ n ≤ 4`.
pub fn skeleton(family: Family, n: usize) -> Result<SkeletonGraph> {
    check_period(n)?;
    if n > SKELETON_MAX {
        return Err(Error::PeriodTooLarge {
            period: n,
            max: SKELETON_MAX,
        });
    }
    let bones = all_bones(family, n)?;
    let mut points: Vec<(ParamPoint, VertexKind, Vec<usize>)> = Vec::new();
    let mut add = |p: ParamPoint, kind: VertexKind, on: &[usize]| {
        if let Some(v) = points.iter_mut().find(|v| v.0.dist(p) < MERGE_DIST) {
            v.1 = v.1.max(kind);
            for &b in on {
                if !v.2.contains(&b) {
                    v.2.push(b);
                }
            }
        } else {
            points.push((p, kind, on.to_vec()));
        }
    };
    for (i, b) in bones.iter().enumerate() {
        for e in b.endpoints {
            add(e, VertexKind::Endpoint, &[i]);
        }
    }
    for (i, a) in bones.iter().enumerate().filter(|(_, b)| b.side == Side::Left) {
        for (j, b) in bones.iter().enumerate().filter(|(_, b)| b.side == Side::Right) {
            for x in intersections(a, b) {
                let is_center = a.order_type == b.order_type && a.center.is_some_and(|c| c.dist(x) < 1e-6);
                let kind = if is_center { VertexKind::Center } else { VertexKind::Crossing };
                add(x, kind, &[i, j]);
            }
        }
    }
    points.sort_by(|a, b| a.0.v1.total_cmp(&b.0.v1).then(a.0.v2.total_cmp(&b.0.v2)));
    let depth = 3 * n;
    let vertices: Vec<Vertex> = points
        .into_par_iter()
        .map(|(point, kind, mut on)| {
            on.sort_unstable();
            let (label, flagged) = label(family, point, depth);
            Vertex {
                point,
                kind,
                label,
                flagged,
                bones: on,
            }
        })
        .collect();
    let mut edges = Vec::new();
    for (bi, b) in bones.iter().enumerate() {
        let mut on: Vec<(f64, usize)> = vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| v.bones.contains(&bi))
            .map(|(k, v)| (position(&b.geometry, v.point), k))
            .collect();
        on.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in on.windows(2) {
            edges.push(SkeletonEdge {
                bone: bi,
                from: w[0].1,
                to: w[1].1,
                path: piece(&b.geometry, w[0].0, w[1].0, vertices[w[0].1].point, vertices[w[1].1].point),
            });
        }
    }
    Ok(SkeletonGraph {
        n,
        family,
        bones,
        vertices,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sawtooth_two_skeleton() {
        let g = skeleton(Family::Saw, 2).unwrap();
        assert_eq!(g.bones.len(), 2);
        assert_eq!(g.count(VertexKind::Endpoint), 4);
        assert_eq!(g.count(VertexKind::Crossing) + g.count(VertexKind::Center), 2);
        assert_eq!(g.count(VertexKind::Center), 1);
        // each bone is cut into three pieces by its two crossings
        assert_eq!(g.edges.len(), 6);
        assert!(g.vertices.iter().all(|v| !v.flagged));
    }

    #[test]
    fn period_one_is_rejected() {
        assert!(skeleton(Family::Saw, 1).is_err());
        assert!(skeleton(Family::Saw, 5).is_err());
    }

    #[test]
    fn sawtooth_center_matches_chain() {
        let o = OrderType::parse("2,1").unwrap();
        let b = sawtooth_bone(Side::Left, &o).unwrap();
        let c = bone_center(&b).unwrap();
        assert!((c.v1 - 2.0 / 3.0).abs() < 1e-15 && (c.v2 - 1.0 / 3.0).abs() < 1e-15);
    }
}
