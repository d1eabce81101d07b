//! Bones: parameter loci on which one critical point is periodic with a
//! given order type, in the cubic and stunted sawtooth families.
//!
//! The left bone `B_-(o)` asks the left critical point to be periodic, the
//! dual right bone `B_+(o)` the right one. Sawtooth bones are built exactly
//! from rational segment chains; cubic bones are traced numerically from
//! their edge endpoints.

mod newton;
pub mod render;
pub mod saw;
pub mod skeleton;
pub mod trace;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::{iterate_unchecked, Family, PiecewiseMonotone};
use crate::numeric::roots::bisect;
use crate::symbolic::{order_type_of_points, OrderType};
use crate::tolerances;

pub use saw::{sawtooth_bone, ExactPoint, Segment};
pub use skeleton::{bone_center, intersections, skeleton, SkeletonEdge, SkeletonGraph, Vertex, VertexKind};
pub use trace::{trace_cubic_bone, TraceOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    /// Index of the periodic critical point.
    pub fn index(self) -> usize {
        match self {
            Side::Left => 0,
            Side::Right => 1,
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    /// The edge holding the endpoints of bones on this side.
    pub fn edge(self) -> Edge {
        match self {
            Side::Left => Edge::Bottom,
            Side::Right => Edge::Right,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Side> {
        match s {
            "left" | "-" => Ok(Side::Left),
            "right" | "+" => Ok(Side::Right),
            other => Err(Error::Invalid(format!("unknown side '{other}'"))),
        }
    }
}

/// The two edges of the triangle where bone endpoints live: `v2 = 0`
/// (left critical point periodic) and `v1 = 1` (right one periodic).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Edge {
    Bottom,
    Right,
}

impl Edge {
    /// Point at edge coordinate `t`, running left to right along the bottom
    /// and bottom to top along the right edge.
    pub fn point(self, t: f64) -> ParamPoint {
        match self {
            Edge::Bottom => ParamPoint::new(t, 0.0),
            Edge::Right => ParamPoint::new(1.0, t),
        }
    }

    pub fn coordinate(self, p: ParamPoint) -> f64 {
        match self {
            Edge::Bottom => p.v1,
            Edge::Right => p.v2,
        }
    }

    pub fn side(self) -> Side {
        match self {
            Edge::Bottom => Side::Left,
            Edge::Right => Side::Right,
        }
    }

    /// Distance from `p` to the edge line.
    pub fn distance(self, p: ParamPoint) -> f64 {
        match self {
            Edge::Bottom => p.v2.abs(),
            Edge::Right => (1.0 - p.v1).abs(),
        }
    }
}

impl std::str::FromStr for Edge {
    type Err = Error;
    fn from_str(s: &str) -> Result<Edge> {
        match s {
            "bottom" => Ok(Edge::Bottom),
            "right" => Ok(Edge::Right),
            other => Err(Error::Invalid(format!("unknown edge '{other}'"))),
        }
    }
}

/// A parameter point `(v1, v2)`; not necessarily inside the triangle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamPoint {
    pub v1: f64,
    pub v2: f64,
}

impl ParamPoint {
    pub fn new(v1: f64, v2: f64) -> ParamPoint {
        ParamPoint { v1, v2 }
    }

    pub fn dist(self, o: ParamPoint) -> f64 {
        (self.v1 - o.v1).hypot(self.v2 - o.v2)
    }

    pub fn in_triangle(self) -> bool {
        self.v1 <= 1.0 && self.v2 >= 0.0 && self.v2 <= self.v1
    }

    /// The image under the conjugation `x ↦ 1 - x`, which swaps the
    /// critical values: `(v1, v2) ↦ (1 - v2, 1 - v1)`.
    pub fn mirrored(self) -> ParamPoint {
        ParamPoint::new(1.0 - self.v2, 1.0 - self.v1)
    }
}

/// A bone with its geometry.
///
/// `geometry` is an ordered polyline from one edge endpoint to the other.
/// Sawtooth bones also carry their exact segment chain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bone {
    pub side: Side,
    pub order_type: OrderType,
    pub family: Family,
    pub geometry: Vec<ParamPoint>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub segments: Option<Vec<Segment>>,
    pub endpoints: [ParamPoint; 2],
    pub center: Option<ParamPoint>,
    /// Set when the construction fell back to a less exact method.
    #[serde(default)]
    pub flagged: bool,
}

impl Bone {
    pub fn period(&self) -> usize {
        self.order_type.period()
    }

    /// JSON record: side, period, one-line permutation, polyline,
    /// endpoints and center.
    pub fn to_json(&self) -> String {
        let rec = serde_json::json!({
            "family": self.family,
            "side": self.side,
            "period": self.period(),
            "order_type": self.order_type.one_line(),
            "polyline": self.geometry.iter().map(|p| [p.v1, p.v2]).collect::<Vec<_>>(),
            "segments": self.segments,
            "endpoints": self.endpoints.iter().map(|p| [p.v1, p.v2]).collect::<Vec<_>>(),
            "center": self.center.map(|c| [c.v1, c.v2]),
            "flagged": self.flagged,
        });
        serde_json::to_string_pretty(&rec).expect("json values serialize")
    }

    /// Total polyline length.
    pub fn length(&self) -> f64 {
        self.geometry.windows(2).map(|w| w[0].dist(w[1])).sum()
    }

    /// `n` points spaced evenly by arclength along the geometry, ends
    /// included.
    pub fn sample(&self, n: usize) -> Vec<ParamPoint> {
        let total = self.length();
        let g = &self.geometry;
        if n < 2 || g.len() < 2 || total == 0.0 {
            return g.iter().copied().take(n.max(1)).collect();
        }
        let mut out = Vec::with_capacity(n);
        let mut seg = 0;
        let mut acc = 0.0;
        for k in 0..n {
            let target = total * k as f64 / (n - 1) as f64;
            while seg + 1 < g.len() - 1 && acc + g[seg].dist(g[seg + 1]) < target {
                acc += g[seg].dist(g[seg + 1]);
                seg += 1;
            }
            let len = g[seg].dist(g[seg + 1]);
            let u = if len > 0.0 { ((target - acc) / len).clamp(0.0, 1.0) } else { 0.0 };
            out.push(ParamPoint::new(
                g[seg].v1 + u * (g[seg + 1].v1 - g[seg].v1),
                g[seg].v2 + u * (g[seg + 1].v2 - g[seg].v2),
            ));
        }
        out
    }
}

pub(crate) fn check_period(p: usize) -> Result<()> {
    if p < 2 {
        return Err(Error::Invalid("bones need period p ≥ 2".into()));
    }
    Ok(())
}

/// `f^p(c_side) - c_side` for a concrete map.
pub fn map_residual<M: PiecewiseMonotone + ?Sized>(f: &M, side: Side, p: usize) -> Result<f64> {
    let crits = f.critical_points();
    let c = *crits
        .get(side.index())
        .ok_or_else(|| Error::Domain("map has no such critical point".into()))?;
    Ok(iterate_unchecked(f, c, p) - c)
}

/// `f_v^p(c_side) - c_side` for the member of `family` at `v`.
pub fn critical_period_residual(family: Family, v: ParamPoint, side: Side, p: usize) -> Result<f64> {
    check_period(p)?;
    if family == Family::Quad {
        return Err(Error::Invalid("bones are defined for bimodal families".into()));
    }
    let f = family.map_at(v.v1, v.v2)?;
    if family == Family::Cubic && v.v1 == v.v2 {
        return Err(Error::Degenerate);
    }
    map_residual(&f, side, p)
}

/// The orbit `c, f(c), ..., f^{p-1}(c)` of a critical point.
pub(crate) fn critical_orbit<M: PiecewiseMonotone + ?Sized>(f: &M, side: Side, p: usize) -> Vec<f64> {
    let mut x = f.critical_points()[side.index()];
    (0..p)
        .map(|_| {
            let y = x;
            x = f.eval(x);
            y
        })
        .collect()
}

/// A bone endpoint found on an edge.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeEndpoint {
    pub point: ParamPoint,
    pub period: usize,
    pub order_type: OrderType,
}

/// Samples per unit length used to bracket residual sign changes.
const EDGE_SAMPLES: usize = 20_000;

/// Both endpoints of every bone of period `2..=p_max` meeting `edge`,
/// sorted along the edge.
pub fn edge_bone_endpoints(family: Family, edge: Edge, p_max: usize) -> Result<Vec<EdgeEndpoint>> {
    check_period(p_max)?;
    if p_max > 6 {
        return Err(Error::PeriodTooLarge { period: p_max, max: 6 });
    }
    if family == Family::Quad {
        return Err(Error::Invalid("bones are defined for bimodal families".into()));
    }
    let side = edge.side();
    // keep clear of the degenerate corner where the edge meets v1 = v2
    let (t0, t1) = match edge {
        Edge::Bottom => (1e-4, 1.0),
        Edge::Right => (0.0, 1.0 - 1e-4),
    };
    let res = |t: f64, p: usize| -> f64 {
        let q = edge.point(t);
        family
            .map_at(q.v1, q.v2)
            .ok()
            .and_then(|f| map_residual(&f, side, p).ok())
            .unwrap_or(f64::NAN)
    };
    let ts: Vec<f64> = (0..=EDGE_SAMPLES)
        .map(|k| t0 + (t1 - t0) * k as f64 / EDGE_SAMPLES as f64)
        .collect();
    let mut out = Vec::new();
    for p in 2..=p_max {
        let vals: Vec<f64> = ts.iter().map(|&t| res(t, p)).collect();
        for k in 0..EDGE_SAMPLES {
            let (a, b) = (vals[k], vals[k + 1]);
            if !(a.is_finite() && b.is_finite()) || (a < 0.0) == (b < 0.0) {
                continue;
            }
            let t = bisect(|t| res(t, p), ts[k], ts[k + 1], 1e-15)?;
            let point = edge.point(t);
            let f = family.map_at(point.v1, point.v2)?;
            let r = map_residual(&f, side, p)?;
            // a sign change without a small residual is a jump, not a root
            if r.abs() > 1e3 * tolerances::BONE {
                continue;
            }
            let c = f.critical_points()[side.index()];
            let lower = (1..p)
                .filter(|q| p % q == 0)
                .any(|q| (iterate_unchecked(&f, c, q) - c).abs() < 1e-6);
            if lower {
                continue;
            }
            let orbit = critical_orbit(&f, side, p);
            if let Ok(order_type) = order_type_of_points(&orbit) {
                out.push(EdgeEndpoint {
                    point,
                    period: p,
                    order_type,
                });
            }
        }
    }
    out.sort_by(|a, b| edge.coordinate(a.point).total_cmp(&edge.coordinate(b.point)));
    Ok(out)
}
