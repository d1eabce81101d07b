//! Pseudo-arclength continuation of cubic bones.

use serde::{Deserialize, Serialize};

use super::newton::{gradient, newton2};
use super::{check_period, critical_orbit, Bone, Edge, ParamPoint, Side};
use crate::error::{Error, Result};
use crate::maps::{iterate_unchecked, CriticalValueVector, CubicMap, Family, PiecewiseMonotone};
use crate::numeric::roots::bisect;
use crate::symbolic::{order_type_of_points, OrderType};
use crate::tolerances;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceOptions {
    /// Initial predictor step in parameter space.
    pub step: f64,
    pub min_step: f64,
    pub max_step: f64,
    /// Hard cap on the number of accepted points.
    pub max_points: usize,
}

impl Default for TraceOptions {
    fn default() -> Self {
        TraceOptions {
            step: 1e-3,
            min_step: 1e-10,
            max_step: 1e-1,
            max_points: 200_000,
        }
    }
}

/// The cubic at `v`, if `v` is a nondegenerate point of the triangle.
pub(crate) fn cubic_at(v: ParamPoint) -> Option<CubicMap> {
    if !(v.v1 <= 1.0 && v.v2 >= 0.0 && v.v1 > v.v2) {
        return None;
    }
    CubicMap::from_critical_values(CriticalValueVector::new(v.v1, v.v2).ok()?).ok()
}

pub(crate) fn residual_fn(side: Side, p: usize) -> impl Fn(ParamPoint) -> Option<f64> {
    move |v| {
        let f = cubic_at(v)?;
        let c = f.critical_points()[side.index()];
        Some(iterate_unchecked(&f, c, p) - c)
    }
}

/// `f^q(c_from) - c_to`.
pub(crate) fn hit_fn(from: Side, to: Side, q: usize) -> impl Fn(ParamPoint) -> Option<f64> {
    move |v| {
        let f = cubic_at(v)?;
        let c = f.critical_points();
        Some(iterate_unchecked(&f, c[from.index()], q) - c[to.index()])
    }
}

fn order_type_at(v: ParamPoint, side: Side, p: usize) -> Option<OrderType> {
    let f = cubic_at(v)?;
    order_type_of_points(&critical_orbit(&f, side, p)).ok()
}

fn unit_tangent(g: (f64, f64)) -> Option<(f64, f64)> {
    let n = g.0.hypot(g.1);
    (n > 0.0 && n.is_finite()).then(|| (-g.1 / n, g.0 / n))
}

/// Moves `z` onto the zero set along the gradient.
fn correct<F>(r: &F, mut z: ParamPoint) -> Option<ParamPoint>
where
    F: Fn(ParamPoint) -> Option<f64>,
{
    for _ in 0..12 {
        let val = r(z)?;
        if val.abs() < 0.1 * tolerances::BONE {
            return Some(z);
        }
        let g = gradient(r, z)?;
        let n2 = g.0 * g.0 + g.1 * g.1;
        if n2 == 0.0 || !n2.is_finite() {
            return None;
        }
        z = ParamPoint::new(z.v1 - val * g.0 / n2, z.v2 - val * g.1 / n2);
    }
    let val = r(z)?;
    (val.abs() < tolerances::BONE).then_some(z)
}

/// The root of the residual on `edge` closest to coordinate `t0`.
fn edge_root<F>(r: &F, edge: Edge, t0: f64) -> Option<ParamPoint>
where
    F: Fn(ParamPoint) -> Option<f64>,
{
    let rr = |t: f64| r(edge.point(t)).unwrap_or(f64::NAN);
    let mut d = 1e-9;
    while d < 0.05 {
        for (a, b) in [(t0 - d, t0), (t0, t0 + d)] {
            let (fa, fb) = (rr(a), rr(b));
            if fa.is_finite() && fb.is_finite() && (fa < 0.0) != (fb < 0.0) {
                let t = bisect(rr, a, b, 1e-15).ok()?;
                return Some(edge.point(t));
            }
        }
        d *= 2.0;
    }
    None
}

/// Traces `B_±^cub(o)` from a seed on its edge until the arc returns to
/// the edge, recording the center point on the way.
pub fn trace_cubic_bone(seed: ParamPoint, side: Side, o: &OrderType, step: f64) -> Result<Bone> {
    trace_cubic_bone_with(
        seed,
        side,
        o,
        TraceOptions {
            step,
            ..TraceOptions::default()
        },
    )
}

pub fn trace_cubic_bone_with(seed: ParamPoint, side: Side, o: &OrderType, opts: TraceOptions) -> Result<Bone> {
    let p = o.period();
    check_period(p)?;
    let r = residual_fn(side, p);
    let edge = side.edge();
    let inward = match edge {
        Edge::Bottom => (0.0, 1.0),
        Edge::Right => (-1.0, 0.0),
    };
    let collapse = |v: ParamPoint| Error::StepCollapse { v1: v.v1, v2: v.v2 };
    let start = correct(&r, seed).ok_or_else(|| collapse(seed))?;
    match order_type_at(start, side, p) {
        Some(t) if &t == o => {}
        found => {
            return Err(Error::OrderTypeChanged {
                expected: o.perm().to_vec(),
                found: found.map(|t| t.perm().to_vec()).unwrap_or_default(),
            })
        }
    }
    let mut t = unit_tangent(gradient(&r, start).ok_or_else(|| collapse(start))?).ok_or_else(|| collapse(start))?;
    if t.0 * inward.0 + t.1 * inward.1 < 0.0 {
        t = (-t.0, -t.1);
    }
    let mut pts = vec![start];
    let mut h = opts.step;
    let mut travelled = 0.0;
    let end = loop {
        if pts.len() >= opts.max_points {
            return Err(collapse(*pts.last().unwrap()));
        }
        let x = *pts.last().unwrap();
        let y = ParamPoint::new(x.v1 + h * t.0, x.v2 + h * t.1);
        if !y.in_triangle() && travelled > 10.0 * opts.step {
            if edge.distance(y) <= h && (y.v2 < 0.0 || y.v1 > 1.0) {
                // crossing the endpoint edge: finish on it
                let s = match edge {
                    Edge::Bottom => x.v2 / (x.v2 - y.v2),
                    Edge::Right => (1.0 - x.v1) / (y.v1 - x.v1),
                };
                let hit = ParamPoint::new(x.v1 + s * (y.v1 - x.v1), x.v2 + s * (y.v2 - x.v2));
                if let Some(e) = edge_root(&r, edge, edge.coordinate(hit)) {
                    if e.dist(x) <= 2.0 * h + 1e-9 {
                        break e;
                    }
                }
            }
            h *= 0.5;
            if h < opts.min_step {
                return Err(collapse(x));
            }
            continue;
        }
        let accepted = correct(&r, y).and_then(|z| {
            if z.dist(y) > 0.5 * h || !z.in_triangle() {
                return None;
            }
            let mut tz = unit_tangent(gradient(&r, z)?)?;
            if tz.0 * t.0 + tz.1 * t.1 < 0.0 {
                tz = (-tz.0, -tz.1);
            }
            if tz.0 * t.0 + tz.1 * t.1 < 0.95 {
                return None;
            }
            (order_type_at(z, side, p).as_ref() == Some(o)).then_some((z, tz))
        });
        match accepted {
            Some((z, tz)) => {
                travelled += z.dist(x);
                pts.push(z);
                t = tz;
                h = (h * 1.5).min(opts.max_step);
            }
            None => {
                h *= 0.5;
                if h < opts.min_step {
                    let found = order_type_at(y, side, p);
                    if found.is_some() && found.as_ref() != Some(o) && h < 1e3 * opts.min_step {
                        return Err(Error::OrderTypeChanged {
                            expected: o.perm().to_vec(),
                            found: found.map(|t| t.perm().to_vec()).unwrap_or_default(),
                        });
                    }
                    return Err(collapse(x));
                }
            }
        }
    };
    if order_type_at(end, side, p).as_ref() != Some(o) {
        return Err(Error::OrderTypeChanged {
            expected: o.perm().to_vec(),
            found: order_type_at(end, side, p).map(|t| t.perm().to_vec()).unwrap_or_default(),
        });
    }
    pts.push(end);
    let center = find_center(&pts, side, p);
    Ok(Bone {
        side,
        order_type: o.clone(),
        family: Family::Cubic,
        endpoints: [pts[0], end],
        geometry: pts,
        segments: None,
        center,
        flagged: false,
    })
}

/// Locates the point where the other critical point joins the orbit:
/// a sign change of `f^q(c_side) - c_other` along the polyline, refined by
/// Newton on the pair of common-orbit equations.
pub(crate) fn find_center(pts: &[ParamPoint], side: Side, p: usize) -> Option<ParamPoint> {
    let other = side.other();
    let hits = |v: ParamPoint| -> Option<Vec<f64>> { (1..p).map(|q| hit_fn(side, other, q)(v)).collect() };
    let mut prev = hits(pts[0])?;
    for w in pts.windows(2) {
        let cur = match hits(w[1]) {
            Some(c) => c,
            None => continue,
        };
        for q in 1..p {
            let (a, b) = (prev[q - 1], cur[q - 1]);
            if (a < 0.0) != (b < 0.0) {
                let s = a / (a - b);
                let seed = ParamPoint::new(w[0].v1 + s * (w[1].v1 - w[0].v1), w[0].v2 + s * (w[1].v2 - w[0].v2));
                if let Some(c) = refine_center(seed, side, p, q) {
                    return Some(c);
                }
            }
        }
        prev = cur;
    }
    None
}

/// Newton on `f^q(c_side) = c_other`, `f^(p-q)(c_other) = c_side`.
pub(crate) fn refine_center(seed: ParamPoint, side: Side, p: usize, q: usize) -> Option<ParamPoint> {
    let other = side.other();
    let f = hit_fn(side, other, q);
    let g = hit_fn(other, side, p - q);
    newton2(&f, &g, seed, 1e-3 * tolerances::CENTER, 40)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bones::edge_bone_endpoints;

    #[test]
    fn period_two_left_bone_closes_on_the_bottom_edge() {
        let o = OrderType::parse("2,1").unwrap();
        let ends = edge_bone_endpoints(Family::Cubic, Edge::Bottom, 2).unwrap();
        assert_eq!(ends.len(), 2);
        let b = trace_cubic_bone(ends[0].point, Side::Left, &o, 1e-3).unwrap();
        assert!(b.endpoints[1].dist(ends[1].point) < 1e-8, "{:?} vs {:?}", b.endpoints[1], ends[1].point);
        let r = residual_fn(Side::Left, 2);
        assert!(b.geometry.iter().all(|&v| r(v).unwrap().abs() < tolerances::BONE));
        let c = b.center.expect("center");
        // both critical points on one 2-cycle: f(c1) = c2 and f(c2) = c1
        let f = cubic_at(c).unwrap();
        let cr = f.critical_points();
        assert!((f.eval(cr[0]) - cr[1]).abs() < tolerances::CENTER);
        assert!((f.eval(cr[1]) - cr[0]).abs() < tolerances::CENTER);
    }
}
