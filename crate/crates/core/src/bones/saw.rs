//! Exact sawtooth bones.
//!
//! On a left bone the orbit `1/3 = x_0, x_1 = w1, ..., x_p = 1/3` either
//! avoids the plateaus after `x_0`, in which case every `x_k` is an affine
//! function of `w1` alone and the bone is vertical, or passes through the
//! right plateau exactly once, after which the orbit restarts at `w2` and
//! the bone is horizontal. Enumerating branch sequences for both cases gives
//! linear constraints in rational arithmetic.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize, Serializer};

use super::{check_period, Bone, ParamPoint, Side};
use crate::error::{Error, Result};
use crate::maps::{Family, PiecewiseMonotone, StuntedSawtooth};
use crate::symbolic::{order_type_of_points, OrderType};

type Q = Rational64;

fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

fn to_f64(x: Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// An exact parameter point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactPoint {
    pub w1: Q,
    pub w2: Q,
}

impl ExactPoint {
    pub fn new(w1: Q, w2: Q) -> ExactPoint {
        ExactPoint { w1, w2 }
    }

    pub fn to_f64(self) -> ParamPoint {
        ParamPoint::new(to_f64(self.w1), to_f64(self.w2))
    }

    /// `(w1, w2) ↦ (1 - w2, 1 - w1)`.
    pub fn mirrored(self) -> ExactPoint {
        let one = Q::from_integer(1);
        ExactPoint::new(one - self.w2, one - self.w1)
    }
}

impl fmt::Display for ExactPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.w1, self.w2)
    }
}

impl Serialize for ExactPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.w1.to_string(), self.w2.to_string()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[String; 2]>::deserialize(d)?;
        let parse = |s: &str| s.parse::<Q>().map_err(serde::de::Error::custom);
        Ok(ExactPoint::new(parse(&a)?, parse(&b)?))
    }
}

/// A closed axis-parallel segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub from: ExactPoint,
    pub to: ExactPoint,
}

impl Segment {
    pub fn is_vertical(&self) -> bool {
        self.from.w1 == self.to.w1
    }

    pub fn is_horizontal(&self) -> bool {
        self.from.w2 == self.to.w2
    }

    fn mirrored(self) -> Segment {
        Segment {
            from: self.from.mirrored(),
            to: self.to.mirrored(),
        }
    }

    fn contains(&self, p: ExactPoint) -> bool {
        let (a, b) = (self.from, self.to);
        let within = |x: Q, u: Q, v: Q| (u.min(v)..=u.max(v)).contains(&x);
        within(p.w1, a.w1, b.w1) && within(p.w2, a.w2, b.w2)
    }

    /// The crossing point of two axis-parallel segments, if any.
    /// Collinear overlaps are reported as `None`.
    pub fn intersect(&self, o: &Segment) -> Option<ExactPoint> {
        let (v, h) = if self.is_vertical() && o.is_horizontal() {
            (self, o)
        } else if self.is_horizontal() && o.is_vertical() {
            (o, self)
        } else {
            return None;
        };
        let p = ExactPoint::new(v.from.w1, h.from.w2);
        (v.contains(p) && h.contains(p)).then_some(p)
    }
}

/// Affine function `a·t + b`.
#[derive(Clone, Copy, Debug)]
struct Affine {
    a: Q,
    b: Q,
}

impl Affine {
    fn var() -> Affine {
        Affine { a: q(1, 1), b: q(0, 1) }
    }

    fn at(self, t: Q) -> Q {
        self.a * t + self.b
    }

    /// One full-sawtooth branch: 0 is `3x`, 1 is `2 - 3x`, 2 is `3x - 2`.
    fn step(self, sym: u8) -> Affine {
        let (m, c) = match sym {
            0 => (3, 0),
            1 => (-3, 2),
            _ => (3, -2),
        };
        Affine {
            a: self.a * m,
            b: self.b * m + c,
        }
    }

    /// Root of `self = y`.
    fn solve(self, y: Q) -> Option<Q> {
        (self.a != q(0, 1)).then(|| (y - self.b) / self.a)
    }
}

/// Bounds on `w1` from constraints `a·w1 + b ≥ 0` (strictness dropped,
/// segments are taken closed).
struct Interval {
    lo: Q,
    hi: Q,
}

impl Interval {
    fn new(lo: Q, hi: Q) -> Interval {
        Interval { lo, hi }
    }

    /// Imposes `f(w1) ≥ 0`.
    fn require(&mut self, f: Affine) {
        let zero = q(0, 1);
        if f.a > zero {
            self.lo = self.lo.max(-f.b / f.a);
        } else if f.a < zero {
            self.hi = self.hi.min(-f.b / f.a);
        } else if f.b < zero {
            self.hi = self.lo - q(1, 1);
        }
    }

    fn nonempty(&self) -> bool {
        self.lo < self.hi
    }
}

fn sequences(len: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..3usize.pow(len as u32)).map(move |code| (0..len).map(|i| ((code / 3usize.pow(i as u32)) % 3) as u8).collect())
}

fn exact_order_type(points: &[Q]) -> Option<OrderType> {
    let xs: Vec<f64> = points.iter().map(|&x| to_f64(x)).collect();
    // distinct rationals at these denominators stay distinct in f64
    let mut sorted = points.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    order_type_of_points(&xs).ok()
}

/// Vertical pieces `(w1, w2_max)`: the orbit avoids both plateaus.
fn vertical_pieces(o: &OrderType) -> Vec<(Q, Q)> {
    let p = o.period();
    let third = q(1, 3);
    let two = q(2, 1);
    let mut out = Vec::new();
    for seq in sequences(p - 1) {
        let mut f = Affine::var();
        let mut maps = vec![f];
        for &s in &seq {
            f = f.step(s);
            maps.push(f);
        }
        let Some(w1) = f.solve(third) else { continue };
        if w1 <= q(0, 1) || w1 > q(1, 1) {
            continue;
        }
        let xs: Vec<Q> = maps[..p - 1].iter().map(|m| m.at(w1)).collect();
        let mut w2_max = w1;
        let mut ok = true;
        for (&x, &s) in xs.iter().zip(&seq) {
            ok &= match s {
                0 => x * 3 < w1,
                1 => x * 3 > two - w1 && x * 3 < two,
                _ => x * 3 > two,
            };
            match s {
                1 => w2_max = w2_max.min(two - x * 3),
                2 => w2_max = w2_max.min(x * 3 - two),
                _ => {}
            }
        }
        if !ok || w2_max <= q(0, 1) {
            continue;
        }
        let mut orbit = vec![third];
        orbit.extend(&xs);
        if exact_order_type(&orbit).as_ref() == Some(o) {
            out.push((w1, w2_max));
        }
    }
    out
}

/// A horizontal piece: `w2` fixed, `w1` in `[lo, hi]`, and the affine
/// position of the orbit point sitting on the right plateau.
struct HorizontalPiece {
    w2: Q,
    lo: Q,
    hi: Q,
    on_plateau: Affine,
}

fn horizontal_pieces(o: &OrderType) -> Vec<HorizontalPiece> {
    let p = o.period();
    let third = q(1, 3);
    let two = q(2, 1);
    let mut out = Vec::new();
    for j in 1..p {
        for suffix in sequences(p - 1 - j) {
            // x_{j+1} = w2, ..., x_p = 1/3; `ys` holds x_{j+1} .. x_{p-1}
            let mut g = Affine::var();
            let mut tail = vec![g];
            for &t in &suffix {
                g = g.step(t);
                tail.push(g);
            }
            let Some(w2) = g.solve(third) else { continue };
            if w2 < q(0, 1) || w2 > q(1, 1) {
                continue;
            }
            let ys: Vec<Q> = tail[..p - 1 - j].iter().map(|m| m.at(w2)).collect();
            let mut base = Interval::new(w2, q(1, 1));
            let mut ok = true;
            for (&y, &t) in ys.iter().zip(&suffix) {
                match t {
                    // y < w1/3
                    0 => base.require(Affine { a: third, b: -y }),
                    // (2 - w1)/3 < y < (2 - w2)/3
                    1 => {
                        base.require(Affine { a: third, b: y - two / 3 });
                        ok &= y * 3 < two - w2;
                    }
                    _ => ok &= y * 3 > two + w2,
                }
            }
            if !ok || !base.nonempty() {
                continue;
            }
            for prefix in sequences(j - 1) {
                // x_1 = w1, ..., x_j on the right plateau
                let mut f = Affine::var();
                let mut head = vec![f];
                for &s in &prefix {
                    f = f.step(s);
                    head.push(f);
                }
                let mut iv = Interval::new(base.lo, base.hi);
                for (m, &s) in head[..j - 1].iter().zip(&prefix) {
                    match s {
                        0 => iv.require(Affine { a: third - m.a, b: -m.b }),
                        1 => {
                            iv.require(Affine { a: m.a + third, b: m.b - two / 3 });
                            iv.require(Affine { a: -m.a, b: (two - w2) / 3 - m.b });
                        }
                        _ => iv.require(Affine { a: m.a, b: m.b - (two + w2) / 3 }),
                    }
                }
                // (2 - w2)/3 ≤ x_j ≤ (2 + w2)/3
                iv.require(Affine { a: f.a, b: f.b - (two - w2) / 3 });
                iv.require(Affine { a: -f.a, b: (two + w2) / 3 - f.b });
                if !iv.nonempty() {
                    continue;
                }
                // split where two orbit points collide; the order type is
                // constant in between
                let mut cuts = vec![iv.lo, iv.hi];
                let mut movers: Vec<Affine> = head.clone();
                movers.push(Affine { a: q(0, 1), b: third });
                                for (a_i, a) in movers.iter().enumerate() {
                    for b in movers.iter().skip(a_i + 1) {
                        let d = Affine { a: a.a - b.a, b: a.b - b.b };
                        if let Some(t) = d.solve(q(0, 1)) {
                            cuts.push(t);
                        }
                    }
                    for &y in &ys {
                        if let Some(t) = a.solve(y) {
                            cuts.push(t);
                        }
                    }
                }
                cuts.retain(|&t| t >= iv.lo && t <= iv.hi);
                cuts.sort();
                cuts.dedup();
                for w in cuts.windows(2) {
                    let mid = (w[0] + w[1]) / 2;
                    let mut orbit = vec![third];
                    orbit.extend(head.iter().map(|m| m.at(mid)));
                    orbit.extend(&ys);
                    if exact_order_type(&orbit).as_ref() == Some(o) {
                        out.push(HorizontalPiece {
                            w2,
                            lo: w[0],
                            hi: w[1],
                            on_plateau: f,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Merges touching or overlapping intervals on the same line.
fn merge_intervals(mut items: Vec<(Q, Q, Q)>) -> Vec<(Q, Q, Q)> {
    items.sort();
    let mut out: Vec<(Q, Q, Q)> = Vec::new();
    for (line, lo, hi) in items {
        match out.last_mut() {
            Some(last) if last.0 == line && lo <= last.2 => last.2 = last.2.max(hi),
            _ => out.push((line, lo, hi)),
        }
    }
    out
}

/// The exact left bone chain and center of order type `o`.
fn left_chain(o: &OrderType) -> Result<(Vec<Segment>, ExactPoint)> {
    let zero = q(0, 1);
    let verticals = merge_intervals(vertical_pieces(o).into_iter().map(|(w1, hi)| (w1, zero, hi)).collect());
    let hpieces = horizontal_pieces(o);
    let horizontals = merge_intervals(hpieces.iter().map(|h| (h.w2, h.lo, h.hi)).collect());
    if verticals.is_empty() && horizontals.is_empty() {
        return Err(Error::Empty);
    }
    let shape_ok = verticals.len() == 2 && horizontals.len() == 1 && {
        let (h, a, b) = horizontals[0];
        verticals[0].0 == a && verticals[1].0 == b && verticals.iter().all(|v| v.2 == h)
    };
    if !shape_ok {
        return Err(Error::Invalid(format!(
            "unexpected sawtooth bone structure for {o}: {} vertical, {} horizontal pieces",
            verticals.len(),
            horizontals.len()
        )));
    }
    let (h, a, b) = horizontals[0];
    let chain = vec![
        Segment {
            from: ExactPoint::new(a, zero),
            to: ExactPoint::new(a, h),
        },
        Segment {
            from: ExactPoint::new(a, h),
            to: ExactPoint::new(b, h),
        },
        Segment {
            from: ExactPoint::new(b, h),
            to: ExactPoint::new(b, zero),
        },
    ];
    // the right critical point joins the orbit when the plateau point is 2/3
    let centers: Vec<ExactPoint> = hpieces
        .iter()
        .filter_map(|hp| {
            let w1 = hp.on_plateau.solve(q(2, 3))?;
            (w1 >= hp.lo && w1 <= hp.hi).then(|| ExactPoint::new(w1, hp.w2))
        })
        .collect();
    let center = *centers.first().ok_or(Error::NoCenter)?;
    Ok((chain, center))
}

/// The exact bone `B_±^saw(o)`: three axis-parallel segments with both
/// endpoints on one edge, and its center point. Right bones are mirror
/// images of left bones of the reversed order type.
///
/// If the case analysis does not produce the expected chain, the bone is
/// rebuilt from a dense residual scan and flagged.
pub fn sawtooth_bone(side: Side, o: &OrderType) -> Result<Bone> {
    let p = o.period();
    check_period(p)?;
    if p > 6 {
        return Err(Error::PeriodTooLarge { period: p, max: 6 });
    }
    let base = match side {
        Side::Left => o.clone(),
        Side::Right => o.reversed(),
    };
    let (mut chain, mut center) = match left_chain(&base) {
        Ok(c) => c,
        Err(Error::Invalid(_)) | Err(Error::NoCenter) => return scanned_bone(side, o),
        Err(e) => return Err(e),
    };
    if side == Side::Right {
        chain = chain.into_iter().map(Segment::mirrored).collect();
        center = center.mirrored();
    }
    let mut geometry = vec![chain[0].from.to_f64()];
    geometry.extend(chain.iter().map(|s| s.to.to_f64()));
    Ok(Bone {
        side,
        order_type: o.clone(),
        family: Family::Saw,
        endpoints: [chain[0].from.to_f64(), chain[2].to.to_f64()],
        center: Some(center.to_f64()),
        geometry,
        segments: Some(chain),
        flagged: false,
    })
}

/// Exact center of a sawtooth bone.
pub fn sawtooth_center(side: Side, o: &OrderType) -> Result<ExactPoint> {
    let base = match side {
        Side::Left => o.clone(),
        Side::Right => o.reversed(),
    };
    let (_, c) = left_chain(&base)?;
    Ok(match side {
        Side::Left => c,
        Side::Right => c.mirrored(),
    })
}

const SCAN_RESOLUTION: usize = 600;

/// Fallback: cells of a grid where the residual changes sign and the
/// approximate critical orbit has order type `o`, ordered along the bone
/// by a greedy nearest-neighbour walk from the edge.
fn scanned_bone(side: Side, o: &OrderType) -> Result<Bone> {
    let p = o.period();
    let m = SCAN_RESOLUTION;
    let h = 1.0 / m as f64;
    let eval = |w1: f64, w2: f64| -> Option<(f64, Option<OrderType>)> {
        let s = StuntedSawtooth::new(crate::maps::CriticalValueVector::new(w1, w2).ok()?).ok()?;
        let c = s.critical_points()[side.index()];
        let orbit = super::critical_orbit(&s, side, p);
        let r = s.eval(orbit[p - 1]) - c;
        Some((r, order_type_of_points(&orbit).ok()))
    };
    let mut cells = Vec::new();
    for i in 0..m {
        for j in 0..=i {
            let (w1, w2) = ((i + 1) as f64 * h, j as f64 * h);
            let corners = [(w1, w2), (w1 - h, w2), (w1, w2 + h.min(w1 - w2))];
            let vals: Vec<_> = corners.iter().filter_map(|&(a, b)| eval(a, b)).collect();
            let pos = vals.iter().any(|v| v.0 > 0.0);
            let neg = vals.iter().any(|v| v.0 < 0.0);
            if pos && neg && vals.iter().any(|v| v.1.as_ref() == Some(o)) {
                cells.push(ParamPoint::new(w1 - h / 2.0, w2 + h / 4.0));
            }
        }
    }
    if cells.is_empty() {
        return Err(Error::Empty);
    }
    let edge = side.edge();
    cells.sort_by(|a, b| edge.distance(*a).total_cmp(&edge.distance(*b)));
    let mut geometry = vec![cells.remove(0)];
    while !cells.is_empty() {
        let last = *geometry.last().unwrap();
        let (k, _) = cells
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.dist(last).total_cmp(&b.1.dist(last)))
            .unwrap();
        geometry.push(cells.remove(k));
    }
    let endpoints = [geometry[0], *geometry.last().unwrap()];
    Ok(Bone {
        side,
        order_type: o.clone(),
        family: Family::Saw,
        geometry,
        segments: None,
        endpoints,
        center: None,
        flagged: true,
    })
}

/// Exact crossings of two segment chains, deduplicated.
pub fn chain_intersections(a: &[Segment], b: &[Segment]) -> Vec<ExactPoint> {
    let mut out: Vec<ExactPoint> = a
        .iter()
        .flat_map(|s| b.iter().filter_map(move |t| s.intersect(t)))
        .collect();
    out.sort_by(|x, y| x.w1.cmp(&y.w1).then(x.w2.cmp(&y.w2)));
    out.dedup();
    out
}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.from, self.to).cmp(&(other.from, other.to))
    }
}
