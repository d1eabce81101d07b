mod common;

use bimodal::bones::{edge_bone_endpoints, Edge};
use bimodal::maps::{iterate, Family, NormalFormCubic, PiecewiseMonotone};
use bimodal::numeric::roots::bisect;
use bimodal::symbolic::{
    classify_fixed_point, order_type_of_orbit, order_type_of_points, sawtooth_cycles, FixedPointKind,
};
use common::{cubic, random_v, rng, saw};

#[test]
fn parity_rule_matches_local_monotonicity() {
    let mut r = rng(41);
    let mut checked = 0;
    for _ in 0..40 {
        let (w1, w2) = random_v(&mut r, 0.0);
        let f = saw(w1, w2);
        let (l0, l1) = f.left_plateau();
        let (r0, r1) = f.right_plateau();
        for p in 1..=6 {
            for c in sawtooth_cycles(p).unwrap() {
                let xs: Vec<f64> = c.points.iter().map(|q| *q.numer() as f64 / *q.denom() as f64).collect();
                let off = xs.iter().all(|&x| !((l0..=l1).contains(&x) || (r0..=r1).contains(&x)));
                if !off {
                    continue;
                }
                for &x in &xs {
                    let kind = classify_fixed_point(&f, p, x).unwrap();
                    // slope of f^p at x by a symmetric difference
                    let h = 1e-9;
                    let (lo, hi) = ((x - h).max(0.0), (x + h).min(1.0));
                    let slope = iterate(&f, hi, p).unwrap() - iterate(&f, lo, p).unwrap();
                    let expect = if slope < 0.0 { FixedPointKind::Negative } else { FixedPointKind::Positive };
                    assert_eq!(kind, expect, "w = ({w1}, {w2}) cycle {:?}", c.symbols);
                    assert_eq!(kind == FixedPointKind::Negative, c.is_negative());
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 1000, "only {checked} periodic points checked");
}

fn normal_form_order_type(f: &bimodal::maps::CubicMap, orbit: &[f64]) -> bimodal::symbolic::OrderType {
    let n = NormalFormCubic::from_cubic(f).unwrap();
    let mut y = n.to_normal_coords(orbit[0]);
    let ys: Vec<f64> = (0..orbit.len())
        .map(|_| {
            let out = y;
            y = n.g(y);
            out
        })
        .collect();
    order_type_of_points(&ys).unwrap()
}

#[test]
fn order_types_survive_the_normal_form_conjugacy() {
    // superstable orbits at bone endpoints on the bottom edge
    for e in edge_bone_endpoints(Family::Cubic, Edge::Bottom, 4).unwrap() {
        let f = cubic(e.point.v1, e.point.v2);
        let mut x = f.c1();
        let orbit: Vec<f64> = (0..e.period)
            .map(|_| {
                let out = x;
                x = f.eval(x);
                out
            })
            .collect();
        let o = order_type_of_orbit(&orbit, &f).unwrap();
        assert_eq!(o, e.order_type);
        assert_eq!(normal_form_order_type(&f, &orbit), o);
    }
    // repelling period-2 and period-3 orbits of random maps
    let mut r = rng(42);
    let mut found = 0;
    for _ in 0..50 {
        let (v1, v2) = random_v(&mut r, 0.3);
        let f = cubic(v1, v2);
        for p in 2..=3 {
            let g = |x: f64| iterate(&f, x, p).unwrap() - x;
            let n = 4000;
            for k in 1..n - 1 {
                let (a, b) = (k as f64 / n as f64, (k + 1) as f64 / n as f64);
                if (g(a) < 0.0) == (g(b) < 0.0) {
                    continue;
                }
                let x0 = bisect(g, a, b, 1e-15).unwrap();
                let orbit: Vec<f64> = (0..p).map(|i| iterate(&f, x0, i).unwrap()).collect();
                if let Ok(o) = order_type_of_orbit(&orbit, &f) {
                    assert_eq!(normal_form_order_type(&f, &orbit), o, "v = ({v1}, {v2})");
                    found += 1;
                }
            }
        }
    }
    assert!(found > 50, "only {found} orbits found");
}
