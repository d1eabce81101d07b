mod common;

use bimodal::maps::{
    sawtooth_eval_rational, CriticalValueVector, CubicMap, Direction, PiecewiseMonotone,
};
use common::{cubic, random_v, rng, saw};
use num_rational::Rational64;
use proptest::prelude::*;
use rand::Rng;

fn unit_cubic(xi: f64) -> f64 {
    xi * xi * (3.0 - 2.0 * xi)
}

#[test]
fn construction_round_trip() {
    let mut r = rng(31);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let (v1, v2) = random_v(&mut r, 1e-6);
        let f = cubic(v1, v2);
        let (c1, c2) = (f.c1(), f.c2());
        assert!(0.0 < c1 && c1 < c2 && c2 < 1.0, "v = ({v1}, {v2})");
        let e = (f.eval(c1) - v1).abs().max((f.eval(c2) - v2).abs());
        let ends = f.eval(0.0).abs().max((f.eval(1.0) - 1.0).abs());
        worst = worst.max(e).max(ends);
        assert!(e < 1e-10 && ends < 1e-10, "v = ({v1}, {v2}): {e:e} {ends:e}");
        assert!(f.derivative(c1).abs() < 1e-9 && f.derivative(c2).abs() < 1e-9);
    }
    eprintln!("worst construction error {worst:e}");
}

#[test]
fn no_second_cubic_nearby() {
    let mut r = rng(32);
    for _ in 0..500 {
        let (v1, v2) = random_v(&mut r, 1e-2);
        let f = cubic(v1, v2);
        let da = if r.gen() { 1e-3 } else { -1e-3 };
        let db = if r.gen() { 1e-3 } else { -1e-3 };
        let (a, b) = (f.a + da, f.b + db);
        // f(0) = 0 and f(1) = 1 fix c and d once a and b are chosen
        let c = 1.0 / (unit_cubic(a + b) - unit_cubic(b));
        let d = -c * unit_cubic(b);
        // the critical values sit at ξ = 0 and ξ = 1
        let (w1, w2) = (d, c + d);
        let moved = (w1 - v1).abs().max((w2 - v2).abs());
        assert!(moved > 1e-6, "v = ({v1}, {v2}) survives a perturbation: {moved:e}");
    }
}

#[test]
fn derivative_sign_pattern() {
    let mut r = rng(33);
    for _ in 0..200 {
        let (v1, v2) = random_v(&mut r, 1e-3);
        let f = cubic(v1, v2);
        let mut pattern = String::new();
        for k in 0..1000 {
            let x = (k as f64 + 0.5) / 1000.0;
            let d = f.derivative(x);
            if d == 0.0 {
                continue;
            }
            let s = if d > 0.0 { '+' } else { '-' };
            if !pattern.ends_with(s) {
                pattern.push(s);
            }
        }
        assert_eq!(pattern, "+-+", "v = ({v1}, {v2})");
        assert_eq!(f.shape(), "+-+");
    }
}

#[test]
fn sawtooth_is_continuous_at_plateau_edges() {
    let q = Rational64::new;
    let two = q(2, 1);
    let mut r = rng(34);
    for _ in 0..200 {
        let d: i64 = r.gen_range(2..500);
        let (a, b) = (r.gen_range(0..=d), r.gen_range(0..=d));
        let (w1, w2) = if a >= b { (q(a, d), q(b, d)) } else { (q(b, d), q(a, d)) };
        // pieces left to right: 3x, w1, 2 - 3x, w2, 3x - 2
        let pieces: [Box<dyn Fn(Rational64) -> Rational64>; 5] = [
            Box::new(|x| x * 3),
            Box::new(move |_| w1),
            Box::new(move |x| two - x * 3),
            Box::new(move |_| w2),
            Box::new(move |x| x * 3 - two),
        ];
        let edges = [w1 / 3, (two - w1) / 3, (two - w2) / 3, (two + w2) / 3];
        for (k, &e) in edges.iter().enumerate() {
            assert_eq!(pieces[k](e), pieces[k + 1](e), "edge {k} of w = ({w1}, {w2})");
            assert_eq!(sawtooth_eval_rational(w1, w2, e), pieces[k](e));
        }
    }
}

#[test]
fn sawtooth_float_view_matches_rationals() {
    let f = saw(0.75, 0.25);
    for k in 0..=96 {
        let x = Rational64::new(k, 96);
        let exact = sawtooth_eval_rational(Rational64::new(3, 4), Rational64::new(1, 4), x);
        let y = f.eval(k as f64 / 96.0);
        assert!((y - *exact.numer() as f64 / *exact.denom() as f64).abs() < 1e-15);
    }
    let dirs: Vec<Direction> = f.branches().iter().map(|b| b.dir).collect();
    assert_eq!(
        dirs,
        [Direction::Up, Direction::Flat, Direction::Down, Direction::Flat, Direction::Up]
    );
}

#[test]
fn degenerate_vectors_are_rejected_by_the_cubic() {
    let v = CriticalValueVector::new(0.5, 0.5).unwrap();
    assert!(CubicMap::from_critical_values(v).is_err());
    assert!(CriticalValueVector::new(0.2, 0.3).is_err());
    assert!(CriticalValueVector::new(1.1, 0.3).is_err());
}

proptest! {
    #[test]
    fn cubic_maps_the_interval_into_itself(a in 0.0f64..1.0, b in 0.0f64..1.0, x in 0.0f64..=1.0) {
        let (v1, v2) = if a > b { (a, b) } else { (b, a) };
        prop_assume!(v1 - v2 > 1e-9);
        let y = cubic(v1, v2).eval(x);
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&y));
    }
}
