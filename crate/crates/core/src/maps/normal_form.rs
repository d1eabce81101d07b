use serde::{Deserialize, Serialize};

use super::{Branch, CubicMap, Direction, PiecewiseMonotone};
use crate::error::{Error, Result};

/// Parameters `(a, b)` of `x ↦ x³ - 3a²x + b`, critical points `±a`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalFormPoint {
    pub a: f64,
    pub b: f64,
}

/// A normal-form cubic together with the affine conjugacy `L(x) = αx + β`
/// that carries `[0, 1]` onto its invariant interval.
///
/// As a map on `[0, 1]` it evaluates `L⁻¹ ∘ g ∘ L` with `g` the normal form,
/// which is an evaluation path independent of the `c·F(ax+b)+d` one.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalFormCubic {
    pub point: NormalFormPoint,
    pub alpha: f64,
    pub beta: f64,
}

/// The normal form of `f`, with `α > 0` so the conjugacy preserves
/// orientation.
pub fn to_normal_form(f: &CubicMap) -> Result<NormalFormPoint> {
    NormalFormCubic::from_cubic(f).map(|n| n.point)
}

impl NormalFormCubic {
    pub fn from_cubic(f: &CubicMap) -> Result<NormalFormCubic> {
        let (c1, c2) = (f.c1(), f.c2());
        if !(c2 - c1 > 0.0) {
            return Err(Error::Degenerate);
        }
        // Leading coefficient of f is -2ca³; conjugating by L scales it by
        // 1/α², so α is its square root.
        let lead = -2.0 * f.c * f.a.powi(3);
        if !(lead > 0.0) {
            return Err(Error::Degenerate);
        }
        let alpha = lead.sqrt();
        let mid = 0.5 * (c1 + c2);
        let beta = -alpha * mid;
        let a = alpha * 0.5 * (c2 - c1);
        let b = alpha * f.eval(mid) + beta;
        Ok(NormalFormCubic {
            point: NormalFormPoint { a, b },
            alpha,
            beta,
        })
    }

    /// `g(y) = y³ - 3a²y + b`.
    pub fn g(&self, y: f64) -> f64 {
        let NormalFormPoint { a, b } = self.point;
        y * y * y - 3.0 * a * a * y + b
    }

    pub fn to_normal_coords(&self, x: f64) -> f64 {
        self.alpha * x + self.beta
    }

    pub fn from_normal_coords(&self, y: f64) -> f64 {
        (y - self.beta) / self.alpha
    }
}

impl PiecewiseMonotone for NormalFormCubic {
    fn eval(&self, x: f64) -> f64 {
        self.from_normal_coords(self.g(self.to_normal_coords(x)))
            .clamp(0.0, 1.0)
    }

    fn branches(&self) -> Vec<Branch> {
        let c = self.critical_points();
        vec![
            Branch {
                lo: 0.0,
                hi: c[0],
                dir: Direction::Up,
            },
            Branch {
                lo: c[0],
                hi: c[1],
                dir: Direction::Down,
            },
            Branch {
                lo: c[1],
                hi: 1.0,
                dir: Direction::Up,
            },
        ]
    }

    fn critical_points(&self) -> Vec<f64> {
        let a = self.point.a;
        vec![self.from_normal_coords(-a), self.from_normal_coords(a)]
    }
}
