use super::{Branch, Direction, PiecewiseMonotone};
use crate::error::{Error, Result};

/// The logistic map `x ↦ 4vx(1 - x)` with critical value `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quadratic {
    pub v: f64,
}

impl Quadratic {
    pub fn new(v: f64) -> Result<Quadratic> {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::Domain(format!("quadratic needs v in [0,1], got {v}")));
        }
        Ok(Quadratic { v })
    }
}

impl PiecewiseMonotone for Quadratic {
    fn eval(&self, x: f64) -> f64 {
        (4.0 * self.v * x * (1.0 - x)).clamp(0.0, 1.0)
    }

    fn branches(&self) -> Vec<Branch> {
        let (up, down) = if self.v == 0.0 {
            (Direction::Flat, Direction::Flat)
        } else {
            (Direction::Up, Direction::Down)
        };
        vec![
            Branch {
                lo: 0.0,
                hi: 0.5,
                dir: up,
            },
            Branch {
                lo: 0.5,
                hi: 1.0,
                dir: down,
            },
        ]
    }

    fn critical_points(&self) -> Vec<f64> {
        vec![0.5]
    }
}
