use super::{Branch, Direction, PiecewiseMonotone};
use crate::error::{Error, Result};

/// A continuous piecewise-linear map given by its graph vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseLinear {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl PiecewiseLinear {
    /// Vertices `(x_i, y_i)` with `x` strictly increasing from 0 to 1 and
    /// every `y_i` in `[0, 1]`.
    pub fn new(nodes: &[(f64, f64)]) -> Result<PiecewiseLinear> {
        if nodes.len() < 2 || nodes[0].0 != 0.0 || nodes[nodes.len() - 1].0 != 1.0 {
            return Err(Error::Invalid("nodes must run from x = 0 to x = 1".into()));
        }
        if nodes.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return Err(Error::Invalid("node abscissae must increase strictly".into()));
        }
        if nodes.iter().any(|&(_, y)| !(0.0..=1.0).contains(&y)) {
            return Err(Error::Invalid("node values must lie in [0, 1]".into()));
        }
        Ok(PiecewiseLinear {
            xs: nodes.iter().map(|n| n.0).collect(),
            ys: nodes.iter().map(|n| n.1).collect(),
        })
    }

    /// A `+-+` map fixing 0 and 1 whose three pieces all have `|slope| = σ`,
    /// for `1 < σ ≤ 3`. Critical values are `(σ+1)/4` and `(3-σ)/4`.
    pub fn constant_slope_bimodal(sigma: f64) -> Result<PiecewiseLinear> {
        if !(sigma > 1.0 && sigma <= 3.0) {
            return Err(Error::Domain(format!("slope {sigma} outside (1, 3]")));
        }
        let v1 = (sigma + 1.0) / 4.0;
        let v2 = 1.0 - v1;
        let c1 = v1 / sigma;
        let c2 = c1 + (v1 - v2) / sigma;
        PiecewiseLinear::new(&[(0.0, 0.0), (c1, v1), (c2, v2), (1.0, 1.0)])
    }

    /// The tent map with peak `σ/2` at `1/2`, for `0 < σ ≤ 2`.
    pub fn tent(sigma: f64) -> Result<PiecewiseLinear> {
        if !(sigma > 0.0 && sigma <= 2.0) {
            return Err(Error::Domain(format!("tent slope {sigma} outside (0, 2]")));
        }
        PiecewiseLinear::new(&[(0.0, 0.0), (0.5, sigma / 2.0), (1.0, 0.0)])
    }

    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.ys.iter().copied())
    }
}

fn direction(y0: f64, y1: f64) -> Direction {
    if y1 > y0 {
        Direction::Up
    } else if y1 < y0 {
        Direction::Down
    } else {
        Direction::Flat
    }
}

impl PiecewiseMonotone for PiecewiseLinear {
    fn eval(&self, x: f64) -> f64 {
        let i = self.xs.partition_point(|&t| t <= x).clamp(1, self.xs.len() - 1);
        let (x0, x1) = (self.xs[i - 1], self.xs[i]);
        let (y0, y1) = (self.ys[i - 1], self.ys[i]);
        (y0 + (y1 - y0) * (x - x0) / (x1 - x0)).clamp(0.0, 1.0)
    }

    /// One branch per linear piece, so compositions stay linear between
    /// breakpoints.
    fn branches(&self) -> Vec<Branch> {
        (1..self.xs.len())
            .map(|i| Branch {
                lo: self.xs[i - 1],
                hi: self.xs[i],
                dir: direction(self.ys[i - 1], self.ys[i]),
            })
            .collect()
    }

    /// Vertices where the non-flat direction reverses; a flat run between
    /// two reversing pieces contributes its midpoint.
    fn critical_points(&self) -> Vec<f64> {
        let bs = self.branches();
        let mut out = Vec::new();
        let mut last: Option<(Direction, f64)> = None;
        let mut flat_start: Option<f64> = None;
        for b in &bs {
            if b.dir == Direction::Flat {
                flat_start.get_or_insert(b.lo);
                continue;
            }
            if let Some((d, end)) = last {
                if d != b.dir {
                    out.push(flat_start.map_or(end, |s| 0.5 * (s + b.lo)));
                }
            }
            flat_start = None;
            last = Some((b.dir, b.hi));
        }
        out
    }

    fn is_piecewise_linear(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_slope_pieces() {
        for sigma in [1.5, 2.0, 2.5, 3.0] {
            let f = PiecewiseLinear::constant_slope_bimodal(sigma).unwrap();
            let nodes: Vec<_> = f.nodes().collect();
            for w in nodes.windows(2) {
                let slope = (w[1].1 - w[0].1) / (w[1].0 - w[0].0);
                assert!((slope.abs() - sigma).abs() < 1e-12, "σ = {sigma}");
            }
            assert_eq!(f.critical_points().len(), 2);
        }
        assert!(PiecewiseLinear::constant_slope_bimodal(1.0).is_err());
    }

    #[test]
    fn tent_evaluation() {
        let t = PiecewiseLinear::tent(2.0).unwrap();
        assert_eq!(t.eval(0.25), 0.5);
        assert_eq!(t.eval(0.75), 0.5);
        assert_eq!(t.critical_points(), vec![0.5]);
    }

    #[test]
    fn flat_turning_point_uses_midpoint() {
        let f = PiecewiseLinear::new(&[(0.0, 0.0), (0.25, 1.0), (0.5, 1.0), (1.0, 0.0)]).unwrap();
        assert_eq!(f.critical_points(), vec![0.375]);
    }

    #[test]
    fn rejects_bad_nodes() {
        assert!(PiecewiseLinear::new(&[(0.0, 0.0)]).is_err());
        assert!(PiecewiseLinear::new(&[(0.0, 0.0), (0.5, 2.0), (1.0, 1.0)]).is_err());
        assert!(PiecewiseLinear::new(&[(0.0, 0.0), (0.5, 0.5), (0.5, 0.6), (1.0, 1.0)]).is_err());
    }
}
