use super::{Branch, CriticalValueVector, Direction, PiecewiseMonotone};
use crate::error::{Error, Result};
use crate::numeric::roots::{bisect, bisect_newton};
use crate::numeric::DDouble;
use crate::symbolic::itinerary::Symbol;
use crate::tolerances;

/// `F(ξ) = 3ξ² − 2ξ³`: critical points 0 and 1, both fixed.
#[inline]
pub(crate) fn unit_cubic(xi: f64) -> f64 {
    xi * xi * (3.0 - 2.0 * xi)
}

#[inline]
fn unit_cubic_deriv(xi: f64) -> f64 {
    6.0 * xi * (1.0 - xi)
}

/// The cubic `f(x) = c·F(ax + b) + d` of shape `+-+` fixing 0 and 1.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicMap {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    c1: f64,
    c2: f64,
    v: CriticalValueVector,
}

/// Solves `F(ξ) = target` on a branch where `F` is monotone, growing the
/// far end of the bracket geometrically until it straddles the root.
fn solve_unit_cubic(target: f64, near: f64, outward: f64) -> Result<f64> {
    let g = |xi: f64| unit_cubic(xi) - target;
    let g_near = g(near);
    if g_near == 0.0 {
        return Ok(near);
    }
    let mut span = 1.0;
    let mut far = near + outward * span;
    let mut tries = 0;
    while (g(far) < 0.0) == (g_near < 0.0) {
        span *= 2.0;
        far = near + outward * span;
        tries += 1;
        if tries > 200 || !far.is_finite() {
            return Err(Error::Convergence(format!(
                "could not bracket F(ξ) = {target}"
            )));
        }
    }
    let (lo, hi) = if near < far { (near, far) } else { (far, near) };
    bisect_newton(g, unit_cubic_deriv, lo, hi, 1e-16 * hi.abs().max(1.0))
}

impl CubicMap {
    /// The unique boundary-fixing cubic with critical values `v`.
    pub fn from_critical_values(v: CriticalValueVector) -> Result<CubicMap> {
        let (v1, v2) = (v.v1, v.v2);
        if !(v1 > v2) {
            return Err(Error::Domain(format!(
                "cubic construction needs v1 > v2, got ({v1}, {v2})"
            )));
        }
        let d = v1;
        let c = v2 - v1;
        // f(0) = 0  ⇔  F(b) = v1 / (v1 - v2), on the branch b ≤ -1/2
        let b = solve_unit_cubic(v1 / (v1 - v2), -0.5, -1.0)?;
        // f(1) = 1  ⇔  F(a + b) = (1 - v1) / (v2 - v1), on the branch a + b ≥ 3/2
        let apb = solve_unit_cubic((1.0 - v1) / (v2 - v1), 1.5, 1.0)?;
        let a = apb - b;
        if !(a > 0.0) {
            return Err(Error::Convergence(format!("non-positive scale a = {a}")));
        }
        Ok(CubicMap {
            a,
            b,
            c,
            d,
            c1: -b / a,
            c2: (1.0 - b) / a,
            v,
        })
    }

    pub fn critical_values(&self) -> CriticalValueVector {
        self.v
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    pub fn derivative(&self, x: f64) -> f64 {
        self.c * self.a * unit_cubic_deriv(self.a * x + self.b)
    }

    fn eval_dd(&self, x: DDouble) -> DDouble {
        let xi = x * self.a + self.b;
        let f = xi * xi * (DDouble::new(3.0) - xi * 2.0);
        f * self.c + self.d
    }

    fn crits_dd(&self) -> [DDouble; 2] {
        let c1 = DDouble::div_f64(-self.b, self.a);
        let c2 = (DDouble::new(1.0) - DDouble::new(self.b)).div_by(self.a);
        [c1, c2]
    }

    fn classify_dd(x: DDouble, crits: &[DDouble; 2]) -> Symbol {
        for (k, c) in crits.iter().enumerate() {
            if (x - *c).abs().to_f64() <= tolerances::CRIT {
                return Symbol::Crit(k as u8);
            }
        }
        let lap = crits.iter().take_while(|c| x > **c).count();
        Symbol::Lap(lap as u8)
    }

    fn orbit_symbols_dd(&self, x0: DDouble, depth: usize) -> Vec<Symbol> {
        let crits = self.crits_dd();
        let mut out = Vec::with_capacity(depth);
        let mut x = x0;
        for _ in 0..depth {
            let s = Self::classify_dd(x, &crits);
            out.push(s);
            if s.is_critical() {
                break;
            }
            x = self.eval_dd(x);
        }
        out
    }
}

impl PiecewiseMonotone for CubicMap {
    fn eval(&self, x: f64) -> f64 {
        (self.c * unit_cubic(self.a * x + self.b) + self.d).clamp(0.0, 1.0)
    }

    fn branches(&self) -> Vec<Branch> {
        vec![
            Branch {
                lo: 0.0,
                hi: self.c1,
                dir: Direction::Up,
            },
            Branch {
                lo: self.c1,
                hi: self.c2,
                dir: Direction::Down,
            },
            Branch {
                lo: self.c2,
                hi: 1.0,
                dir: Direction::Up,
            },
        ]
    }

    fn critical_points(&self) -> Vec<f64> {
        vec![self.c1, self.c2]
    }

    fn orbit_symbols(&self, x: f64, depth: usize) -> Vec<Symbol> {
        self.orbit_symbols_dd(DDouble::new(x), depth)
    }

    fn critical_symbols(&self, i: usize, depth: usize) -> Vec<Symbol> {
        let c = self.crits_dd()[i];
        self.orbit_symbols_dd(self.eval_dd(c), depth)
    }
}

/// The monotone limit `λ(x − t)³ + v` on the edge `v1 = v2`.
#[derive(Clone, Debug, PartialEq)]
pub struct DegenerateCubic {
    pub t: f64,
    pub lambda: f64,
    pub v: f64,
}

impl DegenerateCubic {
    pub fn new(v: f64) -> Result<DegenerateCubic> {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::Domain(format!("degenerate cubic needs v in [0,1], got {v}")));
        }
        let ratio = |t: f64| {
            let t3 = t * t * t;
            let s3 = (1.0 - t).powi(3);
            t3 / (s3 + t3)
        };
        let t = if v == 0.0 {
            0.0
        } else if v == 1.0 {
            1.0
        } else {
            bisect(|t| ratio(t) - v, 0.0, 1.0, 1e-16)?
        };
        let lambda = 1.0 / ((1.0 - t).powi(3) + t.powi(3));
        Ok(DegenerateCubic { t, lambda, v })
    }
}

impl PiecewiseMonotone for DegenerateCubic {
    fn eval(&self, x: f64) -> f64 {
        (self.lambda * (x - self.t).powi(3) + self.v).clamp(0.0, 1.0)
    }

    fn branches(&self) -> Vec<Branch> {
        vec![Branch {
            lo: 0.0,
            hi: 1.0,
            dir: Direction::Up,
        }]
    }

    fn critical_points(&self) -> Vec<f64> {
        Vec::new()
    }
}
