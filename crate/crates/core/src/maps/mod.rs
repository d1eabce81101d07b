//! Interval map families behind one piecewise-monotone interface.
//!
//! Every map acts on `[0, 1]`. The families are the boundary-fixing cubic
//! `f_v` of shape `+-+` (and its monotone limit on the edge `v1 = v2`), the
//! logistic family `4vx(1-x)`, the stunted sawtooth `S_w`, and general
//! piecewise-linear maps used as fixtures.

mod cubic;
mod linear;
mod normal_form;
mod params;
mod quadratic;
mod sawtooth;

use std::fmt;

pub use cubic::{CubicMap, DegenerateCubic};
pub use linear::PiecewiseLinear;
pub use normal_form::{to_normal_form, NormalFormCubic, NormalFormPoint};
pub use params::CriticalValueVector;
pub use quadratic::Quadratic;
pub use sawtooth::{eval_rational as sawtooth_eval_rational, StuntedSawtooth};

use crate::error::{Error, Result};
use crate::symbolic::itinerary::{plain_orbit_symbols, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Up,
    Down,
    Flat,
}

impl Direction {
    /// Direction of `outer ∘ inner` on a piece where both are monotone.
    pub fn compose(inner: Direction, outer: Direction) -> Direction {
        use Direction::*;
        match (inner, outer) {
            (Flat, _) | (_, Flat) => Flat,
            (Up, d) => d,
            (Down, Up) => Down,
            (Down, Down) => Up,
        }
    }

    pub fn sign(self) -> char {
        match self {
            Direction::Up => '+',
            Direction::Down => '-',
            Direction::Flat => '0',
        }
    }
}

/// A maximal piece `[lo, hi]` on which the map is monotone in one direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Branch {
    pub lo: f64,
    pub hi: f64,
    pub dir: Direction,
}

/// A continuous piecewise-monotone self-map of `[0, 1]`.
pub trait PiecewiseMonotone: Send + Sync + fmt::Debug {
    /// Value at `x`; callers guarantee `x ∈ [0, 1]`.
    fn eval(&self, x: f64) -> f64;

    /// Branch decomposition covering `[0, 1]`, in increasing order.
    fn branches(&self) -> Vec<Branch>;

    /// Points used as "critical" for kneading and partitions: turning points,
    /// or plateau centers for stunted sawtooth maps.
    fn critical_points(&self) -> Vec<f64>;

    /// True when every branch is affine, so compositions can be split by
    /// linear interpolation instead of root finding.
    fn is_piecewise_linear(&self) -> bool {
        false
    }

    /// Symbols of `x, f(x), ...` up to `depth` entries, stopping after the
    /// first critical hit. Maps override this to use exact or extended
    /// arithmetic.
    fn orbit_symbols(&self, x: f64, depth: usize) -> Vec<Symbol> {
        plain_orbit_symbols(self, x, depth)
    }

    /// Symbols of `f^n(c_i)` for `n = 1..=depth`, stopping after the first
    /// critical hit.
    fn critical_symbols(&self, i: usize, depth: usize) -> Vec<Symbol> {
        let c = self.critical_points()[i];
        self.orbit_symbols(self.eval(c), depth)
    }

    /// Sign sequence of the non-flat branches, e.g. `+-+`.
    fn shape(&self) -> String {
        let mut out = String::new();
        for b in self.branches() {
            if b.dir == Direction::Flat {
                continue;
            }
            let c = b.dir.sign();
            if !out.ends_with(c) {
                out.push(c);
            }
        }
        out
    }

    /// Direction of the branch containing `x` (interior points of flat
    /// pieces report `Flat`).
    fn direction_at(&self, x: f64) -> Direction {
        let bs = self.branches();
        for b in &bs {
            if x > b.lo && x < b.hi {
                return b.dir;
            }
        }
        bs.iter()
            .find(|b| x >= b.lo && x <= b.hi)
            .map_or(Direction::Up, |b| b.dir)
    }
}

/// `f(x)` with the domain checked.
pub fn evaluate<M: PiecewiseMonotone + ?Sized>(f: &M, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("x = {x} outside [0, 1]")));
    }
    Ok(f.eval(x))
}

/// `f^n(x)`; `n = 0` is the identity.
pub fn iterate<M: PiecewiseMonotone + ?Sized>(f: &M, x: f64, n: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("x = {x} outside [0, 1]")));
    }
    Ok(iterate_unchecked(f, x, n))
}

#[inline]
pub(crate) fn iterate_unchecked<M: PiecewiseMonotone + ?Sized>(f: &M, x: f64, n: usize) -> f64 {
    let mut y = x;
    for _ in 0..n {
        y = f.eval(y);
    }
    y
}

/// Parameter families that share the critical value triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Cubic,
    Saw,
    Quad,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Cubic => "cubic",
            Family::Saw => "saw",
            Family::Quad => "quad",
        }
    }

    /// The member with critical values `(v1, v2)`; the quadratic family
    /// only reads `v1`.
    pub fn map_at(self, v1: f64, v2: f64) -> Result<AnyMap> {
        match self {
            Family::Cubic => {
                let v = CriticalValueVector::new(v1, v2)?;
                if v.is_degenerate() {
                    Ok(AnyMap::Degenerate(DegenerateCubic::new(v1)?))
                } else {
                    Ok(AnyMap::Cubic(CubicMap::from_critical_values(v)?))
                }
            }
            Family::Saw => Ok(AnyMap::Saw(StuntedSawtooth::new(CriticalValueVector::new(
                v1, v2,
            )?)?)),
            Family::Quad => Ok(AnyMap::Quad(Quadratic::new(v1)?)),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s {
            "cubic" => Ok(Family::Cubic),
            "saw" | "sawtooth" => Ok(Family::Saw),
            "quad" | "quadratic" => Ok(Family::Quad),
            other => Err(Error::Invalid(format!("unknown family '{other}'"))),
        }
    }
}

/// Any of the concrete maps, for code that picks a family at runtime.
#[derive(Clone, Debug)]
pub enum AnyMap {
    Cubic(CubicMap),
    Degenerate(DegenerateCubic),
    Quad(Quadratic),
    Saw(StuntedSawtooth),
    Linear(PiecewiseLinear),
    NormalForm(NormalFormCubic),
}

macro_rules! delegate {
    ($self:ident, $m:ident => $e:expr) => {
        match $self {
            AnyMap::Cubic($m) => $e,
            AnyMap::Degenerate($m) => $e,
            AnyMap::Quad($m) => $e,
            AnyMap::Saw($m) => $e,
            AnyMap::Linear($m) => $e,
            AnyMap::NormalForm($m) => $e,
        }
    };
}

impl PiecewiseMonotone for AnyMap {
    fn eval(&self, x: f64) -> f64 {
        delegate!(self, m => m.eval(x))
    }
    fn branches(&self) -> Vec<Branch> {
        delegate!(self, m => m.branches())
    }
    fn critical_points(&self) -> Vec<f64> {
        delegate!(self, m => m.critical_points())
    }
    fn is_piecewise_linear(&self) -> bool {
        delegate!(self, m => m.is_piecewise_linear())
    }
    fn orbit_symbols(&self, x: f64, depth: usize) -> Vec<Symbol> {
        delegate!(self, m => m.orbit_symbols(x, depth))
    }
    fn critical_symbols(&self, i: usize, depth: usize) -> Vec<Symbol> {
        delegate!(self, m => m.critical_symbols(i, depth))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_directions() {
        use Direction::*;
        assert_eq!(Direction::compose(Down, Down), Up);
        assert_eq!(Direction::compose(Up, Down), Down);
        assert_eq!(Direction::compose(Flat, Down), Flat);
    }

    #[test]
    fn identity_iterate() {
        let s = StuntedSawtooth::full();
        assert_eq!(iterate(&s, 0.37, 0).unwrap(), 0.37);
        assert!(iterate(&s, 1.5, 1).is_err());
        assert!(evaluate(&s, -0.1).is_err());
    }

    #[test]
    fn boundary_points_fixed_for_plus_minus_plus() {
        let maps: Vec<AnyMap> = vec![
            Family::Cubic.map_at(0.8, 0.3).unwrap(),
            Family::Cubic.map_at(1.0, 0.0).unwrap(),
            Family::Saw.map_at(0.7, 0.2).unwrap(),
            AnyMap::Linear(PiecewiseLinear::constant_slope_bimodal(2.5).unwrap()),
        ];
        for f in &maps {
            assert_eq!(f.shape(), "+-+");
            assert!(f.eval(0.0).abs() < 1e-12, "{f:?}");
            assert!((f.eval(1.0) - 1.0).abs() < 1e-12, "{f:?}");
        }
    }

    #[test]
    fn family_parsing() {
        assert_eq!("saw".parse::<Family>().unwrap(), Family::Saw);
        assert!("cube".parse::<Family>().is_err());
    }
}
