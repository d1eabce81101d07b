use num_rational::Rational64;

use super::{Branch, CriticalValueVector, Direction, PiecewiseMonotone};
use crate::error::Result;
use crate::numeric::Dyadic;
use crate::symbolic::itinerary::Symbol;
use crate::tolerances;

/// The stunted sawtooth `S_w`: the slope-3 sawtooth `S` with its peak cut
/// at height `w1` and its valley raised to `w2`.
///
/// Plateaus are `L = [w1/3, (2-w1)/3]` (value `w1`) and
/// `R = [(2-w2)/3, (2+w2)/3]` (value `w2`); their edges belong to the
/// plateau. The critical points are the plateau centers `1/3` and `2/3`.
///
/// Besides the f64 parameters the map keeps `w` as 120-bit fixed point so
/// orbits can be followed exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct StuntedSawtooth {
    w: CriticalValueVector,
    dw1: Dyadic,
    dw2: Dyadic,
}

impl StuntedSawtooth {
    pub fn new(w: CriticalValueVector) -> Result<StuntedSawtooth> {
        Ok(StuntedSawtooth {
            w,
            dw1: Dyadic::from_f64(w.v1),
            dw2: Dyadic::from_f64(w.v2),
        })
    }

    /// The full sawtooth `S = S_(1,0)`.
    pub fn full() -> StuntedSawtooth {
        StuntedSawtooth {
            w: CriticalValueVector { v1: 1.0, v2: 0.0 },
            dw1: Dyadic::ONE,
            dw2: Dyadic::ZERO,
        }
    }

    /// Builds `S_w` from fixed-point parameters; the f64 view is rounded.
    pub fn from_dyadic(w1: Dyadic, w2: Dyadic) -> Result<StuntedSawtooth> {
        let w = CriticalValueVector::new(w1.to_f64(), w2.to_f64())?;
        if w1 < w2 {
            return Err(crate::error::Error::Domain("w1 < w2".into()));
        }
        Ok(StuntedSawtooth {
            w,
            dw1: w1,
            dw2: w2,
        })
    }

    pub fn w(&self) -> CriticalValueVector {
        self.w
    }

    pub fn w_exact(&self) -> (Dyadic, Dyadic) {
        (self.dw1, self.dw2)
    }

    pub fn left_plateau(&self) -> (f64, f64) {
        (self.w.v1 / 3.0, (2.0 - self.w.v1) / 3.0)
    }

    pub fn right_plateau(&self) -> (f64, f64) {
        ((2.0 - self.w.v2) / 3.0, (2.0 + self.w.v2) / 3.0)
    }

    /// Exact image of a fixed-point argument.
    pub fn step_exact(&self, x: Dyadic) -> Dyadic {
        let one = Dyadic::RAW_ONE;
        let t = 3 * x.raw();
        let (w1, w2) = (self.dw1.raw(), self.dw2.raw());
        let raw = if t < w1 {
            t
        } else if t + w1 <= 2 * one {
            w1
        } else if t + w2 < 2 * one {
            2 * one - t
        } else if t <= 2 * one + w2 {
            w2
        } else {
            t - 2 * one
        };
        Dyadic::from_raw(raw)
    }

    /// True when `x` lies on either plateau (edges included).
    pub fn on_plateau(&self, x: Dyadic) -> bool {
        let one = Dyadic::RAW_ONE;
        let t = 3 * x.raw();
        let (w1, w2) = (self.dw1.raw(), self.dw2.raw());
        (t >= w1 && t + w1 <= 2 * one) || (t + w2 >= 2 * one && t <= 2 * one + w2)
    }

    /// Symbol of a fixed-point value relative to the plateau centers.
    pub fn classify_exact(x: Dyadic) -> Symbol {
        for k in 0..2u8 {
            if x.dist_thirds(k as u32 + 1) <= tolerances::CRIT {
                return Symbol::Crit(k);
            }
        }
        match (x.cmp_thirds(1), x.cmp_thirds(2)) {
            (std::cmp::Ordering::Less, _) => Symbol::L,
            (_, std::cmp::Ordering::Less) => Symbol::M,
            _ => Symbol::R,
        }
    }

    pub fn orbit_symbols_exact(&self, x0: Dyadic, depth: usize) -> Vec<Symbol> {
        let mut out = Vec::with_capacity(depth);
        let mut x = x0;
        for _ in 0..depth {
            let s = Self::classify_exact(x);
            out.push(s);
            if s.is_critical() {
                break;
            }
            x = self.step_exact(x);
        }
        out
    }
}

/// `S_w(x)` in exact rational arithmetic.
pub fn eval_rational(w1: Rational64, w2: Rational64, x: Rational64) -> Rational64 {
    let two = Rational64::from_integer(2);
    let t = x * 3;
    if t < w1 {
        t
    } else if t + w1 <= two {
        w1
    } else if t + w2 < two {
        two - t
    } else if t <= two + w2 {
        w2
    } else {
        t - two
    }
}

impl PiecewiseMonotone for StuntedSawtooth {
    fn eval(&self, x: f64) -> f64 {
        let (w1, w2) = (self.w.v1, self.w.v2);
        let t = 3.0 * x;
        let y = if t < w1 {
            t
        } else if t + w1 <= 2.0 {
            w1
        } else if t + w2 < 2.0 {
            2.0 - t
        } else if t <= 2.0 + w2 {
            w2
        } else {
            t - 2.0
        };
        y.clamp(0.0, 1.0)
    }

    fn branches(&self) -> Vec<Branch> {
        let (l0, l1) = self.left_plateau();
        let (r0, r1) = self.right_plateau();
        let raw = [
            (0.0, l0, Direction::Up),
            (l0, l1, Direction::Flat),
            (l1, r0, Direction::Down),
            (r0, r1, Direction::Flat),
            (r1, 1.0, Direction::Up),
        ];
        raw.iter()
            .filter(|(lo, hi, _)| hi > lo)
            .map(|&(lo, hi, dir)| Branch { lo, hi, dir })
            .collect()
    }

    fn critical_points(&self) -> Vec<f64> {
        vec![1.0 / 3.0, 2.0 / 3.0]
    }

    fn is_piecewise_linear(&self) -> bool {
        true
    }

    /// Always the shape of `S`, including when the plateaus touch.
    fn shape(&self) -> String {
        "+-+".into()
    }

    fn orbit_symbols(&self, x: f64, depth: usize) -> Vec<Symbol> {
        self.orbit_symbols_exact(Dyadic::from_f64(x), depth)
    }

    fn critical_symbols(&self, i: usize, depth: usize) -> Vec<Symbol> {
        let start = if i == 0 { self.dw1 } else { self.dw2 };
        self.orbit_symbols_exact(start, depth)
    }
}
