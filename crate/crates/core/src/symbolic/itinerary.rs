use std::fmt;

use crate::maps::PiecewiseMonotone;
use crate::tolerances;

/// Position of a point relative to the critical points `c_1 < ... < c_m`.
///
/// `Lap(k)` is the open lap between `c_k` and `c_{k+1}` (0-based, so for a
/// bimodal map `Lap(0)`, `Lap(1)`, `Lap(2)` are L, M, R) and `Crit(k)` is the
/// critical point `c_{k+1}` itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Lap(u8),
    Crit(u8),
}

impl Symbol {
    pub const L: Symbol = Symbol::Lap(0);
    pub const M: Symbol = Symbol::Lap(1);
    pub const R: Symbol = Symbol::Lap(2);
    pub const C1: Symbol = Symbol::Crit(0);
    pub const C2: Symbol = Symbol::Crit(1);

    /// Locates `x` among `crits`, treating anything within `tol` of a
    /// critical point as a hit.
    pub fn classify(x: f64, crits: &[f64], tol: f64) -> Symbol {
        for (k, &c) in crits.iter().enumerate() {
            if (x - c).abs() <= tol {
                return Symbol::Crit(k as u8);
            }
        }
        let lap = crits.iter().take_while(|&&c| x > c).count();
        Symbol::Lap(lap as u8)
    }

    /// `sgn(x - c_j)` for a point carrying this symbol.
    pub fn sign_against(self, j: usize) -> i8 {
        let j = j as u8;
        match self {
            Symbol::Lap(k) => {
                if j < k {
                    1
                } else {
                    -1
                }
            }
            Symbol::Crit(k) => match k.cmp(&j) {
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => 1,
                std::cmp::Ordering::Less => -1,
            },
        }
    }

    pub fn is_critical(self) -> bool {
        matches!(self, Symbol::Crit(_))
    }

    /// Short name; bimodal maps use L, C1, M, C2, R.
    pub fn name(self, modality: usize) -> String {
        match (modality, self) {
            (2, Symbol::Lap(0)) => "L".into(),
            (2, Symbol::Lap(1)) => "M".into(),
            (2, Symbol::Lap(2)) => "R".into(),
            (1, Symbol::Lap(0)) => "L".into(),
            (1, Symbol::Lap(1)) => "R".into(),
            (1, Symbol::Crit(0)) => "C".into(),
            (_, Symbol::Crit(k)) => format!("C{}", k + 1),
            (_, Symbol::Lap(k)) => format!("I{k}"),
        }
    }
}

/// Lap sequence of an orbit, cut after the first critical symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Itinerary {
    pub symbols: Vec<Symbol>,
    pub modality: usize,
}

impl Itinerary {
    pub fn new(symbols: Vec<Symbol>, modality: usize) -> Itinerary {
        let cut = symbols
            .iter()
            .position(|s| s.is_critical())
            .map_or(symbols.len(), |p| p + 1);
        let mut symbols = symbols;
        symbols.truncate(cut);
        Itinerary { symbols, modality }
    }

    pub fn depth(&self) -> usize {
        self.symbols.len()
    }

    /// The critical point that ended the itinerary, if any.
    pub fn truncated_at(&self) -> Option<u8> {
        match self.symbols.last() {
            Some(Symbol::Crit(k)) => Some(*k),
            _ => None,
        }
    }
}

impl fmt::Display for Itinerary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.symbols.iter().all(|s| !s.is_critical()) || self.modality != 2;
        for (i, s) in self.symbols.iter().enumerate() {
            if !compact && i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&s.name(self.modality))?;
        }
        Ok(())
    }
}

/// Itinerary of `x` under `f` up to `depth` symbols.
pub fn itinerary<M: PiecewiseMonotone + ?Sized>(f: &M, x: f64, depth: usize) -> Itinerary {
    let symbols = f.orbit_symbols(x, depth);
    Itinerary::new(symbols, f.critical_points().len())
}

/// Classifies a plain f64 orbit; the fallback used by maps without a
/// higher-precision evaluator.
pub(crate) fn plain_orbit_symbols<M: PiecewiseMonotone + ?Sized>(
    f: &M,
    x: f64,
    depth: usize,
) -> Vec<Symbol> {
    let crits = f.critical_points();
    let mut out = Vec::with_capacity(depth);
    let mut y = x;
    for _ in 0..depth {
        let s = Symbol::classify(y, &crits, tolerances::CRIT);
        out.push(s);
        if s.is_critical() {
            break;
        }
        y = f.eval(y);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{CriticalValueVector, CubicMap, StuntedSawtooth};

    #[test]
    fn sawtooth_zero_is_all_left() {
        let s = StuntedSawtooth::full();
        let it = itinerary(&s, 0.0, 5);
        assert_eq!(it.symbols, vec![Symbol::L; 5]);
        assert_eq!(it.to_string(), "LLLLL");
    }

    #[test]
    fn sawtooth_half_is_all_middle() {
        let s = StuntedSawtooth::full();
        let it = itinerary(&s, 0.5, 3);
        assert_eq!(it.to_string(), "MMM");
    }

    #[test]
    fn critical_point_truncates_immediately() {
        let f = CubicMap::from_critical_values(CriticalValueVector::new(1.0, 0.0).unwrap()).unwrap();
        let it = itinerary(&f, 0.25, 3);
        assert_eq!(it.symbols, vec![Symbol::C1]);
        assert_eq!(it.truncated_at(), Some(0));
    }

    #[test]
    fn signs_follow_symbol_position() {
        assert_eq!(Symbol::M.sign_against(0), 1);
        assert_eq!(Symbol::M.sign_against(1), -1);
        assert_eq!(Symbol::C2.sign_against(0), 1);
        assert_eq!(Symbol::C2.sign_against(1), 0);
        assert_eq!(Symbol::L.sign_against(0), -1);
    }
}
