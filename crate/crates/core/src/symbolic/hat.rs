//! The embedding `x ↦ x̂` of a bimodal map's itineraries into those of the
//! full sawtooth, and the stunted sawtooth with matching kneading data.

use super::itinerary::Symbol;
use crate::error::{Error, Result};
use crate::maps::{CriticalValueVector, PiecewiseMonotone, StuntedSawtooth};
use crate::numeric::Dyadic;

/// The point of `[0, 1]` whose sawtooth itinerary is `symbols`.
///
/// Inverse branches of `S` are applied along the reversed sequence. A
/// sequence ending on a critical symbol starts from the matching plateau
/// center, so `S^n(x̂)` is exactly that center.
pub fn hat_from_symbols(symbols: &[Symbol]) -> Result<Dyadic> {
    let (mut y, body) = match symbols.split_last() {
        Some((Symbol::Crit(k), rest)) => (Dyadic::from_thirds(*k as u32 + 1), rest),
        _ => (Dyadic::from_raw(Dyadic::RAW_ONE / 2), symbols),
    };
    for s in body.iter().rev() {
        y = match *s {
            Symbol::L => y.third(),
            Symbol::M => y.two_minus_over_three(),
            Symbol::R => y.two_plus_over_three(),
            other => {
                return Err(Error::Invalid(format!(
                    "symbol {other:?} cannot appear before the end of an itinerary"
                )))
            }
        };
    }
    Ok(y)
}

fn require_bimodal<M: PiecewiseMonotone + ?Sized>(f: &M) -> Result<()> {
    if f.critical_points().len() != 2 {
        return Err(Error::Invalid("the sawtooth embedding needs a bimodal map".into()));
    }
    Ok(())
}

/// `x̂` to accuracy `3^-depth`, in fixed point.
pub fn hat_point_exact<M: PiecewiseMonotone + ?Sized>(f: &M, x: f64, depth: usize) -> Result<Dyadic> {
    require_bimodal(f)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("x = {x} outside [0, 1]")));
    }
    hat_from_symbols(&f.orbit_symbols(x, depth))
}

pub fn hat_point<M: PiecewiseMonotone + ?Sized>(f: &M, x: f64, depth: usize) -> Result<f64> {
    hat_point_exact(f, x, depth).map(Dyadic::to_f64)
}

/// `(v̂1, v̂2)` in fixed point, from the critical orbits of `f`.
pub fn hat_parameters_exact<M: PiecewiseMonotone + ?Sized>(
    f: &M,
    depth: usize,
) -> Result<(Dyadic, Dyadic)> {
    require_bimodal(f)?;
    let w1 = hat_from_symbols(&f.critical_symbols(0, depth))?;
    let w2 = hat_from_symbols(&f.critical_symbols(1, depth))?;
    Ok((w1, w2.min(w1)))
}

pub fn hat_parameters<M: PiecewiseMonotone + ?Sized>(
    f: &M,
    depth: usize,
) -> Result<CriticalValueVector> {
    let (w1, w2) = hat_parameters_exact(f, depth)?;
    CriticalValueVector::new(w1.to_f64(), w2.to_f64())
}

/// The stunted sawtooth with the same kneading data as `f` (to `depth`).
pub fn hat_map<M: PiecewiseMonotone + ?Sized>(f: &M, depth: usize) -> Result<StuntedSawtooth> {
    let (w1, w2) = hat_parameters_exact(f, depth)?;
    StuntedSawtooth::from_dyadic(w1, w2)
}
