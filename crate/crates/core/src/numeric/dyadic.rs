//! Fixed-point numbers on the unit interval with 120 fractional bits.
//!
//! The sawtooth branches `3x`, `2 - 3x`, `3x - 2` map `k / 2^120` to another
//! multiple of `2^-120`, so sawtooth orbits can be followed exactly. Division
//! by three (inverse branches) rounds to nearest.

use std::cmp::Ordering;

const FRAC_BITS: u32 = 120;
const ONE: u128 = 1u128 << FRAC_BITS;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dyadic(u128);

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic(0);
    pub const ONE: Dyadic = Dyadic(ONE);

    /// Exact for every double in `[2^-67, 1]`; smaller values round.
    pub fn from_f64(x: f64) -> Dyadic {
        let x = x.clamp(0.0, 1.0);
        if x == 1.0 {
            return Dyadic::ONE;
        }
        if x == 0.0 {
            return Dyadic::ZERO;
        }
        let bits = x.to_bits();
        let exp = ((bits >> 52) & 0x7ff) as i32;
        let (mant, e) = if exp == 0 {
            (bits & ((1u64 << 52) - 1), -1074)
        } else {
            ((bits & ((1u64 << 52) - 1)) | (1u64 << 52), exp - 1075)
        };
        // x = mant * 2^e, want mant * 2^(e + 120)
        let shift = e + FRAC_BITS as i32;
        if shift >= 0 {
            Dyadic((mant as u128) << shift)
        } else {
            let s = (-shift) as u32;
            if s >= 128 {
                return Dyadic::ZERO;
            }
            let half = 1u128 << (s - 1);
            Dyadic(((mant as u128) + half) >> s)
        }
    }

    pub fn to_f64(self) -> f64 {
        // u128 → f64 rounds to nearest; the power-of-two scaling is exact
        self.0 as f64 * 2f64.powi(-(FRAC_BITS as i32))
    }

    /// Compare `self` with `num / 3` (num in 0..=3) exactly.
    pub fn cmp_thirds(self, num: u32) -> Ordering {
        (3 * self.0).cmp(&(num as u128 * ONE))
    }

    /// `|self - num/3|` scaled by three, as an f64; used for tolerant hits.
    pub fn dist_thirds(self, num: u32) -> f64 {
        let a = 3 * self.0;
        let b = num as u128 * ONE;
        let d = a.abs_diff(b);
        Dyadic(d).to_f64() / 3.0
    }

    pub fn triple(self) -> Dyadic {
        Dyadic((3 * self.0).min(ONE))
    }

    pub fn two_minus_triple(self) -> Dyadic {
        Dyadic((2 * ONE).saturating_sub(3 * self.0).min(ONE))
    }

    pub fn triple_minus_two(self) -> Dyadic {
        Dyadic((3 * self.0).saturating_sub(2 * ONE).min(ONE))
    }

    /// `y / 3`, rounded.
    pub fn third(self) -> Dyadic {
        Dyadic((self.0 + 1) / 3)
    }

    /// `(2 - y) / 3`, rounded.
    pub fn two_minus_over_three(self) -> Dyadic {
        Dyadic((2 * ONE - self.0 + 1) / 3)
    }

    /// `(2 + y) / 3`, rounded.
    pub fn two_plus_over_three(self) -> Dyadic {
        Dyadic((2 * ONE + self.0 + 1) / 3)
    }

    pub fn raw(self) -> u128 {
        self.0
    }

    pub(crate) fn from_raw(raw: u128) -> Dyadic {
        Dyadic(raw.min(ONE))
    }

    pub(crate) const RAW_ONE: u128 = ONE;

    pub fn from_thirds(num: u32) -> Dyadic {
        Dyadic((num as u128 * ONE + 1) / 3)
    }
}
