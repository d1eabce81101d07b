//! Double-double arithmetic (about 106 significant bits).
//!
//! Used to follow chaotic critical orbits of cubic maps far enough that the
//! computed itinerary is still the true one after several dozen steps.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct DDouble {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DDouble {
    pub const ZERO: DDouble = DDouble { hi: 0.0, lo: 0.0 };

    pub fn new(x: f64) -> Self {
        DDouble { hi: x, lo: 0.0 }
    }

    /// `num / den` correctly rounded to double-double.
    pub fn div_f64(num: f64, den: f64) -> Self {
        let q1 = num / den;
        let r = (-q1).mul_add(den, num);
        let q2 = r / den;
        let (hi, lo) = quick_two_sum(q1, q2);
        DDouble { hi, lo }
    }

    /// Division by a double, accurate to double-double precision.
    pub fn div_by(self, den: f64) -> Self {
        let q1 = self.hi / den;
        let r = self - DDouble::new(q1) * den;
        let q2 = r.hi / den;
        let (hi, lo) = quick_two_sum(q1, q2);
        DDouble { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }
}

impl From<f64> for DDouble {
    fn from(x: f64) -> Self {
        DDouble::new(x)
    }
}

impl Neg for DDouble {
    type Output = DDouble;
    fn neg(self) -> DDouble {
        DDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for DDouble {
    type Output = DDouble;
    fn add(self, rhs: DDouble) -> DDouble {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DDouble { hi, lo }
    }
}

impl Sub for DDouble {
    type Output = DDouble;
    fn sub(self, rhs: DDouble) -> DDouble {
        self + (-rhs)
    }
}

impl Mul for DDouble {
    type Output = DDouble;
    fn mul(self, rhs: DDouble) -> DDouble {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DDouble { hi, lo }
    }
}

impl Add<f64> for DDouble {
    type Output = DDouble;
    fn add(self, rhs: f64) -> DDouble {
        self + DDouble::new(rhs)
    }
}

impl Mul<f64> for DDouble {
    type Output = DDouble;
    fn mul(self, rhs: f64) -> DDouble {
        let (p, e) = two_prod(self.hi, rhs);
        let e = e + self.lo * rhs;
        let (hi, lo) = quick_two_sum(p, e);
        DDouble { hi, lo }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn third_times_three_is_one() {
        let t = DDouble::div_f64(1.0, 3.0);
        let one = t * 3.0;
        assert!((one - DDouble::new(1.0)).abs().to_f64() < 1e-31);
    }

    #[test]
    fn product_keeps_low_bits() {
        let x = DDouble::new(1.0 + f64::EPSILON);
        let sq = x * x;
        // (1 + e)^2 = 1 + 2e + e^2; the e^2 term lives in the low word
        let expected_lo = f64::EPSILON * f64::EPSILON;
        assert_eq!(sq.hi(), 1.0 + 2.0 * f64::EPSILON);
        assert!(((sq - DDouble::new(1.0 + 2.0 * f64::EPSILON)).to_f64() - expected_lo).abs() < 1e-40);
    }
}
