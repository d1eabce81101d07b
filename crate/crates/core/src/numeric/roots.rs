//! Bracketed scalar root finding.

use crate::error::{Error, Result};

/// Plain bisection on `[lo, hi]`; `f(lo)` and `f(hi)` must not share a sign.
///
/// Stops once the bracket is narrower than `xtol` or cannot be split further
/// in floating point.
pub fn bisect<F>(f: F, mut lo: f64, mut hi: f64, xtol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if (flo < 0.0) == (fhi < 0.0) {
        return Err(Error::Convergence(format!(
            "no sign change on [{lo}, {hi}]: f = {flo:e}, {fhi:e}"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= xtol {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Bisection down to `coarse` width, then safeguarded Newton steps.
///
/// `df` is the derivative. Newton iterates that leave the current bracket
/// fall back to a bisection step.
pub fn bisect_newton<F, D>(f: F, df: D, lo: f64, hi: f64, xtol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let (mut lo, mut hi) = (lo, hi);
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if (flo < 0.0) == (fhi < 0.0) {
        return Err(Error::Convergence(format!(
            "no sign change on [{lo}, {hi}]: f = {flo:e}, {fhi:e}"
        )));
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if (fx < 0.0) == (flo < 0.0) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        if hi - lo <= xtol {
            break;
        }
        let d = df(x);
        let newton = x - fx / d;
        let next = if d != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= xtol * 0.5 || next <= lo || next >= hi {
            x = next.clamp(lo, hi);
            break;
        }
        x = next;
    }
    Ok(x)
}

/// Illinois (modified regula falsi) for a monotone function on a bracket.
///
/// Converges superlinearly on smooth monotone branches and never leaves the
/// bracket, so it is safe near turning points where the slope vanishes.
pub fn illinois<F>(f: F, lo: f64, hi: f64, xtol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if (fa < 0.0) == (fb < 0.0) {
        return Err(Error::Convergence(format!(
            "no sign change on [{lo}, {hi}]: f = {fa:e}, {fb:e}"
        )));
    }
    let mut side = 0i8;
    for _ in 0..200 {
        if (b - a).abs() <= xtol {
            break;
        }
        let mut c = (a * fb - b * fa) / (fb - fa);
        if !(c > a.min(b) && c < a.max(b)) {
            c = 0.5 * (a + b);
        }
        let fc = f(c);
        if fc == 0.0 {
            return Ok(c);
        }
        if (fc < 0.0) == (fb < 0.0) {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
        let width = (b - a).abs();
        let mid = 0.5 * (a + b);
        if mid == a || mid == b || width <= xtol {
            break;
        }
    }
    Ok(if fa.abs() < fb.abs() { a } else { b })
}
