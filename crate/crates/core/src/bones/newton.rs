//! Finite-difference Newton steps in the parameter plane.

use super::ParamPoint;

/// Central-difference step for derivatives of parameter residuals.
pub(crate) const FD_STEP: f64 = 1e-6;

/// Derivative of `f` along `dir`, falling back to a one-sided difference
/// where one side is undefined.
fn directional<F>(f: &F, p: ParamPoint, dir: (f64, f64)) -> Option<f64>
where
    F: Fn(ParamPoint) -> Option<f64>,
{
    let h = FD_STEP;
    let fwd = f(ParamPoint::new(p.v1 + h * dir.0, p.v2 + h * dir.1));
    let back = f(ParamPoint::new(p.v1 - h * dir.0, p.v2 - h * dir.1));
    match (fwd, back) {
        (Some(a), Some(b)) => Some((a - b) / (2.0 * h)),
        (Some(a), None) => Some((a - f(p)?) / h),
        (None, Some(b)) => Some((f(p)? - b) / h),
        (None, None) => None,
    }
}

pub(crate) fn gradient<F>(f: &F, p: ParamPoint) -> Option<(f64, f64)>
where
    F: Fn(ParamPoint) -> Option<f64>,
{
    Some((directional(f, p, (1.0, 0.0))?, directional(f, p, (0.0, 1.0))?))
}

/// Newton's method for two equations in two unknowns. Returns the root
/// once both residuals are below `tol`.
pub(crate) fn newton2<F, G>(f: &F, g: &G, start: ParamPoint, tol: f64, max_iter: usize) -> Option<ParamPoint>
where
    F: Fn(ParamPoint) -> Option<f64>,
    G: Fn(ParamPoint) -> Option<f64>,
{
    let mut p = start;
    for _ in 0..max_iter {
        let (fa, ga) = (f(p)?, g(p)?);
        if fa.abs() < tol && ga.abs() < tol {
            return Some(p);
        }
        let (f1, f2) = gradient(f, p)?;
        let (g1, g2) = gradient(g, p)?;
        let det = f1 * g2 - f2 * g1;
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let d1 = (fa * g2 - ga * f2) / det;
        let d2 = (f1 * ga - g1 * fa) / det;
        // damp steps that leave the domain
        let mut lam = 1.0;
        loop {
            let q = ParamPoint::new(p.v1 - lam * d1, p.v2 - lam * d2);
            if f(q).is_some() && g(q).is_some() {
                p = q;
                break;
            }
            lam *= 0.5;
            if lam < 1e-6 {
                return None;
            }
        }
    }
    let (fa, ga) = (f(p)?, g(p)?);
    (fa.abs() < tol && ga.abs() < tol).then_some(p)
}
