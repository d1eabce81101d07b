//! Periodic orbits: sign classification, order types, and the symbolic
//! enumeration of stunted-sawtooth cycles.

use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::{iterate, Direction, PiecewiseMonotone, StuntedSawtooth};
use crate::tolerances;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FixedPointKind {
    Positive,
    Negative,
    Critical,
}

/// Classifies a fixed point `x0` of `f^k` by the monotonicity of `f^k`
/// near it.
///
/// The local direction of `f^k` is the product of the branch directions
/// along the orbit. An orbit through a critical point is critical, and so
/// is one through a plateau (flat branch); otherwise the parity of visits
/// to decreasing branches decides.
pub fn classify_fixed_point<M: PiecewiseMonotone + ?Sized>(
    f: &M,
    k: usize,
    x0: f64,
) -> Result<FixedPointKind> {
    if k == 0 {
        return Err(Error::Invalid("iterate count must be positive".into()));
    }
    let xk = iterate(f, x0, k)?;
    let residual = (xk - x0).abs();
    if residual > tolerances::FIX {
        return Err(Error::NotFixed { x: x0, k, residual });
    }
    let crits = f.critical_points();
    let mut x = x0;
    let mut down = 0usize;
    for _ in 0..k {
        if crits.iter().any(|c| (x - c).abs() <= tolerances::CRIT) {
            return Ok(FixedPointKind::Critical);
        }
        match f.direction_at(x) {
            Direction::Flat => return Ok(FixedPointKind::Critical),
            Direction::Down => down += 1,
            Direction::Up => {}
        }
        x = f.eval(x);
    }
    Ok(if down.is_multiple_of(2) {
        FixedPointKind::Positive
    } else {
        FixedPointKind::Negative
    })
}

/// The cyclic permutation of a period-`p` orbit `x_0 < ... < x_{p-1}`,
/// stored 0-based in one-line form: `x_i ↦ x_{perm[i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrderType {
    perm: Vec<usize>,
}

impl OrderType {
    /// Validates that `perm` is one `p`-cycle with `p ≥ 2` realizable by a
    /// `+-+` map.
    pub fn new(perm: Vec<usize>) -> Result<OrderType> {
        let p = perm.len();
        if p < 2 {
            return Err(Error::NotPeriodic("period must be at least 2".into()));
        }
        let mut seen = vec![false; p];
        for &j in &perm {
            if j >= p || seen[j] {
                return Err(Error::Invalid(format!("{perm:?} is not a permutation")));
            }
            seen[j] = true;
        }
        if !is_single_cycle(&perm) {
            return Err(Error::NotCyclic(perm));
        }
        if realizing_cuts(&perm).is_none() {
            return Err(Error::Unrealizable(perm));
        }
        Ok(OrderType { perm })
    }

    /// Parses the 1-based one-line form, e.g. `"2,1"` or `"231"`.
    pub fn parse(s: &str) -> Result<OrderType> {
        let s = s.trim();
        let digits: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Invalid(format!("bad order type '{s}': {e}")))?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Invalid(format!("bad order type '{s}'")))?
        };
        if digits.contains(&0) {
            return Err(Error::Invalid(format!("order type '{s}' is 1-based")));
        }
        OrderType::new(digits.into_iter().map(|d| d - 1).collect())
    }

    pub fn period(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// 1-based one-line form, comma separated.
    pub fn one_line(&self) -> String {
        self.perm
            .iter()
            .map(|j| (j + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// The order type seen after conjugating by `x ↦ 1 - x`, which swaps
    /// the roles of the two critical points.
    pub fn reversed(&self) -> OrderType {
        let p = self.perm.len();
        let mut perm = vec![0; p];
        for i in 0..p {
            perm[p - 1 - i] = p - 1 - self.perm[i];
        }
        OrderType { perm }
    }

    /// Cut indices `(s, t)` with `perm` increasing on `[0, s)`, decreasing
    /// on `[s, t)` and increasing on `[t, p)`.
    pub fn cuts(&self) -> (usize, usize) {
        realizing_cuts(&self.perm).expect("validated at construction")
    }
}

impl fmt::Display for OrderType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.one_line())
    }
}

fn is_single_cycle(perm: &[usize]) -> bool {
    let mut j = perm[0];
    let mut len = 1;
    while j != 0 {
        j = perm[j];
        len += 1;
        if len > perm.len() {
            return false;
        }
    }
    len == perm.len()
}

fn monotone(perm: &[usize], increasing: bool) -> bool {
    perm.windows(2)
        .all(|w| if increasing { w[0] < w[1] } else { w[0] > w[1] })
}

fn realizing_cuts(perm: &[usize]) -> Option<(usize, usize)> {
    let p = perm.len();
    for s in 0..=p {
        if !monotone(&perm[..s], true) {
            break;
        }
        for t in s..=p {
            if !monotone(&perm[s..t], false) {
                break;
            }
            if monotone(&perm[t..], true) {
                return Some((s, t));
            }
        }
    }
    None
}

/// All realizable order types of period `p`, sorted.
pub fn order_types(p: usize) -> Result<Vec<OrderType>> {
    if p < 2 {
        return Err(Error::Invalid("period must be at least 2".into()));
    }
    if p > tolerances::PERIOD_MAX {
        return Err(Error::PeriodTooLarge {
            period: p,
            max: tolerances::PERIOD_MAX,
        });
    }
    let mut out = Vec::new();
    let mut rest: Vec<usize> = (1..p).collect();
    permute_cycles(&mut rest, 0, p, &mut out);
    out.sort();
    Ok(out)
}

// Enumerates p-cycles as sequences 0 → a_1 → ... → a_{p-1} → 0.
fn permute_cycles(rest: &mut Vec<usize>, k: usize, p: usize, out: &mut Vec<OrderType>) {
    if k == rest.len() {
        let mut perm = vec![0; p];
        let mut prev = 0;
        for &a in rest.iter() {
            perm[prev] = a;
            prev = a;
        }
        perm[prev] = 0;
        if let Ok(o) = OrderType::new(perm) {
            out.push(o);
        }
        return;
    }
    for i in k..rest.len() {
        rest.swap(k, i);
        permute_cycles(rest, k + 1, p, out);
        rest.swap(k, i);
    }
}

/// Order type of a periodic orbit listed in dynamical order
/// `x_0, f(x_0), ..., f^{p-1}(x_0)`.
pub fn order_type_of_orbit<M: PiecewiseMonotone + ?Sized>(
    orbit: &[f64],
    f: &M,
) -> Result<OrderType> {
    let p = orbit.len();
    if p < 2 {
        return Err(Error::NotPeriodic("period must be at least 2".into()));
    }
    for i in 0..p {
        let image = f.eval(orbit[i]);
        let next = orbit[(i + 1) % p];
        if (image - next).abs() > tolerances::FIX {
            return Err(Error::NotPeriodic(format!(
                "f(x_{i}) = {image} but x_{} = {next}",
                (i + 1) % p
            )));
        }
    }
    order_type_of_points(orbit)
}

/// Order type of points listed in dynamical order, without checking
/// that they form an orbit.
pub fn order_type_of_points(orbit: &[f64]) -> Result<OrderType> {
    let p = orbit.len();
    let mut idx: Vec<usize> = (0..p).collect();
    idx.sort_by(|&a, &b| orbit[a].total_cmp(&orbit[b]));
    for w in idx.windows(2) {
        if orbit[w[1]] - orbit[w[0]] <= 2.0 * tolerances::FIX {
            return Err(Error::NotPeriodic("orbit points are not distinct".into()));
        }
    }
    let mut rank = vec![0; p];
    for (r, &i) in idx.iter().enumerate() {
        rank[i] = r;
    }
    let mut perm = vec![0; p];
    for i in 0..p {
        perm[rank[i]] = rank[(i + 1) % p];
    }
    OrderType::new(perm)
}

/// A cycle of the full sawtooth's linear branches, solved exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicCycle {
    pub symbols: Vec<u8>,
    pub points: Vec<Rational64>,
}

impl SymbolicCycle {
    pub fn is_negative(&self) -> bool {
        self.symbols.iter().filter(|&&s| s == 1).count() % 2 == 1
    }
}

fn branch(sym: u8, x: Rational64) -> Rational64 {
    let two = Rational64::from_integer(2);
    match sym {
        0 => x * 3,
        1 => two - x * 3,
        _ => x * 3 - two,
    }
}

/// All primitive period-`p` cycles of the full sawtooth `S`, one per orbit
/// (rotated so the smallest point comes first). Branch 0 is `3x`, 1 is
/// `2 - 3x`, 2 is `3x - 2`.
pub fn sawtooth_cycles(p: usize) -> Result<Vec<SymbolicCycle>> {
    if p == 0 {
        return Err(Error::Invalid("period must be positive".into()));
    }
    if p > tolerances::PERIOD_MAX {
        return Err(Error::PeriodTooLarge {
            period: p,
            max: tolerances::PERIOD_MAX,
        });
    }
    let mut out = Vec::new();
    let total = 3usize.pow(p as u32);
    for code in 0..total {
        let symbols: Vec<u8> = (0..p)
            .map(|i| ((code / 3usize.pow(i as u32)) % 3) as u8)
            .collect();
        // x_p = λ x_0 + μ; the fixed point is μ / (1 - λ)
        let (mut lam, mut mu) = (Rational64::from_integer(1), Rational64::from_integer(0));
        for &s in &symbols {
            let (a, b) = match s {
                0 => (3, 0),
                1 => (-3, 2),
                _ => (3, -2),
            };
            lam *= a;
            mu = mu * a + b;
        }
        let x0 = mu / (Rational64::from_integer(1) - lam);
        let mut points = Vec::with_capacity(p);
        let mut x = x0;
        let mut ok = true;
        for &s in &symbols {
            let lap_ok = match s {
                0 => x * 3 <= Rational64::from_integer(1),
                1 => x * 3 >= Rational64::from_integer(1) && x * 3 <= Rational64::from_integer(2),
                _ => x * 3 >= Rational64::from_integer(2),
            };
            if !lap_ok {
                ok = false;
                break;
            }
            points.push(x);
            x = branch(s, x);
        }
        if !ok || x != x0 {
            continue;
        }
        // primitive period and canonical rotation
        let min_idx = (0..p).min_by(|&a, &b| points[a].cmp(&points[b])).unwrap();
        if min_idx != 0 || (1..p).any(|q| points[q] == points[0]) {
            continue;
        }
        out.push(SymbolicCycle { symbols, points });
    }
    Ok(out)
}

/// Number of negative period-`p` orbits of `S_w` with order type `o`.
///
/// A cycle avoiding both plateaus follows linear branches of `S` only, so
/// it is one of the exact sawtooth cycles; it survives in `S_w` when every
/// point stays off the plateaus (edges count as plateau).
pub fn count_negative_orbits(s: &StuntedSawtooth, o: &OrderType) -> Result<usize> {
    let p = o.period();
    if p > tolerances::PERIOD_MAX {
        return Err(Error::PeriodTooLarge {
            period: p,
            max: tolerances::PERIOD_MAX,
        });
    }
    let (l0, l1) = s.left_plateau();
    let (r0, r1) = s.right_plateau();
    let mut count = 0;
    for cyc in sawtooth_cycles(p)? {
        if !cyc.is_negative() {
            continue;
        }
        let xs: Vec<f64> = cyc
            .points
            .iter()
            .map(|r| *r.numer() as f64 / *r.denom() as f64)
            .collect();
        let off_plateaus = xs
            .iter()
            .all(|&x| !((l0..=l1).contains(&x) || (r0..=r1).contains(&x)));
        if !off_plateaus {
            continue;
        }
        if order_type_of_points(&xs).ok().as_ref() == Some(o) {
            count += 1;
        }
    }
    Ok(count)
}
