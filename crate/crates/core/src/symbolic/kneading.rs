use std::fmt;

use super::itinerary::Symbol;
use crate::maps::PiecewiseMonotone;

/// Shape plus the signs `sgn(f^n(c_i) - c_j)` for `n = 1..=depth`.
///
/// Rows are stored as the symbol of `f^n(c_i)`, from which every sign
/// follows. When the orbit of `c_i` lands exactly on a critical point `c_k`
/// at step `n0`, later entries are read off the orbit of `c_k`, so the data
/// describe the true orbit rather than a cut-off one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KneadingData {
    pub shape: String,
    pub depth: usize,
    rows: Vec<Vec<Symbol>>,
}

impl KneadingData {
    pub fn modality(&self) -> usize {
        self.rows.len()
    }

    /// Symbol of `f^n(c_i)`, `n ≥ 1`.
    pub fn symbol(&self, n: usize, i: usize) -> Symbol {
        self.rows[i][n - 1]
    }

    /// `sgn(f^n(c_i) - c_j)`, `n ≥ 1`.
    pub fn sign(&self, n: usize, i: usize, j: usize) -> i8 {
        self.symbol(n, i).sign_against(j)
    }

    /// The sign matrix at step `n`.
    pub fn matrix(&self, n: usize) -> Vec<Vec<i8>> {
        let m = self.modality();
        (0..m)
            .map(|i| (0..m).map(|j| self.sign(n, i, j)).collect())
            .collect()
    }

    /// Data restricted to the first `depth` steps.
    pub fn truncate(&self, depth: usize) -> KneadingData {
        let depth = depth.min(self.depth);
        KneadingData {
            shape: self.shape.clone(),
            depth,
            rows: self.rows.iter().map(|r| r[..depth].to_vec()).collect(),
        }
    }

    /// First step at which `c_i` lands on a critical point, with its index.
    pub fn first_hit(&self, i: usize) -> Option<(usize, u8)> {
        self.rows[i].iter().enumerate().find_map(|(n, s)| match s {
            Symbol::Crit(k) => Some((n + 1, *k)),
            _ => None,
        })
    }

    /// One line per step, signs row-major: `+`, `-` or `0`.
    pub fn sign_lines(&self) -> Vec<String> {
        (1..=self.depth)
            .map(|n| {
                self.matrix(n)
                    .iter()
                    .flatten()
                    .map(|&s| match s {
                        1 => '+',
                        -1 => '-',
                        _ => '0',
                    })
                    .collect()
            })
            .collect()
    }

    /// Single-line form used as a label: shape and sign lines joined by `|`.
    pub fn label(&self) -> String {
        let mut out = self.shape.clone();
        for l in self.sign_lines() {
            out.push('|');
            out.push_str(&l);
        }
        out
    }
}

impl fmt::Display for KneadingData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.shape)?;
        for l in self.sign_lines() {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Kneading data of `f` to `depth` steps.
pub fn kneading_data<M: PiecewiseMonotone + ?Sized>(f: &M, depth: usize) -> KneadingData {
    let m = f.critical_points().len();
    let raw: Vec<Vec<Symbol>> = (0..m).map(|i| f.critical_symbols(i, depth)).collect();
    let mut rows: Vec<Vec<Symbol>> = vec![Vec::with_capacity(depth); m];
    // A row that ended on c_k continues as the orbit of c_k; filling by
    // increasing n keeps every lookup on an already computed entry.
    for n in 1..=depth {
        for i in 0..m {
            let sym = if n <= raw[i].len() {
                raw[i][n - 1]
            } else {
                let n0 = raw[i].len();
                match raw[i].last() {
                    Some(Symbol::Crit(k)) => rows[*k as usize][n - n0 - 1],
                    // a short row without a hit means the orbit left the
                    // domain of definition; repeat its last symbol
                    Some(s) => *s,
                    None => Symbol::Lap(0),
                }
            };
            rows[i].push(sym);
        }
    }
    KneadingData {
        shape: f.shape(),
        depth,
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{CriticalValueVector, CubicMap, StuntedSawtooth};

    #[test]
    fn corner_cubic_signs() {
        let f = CubicMap::from_critical_values(CriticalValueVector::new(1.0, 0.0).unwrap()).unwrap();
        let k = kneading_data(&f, 2);
        for n in 1..=2 {
            assert_eq!(k.matrix(n), vec![vec![1, 1], vec![-1, -1]]);
        }
        assert_eq!(k.to_string(), "+-+\n++--\n++--\n");
    }

    #[test]
    fn full_sawtooth_matches_corner_cubic() {
        let f = CubicMap::from_critical_values(CriticalValueVector::new(1.0, 0.0).unwrap()).unwrap();
        let s = StuntedSawtooth::full();
        assert_eq!(kneading_data(&f, 2), kneading_data(&s, 2));
    }

    #[test]
    fn period_two_center_cycles() {
        let s = StuntedSawtooth::new(CriticalValueVector::new(2.0 / 3.0, 1.0 / 3.0).unwrap()).unwrap();
        let k = kneading_data(&s, 4);
        // c1 ↦ c2 ↦ c1 ↦ ...
        assert_eq!(k.sign(1, 0, 1), 0);
        assert_eq!(k.sign(2, 0, 0), 0);
        assert_eq!(k.sign(3, 0, 1), 0);
        assert_eq!(k.sign(1, 1, 0), 0);
        assert_eq!(k.first_hit(0), Some((1, 1)));
        assert_eq!(k.sign_lines()[0], "+00-");
    }

    #[test]
    fn rows_are_ordered() {
        let s = StuntedSawtooth::new(CriticalValueVector::new(0.83, 0.21).unwrap()).unwrap();
        let k = kneading_data(&s, 20);
        for n in 1..=20 {
            for i in 0..2 {
                assert!(k.sign(n, i, 0) >= k.sign(n, i, 1));
            }
        }
        assert_eq!(k.truncate(5).depth, 5);
    }
}
