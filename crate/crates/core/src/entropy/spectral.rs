//! Spectral radius of 0/1 matrices whose rows cover contiguous column
//! ranges (the shape of interval transition matrices).

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

/// Row `j` has ones exactly in columns `ranges[j].0 .. ranges[j].1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangeMatrix {
    pub ranges: Vec<(usize, usize)>,
}

const MAX_ITER: usize = 200_000;

impl RangeMatrix {
    pub fn size(&self) -> usize {
        self.ranges.len()
    }

    pub fn entry(&self, j: usize, k: usize) -> u8 {
        let (lo, hi) = self.ranges[j];
        u8::from(k >= lo && k < hi)
    }

    /// `y = M x` in `O(n)` via prefix sums.
    fn apply(&self, x: &[f64], prefix: &mut Vec<f64>, y: &mut [f64]) {
        prefix.clear();
        prefix.push(0.0);
        let mut acc = 0.0;
        for &v in x {
            acc += v;
            prefix.push(acc);
        }
        for (j, &(lo, hi)) in self.ranges.iter().enumerate() {
            y[j] = if hi > lo { prefix[hi] - prefix[lo] } else { 0.0 };
        }
    }

    /// Strongly connected components that carry at least one cycle.
    pub fn recurrent_classes(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut g = DiGraph::<(), ()>::with_capacity(n, 0);
        let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
        for (j, &(lo, hi)) in self.ranges.iter().enumerate() {
            for k in lo..hi {
                g.add_edge(nodes[j], nodes[k], ());
            }
        }
        let mut classes: Vec<Vec<usize>> = tarjan_scc(&g)
            .into_iter()
            .map(|c| {
                let mut v: Vec<usize> = c.into_iter().map(|ix| ix.index()).collect();
                v.sort_unstable();
                v
            })
            .filter(|c| c.len() > 1 || self.entry(c[0], c[0]) == 1)
            .collect();
        classes.sort();
        classes
    }

    /// Spectral radius with a relative accuracy target `rtol`.
    ///
    /// Each recurrent class is handled separately by power iteration on
    /// `M + I` restricted to the class; the shift makes the restriction
    /// primitive, and Collatz–Wielandt quotients bracket the Perron root.
    /// Returns the largest class radius (0 for a nilpotent matrix) and the
    /// width of its final bracket.
    pub fn spectral_radius(&self, rtol: f64) -> (f64, f64) {
        let n = self.size();
        let mut best = (0.0, 0.0);
        let mut prefix = Vec::with_capacity(n + 1);
        let mut x = vec![0.0; n];
        let mut y = vec![0.0; n];
        for class in self.recurrent_classes() {
            // an SCC that is a single cycle has radius exactly 1
            let edges_inside: usize = class
                .iter()
                .map(|&j| {
                    let (lo, hi) = self.ranges[j];
                    class.iter().filter(|&&k| k >= lo && k < hi).count()
                })
                .sum();
            if edges_inside == class.len() {
                if best.0 < 1.0 {
                    best = (1.0, 0.0);
                }
                continue;
            }
            let mut member = vec![false; n];
            for &j in &class {
                member[j] = true;
            }
            x.iter_mut().for_each(|v| *v = 0.0);
            for &j in &class {
                x[j] = 1.0;
            }
            let (mut lo_b, mut hi_b) = (0.0f64, f64::INFINITY);
            for _ in 0..MAX_ITER {
                self.apply(&x, &mut prefix, &mut y);
                let (mut qmin, mut qmax, mut norm) = (f64::INFINITY, 0.0f64, 0.0f64);
                for &j in &class {
                    let v = y[j] + x[j];
                    let q = v / x[j];
                    qmin = qmin.min(q);
                    qmax = qmax.max(q);
                    norm = norm.max(v);
                }
                lo_b = lo_b.max(qmin - 1.0);
                hi_b = hi_b.min(qmax - 1.0);
                for j in 0..n {
                    x[j] = if member[j] { (y[j] + x[j]) / norm } else { 0.0 };
                }
                if hi_b - lo_b <= rtol * hi_b.max(1.0) {
                    break;
                }
            }
            let rho = 0.5 * (lo_b + hi_b);
            if rho > best.0 {
                best = (rho, hi_b - lo_b);
            }
        }
        best
    }
}
