#![allow(dead_code)]

use bimodal::maps::{CriticalValueVector, CubicMap, StuntedSawtooth};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniform point of the triangle with `v1 - v2 > gap`.
pub fn random_v(rng: &mut ChaCha8Rng, gap: f64) -> (f64, f64) {
    loop {
        let (a, b): (f64, f64) = (rng.gen(), rng.gen());
        let (v1, v2) = if a > b { (a, b) } else { (b, a) };
        if v1 - v2 > gap {
            return (v1, v2);
        }
    }
}

pub fn cubic(v1: f64, v2: f64) -> CubicMap {
    CubicMap::from_critical_values(CriticalValueVector::new(v1, v2).unwrap()).unwrap()
}

pub fn saw(w1: f64, w2: f64) -> StuntedSawtooth {
    StuntedSawtooth::new(CriticalValueVector::new(w1, w2).unwrap()).unwrap()
}
