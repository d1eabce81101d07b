use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point `(v1, v2)` of the closed parameter triangle `1 ≥ v1 ≥ v2 ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalValueVector {
    pub v1: f64,
    pub v2: f64,
}

impl CriticalValueVector {
    pub fn new(v1: f64, v2: f64) -> Result<Self> {
        if !(v1.is_finite() && v2.is_finite()) || v1 > 1.0 || v2 < 0.0 || v1 < v2 {
            return Err(Error::Domain(format!(
                "({v1}, {v2}) is not in the triangle 1 ≥ v1 ≥ v2 ≥ 0"
            )));
        }
        Ok(CriticalValueVector { v1, v2 })
    }

    pub fn is_degenerate(&self) -> bool {
        self.v1 == self.v2
    }

    /// The partial order `w ≪ w'`: `w1 ≤ w1'` and `w2 ≥ w2'`.
    pub fn precedes(&self, other: &CriticalValueVector) -> bool {
        self.v1 <= other.v1 && self.v2 >= other.v2
    }
}
