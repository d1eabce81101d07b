//! Topological entropy, kneading data and bone loci for real bimodal
//! interval maps of shape `+-+` and the stunted sawtooth family.
//!
//! Parameters live in the triangle `1 ≥ v1 ≥ v2 ≥ 0` of critical values.
//! Both the cubic family `f_v` and the stunted sawtooth family `S_w` are
//! indexed by it, which is what makes their entropy pictures comparable.

pub mod bones;
pub mod cli;
pub mod entropy;
pub mod error;
pub mod isentropes;
pub mod maps;
pub mod numeric;
pub mod svg;
pub mod symbolic;
pub mod tolerances;

pub use error::{Error, Result};
