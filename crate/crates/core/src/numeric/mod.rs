pub mod ddouble;
pub mod dyadic;
pub mod roots;

pub use ddouble::DDouble;
pub use dyadic::Dyadic;
