//! Itineraries, kneading data, the sawtooth embedding, and periodic orbit
//! combinatorics.

pub mod hat;
pub mod itinerary;
pub mod kneading;
pub mod orbit;

pub use hat::{hat_map, hat_parameters, hat_parameters_exact, hat_point, hat_point_exact};
pub use itinerary::{itinerary, Itinerary, Symbol};
pub use kneading::{kneading_data, KneadingData};
pub use orbit::{
    classify_fixed_point, count_negative_orbits, order_type_of_orbit, order_type_of_points, order_types,
    sawtooth_cycles, FixedPointKind, OrderType, SymbolicCycle,
};
