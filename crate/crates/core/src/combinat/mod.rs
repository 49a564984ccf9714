//! Partitions, tilings, Littlewood-Richardson coefficients, weights and
//! exact `q`-polynomials.

mod lr;
mod partition;
mod qpoly;
mod tiling;
mod weight;

pub use lr::lr_coefficient;
pub use partition::Partition;
pub use qpoly::{exact_exponent, QPolynomial};
pub use tiling::{skew_tileable, tiled_partitions, Diamond};
pub use weight::WeightVector;
