//! Kirillov-Reshetikhin crystals for `A_n^(1)`, `C_n^(1)` and `D_n^(1)`, the
//! Dynkin flip, combinatorial R-matrices, coenergy and one-dimensional sums.

pub mod classical;
pub mod cli;
pub mod combinat;
pub mod energy;
pub mod error;
pub mod kr;
pub mod xk;

pub use error::{Error, Result};
