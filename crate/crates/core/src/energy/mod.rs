//! Combinatorial R-matrix, local coenergy `H̄` and intrinsic coenergy `D̄`.
//!
//! Three independent routes are kept side by side so they can check each
//! other: the `Φ = High∘σ` descent to `max(B)`, the right-split recursion, and
//! breadth-first oracles that propagate R and `H̄` over the full affine graph.

mod coenergy;
mod oracle;
mod phi;
mod typea;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::classical::Word;
use crate::combinat::Partition;
use crate::kr::{KrSpec, Session};

pub use coenergy::Pipeline;
pub use oracle::PairOracle;
pub use phi::{phi, Certificate, RResult};
pub use typea::{typea_promotion, typea_rank};

type TypeAKey = (usize, usize, usize, usize, usize);
type Rectangles = HashMap<(usize, usize, usize), Arc<Vec<Word>>>;

/// Shared state for energy computations: the crystal session plus memo tables.
#[derive(Debug, Default)]
pub struct Engine {
    session: Session,
    oracles: Mutex<HashMap<(KrSpec, KrSpec), Arc<PairOracle>>>,
    typea_h: Mutex<HashMap<TypeAKey, Arc<HashMap<Partition, i64>>>>,
    rectangles: Mutex<Rectangles>,
}

impl Engine {
    pub fn new(session: Session) -> Self {
        Engine { session, ..Default::default() }
    }

    pub fn session(&self) -> &Session {
        &self.session
    }
}
