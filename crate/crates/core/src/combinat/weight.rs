use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use super::Partition;

/// Classical weight in ε-coordinates. Entries may be negative.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(pub Vec<i32>);

impl WeightVector {
    pub fn zero(dim: usize) -> Self {
        WeightVector(vec![0; dim])
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `|λ|`, the coordinate sum.
    pub fn size(&self) -> i32 {
        self.0.iter().sum()
    }

    /// Coordinates together with whether they form a partition.
    pub fn lambda_of(&self) -> (Vec<i32>, bool) {
        let ok = self.0.iter().all(|&c| c >= 0) && self.0.windows(2).all(|w| w[0] >= w[1]);
        (self.0.clone(), ok)
    }

    pub fn to_partition(&self) -> Option<Partition> {
        match self.lambda_of() {
            (v, true) => Partition::new(v.into_iter().map(|c| c as u32).collect()).ok(),
            _ => None,
        }
    }

    pub fn from_partition(p: &Partition, dim: usize) -> Self {
        WeightVector((0..dim).map(|i| p.part(i) as i32).collect())
    }

    /// `(λ_1,…,λ_n) ↦ (−λ_n,…,−λ_1)`.
    pub fn flip(&self) -> Self {
        WeightVector(self.0.iter().rev().map(|c| -c).collect())
    }
}

impl Add for &WeightVector {
    type Output = WeightVector;

    fn add(self, rhs: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &WeightVector {
    type Output = WeightVector;

    fn sub(self, rhs: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
