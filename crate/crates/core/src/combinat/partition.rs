use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer partition stored without trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts.into_iter().map(i64::from).collect()));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The `r x s` rectangle `(s^r)`.
    pub fn rectangle(r: usize, s: usize) -> Self {
        if s == 0 {
            return Self::empty();
        }
        Partition(vec![s as u32; r])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `λ_i` with zero beyond the length (0-based index).
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0) as usize;
        let cols = (0..width)
            .map(|j| self.0.iter().filter(|&&p| p as usize > j).count() as u32)
            .collect();
        Partition(cols)
    }

    /// Column heights, left to right.
    pub fn column_heights(&self) -> Vec<usize> {
        self.conjugate().0.into_iter().map(|c| c as usize).collect()
    }

    /// Whether the diagram of `other` is contained in the diagram of `self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    pub fn contains_cell(&self, row: usize, col: usize) -> bool {
        (col as u32) < self.part(row)
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all_of(n: u32) -> Vec<Partition> {
        fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions whose diagram fits inside `outer`.
    pub fn all_inside(outer: &Partition) -> Vec<Partition> {
        fn rec(outer: &Partition, row: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if row == outer.len() {
                let mut p = cur.clone();
                while p.last() == Some(&0) {
                    p.pop();
                }
                out.push(Partition(p));
                return;
            }
            for p in 0..=max.min(outer.part(row)) {
                cur.push(p);
                rec(outer, row + 1, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(outer, 0, u32::MAX, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<i64>) -> Result<Self> {
        if parts.iter().any(|&p| p < 0 || p > u32::MAX as i64) {
            return Err(Error::InvalidPartition(parts));
        }
        Partition::new(parts.into_iter().map(|p| p as u32).collect())
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strips_trailing_zeros() {
        let p = Partition::new(vec![3, 1, 0, 0]).unwrap();
        assert_eq!(p.parts(), &[3, 1]);
        assert_eq!(p.len(), 2);
        assert_eq!(p.size(), 4);
    }

    #[test]
    fn rejects_increasing() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::try_from(vec![2, -1]).is_err());
    }

    #[test]
    fn conjugate_and_counts() {
        let p = Partition::new(vec![3, 3, 2, 1, 1]).unwrap();
        assert_eq!(p.conjugate().parts(), &[5, 3, 2]);
        assert_eq!(p.conjugate().conjugate(), p);
        let counts: Vec<usize> = (0..=8).map(|n| Partition::all_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn serde_as_array() {
        let p = Partition::new(vec![3, 3, 2, 1, 1]).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[3,3,2,1,1]");
        let q: Partition = serde_json::from_str("[3,3,2,1,1,0]").unwrap();
        assert_eq!(p, q);
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }

    #[test]
    fn inside_rectangle() {
        // partitions inside a 2x2 box: 6 of them
        assert_eq!(Partition::all_inside(&Partition::rectangle(2, 2)).len(), 6);
    }
}
