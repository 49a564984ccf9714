use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinat::WeightVector;
use crate::error::{Error, Result};

/// A letter of the vector representation: `k` for unbarred `k`, `-k` for `k̄`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(transparent)]
pub struct Letter(pub i8);

impl Letter {
    pub fn value(self) -> i8 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_barred(self) -> bool {
        self.0 < 0
    }

    pub fn bar(self) -> Letter {
        Letter(-self.0)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type Word = Vec<Letter>;

/// Kashiwara operator selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Op {
    E,
    F,
}

/// Classical Cartan types realized on the vector representation.
///
/// `A { letters: N }` is `gl_N` on `{1,…,N}` with colors `1..N-1`;
/// `C { n }` and `D { n }` use `{1,…,n, n̄,…,1̄}` with colors `1..n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassicalType {
    A { letters: u8 },
    C { n: u8 },
    D { n: u8 },
}

impl fmt::Display for ClassicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassicalType::A { letters } => write!(f, "gl_{letters}"),
            ClassicalType::C { n } => write!(f, "C_{n}"),
            ClassicalType::D { n } => write!(f, "D_{n}"),
        }
    }
}

impl ClassicalType {
    /// Largest color; colors run over `1..=max_color`.
    pub fn max_color(self) -> usize {
        match self {
            ClassicalType::A { letters } => letters as usize - 1,
            ClassicalType::C { n } | ClassicalType::D { n } => n as usize,
        }
    }

    pub fn colors(self) -> std::ops::RangeInclusive<usize> {
        1..=self.max_color()
    }

    /// Number of ε-coordinates.
    pub fn weight_dim(self) -> usize {
        match self {
            ClassicalType::A { letters } => letters as usize,
            ClassicalType::C { n } | ClassicalType::D { n } => n as usize,
        }
    }

    fn bound(self) -> i8 {
        self.weight_dim() as i8
    }

    pub fn contains(self, x: Letter) -> bool {
        let v = x.0;
        match self {
            ClassicalType::A { .. } => v >= 1 && v <= self.bound(),
            _ => v != 0 && v.abs() <= self.bound(),
        }
    }

    pub fn check_letter(self, x: Letter) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::InvalidLetter { letter: x.0 as i64, ty: self.to_string() })
        }
    }

    pub fn check_color(self, i: usize) -> Result<()> {
        if (1..=self.max_color()).contains(&i) {
            Ok(())
        } else {
            Err(Error::InvalidColor { color: i, ty: self.to_string() })
        }
    }

    /// `f_i` on a single letter (unchecked).
    #[inline]
    pub fn raw_f(self, i: usize, x: Letter) -> Option<Letter> {
        let v = x.0 as i32;
        let i = i as i32;
        match self {
            ClassicalType::A { .. } => (v == i).then(|| Letter((i + 1) as i8)),
            ClassicalType::C { n } => {
                let n = n as i32;
                if i < n {
                    if v == i {
                        Some(Letter((i + 1) as i8))
                    } else if v == -(i + 1) {
                        Some(Letter(-i as i8))
                    } else {
                        None
                    }
                } else {
                    (v == n).then(|| Letter(-n as i8))
                }
            }
            ClassicalType::D { n } => {
                let n = n as i32;
                if i < n {
                    if v == i {
                        Some(Letter((i + 1) as i8))
                    } else if v == -(i + 1) {
                        Some(Letter(-i as i8))
                    } else {
                        None
                    }
                } else if v == n - 1 {
                    Some(Letter(-n as i8))
                } else if v == n {
                    Some(Letter(-(n - 1) as i8))
                } else {
                    None
                }
            }
        }
    }

    /// `e_i` on a single letter (unchecked).
    #[inline]
    pub fn raw_e(self, i: usize, x: Letter) -> Option<Letter> {
        let v = x.0 as i32;
        let i = i as i32;
        match self {
            ClassicalType::A { .. } => (v == i + 1).then_some(Letter(i as i8)),
            ClassicalType::C { n } => {
                let n = n as i32;
                if i < n {
                    if v == i + 1 {
                        Some(Letter(i as i8))
                    } else if v == -i {
                        Some(Letter(-(i + 1) as i8))
                    } else {
                        None
                    }
                } else {
                    (v == -n).then_some(Letter(n as i8))
                }
            }
            ClassicalType::D { n } => {
                let n = n as i32;
                if i < n {
                    if v == i + 1 {
                        Some(Letter(i as i8))
                    } else if v == -i {
                        Some(Letter(-(i + 1) as i8))
                    } else {
                        None
                    }
                } else if v == -n {
                    Some(Letter((n - 1) as i8))
                } else if v == -(n - 1) {
                    Some(Letter(n as i8))
                } else {
                    None
                }
            }
        }
    }

    /// `(ε_i, φ_i)` of a single letter; each is 0 or 1 on the vector representation.
    #[inline]
    pub fn letter_signs(self, i: usize, x: Letter) -> (u32, u32) {
        (self.raw_e(i, x).is_some() as u32, self.raw_f(i, x).is_some() as u32)
    }

    /// Checked single-letter operator.
    pub fn letter_apply(self, op: Op, i: usize, x: Letter) -> Result<Option<Letter>> {
        self.check_color(i)?;
        self.check_letter(x)?;
        Ok(match op {
            Op::E => self.raw_e(i, x),
            Op::F => self.raw_f(i, x),
        })
    }

    pub fn alphabet(self) -> Vec<Letter> {
        let b = self.bound();
        match self {
            ClassicalType::A { .. } => (1..=b).map(Letter).collect(),
            _ => (1..=b).chain((1..=b).rev().map(|k| -k)).map(Letter).collect(),
        }
    }

    /// Position in the alphabet order; in type D `n` and `n̄` share a rank.
    pub fn rank_of(self, x: Letter) -> i32 {
        let v = x.0 as i32;
        match self {
            ClassicalType::A { .. } => v,
            ClassicalType::C { n } => {
                if v > 0 {
                    v
                } else {
                    2 * n as i32 + 1 + v
                }
            }
            ClassicalType::D { n } => {
                let n = n as i32;
                if v > 0 {
                    v
                } else if v == -n {
                    n
                } else {
                    2 * n + v
                }
            }
        }
    }

    pub fn add_letter_weight(self, x: Letter, w: &mut [i32]) {
        let k = x.index() - 1;
        if x.is_barred() {
            w[k] -= 1;
        } else {
            w[k] += 1;
        }
    }

    pub fn weight_of(self, word: &[Letter]) -> WeightVector {
        let mut w = vec![0; self.weight_dim()];
        for &x in word {
            self.add_letter_weight(x, &mut w);
        }
        WeightVector(w)
    }

    /// Simple root `α_i` in ε-coordinates.
    pub fn simple_root(self, i: usize) -> Vec<i32> {
        let mut a = vec![0; self.weight_dim()];
        let n = self.weight_dim();
        match self {
            ClassicalType::C { .. } if i == n => a[n - 1] = 2,
            ClassicalType::D { .. } if i == n => {
                a[n - 2] = 1;
                a[n - 1] = 1;
            }
            _ => {
                a[i - 1] = 1;
                a[i] = -1;
            }
        }
        a
    }

    /// `⟨wt, α_i^∨⟩`.
    pub fn pairing(self, wt: &[i32], i: usize) -> i32 {
        let n = self.weight_dim();
        match self {
            ClassicalType::C { .. } if i == n => wt[n - 1],
            ClassicalType::D { .. } if i == n => wt[n - 2] + wt[n - 1],
            _ => wt[i - 1] - wt[i],
        }
    }
}
