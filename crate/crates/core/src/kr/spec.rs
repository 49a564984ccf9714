use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classical::ClassicalType;
use crate::combinat::{skew_tileable, Diamond, Partition};
use crate::error::{Error, Result};

/// Affine family of the representative algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "A1")]
    A,
    #[serde(rename = "C1")]
    C,
    #[serde(rename = "D1")]
    D,
}

impl Family {
    pub fn code(self) -> u8 {
        match self {
            Family::A => 0,
            Family::C => 1,
            Family::D => 2,
        }
    }

    pub fn from_code(c: u8) -> Option<Family> {
        [Family::A, Family::C, Family::D].into_iter().find(|f| f.code() == c)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A1",
            Family::C => "C1",
            Family::D => "D1",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A1" | "A" | "a1" => Ok(Family::A),
            "C1" | "C" | "c1" => Ok(Family::C),
            "D1" | "D" | "d1" => Ok(Family::D),
            other => Err(Error::OutOfScope(format!(
                "algebra family {other:?}; supported families are A1, C1 and D1"
            ))),
        }
    }
}

/// Letters are packed five bits at a time, which caps `|letter|` at 15.
pub const MAX_LETTER: usize = 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub family: Family,
    pub n: u8,
}

impl AlgebraSpec {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        let min = match family {
            Family::A => 1,
            Family::C => 2,
            Family::D => 4,
        };
        let letters = if family == Family::A { n + 1 } else { n };
        if n < min {
            return Err(Error::InvalidSpec(format!("{family} needs n >= {min}, got {n}")));
        }
        if letters > MAX_LETTER {
            return Err(Error::InvalidSpec(format!("rank {n} exceeds the supported maximum")));
        }
        Ok(AlgebraSpec { family, n: n as u8 })
    }

    pub fn n(self) -> usize {
        self.n as usize
    }

    pub fn diamond(self) -> Diamond {
        match self.family {
            Family::A => Diamond::Empty,
            Family::C => Diamond::HorizontalDomino,
            Family::D => Diamond::VerticalDomino,
        }
    }

    pub fn classical(self) -> ClassicalType {
        match self.family {
            Family::A => ClassicalType::A { letters: self.n + 1 },
            Family::C => ClassicalType::C { n: self.n },
            Family::D => ClassicalType::D { n: self.n },
        }
    }

    /// Affine node adjacent to 0 among the classical colors.
    pub fn zero_neighbours(self) -> Vec<usize> {
        match self.family {
            Family::A if self.n == 1 => vec![1],
            Family::A => vec![1, self.n()],
            Family::C => vec![1],
            Family::D => vec![2],
        }
    }

    /// Classical weight change of `f_0`, i.e. `θ` in ε-coordinates.
    pub fn theta(self) -> Vec<i32> {
        let dim = self.classical().weight_dim();
        let mut t = vec![0; dim];
        match self.family {
            Family::A => {
                t[0] = 1;
                t[dim - 1] = -1;
            }
            Family::C => t[0] = 2,
            Family::D => {
                t[0] = 1;
                t[1] = 1;
            }
        }
        t
    }

    pub fn kr(self, r: usize, s: usize) -> Result<KrSpec> {
        KrSpec::new(self, r, s)
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.family {
            Family::A => 'A',
            Family::C => 'C',
            Family::D => 'D',
        };
        write!(f, "{letter}_{}^(1)", self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KrSpec {
    pub alg: AlgebraSpec,
    pub r: u8,
    pub s: u8,
}

impl KrSpec {
    pub fn new(alg: AlgebraSpec, r: usize, s: usize) -> Result<Self> {
        let max_r = match alg.family {
            Family::A | Family::C => alg.n(),
            Family::D => alg.n() - 2,
        };
        if r == 0 || r > max_r {
            return Err(Error::InvalidSpec(format!(
                "node r={r} is outside 1..={max_r} for {alg} (spin nodes are not supported)"
            )));
        }
        if s == 0 || s > 64 {
            return Err(Error::InvalidSpec(format!("width s={s} must lie in 1..=64")));
        }
        if r * s > 25 {
            return Err(Error::Guard { what: format!("B^{{{r},{s}}}"), needed: (r * s) as u128, limit: 25 });
        }
        Ok(KrSpec { alg, r: r as u8, s: s as u8 })
    }

    pub fn r(self) -> usize {
        self.r as usize
    }

    pub fn s(self) -> usize {
        self.s as usize
    }

    /// `rs`, the contribution to `|B|`.
    pub fn boxes(self) -> usize {
        self.r() * self.s()
    }

    pub fn rectangle(self) -> Partition {
        Partition::rectangle(self.r(), self.s())
    }
}

impl fmt::Display for KrSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B^{{{},{}}} of {}", self.r, self.s, self.alg)
    }
}

/// Classical highest weights of `B^{r,s}`, largest first.
pub fn kr_components(spec: KrSpec) -> Vec<Partition> {
    let rect = spec.rectangle();
    let mut out = match spec.alg.family {
        Family::A => vec![rect],
        Family::C if spec.r() == spec.alg.n() => vec![rect],
        Family::C | Family::D => {
            let d = spec.alg.diamond();
            Partition::all_inside(&rect)
                .into_iter()
                .filter(|lam| skew_tileable(&rect, lam, d).expect("domino diamond"))
                .collect()
        }
    };
    out.sort_by(|a, b| b.size().cmp(&a.size()).then_with(|| b.cmp(a)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn component_lists() {
        let d6 = AlgebraSpec::new(Family::D, 6).unwrap();
        assert_eq!(kr_components(d6.kr(2, 2).unwrap()), vec![p(&[2, 2]), p(&[1, 1]), p(&[])]);
        assert_eq!(kr_components(d6.kr(4, 3).unwrap()).len(), 10);
        let c3 = AlgebraSpec::new(Family::C, 3).unwrap();
        assert_eq!(kr_components(c3.kr(1, 2).unwrap()), vec![p(&[2]), p(&[])]);
        assert_eq!(kr_components(c3.kr(3, 2).unwrap()), vec![p(&[2, 2, 2])]);
        let a3 = AlgebraSpec::new(Family::A, 3).unwrap();
        assert_eq!(kr_components(a3.kr(2, 3).unwrap()), vec![p(&[3, 3])]);
    }

    #[test]
    fn spec_validation() {
        assert!(AlgebraSpec::new(Family::D, 3).is_err());
        assert!(AlgebraSpec::new(Family::C, 1).is_err());
        assert!(AlgebraSpec::new(Family::A, 15).is_err());
        let d4 = AlgebraSpec::new(Family::D, 4).unwrap();
        assert!(d4.kr(3, 1).is_err());
        assert!(d4.kr(0, 1).is_err());
        assert!(d4.kr(2, 0).is_err());
        assert_eq!("D1".parse::<Family>().unwrap(), Family::D);
        assert!(matches!("B1".parse::<Family>(), Err(Error::OutOfScope(_))));
        assert_eq!(d4.to_string(), "D_4^(1)");
    }
}
