use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Polynomial in `q` with integer coefficients and nonnegative exponents.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QPolynomial {
    coeffs: BTreeMap<u32, i64>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: u32, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    pub fn add_term(&mut self, exp: u32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.coeffs.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: u32) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: u32) -> Self {
        QPolynomial { coeffs: self.coeffs.iter().map(|(&e, &c)| (e + k, c)).collect() }
    }

    /// Substitute `q ↦ q^{num/den}`; every exponent times `num` must be divisible by `den`.
    pub fn substitute(&self, num: u32, den: u32) -> Result<Self> {
        let mut out = Self::zero();
        for (&e, &c) in &self.coeffs {
            let scaled = e as u64 * num as u64;
            if den == 0 || !scaled.is_multiple_of(den as u64) {
                return Err(Error::FractionalExponent { num: scaled as i64, den: den as i64 });
            }
            out.add_term((scaled / den as u64) as u32, c);
        }
        Ok(out)
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.coeffs.values().all(|&c| c >= 0)
    }
}

/// `num / den` as a nonnegative integer exponent, or an error when it is not one.
pub fn exact_exponent(num: i64, den: i64) -> Result<u32> {
    if den == 0 || num % den != 0 || num / den < 0 {
        return Err(Error::FractionalExponent { num, den });
    }
    Ok((num / den) as u32)
}

impl Add for &QPolynomial {
    type Output = QPolynomial;

    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&QPolynomial> for QPolynomial {
    fn add_assign(&mut self, rhs: &QPolynomial) {
        for (&e, &c) in &rhs.coeffs {
            self.add_term(e, c);
        }
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = QPolynomial::zero();
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (&e, &c)) in self.coeffs.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            let a = c.abs();
            match (e, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "q")?,
                (1, _) => write!(f, "{a}q")?,
                (_, 1) => write!(f, "q^{e}")?,
                _ => write!(f, "{a}q^{e}")?,
            }
        }
        Ok(())
    }
}
