//! Kashiwara-Nakashima tableaux: text form, admissibility and reading words.
//!
//! Columns are listed left to right; each column is stored from the base
//! row outward, so the smallest letter comes first. The reading word takes
//! columns right to left and each column in stored order.

use std::fmt;

use super::letter::{ClassicalType, Letter, Word};
use crate::combinat::Partition;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KnTableau {
    columns: Vec<Vec<Letter>>,
}

impl KnTableau {
    /// Builds and validates a tableau from signed integer columns.
    pub fn new(ty: ClassicalType, columns: Vec<Vec<Letter>>) -> Result<Self> {
        let t = KnTableau { columns };
        t.validate(ty)?;
        Ok(t)
    }

    pub fn from_ints(ty: ClassicalType, columns: &[Vec<i64>]) -> Result<Self> {
        let mut cols = Vec::with_capacity(columns.len());
        for c in columns {
            let mut col = Vec::with_capacity(c.len());
            for &v in c {
                let x = i8::try_from(v)
                    .ok()
                    .map(Letter)
                    .filter(|&x| ty.contains(x))
                    .ok_or_else(|| Error::InvalidLetter { letter: v, ty: ty.to_string() })?;
                col.push(x);
            }
            cols.push(col);
        }
        Self::new(ty, cols)
    }

    /// Parses `[[1,3,-3],[2]]`.
    pub fn parse(ty: ClassicalType, text: &str) -> Result<Self> {
        let cols: Vec<Vec<i64>> = serde_json::from_str(text.trim())
            .map_err(|e| Error::Parse(format!("tableau {text:?}: {e}")))?;
        Self::from_ints(ty, &cols)
    }

    /// Cuts a reading word into columns of the given shape.
    pub fn from_word(ty: ClassicalType, word: &[Letter], shape: &Partition) -> Result<Self> {
        let heights = shape.column_heights();
        let total: usize = heights.iter().sum();
        if total != word.len() {
            return Err(Error::Parse(format!(
                "word of length {} does not fill shape {shape}",
                word.len()
            )));
        }
        let mut cols = vec![Vec::new(); heights.len()];
        let mut pos = 0;
        for (j, &h) in heights.iter().enumerate().rev() {
            cols[j] = word[pos..pos + h].to_vec();
            pos += h;
        }
        Self::new(ty, cols)
    }

    pub fn columns(&self) -> &[Vec<Letter>] {
        &self.columns
    }

    pub fn shape(&self) -> Partition {
        let heights: Vec<u32> = self.columns.iter().map(|c| c.len() as u32).collect();
        Partition::new(heights).expect("validated heights").conjugate()
    }

    pub fn reading_word(&self) -> Word {
        self.columns.iter().rev().flatten().copied().collect()
    }

    pub fn to_ints(&self) -> Vec<Vec<i64>> {
        self.columns.iter().map(|c| c.iter().map(|x| x.0 as i64).collect()).collect()
    }

    pub fn render(&self) -> String {
        self.to_string()
    }

    fn validate(&self, ty: ClassicalType) -> Result<()> {
        for col in &self.columns {
            if col.is_empty() {
                return Err(Error::Parse("empty column".into()));
            }
            for &x in col {
                ty.check_letter(x)?;
            }
            check_column(ty, col)?;
        }
        for w in self.columns.windows(2) {
            if w[1].len() > w[0].len() {
                return Err(Error::Parse(format!(
                    "column heights {} then {} are not weakly decreasing",
                    w[0].len(),
                    w[1].len()
                )));
            }
            for (row, (&a, &b)) in w[0].iter().zip(&w[1]).enumerate() {
                let (ra, rb) = (ty.rank_of(a), ty.rank_of(b));
                if ra > rb || (ra == rb && a != b) {
                    return Err(Error::Parse(format!("row {} decreases: {a} before {b}", row + 1)));
                }
            }
        }
        Ok(())
    }
}

/// Column admissibility: strictly increasing (n, n̄ adjacent allowed in type D),
/// distinct letters, and `x ≥ p + (N+1−q)` whenever `x` sits at position `p`
/// and `x̄` at position `q`.
pub fn check_column(ty: ClassicalType, col: &[Letter]) -> Result<()> {
    let bad = |reason: String| Error::InadmissibleColumn {
        column: col.iter().map(|x| x.0 as i64).collect(),
        reason,
    };
    for (k, w) in col.windows(2).enumerate() {
        let (ra, rb) = (ty.rank_of(w[0]), ty.rank_of(w[1]));
        if ra > rb || (ra == rb && w[0] == w[1]) {
            return Err(bad(format!("entries {} and {} are not increasing", k + 1, k + 2)));
        }
    }
    for (k, x) in col.iter().enumerate() {
        if col[..k].contains(x) {
            return Err(bad(format!("letter {x} repeated")));
        }
    }
    let big_n = col.len();
    for (p0, &x) in col.iter().enumerate() {
        if x.is_barred() {
            continue;
        }
        if let Some(q0) = col.iter().position(|&y| y == x.bar()) {
            let (p, q) = (p0 + 1, q0 + 1);
            let need = p + big_n + 1 - q;
            if x.index() < need {
                return Err(bad(format!("{} >= {p}+({big_n}+1-{q}) = {need} fails", x.index())));
            }
        }
    }
    Ok(())
}

impl fmt::Display for KnTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (j, col) in self.columns.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (k, x) in col.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}
