//! Schützenberger promotion on rectangular tableaux over `{1,…,N}`.

use crate::classical::{Letter, Word};
use crate::error::{Error, Result};

/// `pr` on the reading word of an `r × s` rectangle over `N` letters:
/// remove the letters `N`, slide the holes to the upper left by reverse
/// jeu de taquin, add one to every entry and fill the holes with 1.
pub fn promotion(word: &[Letter], r: usize, s: usize, big_n: i8) -> Result<Word> {
    if word.len() != r * s {
        return Err(Error::Precondition(format!(
            "promotion needs an {r}x{s} rectangle, got {} letters",
            word.len()
        )));
    }
    // grid[i][j], row i from the top, column j from the left
    let mut grid: Vec<Vec<Option<i8>>> = vec![vec![None; s]; r];
    for j in 0..s {
        let col = &word[(s - 1 - j) * r..(s - j) * r];
        for (i, x) in col.iter().enumerate() {
            grid[i][j] = Some(x.0);
        }
    }
    let holes: Vec<usize> = (0..s).filter(|&j| grid[r - 1][j] == Some(big_n)).collect();
    for &j in &holes {
        grid[r - 1][j] = None;
    }
    for &j0 in &holes {
        let (mut i, mut j) = (r - 1, j0);
        loop {
            let above = if i > 0 { grid[i - 1][j] } else { None };
            let left = if j > 0 { grid[i][j - 1] } else { None };
            match (above, left) {
                (None, None) => break,
                (Some(a), l) if l.is_none_or(|l| a >= l) => {
                    grid[i][j] = Some(a);
                    grid[i - 1][j] = None;
                    i -= 1;
                }
                (_, Some(l)) => {
                    grid[i][j] = Some(l);
                    grid[i][j - 1] = None;
                    j -= 1;
                }
                (Some(_), None) => unreachable!(),
            }
        }
    }
    let mut out = Vec::with_capacity(r * s);
    for j in (0..s).rev() {
        for row in &grid {
            out.push(Letter(row[j].map_or(1, |v| v + 1)));
        }
    }
    Ok(out)
}
