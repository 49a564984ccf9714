use std::fmt;

use serde::{Deserialize, Serialize};

use super::Partition;
use crate::error::{Error, Result};

/// Tile attached to the way node 0 meets the rest of the Dynkin diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Diamond {
    Empty,
    VerticalDomino,
    HorizontalDomino,
    Box,
}

impl Diamond {
    /// Number of cells `|◇|`; `None` for the empty diamond.
    pub fn cells(self) -> Option<u32> {
        match self {
            Diamond::Empty => None,
            Diamond::VerticalDomino | Diamond::HorizontalDomino => Some(2),
            Diamond::Box => Some(1),
        }
    }
}

impl fmt::Display for Diamond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Diamond::Empty => "empty",
            Diamond::VerticalDomino => "vertical-domino",
            Diamond::HorizontalDomino => "horizontal-domino",
            Diamond::Box => "box",
        })
    }
}

/// Whether the skew diagram `outer / inner` can be tiled by copies of `diamond`.
///
/// Exhaustive placement: the first uncovered cell in row-major order must be
/// the top-left cell of whichever tile covers it, so every placement is tried.
pub fn skew_tileable(outer: &Partition, inner: &Partition, diamond: Diamond) -> Result<bool> {
    if diamond == Diamond::Empty {
        return Err(Error::EmptyDiamond);
    }
    if !outer.contains(inner) {
        return Ok(false);
    }
    let rows = outer.len();
    let mut covered: Vec<Vec<bool>> = (0..rows)
        .map(|i| (0..outer.part(i) as usize).map(|j| inner.contains_cell(i, j)).collect())
        .collect();
    Ok(place(&mut covered, diamond))
}

fn place(covered: &mut [Vec<bool>], diamond: Diamond) -> bool {
    let first = covered
        .iter()
        .enumerate()
        .find_map(|(i, row)| row.iter().position(|c| !c).map(|j| (i, j)));
    let Some((i, j)) = first else {
        return true;
    };
    let mut shapes: Vec<(usize, usize)> = Vec::with_capacity(2);
    match diamond {
        Diamond::Box => shapes.push((i, j)),
        Diamond::VerticalDomino => shapes.push((i + 1, j)),
        Diamond::HorizontalDomino => shapes.push((i, j + 1)),
        Diamond::Empty => unreachable!(),
    }
    for (i2, j2) in shapes {
        let free = covered.get(i2).and_then(|r| r.get(j2)).map(|c| !c).unwrap_or(false);
        if !free {
            continue;
        }
        covered[i][j] = true;
        covered[i2][j2] = true;
        if place(covered, diamond) {
            covered[i][j] = false;
            covered[i2][j2] = false;
            return true;
        }
        covered[i][j] = false;
        covered[i2][j2] = false;
    }
    false
}

/// `P^◇_N`: partitions of `n` whose diagram is tiled by `diamond`.
pub fn tiled_partitions(n: u32, diamond: Diamond) -> Result<Vec<Partition>> {
    if diamond == Diamond::Empty {
        return Err(Error::EmptyDiamond);
    }
    let empty = Partition::empty();
    let mut out = Vec::new();
    for p in Partition::all_of(n) {
        if skew_tileable(&p, &empty, diamond)? {
            out.push(p);
        }
    }
    Ok(out)
}
