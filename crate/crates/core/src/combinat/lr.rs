use super::Partition;

/// Littlewood-Richardson coefficient `c^ν_{λμ}`, counted as the number of
/// LR tableaux of shape `ν/λ` and content `μ`.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.size() + mu.size() != nu.size() || !nu.contains(lambda) || !nu.contains(mu) {
        return 0;
    }
    // cells of ν/λ in reading order: rows top to bottom, each row right to left
    let cells: Vec<(usize, usize)> = (0..nu.len())
        .flat_map(|i| (lambda.part(i) as usize..nu.part(i) as usize).rev().map(move |j| (i, j)))
        .collect();
    let mut filling = vec![vec![0u32; nu.part(0) as usize]; nu.len()];
    let mut counts = vec![0u32; mu.len() + 1];
    let mut total = 0;
    fill(lambda, mu, &cells, 0, &mut filling, &mut counts, &mut total);
    total
}

fn fill(
    lambda: &Partition,
    mu: &Partition,
    cells: &[(usize, usize)],
    k: usize,
    filling: &mut [Vec<u32>],
    counts: &mut [u32],
    total: &mut u64,
) {
    if k == cells.len() {
        *total += 1;
        return;
    }
    let (i, j) = cells[k];
    let skew = |r: usize, c: usize| !lambda.contains_cell(r, c);
    // weakly increasing rows: bounded by the (already filled) right neighbour
    let right_bound = if j + 1 < filling[i].len() && filling[i][j + 1] != 0 && skew(i, j + 1) {
        filling[i][j + 1]
    } else {
        mu.len() as u32
    };
    // strictly increasing columns
    let above = if i > 0 && skew(i - 1, j) { filling[i - 1][j] } else { 0 };
    for v in (above + 1)..=right_bound {
        let vi = v as usize;
        if counts[vi] >= mu.part(vi - 1) {
            continue;
        }
        if vi > 1 && counts[vi] + 1 > counts[vi - 1] {
            continue;
        }
        counts[vi] += 1;
        filling[i][j] = v;
        fill(lambda, mu, cells, k + 1, filling, counts, total);
        filling[i][j] = 0;
        counts[vi] -= 1;
    }
}
