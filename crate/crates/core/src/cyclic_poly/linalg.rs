//! Dense Gaussian elimination over GF(p).

use crate::arith::inv_mod_prime;

/// Row-reduces `rows` in place and returns the rank.
pub fn row_reduce(rows: &mut [Vec<u64>], p: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod_prime(rows[rank][col], p);
        for v in rows[rank].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                *v = (*v + p - factor * pv % p) % p;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

pub fn rank(rows: &[Vec<u64>], p: u64) -> usize {
    row_reduce(&mut rows.to_vec(), p)
}

/// Solves `Σ_j x_j · columns[j] = rhs`; `None` if inconsistent or the
/// columns are dependent.
pub fn solve_columns(columns: &[Vec<u64>], rhs: &[u64], p: u64) -> Option<Vec<u64>> {
    let nvars = columns.len();
    let mut aug: Vec<Vec<u64>> = (0..rhs.len())
        .map(|i| {
            columns
                .iter()
                .map(|c| c[i])
                .chain(std::iter::once(rhs[i]))
                .collect()
        })
        .collect();
    let r = row_reduce(&mut aug, p);
    if r != nvars {
        return None;
    }
    // Reduced echelon form with full column rank: pivots sit on the diagonal.
    if aug.iter().skip(nvars).any(|row| row[nvars] != 0) {
        return None;
    }
    Some((0..nvars).map(|i| aug[i][nvars]).collect())
}
