//! Independent Betti-number oracle via Z/2 Gaussian elimination.
//!
//! Deliberately shares no code with the reduction routes: simplices are
//! enumerated directly from the weight matrix at a fixed scale and the two
//! boundary ranks are computed by dense bitset elimination. Exponential in
//! the worst case, hence the hard cap on the point count.

use crate::error::{invalid, Result};
use crate::geometry::DistanceMatrix;

/// Largest matrix size [`betti_oracle`] accepts.
pub const BETTI_ORACLE_MAX_POINTS: usize = 14;

/// `k`-th Betti number over Z/2 of the clique complex at scale `alpha`
/// (simplices whose pairwise weights are all `≤ alpha`).
///
/// A negative `alpha` yields the empty complex, so every Betti number is 0.
pub fn betti_oracle(weights: &DistanceMatrix, alpha: f64, k: usize) -> Result<usize> {
    if weights.len() > BETTI_ORACLE_MAX_POINTS {
        return Err(invalid(format!(
            "betti_oracle caps at {BETTI_ORACLE_MAX_POINTS} points, got {}",
            weights.len()
        )));
    }
    if alpha.is_nan() {
        return Err(invalid("betti_oracle scale must not be NaN"));
    }
    if alpha < 0.0 {
        return Ok(0);
    }

    let k_simplices = enumerate(weights, alpha, k + 1);
    let faces = if k == 0 {
        Vec::new()
    } else {
        enumerate(weights, alpha, k)
    };
    let cofaces = enumerate(weights, alpha, k + 2);

    let rank_k = boundary_rank(&k_simplices, &faces);
    let rank_k1 = boundary_rank(&cofaces, &k_simplices);
    Ok(k_simplices.len() - rank_k - rank_k1)
}

/// All `size`-vertex simplices present at `alpha`, in lexicographic order.
fn enumerate(weights: &DistanceMatrix, alpha: f64, size: usize) -> Vec<Vec<u32>> {
    let n = weights.len() as u32;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn grow(
        weights: &DistanceMatrix,
        alpha: f64,
        size: usize,
        n: u32,
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        let start = current.last().map_or(0, |&v| v + 1);
        for v in start..n {
            if current
                .iter()
                .all(|&u| weights.get(u as usize, v as usize) <= alpha)
            {
                current.push(v);
                grow(weights, alpha, size, n, current, out);
                current.pop();
            }
        }
    }
    grow(weights, alpha, size, n, &mut current, &mut out);
    out
}

/// Rank over Z/2 of the boundary matrix sending `columns` (s-vertex lists)
/// to `rows` ((s-1)-vertex lists). Zero when either side is empty.
fn boundary_rank(columns: &[Vec<u32>], rows: &[Vec<u32>]) -> usize {
    if columns.is_empty() || rows.is_empty() {
        return 0;
    }
    let words = rows.len().div_ceil(64);
    let mut face = Vec::with_capacity(columns[0].len() - 1);
    let mut reduced: Vec<Vec<u64>> = Vec::new();
    let mut rank = 0;
    for col_verts in columns {
        let mut col = vec![0u64; words];
        for skip in 0..col_verts.len() {
            face.clear();
            face.extend(
                col_verts
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v),
            );
            let row = rows.binary_search(&face).expect("face must be present");
            col[row / 64] ^= 1 << (row % 64);
        }
        loop {
            let Some(high) = highest_bit(&col) else {
                break;
            };
            match reduced.iter().find(|r| highest_bit(r) == Some(high)) {
                Some(r) => {
                    for (c, r) in col.iter_mut().zip(r) {
                        *c ^= r;
                    }
                }
                None => {
                    reduced.push(col);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn highest_bit(col: &[u64]) -> Option<usize> {
    for (w, &word) in col.iter().enumerate().rev() {
        if word != 0 {
            return Some(w * 64 + 63 - word.leading_zeros() as usize);
        }
    }
    None
}
