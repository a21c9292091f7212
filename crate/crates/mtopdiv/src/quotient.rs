//! Quotient distance matrix: both clouds side by side, with every
//! distance inside the second cloud forced to zero.
//!
//! Zeroing the Q-block imitates contracting Q to a point, so the barcode
//! of the resulting filtration records only structure of P that Q does not
//! already account for. The price is that the matrix is no longer a metric:
//! d(q1,q2) = 0 while d(p,q1) and d(p,q2) differ, so the triangle
//! inequality fails and nothing downstream may rely on it.

use crate::error::{invalid, Result};
use crate::geometry::{CrossDistances, DistanceMatrix};

/// The combined weight matrix over `P ∪ Q` with the Q-block zeroed.
///
/// Vertex convention: indices `[0, n_p)` are P-points, `[n_p, n_p + n_q)`
/// are Q-points, in input row order.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientMetric {
    matrix: DistanceMatrix,
    n_p: usize,
    n_q: usize,
}

impl QuotientMetric {
    pub fn matrix(&self) -> &DistanceMatrix {
        &self.matrix
    }

    pub fn n_p(&self) -> usize {
        self.n_p
    }

    pub fn n_q(&self) -> usize {
        self.n_q
    }

    pub fn len(&self) -> usize {
        self.n_p + self.n_q
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Assembles the block matrix `[[m_pp, m_pq], [m_pq^T, 0]]`.
///
/// `n_q = 0` is allowed and returns `m_pp` unchanged, which makes the
/// barcode of the quotient coincide with the ordinary barcode of P.
pub fn build_quotient(m_pp: &DistanceMatrix, m_pq: &CrossDistances) -> Result<QuotientMetric> {
    let n_p = m_pp.len();
    if m_pq.n_rows() != n_p {
        return Err(invalid(format!(
            "cross-distance rows ({}) do not match P size ({})",
            m_pq.n_rows(),
            n_p
        )));
    }
    let n_q = m_pq.n_cols();
    let n = n_p + n_q;
    let mut values = vec![0.0; n * n];
    for i in 0..n_p {
        for j in 0..n_p {
            values[i * n + j] = m_pp.get(i, j);
        }
        for j in 0..n_q {
            let d = m_pq.get(i, j);
            values[i * n + (n_p + j)] = d;
            values[(n_p + j) * n + i] = d;
        }
    }
    // Q-block stays zero from the initial fill.
    Ok(QuotientMetric {
        matrix: DistanceMatrix::from_parts_unchecked(values, n),
        n_p,
        n_q,
    })
}
