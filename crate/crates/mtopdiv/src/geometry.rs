//! Point clouds, Euclidean distance matrices, and cloud transforms.
//!
//! Distances are computed as the square root of a plain scalar sum of
//! squared differences, in coordinate order, with no fused or reassociated
//! arithmetic. That makes every entry bitwise-reproducible and lets a
//! brute-force loop serve as an exact oracle in the tests.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{invalid, Result};

/// A finite set of points in `R^D`, stored row-major.
///
/// Row order carries no meaning but is preserved exactly: several
/// operations (subsampling, file round-trips) promise bitwise-identical
/// output for identical seeds, which only holds if rows never move.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    data: Vec<f64>,
    n: usize,
    dim: usize,
}

impl PointCloud {
    /// Builds a cloud from a flat row-major buffer.
    ///
    /// Every coordinate must be finite; `dim` must be ≥ 1 and divide the
    /// buffer length as `n * dim`.
    pub fn new(data: Vec<f64>, n: usize, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(invalid("point cloud dimension must be at least 1"));
        }
        if data.len() != n * dim {
            return Err(invalid(format!(
                "point buffer has {} values, expected {} ({} rows x {} columns)",
                data.len(),
                n * dim,
                n,
                dim
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(invalid(format!(
                "non-finite coordinate at row {}, column {}",
                pos / dim,
                pos % dim
            )));
        }
        Ok(Self { data, n, dim })
    }

    /// Convenience constructor from explicit rows; mostly used in tests.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let dim = rows.first().map_or(1, Vec::len);
        let mut data = Vec::with_capacity(n * dim);
        for row in rows {
            if row.len() != dim {
                return Err(invalid(format!(
                    "ragged rows: expected {} columns, found {}",
                    dim,
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        PointCloud::new(data, n, dim)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.dim)
    }

    /// Flat row-major coordinate buffer.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Negates coordinate `axis` of every point (mirror image).
    pub fn reflect(&self, axis: usize) -> Result<PointCloud> {
        if axis >= self.dim {
            return Err(invalid(format!(
                "reflection axis {} out of range for dimension {}",
                axis, self.dim
            )));
        }
        let mut data = self.data.clone();
        for row in data.chunks_exact_mut(self.dim) {
            row[axis] = -row[axis];
        }
        Ok(PointCloud {
            data,
            n: self.n,
            dim: self.dim,
        })
    }

    /// Draws `b` distinct rows uniformly without replacement.
    ///
    /// Implemented as a partial Fisher-Yates shuffle so the draw order is a
    /// fixed function of the generator stream; with `b == n` the result is a
    /// uniformly random permutation of the cloud.
    pub fn subsample<R: Rng>(&self, b: usize, rng: &mut R) -> Result<PointCloud> {
        if b > self.n {
            return Err(invalid(format!(
                "cannot subsample {} rows from a cloud of {}",
                b, self.n
            )));
        }
        let mut indices: Vec<usize> = (0..self.n).collect();
        for i in 0..b {
            let j = i + rng.random_range(0..self.n - i);
            indices.swap(i, j);
        }
        let mut data = Vec::with_capacity(b * self.dim);
        for &idx in &indices[..b] {
            data.extend_from_slice(self.row(idx));
        }
        Ok(PointCloud {
            data,
            n: b,
            dim: self.dim,
        })
    }
}

/// Dense symmetric matrix of pairwise weights with zero diagonal.
///
/// Entries are nonnegative and finite but need not satisfy the triangle
/// inequality: the quotient construction deliberately breaks it.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    values: Vec<f64>,
    n: usize,
}

impl DistanceMatrix {
    /// Validates symmetry, zero diagonal, and entry-wise finiteness.
    pub fn new(values: Vec<f64>, n: usize) -> Result<Self> {
        if values.len() != n * n {
            return Err(invalid(format!(
                "distance buffer has {} values, expected {}x{}",
                values.len(),
                n,
                n
            )));
        }
        for i in 0..n {
            if values[i * n + i] != 0.0 {
                return Err(invalid(format!("nonzero diagonal entry at ({i},{i})")));
            }
            for j in 0..i {
                let a = values[i * n + j];
                let b = values[j * n + i];
                if !a.is_finite() || a < 0.0 {
                    return Err(invalid(format!("entry ({i},{j}) = {a} is not a distance")));
                }
                if a != b {
                    return Err(invalid(format!("asymmetry at ({i},{j}): {a} vs {b}")));
                }
            }
        }
        Ok(Self { values, n })
    }

    /// Caller guarantees the invariants hold; used for matrices the crate
    /// itself assembled.
    pub(crate) fn from_parts_unchecked(values: Vec<f64>, n: usize) -> Self {
        debug_assert_eq!(values.len(), n * n);
        Self { values, n }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    /// Largest entry; 0 for matrices of size ≤ 1.
    pub fn max_entry(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }
}

/// Rectangular matrix of distances from one cloud to another.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossDistances {
    values: Vec<f64>,
    n_rows: usize,
    n_cols: usize,
}

impl CrossDistances {
    pub fn new(values: Vec<f64>, n_rows: usize, n_cols: usize) -> Result<Self> {
        if values.len() != n_rows * n_cols {
            return Err(invalid(format!(
                "cross-distance buffer has {} values, expected {}x{}",
                values.len(),
                n_rows,
                n_cols
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(invalid(format!("entry {v} is not a distance")));
        }
        Ok(Self {
            values,
            n_rows,
            n_cols,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n_cols + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }
}

/// Euclidean distance between two coordinate slices of equal length.
///
/// Plain loop in index order; no mul_add, no blocking. The whole crate's
/// reproducibility contract leans on this staying scalar.
#[inline]
fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    let mut sum = 0.0;
    for k in 0..a.len() {
        let d = a[k] - b[k];
        sum += d * d;
    }
    sum.sqrt()
}

/// All pairwise Euclidean distances within a cloud.
///
/// Parallelized over rows; every entry is computed independently, so the
/// result does not depend on the thread schedule.
pub fn pairwise_distances(cloud: &PointCloud) -> Result<DistanceMatrix> {
    if cloud.is_empty() {
        return Err(invalid("pairwise distances of an empty cloud"));
    }
    let n = cloud.len();
    let mut values = vec![0.0; n * n];
    values
        .par_chunks_mut(n)
        .enumerate()
        .for_each(|(i, row_out)| {
            let pi = cloud.row(i);
            for j in 0..n {
                if i != j {
                    row_out[j] = euclidean(pi, cloud.row(j));
                }
            }
        });
    Ok(DistanceMatrix::from_parts_unchecked(values, n))
}

/// Rectangular matrix of distances from each point of `p` to each point of `q`.
pub fn cross_distances(p: &PointCloud, q: &PointCloud) -> Result<CrossDistances> {
    if p.dim() != q.dim() {
        return Err(invalid(format!(
            "dimension mismatch: {} vs {}",
            p.dim(),
            q.dim()
        )));
    }
    let (rows, cols) = (p.len(), q.len());
    let mut values = vec![0.0; rows * cols];
    values
        .par_chunks_mut(cols.max(1))
        .enumerate()
        .for_each(|(i, row_out)| {
            if i < rows {
                let pi = p.row(i);
                for j in 0..cols {
                    row_out[j] = euclidean(pi, q.row(j));
                }
            }
        });
    Ok(CrossDistances {
        values,
        n_rows: rows,
        n_cols: cols,
    })
}

/// Hausdorff distance: the larger of the two directed sup-min distances.
pub fn hausdorff_distance(p: &PointCloud, q: &PointCloud) -> Result<f64> {
    if p.is_empty() || q.is_empty() {
        return Err(invalid("Hausdorff distance requires non-empty clouds"));
    }
    let cross = cross_distances(p, q)?;
    Ok(f64::max(
        directed_sup_min(&cross, false),
        directed_sup_min(&cross, true),
    ))
}

/// sup over rows of min over columns (or the transpose when `by_cols`).
pub(crate) fn directed_sup_min(cross: &CrossDistances, by_cols: bool) -> f64 {
    let (outer, inner) = if by_cols {
        (cross.n_cols(), cross.n_rows())
    } else {
        (cross.n_rows(), cross.n_cols())
    };
    let mut sup = 0.0f64;
    for i in 0..outer {
        let mut min = f64::INFINITY;
        for j in 0..inner {
            let v = if by_cols {
                cross.get(j, i)
            } else {
                cross.get(i, j)
            };
            min = min.min(v);
        }
        sup = sup.max(min);
    }
    sup
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Brute-force oracle: identical arithmetic spelled out longhand.
    fn naive_distance(a: &[f64], b: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (x, y) in a.iter().zip(b) {
            acc += (x - y) * (x - y);
        }
        acc.sqrt()
    }

    fn random_cloud(n: usize, dim: usize, seed: u64) -> PointCloud {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data: Vec<f64> = (0..n * dim).map(|_| rng.random_range(-5.0..5.0)).collect();
        PointCloud::new(data, n, dim).unwrap()
    }

    #[test]
    fn pairwise_single_point() {
        let c = PointCloud::from_rows(&[vec![0.0, 0.0]]).unwrap();
        let m = pairwise_distances(&c).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.get(0, 0), 0.0);
    }

    #[test]
    fn pairwise_three_four_five() {
        let c = PointCloud::from_rows(&[vec![0.0, 0.0], vec![3.0, 4.0]]).unwrap();
        let m = pairwise_distances(&c).unwrap();
        assert_eq!(m.get(0, 1), 5.0);
        assert_eq!(m.get(1, 0), 5.0);
    }

    #[test]
    fn pairwise_right_triangle() {
        let c =
            PointCloud::from_rows(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let m = pairwise_distances(&c).unwrap();
        assert_eq!(m.get(0, 1), 1.0);
        assert_eq!(m.get(0, 2), 1.0);
        assert_eq!(m.get(1, 2), 2.0f64.sqrt());
    }

    #[test]
    fn pairwise_matches_naive_oracle_bitwise() {
        for (n, dim, seed) in [(7, 2, 1u64), (13, 8, 2), (5, 64, 3)] {
            let c = random_cloud(n, dim, seed);
            let m = pairwise_distances(&c).unwrap();
            for i in 0..n {
                for j in 0..n {
                    let expected = if i == j {
                        0.0
                    } else {
                        naive_distance(c.row(i), c.row(j))
                    };
                    assert_eq!(m.get(i, j).to_bits(), expected.to_bits(), "({i},{j})");
                }
            }
        }
    }

    #[test]
    fn pairwise_independent_of_thread_count() {
        let c = random_cloud(40, 8, 11);
        let serial = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| pairwise_distances(&c).unwrap());
        let parallel = pairwise_distances(&c).unwrap();
        assert_eq!(serial, parallel);
    }

    #[test]
    fn cross_fixtures() {
        let p = PointCloud::from_rows(&[vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        let q = PointCloud::from_rows(&[vec![0.0, 1.0]]).unwrap();
        let m = cross_distances(&p, &q).unwrap();
        assert_eq!(m.get(0, 0), 1.0);
        assert_eq!(m.get(1, 0), 2.0f64.sqrt());

        let single = cross_distances(&q, &q).unwrap();
        assert_eq!(single.get(0, 0), 0.0);
    }

    #[test]
    fn cross_self_zero_diagonal() {
        let c = random_cloud(9, 3, 4);
        let m = cross_distances(&c, &c).unwrap();
        for i in 0..9 {
            assert_eq!(m.get(i, i), 0.0);
        }
    }

    #[test]
    fn cross_dimension_mismatch_rejected() {
        let p = random_cloud(3, 2, 5);
        let q = random_cloud(3, 3, 6);
        assert!(cross_distances(&p, &q).is_err());
    }

    #[test]
    fn hausdorff_fixtures() {
        let p = PointCloud::from_rows(&[vec![0.0, 0.0]]).unwrap();
        let q = PointCloud::from_rows(&[vec![3.0, 0.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(hausdorff_distance(&p, &q).unwrap(), 5.0);

        let p2 = PointCloud::from_rows(&[vec![0.0, 0.0], vec![10.0, 0.0]]).unwrap();
        let q2 = PointCloud::from_rows(&[vec![0.0, 0.0]]).unwrap();
        assert_eq!(hausdorff_distance(&p2, &q2).unwrap(), 10.0);

        let c = random_cloud(12, 2, 7);
        assert_eq!(hausdorff_distance(&c, &c).unwrap(), 0.0);
    }

    #[test]
    fn hausdorff_symmetric() {
        let p = random_cloud(10, 4, 8);
        let q = random_cloud(14, 4, 9);
        assert_eq!(
            hausdorff_distance(&p, &q).unwrap(),
            hausdorff_distance(&q, &p).unwrap()
        );
    }

    #[test]
    fn hausdorff_zero_iff_same_point_set() {
        let p = PointCloud::from_rows(&[vec![0.0, 0.0], vec![1.0, 1.0]]).unwrap();
        // Same set listed in a different order with a duplicate.
        let q = PointCloud::from_rows(&[vec![1.0, 1.0], vec![0.0, 0.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(hausdorff_distance(&p, &q).unwrap(), 0.0);
        let shifted = PointCloud::from_rows(&[vec![0.0, 0.0], vec![1.0, 1.0 + 1e-9]]).unwrap();
        assert!(hausdorff_distance(&p, &shifted).unwrap() > 0.0);
    }

    #[test]
    fn reflect_fixture_and_involution() {
        let c = PointCloud::from_rows(&[vec![1.0, 2.0]]).unwrap();
        let r = c.reflect(1).unwrap();
        assert_eq!(r.row(0), &[1.0, -2.0]);
        assert_eq!(r.reflect(1).unwrap(), c);

        let sym = PointCloud::from_rows(&[vec![0.0, 1.0], vec![0.0, -1.0]]).unwrap();
        let rs = sym.reflect(1).unwrap();
        assert_eq!(rs.row(0), &[0.0, -1.0]);
        assert_eq!(rs.row(1), &[0.0, 1.0]);
    }

    #[test]
    fn reflect_is_isometry() {
        let c = random_cloud(15, 3, 10);
        let m0 = pairwise_distances(&c).unwrap();
        let m1 = pairwise_distances(&c.reflect(2).unwrap()).unwrap();
        for (a, b) in m0.as_slice().iter().zip(m1.as_slice()) {
            assert!((a - b).abs() <= 1e-12);
        }
        assert!(c.reflect(3).is_err());
    }

    #[test]
    fn subsample_contract() {
        let c = random_cloud(20, 2, 12);
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let full = c.subsample(20, &mut rng).unwrap();
        let mut seen: Vec<&[f64]> = full.rows().collect();
        let mut orig: Vec<&[f64]> = c.rows().collect();
        seen.sort_by(|a, b| a.partial_cmp(b).unwrap());
        orig.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(seen, orig);

        let mut rng = ChaCha8Rng::seed_from_u64(100);
        let one = c.subsample(1, &mut rng).unwrap();
        assert!(c.rows().any(|r| r == one.row(0)));

        assert!(c.subsample(21, &mut rng).is_err());
    }

    #[test]
    fn subsample_deterministic() {
        let c = random_cloud(30, 5, 13);
        let a = c
            .subsample(12, &mut ChaCha8Rng::seed_from_u64(7))
            .unwrap();
        let b = c
            .subsample(12, &mut ChaCha8Rng::seed_from_u64(7))
            .unwrap();
        assert_eq!(a.as_slice(), b.as_slice());
    }

    #[test]
    fn invalid_inputs_rejected() {
        assert!(PointCloud::new(vec![f64::NAN], 1, 1).is_err());
        assert!(PointCloud::new(vec![1.0, 2.0, 3.0], 2, 2).is_err());
        assert!(PointCloud::new(vec![], 0, 0).is_err());
        let empty = PointCloud::new(vec![], 0, 2).unwrap();
        assert!(pairwise_distances(&empty).is_err());
        assert!(DistanceMatrix::new(vec![0.0, 1.0, 2.0, 0.0], 2).is_err());
        assert!(DistanceMatrix::new(vec![0.5], 1).is_err());
    }
}
