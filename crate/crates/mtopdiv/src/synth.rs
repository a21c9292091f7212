//! Seeded synthetic point-cloud generators used by the experiments and the
//! test suites: circles, uniform disks, and Gaussian mixtures (whose zero
//! weights express mode dropping).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{invalid, Result};
use crate::geometry::PointCloud;

/// A circle in the plane, sampled uniformly by angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingSpec {
    pub n: usize,
    pub center: [f64; 2],
    pub radius: f64,
    pub seed: u64,
}

/// A filled disk in the plane, sampled uniformly by area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskSpec {
    pub n: usize,
    pub center: [f64; 2],
    pub radius: f64,
    pub seed: u64,
}

/// Isotropic Gaussian mixture in any dimension. Components are chosen by
/// weight per point; a zero weight drops that mode entirely.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianMixtureSpec {
    pub n: usize,
    pub centers: Vec<Vec<f64>>,
    pub sigma: f64,
    pub weights: Vec<f64>,
    pub seed: u64,
}

fn check_common(n: usize, center: &[f64], radius: f64) -> Result<()> {
    if n == 0 {
        return Err(invalid("generator needs n ≥ 1"));
    }
    if !center.iter().all(|c| c.is_finite()) {
        return Err(invalid("center coordinates must be finite"));
    }
    if !(radius.is_finite() && radius > 0.0) {
        return Err(invalid(format!("radius must be positive, got {radius}")));
    }
    Ok(())
}

/// `n` points uniform by angle on the circle of `spec.radius` around
/// `spec.center`.
pub fn ring_cloud(spec: &RingSpec) -> Result<PointCloud> {
    check_common(spec.n, &spec.center, spec.radius)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut data = Vec::with_capacity(spec.n * 2);
    for _ in 0..spec.n {
        let theta = rng.random_range(0.0..std::f64::consts::TAU);
        data.push(spec.center[0] + spec.radius * theta.cos());
        data.push(spec.center[1] + spec.radius * theta.sin());
    }
    PointCloud::new(data, spec.n, 2)
}

/// `n` points uniform by area on the disk of `spec.radius` around
/// `spec.center` (square-root radius method).
pub fn disk_cloud(spec: &DiskSpec) -> Result<PointCloud> {
    check_common(spec.n, &spec.center, spec.radius)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut data = Vec::with_capacity(spec.n * 2);
    for _ in 0..spec.n {
        let u: f64 = rng.random_range(0.0..1.0);
        let theta = rng.random_range(0.0..std::f64::consts::TAU);
        let r = spec.radius * u.sqrt();
        data.push(spec.center[0] + r * theta.cos());
        data.push(spec.center[1] + r * theta.sin());
    }
    PointCloud::new(data, spec.n, 2)
}

/// `n` points from the mixture: per point, pick the component by weight,
/// then add isotropic Gaussian noise of scale `sigma` to its center.
pub fn gaussian_mixture(spec: &GaussianMixtureSpec) -> Result<PointCloud> {
    if spec.n == 0 {
        return Err(invalid("generator needs n ≥ 1"));
    }
    if spec.centers.is_empty() {
        return Err(invalid("mixture needs at least one center"));
    }
    let dim = spec.centers[0].len();
    if dim == 0 {
        return Err(invalid("mixture centers need at least one coordinate"));
    }
    for c in &spec.centers {
        if c.len() != dim {
            return Err(invalid("mixture centers must share one dimension"));
        }
        if !c.iter().all(|x| x.is_finite()) {
            return Err(invalid("mixture centers must be finite"));
        }
    }
    if !(spec.sigma.is_finite() && spec.sigma > 0.0) {
        return Err(invalid(format!("sigma must be positive, got {}", spec.sigma)));
    }
    if spec.weights.len() != spec.centers.len() {
        return Err(invalid(format!(
            "{} weights for {} centers",
            spec.weights.len(),
            spec.centers.len()
        )));
    }
    if !spec.weights.iter().all(|w| w.is_finite() && *w >= 0.0) {
        return Err(invalid("weights must be finite and nonnegative"));
    }
    let total: f64 = spec.weights.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(invalid(format!("weights must sum to 1, got {total}")));
    }

    let mut cumulative = Vec::with_capacity(spec.weights.len());
    let mut acc = 0.0;
    for w in &spec.weights {
        acc += w;
        cumulative.push(acc);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut data = Vec::with_capacity(spec.n * dim);
    for _ in 0..spec.n {
        let u: f64 = rng.random_range(0.0..1.0);
        let component = cumulative
            .iter()
            .position(|&c| u < c)
            .unwrap_or(spec.centers.len() - 1);
        for &coord in &spec.centers[component] {
            let z: f64 = rng.sample(StandardNormal);
            data.push(coord + spec.sigma * z);
        }
    }
    PointCloud::new(data, spec.n, dim)
}

/// `k` centers equally spaced on the circle of `radius` around the origin,
/// starting at angle 0. The standard layout for the mode-drop experiments.
pub fn circle_centers(k: usize, radius: f64) -> Vec<Vec<f64>> {
    (0..k)
        .map(|i| {
            let theta = std::f64::consts::TAU * i as f64 / k as f64;
            vec![radius * theta.cos(), radius * theta.sin()]
        })
        .collect()
}
