//! The MTop-Divergence score: repeated subsampled cross-barcode statistics,
//! plus the relative living-times histogram and its earth-mover identity.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::crossbarcode::{barcode_stat, cross_barcode, StatKind};
use crate::error::{invalid, Result};
use crate::geometry::PointCloud;
use crate::persistence::{Barcode, Interval};

/// Which cloud plays the base role. The score is asymmetric: `PQ` measures
/// what the first cloud has that the second does not explain (akin to
/// precision with a model as `P`), `QP` the reverse (akin to recall).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    PQ,
    QP,
    /// Compute both directions; they are reported separately, never averaged.
    Both,
}

/// Configuration for [`mtop_div`].
///
/// Defaults: `b_p = 1000`, `b_q = 10000`, `n_runs = 100`, homology
/// dimension 1, sum-of-lengths statistic, seed 0, direction `PQ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MTopDivConfig {
    /// Points drawn from the base cloud each run (≥ 1).
    pub b_p: usize,
    /// Points drawn from the reference cloud each run (0 allowed: the score
    /// degenerates to a statistic of the base cloud's own barcode).
    pub b_q: usize,
    /// Independent subsampling repetitions (≥ 1).
    pub n_runs: usize,
    /// Homology dimension the statistic is read from.
    pub hom_dim: usize,
    /// Statistic applied to each run's intervals.
    pub stat: StatKind,
    /// Seed for the deterministic subsampling streams.
    pub seed: u64,
    pub direction: Direction,
}

impl Default for MTopDivConfig {
    fn default() -> Self {
        Self {
            b_p: 1000,
            b_q: 10_000,
            n_runs: 100,
            hom_dim: 1,
            stat: StatKind::Sum,
            seed: 0,
            direction: Direction::PQ,
        }
    }
}

/// Score for one direction: the per-run statistic values with their mean
/// and standard error (sample standard deviation over `sqrt(n_runs)`).
#[derive(Debug, Clone, PartialEq)]
pub struct MTopDivResult {
    pub direction: Direction,
    pub per_run: Vec<f64>,
    pub mean: f64,
    pub std_error: f64,
}

/// Runs in the `QP` direction use substreams offset by this constant so
/// that either direction alone reproduces its half of a `Both` computation.
const QP_STREAM_OFFSET: u64 = 1 << 32;

fn check_config(cfg: &MTopDivConfig) -> Result<()> {
    if cfg.b_p == 0 {
        return Err(invalid("b_p must be at least 1"));
    }
    if cfg.n_runs == 0 {
        return Err(invalid("n_runs must be at least 1"));
    }
    Ok(())
}

/// One direction's barcodes: run `j` draws the base subsample then the
/// reference subsample from substream `stream_base + j` and computes the
/// cross-barcode. Runs execute in parallel; results are ordered by `j` and
/// independent of scheduling.
fn run_barcodes(
    base: &PointCloud,
    reference: &PointCloud,
    cfg: &MTopDivConfig,
    stream_base: u64,
) -> Result<Vec<Barcode>> {
    (0..cfg.n_runs)
        .into_par_iter()
        .map(|j| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(stream_base + j as u64);
            let p_j = base.subsample(cfg.b_p, &mut rng)?;
            let q_j = reference.subsample(cfg.b_q, &mut rng)?;
            cross_barcode(&p_j, &q_j, cfg.hom_dim)
        })
        .collect()
}

/// The per-run cross-barcodes backing [`mtop_div`], grouped by direction.
/// Useful when the caller needs more than one statistic per run.
pub fn mtop_div_barcodes(
    x_p: &PointCloud,
    x_q: &PointCloud,
    cfg: &MTopDivConfig,
) -> Result<Vec<(Direction, Vec<Barcode>)>> {
    check_config(cfg)?;
    let mut out = Vec::new();
    if matches!(cfg.direction, Direction::PQ | Direction::Both) {
        out.push((Direction::PQ, run_barcodes(x_p, x_q, cfg, 0)?));
    }
    if matches!(cfg.direction, Direction::QP | Direction::Both) {
        out.push((Direction::QP, run_barcodes(x_q, x_p, cfg, QP_STREAM_OFFSET)?));
    }
    Ok(out)
}

/// The MTop-Divergence score: for each run, subsample both clouds, compute
/// the cross-barcode, and apply the configured statistic to the configured
/// dimension; report mean and standard error per direction.
pub fn mtop_div(
    x_p: &PointCloud,
    x_q: &PointCloud,
    cfg: &MTopDivConfig,
) -> Result<Vec<MTopDivResult>> {
    let grouped = mtop_div_barcodes(x_p, x_q, cfg)?;
    grouped
        .into_iter()
        .map(|(direction, barcodes)| {
            let per_run: Vec<f64> = barcodes
                .iter()
                .map(|b| barcode_stat(b.intervals(cfg.hom_dim), cfg.stat))
                .collect::<Result<_>>()?;
            let (mean, std_error) = mean_and_std_error(&per_run);
            Ok(MTopDivResult {
                direction,
                per_run,
                mean,
                std_error,
            })
        })
        .collect()
}

fn mean_and_std_error(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
    (mean, var.sqrt() / (n as f64).sqrt())
}

/// Relative living times: what fraction of the scale range `[0, alpha_max]`
/// has exactly `k` intervals alive, for each `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct RltHistogram {
    alpha_max: f64,
    mass: BTreeMap<usize, f64>,
}

impl RltHistogram {
    pub fn alpha_max(&self) -> f64 {
        self.alpha_max
    }

    /// Fraction of the range with exactly `k` intervals alive.
    pub fn mass(&self, k: usize) -> f64 {
        self.mass.get(&k).copied().unwrap_or(0.0)
    }

    /// `(k, mass)` pairs with nonzero mass, ascending in `k`.
    pub fn masses(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.mass.iter().map(|(&k, &m)| (k, m))
    }
}

/// Builds the living-times histogram of `intervals` over `[0, alpha_max]`.
///
/// Every death (so, no infinite interval) must be `≤ alpha_max`. An
/// interval is alive on the open segment between two consecutive endpoint
/// values when it contains that segment.
pub fn rlt(intervals: &[Interval], alpha_max: f64) -> Result<RltHistogram> {
    if !alpha_max.is_finite() || alpha_max <= 0.0 {
        return Err(invalid(format!(
            "alpha_max must be positive and finite, got {alpha_max}"
        )));
    }
    for iv in intervals {
        if !(iv.birth >= 0.0 && iv.birth <= iv.death) {
            return Err(invalid(format!(
                "malformed interval [{}, {}]",
                iv.birth, iv.death
            )));
        }
        if iv.death > alpha_max {
            return Err(invalid(format!(
                "interval death {} exceeds alpha_max {alpha_max}",
                iv.death
            )));
        }
    }

    let mut cuts: Vec<f64> = vec![0.0, alpha_max];
    for iv in intervals {
        cuts.push(iv.birth);
        cuts.push(iv.death);
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut mass: BTreeMap<usize, f64> = BTreeMap::new();
    for pair in cuts.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let alive = intervals
            .iter()
            .filter(|iv| iv.birth <= a && iv.death >= b)
            .count();
        *mass.entry(alive).or_insert(0.0) += (b - a) / alpha_max;
    }
    Ok(RltHistogram { alpha_max, mass })
}

/// Earth-mover distance from the histogram to the point mass at zero:
/// `Σ k · mass(k)`. Multiplied by `alpha_max` this recovers the sum of
/// finite interval lengths exactly.
pub fn emd_to_empty(h: &RltHistogram) -> f64 {
    h.masses().map(|(k, m)| k as f64 * m).sum()
}
