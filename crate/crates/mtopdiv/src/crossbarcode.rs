//! Cross-barcodes: the multiscale topological discrepancy between two
//! point clouds.
//!
//! `Cross-Barcode(P, Q)` is the persistence barcode of the Vietoris-Rips
//! filtration built on the quotient metric of `P ∪ Q` in which `Q` is
//! collapsed to a single class (every `Q`-`Q` weight is 0). Intervals in
//! dimension `k` localize where the union acquires topology that `Q` alone
//! cannot explain: if `P` lies inside the regions covered by `Q`, nothing
//! survives. The construction is deliberately asymmetric in `P` and `Q`.

use std::fmt;
use std::str::FromStr;

use crate::error::{internal, invalid, Error, Result};
use crate::filtration::vr_filtration;
use crate::geometry::{cross_distances, pairwise_distances, PointCloud};
use crate::persistence::implicit::{cohomology_barcode, MAX_VERTICES};
use crate::persistence::{reduce, Barcode, Interval};
use crate::quotient::{build_quotient, QuotientMetric};

/// Cross-barcode of `p` against `q` in homology dimensions `0..=max_hom_dim`.
///
/// With `q` empty this degenerates to the ordinary Vietoris-Rips barcode of
/// `p` (essential classes included). With `q` non-empty the complex is
/// eventually contractible onto the collapsed `q` class, so exactly one
/// essential component exists and it is removed from the output; every
/// reported interval is finite.
pub fn cross_barcode(p: &PointCloud, q: &PointCloud, max_hom_dim: usize) -> Result<Barcode> {
    if p.is_empty() {
        return Err(invalid("cross_barcode requires a non-empty first cloud"));
    }
    // The smallest k-cycle is the boundary of a (k+1)-simplex, so homology
    // above dimension n-2 is empty on n points; clamping keeps the
    // enumeration within the vertex budget on tiny clouds.
    let k = max_hom_dim.min((p.len() + q.len()).saturating_sub(2));
    if q.is_empty() {
        let m = pairwise_distances(p)?;
        if k + 2 <= MAX_VERTICES {
            return cohomology_barcode(&m, p.len(), k, None);
        }
        // Beyond the implicit engine's packing width: explicit route.
        let f = vr_filtration(&m, k + 1, None)?;
        return reduce(&f, k);
    }

    let qm = build_quotient(&pairwise_distances(p)?, &cross_distances(p, q)?)?;
    cross_barcode_from_quotient(&qm, k)
}

/// The reduction stage of [`cross_barcode`], starting from a prebuilt
/// quotient metric. Useful when the caller constructs the metric itself or
/// wants to account for the distance and reduction phases separately.
pub fn cross_barcode_from_quotient(qm: &QuotientMetric, max_hom_dim: usize) -> Result<Barcode> {
    let k = max_hom_dim.min(qm.len().saturating_sub(2));
    if k + 2 <= MAX_VERTICES {
        return cohomology_barcode(qm.matrix(), qm.n_p(), k, None);
    }
    let f = vr_filtration(qm.matrix(), k + 1, None)?;
    let b = reduce(&f, k)?;
    if qm.n_q() == 0 {
        // Degenerate quotient over an empty reference: this is the plain
        // barcode and its essential classes are real.
        Ok(b)
    } else {
        strip_single_essential(b, k)
    }
}

/// Removes the one expected essential component from a full quotient
/// barcode; anything else left infinite is an implementation bug.
fn strip_single_essential(b: Barcode, max_hom_dim: usize) -> Result<Barcode> {
    let mut dims = Vec::with_capacity(max_hom_dim + 1);
    let mut essentials = 0usize;
    for d in 0..=max_hom_dim {
        let mut keep = Vec::new();
        for iv in b.intervals(d) {
            if iv.is_essential() {
                if d > 0 {
                    return Err(internal(format!(
                        "essential class in dimension {d} of a quotient barcode"
                    )));
                }
                essentials += 1;
            } else {
                keep.push(*iv);
            }
        }
        dims.push(keep);
    }
    if essentials != 1 {
        return Err(internal(format!(
            "expected exactly one essential component in a quotient barcode, found {essentials}"
        )));
    }
    Ok(Barcode::from_dims(dims))
}

/// Independent dimension-0 oracle: Kruskal over the quotient graph.
///
/// Components start as the `n_P` singletons plus one pre-merged block for
/// all of `Q`; edges are scanned in ascending weight order and each merge at
/// weight `w` emits `[0, w]`. Exactly `n_P` merges happen; zero-length
/// intervals are dropped from the output like everywhere else.
pub fn h0_oracle(qm: &QuotientMetric) -> Result<Vec<Interval>> {
    if qm.n_q() == 0 {
        return Err(invalid("h0_oracle requires a non-empty collapsed block"));
    }
    let (n_p, n) = (qm.n_p(), qm.len());
    let m = qm.matrix();
    let mut edges: Vec<(f64, u32, u32)> = Vec::new();
    for a in 0..n_p {
        for b in (a + 1)..n {
            edges.push((m.get(a, b), a as u32, b as u32));
        }
    }
    edges.sort_unstable_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));

    let block = n_p as u32;
    let mut parent: Vec<u32> = (0..=block).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let up = parent[parent[x as usize] as usize];
            parent[x as usize] = up;
            x = up;
        }
        x
    }
    let mut merges = 0usize;
    let mut out = Vec::new();
    for &(w, a, b) in &edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b.min(block)));
        if ra != rb {
            parent[ra as usize] = rb;
            merges += 1;
            if w != 0.0 {
                out.push(Interval::finite(0.0, w));
            }
        }
    }
    if merges != n_p {
        return Err(internal(format!(
            "quotient graph must merge every base point, got {merges} of {n_p}"
        )));
    }
    out.sort_by(|a, b| a.birth.total_cmp(&b.birth).then(a.death.total_cmp(&b.death)));
    Ok(out)
}

/// Largest interval length; 0 for an empty list. Infinite intervals have no
/// finite norm and are rejected.
pub fn bottleneck_norm(intervals: &[Interval]) -> Result<f64> {
    let mut best = 0.0f64;
    for iv in intervals {
        if iv.is_essential() {
            return Err(invalid("bottleneck norm is undefined for infinite intervals"));
        }
        best = best.max(iv.length());
    }
    Ok(best)
}

/// Summary statistic over the lengths of a barcode's intervals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StatKind {
    /// Sum of lengths.
    Sum,
    /// Sum of squared lengths.
    SumSq,
    /// Number of intervals (tolerates infinite intervals).
    Count,
    /// Largest length.
    Max,
    /// Length quantile in `[0, 1]`, linearly interpolated.
    Quantile(f64),
}

impl fmt::Display for StatKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatKind::Sum => write!(f, "sum"),
            StatKind::SumSq => write!(f, "sum_sq"),
            StatKind::Count => write!(f, "count"),
            StatKind::Max => write!(f, "max"),
            StatKind::Quantile(q) => write!(f, "quantile:{q}"),
        }
    }
}

impl FromStr for StatKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" => Ok(StatKind::Sum),
            "sum_sq" => Ok(StatKind::SumSq),
            "count" => Ok(StatKind::Count),
            "max" => Ok(StatKind::Max),
            _ => match s.strip_prefix("quantile:") {
                Some(q) => {
                    let q: f64 = q
                        .parse()
                        .map_err(|_| invalid(format!("bad quantile in stat '{s}'")))?;
                    Ok(StatKind::Quantile(q))
                }
                None => Err(invalid(format!(
                    "unknown stat '{s}' (expected sum, sum_sq, count, max, or quantile:Q)"
                ))),
            },
        }
    }
}

/// Applies `kind` to the interval lengths. Everything except `Count`
/// rejects infinite intervals.
pub fn barcode_stat(intervals: &[Interval], kind: StatKind) -> Result<f64> {
    if let StatKind::Count = kind {
        return Ok(intervals.len() as f64);
    }
    if let StatKind::Quantile(q) = kind {
        if !(0.0..=1.0).contains(&q) {
            return Err(invalid(format!("quantile must lie in [0, 1], got {q}")));
        }
    }
    let mut lengths = Vec::with_capacity(intervals.len());
    for iv in intervals {
        if iv.is_essential() {
            return Err(invalid("statistic undefined over infinite intervals"));
        }
        lengths.push(iv.length());
    }
    Ok(match kind {
        StatKind::Sum => lengths.iter().sum(),
        StatKind::SumSq => lengths.iter().map(|l| l * l).sum(),
        StatKind::Max => lengths.iter().fold(0.0f64, |a, &b| a.max(b)),
        StatKind::Quantile(q) => {
            if lengths.is_empty() {
                0.0
            } else {
                lengths.sort_by(f64::total_cmp);
                let pos = q * (lengths.len() - 1) as f64;
                let lo = pos.floor() as usize;
                let hi = pos.ceil() as usize;
                let frac = pos - lo as f64;
                lengths[lo] + (lengths[hi] - lengths[lo]) * frac
            }
        }
        StatKind::Count => unreachable!("handled above"),
    })
}
