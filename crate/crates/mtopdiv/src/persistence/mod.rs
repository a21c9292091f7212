//! Persistence barcodes of filtered complexes over Z/2.
//!
//! Two reduction routes are kept deliberately:
//!
//! * [`reduce_plain`] is the textbook left-to-right boundary-matrix
//!   reduction, kept as the reference implementation;
//! * [`reduce`] is the production path: union-find for dimension 0 plus
//!   column reduction with clearing for higher dimensions, restricted to the
//!   requested homology range.
//!
//! Both produce identical interval multisets; the test suites diff them
//! against each other and against [`betti_oracle`], an independent
//! Gaussian-elimination rank computation.

mod betti;
mod clearing;
pub(crate) mod implicit;
mod plain;
mod union_find;

pub use betti::{betti_oracle, BETTI_ORACLE_MAX_POINTS};

use crate::error::{invalid, Result};
use crate::filtration::Filtration;

/// One persistence interval `[birth, death)`.
///
/// `death` is `f64::INFINITY` for essential classes. `truncated` marks
/// intervals that were still open when an explicit filtration cap was hit;
/// their recorded death is the cap, not a real event.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub birth: f64,
    pub death: f64,
    pub truncated: bool,
}

impl Interval {
    pub fn finite(birth: f64, death: f64) -> Self {
        Self {
            birth,
            death,
            truncated: false,
        }
    }

    pub fn essential(birth: f64) -> Self {
        Self {
            birth,
            death: f64::INFINITY,
            truncated: false,
        }
    }

    pub fn truncated(birth: f64, cap: f64) -> Self {
        Self {
            birth,
            death: cap,
            truncated: true,
        }
    }

    pub fn is_essential(&self) -> bool {
        self.death.is_infinite()
    }

    /// `death - birth`; infinite for essential classes.
    pub fn length(&self) -> f64 {
        self.death - self.birth
    }
}

/// Persistence intervals grouped by homology dimension `0..=max_hom_dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct Barcode {
    dims: Vec<Vec<Interval>>,
}

impl Barcode {
    pub(crate) fn from_dims(mut dims: Vec<Vec<Interval>>) -> Self {
        for intervals in &mut dims {
            intervals.sort_by(|a, b| {
                a.birth
                    .total_cmp(&b.birth)
                    .then(a.death.total_cmp(&b.death))
                    .then(a.truncated.cmp(&b.truncated))
            });
        }
        Self { dims }
    }

    /// Highest homology dimension carried by this barcode.
    pub fn max_hom_dim(&self) -> usize {
        self.dims.len() - 1
    }

    /// Intervals of one dimension, sorted by (birth, death). Empty slice for
    /// dimensions beyond `max_hom_dim`.
    pub fn intervals(&self, dim: usize) -> &[Interval] {
        self.dims.get(dim).map_or(&[], Vec::as_slice)
    }

    /// Number of intervals alive at scale `alpha` in one dimension, with the
    /// half-open convention `birth ≤ alpha < death`. At any alpha this equals
    /// the Betti number of the complex at that scale.
    pub fn alive_count(&self, dim: usize, alpha: f64) -> usize {
        self.intervals(dim)
            .iter()
            .filter(|iv| iv.birth <= alpha && alpha < iv.death)
            .count()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.iter().all(Vec::is_empty)
    }
}

/// Internal outcome of a reduction: persistence pairs as global filtration
/// indices plus the positive simplices that never paired.
pub(crate) struct ReductionOutcome {
    pub pairs: Vec<(usize, usize)>,
    pub unpaired: Vec<usize>,
}

/// Assembles a barcode from reduction pairs, applying the zero-length drop
/// and the threshold truncation convention.
pub(crate) fn assemble_barcode(
    f: &Filtration,
    outcome: &ReductionOutcome,
    max_hom_dim: usize,
) -> Barcode {
    let sims = f.simplices();
    let mut dims = vec![Vec::new(); max_hom_dim + 1];
    for &(birth_idx, death_idx) in &outcome.pairs {
        let birth_simplex = &sims[birth_idx];
        let dim = birth_simplex.dim();
        if dim > max_hom_dim {
            continue;
        }
        let (b, d) = (birth_simplex.value(), sims[death_idx].value());
        debug_assert!(sims[death_idx].dim() == dim + 1);
        debug_assert!(b <= d);
        if b != d {
            dims[dim].push(Interval::finite(b, d));
        }
    }
    for &idx in &outcome.unpaired {
        let s = &sims[idx];
        if s.dim() > max_hom_dim {
            continue;
        }
        match f.threshold() {
            None => dims[s.dim()].push(Interval::essential(s.value())),
            Some(cap) => {
                if s.value() != cap {
                    dims[s.dim()].push(Interval::truncated(s.value(), cap));
                }
            }
        }
    }
    Barcode::from_dims(dims)
}

fn check_reduce_pre(f: &Filtration, max_hom_dim: usize) -> Result<()> {
    if f.max_dim() < max_hom_dim + 1 {
        return Err(invalid(format!(
            "filtration with max_dim {} cannot resolve homology dimension {} (needs max_dim ≥ {})",
            f.max_dim(),
            max_hom_dim,
            max_hom_dim + 1
        )));
    }
    Ok(())
}

/// Reference persistence computation: plain left-to-right column reduction
/// of the full boundary matrix. Quadratic and memory-hungry; exists to pin
/// down the semantics the optimized paths must reproduce.
pub fn reduce_plain(f: &Filtration, max_hom_dim: usize) -> Result<Barcode> {
    check_reduce_pre(f, max_hom_dim)?;
    let outcome = plain::plain_reduction(f);
    Ok(assemble_barcode(f, &outcome, max_hom_dim))
}

/// Production persistence computation.
///
/// Dimension 0 runs on union-find over the filtration's edges; dimensions
/// `1..=max_hom_dim` run column reduction processed top dimension first so
/// that paired columns of the pass below can be cleared without reduction.
/// Output is identical to [`reduce_plain`].
pub fn reduce(f: &Filtration, max_hom_dim: usize) -> Result<Barcode> {
    check_reduce_pre(f, max_hom_dim)?;
    let outcome = clearing::clearing_reduction(f, max_hom_dim);
    Ok(assemble_barcode(f, &outcome, max_hom_dim))
}
