//! Topological comparison of point clouds.
//!
//! This crate measures the multiscale discrepancy between two point clouds
//! `P` and `Q` in the same Euclidean space. The central object is the
//! *cross-barcode*: the persistence barcode of a Vietoris-Rips filtration
//! built over a quotient distance matrix in which all distances inside `Q`
//! are set to zero. Contracting `Q` to a cluster this way makes the barcode
//! record exactly the features of `P` that `Q` fails to cover: an interval
//! dies at the scale where `Q` (plus the rest of `P`) fills it in.
//!
//! On top of the barcode sits a scalar score, [`mtop_div`], computed by
//! repeated subsampling: each run draws `b_P` points from one cloud and
//! `b_Q` from the other, computes the cross-barcode, and reduces the
//! dimension-`hom_dim` intervals to a statistic (by default the sum of
//! interval lengths). The score is the mean over runs. It is asymmetric in
//! its arguments, which is the point: the two directions play the roles of
//! precision and recall.
//!
//! ```
//! use mtopdiv::{ring_cloud, RingSpec, mtop_div, MTopDivConfig, Direction};
//!
//! let a = ring_cloud(&RingSpec { n: 400, center: [0.0, 0.0], radius: 1.0, seed: 7 }).unwrap();
//! let b = ring_cloud(&RingSpec { n: 400, center: [1.5, 0.0], radius: 1.0, seed: 8 }).unwrap();
//! let cfg = MTopDivConfig {
//!     b_p: 50,
//!     b_q: 200,
//!     n_runs: 4,
//!     ..MTopDivConfig::default()
//! };
//! let out = mtop_div(&a, &b, &cfg).unwrap();
//! assert_eq!(out[0].direction, Direction::PQ);
//! assert!(out[0].mean > 0.0);
//! ```
//!
//! The quotient matrix violates the triangle inequality by construction;
//! nothing downstream of [`build_quotient`] may assume it holds.

pub mod crossbarcode;
pub mod divergence;
pub mod error;
pub mod filtration;
pub mod geometry;
pub mod persistence;
pub mod quotient;
pub mod synth;

pub use crossbarcode::{
    barcode_stat, bottleneck_norm, cross_barcode, cross_barcode_from_quotient, h0_oracle, StatKind,
};
pub use divergence::{
    emd_to_empty, mtop_div, mtop_div_barcodes, rlt, Direction, MTopDivConfig, MTopDivResult,
    RltHistogram,
};
pub use error::{Error, Result};
pub use filtration::{simplex_value, vr_filtration, Filtration, Simplex};
pub use geometry::{
    cross_distances, hausdorff_distance, pairwise_distances, CrossDistances, DistanceMatrix,
    PointCloud,
};
pub use persistence::{
    betti_oracle, reduce, reduce_plain, Barcode, Interval, BETTI_ORACLE_MAX_POINTS,
};
pub use quotient::{build_quotient, QuotientMetric};
pub use synth::{
    circle_centers, disk_cloud, gaussian_mixture, ring_cloud, DiskSpec, GaussianMixtureSpec,
    RingSpec,
};
