//! Vietoris-Rips filtrations of a weighted complete graph.
//!
//! A simplex enters the filtration at the maximum pairwise weight among its
//! vertices (its *value*); a simplex is present at scale alpha iff its value
//! is ≤ alpha. Simplices are kept in the total order (value, dim, lex
//! vertices), which guarantees every face precedes its cofaces: the face
//! has value ≤ the coface's, and at equal value the lower dimension sorts
//! first.

use crate::error::{invalid, Result};
use crate::geometry::DistanceMatrix;

/// One simplex of the filtration: sorted vertex list plus appearance value.
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    vertices: Vec<u32>,
    value: f64,
}

impl Simplex {
    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn value(&self) -> f64 {
        self.value
    }
}

/// All simplices of a VR complex up to `max_dim`, in filtration order.
#[derive(Debug, Clone)]
pub struct Filtration {
    simplices: Vec<Simplex>,
    max_dim: usize,
    threshold: Option<f64>,
    n_vertices: usize,
}

impl Filtration {
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// The explicit cap, if one was supplied. `None` means the filtration is
    /// complete and unpaired features are genuinely essential; `Some(t)`
    /// means features still open at `t` must be reported as truncated.
    pub fn threshold(&self) -> Option<f64> {
        self.threshold
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }
}

/// Appearance value of the simplex spanned by `vertices`: the maximum
/// pairwise weight, 0 for a single vertex.
pub fn simplex_value(vertices: &[u32], weights: &DistanceMatrix) -> Result<f64> {
    if vertices.is_empty() {
        return Err(invalid("simplex needs at least one vertex"));
    }
    let n = weights.len();
    for (idx, &v) in vertices.iter().enumerate() {
        if v as usize >= n {
            return Err(invalid(format!("vertex {v} out of range for {n} points")));
        }
        if vertices[..idx].contains(&v) {
            return Err(invalid(format!("duplicate vertex {v} in simplex")));
        }
    }
    let mut value = 0.0f64;
    for i in 0..vertices.len() {
        for j in 0..i {
            value = value.max(weights.get(vertices[i] as usize, vertices[j] as usize));
        }
    }
    Ok(value)
}

/// Enumerates all simplices of dimension ≤ `max_dim` and value ≤ `threshold`
/// over the weight matrix, sorted by (value, dim, lex vertices).
///
/// `threshold = None` places no cap, which for a finite matrix is the same
/// as capping at the maximum entry.
pub fn vr_filtration(
    weights: &DistanceMatrix,
    max_dim: usize,
    threshold: Option<f64>,
) -> Result<Filtration> {
    let n = weights.len();
    if max_dim >= n {
        return Err(invalid(format!(
            "max_dim {max_dim} admits no simplices on {n} points"
        )));
    }
    if let Some(t) = threshold {
        if !t.is_finite() || t < 0.0 {
            return Err(invalid(format!("threshold {t} must be finite and ≥ 0")));
        }
    }
    let cap = threshold.unwrap_or(f64::INFINITY);

    let mut simplices = Vec::new();
    let mut stack: Vec<u32> = Vec::with_capacity(max_dim + 1);
    for v in 0..n as u32 {
        stack.push(v);
        grow(weights, max_dim, cap, &mut stack, 0.0, &mut simplices);
        stack.pop();
    }

    simplices.sort_by(|a, b| {
        a.value
            .total_cmp(&b.value)
            .then(a.vertices.len().cmp(&b.vertices.len()))
            .then_with(|| a.vertices.cmp(&b.vertices))
    });

    Ok(Filtration {
        simplices,
        max_dim,
        threshold,
        n_vertices: n,
    })
}

/// Depth-first extension of the simplex on `stack`. Adding a vertex can only
/// raise the value, so branches over the cap are pruned whole.
fn grow(
    weights: &DistanceMatrix,
    max_dim: usize,
    cap: f64,
    stack: &mut Vec<u32>,
    value: f64,
    out: &mut Vec<Simplex>,
) {
    out.push(Simplex {
        vertices: stack.clone(),
        value,
    });
    if stack.len() == max_dim + 1 {
        return;
    }
    let n = weights.len() as u32;
    let last = *stack.last().unwrap();
    for v in last + 1..n {
        let mut extended = value;
        for &u in stack.iter() {
            extended = extended.max(weights.get(u as usize, v as usize));
        }
        if extended <= cap {
            stack.push(v);
            grow(weights, max_dim, cap, stack, extended, out);
            stack.pop();
        }
    }
}
