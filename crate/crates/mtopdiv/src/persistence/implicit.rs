//! Implicit persistence engine over weight matrices.
//!
//! Runs the coboundary (anti-transpose) reduction without materializing the
//! filtration: columns are simplices enumerated on demand, processed in
//! reverse filtration order with the minimal cofacet as pivot. This yields
//! exactly the persistence pairs of ordinary boundary reduction while
//! keeping memory proportional to the number of *paired* columns, not the
//! number of simplices.
//!
//! The engine computes either
//!
//! * the plain Vietoris-Rips barcode of a weight matrix (`n_base == n`), or
//! * the barcode relative to the subcomplex spanned by the trailing
//!   `n - n_base` vertices (`n_base < n`), whose basis is the simplices
//!   containing at least one leading vertex.
//!
//! In relative mode the trailing block is expected to be mutually at
//! distance 0 (one collapsed class); relative homology then equals reduced
//! homology of the whole complex, which is what the cross-barcode needs:
//! the everlasting component never appears in the output.
//!
//! Three structural optimizations, all output-neutral:
//!
//! * **Enclosing radius.** Past the smallest `r` such that some admissible
//!   apex vertex sits within `r` of everything, the complex is a cone and
//!   stays one, so no class is born there and none survives it. Enumeration
//!   is capped at `r`. In relative mode the apex must lie in the trailing
//!   block so the cone respects the quotient.
//! * **Clearing.** A pivot of the degree-`d` pass is a `(d+1)`-simplex whose
//!   own column is known to reduce to zero; the degree-`(d+1)` pass skips
//!   it. Dimension 0 runs on union-find, and its merge edges are precisely
//!   the cleared columns of degree 1.
//! * **Emergent pairs.** While first enumerating the cofacets of a simplex
//!   in ascending vertex order, the first cofacet sharing the simplex's
//!   value is the globally minimal one; if its pivot slot is free, the pair
//!   is final and enumeration stops early.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use crate::error::{internal, invalid, Result};
use crate::geometry::DistanceMatrix;

use super::union_find::UnionFind;
use super::{Barcode, Interval};

const VERTEX_BITS: u32 = 21;
const VERTEX_MASK: u128 = (1 << VERTEX_BITS) - 1;
/// Simplices are packed into a `u128`, 21 bits per vertex: at most 6
/// vertices, i.e. homology dimensions 0 through 4.
pub(crate) const MAX_VERTICES: usize = 6;

/// Heap entry ordered by (value, packed key). Within one degree, packed-key
/// order is lexicographic vertex order, so this is the filtration's total
/// order restricted to one stratum.
#[derive(Clone, Copy, Debug)]
struct Entry {
    value: f64,
    key: u128,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.value.to_bits() == other.value.to_bits() && self.key == other.key
    }
}
impl Eq for Entry {}
impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Entry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.value
            .total_cmp(&other.value)
            .then(self.key.cmp(&other.key))
    }
}

fn pack(verts: &[u32]) -> u128 {
    let mut key = 0u128;
    for &v in verts {
        key = (key << VERTEX_BITS) | u128::from(v);
    }
    key
}

fn unpack(mut key: u128, out: &mut [u32]) {
    for slot in out.iter_mut().rev() {
        *slot = (key & VERTEX_MASK) as u32;
        key >>= VERTEX_BITS;
    }
}

/// Packed key of `verts` with `v` merged in at its sorted position.
fn insert_pack(verts: &[u32], v: u32) -> u128 {
    let mut key = 0u128;
    let mut placed = false;
    for &u in verts {
        if !placed && v < u {
            key = (key << VERTEX_BITS) | u128::from(v);
            placed = true;
        }
        key = (key << VERTEX_BITS) | u128::from(u);
    }
    if !placed {
        key = (key << VERTEX_BITS) | u128::from(v);
    }
    key
}

/// Keeps only the keys of odd multiplicity in a sorted vector (Z/2 sum).
fn parity_filter(v: &mut Vec<u128>) {
    let mut out = 0;
    let mut i = 0;
    while i < v.len() {
        let mut j = i + 1;
        while j < v.len() && v[j] == v[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            v[out] = v[i];
            out += 1;
        }
        i = j;
    }
    v.truncate(out);
}

/// Pops the minimal heap entry after Z/2 cancellation of duplicate keys.
fn pop_pivot(heap: &mut BinaryHeap<Reverse<Entry>>) -> Option<Entry> {
    while let Some(Reverse(top)) = heap.pop() {
        let mut keep = true;
        while let Some(Reverse(next)) = heap.peek() {
            if next.key != top.key {
                break;
            }
            debug_assert_eq!(next.value.to_bits(), top.value.to_bits());
            heap.pop();
            keep = !keep;
        }
        if keep {
            return Some(top);
        }
    }
    None
}

/// Vietoris-Rips barcode of `weights`, computed implicitly.
///
/// `n_base < weights.len()` selects relative mode: the basis is the
/// simplices touching the vertex range `0..n_base`, and the trailing
/// vertices form the collapsed subcomplex. `threshold` caps the filtration
/// with the same truncation convention as the explicit route.
pub(crate) fn cohomology_barcode(
    weights: &DistanceMatrix,
    n_base: usize,
    max_hom_dim: usize,
    threshold: Option<f64>,
) -> Result<Barcode> {
    let n = weights.len();
    if n_base == 0 || n_base > n {
        return Err(invalid(format!(
            "base vertex count must be in 1..={n}, got {n_base}"
        )));
    }
    if max_hom_dim + 2 > MAX_VERTICES {
        return Err(invalid(format!(
            "implicit engine supports homology dimension up to {}, got {max_hom_dim}",
            MAX_VERTICES - 2
        )));
    }
    if max_hom_dim + 1 > n {
        return Err(invalid(format!(
            "homology dimension {max_hom_dim} needs at least {} points, got {n}",
            max_hom_dim + 1
        )));
    }
    if n >= (1 << VERTEX_BITS) {
        return Err(invalid(format!(
            "implicit engine supports at most {} points, got {n}",
            (1u32 << VERTEX_BITS) - 1
        )));
    }
    if let Some(t) = threshold {
        if !t.is_finite() || t < 0.0 {
            return Err(invalid("filtration threshold must be finite and nonnegative"));
        }
    }

    let relative = n_base < n;
    let r_enc = enclosing_radius(weights, n_base, relative);
    let enum_cap = threshold.map_or(r_enc, |t| t.min(r_enc));
    let engine = Engine {
        weights,
        n,
        n_base,
        enum_cap,
    };
    let mut dims: Vec<Vec<Interval>> = vec![Vec::new(); max_hom_dim + 1];

    // Dimension 0 on union-find. In relative mode one extra element stands
    // for the whole collapsed trailing block; merging into it removes a
    // component from the relative picture, and the block's own component is
    // never reported.
    let mut edges: Vec<(f64, u32, u32)> = Vec::new();
    for a in 0..n_base {
        for b in (a + 1)..n {
            let w = weights.get(a, b);
            if w <= enum_cap {
                edges.push((w, a as u32, b as u32));
            }
        }
    }
    edges.sort_unstable_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));

    let collapsed = n_base as u32;
    let mut uf = UnionFind::new(if relative { n_base + 1 } else { n_base });
    let mut positive_edges: Vec<(f64, u128)> = Vec::new();
    for &(w, a, b) in &edges {
        let eb = b.min(collapsed);
        if uf.union(a, eb).is_some() {
            if w != 0.0 {
                dims[0].push(Interval::finite(0.0, w));
            }
        } else if max_hom_dim >= 1 {
            positive_edges.push((w, pack(&[a, b])));
        }
    }
    let collapsed_root = if relative { Some(uf.find(collapsed)) } else { None };
    let mut survivors = 0usize;
    for v in 0..n_base as u32 {
        if uf.find(v) == v && Some(v) != collapsed_root {
            survivors += 1;
            match threshold {
                Some(t) => {
                    if t != 0.0 {
                        dims[0].push(Interval::truncated(0.0, t));
                    }
                }
                None => {
                    if relative {
                        return Err(internal(
                            "component not absorbed within the enclosing radius",
                        ));
                    }
                    dims[0].push(Interval::essential(0.0));
                }
            }
        }
    }
    if !relative && threshold.is_none() && survivors != 1 {
        return Err(internal(format!(
            "expected one essential component within the enclosing radius, found {survivors}"
        )));
    }

    // Degree passes, ascending; pivots of pass d are the cleared columns of
    // pass d+1. Degree-1 columns are the non-merging edges, which already
    // excludes the union-find pairs.
    let mut columns = positive_edges;
    for d in 1..=max_hom_dim {
        let pivots = engine.degree_pass(d, &columns, threshold, &mut dims[d])?;
        if d < max_hom_dim {
            columns = engine.enumerate_columns(d + 2, &pivots);
        }
    }

    Ok(Barcode::from_dims(dims))
}

/// Smallest scale at which some admissible apex covers every vertex.
fn enclosing_radius(weights: &DistanceMatrix, n_base: usize, relative: bool) -> f64 {
    let n = weights.len();
    let apexes = if relative { n_base..n } else { 0..n };
    apexes
        .map(|v| (0..n).map(|u| weights.get(v, u)).fold(0.0f64, f64::max))
        .fold(f64::INFINITY, f64::min)
}

struct Engine<'a> {
    weights: &'a DistanceMatrix,
    n: usize,
    n_base: usize,
    enum_cap: f64,
}

impl Engine<'_> {
    fn value_of(&self, verts: &[u32]) -> f64 {
        let mut val = 0.0f64;
        for i in 0..verts.len() {
            for j in (i + 1)..verts.len() {
                val = val.max(self.weights.get(verts[i] as usize, verts[j] as usize));
            }
        }
        val
    }

    /// Pushes every cofacet of the simplex `key` (of dimension `d`) within
    /// the enumeration cap onto the working heap.
    fn push_cofacets(&self, key: u128, d: usize, heap: &mut BinaryHeap<Reverse<Entry>>) {
        let mut verts = [0u32; MAX_VERTICES];
        let verts = &mut verts[..d + 1];
        unpack(key, verts);
        let val = self.value_of(verts);
        for v in 0..self.n as u32 {
            if verts.contains(&v) {
                continue;
            }
            let mut cval = val;
            for &u in verts.iter() {
                cval = cval.max(self.weights.get(u as usize, v as usize));
            }
            if cval <= self.enum_cap {
                heap.push(Reverse(Entry {
                    value: cval,
                    key: insert_pack(verts, v),
                }));
            }
        }
    }

    /// One reduction pass over the degree-`d` columns (ascending `(value,
    /// key)` order), recording dimension-`d` intervals. Returns the claimed
    /// pivot keys, which are the cleared columns of the next pass.
    fn degree_pass(
        &self,
        d: usize,
        columns: &[(f64, u128)],
        threshold: Option<f64>,
        out: &mut Vec<Interval>,
    ) -> Result<HashSet<u128>> {
        let mut claimed: HashMap<u128, Vec<u128>> = HashMap::new();
        let mut verts_buf = [0u32; MAX_VERTICES];
        for &(sval, skey) in columns.iter().rev() {
            let verts = &mut verts_buf[..d + 1];
            unpack(skey, verts);

            let mut v_col: Vec<u128> = vec![skey];
            let mut heap: BinaryHeap<Reverse<Entry>> = BinaryHeap::new();
            let mut pivot: Option<Entry> = None;
            let mut emergent = false;
            let mut may_shortcut = true;

            for v in 0..self.n as u32 {
                if verts.contains(&v) {
                    continue;
                }
                let mut cval = sval;
                for &u in verts.iter() {
                    cval = cval.max(self.weights.get(u as usize, v as usize));
                }
                if cval > self.enum_cap {
                    continue;
                }
                let ckey = insert_pack(verts, v);
                if may_shortcut && cval == sval {
                    if !claimed.contains_key(&ckey) {
                        pivot = Some(Entry {
                            value: cval,
                            key: ckey,
                        });
                        emergent = true;
                        break;
                    }
                    may_shortcut = false;
                }
                heap.push(Reverse(Entry {
                    value: cval,
                    key: ckey,
                }));
            }

            if !emergent {
                pivot = loop {
                    let Some(p) = pop_pivot(&mut heap) else {
                        break None;
                    };
                    let Some(owner) = claimed.get(&p.key) else {
                        break Some(p);
                    };
                    // The owner's coboundary contains p as well, so pushing p
                    // back lets the two copies cancel.
                    let owner = owner.clone();
                    heap.push(Reverse(p));
                    for &member in &owner {
                        self.push_cofacets(member, d, &mut heap);
                    }
                    v_col.extend_from_slice(&owner);
                };
            }

            match pivot {
                Some(p) => {
                    v_col.sort_unstable();
                    parity_filter(&mut v_col);
                    debug_assert!(!v_col.is_empty());
                    claimed.insert(p.key, v_col);
                    if p.value != sval {
                        out.push(Interval::finite(sval, p.value));
                    }
                }
                None => match threshold {
                    Some(t) => {
                        if sval != t {
                            out.push(Interval::truncated(sval, t));
                        }
                    }
                    None => {
                        return Err(internal(
                            "positive simplex left unpaired within the enclosing radius",
                        ));
                    }
                },
            }
        }
        Ok(claimed.into_keys().collect())
    }

    /// All `size`-vertex basis simplices within the cap, except the cleared
    /// keys, in ascending `(value, key)` order.
    fn enumerate_columns(&self, size: usize, cleared: &HashSet<u128>) -> Vec<(f64, u128)> {
        fn grow(
            eng: &Engine<'_>,
            verts: &mut Vec<u32>,
            val: f64,
            size: usize,
            cleared: &HashSet<u128>,
            out: &mut Vec<(f64, u128)>,
        ) {
            if verts.len() == size {
                let key = pack(verts);
                if !cleared.contains(&key) {
                    out.push((val, key));
                }
                return;
            }
            let lo = verts.last().map_or(0, |&u| u as usize + 1);
            let hi = if verts.is_empty() { eng.n_base } else { eng.n };
            for v in lo..hi {
                let mut nv = val;
                for &u in verts.iter() {
                    nv = nv.max(eng.weights.get(u as usize, v));
                }
                if nv <= eng.enum_cap {
                    verts.push(v as u32);
                    grow(eng, verts, nv, size, cleared, out);
                    verts.pop();
                }
            }
        }
        let mut out = Vec::new();
        let mut verts = Vec::with_capacity(size);
        grow(self, &mut verts, 0.0, size, cleared, &mut out);
        out.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        out
    }
}
