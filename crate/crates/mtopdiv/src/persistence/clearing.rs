//! Optimized reduction for explicit filtrations: union-find in dimension 0,
//! top-down column reduction with clearing above it.
//!
//! Clearing rests on the pairing theorem: whenever a column `j` of the
//! dimension-`d` boundary reduces to a nonzero column with pivot `i`, the
//! column of simplex `i` in the dimension-`d-1` boundary is known to reduce
//! to zero. Processing dimensions from the top down lets each pass skip
//! exactly those columns.

use std::collections::{HashMap, HashSet};

use crate::filtration::Filtration;

use super::plain::{add_columns, boundary_faces};
use super::union_find::UnionFind;
use super::ReductionOutcome;

pub(super) fn clearing_reduction(f: &Filtration, max_hom_dim: usize) -> ReductionOutcome {
    let sims = f.simplices();
    let n = f.n_vertices();

    let mut index_of: HashMap<&[u32], usize> = HashMap::with_capacity(sims.len());
    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); f.max_dim() + 1];
    for (j, s) in sims.iter().enumerate() {
        index_of.insert(s.vertices(), j);
        by_dim[s.dim()].push(j);
    }
    // Vertex v is the filtration's v-th simplex: all vertices carry value 0,
    // dimension 0 sorts before anything else and single-vertex lists sort
    // numerically.
    debug_assert!((0..n).all(|v| sims[v].vertices() == [v as u32]));

    let mut pairs = Vec::new();
    let mut killed: HashSet<usize> = HashSet::new();

    // Dimension 0: merge events pair the absorbed component root with the
    // merging edge; surviving roots are the essential classes.
    let mut uf = UnionFind::new(n);
    let mut positive_edges = Vec::new();
    for &j in &by_dim[1] {
        let e = sims[j].vertices();
        match uf.union(e[0], e[1]) {
            Some(absorbed) => {
                pairs.push((absorbed as usize, j));
                killed.insert(absorbed as usize);
            }
            None => positive_edges.push(j),
        }
    }
    let roots: Vec<usize> = (0..n as u32).filter(|&v| uf.find(v) == v).map(|v| v as usize).collect();

    // Higher passes, top dimension first. Pass d pairs (d-1)-simplices with
    // d-simplices; its pivots are the cleared columns of the pass below.
    let top = f.max_dim().min(max_hom_dim + 1);
    let mut positive_by_dim: Vec<Vec<usize>> = vec![Vec::new(); max_hom_dim + 1];
    let mut cleared: HashSet<usize> = HashSet::new();
    for d in (2..=top).rev() {
        let mut owner_of_low: HashMap<usize, usize> = HashMap::new();
        let mut reduced: HashMap<usize, Vec<usize>> = HashMap::new();
        let mut pass_lows: HashSet<usize> = HashSet::new();
        for &j in &by_dim[d] {
            if cleared.contains(&j) {
                continue;
            }
            let mut col = boundary_faces(sims[j].vertices(), &index_of);
            while let Some(&low) = col.last() {
                match owner_of_low.get(&low) {
                    Some(&owner) => col = add_columns(&col, &reduced[&owner]),
                    None => break,
                }
            }
            match col.last() {
                Some(&low) => {
                    owner_of_low.insert(low, j);
                    pairs.push((low, j));
                    killed.insert(low);
                    pass_lows.insert(low);
                    reduced.insert(j, col);
                }
                None => {
                    if d <= max_hom_dim {
                        positive_by_dim[d].push(j);
                    }
                }
            }
        }
        cleared = pass_lows;
    }

    let mut unpaired = roots;
    for &j in positive_edges.iter().chain(positive_by_dim.iter().flatten()) {
        if !killed.contains(&j) {
            unpaired.push(j);
        }
    }
    ReductionOutcome { pairs, unpaired }
}
