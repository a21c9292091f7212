//! Textbook boundary-matrix reduction, kept as the reference route.

use std::collections::{HashMap, HashSet};

use crate::filtration::Filtration;

use super::ReductionOutcome;

/// Symmetric difference of two ascending index lists (Z/2 column addition).
pub(super) fn add_columns(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Global indices of the codimension-1 faces of `verts`, ascending.
pub(super) fn boundary_faces(verts: &[u32], index_of: &HashMap<&[u32], usize>) -> Vec<usize> {
    let mut face = Vec::with_capacity(verts.len() - 1);
    let mut faces: Vec<usize> = (0..verts.len())
        .map(|skip| {
            face.clear();
            face.extend(
                verts
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v),
            );
            index_of[face.as_slice()]
        })
        .collect();
    faces.sort_unstable();
    faces
}

/// Left-to-right reduction of the full boundary matrix in filtration order.
/// Returns every persistence pair plus the unpaired positive columns.
pub(super) fn plain_reduction(f: &Filtration) -> ReductionOutcome {
    let sims = f.simplices();
    let mut index_of: HashMap<&[u32], usize> = HashMap::with_capacity(sims.len());
    for (j, s) in sims.iter().enumerate() {
        index_of.insert(s.vertices(), j);
    }

    // pivot row -> column that owns it
    let mut owner_of_low: HashMap<usize, usize> = HashMap::new();
    let mut reduced: Vec<Option<Vec<usize>>> = vec![None; sims.len()];
    let mut pairs = Vec::new();
    let mut positive = vec![false; sims.len()];

    for (j, s) in sims.iter().enumerate() {
        let verts = s.vertices();
        let mut col: Vec<usize> = if verts.len() == 1 {
            Vec::new()
        } else {
            boundary_faces(verts, &index_of)
        };
        while let Some(&low) = col.last() {
            match owner_of_low.get(&low) {
                Some(&owner) => {
                    col = add_columns(&col, reduced[owner].as_ref().unwrap());
                }
                None => break,
            }
        }
        match col.last() {
            Some(&low) => {
                owner_of_low.insert(low, j);
                pairs.push((low, j));
                reduced[j] = Some(col);
            }
            None => positive[j] = true,
        }
    }

    let killed: HashSet<usize> = pairs.iter().map(|&(low, _)| low).collect();
    let unpaired = (0..sims.len())
        .filter(|j| positive[*j] && !killed.contains(j))
        .collect();
    ReductionOutcome { pairs, unpaired }
}
