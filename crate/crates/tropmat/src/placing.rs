//! Placing extensions of mixed subdivisions.
//!
//! `n`-placing extends a subdivision of `nΔ^{d-1}` to one of `(n+1)Δ^{d-1}`
//! by inserting the summands of a new simplex factor one vertex at a time
//! along a permutation `σ` of the coordinates: at stage `i` every vertex
//! cell of the contraction by `{σ_1..σ_{i-1}}` gains the new entry
//! `{σ_1..σ_i}`.  `d`-placing is the dual construction raising `d`, driven
//! by deletions along a permutation `τ` of the positions.

use std::collections::BTreeSet;

use crate::subdivision::MixedSubdivision;
use crate::subset::Subset;
use crate::types::NdType;
use crate::{Error, Result};

fn check_permutation_of(labels: &[u8], expected: Subset) -> Result<()> {
    let as_set = Subset::from_labels(labels.iter().copied());
    if labels.len() != expected.len() as usize || as_set != expected {
        return Err(Error::BadPermutation);
    }
    Ok(())
}

/// Cells of `cells` avoiding the coordinates in `removed` (labels kept).
fn contract_types(cells: &BTreeSet<NdType>, removed: Subset) -> Vec<NdType> {
    cells
        .iter()
        .filter(|t| t.entries().iter().all(|e| e.intersection(removed).is_empty()))
        .cloned()
        .collect()
}

/// Vertex cells within the coordinate set `active`: type graph connected
/// over the position nodes and the active coordinate nodes.
fn local_vertices(cells: &[NdType], active: Subset) -> Vec<NdType> {
    cells
        .iter()
        .filter(|t| t.components_within(active) == 1)
        .cloned()
        .collect()
}

/// The `n`-placing extension of `s` with respect to a permutation `σ` of the
/// coordinates `1..=d`; a subdivision of `(n+1)Δ^{d-1}`.
pub fn n_placing(s: &MixedSubdivision, sigma: &[u8]) -> Result<MixedSubdivision> {
    let d = s.d();
    check_permutation_of(sigma, Subset::full(d))?;
    let all = s.all_cells();
    let mut maximal: BTreeSet<NdType> = BTreeSet::new();
    let mut placed = Subset::EMPTY;
    for &coord in sigma {
        // stage for vertex (n+1, coord): contraction by the coordinates
        // already placed, new entry = placed ∪ {coord}
        let remaining = Subset::full(d).minus(placed);
        let contracted = contract_types(&all, placed);
        let new_entry = placed.union(Subset::singleton(coord));
        for v in local_vertices(&contracted, remaining) {
            maximal.insert(v.append_entry(new_entry));
        }
        placed.insert(coord);
    }
    MixedSubdivision::new(s.n() + 1, d, maximal)
}

/// The `d`-placing extension of `s` with respect to a permutation `τ` of the
/// positions (0-based); a subdivision of `nΔ^d`.
pub fn d_placing(s: &MixedSubdivision, tau: &[usize]) -> Result<MixedSubdivision> {
    let n = s.n();
    let new_d = s.d() + 1;
    if new_d > Subset::MAX_GROUND {
        return Err(Error::BadDimension(new_d as usize));
    }
    {
        let mut seen = vec![false; n];
        if tau.len() != n {
            return Err(Error::BadPermutation);
        }
        for &i in tau {
            if i >= n || seen[i] {
                return Err(Error::BadPermutation);
            }
            seen[i] = true;
        }
    }
    let all = s.all_cells();
    let new_coord = Subset::singleton(new_d);
    let mut maximal: BTreeSet<NdType> = BTreeSet::new();
    for stage in 0..n {
        // stage for vertex (τ_stage, d+1): cells of the deletion by
        // {τ_0..τ_{stage-1}}, with {d+1} re-inserted at the deleted
        // positions and d+1 added to entry τ_stage
        let deleted: &[usize] = &tau[..stage];
        let mut seen: BTreeSet<Vec<Subset>> = BTreeSet::new();
        for t in &all {
            let kept: Vec<Subset> = (0..n)
                .filter(|i| !deleted.contains(i))
                .map(|i| t.entry(i))
                .collect();
            seen.insert(kept);
        }
        for kept in seen {
            let reduced = NdType::new(s.d(), kept.clone()).unwrap();
            if reduced.components() != 1 {
                continue; // only the maximal cells of the deletion are visible
            }
            // reassemble an (n, d+1)-type
            let mut entries = vec![Subset::EMPTY; n];
            let mut it = kept.into_iter();
            for i in 0..n {
                if deleted.contains(&i) {
                    entries[i] = new_coord;
                } else {
                    let e = it.next().unwrap();
                    entries[i] = Subset::from_mask(e.mask());
                }
            }
            entries[tau[stage]] = entries[tau[stage]].union(new_coord);
            maximal.insert(NdType::new(new_d, entries).unwrap());
        }
    }
    MixedSubdivision::new(n, new_d, maximal)
}

/// The placing subdivision of `2Δ^{d-1}`: the `n`-placing extension of the
/// trivial subdivision of `Δ^{d-1}` with respect to `σ`.  Its maximal cells
/// are `({σ_k..σ_d}, {σ_1..σ_k})` for `k = 1..d`.
pub fn placing_of_simplex(d: u8, sigma: &[u8]) -> Result<MixedSubdivision> {
    n_placing(&MixedSubdivision::trivial(1, d), sigma)
}
