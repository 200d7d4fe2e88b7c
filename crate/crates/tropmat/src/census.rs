//! Exhaustive enumeration of all mixed subdivisions of `nΔ^{d-1}` at desk
//! scale.
//!
//! Candidate maximal cells are the full-dimensional types (connected type
//! graph).  A set of candidates is a subdivision iff all pairs are
//! comparable and the volumes sum to `n^{d-1}`; the search backtracks over
//! candidates in canonical order with a volume bound, and every hit is
//! re-checked by the full verifier.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::subdivision::{cell_volume, verify_subdivision, MixedSubdivision};
use crate::subset::Subset;
use crate::types::{comparability_graph, NdType};
use crate::{Error, Result};

/// All full-dimensional `(n,d)`-types in canonical order.
pub fn full_dimensional_types(n: usize, d: u8) -> Vec<NdType> {
    let subsets = Subset::nonempty_subsets(Subset::full(d));
    let mut out = Vec::new();
    let mut stack: Vec<Subset> = Vec::new();
    fn recurse(
        n: usize,
        d: u8,
        subsets: &[Subset],
        stack: &mut Vec<Subset>,
        out: &mut Vec<NdType>,
    ) {
        if stack.len() == n {
            let t = NdType::new(d, stack.clone()).unwrap();
            if t.components() == 1 {
                out.push(t);
            }
            return;
        }
        for &s in subsets {
            stack.push(s);
            recurse(n, d, subsets, stack, out);
            stack.pop();
        }
    }
    recurse(n, d, &subsets, &mut stack, &mut out);
    out
}

/// All mixed subdivisions of `nΔ^{d-1}`, in canonical order.
pub fn census(n: usize, d: u8) -> Result<Vec<MixedSubdivision>> {
    let candidates = full_dimensional_types(n, d);
    if candidates.len() > 64 {
        return Err(Error::TooLarge(format!(
            "{} full-dimensional candidate cells",
            candidates.len()
        )));
    }
    let volumes: Vec<BigInt> = candidates
        .iter()
        .map(|c| cell_volume(c).expect("candidates are full-dimensional"))
        .collect();
    let compatible: Vec<Vec<bool>> = candidates
        .iter()
        .map(|a| {
            candidates
                .iter()
                .map(|b| comparability_graph(a, b).is_acyclic())
                .collect()
        })
        .collect();
    let target = BigInt::from(n).pow(d as u32 - 1);
    let mut found = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn recurse(
        start: usize,
        volume: BigInt,
        target: &BigInt,
        candidates: &[NdType],
        volumes: &[BigInt],
        compatible: &[Vec<bool>],
        chosen: &mut Vec<usize>,
        found: &mut Vec<MixedSubdivision>,
    ) {
        if volume == *target {
            let cells: Vec<NdType> = chosen.iter().map(|&i| candidates[i].clone()).collect();
            let s = MixedSubdivision::new(cells[0].n(), cells[0].d(), cells)
                .expect("full-dimensional cells");
            if verify_subdivision(&s).pass() {
                found.push(s);
            }
            return;
        }
        for next in start..candidates.len() {
            if volume.clone() + volumes[next].clone() > *target {
                continue;
            }
            if !chosen.iter().all(|&i| compatible[i][next]) {
                continue;
            }
            chosen.push(next);
            recurse(
                next + 1,
                volume.clone() + volumes[next].clone(),
                target,
                candidates,
                volumes,
                compatible,
                chosen,
                found,
            );
            chosen.pop();
        }
    }
    recurse(
        0,
        BigInt::zero(),
        &target,
        &candidates,
        &volumes,
        &compatible,
        &mut chosen,
        &mut found,
    );
    Ok(found)
}
