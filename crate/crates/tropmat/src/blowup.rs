//! Blow-ups: replacing the hyperplane at one position by a shifted bundle.
//!
//! For a fine subdivision the blow-up at position `i` with respect to a fine
//! subdivision `S'` subdivides the `C_i`-summand face of every maximal cell
//! `C` as the restriction of `S'`, so the cells are
//! `(C \ i, X)` with `X` maximal in `S'` restricted to the face `C_i`.
//!
//! For arbitrary (possibly coarse) subdivisions the blow-up at position `i`
//! along a permutation `π` inserts a copy of hyperplane `i` shifted by an
//! infinitesimal vector `δ` with `δ_{π_1} < … < δ_{π_d}`.  The new maximal
//! cells are computed exactly from that model: every maximal cell `A`
//! contributes the types `(A|_{P(z)}, Y)` where `z` ranges over the
//! perturbation directions, `A|_{P(z)}` is the refinement of `A` along the
//! level partition of `z`, and `Y = argmin_{k ∈ A_i}(z_k - δ_k)` is the
//! sector of the shifted hyperplane.  Each combinatorial candidate `(B, Y)`
//! is kept iff its direction system is feasible (exact rational difference
//! constraints) and the resulting type is a vertex type.  Cells away from
//! the `i`-th hyperplane keep their sector: `(A, A_i)` when `|A_i| = 1`.

use std::collections::BTreeSet;

use num_rational::BigRational;

use crate::feasibility::DifferenceSystem;
use crate::subdivision::MixedSubdivision;
use crate::subset::Subset;
use crate::types::NdType;
use crate::{Error, Result};

/// Blow-up of a fine subdivision at position `i` (0-based) with respect to a
/// fine subdivision `s2` of `n'Δ^{d-1}`.  Yields a fine subdivision of
/// `(n+n'-1)Δ^{d-1}`; the two summand blocks appear as positions
/// `0..n-1` (without `i`) followed by the `n'` new positions.
pub fn blow_up(
    s: &MixedSubdivision,
    i: usize,
    s2: &MixedSubdivision,
) -> Result<MixedSubdivision> {
    if i >= s.n() {
        return Err(Error::PositionOutOfRange(i));
    }
    if s.d() != s2.d() {
        return Err(Error::MixedParameters {
            expected_n: s2.n(),
            expected_d: s.d(),
            n: s2.n(),
            d: s2.d(),
        });
    }
    if !s.is_fine() || !s2.is_fine() {
        return Err(Error::NotFine);
    }
    let all2 = s2.all_cells();
    let mut maximal = BTreeSet::new();
    for c in s.maximal_cells() {
        let face = c.entry(i);
        // restriction of s2 to the face: cells confined to the face's
        // coordinates, maximal = locally full-dimensional
        let restricted: Vec<NdType> = all2
            .iter()
            .filter(|x| x.entries().iter().all(|e| e.is_subset_of(face)))
            .cloned()
            .collect();
        let base = c.delete_position(i).ok();
        for x in restricted
            .iter()
            .filter(|x| x.components_within(face) == 1)
        {
            let mut cell = match &base {
                Some(b) => b.clone(),
                None => {
                    // n = 1: the cell is exactly the restricted block
                    let mut entries = x.entries().to_vec();
                    let first = entries.remove(0);
                    let mut t = NdType::new(s.d(), vec![first]).unwrap();
                    for e in entries {
                        t = t.append_entry(e);
                    }
                    maximal.insert(t);
                    continue;
                }
            };
            for e in x.entries() {
                cell = cell.append_entry(*e);
            }
            maximal.insert(cell);
        }
    }
    MixedSubdivision::new(s.n() + s2.n() - 1, s.d(), maximal)
}

/// Blow-up of an arbitrary subdivision at position `i` (0-based) along a
/// permutation `π` of the coordinates; a subdivision of `(n+1)Δ^{d-1}` with
/// the new position appended last.
pub fn blow_up_nonfine(
    s: &MixedSubdivision,
    i: usize,
    pi: &[u8],
) -> Result<MixedSubdivision> {
    if i >= s.n() {
        return Err(Error::PositionOutOfRange(i));
    }
    let d = s.d();
    {
        let as_set = Subset::from_labels(pi.iter().copied());
        if pi.len() != d as usize || as_set != Subset::full(d) {
            return Err(Error::BadPermutation);
        }
    }
    // δ_{π_t} = t; only differences of δ matter
    let mut delta = vec![BigRational::default(); d as usize];
    for (t, &j) in pi.iter().enumerate() {
        delta[(j - 1) as usize] = BigRational::from_integer((t as i64 + 1).into());
    }
    let mut maximal: BTreeSet<NdType> = BTreeSet::new();
    for a in s.maximal_cells() {
        let ai = a.entry(i);
        if ai.is_singleton() {
            // away from hyperplane i: the new sector equals the old one
            maximal.insert(a.append_entry(ai));
            continue;
        }
        for b in a.faces() {
            for y in Subset::nonempty_subsets(ai) {
                if !direction_feasible(a, &b, ai, y, &delta) {
                    continue;
                }
                let cell = b.append_entry(y);
                if cell.components() == 1 {
                    maximal.insert(cell);
                }
            }
        }
    }
    MixedSubdivision::new(s.n() + 1, d, maximal)
}

/// Feasibility of a perturbation direction `z` with level refinement
/// `a|_{P(z)} = b` and shifted-hyperplane sector `argmin_{k∈ai}(z-δ)_k = y`.
fn direction_feasible(
    a: &NdType,
    b: &NdType,
    ai: Subset,
    y: Subset,
    delta: &[BigRational],
) -> bool {
    let d = a.d() as usize;
    let mut sys = DifferenceSystem::new(d);
    for (ea, eb) in a.entries().iter().zip(b.entries()) {
        let labels = eb.to_labels();
        for w in labels.windows(2) {
            sys.eq((w[0] - 1) as usize, (w[1] - 1) as usize, BigRational::default());
        }
        let lead = (labels[0] - 1) as usize;
        for k in ea.minus(*eb).iter() {
            sys.gt((k - 1) as usize, lead, BigRational::default());
        }
    }
    let y_labels = y.to_labels();
    for w in y_labels.windows(2) {
        // z_j - δ_j = z_k - δ_k
        let (j, k) = ((w[0] - 1) as usize, (w[1] - 1) as usize);
        sys.eq(j, k, delta[j].clone() - delta[k].clone());
    }
    let lead = (y_labels[0] - 1) as usize;
    for l in ai.minus(y).iter() {
        // z_l - δ_l > z_lead - δ_lead
        let l = (l - 1) as usize;
        sys.gt(l, lead, delta[l].clone() - delta[lead].clone());
    }
    sys.feasible()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::placing::placing_of_simplex;
    use crate::subdivision::{to_tom, topes_of, verify_subdivision};

    fn staircase() -> MixedSubdivision {
        placing_of_simplex(3, &[1, 2, 3]).unwrap()
    }

    #[test]
    fn blow_up_with_trivial_factor_is_identity_up_to_position_order() {
        let s = staircase();
        for i in 0..2 {
            let out = blow_up(&s, i, &MixedSubdivision::trivial(1, 3)).unwrap();
            let expected: BTreeSet<NdType> = s
                .maximal_cells()
                .iter()
                .map(|c| c.delete_position(i).unwrap().append_entry(c.entry(i)))
                .collect();
            assert_eq!(out.maximal_cells(), &expected);
        }
    }

    #[test]
    fn blow_up_staircase_by_staircase() {
        let s = staircase();
        let out = blow_up(&s, 0, &s).unwrap();
        assert_eq!((out.n(), out.d()), (3, 3));
        let report = verify_subdivision(&out);
        assert!(report.pass(), "{:?}", report.failures); // volume 9
        assert!(out.is_fine());
        assert!(to_tom(&out).unwrap().is_tom());
    }

    #[test]
    fn blow_up_rejects_coarse_input() {
        let coarse = MixedSubdivision::trivial(2, 2);
        let fine = placing_of_simplex(2, &[1, 2]).unwrap();
        assert_eq!(blow_up(&coarse, 0, &fine).unwrap_err(), Error::NotFine);
    }

    #[test]
    fn nonfine_blow_up_of_coincident_pair() {
        // two coincident hyperplanes on a line, blow up the first along
        // π = (1,2): the doubled apex keeps its cell with new sector {2},
        // and the shifted copy carves one new cell
        let s = MixedSubdivision::trivial(2, 2);
        let out = blow_up_nonfine(&s, 0, &[1, 2]).unwrap();
        let expected: BTreeSet<NdType> = [
            NdType::of(2, &[&[1, 2], &[1, 2], &[2]]),
            NdType::of(2, &[&[1], &[1], &[1, 2]]),
        ]
        .into_iter()
        .collect();
        assert_eq!(out.maximal_cells(), &expected);
        let report = verify_subdivision(&out);
        assert!(report.pass(), "{:?}", report.failures);

        // the mirror permutation carves the other side
        let out = blow_up_nonfine(&s, 0, &[2, 1]).unwrap();
        let expected: BTreeSet<NdType> = [
            NdType::of(2, &[&[1, 2], &[1, 2], &[1]]),
            NdType::of(2, &[&[2], &[2], &[1, 2]]),
        ]
        .into_iter()
        .collect();
        assert_eq!(out.maximal_cells(), &expected);
        assert!(verify_subdivision(&out).pass());
    }

    #[test]
    fn nonfine_blow_up_agrees_with_fine_blow_up_on_fine_input() {
        // on fine input the perturbation model reproduces the fine blow-up
        // with the placing subdivision of the reversed permutation
        let s = staircase();
        for i in 0..2 {
            for pi in crate::subset::permutations(Subset::full(3)) {
                let nonfine = blow_up_nonfine(&s, i, &pi).unwrap();
                let rev: Vec<u8> = pi.iter().rev().copied().collect();
                let fine = blow_up(&s, i, &placing_of_simplex(3, &rev).unwrap()).unwrap();
                // reorder: (B_0..B_{n-1}, Y) ↔ (B \ i, B_i, Y)
                let reordered: BTreeSet<NdType> = fine
                    .maximal_cells()
                    .iter()
                    .map(|c| {
                        // fine cells are (C\i, X_1, X_2); move X_1 back to i
                        let x1 = c.entry(1);
                        let x2 = c.entry(2);
                        let rest = c.entry(0);
                        let entries = match i {
                            0 => vec![x1, rest, x2],
                            _ => vec![rest, x1, x2],
                        };
                        NdType::new(3, entries).unwrap()
                    })
                    .collect();
                assert_eq!(
                    nonfine.maximal_cells(),
                    &reordered,
                    "i={i}, pi={pi:?}"
                );
                assert!(verify_subdivision(&nonfine).pass());
            }
        }
    }

    #[test]
    fn nonfine_blow_up_refines_tope_map() {
        let s = MixedSubdivision::trivial(2, 2);
        let out = blow_up_nonfine(&s, 0, &[1, 2]).unwrap();
        assert!(to_tom(&out).unwrap().is_tom());
        // old lattice points: q of 2Δ¹ embeds as topes of the blow-up at
        // q + e_{sector}; every old tope reappears extended
        let old = topes_of(&s);
        for (_, topes) in old {
            for t in topes {
                let extended = t.append_entry(t.entry(0));
                assert!(out.all_cells().contains(&extended));
            }
        }
    }
}
