//! Structural operations on tropical oriented matroids: deletion,
//! contraction and duality.

use std::collections::BTreeSet;

use crate::subdivision::{from_tom, to_tom, MixedSubdivision};
use crate::subset::{ordered_partitions, Subset};
use crate::tom::Tom;
use crate::types::NdType;
use crate::{Error, Result};

impl Tom {
    /// Deletion of position `i` (0-based): drop that coordinate from every
    /// type.  Result has parameters `(n-1, d)`.
    pub fn deletion(&self, i: usize) -> Result<Tom> {
        if i >= self.n() {
            return Err(Error::PositionOutOfRange(i));
        }
        let types: Result<Vec<NdType>> = self.iter().map(|t| t.delete_position(i)).collect();
        Tom::new(self.n() - 1, self.d(), types?)
    }

    /// Contraction of coordinate `j` (1-based): keep the types avoiding `j`
    /// everywhere and relabel the remaining coordinates order-preservingly
    /// to `1..d-1`.  The inverse labelling is [`contraction_labels`].
    pub fn contraction(&self, j: u8) -> Result<Tom> {
        if j == 0 || j > self.d() {
            return Err(Error::CoordinateOutOfRange(j));
        }
        if self.d() == 1 {
            return Err(Error::ContractionEmpties);
        }
        let map = relabel_map(self.d(), j);
        let types: Vec<NdType> = self
            .iter()
            .filter(|t| t.entries().iter().all(|e| !e.contains(j)))
            .map(|t| t.relabel(self.d() - 1, &map))
            .collect();
        Tom::new(self.n(), self.d() - 1, types)
    }

    /// Dual collection: all refinements of the transposes of the vertices,
    /// over ordered partitions of the position set.  Parameters become
    /// `(d, n)`; enumerating partitions of `[n]` is practical for `n ≤ 7`.
    pub fn dual(&self) -> Result<Tom> {
        if self.n() > Subset::MAX_GROUND as usize {
            return Err(Error::BadDimension(self.n()));
        }
        let mut out: BTreeSet<NdType> = BTreeSet::new();
        let partitions = ordered_partitions(Subset::full(self.n() as u8));
        for v in self.vertices() {
            let t = v.transpose()?;
            for p in &partitions {
                out.insert(t.refine(p));
            }
        }
        Tom::new(self.d() as usize, self.n() as u8, out)
    }
}

/// Old labels of the coordinates surviving the contraction of `j`:
/// `contraction_labels(d, j)[new_label - 1]` is the original label.
pub fn contraction_labels(d: u8, j: u8) -> Vec<u8> {
    (1..=d).filter(|&k| k != j).collect()
}

fn relabel_map(d: u8, removed: u8) -> Vec<Option<u8>> {
    let mut map = vec![None; d as usize];
    let mut next = 1u8;
    for k in 1..=d {
        if k != removed {
            map[(k - 1) as usize] = Some(next);
            next += 1;
        }
    }
    map
}

/// The dual subdivision of `dΔ^{n-1}`: maximal cells are the
/// refinement-maximal members of the dual of the subdivision's type
/// collection.
pub fn dual_subdivision(s: &MixedSubdivision) -> Result<MixedSubdivision> {
    let dual = to_tom(s)?.dual()?;
    from_tom(&dual)
}
