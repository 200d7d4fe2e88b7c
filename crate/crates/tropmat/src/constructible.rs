//! Constructibility witnesses for the subcomplexes `M(I,J)`.
//!
//! A pure complex is constructible when it is a single maximal cell or
//! splits into two constructible complexes of the same dimension whose
//! intersection is constructible of dimension one lower.  For `M(I,J)` in
//! general position the split is explicit: pick two maximal cells, a
//! position and a partition block where they differ, and split that block
//! while removing one distinguishing element from each side's confinement
//! set.  The witness tree records every split together with the checked
//! complex identities.

use std::collections::BTreeSet;

use crate::convexity::{closure_in, FaceIndex};
use crate::halfspace::{m_of, PartitionTuple};
use crate::subset::Subset;
use crate::tom::Tom;
use crate::types::NdType;
use crate::{Error, Result};

/// The data of one split step.
#[derive(Clone, Debug)]
pub struct SplitData {
    /// Position (0-based) where the two chosen maximal cells differ.
    pub position: usize,
    /// Index of the partition block witnessing the difference.
    pub block: usize,
    /// The distinguishing elements of the two cells in that block.
    pub a_elt: u8,
    pub b_elt: u8,
    /// Confinement tuples of the two children.
    pub i1: Vec<Subset>,
    pub i2: Vec<Subset>,
    /// The refined partition tuple of the intersection complex.
    pub j0: PartitionTuple,
}

/// Checks recorded at an internal node of a witness tree.
#[derive(Clone, Debug)]
pub struct NodeChecks {
    /// Closure(left) ∪ closure(right) = closure(parent).
    pub union_is_parent: bool,
    /// Closure(left) ∩ closure(right) = closure of the `J_0`-complex.
    pub intersection_is_j0: bool,
    /// Parent and children dimensions agree; the intersection drops by one.
    pub dimension_drop: bool,
    /// Connectivity and purity of the children and the intersection.
    pub pieces_connected_pure: bool,
}

impl NodeChecks {
    pub fn all(&self) -> bool {
        self.union_is_parent
            && self.intersection_is_j0
            && self.dimension_drop
            && self.pieces_connected_pure
    }
}

/// A constructibility witness: a binary tree whose leaves are
/// single-maximal-cell complexes.
#[derive(Clone, Debug)]
pub enum Witness {
    Leaf {
        cell: NdType,
    },
    Node {
        split: SplitData,
        checks: NodeChecks,
        left: Box<Witness>,
        right: Box<Witness>,
    },
}

impl Witness {
    pub fn all_checks_pass(&self) -> bool {
        match self {
            Witness::Leaf { .. } => true,
            Witness::Node {
                checks,
                left,
                right,
                ..
            } => checks.all() && left.all_checks_pass() && right.all_checks_pass(),
        }
    }

    pub fn leaves(&self) -> usize {
        match self {
            Witness::Leaf { .. } => 1,
            Witness::Node { left, right, .. } => left.leaves() + right.leaves(),
        }
    }
}

/// Expected dimension of `M(I,J)`: `d + n - 1 - Σ (block counts)`.
pub fn expected_dimension(n: usize, d: u8, j: &PartitionTuple) -> Option<usize> {
    let blocks: usize = j.block_counts().iter().sum();
    (d as usize + n).checked_sub(1 + blocks)
}

/// Connectivity and purity check for a nonempty `M(I,J)` complex:
/// connected, every maximal member of the expected dimension, every member
/// a face of a maximal one.  `index` must be the face index of the ambient
/// collection.
pub fn mij_connected_pure(
    m: &Tom,
    index: &FaceIndex,
    complex: &BTreeSet<NdType>,
    j: &PartitionTuple,
) -> bool {
    if complex.is_empty() {
        return true;
    }
    let Some(want) = expected_dimension(m.n(), m.d(), j) else {
        return false;
    };
    if !index.connected(complex) {
        return false;
    }
    let maximal = index.maximal_members(complex);
    maximal.iter().all(|c| c.dimension() == want)
        && index.pure_supported(complex, &maximal)
}

/// Compute the split data for two given maximal cells of `M(I,J)`.
///
/// In general position the maximal cells meet every block in exactly one
/// element.  The split happens at the first position where the cells
/// differ, in the differing block that contains the smallest
/// distinguishing label.
pub fn split_step(
    i_sets: &[Subset],
    j: &PartitionTuple,
    a: &NdType,
    b: &NdType,
) -> Result<SplitData> {
    for (pos, blocks) in j.partitions().iter().enumerate() {
        if a.entry(pos) == b.entry(pos) {
            continue;
        }
        let chosen = blocks
            .iter()
            .enumerate()
            .filter(|(_, block)| {
                a.entry(pos).intersection(**block) != b.entry(pos).intersection(**block)
            })
            .min_by_key(|(_, block)| {
                a.entry(pos)
                    .union(b.entry(pos))
                    .intersection(**block)
                    .min_label()
            });
        let Some((bi, block)) = chosen else { continue };
        let in_a = a.entry(pos).intersection(*block);
        let in_b = b.entry(pos).intersection(*block);
        if !in_a.is_singleton() || !in_b.is_singleton() {
            return Err(Error::NotGeneralPosition);
        }
        let a_elt = in_a.min_label().unwrap();
        let b_elt = in_b.min_label().unwrap();
        // Side 1 loses a, side 2 loses the whole rest of the block: the
        // sides then meet exactly in the cells straddling the split block.
        // (Removing only b leaves cells avoiding both a and b in both
        // sides, which breaks the intersection identity for blocks of
        // three or more elements; for 2-blocks this is removing b.)
        let mut i1 = i_sets.to_vec();
        i1[pos] = i1[pos].minus(Subset::singleton(a_elt));
        let mut i2 = i_sets.to_vec();
        i2[pos] = i2[pos].minus(block.minus(Subset::singleton(a_elt)));
        let mut new_blocks = blocks.clone();
        new_blocks.remove(bi);
        new_blocks.push(Subset::singleton(a_elt));
        new_blocks.push(block.minus(Subset::singleton(a_elt)));
        let j0 = j.with_partition(pos, new_blocks)?;
        return Ok(SplitData {
            position: pos,
            block: bi,
            a_elt,
            b_elt,
            i1,
            i2,
            j0,
        });
    }
    Err(Error::NotGeneralPosition)
}

/// Build the witness tree for `M(I,J)` over a general-position collection.
pub fn constructibility_witness(
    m: &Tom,
    i_sets: &[Subset],
    j: &PartitionTuple,
) -> Result<Witness> {
    if !m.is_general_position() {
        return Err(Error::NotGeneralPosition);
    }
    let index = FaceIndex::new(m.types());
    constructibility_witness_indexed(m, &index, i_sets, j)
}

/// Same as [`constructibility_witness`] with a caller-provided face index
/// of `m.types()` (saves rebuilding it across many `(I,J)` queries).
pub fn constructibility_witness_indexed(
    m: &Tom,
    index: &FaceIndex,
    i_sets: &[Subset],
    j: &PartitionTuple,
) -> Result<Witness> {
    witness_recursive(m, index, i_sets, j, 0)
}

fn witness_recursive(
    m: &Tom,
    index: &FaceIndex,
    i_sets: &[Subset],
    j: &PartitionTuple,
    depth: usize,
) -> Result<Witness> {
    if depth > 4 * m.d() as usize * m.n() {
        return Err(Error::TooLarge("witness recursion depth".into()));
    }
    let complex = m_of(m.types(), i_sets, j);
    let maximal: Vec<NdType> = index.maximal_members(&complex).into_iter().collect();
    match maximal.len() {
        0 => Err(Error::NotAMember("empty complex has no witness".into())),
        1 => Ok(Witness::Leaf {
            cell: maximal.into_iter().next().unwrap(),
        }),
        _ => {
            let (a, b) = (&maximal[0], &maximal[1]);
            let split = split_step(i_sets, j, a, b)?;
            let left_complex = m_of(m.types(), &split.i1, j);
            let right_complex = m_of(m.types(), &split.i2, j);
            let j0_complex = m_of(m.types(), i_sets, &split.j0);
            let ambient = m.types();
            let cl = |c: &BTreeSet<NdType>| closure_in(ambient, c);
            let (cl_parent, cl_left, cl_right, cl_j0) = (
                cl(&complex),
                cl(&left_complex),
                cl(&right_complex),
                cl(&j0_complex),
            );
            let union: BTreeSet<NdType> = cl_left.union(&cl_right).cloned().collect();
            let meet: BTreeSet<NdType> = cl_left.intersection(&cl_right).cloned().collect();
            let dim = expected_dimension(m.n(), m.d(), j);
            let dim_j0 = expected_dimension(m.n(), m.d(), &split.j0);
            let checks = NodeChecks {
                union_is_parent: union == cl_parent,
                intersection_is_j0: meet == cl_j0,
                dimension_drop: matches!((dim, dim_j0), (Some(p), Some(q)) if q + 1 == p),
                pieces_connected_pure: mij_connected_pure(m, index, &left_complex, j)
                    && mij_connected_pure(m, index, &right_complex, j)
                    && mij_connected_pure(m, index, &j0_complex, &split.j0),
            };
            let left = witness_recursive(m, index, &split.i1, j, depth + 1)?;
            let right = witness_recursive(m, index, &split.i2, j, depth + 1)?;
            Ok(Witness::Node {
                split,
                checks,
                left: Box::new(left),
                right: Box::new(right),
            })
        }
    }
}
