//! Mixed subdivisions of the dilated simplex `nΔ^{d-1}`.
//!
//! A subdivision is stored by its maximal cells; every cell is the Minkowski
//! sum of the simplex faces named by its type, and faces of cells are
//! refinements of their types.  [`verify_subdivision`] checks the three
//! certifying criteria: full-dimensional maximal cells, pairwise proper
//! intersection (acyclic comparability graphs), and exact normalized volume
//! `n^{d-1}`.
//!
//! Volumes come from Ehrhart finite differences: the lattice points of a
//! dilated cell are exactly the sums of per-position multisets (simplices
//! are matroid base polytopes, and integer points of sums of base polytopes
//! split into sums of bases), so counting points of the first `d-1` dilates
//! determines the normalized volume exactly.  Fine cells are cross-checked
//! against the multinomial formula in tests.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::realize::LatticePoint;
use crate::subset::Subset;
use crate::tom::Tom;
use crate::types::{comparability_graph, type_graph, NdType};
use crate::{Error, Result};

/// A mixed subdivision of `nΔ^{d-1}`, stored by its maximal cells.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct MixedSubdivision {
    n: usize,
    d: u8,
    maximal_cells: BTreeSet<NdType>,
}

impl MixedSubdivision {
    /// Build from maximal cells.  Enforces the structural invariants (every
    /// cell full-dimensional, none a face of another); the geometric
    /// criteria are the business of [`verify_subdivision`].
    pub fn new(n: usize, d: u8, cells: impl IntoIterator<Item = NdType>) -> Result<Self> {
        if d == 0 || d > Subset::MAX_GROUND {
            return Err(Error::BadDimension(d as usize));
        }
        if n == 0 {
            return Err(Error::NoPositions);
        }
        let mut maximal_cells = BTreeSet::new();
        for c in cells {
            if c.n() != n || c.d() != d {
                return Err(Error::MixedParameters {
                    expected_n: n,
                    expected_d: d,
                    n: c.n(),
                    d: c.d(),
                });
            }
            if c.cell_dim() != d as usize - 1 {
                return Err(Error::NotFullDimensional);
            }
            maximal_cells.insert(c);
        }
        if maximal_cells.is_empty() {
            return Err(Error::NotASubdivision("no maximal cells".into()));
        }
        // full-dimensional cells all have equal dimension, so a proper face
        // relation between two of them is impossible; equal cells were
        // deduplicated by the set
        Ok(MixedSubdivision {
            n,
            d,
            maximal_cells,
        })
    }

    /// The trivial subdivision of `nΔ^{d-1}` by one cell `([d],…,[d])`.
    pub fn trivial(n: usize, d: u8) -> Self {
        let cell = NdType::new(d, vec![Subset::full(d); n]).unwrap();
        MixedSubdivision::new(n, d, [cell]).unwrap()
    }

    /// Build from an arbitrary type set: the maximal cells are its
    /// refinement-maximal members.
    pub fn from_type_set(n: usize, d: u8, types: &BTreeSet<NdType>) -> Result<Self> {
        let maximal: Vec<NdType> = types
            .iter()
            .filter(|t| {
                !types
                    .iter()
                    .any(|other| *other != **t && t.is_face_of(other))
            })
            .cloned()
            .collect();
        MixedSubdivision::new(n, d, maximal)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u8 {
        self.d
    }

    pub fn maximal_cells(&self) -> &BTreeSet<NdType> {
        &self.maximal_cells
    }

    /// All cells: the refinement closure of the maximal cells.
    pub fn all_cells(&self) -> BTreeSet<NdType> {
        let mut out = BTreeSet::new();
        for c in &self.maximal_cells {
            out.extend(c.faces());
        }
        out
    }

    /// Fine iff every maximal cell's type graph is acyclic (faces of
    /// acyclic cells are acyclic, so checking maximal cells suffices).
    pub fn is_fine(&self) -> bool {
        self.maximal_cells
            .iter()
            .all(|c| type_graph(c).is_acyclic())
    }
}

impl fmt::Display for MixedSubdivision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.maximal_cells.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", cells.join(", "))
    }
}

/// One failed criterion of [`verify_subdivision`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SubdivisionFailure {
    /// A maximal cell whose Minkowski cell is not `(d-1)`-dimensional.
    Dimension { cell: NdType },
    /// Two cells with a cyclic comparability graph (improper intersection).
    Comparability { a: NdType, b: NdType },
    /// Total normalized volume differs from `n^{d-1}`.
    Volume { got: BigInt, want: BigInt },
}

impl fmt::Display for SubdivisionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubdivisionFailure::Dimension { cell } => {
                write!(f, "cell {cell} is not full-dimensional")
            }
            SubdivisionFailure::Comparability { a, b } => {
                write!(f, "cells {a} and {b} do not intersect properly")
            }
            SubdivisionFailure::Volume { got, want } => {
                write!(f, "total volume {got}, expected {want}")
            }
        }
    }
}

/// Outcome of subdivision verification; passes iff no failures.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubdivisionReport {
    pub failures: Vec<SubdivisionFailure>,
}

impl SubdivisionReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check the three certifying criteria of a mixed subdivision: maximal
/// cells full-dimensional, all cell pairs comparable, volumes summing to
/// `n^{d-1}` exactly.
pub fn verify_subdivision(s: &MixedSubdivision) -> SubdivisionReport {
    let mut failures = Vec::new();
    for c in s.maximal_cells() {
        if c.cell_dim() != s.d() as usize - 1 {
            failures.push(SubdivisionFailure::Dimension { cell: c.clone() });
        }
    }
    let cells: Vec<NdType> = s.all_cells().into_iter().collect();
    'pairs: for (idx, a) in cells.iter().enumerate() {
        for b in &cells[idx + 1..] {
            if !comparability_graph(a, b).is_acyclic() {
                failures.push(SubdivisionFailure::Comparability {
                    a: a.clone(),
                    b: b.clone(),
                });
                break 'pairs; // one witness is enough
            }
        }
    }
    let total: BigInt = s
        .maximal_cells()
        .iter()
        .filter(|c| c.cell_dim() == s.d() as usize - 1)
        .map(cell_volume_unchecked)
        .sum();
    let want = BigInt::from(s.n()).pow(s.d() as u32 - 1);
    if total != want {
        failures.push(SubdivisionFailure::Volume { got: total, want });
    }
    SubdivisionReport { failures }
}

/// Normalized volume (`(d-1)!` times Euclidean) of the Minkowski cell of a
/// full-dimensional type.
pub fn cell_volume(a: &NdType) -> Result<BigInt> {
    if a.cell_dim() != a.d() as usize - 1 {
        return Err(Error::NotFullDimensional);
    }
    Ok(cell_volume_unchecked(a))
}

fn cell_volume_unchecked(a: &NdType) -> BigInt {
    // Ehrhart finite differences: vol = Σ_j (-1)^(m-j) C(m,j) L(j) with
    // m = d-1 and L(j) the lattice point count of the j-th dilate.
    let m = a.d() as u32 - 1;
    let mut total = BigInt::zero();
    for j in 0..=m {
        let count = BigInt::from(dilate_lattice_points(a, j).len());
        let coeff = binomial_bigint(m, j);
        let term = coeff * count;
        if (m - j).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    debug_assert!(!total.is_negative());
    total
}

/// Lattice points of `k · cell(a)`: all sums over positions of `k`-element
/// multisets of the entry, encoded as coordinate count vectors.
fn dilate_lattice_points(a: &NdType, k: u32) -> HashSet<Vec<u32>> {
    let d = a.d() as usize;
    let mut current: HashSet<Vec<u32>> = HashSet::new();
    current.insert(vec![0u32; d]);
    for e in a.entries() {
        let labels = e.to_labels();
        let mut summand: Vec<Vec<u32>> = Vec::new();
        fn compositions(
            labels: &[u8],
            idx: usize,
            rest: u32,
            acc: &mut Vec<u32>,
            d: usize,
            out: &mut Vec<Vec<u32>>,
        ) {
            if idx + 1 == labels.len() {
                let mut v = vec![0u32; d];
                for (pos, &c) in acc.iter().enumerate() {
                    v[(labels[pos] - 1) as usize] = c;
                }
                v[(labels[idx] - 1) as usize] = rest;
                out.push(v);
                return;
            }
            for c in 0..=rest {
                acc.push(c);
                compositions(labels, idx + 1, rest - c, acc, d, out);
                acc.pop();
            }
        }
        compositions(&labels, 0, k, &mut Vec::new(), d, &mut summand);
        let mut next = HashSet::with_capacity(current.len() * summand.len());
        for base in &current {
            for add in &summand {
                let sum: Vec<u32> = base.iter().zip(add).map(|(x, y)| x + y).collect();
                next.insert(sum);
            }
        }
        current = next;
    }
    current
}

fn binomial_bigint(n: u32, k: u32) -> BigInt {
    let mut out = BigInt::one();
    let k = k.min(n - k);
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

/// Secondary geometric oracle for proper intersection: for the first few
/// dilates, the common lattice points of two cells must all lie in the cell
/// of the entrywise intersection type.  A strictly larger intersection that
/// contains a lattice point of a tested dilate is detected exactly.
pub fn proper_intersection_lattice_oracle(a: &NdType, b: &NdType) -> bool {
    debug_assert_eq!((a.n(), a.d()), (b.n(), b.d()));
    let meet: Option<Vec<Subset>> = a
        .entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| {
            let m = x.intersection(*y);
            (!m.is_empty()).then_some(m)
        })
        .collect();
    let meet_type = meet.map(|entries| NdType::new(a.d(), entries).unwrap());
    for k in 1..=(a.d() as u32) {
        let common: HashSet<Vec<u32>> = dilate_lattice_points(a, k)
            .intersection(&dilate_lattice_points(b, k))
            .cloned()
            .collect();
        match &meet_type {
            None => {
                if !common.is_empty() {
                    return false;
                }
            }
            Some(m) => {
                if !common.is_subset(&dilate_lattice_points(m, k)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Verification with the geometric lattice-point oracle in place of the
/// comparability criterion (the secondary route; slower).
pub fn verify_subdivision_geometric(s: &MixedSubdivision) -> SubdivisionReport {
    let mut report = verify_subdivision(s);
    report
        .failures
        .retain(|f| !matches!(f, SubdivisionFailure::Comparability { .. }));
    let cells: Vec<NdType> = s.all_cells().into_iter().collect();
    'pairs: for (idx, a) in cells.iter().enumerate() {
        for b in &cells[idx + 1..] {
            if !proper_intersection_lattice_oracle(a, b) {
                report.failures.push(SubdivisionFailure::Comparability {
                    a: a.clone(),
                    b: b.clone(),
                });
                break 'pairs;
            }
        }
    }
    report
}

/// The tope map: every lattice point of `nΔ^{d-1}` together with the tope
/// cells of the subdivision sitting at it (possibly none at non-fine
/// points).
pub fn topes_of(s: &MixedSubdivision) -> BTreeMap<LatticePoint, BTreeSet<NdType>> {
    let mut map: BTreeMap<LatticePoint, BTreeSet<NdType>> = LatticePoint::all(s.n(), s.d())
        .into_iter()
        .map(|q| (q, BTreeSet::new()))
        .collect();
    for c in s.all_cells() {
        if c.is_tope() {
            let q = LatticePoint::of_tope(&c);
            map.get_mut(&q).expect("tope lies in the dilated simplex").insert(c);
        }
    }
    map
}

/// The type collection of a subdivision (all cells).  Errors when the
/// subdivision does not verify.
pub fn to_tom(s: &MixedSubdivision) -> Result<Tom> {
    let report = verify_subdivision(s);
    if !report.pass() {
        return Err(Error::NotASubdivision(report.failures[0].to_string()));
    }
    Tom::new(s.n(), s.d(), s.all_cells())
}

/// The subdivision whose cells are the members of a tropical oriented
/// matroid.  Errors when the axioms fail.
pub fn from_tom(m: &Tom) -> Result<MixedSubdivision> {
    if let Some(r) = m.check_all().iter().find(|r| !r.pass_flag()) {
        return Err(Error::NotATom(r.to_string()));
    }
    MixedSubdivision::from_type_set(m.n(), m.d(), m.types())
}

/// The type of a cell of a subdivision of `Δ^{n-1} × Δ^{d-1}` given by its
/// vertex set (vertices of the product are the pairs `(i,j)`, i.e. edges of
/// `K_{n,d}`).  Every position must be covered.
pub fn product_cell_to_type(n: usize, d: u8, vertexset: &BTreeSet<(usize, u8)>) -> Result<NdType> {
    let mut entries = vec![Subset::EMPTY; n];
    for &(i, j) in vertexset {
        if i >= n {
            return Err(Error::PositionOutOfRange(i));
        }
        if j == 0 || j > d {
            return Err(Error::CoordinateOutOfRange(j));
        }
        entries[i].insert(j);
    }
    if let Some(i) = entries.iter().position(|e| e.is_empty()) {
        return Err(Error::BadEntry { position: i, d });
    }
    NdType::new(d, entries)
}

/// Inverse of [`product_cell_to_type`].
pub fn type_to_product_cell(a: &NdType) -> BTreeSet<(usize, u8)> {
    let mut out = BTreeSet::new();
    for (i, e) in a.entries().iter().enumerate() {
        for j in e.iter() {
            out.insert((i, j));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    pub(crate) fn staircase() -> MixedSubdivision {
        MixedSubdivision::new(
            2,
            3,
            [
                NdType::of(3, &[&[1, 2, 3], &[1]]),
                NdType::of(3, &[&[2, 3], &[1, 2]]),
                NdType::of(3, &[&[3], &[1, 2, 3]]),
            ],
        )
        .unwrap()
    }

    /// Independent volume oracle for fine cells: the multinomial
    /// coefficient (d-1)! / Π (|A_i|-1)!.
    fn multinomial_volume(a: &NdType) -> BigInt {
        let mut out = factorial(a.d() as u64 - 1);
        for e in a.entries() {
            out = out.div_floor(&factorial(e.len() as u64 - 1));
        }
        out
    }

    fn factorial(n: u64) -> BigInt {
        (1..=n).map(BigInt::from).product::<BigInt>().max(BigInt::one())
    }

    #[test]
    fn volume_examples() {
        assert_eq!(
            cell_volume(&NdType::of(3, &[&[1, 2, 3], &[1]])).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            cell_volume(&NdType::of(3, &[&[2, 3], &[1, 2]])).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(cell_volume(&NdType::of(4, &[&[1, 2, 3, 4]])).unwrap(), BigInt::one());
        // not full-dimensional
        assert!(cell_volume(&NdType::of(3, &[&[1], &[1]])).is_err());
        // a non-fine cell: segment of length 2
        assert_eq!(
            cell_volume(&NdType::of(2, &[&[1, 2], &[1, 2]])).unwrap(),
            BigInt::from(2)
        );
    }

    #[test]
    fn ehrhart_agrees_with_multinomial_on_fine_cells() {
        let fines = [
            NdType::of(3, &[&[1, 2, 3], &[1]]),
            NdType::of(3, &[&[2, 3], &[1, 2]]),
            NdType::of(4, &[&[1, 2], &[2, 3], &[3, 4]]),
            NdType::of(4, &[&[1, 2, 3, 4], &[4], &[2]]),
            NdType::of(2, &[&[1, 2], &[2], &[1]]),
        ];
        for a in fines {
            assert!(type_graph(&a).is_acyclic());
            assert_eq!(cell_volume(&a).unwrap(), multinomial_volume(&a), "cell {a}");
        }
    }

    #[test]
    fn verify_examples() {
        let trivial = MixedSubdivision::trivial(1, 3);
        assert!(verify_subdivision(&trivial).pass());

        let s = staircase();
        let report = verify_subdivision(&s);
        assert!(report.pass(), "{:?}", report.failures);
        assert!(s.is_fine());

        let missing = MixedSubdivision::new(
            2,
            3,
            [
                NdType::of(3, &[&[1, 2, 3], &[1]]),
                NdType::of(3, &[&[2, 3], &[1, 2]]),
            ],
        )
        .unwrap();
        let report = verify_subdivision(&missing);
        assert!(!report.pass());
        assert!(matches!(
            report.failures[0],
            SubdivisionFailure::Volume { .. }
        ));
    }

    #[test]
    fn geometric_oracle_agrees_on_staircase_and_catches_overlap() {
        assert!(verify_subdivision_geometric(&staircase()).pass());
        // two overlapping segments in 3Δ¹ are caught by both routes
        let bad = MixedSubdivision::new(
            3,
            2,
            [
                NdType::of(2, &[&[1, 2], &[1, 2], &[2]]),
                NdType::of(2, &[&[1, 2], &[1, 2], &[1]]),
            ],
        )
        .unwrap();
        assert!(!verify_subdivision(&bad).pass());
        assert!(!verify_subdivision_geometric(&bad).pass());
    }

    #[test]
    fn tope_map_of_trivial_and_staircase() {
        let trivial = MixedSubdivision::trivial(1, 3);
        let map = topes_of(&trivial);
        assert_eq!(map.len(), 3); // the 3 corners of Δ²
        for (q, topes) in &map {
            assert_eq!(topes.len(), 1);
            let t = topes.first().unwrap();
            assert_eq!(&LatticePoint::of_tope(t), q);
        }

        let s = staircase();
        let map = topes_of(&s);
        assert_eq!(map.len(), 6);
        assert!(map.values().all(|ts| !ts.is_empty()));

        // non-fine: the interior lattice point of {(12,12)} carries no tope
        let coarse = MixedSubdivision::trivial(2, 2);
        let map = topes_of(&coarse);
        let middle = LatticePoint::new(2, vec![1, 1]).unwrap();
        assert!(map[&middle].is_empty());
    }

    #[test]
    fn tom_round_trips() {
        let s = staircase();
        let tom = to_tom(&s).unwrap();
        assert!(tom.is_tom()); // includes elimination on cells
        let back = from_tom(&tom).unwrap();
        assert_eq!(back, s);

        let m = crate::tom::single_hyperplane_tom(3);
        let s = from_tom(&m).unwrap();
        assert_eq!(s, MixedSubdivision::trivial(1, 3));
        assert_eq!(to_tom(&s).unwrap(), m);
    }

    #[test]
    fn product_cell_bijection() {
        let cell: BTreeSet<(usize, u8)> = [(0, 1), (1, 2)].into_iter().collect();
        assert_eq!(
            product_cell_to_type(2, 2, &cell).unwrap(),
            NdType::of(2, &[&[1], &[2]])
        );
        let cell: BTreeSet<(usize, u8)> = [(0, 1), (0, 2), (1, 2)].into_iter().collect();
        assert_eq!(
            product_cell_to_type(2, 2, &cell).unwrap(),
            NdType::of(2, &[&[1, 2], &[2]])
        );
        // uncovered position
        let cell: BTreeSet<(usize, u8)> = [(0, 1)].into_iter().collect();
        assert!(product_cell_to_type(2, 2, &cell).is_err());
    }

    #[test]
    fn fineness_examples() {
        assert!(staircase().is_fine());
        assert!(!MixedSubdivision::trivial(2, 2).is_fine());
    }

    proptest::proptest! {
        // the product-vertex encoding and the type encoding are mutually
        // inverse on position-covering vertex sets
        #[test]
        fn product_cell_round_trip(masks in proptest::collection::vec(1u16..16, 3)) {
            let t = NdType::new(
                4,
                masks.into_iter().map(Subset::from_mask).collect(),
            )
            .unwrap();
            let cell = type_to_product_cell(&t);
            proptest::prop_assert_eq!(product_cell_to_type(3, 4, &cell).unwrap(), t);
        }
    }

    #[test]
    fn cayley_tree_criterion() {
        // fine ⟺ every maximal cell is a spanning tree of K_{n,d} with
        // n+d-1 edges
        let s = staircase();
        for c in s.maximal_cells() {
            let g = type_graph(c);
            assert_eq!(g.edges.len(), s.n() + s.d() as usize - 1);
            assert_eq!(g.components(), 1);
        }
    }
}
