//! `(n,d)`-types and the refinement / face / comparability calculus.
//!
//! An `(n,d)`-type is an `n`-tuple of nonempty subsets of `{1..d}`.  Its
//! bipartite type graph `K_A` has nodes `N_1..N_n, D_1..D_d` and an edge
//! `{N_i, D_j}` iff `j ∈ A_i`.  The *dimension* of a type is the number of
//! connected components of `K_A` minus one: topes (all entries singletons)
//! have dimension `d-1`, vertices have dimension `0`.  Dually, the Minkowski
//! cell of the type inside `nΔ^{d-1}` has dimension `d` minus the component
//! count, so vertices are exactly the full-dimensional cells.

use std::collections::BTreeSet;
use std::fmt;

use crate::mixedgraph::{mixed_acyclic, UnionFind};
use crate::subset::{ordered_partitions, OrderedPartition, Subset};
use crate::{Error, Result};

/// An `n`-tuple of nonempty subsets of `{1..d}`.
///
/// Ordered entry-wise with subsets bitmask-ascending; this is the total
/// order used for witness reporting.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NdType {
    d: u8,
    entries: Vec<Subset>,
}

impl NdType {
    pub fn new(d: u8, entries: Vec<Subset>) -> Result<Self> {
        if d == 0 || d > Subset::MAX_GROUND {
            return Err(Error::BadDimension(d as usize));
        }
        if entries.is_empty() {
            return Err(Error::NoPositions);
        }
        let full = Subset::full(d);
        for (i, e) in entries.iter().enumerate() {
            if e.is_empty() || !e.is_subset_of(full) {
                return Err(Error::BadEntry { position: i, d });
            }
        }
        Ok(NdType { d, entries })
    }

    /// Convenience constructor from label lists, e.g. `of(3, &[&[1,2],&[3]])`.
    pub fn of(d: u8, entries: &[&[u8]]) -> Self {
        NdType::new(
            d,
            entries
                .iter()
                .map(|ls| Subset::from_labels(ls.iter().copied()))
                .collect(),
        )
        .expect("valid type literal")
    }

    /// The constant type `(j,j,…,j)` with `n` positions.
    pub fn constant(n: usize, d: u8, j: u8) -> Self {
        NdType::new(d, vec![Subset::singleton(j); n]).expect("valid constant type")
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn d(&self) -> u8 {
        self.d
    }

    pub fn entries(&self) -> &[Subset] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> Subset {
        self.entries[i]
    }

    /// Number of connected components of the type graph, counting isolated
    /// coordinate nodes.
    pub fn components(&self) -> usize {
        let n = self.n();
        let nodes = n + self.d as usize;
        let mut uf = UnionFind::new(nodes);
        for (i, e) in self.entries.iter().enumerate() {
            for j in e.iter() {
                uf.union(i, n + (j - 1) as usize);
            }
        }
        uf.component_count(nodes)
    }

    /// Components of the type graph restricted to the coordinate nodes in
    /// `active` (all entries must be subsets of `active`).
    pub fn components_within(&self, active: Subset) -> usize {
        let n = self.n();
        let labels = active.to_labels();
        let nodes = n + labels.len();
        let mut uf = UnionFind::new(nodes);
        for (i, e) in self.entries.iter().enumerate() {
            debug_assert!(e.is_subset_of(active));
            for j in e.iter() {
                let pos = labels.binary_search(&j).expect("entry within active set");
                uf.union(i, n + pos);
            }
        }
        uf.component_count(nodes)
    }

    /// Dimension of the type: connected components of `K_A` minus one.
    pub fn dimension(&self) -> usize {
        self.components() - 1
    }

    /// Dimension of the Minkowski cell of the type inside `nΔ^{d-1}`.
    pub fn cell_dim(&self) -> usize {
        self.d as usize - self.components()
    }

    /// True iff every entry is a singleton (a full-dimensional arrangement
    /// cell, dually a lattice point of `nΔ^{d-1}`).
    pub fn is_tope(&self) -> bool {
        self.entries.iter().all(|e| e.is_singleton())
    }

    /// Refinement with respect to an ordered partition of `{1..d}`: entry
    /// `i` becomes its intersection with the earliest block it meets.
    pub fn refine(&self, p: &OrderedPartition) -> NdType {
        let entries = self
            .entries
            .iter()
            .map(|&e| {
                let b = p
                    .first_block_meeting(e)
                    .expect("partition covers the ground set");
                e.intersection(p.blocks()[b])
            })
            .collect();
        NdType {
            d: self.d,
            entries,
        }
    }

    /// All refinements of this type (the faces of its Minkowski cell),
    /// deduplicated.  Enumerates all ordered partitions of `{1..d}`;
    /// practical for `d ≤ 7`.
    pub fn faces(&self) -> BTreeSet<NdType> {
        ordered_partitions(Subset::full(self.d))
            .iter()
            .map(|p| self.refine(p))
            .collect()
    }

    /// Membership in `other.faces()` without enumerating partitions.
    ///
    /// `B` is a refinement of `A` iff entrywise `B_i ⊆ A_i` and the block
    /// constraints are consistent: the elements of each `B_i` share a block
    /// that precedes every element of `A_i \ B_i`.  Consistency is exactly
    /// acyclicity of the mixed graph with an undirected clique on each `B_i`
    /// and directed edges `B_i → A_i \ B_i`.
    pub fn is_face_of(&self, other: &NdType) -> bool {
        if self.d != other.d || self.n() != other.n() {
            return false;
        }
        let mut undirected = Vec::new();
        let mut directed = Vec::new();
        for (b, a) in self.entries.iter().zip(other.entries.iter()) {
            if b.is_empty() || !b.is_subset_of(*a) {
                return false;
            }
            let labels = b.to_labels();
            for w in labels.windows(2) {
                undirected.push(((w[0] - 1) as usize, (w[1] - 1) as usize));
            }
            for j in labels {
                for k in a.minus(*b).iter() {
                    directed.push(((j - 1) as usize, (k - 1) as usize));
                }
            }
        }
        mixed_acyclic(self.d as usize, undirected, directed)
    }

    /// Entrywise containment `self ⊆ other`.
    pub fn entrywise_subset(&self, other: &NdType) -> bool {
        self.d == other.d
            && self.n() == other.n()
            && self
                .entries
                .iter()
                .zip(other.entries.iter())
                .all(|(a, b)| a.is_subset_of(*b))
    }

    pub fn entrywise_union(&self, other: &NdType) -> NdType {
        debug_assert_eq!((self.d, self.n()), (other.d, other.n()));
        NdType {
            d: self.d,
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a.union(*b))
                .collect(),
        }
    }

    /// Transpose along the bipartite type graph: the `(d,n)`-type with
    /// `i ∈ Aᵗ_j ⇔ j ∈ A_i`.  Fails when some coordinate occurs in no entry
    /// (the type is unbounded and the transpose would have an empty entry).
    pub fn transpose(&self) -> Result<NdType> {
        let n = self.n();
        if n > Subset::MAX_GROUND as usize {
            return Err(Error::BadDimension(n));
        }
        let mut entries = vec![Subset::EMPTY; self.d as usize];
        for (i, e) in self.entries.iter().enumerate() {
            for j in e.iter() {
                entries[(j - 1) as usize].insert(i as u8 + 1);
            }
        }
        if let Some(j) = entries.iter().position(|e| e.is_empty()) {
            return Err(Error::Unbounded(j as u8 + 1));
        }
        NdType::new(n as u8, entries)
    }

    /// Remove position `i` (0-based), yielding an `(n-1,d)`-type.
    pub fn delete_position(&self, i: usize) -> Result<NdType> {
        if i >= self.n() {
            return Err(Error::PositionOutOfRange(i));
        }
        if self.n() == 1 {
            return Err(Error::DeletionEmpties);
        }
        let mut entries = self.entries.clone();
        entries.remove(i);
        Ok(NdType {
            d: self.d,
            entries,
        })
    }

    /// Append a new final entry.
    pub fn append_entry(&self, s: Subset) -> NdType {
        debug_assert!(!s.is_empty() && s.is_subset_of(Subset::full(self.d)));
        let mut entries = self.entries.clone();
        entries.push(s);
        NdType {
            d: self.d,
            entries,
        }
    }

    /// Replace the entry at position `i`.
    pub fn with_entry(&self, i: usize, s: Subset) -> NdType {
        debug_assert!(!s.is_empty() && s.is_subset_of(Subset::full(self.d)));
        let mut entries = self.entries.clone();
        entries[i] = s;
        NdType {
            d: self.d,
            entries,
        }
    }

    /// Relabel coordinates by `map[old_label - 1] = Some(new_label)`;
    /// entries must only use mapped labels.
    pub(crate) fn relabel(&self, new_d: u8, map: &[Option<u8>]) -> NdType {
        let entries = self
            .entries
            .iter()
            .map(|e| Subset::from_labels(e.iter().map(|j| map[(j - 1) as usize].expect("label mapped"))))
            .collect();
        NdType { d: new_d, entries }
    }
}

impl fmt::Display for NdType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for NdType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The bipartite graph `K_A` of a type, with nodes `N_1..N_n, D_1..D_d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TypeGraph {
    pub n: usize,
    pub d: u8,
    /// Edges as (position, coordinate label) pairs.
    pub edges: BTreeSet<(usize, u8)>,
}

impl TypeGraph {
    pub fn components(&self) -> usize {
        let nodes = self.n + self.d as usize;
        let mut uf = UnionFind::new(nodes);
        for &(i, j) in &self.edges {
            uf.union(i, self.n + (j - 1) as usize);
        }
        uf.component_count(nodes)
    }

    /// Acyclicity as an undirected graph: a forest iff `#edges + #components
    /// = #nodes`.
    pub fn is_acyclic(&self) -> bool {
        self.edges.len() + self.components() == self.n + self.d as usize
    }
}

/// The type graph of `a`.
pub fn type_graph(a: &NdType) -> TypeGraph {
    let mut edges = BTreeSet::new();
    for (i, e) in a.entries().iter().enumerate() {
        for j in e.iter() {
            edges.insert((i, j));
        }
    }
    TypeGraph {
        n: a.n(),
        d: a.d(),
        edges,
    }
}

/// One edge of a comparability graph.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CompEdge {
    /// Coordinate label `j` (tail when directed).
    pub j: u8,
    /// Coordinate label `k` (head when directed).
    pub k: u8,
    pub directed: bool,
    /// Position that produced the edge (multiplicities are kept for
    /// diagnostics; they do not affect acyclicity).
    pub position: usize,
}

/// The comparability multigraph of two types on node set `{1..d}`.
///
/// For each position `i` there is one edge per pair `j ∈ A_i`, `k ∈ B_i`,
/// `j ≠ k`; it is undirected iff both `j` and `k` lie in `A_i ∩ B_i` and
/// directed `j → k` otherwise.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComparabilityGraph {
    pub d: u8,
    pub edges: Vec<CompEdge>,
}

impl ComparabilityGraph {
    /// No directed cycle, where undirected edges may be traversed freely.
    pub fn is_acyclic(&self) -> bool {
        let undirected = self
            .edges
            .iter()
            .filter(|e| !e.directed)
            .map(|e| ((e.j - 1) as usize, (e.k - 1) as usize))
            .collect::<Vec<_>>();
        let directed = self
            .edges
            .iter()
            .filter(|e| e.directed)
            .map(|e| ((e.j - 1) as usize, (e.k - 1) as usize))
            .collect::<Vec<_>>();
        mixed_acyclic(self.d as usize, undirected, directed)
    }

    pub fn has_directed_edge(&self) -> bool {
        self.edges.iter().any(|e| e.directed)
    }
}

/// The comparability graph of `a` and `b` (same parameters required).
pub fn comparability_graph(a: &NdType, b: &NdType) -> ComparabilityGraph {
    debug_assert_eq!((a.d(), a.n()), (b.d(), b.n()));
    let mut edges = Vec::new();
    for i in 0..a.n() {
        let (ai, bi) = (a.entry(i), b.entry(i));
        let both = ai.intersection(bi);
        for j in ai.iter() {
            for k in bi.iter() {
                if j == k {
                    continue;
                }
                let undirected = both.contains(j) && both.contains(k);
                if undirected && j > k {
                    // one undirected edge per unordered pair and position
                    continue;
                }
                edges.push(CompEdge {
                    j,
                    k,
                    directed: !undirected,
                    position: i,
                });
            }
        }
    }
    ComparabilityGraph { d: a.d(), edges }
}
