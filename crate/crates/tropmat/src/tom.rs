//! Tropical oriented matroids: finite `(n,d)`-type collections and the four
//! axioms that characterise them.
//!
//! * **Boundary** — every constant type `(j,…,j)` is present.
//! * **Comparability** — the comparability graph of any two members is
//!   acyclic.
//! * **Elimination** — for members `A, B` and a position `j` there is a
//!   member `C` with `C_j = A_j ∪ B_j` and every `C_k ∈ {A_k, B_k, A_k∪B_k}`.
//! * **Surrounding** — every refinement of a member is a member.
//!
//! Checkers report the lexicographically first counterexample under the
//! entry-wise bitmask order on types.

use std::collections::BTreeSet;
use std::fmt;

use crate::subset::{ordered_partitions, Subset};
use crate::types::{comparability_graph, NdType};
use crate::{Error, Result};

/// A finite set of `(n,d)`-types, deduplicated and kept in the canonical
/// order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tom {
    n: usize,
    d: u8,
    types: BTreeSet<NdType>,
}

impl Tom {
    pub fn new(n: usize, d: u8, types: impl IntoIterator<Item = NdType>) -> Result<Self> {
        if d == 0 || d > Subset::MAX_GROUND {
            return Err(Error::BadDimension(d as usize));
        }
        if n == 0 {
            return Err(Error::NoPositions);
        }
        let mut set = BTreeSet::new();
        for t in types {
            if t.n() != n || t.d() != d {
                return Err(Error::MixedParameters {
                    expected_n: n,
                    expected_d: d,
                    n: t.n(),
                    d: t.d(),
                });
            }
            set.insert(t);
        }
        Ok(Tom { n, d, types: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u8 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn contains(&self, t: &NdType) -> bool {
        self.types.contains(t)
    }

    pub fn iter(&self) -> impl Iterator<Item = &NdType> {
        self.types.iter()
    }

    pub fn types(&self) -> &BTreeSet<NdType> {
        &self.types
    }

    /// Types of dimension 0 (dually, the full-dimensional Minkowski cells).
    pub fn vertices(&self) -> BTreeSet<NdType> {
        self.types
            .iter()
            .filter(|t| t.dimension() == 0)
            .cloned()
            .collect()
    }

    /// Types of full dimension `d-1`; equivalently all entries singletons.
    pub fn topes(&self) -> BTreeSet<NdType> {
        self.types
            .iter()
            .filter(|t| t.dimension() == self.d as usize - 1)
            .cloned()
            .collect()
    }

    /// General position: every member's type graph is acyclic.
    pub fn is_general_position(&self) -> bool {
        self.types
            .iter()
            .all(|t| crate::types::type_graph(t).is_acyclic())
    }

    pub fn check_boundary(&self) -> AxiomReport {
        for j in 1..=self.d {
            let constant = NdType::constant(self.n, self.d, j);
            if !self.types.contains(&constant) {
                return AxiomReport::fail(Axiom::Boundary, AxiomWitness::MissingBoundary { j });
            }
        }
        AxiomReport::pass(Axiom::Boundary)
    }

    pub fn check_comparability(&self) -> AxiomReport {
        for a in &self.types {
            for b in self.types.range(a.clone()..) {
                if !comparability_graph(a, b).is_acyclic() {
                    return AxiomReport::fail(
                        Axiom::Comparability,
                        AxiomWitness::CyclicPair {
                            a: a.clone(),
                            b: b.clone(),
                        },
                    );
                }
            }
        }
        AxiomReport::pass(Axiom::Comparability)
    }

    pub fn check_elimination(&self) -> AxiomReport {
        for a in &self.types {
            for b in self.types.range(a.clone()..) {
                for j in 0..self.n {
                    if self.eliminate(a, b, j).is_none() {
                        return AxiomReport::fail(
                            Axiom::Elimination,
                            AxiomWitness::NoEliminator {
                                a: a.clone(),
                                b: b.clone(),
                                position: j,
                            },
                        );
                    }
                }
            }
        }
        AxiomReport::pass(Axiom::Elimination)
    }

    /// First member `C` with `C_j = A_j ∪ B_j` and `C_k ∈ {A_k,B_k,A_k∪B_k}`
    /// for all `k`, if any (brute force over the member list).
    pub fn eliminate(&self, a: &NdType, b: &NdType, j: usize) -> Option<NdType> {
        let want = a.entry(j).union(b.entry(j));
        self.types
            .iter()
            .find(|c| {
                c.entry(j) == want
                    && (0..self.n).all(|k| {
                        let ck = c.entry(k);
                        ck == a.entry(k)
                            || ck == b.entry(k)
                            || ck == a.entry(k).union(b.entry(k))
                    })
            })
            .cloned()
    }

    pub fn check_surrounding(&self) -> AxiomReport {
        for a in &self.types {
            for p in ordered_partitions(Subset::full(self.d)) {
                let refined = a.refine(&p);
                if !self.types.contains(&refined) {
                    return AxiomReport::fail(
                        Axiom::Surrounding,
                        AxiomWitness::MissingRefinement {
                            of: a.clone(),
                            partition: p.to_string(),
                            refinement: refined,
                        },
                    );
                }
            }
        }
        AxiomReport::pass(Axiom::Surrounding)
    }

    /// All four axioms, in the fixed order boundary, comparability,
    /// elimination, surrounding.
    pub fn check_all(&self) -> Vec<AxiomReport> {
        vec![
            self.check_boundary(),
            self.check_comparability(),
            self.check_elimination(),
            self.check_surrounding(),
        ]
    }

    /// True iff all four axiom checks pass.
    pub fn is_tom(&self) -> bool {
        self.check_all().iter().all(AxiomReport::pass_flag)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Axiom {
    Boundary,
    Comparability,
    Elimination,
    Surrounding,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::Boundary => "boundary",
            Axiom::Comparability => "comparability",
            Axiom::Elimination => "elimination",
            Axiom::Surrounding => "surrounding",
        };
        f.write_str(name)
    }
}

/// Counterexample recorded by a failing axiom check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AxiomWitness {
    MissingBoundary {
        j: u8,
    },
    CyclicPair {
        a: NdType,
        b: NdType,
    },
    NoEliminator {
        a: NdType,
        b: NdType,
        position: usize,
    },
    MissingRefinement {
        of: NdType,
        partition: String,
        refinement: NdType,
    },
}

impl fmt::Display for AxiomWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomWitness::MissingBoundary { j } => {
                write!(f, "constant type for coordinate {j} is missing")
            }
            AxiomWitness::CyclicPair { a, b } => {
                write!(f, "comparability graph of {a} and {b} has a directed cycle")
            }
            AxiomWitness::NoEliminator { a, b, position } => write!(
                f,
                "no eliminator of {a} and {b} at position {}",
                position + 1
            ),
            AxiomWitness::MissingRefinement {
                of,
                partition,
                refinement,
            } => write!(f, "refinement {refinement} of {of} by {partition} is missing"),
        }
    }
}

/// Outcome of one axiom check; the witness is present exactly when the
/// check failed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub witness: Option<AxiomWitness>,
}

impl AxiomReport {
    fn pass(axiom: Axiom) -> Self {
        AxiomReport {
            axiom,
            witness: None,
        }
    }

    fn fail(axiom: Axiom, witness: AxiomWitness) -> Self {
        AxiomReport {
            axiom,
            witness: Some(witness),
        }
    }

    pub fn pass_flag(&self) -> bool {
        self.witness.is_none()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "{}: pass", self.axiom),
            Some(w) => write!(f, "{}: FAIL ({w})", self.axiom),
        }
    }
}

/// The full type collection of a single tropical hyperplane: all nonempty
/// subsets of `{1..d}` as 1-tuples.
pub fn single_hyperplane_tom(d: u8) -> Tom {
    Tom::new(
        1,
        d,
        Subset::nonempty_subsets(Subset::full(d))
            .into_iter()
            .map(|s| NdType::new(d, vec![s]).unwrap()),
    )
    .unwrap()
}
