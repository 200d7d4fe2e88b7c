//! Exact combinatorics of tropical oriented matroids and mixed subdivisions
//! of dilated simplices.
//!
//! The library works with `(n,d)`-types: `n`-tuples of nonempty subsets of
//! `{1..d}`.  A type records in which closed sectors of each of `n` tropical
//! hyperplanes a point lies; dually it encodes a Minkowski cell of the
//! dilated simplex `nΔ^{d-1}`.  On top of this single data structure the
//! crate builds
//!
//! * the four tropical oriented matroid axioms with counterexample witnesses
//!   ([`tom`]),
//! * structural operations — deletion, contraction, transpose, duals
//!   ([`ops`]),
//! * exact rational realisation of weight matrices as arrangements and
//!   regular mixed subdivisions ([`realize`]),
//! * mixed subdivisions with verification, volumes, topes, placing
//!   extensions and blow-ups ([`subdivision`], [`placing`], [`blowup`]),
//! * combinatorial convexity, connectivity-based elimination and halfspace
//!   covector machinery ([`convexity`], [`halfspace`], [`constructible`]),
//! * exhaustive census of all mixed subdivisions at small parameters
//!   ([`census`]).
//!
//! All arithmetic is exact (`num_rational::BigRational`); there is no
//! floating point anywhere.  Coordinates are labelled `1..=d` with `d ≤ 16`
//! (subsets are bitmasks); exhaustive enumerations over ordered partitions
//! are practical for `d ≤ 7`.

pub mod blowup;
pub mod census;
pub mod constructible;
pub mod convexity;
pub mod feasibility;
pub mod halfspace;
pub mod json;
mod mixedgraph;
pub mod ops;
pub mod placing;
pub mod rational;
pub mod realize;
pub mod subdivision;
pub mod subset;
pub mod tom;
pub mod types;

pub use subset::{ordered_partitions, OrderedPartition, Subset};
pub use tom::{Axiom, AxiomReport, AxiomWitness, Tom};
pub use types::{comparability_graph, type_graph, ComparabilityGraph, NdType, TypeGraph};

use thiserror::Error;

/// Errors raised by constructors and operations with violated preconditions.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("coordinate count d must be between 1 and {}, got {0}", Subset::MAX_GROUND)]
    BadDimension(usize),
    #[error("a type needs at least one position")]
    NoPositions,
    #[error("entry {position} is empty or not a subset of 1..={d}")]
    BadEntry { position: usize, d: u8 },
    #[error("types with parameters ({expected_n},{expected_d}) expected, got ({n},{d})")]
    MixedParameters {
        expected_n: usize,
        expected_d: u8,
        n: usize,
        d: u8,
    },
    #[error("position {0} out of range")]
    PositionOutOfRange(usize),
    #[error("coordinate {0} out of range")]
    CoordinateOutOfRange(u8),
    #[error("deletion would empty the tuple")]
    DeletionEmpties,
    #[error("contraction would empty the coordinate set")]
    ContractionEmpties,
    #[error("type is unbounded: coordinate {0} occurs in no entry")]
    Unbounded(u8),
    #[error("not an ordered partition of the ground set")]
    BadPartition,
    #[error("not a permutation of the expected ground set")]
    BadPermutation,
    #[error("weight matrix must be {n}x{d} with finite rational entries")]
    BadWeights { n: usize, d: u8 },
    #[error("cannot parse rational number from {0:?}")]
    BadRational(String),
    #[error("lattice point coordinates must sum to n")]
    BadLatticePoint,
    #[error("cell is not full-dimensional")]
    NotFullDimensional,
    #[error("maximal cell {0} is a face of {1}")]
    CellIsFace(String, String),
    #[error("subdivision is not fine")]
    NotFine,
    #[error("type set fails the axiom check: {0}")]
    NotATom(String),
    #[error("not a valid mixed subdivision: {0}")]
    NotASubdivision(String),
    #[error("type {0} is not a member of the given collection")]
    NotAMember(String),
    #[error("halfspace {position} must be a nonempty proper subset of 1..={d}")]
    BadHalfspace { position: usize, d: u8 },
    #[error("entry {position} is not a partition of 1..={d}")]
    BadPartitionTuple { position: usize, d: u8 },
    #[error("collection is not in general position")]
    NotGeneralPosition,
    #[error("search space too large: {0}")]
    TooLarge(String),
    #[error("hull of the given cells is disconnected; elimination impossible for ({0}, {1})")]
    TheoremViolation(String, String),
    #[error("no separating halfspace exists for I={0}, J={1}, K={2}")]
    LemmaViolation(String, String, String),
}

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
