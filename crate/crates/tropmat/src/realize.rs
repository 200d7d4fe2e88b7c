//! Exact rational realisation of weight matrices.
//!
//! A weight matrix `w` describes `n` min-plus tropical hyperplanes in
//! `TP^{d-1}`: the point `p` gets type `A` with
//! `A_i = argmin_j (w_{i,j} + p_j)`, so the apex of hyperplane `i` is
//! `(-w_{i,1},…,-w_{i,d})` up to the projective quotient.
//!
//! [`realize_tom`] computes the set of all types attained by some point.
//! Two independent routes exist:
//!
//! * [`realize_tom_sweep`] — the definition: for every candidate type,
//!   decide strict feasibility of its sector system by exact difference
//!   constraints (cross-validated against Fourier–Motzkin in tests);
//! * [`realize_tom_vertices`] — solve the equality system of every spanning
//!   tree of the complete bipartite graph; each 0-cell's type graph is
//!   connected, hence spanning, so this finds all vertex types, whose
//!   refinement closure is the full type set.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;

use crate::feasibility::DifferenceSystem;
use crate::subdivision::MixedSubdivision;
use crate::subset::Subset;
use crate::tom::Tom;
use crate::types::NdType;
use crate::{Error, Result};

/// Candidate cap for the exhaustive feasibility sweep of `(2^d-1)^n` types.
const SWEEP_CAP: u128 = 100_000;

/// An `n×d` matrix of exact rational lift heights.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightMatrix {
    n: usize,
    d: u8,
    w: Vec<Vec<BigRational>>,
}

impl WeightMatrix {
    pub fn new(w: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = w.len();
        if n == 0 {
            return Err(Error::NoPositions);
        }
        let d = w[0].len();
        if d == 0 || d > Subset::MAX_GROUND as usize || w.iter().any(|row| row.len() != d) {
            return Err(Error::BadWeights { n, d: d as u8 });
        }
        Ok(WeightMatrix { n, d: d as u8, w })
    }

    pub fn from_integers(rows: &[&[i64]]) -> Self {
        WeightMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
        .expect("valid integer weight matrix")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u8 {
        self.d
    }

    pub fn get(&self, i: usize, j: u8) -> &BigRational {
        &self.w[i][(j - 1) as usize]
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.w
    }

    pub fn transpose(&self) -> WeightMatrix {
        let mut w = vec![Vec::with_capacity(self.n); self.d as usize];
        for row in &self.w {
            for (j, x) in row.iter().enumerate() {
                w[j].push(x.clone());
            }
        }
        WeightMatrix::new(w).expect("transpose of valid matrix")
    }

    pub fn drop_row(&self, i: usize) -> Result<WeightMatrix> {
        if i >= self.n {
            return Err(Error::PositionOutOfRange(i));
        }
        if self.n == 1 {
            return Err(Error::DeletionEmpties);
        }
        let mut w = self.w.clone();
        w.remove(i);
        WeightMatrix::new(w)
    }

    pub fn drop_column(&self, j: u8) -> Result<WeightMatrix> {
        if j == 0 || j > self.d {
            return Err(Error::CoordinateOutOfRange(j));
        }
        if self.d == 1 {
            return Err(Error::ContractionEmpties);
        }
        let w = self
            .w
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != (j - 1) as usize)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        WeightMatrix::new(w)
    }
}

/// A point of `TP^{d-1}` in the canonical form with last coordinate zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjectivePoint {
    coords: Vec<BigRational>,
}

impl ProjectivePoint {
    pub fn new(mut coords: Vec<BigRational>) -> Result<Self> {
        if coords.is_empty() || coords.len() > Subset::MAX_GROUND as usize {
            return Err(Error::BadDimension(coords.len()));
        }
        let last = coords.last().unwrap().clone();
        for c in &mut coords {
            *c -= last.clone();
        }
        Ok(ProjectivePoint { coords })
    }

    pub fn coord(&self, j: u8) -> &BigRational {
        &self.coords[(j - 1) as usize]
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }
}

/// A lattice point of `nΔ^{d-1}`: `d` nonnegative integers summing to `n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LatticePoint {
    coords: Vec<u32>,
}

impl LatticePoint {
    pub fn new(n: usize, coords: Vec<u32>) -> Result<Self> {
        if coords.iter().map(|&c| c as usize).sum::<usize>() != n {
            return Err(Error::BadLatticePoint);
        }
        Ok(LatticePoint { coords })
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    /// The lattice point of a tope: the sum of its singleton entries.
    pub fn of_tope(t: &NdType) -> LatticePoint {
        debug_assert!(t.is_tope());
        let mut coords = vec![0u32; t.d() as usize];
        for e in t.entries() {
            coords[(e.min_label().unwrap() - 1) as usize] += 1;
        }
        LatticePoint { coords }
    }

    /// All lattice points of `nΔ^{d-1}` in lexicographic order.
    pub fn all(n: usize, d: u8) -> Vec<LatticePoint> {
        fn recurse(rest: u32, slots: usize, acc: &mut Vec<u32>, out: &mut Vec<LatticePoint>) {
            if slots == 1 {
                let mut coords = acc.clone();
                coords.push(rest);
                out.push(LatticePoint { coords });
                return;
            }
            for c in 0..=rest {
                acc.push(c);
                recurse(rest - c, slots - 1, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        recurse(n as u32, d as usize, &mut Vec::new(), &mut out);
        out
    }
}

/// The type of the point `p`: entry `i` is the argmin set of
/// `w_{i,j} + p_j` over `j`.
pub fn point_type(w: &WeightMatrix, p: &ProjectivePoint) -> Result<NdType> {
    if p.coords().len() != w.d() as usize {
        return Err(Error::BadDimension(p.coords().len()));
    }
    let entries = (0..w.n())
        .map(|i| {
            let values: Vec<BigRational> = (1..=w.d())
                .map(|j| w.get(i, j).clone() + p.coord(j).clone())
                .collect();
            let min = values.iter().min().unwrap().clone();
            Subset::from_labels(
                values
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| **v == min)
                    .map(|(k, _)| k as u8 + 1),
            )
        })
        .collect();
    NdType::new(w.d(), entries)
}

/// The minimising tope representations of a lattice point: all tuples
/// `(j_1..j_n)` with `Σ e_{j_i} = q` minimising `Σ_i w_{i,j_i}`, as tope
/// types.  The set is a singleton exactly when the minimiser is unique.
pub fn lattice_tope(w: &WeightMatrix, q: &LatticePoint) -> Result<BTreeSet<NdType>> {
    if q.coords().len() != w.d() as usize {
        return Err(Error::BadLatticePoint);
    }
    if q.coords().iter().map(|&c| c as usize).sum::<usize>() != w.n() {
        return Err(Error::BadLatticePoint);
    }
    let mut best: Option<BigRational> = None;
    let mut arg: BTreeSet<NdType> = BTreeSet::new();
    let d = w.d();
    fn recurse(
        w: &WeightMatrix,
        i: usize,
        remaining: &mut Vec<u32>,
        chosen: &mut Vec<u8>,
        cost: BigRational,
        best: &mut Option<BigRational>,
        arg: &mut BTreeSet<NdType>,
        d: u8,
    ) {
        if i == w.n() {
            let t = NdType::new(
                d,
                chosen.iter().map(|&j| Subset::singleton(j)).collect(),
            )
            .unwrap();
            match best {
                Some(b) if *b < cost => {}
                Some(b) if *b == cost => {
                    arg.insert(t);
                }
                _ => {
                    *best = Some(cost);
                    arg.clear();
                    arg.insert(t);
                }
            }
            return;
        }
        for j in 1..=d {
            if remaining[(j - 1) as usize] == 0 {
                continue;
            }
            remaining[(j - 1) as usize] -= 1;
            chosen.push(j);
            recurse(
                w,
                i + 1,
                remaining,
                chosen,
                cost.clone() + w.get(i, j).clone(),
                best,
                arg,
                d,
            );
            chosen.pop();
            remaining[(j - 1) as usize] += 1;
        }
    }
    let mut remaining = q.coords().to_vec();
    recurse(
        w,
        0,
        &mut remaining,
        &mut Vec::new(),
        BigRational::zero(),
        &mut best,
        &mut arg,
        d,
    );
    Ok(arg)
}

/// Strict feasibility of the sector system of type `a` under weights `w`:
/// some point has exactly this type.
pub fn type_feasible(w: &WeightMatrix, a: &NdType) -> bool {
    debug_assert_eq!((a.n(), a.d()), (w.n(), w.d()));
    // Variables p_1..p_d; all constraints are differences of p-coordinates.
    let mut sys = DifferenceSystem::new(w.d() as usize);
    for i in 0..w.n() {
        let e = a.entry(i);
        let j0 = e.min_label().unwrap();
        for j in e.iter() {
            if j != j0 {
                // w_{i,j} + p_j = w_{i,j0} + p_{j0}
                sys.eq(
                    (j - 1) as usize,
                    (j0 - 1) as usize,
                    w.get(i, j0).clone() - w.get(i, j).clone(),
                );
            }
        }
        for k in e.complement(w.d()).iter() {
            // w_{i,k} + p_k > w_{i,j0} + p_{j0}
            sys.gt(
                (k - 1) as usize,
                (j0 - 1) as usize,
                w.get(i, j0).clone() - w.get(i, k).clone(),
            );
        }
    }
    sys.feasible()
}

/// The full type set by exhaustive feasibility sweep over all
/// `(2^d-1)^n` candidates.
pub fn realize_tom_sweep(w: &WeightMatrix) -> Result<Tom> {
    let candidates = (2u128.pow(w.d() as u32) - 1).pow(w.n() as u32);
    if candidates > SWEEP_CAP {
        return Err(Error::TooLarge(format!(
            "feasibility sweep over {candidates} candidate types"
        )));
    }
    let subsets = Subset::nonempty_subsets(Subset::full(w.d()));
    let mut types = Vec::new();
    let mut stack: Vec<Subset> = Vec::new();
    fn recurse(
        w: &WeightMatrix,
        subsets: &[Subset],
        stack: &mut Vec<Subset>,
        types: &mut Vec<NdType>,
    ) {
        if stack.len() == w.n() {
            let t = NdType::new(w.d(), stack.clone()).unwrap();
            if type_feasible(w, &t) {
                types.push(t);
            }
            return;
        }
        for &s in subsets {
            stack.push(s);
            recurse(w, subsets, stack, types);
            stack.pop();
        }
    }
    recurse(w, &subsets, &mut stack, &mut types);
    Tom::new(w.n(), w.d(), types)
}

/// The full type set via vertex supports: solve the equality system of each
/// spanning tree of `K_{n,d}`, read off the point's type, and close the
/// resulting vertex types under refinement.
pub fn realize_tom_vertices(w: &WeightMatrix) -> Result<Tom> {
    let n = w.n();
    let d = w.d() as usize;
    let nodes = n + d;
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..d).map(move |j| (i, n + j)))
        .collect();
    let need = nodes - 1;
    if edges.len() < need {
        // K_{1,d} and friends always have enough edges; this is unreachable
        // for valid parameters but kept for safety.
        return Err(Error::TooLarge("degenerate bipartite graph".into()));
    }
    let combos = binomial(edges.len(), need);
    if combos > 20_000_000 {
        return Err(Error::TooLarge(format!(
            "{combos} candidate spanning trees of K_{{{n},{d}}}"
        )));
    }
    let mut vertex_types: BTreeSet<NdType> = BTreeSet::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(need);
    fn recurse(
        w: &WeightMatrix,
        edges: &[(usize, usize)],
        start: usize,
        need: usize,
        chosen: &mut Vec<usize>,
        out: &mut BTreeSet<NdType>,
    ) {
        if chosen.len() == need {
            if let Some(t) = tree_point_type(w, edges, chosen) {
                out.insert(t);
            }
            return;
        }
        if edges.len() - start < need - chosen.len() {
            return;
        }
        for e in start..edges.len() {
            chosen.push(e);
            recurse(w, edges, e + 1, need, chosen, out);
            chosen.pop();
        }
    }
    recurse(w, &edges, 0, need, &mut chosen, &mut vertex_types);
    let mut all: BTreeSet<NdType> = BTreeSet::new();
    for v in &vertex_types {
        all.extend(v.faces());
    }
    Tom::new(n, w.d(), all)
}

/// If the chosen edges form a spanning tree, solve its equality system
/// (`μ_i = w_{i,j} + p_j` along tree edges, `p_d = 0`) and return the type
/// of the solution point.
fn tree_point_type(w: &WeightMatrix, edges: &[(usize, usize)], chosen: &[usize]) -> Option<NdType> {
    let n = w.n();
    let d = w.d() as usize;
    let nodes = n + d;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    for &e in chosen {
        let (a, b) = edges[e];
        adj[a].push(b);
        adj[b].push(a);
    }
    // propagate values from the root p_d = 0; values[i] = μ_i for position
    // nodes, p_j for coordinate nodes
    let mut values: Vec<Option<BigRational>> = vec![None; nodes];
    values[nodes - 1] = Some(BigRational::zero());
    let mut queue = vec![nodes - 1];
    let mut seen = 1usize;
    while let Some(v) = queue.pop() {
        let val = values[v].clone().unwrap();
        for &u in &adj[v] {
            if values[u].is_some() {
                continue;
            }
            let (i, j) = if u < n { (u, v - n) } else { (v, u - n) };
            let wij = w.get(i, j as u8 + 1).clone();
            values[u] = Some(if u < n {
                // μ_i = w_{i,j} + p_j
                wij + val.clone()
            } else {
                // p_j = μ_i - w_{i,j}
                val.clone() - wij
            });
            seen += 1;
            queue.push(u);
        }
    }
    if seen != nodes {
        return None; // not spanning (or not connected): skip
    }
    let p = ProjectivePoint::new(
        (n..nodes)
            .map(|u| values[u].clone().unwrap())
            .collect::<Vec<_>>(),
    )
    .ok()?;
    point_type(w, &p).ok()
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut out: u128 = 1;
    for i in 0..k {
        out = out * (n - i) as u128 / (i + 1) as u128;
    }
    out
}

/// The set of types attained by points of `TP^{d-1}` under the arrangement
/// of `w`.  Uses the definitional sweep when the candidate count is small,
/// the spanning-tree vertex route beyond that.
pub fn realize_tom(w: &WeightMatrix) -> Result<Tom> {
    let candidates = (2u128.pow(w.d() as u32) - 1).pow(w.n() as u32);
    if candidates <= SWEEP_CAP {
        realize_tom_sweep(w)
    } else {
        realize_tom_vertices(w)
    }
}

/// The regular mixed subdivision of `nΔ^{d-1}` induced by `w`: maximal
/// cells are the refinement-maximal types of the arrangement (the vertex
/// types).
pub fn regular_mixed_subdivision(w: &WeightMatrix) -> Result<MixedSubdivision> {
    let tom = realize_tom(w)?;
    MixedSubdivision::from_type_set(tom.n(), tom.d(), tom.types())
}

/// True when the arrangement of `w` is generic: every attained type has an
/// acyclic type graph.
pub fn is_generic(w: &WeightMatrix) -> Result<bool> {
    Ok(realize_tom(w)?.is_general_position())
}
