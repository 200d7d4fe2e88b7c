//! Halfspace systems, the subcomplexes `M(I,J)`, sign covectors, and
//! approximated types of shifted halfspace boundaries.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::subset::Subset;
use crate::types::NdType;
use crate::{Error, Result};

/// One sector subset per position; proper and nonempty.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HalfspaceSystem {
    d: u8,
    sets: Vec<Subset>,
}

impl HalfspaceSystem {
    pub fn new(d: u8, sets: Vec<Subset>) -> Result<Self> {
        for (i, s) in sets.iter().enumerate() {
            if s.is_empty() || !s.is_subset_of(Subset::full(d)) || *s == Subset::full(d) {
                return Err(Error::BadHalfspace { position: i, d });
            }
        }
        Ok(HalfspaceSystem { d, sets })
    }

    pub fn d(&self) -> u8 {
        self.d
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }
}

/// One unordered partition of `{1..d}` per position.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartitionTuple {
    d: u8,
    partitions: Vec<Vec<Subset>>,
}

impl PartitionTuple {
    /// Blocks of each partition are sorted and must tile `{1..d}`.
    pub fn new(d: u8, partitions: Vec<Vec<Subset>>) -> Result<Self> {
        let mut sorted = Vec::with_capacity(partitions.len());
        for (i, blocks) in partitions.into_iter().enumerate() {
            let mut seen = Subset::EMPTY;
            for b in &blocks {
                if b.is_empty() || !b.intersection(seen).is_empty() {
                    return Err(Error::BadPartitionTuple { position: i, d });
                }
                seen = seen.union(*b);
            }
            if seen != Subset::full(d) {
                return Err(Error::BadPartitionTuple { position: i, d });
            }
            let mut blocks = blocks;
            blocks.sort();
            sorted.push(blocks);
        }
        Ok(PartitionTuple {
            d,
            partitions: sorted,
        })
    }

    /// The tuple of trivial one-block partitions.
    pub fn trivial(n: usize, d: u8) -> Self {
        PartitionTuple {
            d,
            partitions: vec![vec![Subset::full(d)]; n],
        }
    }

    pub fn partitions(&self) -> &[Vec<Subset>] {
        &self.partitions
    }

    /// Number of blocks at each position.
    pub fn block_counts(&self) -> Vec<usize> {
        self.partitions.iter().map(|p| p.len()).collect()
    }

    /// Replace the partition at one position.
    pub fn with_partition(&self, i: usize, blocks: Vec<Subset>) -> Result<Self> {
        let mut partitions = self.partitions.clone();
        partitions[i] = blocks;
        PartitionTuple::new(self.d, partitions)
    }
}

impl fmt::Display for PartitionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .partitions
            .iter()
            .map(|p| p.iter().map(|b| b.to_string()).join("⊔"))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// All unordered partitions of `ground`, each with sorted blocks.
pub fn unordered_partitions(ground: Subset) -> Vec<Vec<Subset>> {
    fn recurse(rest: Subset, acc: &mut Vec<Subset>, out: &mut Vec<Vec<Subset>>) {
        let Some(first) = rest.min_label() else {
            out.push(acc.clone());
            return;
        };
        let rest_wo = rest.minus(Subset::singleton(first));
        // the block containing the smallest remaining label, to avoid
        // producing the same partition twice
        for tail in Subset::nonempty_subsets(rest_wo)
            .into_iter()
            .chain([Subset::EMPTY])
        {
            let block = tail.union(Subset::singleton(first));
            acc.push(block);
            recurse(rest.minus(block), acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    recurse(ground, &mut Vec::new(), &mut out);
    for p in &mut out {
        p.sort();
    }
    out.sort();
    out
}

/// The subcomplex `M(I,J)`: members confined entrywise to the sets of `I`
/// and meeting every block of the partitions of `J`.  Unlike a halfspace
/// system, `I` entries may be the full set here.
pub fn m_of(
    collection: &BTreeSet<NdType>,
    i_sets: &[Subset],
    j: &PartitionTuple,
) -> BTreeSet<NdType> {
    collection
        .iter()
        .filter(|t| {
            t.entries().iter().zip(i_sets).all(|(e, i)| e.is_subset_of(*i))
                && t.entries()
                    .iter()
                    .zip(j.partitions())
                    .all(|(e, blocks)| blocks.iter().all(|b| !e.intersection(*b).is_empty()))
        })
        .cloned()
        .collect()
}

/// A sign in `{+, -, 0}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Sign {
    Minus,
    Zero,
    Plus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Minus => "-",
            Sign::Zero => "0",
            Sign::Plus => "+",
        })
    }
}

/// The sign of an entry against a halfspace: `+` inside, `-` in the
/// complement, `0` when it straddles the boundary.
pub fn entry_sign(entry: Subset, halfspace: Subset, d: u8) -> Sign {
    if entry.is_subset_of(halfspace) {
        Sign::Plus
    } else if entry.is_subset_of(halfspace.complement(d)) {
        Sign::Minus
    } else {
        Sign::Zero
    }
}

/// A sign vector indexed by a chosen set of positions.
pub type SignVector = Vec<Sign>;

/// The covector set `L(A', I)`: the sign vectors of all members over the
/// positions in `positions` (0-based, ascending).
pub fn halfspace_covectors(
    collection: &BTreeSet<NdType>,
    positions: &[usize],
    i: &HalfspaceSystem,
) -> BTreeSet<SignVector> {
    collection
        .iter()
        .map(|t| {
            positions
                .iter()
                .map(|&p| entry_sign(t.entry(p), i.sets()[p], i.d()))
                .collect()
        })
        .collect()
}

/// Types approximated by the halfspace of `I` shifted into the sector of
/// the permutation `π`: the union over `i ∈ I` of all sets containing `i`
/// within `{i} ∪ {labels preceding i in π}`.
pub fn approximated_types(i: Subset, pi: &[u8]) -> BTreeSet<Subset> {
    let mut out = BTreeSet::new();
    for elt in i.iter() {
        let pos = pi.iter().position(|&x| x == elt).expect("element in permutation");
        let allowed = Subset::from_labels(pi[..pos].iter().copied());
        for sub in Subset::nonempty_subsets(allowed)
            .into_iter()
            .chain([Subset::EMPTY])
        {
            out.insert(sub.union(Subset::singleton(elt)));
        }
    }
    out
}

/// Find `(L, π)` whose approximated types contain `I`, `J` and `I ∪ J` but
/// not `K`.  Tries the three constructive recipes first, then an exhaustive
/// search; every candidate is verified through [`approximated_types`]
/// before being returned.
pub fn separating_halfspace(
    d: u8,
    i: Subset,
    j: Subset,
    k: Subset,
) -> Result<(Subset, Vec<u8>)> {
    let full = Subset::full(d);
    let union = i.union(j);
    if i.is_empty() || j.is_empty() || i == full || j == full {
        return Err(Error::BadHalfspace { position: 0, d });
    }
    if k == i || k == j || k == union {
        return Err(Error::LemmaViolation(
            i.to_string(),
            j.to_string(),
            k.to_string(),
        ));
    }
    let verify = |l: Subset, pi: &[u8]| {
        let approx = approximated_types(l, pi);
        approx.contains(&i) && approx.contains(&j) && approx.contains(&union) && !approx.contains(&k)
    };
    for (l, pi) in recipe_candidates(d, i, j, k) {
        if verify(l, &pi) {
            return Ok((l, pi));
        }
    }
    for l in Subset::nonempty_subsets(full) {
        for pi in crate::subset::permutations(full) {
            if verify(l, &pi) {
                return Ok((l, pi));
            }
        }
    }
    Err(Error::LemmaViolation(
        i.to_string(),
        j.to_string(),
        k.to_string(),
    ))
}

/// Candidate pairs from the three case recipes: they succeed in most cases
/// but are heuristics here; verification decides.
fn recipe_candidates(d: u8, i: Subset, j: Subset, k: Subset) -> Vec<(Subset, Vec<u8>)> {
    let union = i.union(j);
    let mut out = Vec::new();
    let order = |front: Vec<u8>, back: Vec<u8>| -> Vec<u8> {
        let mut pi = front;
        for x in 1..=d {
            if !pi.contains(&x) && !back.contains(&x) {
                pi.push(x);
            }
        }
        pi.extend(back);
        pi
    };
    if let Some(x) = k.minus(union).min_label() {
        // some element of K outside I ∪ J: end the permutation with it
        for a in i.iter() {
            for b in j.iter() {
                let mut front: Vec<u8> = union.minus(Subset::from_labels([a, b])).to_labels();
                for y in [a, b] {
                    if !front.contains(&y) {
                        front.push(y);
                    }
                }
                out.push((Subset::from_labels([a, b]), order(front, vec![x])));
            }
        }
    }
    if k.is_subset_of(i.intersection(j)) {
        for a in i.minus(k).iter() {
            for b in j.minus(k).iter() {
                let mut front: Vec<u8> = union.minus(Subset::from_labels([a, b])).to_labels();
                for y in [a, b] {
                    if !front.contains(&y) {
                        front.push(y);
                    }
                }
                out.push((Subset::from_labels([a, b]), order(front, vec![])));
            }
        }
    }
    for a in union.minus(k).iter() {
        let front = union.minus(Subset::singleton(a)).to_labels();
        let mut pi = front;
        pi.push(a);
        for x in 1..=d {
            if !pi.contains(&x) {
                pi.push(x);
            }
        }
        out.push((Subset::singleton(a), pi));
    }
    out
}
