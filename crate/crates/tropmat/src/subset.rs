//! Subsets of the coordinate ground set `{1..d}` as bitmasks, and ordered
//! partitions of such sets.

use std::fmt;

use crate::{Error, Result};

/// A subset of `{1..d}` for `d ≤ 16`, stored as a bitmask (bit `j-1` ⇔ label `j`).
///
/// The derived `Ord` is bitmask-ascending; this is the documented total order
/// used everywhere witnesses need a "first" element.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u16);

impl Subset {
    /// Largest supported ground set size.
    pub const MAX_GROUND: u8 = 16;

    pub const EMPTY: Subset = Subset(0);

    pub fn full(d: u8) -> Subset {
        debug_assert!((1..=Self::MAX_GROUND).contains(&d));
        Subset(if d == 16 { u16::MAX } else { (1u16 << d) - 1 })
    }

    /// The singleton `{j}`, label 1-based.
    pub fn singleton(j: u8) -> Subset {
        debug_assert!((1..=Self::MAX_GROUND).contains(&j));
        Subset(1 << (j - 1))
    }

    pub fn from_labels<I: IntoIterator<Item = u8>>(labels: I) -> Subset {
        let mut mask = 0u16;
        for j in labels {
            debug_assert!((1..=Self::MAX_GROUND).contains(&j));
            mask |= 1 << (j - 1);
        }
        Subset(mask)
    }

    pub fn from_mask(mask: u16) -> Subset {
        Subset(mask)
    }

    pub fn mask(self) -> u16 {
        self.0
    }

    pub fn contains(self, j: u8) -> bool {
        (1..=Self::MAX_GROUND).contains(&j) && self.0 & (1 << (j - 1)) != 0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_singleton(self) -> bool {
        self.0.count_ones() == 1
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn minus(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn complement(self, d: u8) -> Subset {
        Subset::full(d).minus(self)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn insert(&mut self, j: u8) {
        self.0 |= 1 << (j - 1);
    }

    /// Labels in ascending order.
    pub fn iter(self) -> impl Iterator<Item = u8> {
        let mask = self.0;
        (1..=Self::MAX_GROUND).filter(move |j| mask & (1 << (j - 1)) != 0)
    }

    pub fn min_label(self) -> Option<u8> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as u8 + 1)
        }
    }

    pub fn max_label(self) -> Option<u8> {
        if self.0 == 0 {
            None
        } else {
            Some(16 - self.0.leading_zeros() as u8)
        }
    }

    /// All nonempty subsets of `ground`, bitmask ascending.
    pub fn nonempty_subsets(ground: Subset) -> Vec<Subset> {
        let g = ground.0;
        // Enumerate submasks via the standard (s-1)&g walk, then sort.
        let mut out = Vec::with_capacity((1usize << ground.len()) - 1);
        let mut s = g;
        while s != 0 {
            out.push(Subset(s));
            s = (s - 1) & g;
        }
        out.sort();
        out
    }

    pub fn to_labels(self) -> Vec<u8> {
        self.iter().collect()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Sets print in the compact style 123 for {1,2,3}; labels above 9
        // fall back to comma separation.
        if self.is_empty() {
            return write!(f, "∅");
        }
        if self.max_label().unwrap() <= 9 {
            for j in self.iter() {
                write!(f, "{j}")?;
            }
            Ok(())
        } else {
            let labels: Vec<String> = self.iter().map(|j| j.to_string()).collect();
            write!(f, "{{{}}}", labels.join(","))
        }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An ordered partition of a ground set into nonempty disjoint blocks.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPartition {
    blocks: Vec<Subset>,
}

impl OrderedPartition {
    pub fn new(ground: Subset, blocks: Vec<Subset>) -> Result<Self> {
        let mut seen = Subset::EMPTY;
        for b in &blocks {
            if b.is_empty() || !b.intersection(seen).is_empty() {
                return Err(Error::BadPartition);
            }
            seen = seen.union(*b);
        }
        if seen != ground {
            return Err(Error::BadPartition);
        }
        Ok(OrderedPartition { blocks })
    }

    /// The one-block partition of `ground`.
    pub fn trivial(ground: Subset) -> Self {
        OrderedPartition {
            blocks: vec![ground],
        }
    }

    /// The finest partition listing the elements of `perm` as singleton blocks
    /// in the given order.
    pub fn from_permutation(perm: &[u8]) -> Self {
        OrderedPartition {
            blocks: perm.iter().map(|&j| Subset::singleton(j)).collect(),
        }
    }

    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    /// Index of the first block meeting `s`, if any.
    pub fn first_block_meeting(&self, s: Subset) -> Option<usize> {
        self.blocks
            .iter()
            .position(|b| !b.intersection(s).is_empty())
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        write!(f, "({})", parts.join("|"))
    }
}

impl fmt::Debug for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All ordered partitions of `ground` (there are ordered-Bell-many; 13 for a
/// 3-set, 75 for a 4-set, 47293 for a 7-set).
pub fn ordered_partitions(ground: Subset) -> Vec<OrderedPartition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn recurse(rest: Subset, stack: &mut Vec<Subset>, out: &mut Vec<OrderedPartition>) {
        if rest.is_empty() {
            out.push(OrderedPartition {
                blocks: stack.clone(),
            });
            return;
        }
        for first in Subset::nonempty_subsets(rest) {
            stack.push(first);
            recurse(rest.minus(first), stack, out);
            stack.pop();
        }
    }
    recurse(ground, &mut stack, &mut out);
    out
}

/// All coarsenings of the composition given by `perm`: ordered partitions
/// obtained by merging *consecutive* entries (there are `2^(len-1)`).
pub fn consecutive_coarsenings(perm: &[u8]) -> Vec<OrderedPartition> {
    let n = perm.len();
    let mut out = Vec::with_capacity(1 << (n.saturating_sub(1)));
    for cuts in 0u32..(1 << (n.saturating_sub(1))) {
        let mut blocks = Vec::new();
        let mut current = Subset::EMPTY;
        for (idx, &j) in perm.iter().enumerate() {
            current.insert(j);
            let cut_here = idx + 1 == n || cuts & (1 << idx) != 0;
            if cut_here {
                blocks.push(current);
                current = Subset::EMPTY;
            }
        }
        out.push(OrderedPartition { blocks });
    }
    out
}

/// All permutations of the labels of `ground`, lexicographic.
pub fn permutations(ground: Subset) -> Vec<Vec<u8>> {
    use itertools::Itertools;
    let labels = ground.to_labels();
    let k = labels.len();
    labels.into_iter().permutations(k).collect()
}
