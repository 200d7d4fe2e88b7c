//! Combinatorial convexity and connectivity-based elimination.
//!
//! The convex hull of two types `A, B` in a collection is the set of members
//! `C` with every entry `C_i ∈ {A_i, B_i, A_i ∪ B_i}`.  Elimination at a
//! position succeeds exactly when the hull is path-connected as a
//! subcomplex, and the elimination distance `dist(A,B)` (positions where
//! neither entry contains the other) strictly decreases along elimination
//! chains.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::subdivision::MixedSubdivision;
use crate::types::NdType;
use crate::{Error, Result};

/// Members of `collection` lying in the combinatorial convex hull of `a`
/// and `b` (which must be members).
pub fn convex_hull(
    collection: &BTreeSet<NdType>,
    a: &NdType,
    b: &NdType,
) -> Result<BTreeSet<NdType>> {
    for t in [a, b] {
        if !collection.contains(t) {
            return Err(Error::NotAMember(t.to_string()));
        }
    }
    Ok(collection
        .iter()
        .filter(|c| {
            (0..c.n()).all(|i| {
                let ci = c.entry(i);
                ci == a.entry(i) || ci == b.entry(i) || ci == a.entry(i).union(b.entry(i))
            })
        })
        .cloned()
        .collect())
}

/// Positions where neither entry contains the other.
pub fn dist(a: &NdType, b: &NdType) -> BTreeSet<usize> {
    debug_assert_eq!((a.n(), a.d()), (b.n(), b.d()));
    (0..a.n())
        .filter(|&i| {
            let (x, y) = (a.entry(i), b.entry(i));
            !x.is_subset_of(y) && !y.is_subset_of(x)
        })
        .collect()
}

/// Adjacency of two cells inside an ambient complex: some ambient cell has
/// both as faces (their closed cells meet there).
fn adjacent(ambient: &BTreeSet<NdType>, c: &NdType, d: &NdType) -> bool {
    ambient
        .iter()
        .any(|e| c.is_face_of(e) && d.is_face_of(e))
}

/// Precomputed face relation over a fixed ambient collection, for repeated
/// connectivity and maximality queries against the same complex.
pub struct FaceIndex {
    cells: Vec<NdType>,
    position: BTreeMap<NdType, usize>,
    /// cofaces[i] = indices of ambient cells having cell i as a face.
    cofaces: Vec<BTreeSet<usize>>,
    /// face[i][j] = cells[i] is a face of cells[j].
    face: Vec<Vec<bool>>,
}

impl FaceIndex {
    pub fn new(ambient: &BTreeSet<NdType>) -> Self {
        let cells: Vec<NdType> = ambient.iter().cloned().collect();
        let position: BTreeMap<NdType, usize> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        let m = cells.len();
        let mut face = vec![vec![false; m]; m];
        let mut cofaces = vec![BTreeSet::new(); m];
        for (j, e) in cells.iter().enumerate() {
            for f in e.faces() {
                if let Some(&i) = position.get(&f) {
                    face[i][j] = true;
                    cofaces[i].insert(j);
                }
            }
        }
        FaceIndex {
            cells,
            position,
            cofaces,
            face,
        }
    }

    fn indices(&self, cells: &BTreeSet<NdType>) -> Option<Vec<usize>> {
        cells.iter().map(|c| self.position.get(c).copied()).collect()
    }

    /// Connectivity with an edge between cells sharing an ambient coface.
    pub fn connected(&self, cells: &BTreeSet<NdType>) -> bool {
        let Some(list) = self.indices(cells) else {
            return false;
        };
        if list.len() <= 1 {
            return true;
        }
        let mut visited = vec![false; list.len()];
        let mut queue = VecDeque::from([0usize]);
        visited[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for v in 0..list.len() {
                if !visited[v]
                    && !self.cofaces[list[u]].is_disjoint(&self.cofaces[list[v]])
                {
                    visited[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == list.len()
    }

    /// Members of `cells` that are faces of no other member.  A cell `X` is
    /// a face of `Y` in the cell complex exactly when `Y` is a refinement
    /// of `X` (the refinement order reversed).
    pub fn maximal_members(&self, cells: &BTreeSet<NdType>) -> BTreeSet<NdType> {
        let Some(list) = self.indices(cells) else {
            return BTreeSet::new();
        };
        list.iter()
            .filter(|&&i| !list.iter().any(|&j| j != i && self.face[j][i]))
            .map(|&i| self.cells[i].clone())
            .collect()
    }

    /// True when every member of `cells` is a face of some maximal member.
    pub fn pure_supported(&self, cells: &BTreeSet<NdType>, maximal: &BTreeSet<NdType>) -> bool {
        let Some(list) = self.indices(cells) else {
            return false;
        };
        let Some(max_list) = self.indices(maximal) else {
            return false;
        };
        list.iter()
            .all(|&i| max_list.iter().any(|&j| i == j || self.face[j][i]))
    }
}

/// Path-connectivity of a set of cells inside the complex of a subdivision,
/// with an edge between two cells whenever their closed cells intersect:
/// some cell `E` of the subdivision has both as faces.
pub fn is_connected_subcomplex(s: &MixedSubdivision, cells: &BTreeSet<NdType>) -> bool {
    is_connected_in(&s.all_cells(), cells)
}

/// The same connectivity test over an explicit ambient type collection
/// (e.g. a tropical oriented matroid).
pub fn is_connected_in(ambient: &BTreeSet<NdType>, cells: &BTreeSet<NdType>) -> bool {
    FaceIndex::new(ambient).connected(cells)
}

/// Alternative adjacency used as a cross-check on hulls: two cells touch
/// when they share a common face (a cell of the subdivision that is a face
/// of both).  On closed convex hulls the verdict agrees with
/// [`is_connected_subcomplex`].
pub fn is_connected_via_shared_faces(s: &MixedSubdivision, cells: &BTreeSet<NdType>) -> bool {
    let ambient = s.all_cells();
    let list: Vec<&NdType> = cells.iter().collect();
    if list.len() <= 1 {
        return true;
    }
    let faces: Vec<BTreeSet<NdType>> = list
        .iter()
        .map(|c| c.faces().intersection(&ambient).cloned().collect())
        .collect();
    let mut visited = vec![false; list.len()];
    let mut queue = VecDeque::from([0usize]);
    visited[0] = true;
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        for v in 0..list.len() {
            if !visited[v] && !faces[u].is_disjoint(&faces[v]) {
                visited[v] = true;
                count += 1;
                queue.push_back(v);
            }
        }
    }
    count == list.len()
}

/// Elimination of `a` and `b` at position `j` found by walking a path from
/// `a` to `b` inside their convex hull; falls back to scanning the hull.
/// An unreachable `b` contradicts the elimination theorem for mixed
/// subdivisions and is reported as a theorem violation.
pub fn eliminate_via_connectivity(
    s: &MixedSubdivision,
    a: &NdType,
    b: &NdType,
    j: usize,
) -> Result<NdType> {
    let ambient = s.all_cells();
    let hull = convex_hull(&ambient, a, b)?;
    let want = a.entry(j).union(b.entry(j));
    let list: Vec<&NdType> = hull.iter().collect();
    let start = list.iter().position(|c| *c == a).unwrap();
    let goal = list.iter().position(|c| *c == b).unwrap();
    // breadth-first path from a to b through the hull
    let mut prev: Vec<Option<usize>> = vec![None; list.len()];
    let mut visited = vec![false; list.len()];
    visited[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        if u == goal {
            break;
        }
        for v in 0..list.len() {
            if !visited[v] && adjacent(&ambient, list[u], list[v]) {
                visited[v] = true;
                prev[v] = Some(u);
                queue.push_back(v);
            }
        }
    }
    if !visited[goal] {
        return Err(Error::TheoremViolation(a.to_string(), b.to_string()));
    }
    let mut path = vec![goal];
    while let Some(p) = prev[*path.last().unwrap()] {
        path.push(p);
    }
    if let Some(c) = path.iter().map(|&u| list[u]).find(|c| c.entry(j) == want) {
        return Ok(c.clone());
    }
    // the path can cross the j-th wall through a shared coface; the hull
    // still contains an eliminator
    hull.iter()
        .find(|c| c.entry(j) == want)
        .cloned()
        .ok_or_else(|| Error::TheoremViolation(a.to_string(), b.to_string()))
}

/// One step of an elimination chain.
#[derive(Clone, Debug)]
pub struct ChainStep {
    pub a: NdType,
    pub b: NdType,
    pub position: usize,
    pub eliminator: NdType,
}

/// Build an elimination chain between two members by repeatedly eliminating
/// at a distance position, checking that the distance strictly decreases on
/// both sides at every step.
pub fn elimination_chain(
    collection: &BTreeSet<NdType>,
    a: &NdType,
    b: &NdType,
) -> Result<Vec<ChainStep>> {
    let mut steps = Vec::new();
    let mut stack = vec![(a.clone(), b.clone())];
    while let Some((x, y)) = stack.pop() {
        let distance = dist(&x, &y);
        let Some(&i) = distance.iter().next() else {
            continue;
        };
        let eliminator = eliminate_in(collection, &x, &y, i).ok_or_else(|| {
            Error::TheoremViolation(x.to_string(), y.to_string())
        })?;
        let dx = dist(&x, &eliminator);
        let dy = dist(&y, &eliminator);
        if dx.len() > distance.len() - 1 || dy.len() > distance.len() - 1 {
            return Err(Error::TheoremViolation(x.to_string(), y.to_string()));
        }
        steps.push(ChainStep {
            a: x.clone(),
            b: y.clone(),
            position: i,
            eliminator: eliminator.clone(),
        });
        stack.push((x, eliminator.clone()));
        stack.push((eliminator, y));
    }
    Ok(steps)
}

/// Brute-force eliminator search in an arbitrary collection.
pub fn eliminate_in(
    collection: &BTreeSet<NdType>,
    a: &NdType,
    b: &NdType,
    j: usize,
) -> Option<NdType> {
    let want = a.entry(j).union(b.entry(j));
    collection
        .iter()
        .find(|c| {
            c.entry(j) == want
                && (0..c.n()).all(|k| {
                    let ck = c.entry(k);
                    ck == a.entry(k) || ck == b.entry(k) || ck == a.entry(k).union(b.entry(k))
                })
        })
        .cloned()
}

/// Cells of `collection` whose closure contains the cell of `t`: members
/// entrywise below `t`.
pub fn star(collection: &BTreeSet<NdType>, t: &NdType) -> Result<BTreeSet<NdType>> {
    if !collection.contains(t) {
        return Err(Error::NotAMember(t.to_string()));
    }
    Ok(collection
        .iter()
        .filter(|c| c.entrywise_subset(t))
        .cloned()
        .collect())
}

/// Members of a complex that are not faces of any other member, together
/// with the complex dimension (the maximum member dimension).
pub fn complex_maximal_members(cells: &BTreeSet<NdType>) -> BTreeSet<NdType> {
    cells
        .iter()
        .filter(|c| !cells.iter().any(|e| *e != **c && e.is_face_of(c)))
        .cloned()
        .collect()
}

/// Closure of a set of cells inside an ambient collection: every ambient
/// member having one of the cells as a face.
pub fn closure_in(ambient: &BTreeSet<NdType>, cells: &BTreeSet<NdType>) -> BTreeSet<NdType> {
    ambient
        .iter()
        .filter(|f| cells.iter().any(|c| c.is_face_of(f)))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::placing::placing_of_simplex;
    use crate::subdivision::to_tom;
    use crate::tom::single_hyperplane_tom;

    fn staircase() -> MixedSubdivision {
        placing_of_simplex(3, &[1, 2, 3]).unwrap()
    }

    #[test]
    fn hull_of_a_with_itself() {
        let m = single_hyperplane_tom(3);
        let a = NdType::of(3, &[&[1, 2]]);
        assert_eq!(
            convex_hull(m.types(), &a, &a).unwrap(),
            [a].into_iter().collect()
        );
    }

    #[test]
    fn hull_is_convex_on_samples() {
        let s = staircase();
        let cells = s.all_cells();
        let list: Vec<NdType> = cells.iter().cloned().collect();
        for a in &list {
            for b in &list {
                let hull = convex_hull(&cells, a, b).unwrap();
                for c in &hull {
                    for d in &hull {
                        assert!(convex_hull(&cells, c, d).unwrap().is_subset(&hull));
                    }
                }
            }
        }
    }

    #[test]
    fn dist_examples() {
        let a = NdType::of(3, &[&[2], &[2], &[3]]);
        let b = NdType::of(3, &[&[1], &[1], &[1]]);
        assert_eq!(dist(&a, &a), BTreeSet::new());
        assert_eq!(dist(&a, &b), [0, 1, 2].into_iter().collect());
        let a = NdType::of(2, &[&[1, 2], &[1]]);
        let b = NdType::of(2, &[&[2], &[1, 2]]);
        assert_eq!(dist(&a, &b), BTreeSet::new());
    }

    #[test]
    fn connectivity_examples() {
        let s = staircase();
        let one: BTreeSet<NdType> = [NdType::of(3, &[&[3], &[1, 2, 3]])].into_iter().collect();
        assert!(is_connected_subcomplex(&s, &one));

        // the four 2-dimensional walls of a single hyperplane in d=4 are
        // connected through their common cofaces
        let m = single_hyperplane_tom(4);
        let walls: BTreeSet<NdType> = [
            NdType::of(4, &[&[1, 2]]),
            NdType::of(4, &[&[1, 3]]),
            NdType::of(4, &[&[2, 4]]),
            NdType::of(4, &[&[3, 4]]),
        ]
        .into_iter()
        .collect();
        assert!(is_connected_in(m.types(), &walls));

        // two opposite sectors touch only через the apex, which lies in the
        // ambient complex even when excluded from the set
        let m = single_hyperplane_tom(2);
        let sectors: BTreeSet<NdType> =
            [NdType::of(2, &[&[1]]), NdType::of(2, &[&[2]])].into_iter().collect();
        assert!(is_connected_in(m.types(), &sectors));
    }

    #[test]
    fn eliminate_via_connectivity_examples() {
        let s = staircase();
        let a = NdType::of(3, &[&[1, 2, 3], &[1]]);
        assert_eq!(
            eliminate_via_connectivity(&s, &a, &a, 0).unwrap(),
            a.clone()
        );
        let b = NdType::of(3, &[&[3], &[1, 2, 3]]);
        let c = eliminate_via_connectivity(&s, &a, &b, 0).unwrap();
        assert_eq!(c.entry(0), a.entry(0).union(b.entry(0)));
    }

    #[test]
    fn connectivity_based_and_brute_force_elimination_agree() {
        let s = staircase();
        let cells = s.all_cells();
        let tom = to_tom(&s).unwrap();
        for a in &cells {
            for b in &cells {
                for j in 0..2 {
                    let brute = tom.eliminate(a, b, j);
                    let walked = eliminate_via_connectivity(&s, a, b, j).ok();
                    assert_eq!(brute.is_some(), walked.is_some());
                    if let Some(c) = walked {
                        assert_eq!(c.entry(j), a.entry(j).union(b.entry(j)));
                        assert!(cells.contains(&c));
                    }
                }
            }
        }
    }

    #[test]
    fn chains_decrease_distance() {
        let s = staircase();
        let cells = s.all_cells();
        for a in &cells {
            for b in &cells {
                let steps = elimination_chain(&cells, a, b).unwrap();
                for step in steps {
                    let base = dist(&step.a, &step.b).len();
                    assert!(dist(&step.a, &step.eliminator).len() < base);
                    assert!(dist(&step.b, &step.eliminator).len() < base);
                }
            }
        }
    }

    #[test]
    fn star_examples() {
        let m = single_hyperplane_tom(3);
        let apex = NdType::of(3, &[&[1, 2, 3]]);
        assert_eq!(star(m.types(), &apex).unwrap().len(), 7);
        let tope = NdType::of(3, &[&[2]]);
        assert_eq!(
            star(m.types(), &tope).unwrap(),
            [tope].into_iter().collect()
        );

        // star of (12,1) in the path collection of two hyperplanes on a line
        let path = Tom::new(
            2,
            2,
            [
                NdType::of(2, &[&[1], &[1]]),
                NdType::of(2, &[&[1, 2], &[1]]),
                NdType::of(2, &[&[2], &[1]]),
                NdType::of(2, &[&[2], &[1, 2]]),
                NdType::of(2, &[&[2], &[2]]),
            ],
        )
        .unwrap();
        let t = NdType::of(2, &[&[1, 2], &[1]]);
        assert_eq!(
            star(path.types(), &t).unwrap(),
            [
                NdType::of(2, &[&[1, 2], &[1]]),
                NdType::of(2, &[&[1], &[1]]),
                NdType::of(2, &[&[2], &[1]])
            ]
            .into_iter()
            .collect()
        );
    }

    use crate::tom::Tom;
}
