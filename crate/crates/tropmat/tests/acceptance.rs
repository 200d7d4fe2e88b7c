//! Acceptance suite: eight exhaustive desk-scale certifications, one test
//! per criterion, each printing a pass/fail line.
//!
//! Corpus conventions: random weight matrices use a fixed-seed splitmix64
//! generator, so every run tests the same matrices; census-based criteria
//! enumerate *all* subdivisions at their parameters.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;

use tropmat::blowup::{blow_up, blow_up_nonfine};
use tropmat::census::census;
use tropmat::constructible::{
    constructibility_witness_indexed, expected_dimension, mij_connected_pure, split_step,
};
use tropmat::convexity::{
    convex_hull, dist, elimination_chain, eliminate_in, is_connected_subcomplex,
    is_connected_via_shared_faces, FaceIndex,
};
use tropmat::halfspace::{
    halfspace_covectors, m_of, separating_halfspace, unordered_partitions, HalfspaceSystem,
    PartitionTuple, Sign,
};
use tropmat::placing::{d_placing, n_placing, placing_of_simplex};
use tropmat::realize::{
    lattice_tope, realize_tom_sweep, realize_tom_vertices, LatticePoint, WeightMatrix,
};
use tropmat::subdivision::{to_tom, verify_subdivision, MixedSubdivision};
use tropmat::subset::{permutations, Subset};
use tropmat::tom::Tom;
use tropmat::types::NdType;

const SHAPES: [(usize, u8); 6] = [(2, 2), (2, 3), (3, 2), (3, 3), (4, 3), (3, 4)];
const MATRICES_PER_SHAPE: usize = 34; // 204 total
const CENSUS_SHAPES: [(usize, u8); 3] = [(2, 2), (3, 2), (2, 3)];

/// Figure fixture: three lines with apexes (0,0), (2,1), (-4,-3) in the
/// (x1-x3, x2-x3) chart; min-plus weights are the negated apexes.
fn figure_weights() -> WeightMatrix {
    WeightMatrix::from_integers(&[&[0, 0, 0], &[-2, -1, 0], &[4, 3, 0]])
}

struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn rational(&mut self) -> num_rational::BigRational {
        let num = (self.next() % 1999) as i64 - 999;
        let den = (self.next() % 40) as i64 + 1;
        num_rational::BigRational::new(num.into(), den.into())
    }
}

fn random_generic_corpus() -> &'static Vec<(WeightMatrix, Tom)> {
    static CORPUS: OnceLock<Vec<(WeightMatrix, Tom)>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut rng = SplitMix(20260810);
        let mut out = Vec::new();
        for (n, d) in SHAPES {
            let mut kept = 0;
            let mut attempts = 0;
            while kept < MATRICES_PER_SHAPE {
                attempts += 1;
                assert!(attempts < 100 * MATRICES_PER_SHAPE, "genericity rejection loop");
                let w = WeightMatrix::new(
                    (0..n)
                        .map(|_| (0..d).map(|_| rng.rational()).collect())
                        .collect(),
                )
                .unwrap();
                let tom = realize_tom_sweep(&w).unwrap();
                if !tom.is_general_position() {
                    continue; // non-generic draw; spec asks for generic matrices
                }
                out.push((w, tom));
                kept += 1;
            }
        }
        assert_eq!(out.len(), SHAPES.len() * MATRICES_PER_SHAPE);
        out
    })
}

fn censused() -> &'static Vec<MixedSubdivision> {
    static CENSUS: OnceLock<Vec<MixedSubdivision>> = OnceLock::new();
    CENSUS.get_or_init(|| {
        let mut out = Vec::new();
        for (n, d) in CENSUS_SHAPES {
            out.extend(census(n, d).unwrap());
        }
        out
    })
}

fn report(criterion: usize, name: &str, pass: bool) {
    println!(
        "criterion {criterion} ({name}): {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} ({name}) failed");
}

#[test]
fn criterion_1_realizable_axiom_suite() {
    let mut pass = true;
    for (_, tom) in random_generic_corpus() {
        let reports = tom.check_all();
        if !reports.iter().all(|r| r.pass_flag()) {
            eprintln!("axiom failure: {:?}", reports);
            pass = false;
        }
    }
    report(1, "realizable axiom suite, 204 generic matrices", pass);
}

fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n - k);
    let mut out = 1usize;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

#[test]
fn criterion_2_oracle_agreement() {
    let mut pass = true;
    for (w, tom) in random_generic_corpus() {
        let (n, d) = (w.n(), w.d());
        // vertex/tope counts from the independent feasibility sweep
        if tom.vertices().len() != binomial(n + d as usize - 2, d as usize - 1) {
            eprintln!("vertex count off for {n}x{d}");
            pass = false;
        }
        if tom.topes().len() != binomial(n + d as usize - 1, d as usize - 1) {
            eprintln!("tope count off for {n}x{d}");
            pass = false;
        }
        // the lattice optimisation oracle reproduces the tope set exactly
        let mut from_lattice: BTreeSet<NdType> = BTreeSet::new();
        for q in LatticePoint::all(n, d) {
            from_lattice.extend(lattice_tope(w, &q).unwrap());
        }
        if from_lattice != tom.topes() {
            eprintln!("tope sets disagree for {n}x{d}");
            pass = false;
        }
        // the spanning-tree route agrees with the sweep
        if &realize_tom_vertices(w).unwrap() != tom {
            eprintln!("realization routes disagree for {n}x{d}");
            pass = false;
        }
    }
    report(2, "oracle agreement on the same corpus", pass);
}

#[test]
fn criterion_3_census_bijection() {
    let mut pass = true;
    // counts are pinned independently: orders-with-ties of n points on a
    // line for d=2 (Fubini numbers), and the 2Δ² census is dual to 3Δ¹
    let expected_counts = [((2usize, 2u8), 3usize), ((3, 2), 13), ((2, 3), 13)];
    for ((n, d), want) in expected_counts {
        let subs = census(n, d).unwrap();
        if subs.len() != want {
            eprintln!("census({n},{d}) has {} members, expected {want}", subs.len());
            pass = false;
        }
        let mut type_sets: BTreeSet<BTreeSet<NdType>> = BTreeSet::new();
        for s in &subs {
            if !verify_subdivision(s).pass() {
                eprintln!("census({n},{d}): member fails verification: {s}");
                pass = false;
            }
            let tom = to_tom(s).unwrap();
            if !tom.check_all().iter().all(|r| r.pass_flag()) {
                eprintln!("census({n},{d}): member fails axioms (fine={}): {s}", s.is_fine());
                pass = false;
            }
            type_sets.insert(tom.types().clone());
        }
        if type_sets.len() != subs.len() {
            eprintln!("census({n},{d}): distinct subdivisions share a type set");
            pass = false;
        }
    }
    report(3, "full census certified as collections in bijection", pass);
}

#[test]
fn criterion_4_elimination_iff_connectivity() {
    let mut pass = true;
    for s in censused() {
        let cells = s.all_cells();
        let n = s.n();
        for a in &cells {
            for b in &cells {
                let hull = convex_hull(&cells, a, b).unwrap();
                let eliminates = (0..n).all(|j| eliminate_in(&cells, a, b, j).is_some());
                let connected = is_connected_subcomplex(s, &hull);
                if eliminates != connected {
                    eprintln!("elimination/connectivity mismatch at {a}, {b} in {s}");
                    pass = false;
                }
                // the closures-share-a-face adjacency gives the same verdict
                // on hulls
                if is_connected_via_shared_faces(s, &hull) != connected {
                    eprintln!("connectivity variants disagree on hull of {a}, {b}");
                    pass = false;
                }
                // distance decreases along every constructed chain
                match elimination_chain(&cells, a, b) {
                    Err(e) => {
                        eprintln!("chain failed for {a}, {b}: {e}");
                        pass = false;
                    }
                    Ok(steps) => {
                        for step in steps {
                            let base = dist(&step.a, &step.b).len();
                            if dist(&step.a, &step.eliminator).len() + 1 > base
                                || dist(&step.b, &step.eliminator).len() + 1 > base
                            {
                                eprintln!("distance failed to decrease at {a}, {b}");
                                pass = false;
                            }
                        }
                    }
                }
            }
        }
    }
    report(4, "elimination ⇔ hull connectivity + distance decrease", pass);
}

#[test]
fn criterion_5_duality() {
    let mut pass = true;
    for s in censused() {
        let tom = to_tom(s).unwrap();
        let dual = tom.dual().unwrap();
        if (dual.n(), dual.d() as usize) != (tom.d() as usize, tom.n()) {
            eprintln!("dual parameters wrong for {s}");
            pass = false;
        }
        if !dual.check_all().iter().all(|r| r.pass_flag()) {
            eprintln!("dual fails axioms for {s}");
            pass = false;
        }
        let double = dual.dual().unwrap();
        if double.vertices() != tom.vertices() {
            eprintln!("double dual changes the vertex set for {s}");
            pass = false;
        }
    }
    report(5, "duals certified, double dual fixes vertices", pass);
}

#[test]
fn criterion_6_constructions_preserve_validity() {
    let mut pass = true;
    let mut check = |out: tropmat::Result<MixedSubdivision>, what: String| match out {
        Err(e) => {
            eprintln!("{what}: {e}");
            pass = false;
        }
        Ok(s) => {
            let report = verify_subdivision(&s);
            if !report.pass() {
                eprintln!("{what}: {:?}", report.failures);
                pass = false;
            }
        }
    };
    for s in censused() {
        if s.n() + 1 > 4 || s.d() > 3 {
            continue;
        }
        for sigma in permutations(Subset::full(s.d())) {
            check(n_placing(s, &sigma), format!("n_placing({s}, {sigma:?})"));
        }
        let taus: Vec<Vec<usize>> = permutations(Subset::full(s.n() as u8))
            .into_iter()
            .map(|p| p.into_iter().map(|x| x as usize - 1).collect())
            .collect();
        for tau in &taus {
            check(d_placing(s, tau), format!("d_placing({s}, {tau:?})"));
        }
        for i in 0..s.n() {
            for pi in permutations(Subset::full(s.d())) {
                check(
                    blow_up_nonfine(s, i, &pi),
                    format!("blow_up_nonfine({s}, {i}, {pi:?})"),
                );
                if s.is_fine() {
                    let s2 = placing_of_simplex(s.d(), &pi).unwrap();
                    check(blow_up(s, i, &s2), format!("blow_up({s}, {i}, S_{pi:?})"));
                }
            }
        }
    }
    report(6, "placings and blow-ups verify with exact volume", pass);
}

/// General-position corpora for the halfspace machinery: every fine
/// censused collection plus the realized figure arrangement.
fn general_position_corpus() -> Vec<Tom> {
    let mut out: Vec<Tom> = censused()
        .iter()
        .filter(|s| s.is_fine())
        .map(|s| to_tom(s).unwrap())
        .collect();
    let figure = realize_tom_sweep(&figure_weights()).unwrap();
    assert!(figure.is_general_position());
    out.push(figure);
    out
}

fn all_i_tuples(n: usize, d: u8) -> Vec<Vec<Subset>> {
    let subsets = Subset::nonempty_subsets(Subset::full(d));
    let mut out: Vec<Vec<Subset>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                subsets.iter().map(move |&s| {
                    let mut next = prefix.clone();
                    next.push(s);
                    next
                })
            })
            .collect();
    }
    out
}

fn all_j_tuples(n: usize, d: u8) -> Vec<PartitionTuple> {
    let parts = unordered_partitions(Subset::full(d));
    let mut out: Vec<Vec<Vec<Subset>>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                parts.iter().map(move |p| {
                    let mut next = prefix.clone();
                    next.push(p.clone());
                    next
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|ps| PartitionTuple::new(d, ps).unwrap())
        .collect()
}

#[test]
fn criterion_7_halfspace_machinery() {
    let mut pass = true;
    for m in general_position_corpus() {
        let (n, d) = (m.n(), m.d());
        let index = FaceIndex::new(m.types());
        let i_tuples = all_i_tuples(n, d);
        let j_tuples = all_j_tuples(n, d);
        // (a) every nonempty M(I,J) is connected and pure of the stated
        // dimension; (b) every one gets a constructibility witness with all
        // node checks passing
        for i_sets in &i_tuples {
            for j in &j_tuples {
                let complex = m_of(m.types(), i_sets, j);
                if complex.is_empty() {
                    continue;
                }
                let Some(want) = expected_dimension(n, d, j) else {
                    eprintln!("nonempty complex with negative expected dimension");
                    pass = false;
                    continue;
                };
                if !mij_connected_pure(&m, &index, &complex, j) {
                    eprintln!("M(I,J) not connected+pure for I={i_sets:?}, J={j}");
                    pass = false;
                }
                let maximal = index.maximal_members(&complex);
                if maximal.iter().any(|c| c.dimension() != want) {
                    eprintln!("M(I,J) purity broken for I={i_sets:?}, J={j}");
                    pass = false;
                }
                match constructibility_witness_indexed(&m, &index, i_sets, j) {
                    Ok(w) => {
                        if !w.all_checks_pass() {
                            eprintln!("witness node checks failed, I={i_sets:?}, J={j}");
                            pass = false;
                        }
                    }
                    Err(e) => {
                        eprintln!("witness failed, I={i_sets:?}, J={j}: {e}");
                        pass = false;
                    }
                }
            }
        }
        // (c) covector completeness whenever the zero vector appears
        let proper: Vec<Subset> = Subset::nonempty_subsets(Subset::full(d))
            .into_iter()
            .filter(|s| *s != Subset::full(d))
            .collect();
        let mut systems: Vec<Vec<Subset>> = vec![Vec::new()];
        for _ in 0..n {
            systems = systems
                .into_iter()
                .flat_map(|prefix| {
                    proper.iter().map(move |&s| {
                        let mut next = prefix.clone();
                        next.push(s);
                        next
                    })
                })
                .collect();
        }
        let positions_all: Vec<Vec<usize>> = (1..(1usize << n))
            .map(|mask| (0..n).filter(|p| mask & (1 << p) != 0).collect())
            .collect();
        for sets in &systems {
            let system = HalfspaceSystem::new(d, sets.clone()).unwrap();
            for positions in &positions_all {
                let l = halfspace_covectors(m.types(), positions, &system);
                let zero = vec![Sign::Zero; positions.len()];
                if l.contains(&zero) {
                    let full = 3usize.pow(positions.len() as u32);
                    if l.len() != full {
                        eprintln!(
                            "zero covector present but |L| = {} ≠ {full} for I={sets:?}, A'={positions:?}",
                            l.len()
                        );
                        pass = false;
                    }
                }
            }
        }
    }
    // (d) separating halfspaces for all admissible triples in d = 3, 4
    for d in [3u8, 4] {
        let full = Subset::full(d);
        let proper: Vec<Subset> = Subset::nonempty_subsets(full)
            .into_iter()
            .filter(|s| *s != full)
            .collect();
        for &i in &proper {
            for &j in &proper {
                for k in Subset::nonempty_subsets(full) {
                    if k == i || k == j || k == i.union(j) {
                        continue;
                    }
                    if separating_halfspace(d, i, j, k).is_err() {
                        eprintln!("no separating halfspace for I={i}, J={j}, K={k}");
                        pass = false;
                    }
                }
            }
        }
    }
    report(7, "M(I,J) purity, constructibility, covectors, separation", pass);
}

#[test]
fn criterion_8_worked_figure_fixtures() {
    let mut pass = true;

    // convex hull figure: hull of (2,2,3) and (1,1,1) passes through (1,1,3)
    let tom = realize_tom_sweep(&figure_weights()).unwrap();
    let a = NdType::of(3, &[&[2], &[2], &[3]]);
    let b = NdType::of(3, &[&[1], &[1], &[1]]);
    let through = NdType::of(3, &[&[1], &[1], &[3]]);
    let hull = convex_hull(tom.types(), &a, &b).unwrap();
    if !hull.contains(&through) {
        eprintln!("hull misses (1,1,3)");
        pass = false;
    }
    // elimination at the third position yields a cell with entry {1,3}
    match tom.eliminate(&a, &b, 2) {
        Some(c) => {
            if c.entry(2) != Subset::from_labels([1, 3]) {
                eprintln!("eliminator has wrong third entry: {c}");
                pass = false;
            }
        }
        None => {
            eprintln!("no eliminator at the third position");
            pass = false;
        }
    }

    // constructibility figure: the split of M([4], 14⊔23) at cells 13, 24
    let m = tropmat::tom::single_hyperplane_tom(4);
    let i = vec![Subset::full(4)];
    let j = PartitionTuple::new(
        4,
        vec![vec![Subset::from_labels([1, 4]), Subset::from_labels([2, 3])]],
    )
    .unwrap();
    let complex = m_of(m.types(), &i, &j);
    let index = FaceIndex::new(m.types());
    let maximal = index.maximal_members(&complex);
    let expected_maximal: BTreeSet<NdType> = [
        NdType::of(4, &[&[1, 2]]),
        NdType::of(4, &[&[1, 3]]),
        NdType::of(4, &[&[2, 4]]),
        NdType::of(4, &[&[3, 4]]),
    ]
    .into_iter()
    .collect();
    if maximal != expected_maximal {
        eprintln!("figure complex has wrong maximal cells: {maximal:?}");
        pass = false;
    }
    let split = split_step(
        &i,
        &j,
        &NdType::of(4, &[&[1, 3]]),
        &NdType::of(4, &[&[2, 4]]),
    )
    .unwrap();
    let expected_j0 = PartitionTuple::new(
        4,
        vec![vec![
            Subset::singleton(1),
            Subset::singleton(4),
            Subset::from_labels([2, 3]),
        ]],
    )
    .unwrap();
    if split.a_elt != 1
        || split.b_elt != 4
        || split.j0 != expected_j0
        || split.i1 != vec![Subset::from_labels([2, 3, 4])]
        || split.i2 != vec![Subset::from_labels([1, 2, 3])]
    {
        eprintln!("figure split data wrong: {split:?}");
        pass = false;
    }

    // placing example: the staircase of 2Δ² from the triangle along (1,2,3)
    let placed = placing_of_simplex(3, &[1, 2, 3]).unwrap();
    let expected: BTreeSet<NdType> = [
        NdType::of(3, &[&[1, 2, 3], &[1]]),
        NdType::of(3, &[&[2, 3], &[1, 2]]),
        NdType::of(3, &[&[3], &[1, 2, 3]]),
    ]
    .into_iter()
    .collect();
    if placed.maximal_cells() != &expected {
        eprintln!("placing example mismatch: {placed}");
        pass = false;
    }

    report(8, "worked figure fixtures reproduce exactly", pass);
}

/// Volume sanity used across criteria: the whole dilated simplex.
#[test]
fn total_volume_of_trivial_subdivisions() {
    for (n, d) in SHAPES {
        let s = MixedSubdivision::trivial(n, d);
        assert!(verify_subdivision(&s).pass());
        let cell = s.maximal_cells().first().unwrap().clone();
        assert_eq!(
            tropmat::subdivision::cell_volume(&cell).unwrap(),
            BigInt::from(n).pow(d as u32 - 1)
        );
    }
}
