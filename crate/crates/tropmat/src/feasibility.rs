//! Exact rational linear feasibility.
//!
//! Two engines, kept deliberately independent so they can cross-validate
//! each other:
//!
//! * [`fourier_motzkin_feasible`] — textbook Fourier–Motzkin elimination with
//!   strict/weak bookkeeping, for arbitrary systems of `=`, `≥`, `>`
//!   constraints over the rationals;
//! * [`DifferenceSystem`] — the special case where every constraint is
//!   `x_a - x_b = c` or `x_a - x_b > c`.  Equalities are absorbed into a
//!   union-find with rational potentials; the strict part is feasible iff no
//!   directed cycle has total weight ≥ 0, decided by an all-pairs
//!   longest-path sweep over (weight, edge-count) pairs ordered
//!   lexicographically, so zero-weight cycles are detected exactly.
//!
//! Sector and face systems of tropical arrangements consist entirely of
//! difference constraints; the fast engine is what realisation sweeps use,
//! while the Fourier–Motzkin engine is the general fallback and the oracle
//! in tests.

use num_rational::BigRational;
use num_traits::Zero;

/// Relation of a linear constraint `Σ coeffs·x REL rhs`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Rel {
    Eq,
    Ge,
    Gt,
}

/// One linear constraint over variables `x_0..x_{nvars-1}`.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub rel: Rel,
    pub rhs: BigRational,
}

impl Constraint {
    pub fn new(coeffs: Vec<BigRational>, rel: Rel, rhs: BigRational) -> Self {
        Constraint { coeffs, rel, rhs }
    }

    /// `x_a - x_b REL c`.
    pub fn difference(nvars: usize, a: usize, b: usize, rel: Rel, c: BigRational) -> Self {
        let mut coeffs = vec![BigRational::zero(); nvars];
        coeffs[a] += BigRational::from_integer(1.into());
        coeffs[b] -= BigRational::from_integer(1.into());
        Constraint::new(coeffs, rel, c)
    }
}

/// Decide whether a system of linear constraints has a rational solution.
pub fn fourier_motzkin_feasible(nvars: usize, constraints: &[Constraint]) -> bool {
    let mut cons: Vec<Constraint> = constraints.to_vec();
    for var in (0..nvars).rev() {
        // Substitute one equality involving the variable, if any.
        if let Some(pos) = cons
            .iter()
            .position(|c| c.rel == Rel::Eq && !c.coeffs[var].is_zero())
        {
            let eq = cons.swap_remove(pos);
            let pivot = eq.coeffs[var].clone();
            for c in &mut cons {
                if c.coeffs[var].is_zero() {
                    continue;
                }
                let factor = c.coeffs[var].clone() / pivot.clone();
                for k in 0..nvars {
                    let delta = factor.clone() * eq.coeffs[k].clone();
                    c.coeffs[k] -= delta;
                }
                c.rhs -= factor * eq.rhs.clone();
            }
            continue;
        }
        // Classic elimination: pair lower and upper bounds on the variable.
        let (mut lowers, mut uppers, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in cons {
            match c.coeffs[var].is_zero() {
                true => rest.push(c),
                false => {
                    if c.coeffs[var] > BigRational::zero() {
                        lowers.push(c); // gives x_var on the "large" side
                    } else {
                        uppers.push(c);
                    }
                }
            }
        }
        for lo in &lowers {
            for up in &uppers {
                // lo: a·x + p·x_var REL_lo r  (p > 0)   →  x_var ≥/> (r - a·x)/p
                // up: b·x + q·x_var REL_up s  (q < 0)   →  x_var ≤/< (s - b·x)/q
                let p = lo.coeffs[var].clone();
                let q = -up.coeffs[var].clone();
                let mut coeffs = vec![BigRational::zero(); nvars];
                for k in 0..nvars {
                    coeffs[k] = lo.coeffs[k].clone() * q.clone() + up.coeffs[k].clone() * p.clone();
                }
                coeffs[var] = BigRational::zero();
                let rhs = lo.rhs.clone() * q.clone() + up.rhs.clone() * p.clone();
                let rel = match (lo.rel, up.rel) {
                    (Rel::Ge, Rel::Ge) => Rel::Ge,
                    _ => Rel::Gt,
                };
                rest.push(Constraint::new(coeffs, rel, rhs));
            }
        }
        cons = rest;
    }
    // All variables eliminated: every constraint must now hold for 0 REL rhs.
    cons.iter().all(|c| {
        debug_assert!(c.coeffs.iter().all(|x| x.is_zero()));
        match c.rel {
            Rel::Eq => c.rhs.is_zero(),
            Rel::Ge => c.rhs <= BigRational::zero(),
            Rel::Gt => c.rhs < BigRational::zero(),
        }
    })
}

/// A system of difference constraints `x_a - x_b = c` / `x_a - x_b > c`.
#[derive(Clone, Debug, Default)]
pub struct DifferenceSystem {
    nvars: usize,
    eq: Vec<(usize, usize, BigRational)>,
    gt: Vec<(usize, usize, BigRational)>,
}

impl DifferenceSystem {
    pub fn new(nvars: usize) -> Self {
        DifferenceSystem {
            nvars,
            eq: Vec::new(),
            gt: Vec::new(),
        }
    }

    pub fn eq(&mut self, a: usize, b: usize, c: BigRational) {
        self.eq.push((a, b, c));
    }

    pub fn gt(&mut self, a: usize, b: usize, c: BigRational) {
        self.gt.push((a, b, c));
    }

    pub fn is_trivial(&self) -> bool {
        self.eq.is_empty() && self.gt.is_empty()
    }

    /// Convert to general constraints (for the Fourier–Motzkin cross-check).
    pub fn to_constraints(&self) -> Vec<Constraint> {
        let mut out = Vec::new();
        for (a, b, c) in &self.eq {
            out.push(Constraint::difference(self.nvars, *a, *b, Rel::Eq, c.clone()));
        }
        for (a, b, c) in &self.gt {
            out.push(Constraint::difference(self.nvars, *a, *b, Rel::Gt, c.clone()));
        }
        out
    }

    /// Exact feasibility over the rationals.
    pub fn feasible(&self) -> bool {
        // Equalities: union-find with potentials, x_node = x_root + offset.
        let mut parent: Vec<usize> = (0..self.nvars).collect();
        let mut offset: Vec<BigRational> = vec![BigRational::zero(); self.nvars];
        fn find(parent: &mut Vec<usize>, offset: &mut Vec<BigRational>, x: usize) -> usize {
            if parent[x] == x {
                return x;
            }
            let root = find(parent, offset, parent[x]);
            let extra = offset[parent[x]].clone();
            offset[x] += extra;
            parent[x] = root;
            root
        }
        for (a, b, c) in &self.eq {
            let ra = find(&mut parent, &mut offset, *a);
            let rb = find(&mut parent, &mut offset, *b);
            // x_a - x_b = c  with  x_a = x_ra + off_a, x_b = x_rb + off_b
            if ra == rb {
                if offset[*a].clone() - offset[*b].clone() != *c {
                    return false;
                }
            } else {
                // set x_ra = x_rb + (c + off_b - off_a)
                offset[ra] = c.clone() + offset[*b].clone() - offset[*a].clone();
                parent[ra] = rb;
            }
        }
        // Strict part on representatives: x_ra - x_rb > c'. Feasible iff no
        // directed cycle of total weight ≥ 0 (lexicographic longest paths).
        let mut nodes: Vec<usize> = Vec::new();
        let mut index = vec![usize::MAX; self.nvars];
        let mut edges: Vec<(usize, usize, BigRational)> = Vec::new();
        for (a, b, c) in &self.gt {
            let ra = find(&mut parent, &mut offset, *a);
            let rb = find(&mut parent, &mut offset, *b);
            let c = c.clone() - offset[*a].clone() + offset[*b].clone();
            if ra == rb {
                if c >= BigRational::zero() {
                    return false;
                }
                continue;
            }
            for r in [ra, rb] {
                if index[r] == usize::MAX {
                    index[r] = nodes.len();
                    nodes.push(r);
                }
            }
            edges.push((index[ra], index[rb], c));
        }
        let m = nodes.len();
        if m == 0 {
            return true;
        }
        // best[u][v] = max over walks u→v of (Σ weight, #edges), lexicographic;
        // an entry best[u][u] ≥ (0, ·) with ≥1 edge witnesses a bad cycle.
        // Edge b→a with weight c encodes x_a - x_b > c, i.e. walking the
        // constraint graph sums lower bounds on differences.
        let mut best: Vec<Vec<Option<(BigRational, u32)>>> = vec![vec![None; m]; m];
        for (ia, ib, c) in &edges {
            let entry = &mut best[*ib][*ia];
            let cand = (c.clone(), 1u32);
            if entry.as_ref().is_none_or(|cur| *cur < cand) {
                *entry = Some(cand);
            }
        }
        for mid in 0..m {
            for u in 0..m {
                let Some(first) = best[u][mid].clone() else {
                    continue;
                };
                for v in 0..m {
                    let Some(second) = best[mid][v].clone() else {
                        continue;
                    };
                    let cand = (first.0.clone() + second.0, first.1 + second.1);
                    let entry = &mut best[u][v];
                    if entry.as_ref().is_none_or(|cur| *cur < cand) {
                        *entry = Some(cand);
                    }
                }
            }
        }
        for u in 0..m {
            if let Some((w, _)) = &best[u][u] {
                if *w >= BigRational::zero() {
                    return false;
                }
            }
        }
        true
    }
}
