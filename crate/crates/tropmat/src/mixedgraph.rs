//! Cycle detection in mixed graphs (undirected and directed edges together).
//!
//! A directed cycle is a closed walk that uses at least one directed edge,
//! traverses undirected edges freely and every directed edge forwards.  Such
//! a walk exists iff after contracting the undirected connected components
//! either some directed edge lies inside a component or the contracted
//! digraph has an ordinary directed cycle.

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    pub fn component_count(&mut self, n: usize) -> usize {
        (0..n).filter(|&x| self.find(x) == x).count()
    }
}

/// Decide acyclicity of a mixed graph on nodes `0..n`.
pub(crate) fn mixed_acyclic(
    n: usize,
    undirected: impl IntoIterator<Item = (usize, usize)>,
    directed: impl IntoIterator<Item = (usize, usize)> + Clone,
) -> bool {
    let mut uf = UnionFind::new(n);
    for (a, b) in undirected {
        uf.union(a, b);
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (from, to) in directed {
        let (f, t) = (uf.find(from), uf.find(to));
        if f == t {
            // directed edge within an undirected component closes a walk
            return false;
        }
        adj[f].push(t);
    }
    // cycle search on the contracted digraph
    const WHITE: u8 = 0;
    const GREY: u8 = 1;
    const BLACK: u8 = 2;
    let mut colour = vec![WHITE; n];
    for start in 0..n {
        if colour[start] != WHITE {
            continue;
        }
        // iterative DFS with explicit stack of (node, next child index)
        let mut stack = vec![(start, 0usize)];
        colour[start] = GREY;
        while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
            if *idx < adj[v].len() {
                let w = adj[v][*idx];
                *idx += 1;
                match colour[w] {
                    GREY => return false,
                    WHITE => {
                        colour[w] = GREY;
                        stack.push((w, 0));
                    }
                    _ => {}
                }
            } else {
                colour[v] = BLACK;
                stack.pop();
            }
        }
    }
    true
}
