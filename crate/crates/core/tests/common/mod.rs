//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the cotree code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use raagdyn::SimplicialGraph;

/// Small graph as adjacency bitmasks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Small {
    pub n: usize,
    pub adj: Vec<u8>,
}

impl Small {
    pub fn edgeless(n: usize) -> Self {
        Small { n, adj: vec![0; n] }
    }

    pub fn has(&self, i: usize, j: usize) -> bool {
        self.adj[i] >> j & 1 == 1
    }

    fn set(&mut self, i: usize, j: usize) {
        self.adj[i] |= 1 << j;
        self.adj[j] |= 1 << i;
    }

    /// Upper-triangle bit code under the relabelling `perm`.
    fn code(&self, perm: &[usize]) -> u32 {
        let mut c = 0u32;
        let mut bit = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has(perm[i], perm[j]) {
                    c |= 1 << bit;
                }
                bit += 1;
            }
        }
        c
    }

    /// Isomorphism-invariant code: least code over all relabellings.
    pub fn canonical(&self) -> (usize, u32) {
        let mut perm: Vec<usize> = (0..self.n).collect();
        let mut best = self.code(&perm);
        // Heap's algorithm.
        let mut c = vec![0usize; self.n];
        let mut i = 0;
        while i < self.n {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                best = best.min(self.code(&perm));
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        (self.n, best)
    }

    pub fn from_code(n: usize, code: u32) -> Self {
        let mut g = Small::edgeless(n);
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if code >> bit & 1 == 1 {
                    g.set(i, j);
                }
                bit += 1;
            }
        }
        g
    }

    pub fn to_graph(&self) -> SimplicialGraph {
        let names: Vec<String> = (1..=self.n).map(|i| i.to_string()).collect();
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has(i, j) {
                    edges.push((names[i].clone(), names[j].clone()));
                }
            }
        }
        SimplicialGraph::new(names.clone(), edges).unwrap()
    }

    pub fn disjoint_union(&self, other: &Small) -> Small {
        let mut g = Small::edgeless(self.n + other.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has(i, j) {
                    g.set(i, j);
                }
            }
        }
        for i in 0..other.n {
            for j in i + 1..other.n {
                if other.has(i, j) {
                    g.set(self.n + i, self.n + j);
                }
            }
        }
        g
    }

    pub fn join(&self, other: &Small) -> Small {
        let mut g = self.disjoint_union(other);
        for i in 0..self.n {
            for j in 0..other.n {
                g.set(i, self.n + j);
            }
        }
        g
    }

    /// Whether some 4 vertices induce a path: 3 edges with degrees 1,1,2,2.
    pub fn has_induced_p4(&self) -> bool {
        let n = self.n;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let vs = [a, b, c, d];
                        let mut deg = [0; 4];
                        for x in 0..4 {
                            for y in 0..4 {
                                if x != y && self.has(vs[x], vs[y]) {
                                    deg[x] += 1;
                                }
                            }
                        }
                        deg.sort_unstable();
                        if deg == [1, 1, 2, 2] {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }
}

/// Representatives of every isomorphism class on `n` vertices, for
/// `n = 1..=max_n`, built by adding one vertex at a time.
pub fn graph_classes(max_n: usize) -> BTreeMap<usize, Vec<Small>> {
    let mut out = BTreeMap::new();
    let mut level: BTreeSet<(usize, u32)> = BTreeSet::from([Small::edgeless(1).canonical()]);
    for n in 1..=max_n {
        out.insert(
            n,
            level.iter().map(|&(k, c)| Small::from_code(k, c)).collect(),
        );
        if n == max_n {
            break;
        }
        let mut next = BTreeSet::new();
        for &(k, c) in &level {
            let g = Small::from_code(k, c);
            for mask in 0u8..(1 << n) {
                let mut h = Small::edgeless(n + 1);
                h.adj[..n].copy_from_slice(&g.adj);
                for j in 0..n {
                    if mask >> j & 1 == 1 {
                        h.set(n, j);
                    }
                }
                next.insert(h.canonical());
            }
        }
        level = next;
    }
    out
}

/// Least `n` with the graph in `K_n`, read straight off the inductive
/// definition: `K_0` is one vertex, odd steps close under joins, even steps
/// close under disjoint unions. Keys are canonical codes; graphs outside
/// every `K_n` are absent.
pub fn hierarchy_levels(max_vertices: usize) -> BTreeMap<(usize, u32), u32> {
    let mut level_of = BTreeMap::new();
    let mut current: BTreeSet<(usize, u32)> = BTreeSet::from([Small::edgeless(1).canonical()]);
    level_of.insert(Small::edgeless(1).canonical(), 0);
    for n in 1u32.. {
        let join = n % 2 == 1;
        let mut set = current.clone();
        loop {
            let members: Vec<Small> = set.iter().map(|&(k, c)| Small::from_code(k, c)).collect();
            let mut grew = false;
            for x in &members {
                for y in &members {
                    if x.n + y.n > max_vertices || x > y {
                        continue;
                    }
                    let z = if join { x.join(y) } else { x.disjoint_union(y) };
                    if set.insert(z.canonical()) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        for k in &set {
            level_of.entry(*k).or_insert(n);
        }
        // K_n = K_{n-1} is already closed under the next step's operation,
        // so the chain is stable from here on.
        if set == current {
            break;
        }
        current = set;
    }
    level_of
}
