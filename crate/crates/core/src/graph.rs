//! Finite simplicial graphs: full subgraphs, joins, disjoint unions and
//! detection of full (induced) `P3` and `P4` subgraphs.
//!
//! Vertices are opaque string identifiers kept in insertion order. That
//! order is the "vertex ordering" used to pick lexicographically least
//! pattern witnesses.

use std::collections::{BTreeSet, HashMap, HashSet};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("self-loop at vertex {0:?}")]
    SelfLoop(String),
}

#[derive(Debug, Clone)]
pub struct SimplicialGraph {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<bool>>,
}

impl PartialEq for SimplicialGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.adj == other.adj
    }
}

impl Eq for SimplicialGraph {}

impl Default for SimplicialGraph {
    fn default() -> Self {
        Self::empty()
    }
}

impl SimplicialGraph {
    pub fn empty() -> Self {
        SimplicialGraph {
            vertices: Vec::new(),
            index: HashMap::new(),
            adj: Vec::new(),
        }
    }

    /// Builds a graph from a vertex list and edges. Repeated edges collapse
    /// to one; self-loops and edges to unlisted vertices are rejected.
    pub fn new<V, E, S>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
        E: IntoIterator<Item = (S, S)>,
    {
        let mut g = Self::empty();
        for v in vertices {
            g.add_vertex(v.into())?;
        }
        for (u, v) in edges {
            let (u, v) = (u.into(), v.into());
            g.add_edge(&u, &v)?;
        }
        Ok(g)
    }

    pub(crate) fn add_vertex(&mut self, v: String) -> Result<usize, GraphError> {
        if self.index.contains_key(&v) {
            return Err(GraphError::DuplicateVertex(v));
        }
        let i = self.vertices.len();
        self.index.insert(v.clone(), i);
        self.vertices.push(v);
        for row in &mut self.adj {
            row.push(false);
        }
        self.adj.push(vec![false; i + 1]);
        Ok(i)
    }

    pub(crate) fn add_edge(&mut self, u: &str, v: &str) -> Result<(), GraphError> {
        let i = self.vertex_index(u)?;
        let j = self.vertex_index(v)?;
        if i == j {
            return Err(GraphError::SelfLoop(u.to_string()));
        }
        self.adj[i][j] = true;
        self.adj[j][i] = true;
        Ok(())
    }

    fn from_adjacency(vertices: Vec<String>, adj: Vec<Vec<bool>>) -> Self {
        let index = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        SimplicialGraph {
            vertices,
            index,
            adj,
        }
    }

    /// Path `1 - 2 - ... - n` with vertices named `"1"`..`"n"`.
    pub fn path(n: usize) -> Self {
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let edges: Vec<(String, String)> = names
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        Self::new(names, edges).expect("path is simple")
    }

    /// Cycle on `"1"`..`"n"`, `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n >= 3 {
            g.add_edge("1", &n.to_string()).expect("cycle is simple");
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((names[i].clone(), names[j].clone()));
            }
        }
        Self::new(names, edges).expect("complete graph is simple")
    }

    pub fn edgeless(n: usize) -> Self {
        Self::new((1..=n).map(|i| i.to_string()), Vec::new()).expect("edgeless graph is simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges_by_index().len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, v: &str) -> Result<usize, GraphError> {
        self.index
            .get(v)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(v.to_string()))
    }

    pub fn contains_vertex(&self, v: &str) -> bool {
        self.index.contains_key(v)
    }

    /// Adjacency by vertex position.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    pub fn has_edge(&self, u: &str, v: &str) -> bool {
        match (self.index.get(u), self.index.get(v)) {
            (Some(&i), Some(&j)) => self.adj[i][j],
            _ => false,
        }
    }

    /// Edges as position pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges_by_index(&self) -> Vec<(usize, usize)> {
        let n = self.vertices.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.adj[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edges(&self) -> Vec<(String, String)> {
        self.edges_by_index()
            .into_iter()
            .map(|(i, j)| (self.vertices[i].clone(), self.vertices[j].clone()))
            .collect()
    }

    /// Unordered edge set keyed by names; handy for comparing graphs whose
    /// vertex order differs.
    pub fn edge_set(&self) -> BTreeSet<(String, String)> {
        self.edges()
            .into_iter()
            .map(|(u, v)| if u <= v { (u, v) } else { (v, u) })
            .collect()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[i]
            .iter()
            .enumerate()
            .filter_map(|(j, &e)| e.then_some(j))
    }

    /// The full subgraph spanned by `s`. Vertices keep their relative order
    /// from `self`.
    pub fn full_subgraph<S: AsRef<str>>(&self, s: &[S]) -> Result<Self, GraphError> {
        let mut keep = vec![false; self.vertices.len()];
        for v in s {
            keep[self.vertex_index(v.as_ref())?] = true;
        }
        let positions: Vec<usize> = (0..self.vertices.len()).filter(|&i| keep[i]).collect();
        Ok(self.induced_by_positions(&positions))
    }

    /// Full subgraph on the given positions, in the given order.
    pub fn induced_by_positions(&self, positions: &[usize]) -> Self {
        let vertices = positions
            .iter()
            .map(|&i| self.vertices[i].clone())
            .collect();
        let adj = positions
            .iter()
            .map(|&i| positions.iter().map(|&j| self.adj[i][j]).collect())
            .collect();
        Self::from_adjacency(vertices, adj)
    }

    pub fn complement(&self) -> Self {
        let n = self.vertices.len();
        let adj = (0..n)
            .map(|i| (0..n).map(|j| i != j && !self.adj[i][j]).collect())
            .collect();
        Self::from_adjacency(self.vertices.clone(), adj)
    }

    /// Connected components as sorted position lists, ordered by least
    /// position.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let v = comp[k];
                k += 1;
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    fn combine(g1: &Self, g2: &Self, cross: bool) -> Self {
        let names2 = rename_for_disjointness(g1, g2);
        let n1 = g1.vertex_count();
        let n = n1 + g2.vertex_count();
        let mut vertices = g1.vertices.clone();
        vertices.extend(names2);
        let mut adj = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                adj[i][j] = match (i < n1, j < n1) {
                    (true, true) => g1.adj[i][j],
                    (false, false) => g2.adj[i - n1][j - n1],
                    _ => cross,
                };
            }
        }
        Self::from_adjacency(vertices, adj)
    }

    /// Join: disjoint union plus every edge between the two sides.
    pub fn join(g1: &Self, g2: &Self) -> Self {
        Self::combine(g1, g2, true)
    }

    pub fn disjoint_union(g1: &Self, g2: &Self) -> Self {
        Self::combine(g1, g2, false)
    }

    /// Lexicographically least ordered 4-tuple `(a, b, c, d)` of positions
    /// spanning a full path `a - b - c - d`.
    pub fn find_full_p4_positions(&self) -> Option<[usize; 4]> {
        let n = self.vertices.len();
        let adj = &self.adj;
        for a in 0..n {
            for b in 0..n {
                if !adj[a][b] {
                    continue;
                }
                for c in 0..n {
                    if c == a || !adj[b][c] || adj[a][c] {
                        continue;
                    }
                    for d in 0..n {
                        if d == b || !adj[c][d] || adj[a][d] || adj[b][d] {
                            continue;
                        }
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
        None
    }

    pub fn find_full_p4(&self) -> Option<[String; 4]> {
        self.find_full_p4_positions()
            .map(|t| t.map(|i| self.vertices[i].clone()))
    }

    /// Lexicographically least ordered triple `(a, b, c)` spanning a full path
    /// `a - b - c`.
    pub fn find_full_p3_positions(&self) -> Option<[usize; 3]> {
        let n = self.vertices.len();
        let adj = &self.adj;
        for a in 0..n {
            for b in 0..n {
                if !adj[a][b] {
                    continue;
                }
                for c in 0..n {
                    if c != a && adj[b][c] && !adj[a][c] {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }

    pub fn find_full_p3(&self) -> Option<[String; 3]> {
        self.find_full_p3_positions()
            .map(|t| t.map(|i| self.vertices[i].clone()))
    }
}

/// Names for `g2`'s vertices inside a combination with `g1`. Colliding names
/// get a `"g2/"` prefix, repeated until fresh.
fn rename_for_disjointness(g1: &SimplicialGraph, g2: &SimplicialGraph) -> Vec<String> {
    let mut taken: HashSet<&str> = g1.vertices.iter().map(String::as_str).collect();
    taken.extend(g2.vertices.iter().map(String::as_str));
    let mut assigned: HashSet<String> = HashSet::new();
    g2.vertices
        .iter()
        .map(|v| {
            if !g1.index.contains_key(v) {
                return v.clone();
            }
            let mut name = format!("g2/{v}");
            while taken.contains(name.as_str()) || assigned.contains(&name) {
                name = format!("g2/{name}");
            }
            assigned.insert(name.clone());
            name
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(name: &str) -> SimplicialGraph {
        SimplicialGraph::new([name], Vec::<(&str, &str)>::new()).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            SimplicialGraph::new(["a"], [("a", "a")]).unwrap_err(),
            GraphError::SelfLoop("a".into())
        );
        assert_eq!(
            SimplicialGraph::new(["a"], [("a", "b")]).unwrap_err(),
            GraphError::UnknownVertex("b".into())
        );
        assert!(SimplicialGraph::new(["a", "a"], Vec::<(&str, &str)>::new()).is_err());
        let g = SimplicialGraph::new(["a", "b"], [("a", "b"), ("b", "a")]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn full_subgraph_examples() {
        let p4 = SimplicialGraph::path(4);
        let e = p4.full_subgraph(&["1", "2"]).unwrap();
        assert_eq!(e.vertex_count(), 2);
        assert_eq!(e.edges(), vec![("1".to_string(), "2".to_string())]);

        let c5 = SimplicialGraph::cycle(5);
        let sub = c5.full_subgraph(&["1", "2", "3", "4"]).unwrap();
        assert_eq!(sub, SimplicialGraph::path(4));

        let none = c5.full_subgraph::<&str>(&[]).unwrap();
        assert!(none.is_empty());

        assert_eq!(
            c5.full_subgraph(&["9"]).unwrap_err(),
            GraphError::UnknownVertex("9".into())
        );
    }

    #[test]
    fn join_and_union() {
        let e = SimplicialGraph::join(&pt("x"), &pt("y"));
        assert_eq!(e.edge_count(), 1);
        let two = SimplicialGraph::disjoint_union(&pt("x"), &pt("y"));
        assert_eq!((two.vertex_count(), two.edge_count()), (2, 0));

        let p3 = SimplicialGraph::join(&pt("c"), &two);
        assert_eq!(p3.edge_count(), 2);
        assert_eq!(
            p3.find_full_p3().unwrap(),
            ["x", "c", "y"].map(String::from)
        );
    }

    #[test]
    fn colliding_names_get_prefixed() {
        let g = SimplicialGraph::join(&pt("v"), &pt("v"));
        assert_eq!(g.vertices(), &["v".to_string(), "g2/v".to_string()]);
        let h = SimplicialGraph::new(["v", "g2/v"], Vec::<(&str, &str)>::new()).unwrap();
        let u = SimplicialGraph::disjoint_union(&h, &h);
        assert_eq!(
            u.vertices(),
            &["v", "g2/v", "g2/g2/v", "g2/g2/g2/v"].map(String::from)
        );
    }

    #[test]
    fn pattern_examples() {
        assert_eq!(
            SimplicialGraph::path(4).find_full_p4().unwrap(),
            ["1", "2", "3", "4"].map(String::from)
        );
        assert!(SimplicialGraph::complete(4).find_full_p4().is_none());
        let w = SimplicialGraph::cycle(5).find_full_p4_positions().unwrap();
        assert_eq!(w, [0, 1, 2, 3]);

        assert_eq!(
            SimplicialGraph::path(3).find_full_p3().unwrap(),
            ["1", "2", "3"].map(String::from)
        );
        assert!(SimplicialGraph::complete(3).find_full_p3().is_none());
        assert!(SimplicialGraph::path(4).find_full_p3().is_some());
    }

    #[test]
    fn components_in_vertex_order() {
        let g = SimplicialGraph::new(["a", "b", "c", "d"], [("a", "c")]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 2], vec![1], vec![3]]);
        assert!(!g.is_connected());
        assert!(g.complement().is_connected());
    }
}
