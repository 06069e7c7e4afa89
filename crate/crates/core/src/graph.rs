//! Simple undirected graphs on dense vertex ids `0..n`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An undirected edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Builds the edge with its endpoints ordered. Panics on a self-loop.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "self-loop");
        Edge { u: a.min(b), v: a.max(b) }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Simple undirected graph. Neighbor lists are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

/// Old-to-new vertex map produced by deletions; `None` for deleted vertices.
pub type VertexMap = Vec<Option<usize>>;

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Inserts `a-b`; inserting an existing edge is a no-op.
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        if let Err(pos) = self.adj[a].binary_search(&b) {
            self.adj[a].insert(pos, b);
            let pos = self.adj[b].binary_search(&a).unwrap_err();
            self.adj[b].insert(pos, a);
        }
        Ok(())
    }

    /// Appends a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.order() && self.adj[a].binary_search(&b).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Edges in lexicographic order of `(u, v)`.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.size());
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.push(Edge { u, v });
                }
            }
        }
        out
    }

    pub fn leaves(&self) -> Vec<usize> {
        self.vertices().filter(|&v| self.degree(v) == 1).collect()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, order: self.order() })
        }
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
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

    pub fn is_forest(&self) -> bool {
        self.size() + self.components().len() == self.order()
    }

    pub fn is_tree(&self) -> bool {
        self.order() >= 1 && self.size() + 1 == self.order() && self.is_connected()
    }

    /// BFS distances from `s`; `None` for unreachable vertices.
    pub fn distances_from(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Induced subgraph on `keep` (in the given order), with the old-to-new map.
    pub fn induced(&self, keep: &[usize]) -> (Graph, VertexMap) {
        let mut map = vec![None; self.order()];
        for (i, &v) in keep.iter().enumerate() {
            map[v] = Some(i);
        }
        let mut g = Graph::empty(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            g.adj[i] = self.adj[v].iter().filter_map(|&w| map[w]).collect();
            g.adj[i].sort_unstable();
        }
        (g, map)
    }

    /// Deletes `v`, relabeling the survivors densely in their original order.
    pub fn remove_vertex(&self, v: usize) -> Result<(Graph, VertexMap)> {
        self.remove_vertices(&[v])
    }

    pub fn remove_vertices(&self, set: &[usize]) -> Result<(Graph, VertexMap)> {
        let mut drop = vec![false; self.order()];
        for &v in set {
            self.check_vertex(v)?;
            drop[v] = true;
        }
        let keep: Vec<usize> = self.vertices().filter(|&v| !drop[v]).collect();
        Ok(self.induced(&keep))
    }

    pub fn remove_edge(&self, e: Edge) -> Result<Graph> {
        if !self.has_edge(e.u, e.v) {
            return Err(Error::EdgeNotPresent(e));
        }
        let mut g = self.clone();
        g.adj[e.u].retain(|&w| w != e.v);
        g.adj[e.v].retain(|&w| w != e.u);
        Ok(g)
    }

    /// Subdivision graph: original ids stay `0..n`, the vertex subdividing
    /// the `i`-th edge of [`Graph::edges`] gets id `n + i`.
    pub fn subdivision(&self) -> Graph {
        let n = self.order();
        let edges = self.edges();
        let mut g = Graph::empty(n + edges.len());
        for (i, e) in edges.iter().enumerate() {
            let w = n + i;
            g.adj[e.u].push(w);
            g.adj[e.v].push(w);
            g.adj[w] = vec![e.u, e.v];
        }
        g
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.order();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|ns| ns.iter().map(|&w| w + off).collect()));
        Graph { adj }
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order());
        let mut adj = vec![Vec::new(); self.order()];
        for v in self.vertices() {
            let mut ns: Vec<usize> = self.adj[v].iter().map(|&w| perm[w]).collect();
            ns.sort_unstable();
            adj[perm[v]] = ns;
        }
        Graph { adj }
    }

    // ---- named families ----

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for i in 1..n {
            g.add_edge(i - 1, i).unwrap();
        }
        g
    }

    /// Cycle `C_m`; requires `m >= 3`.
    pub fn cycle(m: usize) -> Graph {
        assert!(m >= 3, "cycles need at least 3 vertices");
        let mut g = Graph::path(m);
        g.add_edge(m - 1, 0).unwrap();
        g
    }

    /// Star `K_{1,k}` with center 0.
    pub fn star(k: usize) -> Graph {
        let mut g = Graph::empty(k + 1);
        for i in 1..=k {
            g.add_edge(0, i).unwrap();
        }
        g
    }

    /// Double star `DS_{p,q}`: centers 0 and 1, then `p` leaves on 0 and `q` on 1.
    pub fn double_star(p: usize, q: usize) -> Graph {
        let mut g = Graph::empty(2 + p + q);
        g.add_edge(0, 1).unwrap();
        for i in 0..p {
            g.add_edge(0, 2 + i).unwrap();
        }
        for i in 0..q {
            g.add_edge(1, 2 + p + i).unwrap();
        }
        g
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(a, b).unwrap();
            }
        }
        g
    }

    /// Spider `S_k` with head 0; leg `i` (0-based) is `3i+1, 3i+2, 3i+3`,
    /// where `3i+1` is adjacent to the head.
    pub fn spider(k: usize) -> Result<Graph> {
        if k < 2 {
            return Err(Error::InvalidGadget(format!("spider needs k >= 2, got {k}")));
        }
        let mut g = Graph::empty(3 * k + 1);
        for i in 0..k {
            let a = 3 * i + 1;
            g.add_edge(0, a)?;
            g.add_edge(a, a + 1)?;
            g.add_edge(a + 1, a + 2)?;
        }
        Ok(g)
    }
}
