//! Exact depth-first search with incremental validity checks, for graphs
//! with cycles and for enumerating all optimal functions.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use super::assignment::{ColorConstraint, NONZERO};
use crate::graph::Graph;

const UNSET: u8 = u8::MAX;

pub(crate) struct Search<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    /// Allowed colors per vertex; 0 is dropped for vertices of degree < 2.
    domain: Vec<u8>,
    /// Vertices whose closed neighborhood is complete at each position.
    closing: Vec<Vec<usize>>,
    /// Number of vertices among `order[i..]` that cannot take 0.
    forced_suffix: Vec<u32>,
    colors: Vec<u8>,
}

/// Breadth-first order over all components, each started at its smallest vertex.
pub(crate) fn bfs_order(g: &Graph) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    let mut order = Vec::with_capacity(g.order());
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

impl<'a> Search<'a> {
    /// `None` when some vertex has an empty domain.
    pub(crate) fn new(g: &'a Graph, c: &ColorConstraint, order: Vec<usize>) -> Option<Self> {
        let n = g.order();
        let mut domain = vec![0u8; n];
        for v in g.vertices() {
            let mut d = c.mask(v);
            if g.degree(v) < 2 {
                d &= NONZERO;
            }
            if d == 0 {
                return None;
            }
            domain[v] = d;
        }
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut closing = vec![Vec::new(); n];
        for v in g.vertices() {
            let last = g.neighbors(v).iter().map(|&w| pos[w]).fold(pos[v], usize::max);
            closing[last].push(v);
        }
        let mut forced_suffix = vec![0u32; n + 1];
        for i in (0..n).rev() {
            forced_suffix[i] = forced_suffix[i + 1] + u32::from(domain[order[i]] & 1 == 0);
        }
        Some(Search { g, order, domain, closing, forced_suffix, colors: vec![UNSET; n] })
    }

    /// Visits every valid complete assignment of weight at most `*limit`, in
    /// lexicographic order along `order` with colors ascending. The visitor
    /// may lower `*limit` to prune.
    pub(crate) fn run<F>(&mut self, limit: &mut u32, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[u8], u32, &mut u32) -> ControlFlow<()>,
    {
        self.descend(0, 0, limit, visit)
    }

    fn descend<F>(&mut self, i: usize, weight: u32, limit: &mut u32, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[u8], u32, &mut u32) -> ControlFlow<()>,
    {
        if weight + self.forced_suffix[i] > *limit {
            return ControlFlow::Continue(());
        }
        if i == self.order.len() {
            return visit(&self.colors, weight, limit);
        }
        let v = self.order[i];
        for color in 0..3u8 {
            if self.domain[v] >> color & 1 == 0 {
                continue;
            }
            if color != 0 && self.g.neighbors(v).iter().any(|&w| self.colors[w] == color) {
                continue;
            }
            self.colors[v] = color;
            if self.closes_ok(i) {
                let w = weight + u32::from(color != 0);
                self.descend(i + 1, w, limit, visit)?;
            }
        }
        self.colors[v] = UNSET;
        ControlFlow::Continue(())
    }

    fn closes_ok(&self, i: usize) -> bool {
        self.closing[i].iter().all(|&u| {
            self.colors[u] != 0 || {
                let seen = self.g.neighbors(u).iter().fold(0u8, |acc, &w| acc | 1 << self.colors[w]);
                seen & NONZERO == NONZERO
            }
        })
    }
}

/// Minimum weight, or `None` if infeasible.
pub(crate) fn min_weight(g: &Graph, c: &ColorConstraint) -> Option<u32> {
    let mut search = Search::new(g, c, bfs_order(g))?;
    let mut best = None;
    let mut limit = g.order() as u32;
    let _ = search.run(&mut limit, &mut |_, w, limit| {
        best = Some(w);
        if w == 0 {
            return ControlFlow::Break(());
        }
        *limit = w - 1;
        ControlFlow::Continue(())
    });
    best
}

/// Lexicographically first valid assignment (by vertex id) of weight `target`.
pub(crate) fn first_of_weight(g: &Graph, c: &ColorConstraint, target: u32) -> Option<Vec<u8>> {
    let mut search = Search::new(g, c, g.vertices().collect())?;
    let mut found = None;
    let mut limit = target;
    let _ = search.run(&mut limit, &mut |colors, w, _| {
        if w == target {
            found = Some(colors.to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

/// All valid assignments of weight exactly `target`, lexicographic by vertex id.
pub(crate) fn all_of_weight(g: &Graph, c: &ColorConstraint, target: u32) -> Vec<Vec<u8>> {
    let Some(mut search) = Search::new(g, c, g.vertices().collect()) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut limit = target;
    let _ = search.run(&mut limit, &mut |colors, w, _| {
        if w == target {
            out.push(colors.to_vec());
        }
        ControlFlow::Continue(())
    });
    out
}
