//! Free-tree enumeration by level sequences (Wright, Richmond, Odlyzko and
//! McKay), constant amortized time per tree.
//!
//! A rooted tree is stored as its canonical level sequence: the depths of
//! the vertices in preorder with heavier subtrees first. The generator walks
//! rooted trees in decreasing order and skips to the next sequence whose root
//! is a center (or the designated end of a bicentral edge).

use crate::graph::Graph;

/// Iterator over all unlabeled free trees of a given order, each exactly once.
pub struct FreeTrees {
    n: usize,
    layout: Option<Vec<usize>>,
}

pub fn enumerate_free_trees(n: usize) -> FreeTrees {
    let layout = match n {
        0 => None,
        1 => Some(vec![0]),
        // Path rooted at its center.
        _ => Some((0..=n / 2).chain(1..n.div_ceil(2)).collect()),
    };
    FreeTrees { n, layout }
}

impl Iterator for FreeTrees {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        let layout = self.layout.take()?;
        if self.n == 1 {
            return Some(Graph::empty(1));
        }
        let layout = next_free(layout);
        let g = layout_to_graph(&layout);
        self.layout = next_rooted(&layout, None);
        Some(g)
    }
}

/// Splits off the first subtree of the root: returns it (depths shifted up by
/// one) and the remainder (root plus the other subtrees).
fn split(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = layout
        .iter()
        .enumerate()
        .skip(2)
        .find(|&(_, &d)| d == 1)
        .map_or(layout.len(), |(i, _)| i);
    let left = layout[1..m].iter().map(|d| d - 1).collect();
    let mut rest = vec![0];
    rest.extend_from_slice(&layout[m..]);
    (left, rest)
}

/// Next rooted level sequence in decreasing order, varying from position `p`
/// (default: the last entry greater than one).
fn next_rooted(prev: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = prev.len() - 1;
            while prev[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while prev[q] + 1 != prev[p] {
        q -= 1;
    }
    let mut out = prev.to_vec();
    for i in p..out.len() {
        out[i] = out[i - p + q];
    }
    Some(out)
}

fn next_free(candidate: Vec<usize>) -> Vec<usize> {
    let (left, rest) = split(&candidate);
    let lh = *left.iter().max().unwrap();
    let rh = *rest.iter().max().unwrap();
    let mut valid = rh >= lh;
    if valid && rh == lh && (left.len() > rest.len() || (left.len() == rest.len() && left > rest)) {
        valid = false;
    }
    if valid {
        return candidate;
    }
    let p = left.len();
    let mut next = next_rooted(&candidate, Some(p)).expect("p >= 1");
    if candidate[p] > 2 {
        let (new_left, _) = split(&next);
        let h = *new_left.iter().max().unwrap();
        let len = next.len();
        for (slot, d) in next[len - (h + 1)..].iter_mut().zip(1..) {
            *slot = d;
        }
    }
    next
}

/// Builds the tree of a level sequence; vertex `i` is the `i`-th in preorder.
pub fn layout_to_graph(layout: &[usize]) -> Graph {
    let mut g = Graph::empty(layout.len());
    let mut last_at: Vec<usize> = Vec::new();
    for (i, &d) in layout.iter().enumerate() {
        if d > 0 {
            g.add_edge(last_at[d - 1], i).unwrap();
        }
        last_at.truncate(d);
        last_at.push(i);
    }
    g
}
