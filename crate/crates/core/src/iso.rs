//! Forest isomorphism via AHU canonical encodings rooted at tree centers.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Canonical parenthesis encoding of the subtree rooted at `v`, ignoring `parent`.
pub fn rooted_encoding(g: &Graph, v: usize, parent: Option<usize>) -> String {
    let mut kids: Vec<String> = g
        .neighbors(v)
        .iter()
        .filter(|&&w| Some(w) != parent)
        .map(|&w| rooted_encoding(g, w, Some(v)))
        .collect();
    kids.sort_unstable();
    let mut s = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
    s.push('(');
    for k in kids {
        s.push_str(&k);
    }
    s.push(')');
    s
}

/// Center(s) of the tree component containing `comp` (one or two vertices).
pub fn centers(g: &Graph, comp: &[usize]) -> Vec<usize> {
    if comp.len() <= 2 {
        return comp.to_vec();
    }
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut layer: Vec<usize> = comp.iter().copied().filter(|&v| deg[v] <= 1).collect();
    let mut remaining = comp.len();
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in g.neighbors(v) {
                if deg[w] > 1 {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
            deg[v] = 0;
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

fn tree_encoding(g: &Graph, comp: &[usize]) -> String {
    centers(g, comp)
        .into_iter()
        .map(|c| rooted_encoding(g, c, None))
        .min()
        .expect("nonempty component")
}

/// Canonical form of a forest: sorted list of per-component encodings.
pub fn canonical_form(g: &Graph) -> Result<String> {
    if !g.is_forest() {
        return Err(Error::ContainsCycle);
    }
    let mut parts: Vec<String> = g.components().iter().map(|c| tree_encoding(g, c)).collect();
    parts.sort_unstable();
    Ok(parts.concat())
}

pub fn trees_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    let ca = canonical_form(a)?;
    let cb = canonical_form(b)?;
    Ok(a.order() == b.order() && ca == cb)
}
