//! Dynamic program for forests.
//!
//! Six states per rooted subtree: the root colored 1, colored 2, or colored 0
//! with the set `S` of colors already present among its children
//! (`{}`, `{1}`, `{2}`, `{1,2}`). A 0-child is finished once `S` together with
//! the parent's color covers both colors, so under a 0-parent only the
//! `S = {1,2}` state is admissible.

use super::assignment::{ColorConstraint, RainbowAssignment, SolveOutcome, ALL_COLORS, NONZERO};
use super::dynamic::DynamicForest;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub(crate) const INF: u32 = u32::MAX / 4;

pub(crate) const ONE: usize = 0;
pub(crate) const TWO: usize = 1;
/// `ZERO + s` where bit 0 of `s` records a 1-child, bit 1 a 2-child.
pub(crate) const ZERO: usize = 2;
pub(crate) const ZERO_FULL: usize = ZERO + 0b11;

pub(crate) type Table = [u32; 6];

fn add(a: u32, b: u32) -> u32 {
    (a + b).min(INF)
}

/// Post-order of each component rooted at its smallest vertex.
fn postorder(g: &Graph) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let n = g.order();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut roots = Vec::new();
    let mut seen = vec![false; n];
    for r in g.vertices() {
        if seen[r] {
            continue;
        }
        roots.push(r);
        seen[r] = true;
        let start = order.len();
        order.push(r);
        let mut i = start;
        while i < order.len() {
            let u = order[i];
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = u;
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    order.reverse();
    (order, parent, roots)
}

fn solve_tables(g: &Graph, c: &ColorConstraint) -> (Vec<Table>, Vec<usize>) {
    let (order, parent, roots) = postorder(g);
    let mut table = vec![[INF; 6]; g.order()];
    for &v in &order {
        let mut one = 1;
        let mut two = 1;
        let mut zero = [0, INF, INF, INF];
        for &ch in g.neighbors(v) {
            if ch == parent[v] {
                continue;
            }
            let t = &table[ch];
            one = add(one, t[TWO].min(t[ZERO + 0b10]).min(t[ZERO_FULL]));
            two = add(two, t[ONE].min(t[ZERO + 0b01]).min(t[ZERO_FULL]));
            let mut next = [INF; 4];
            for s in 0..4 {
                if zero[s] >= INF {
                    continue;
                }
                let opts = [(t[ONE], 0b01), (t[TWO], 0b10), (t[ZERO_FULL], 0b00)];
                for (cost, bit) in opts {
                    let slot = &mut next[s | bit];
                    *slot = (*slot).min(add(zero[s], cost));
                }
            }
            zero = next;
        }
        let mut row = [INF; 6];
        if c.allows(v, 1) {
            row[ONE] = one;
        }
        if c.allows(v, 2) {
            row[TWO] = two;
        }
        if c.allows(v, 0) {
            row[ZERO..].copy_from_slice(&zero);
        }
        table[v] = row;
    }
    (table, roots)
}

/// Optimal weight on a forest, or `None` when the constraint admits no 2RiDF.
pub fn tree_weight(g: &Graph, c: &ColorConstraint) -> Result<Option<u32>> {
    if !g.is_forest() {
        return Err(Error::ContainsCycle);
    }
    if c.len() != g.order() {
        return Err(Error::LengthMismatch { expected: g.order(), got: c.len() });
    }
    Ok(weight_unchecked(g, c))
}

pub(crate) fn weight_unchecked(g: &Graph, c: &ColorConstraint) -> Option<u32> {
    let (table, roots) = solve_tables(g, c);
    let mut total = 0;
    for r in roots {
        let t = &table[r];
        let best = t[ONE].min(t[TWO]).min(t[ZERO_FULL]);
        if best >= INF {
            return None;
        }
        total += best;
    }
    Some(total)
}

/// Exact solve on a forest with the lexicographically smallest optimal witness.
///
/// The weight is linear; the witness fixes vertices in id order to the
/// smallest color that keeps the optimum, each trial an `O(log^2 n)` update.
pub fn gamma_tree_dp(g: &Graph, c: &ColorConstraint) -> Result<SolveOutcome> {
    let Some(weight) = tree_weight(g, c)? else {
        return Ok(SolveOutcome::Infeasible);
    };
    let mut dp = DynamicForest::new(g, (0..g.order()).map(|v| c.mask(v)).collect());
    let mut colors = Vec::with_capacity(g.order());
    for v in g.vertices() {
        let color = c
            .colors(v)
            .find(|&color| {
                dp.set_mask(v, 1 << color);
                dp.weight() == Some(weight)
            })
            .expect("some color attains the optimum");
        colors.push(color);
    }
    Ok(SolveOutcome::Optimal { weight, witness: RainbowAssignment(colors) })
}

/// `W_0` of a forest: one forced-nonzero update and one revert per vertex.
pub(crate) fn forest_w_zero(g: &Graph) -> Vec<usize> {
    let mut dp = DynamicForest::new(g, vec![ALL_COLORS; g.order()]);
    let gamma = dp.weight().expect("unconstrained forests are feasible");
    let mut out = Vec::new();
    for v in g.vertices() {
        dp.set_mask(v, NONZERO);
        if dp.weight().is_none_or(|w| w > gamma) {
            out.push(v);
        }
        dp.set_mask(v, ALL_COLORS);
    }
    out
}
