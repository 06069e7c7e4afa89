//! Tree DP under point updates of the color constraint.
//!
//! Each component is rooted at its smallest vertex and cut into heavy paths.
//! A vertex's table is a min-plus linear function of its heavy child's table,
//! so a heavy path is a product of 6x6 min-plus matrices kept in a segment
//! tree; light children enter through a second segment tree per vertex. A
//! constraint change at one vertex costs `O(log^2 n)` matrix products.

use super::tree_dp::{Table, INF, ONE, TWO, ZERO, ZERO_FULL};
use crate::graph::Graph;

const NONE: usize = usize::MAX;

fn add(a: u32, b: u32) -> u32 {
    (a + b).min(INF)
}

#[derive(Clone, Copy)]
struct Mat([[u32; 6]; 6]);

impl Mat {
    const IDENTITY: Mat = {
        let mut m = [[INF; 6]; 6];
        let mut i = 0;
        while i < 6 {
            m[i][i] = 0;
            i += 1;
        }
        Mat(m)
    };

    fn mul(&self, rhs: &Mat) -> Mat {
        let mut out = [[INF; 6]; 6];
        for (i, row) in out.iter_mut().enumerate() {
            for (k, &a) in self.0[i].iter().enumerate() {
                if a >= INF {
                    continue;
                }
                for (j, cell) in row.iter_mut().enumerate() {
                    *cell = (*cell).min(add(a, rhs.0[k][j]));
                }
            }
        }
        Mat(out)
    }

    /// Table of a path top: the product applied to a childless bottom, which
    /// behaves like a finished 0-child of cost 0.
    fn table(&self) -> Table {
        std::array::from_fn(|i| self.0[i][ZERO_FULL])
    }
}

/// Light children folded together: extra cost when the vertex is 1, when it
/// is 2, and, when it is 0, per set of colors seen among those children.
#[derive(Clone, Copy)]
struct Agg {
    under_one: u32,
    under_two: u32,
    zero: [u32; 4],
}

impl Agg {
    const IDENTITY: Agg = Agg { under_one: 0, under_two: 0, zero: [0, INF, INF, INF] };

    fn of_child(t: &Table) -> Agg {
        Agg {
            under_one: t[TWO].min(t[ZERO + 0b10]).min(t[ZERO_FULL]),
            under_two: t[ONE].min(t[ZERO + 0b01]).min(t[ZERO_FULL]),
            zero: [t[ZERO_FULL], t[ONE], t[TWO], INF],
        }
    }

    fn combine(&self, rhs: &Agg) -> Agg {
        let mut zero = [INF; 4];
        for (s, &a) in self.zero.iter().enumerate() {
            for (r, &b) in rhs.zero.iter().enumerate() {
                zero[s | r] = zero[s | r].min(add(a, b));
            }
        }
        Agg { under_one: add(self.under_one, rhs.under_one), under_two: add(self.under_two, rhs.under_two), zero }
    }

    /// Transition from the heavy child's table to the vertex's table.
    fn matrix(&self, mask: u8) -> Mat {
        let mut m = [[INF; 6]; 6];
        if mask & 0b010 != 0 {
            for j in [TWO, ZERO + 0b10, ZERO_FULL] {
                m[ONE][j] = add(1, self.under_one);
            }
        }
        if mask & 0b100 != 0 {
            for j in [ONE, ZERO + 0b01, ZERO_FULL] {
                m[TWO][j] = add(1, self.under_two);
            }
        }
        if mask & 0b001 != 0 {
            for (j, bit) in [(ONE, 0b01), (TWO, 0b10), (ZERO_FULL, 0b00)] {
                for (s, &cost) in self.zero.iter().enumerate() {
                    let cell = &mut m[ZERO + (s | bit)][j];
                    *cell = (*cell).min(cost);
                }
            }
        }
        Mat(m)
    }
}

/// Bottom-up segment tree over an associative product, padded to a power of two.
struct SegTree<T> {
    base: usize,
    nodes: Vec<T>,
    op: fn(&T, &T) -> T,
}

impl<T: Copy> SegTree<T> {
    fn new(leaves: &[T], identity: T, op: fn(&T, &T) -> T) -> Self {
        let base = leaves.len().next_power_of_two();
        let mut nodes = vec![identity; 2 * base];
        nodes[base..base + leaves.len()].copy_from_slice(leaves);
        for i in (1..base).rev() {
            nodes[i] = op(&nodes[2 * i], &nodes[2 * i + 1]);
        }
        SegTree { base, nodes, op }
    }

    fn set(&mut self, pos: usize, value: T) {
        let mut i = self.base + pos;
        self.nodes[i] = value;
        while i > 1 {
            i /= 2;
            self.nodes[i] = (self.op)(&self.nodes[2 * i], &self.nodes[2 * i + 1]);
        }
    }

    fn total(&self) -> &T {
        &self.nodes[1]
    }
}

struct HeavyPath {
    top: usize,
    product: SegTree<Mat>,
}

pub(crate) struct DynamicForest {
    masks: Vec<u8>,
    parent: Vec<usize>,
    path_of: Vec<usize>,
    pos: Vec<usize>,
    /// Index among the parent's light children; for roots, the component index.
    light_slot: Vec<usize>,
    lights: Vec<Option<SegTree<Agg>>>,
    paths: Vec<HeavyPath>,
    component_best: Vec<Option<u32>>,
    infeasible: usize,
    total: u32,
}

impl DynamicForest {
    /// `masks[v]` lists the colors allowed at `v`; `g` must be a forest.
    pub(crate) fn new(g: &Graph, masks: Vec<u8>) -> Self {
        let n = g.order();
        let mut parent = vec![NONE; n];
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for r in g.vertices() {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            order.push(r);
            let mut i = order.len() - 1;
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

        let mut size = vec![1usize; n];
        let mut heavy = vec![NONE; n];
        for &v in order.iter().rev() {
            let p = parent[v];
            if p != NONE {
                size[p] += size[v];
                if heavy[p] == NONE || size[v] > size[heavy[p]] || (size[v] == size[heavy[p]] && v < heavy[p]) {
                    heavy[p] = v;
                }
            }
        }

        let mut f = DynamicForest {
            masks,
            parent,
            path_of: vec![NONE; n],
            pos: vec![0; n],
            light_slot: vec![NONE; n],
            lights: (0..n).map(|_| None).collect(),
            paths: Vec::new(),
            component_best: Vec::new(),
            infeasible: 0,
            total: 0,
        };

        let mut light_children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &v in &order {
            let p = f.parent[v];
            if p != NONE && heavy[p] != v {
                f.light_slot[v] = light_children[p].len();
                light_children[p].push(v);
            }
        }

        // Children precede parents in reverse BFS order, so every light
        // child's path is complete before its parent's matrix is formed.
        let mut top_table: Vec<Table> = vec![[INF; 6]; n];
        let mut matrix: Vec<Mat> = vec![Mat::IDENTITY; n];
        for &v in order.iter().rev() {
            let agg = if light_children[v].is_empty() {
                Agg::IDENTITY
            } else {
                let leaves: Vec<Agg> = light_children[v].iter().map(|&c| Agg::of_child(&top_table[c])).collect();
                let tree = SegTree::new(&leaves, Agg::IDENTITY, Agg::combine);
                let agg = *tree.total();
                f.lights[v] = Some(tree);
                agg
            };
            matrix[v] = agg.matrix(f.masks[v]);
            let p = f.parent[v];
            if p != NONE && heavy[p] == v {
                continue;
            }
            let mut members = vec![v];
            while heavy[*members.last().unwrap()] != NONE {
                members.push(heavy[*members.last().unwrap()]);
            }
            let id = f.paths.len();
            let mats: Vec<Mat> = members.iter().map(|&u| matrix[u]).collect();
            for (i, &u) in members.iter().enumerate() {
                f.path_of[u] = id;
                f.pos[u] = i;
            }
            let product = SegTree::new(&mats, Mat::IDENTITY, Mat::mul);
            top_table[v] = product.total().table();
            f.paths.push(HeavyPath { top: v, product });
            if p == NONE {
                f.light_slot[v] = f.component_best.len();
                f.component_best.push(None);
                f.set_component(v, &top_table[v]);
            }
        }
        f
    }

    fn set_component(&mut self, root: usize, t: &Table) {
        let slot = self.light_slot[root];
        match self.component_best[slot] {
            Some(old) if old >= INF => self.infeasible -= 1,
            Some(old) => self.total -= old,
            None => {}
        }
        let new = t[ONE].min(t[TWO]).min(t[ZERO_FULL]);
        if new >= INF {
            self.infeasible += 1;
        } else {
            self.total += new;
        }
        self.component_best[slot] = Some(new);
    }

    /// Optimal weight under the current masks, or `None` when infeasible.
    pub(crate) fn weight(&self) -> Option<u32> {
        (self.infeasible == 0).then_some(self.total)
    }

    pub(crate) fn set_mask(&mut self, v: usize, mask: u8) {
        if self.masks[v] == mask {
            return;
        }
        self.masks[v] = mask;
        let mut v = v;
        loop {
            let agg = self.lights[v].as_ref().map_or(Agg::IDENTITY, |t| *t.total());
            let path = &mut self.paths[self.path_of[v]];
            path.product.set(self.pos[v], agg.matrix(self.masks[v]));
            let top = path.top;
            let table = path.product.total().table();
            let p = self.parent[top];
            if p == NONE {
                self.set_component(top, &table);
                return;
            }
            self.lights[p].as_mut().expect("light child has a slot").set(self.light_slot[top], Agg::of_child(&table));
            v = p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_tree, rng};
    use crate::solver::tree_dp::weight_unchecked;
    use crate::solver::ColorConstraint;
    use rand::Rng;

    fn static_weight(g: &Graph, masks: &[u8]) -> Option<u32> {
        weight_unchecked(g, &ColorConstraint::from_masks(masks.to_vec()).unwrap())
    }

    #[test]
    fn updates_track_the_static_solve() {
        let mut r = rng(11);
        for trial in 0..60 {
            let a = random_tree(r.gen_range(1..40), &mut r);
            let g = if trial % 3 == 0 { a.disjoint_union(&random_tree(r.gen_range(1..10), &mut r)) } else { a };
            let n = g.order();
            let mut masks = vec![0b111u8; n];
            let mut dp = DynamicForest::new(&g, masks.clone());
            assert_eq!(dp.weight(), static_weight(&g, &masks));
            for _ in 0..30 {
                let v = r.gen_range(0..n);
                masks[v] = r.gen_range(1..=7);
                dp.set_mask(v, masks[v]);
                assert_eq!(dp.weight(), static_weight(&g, &masks), "{masks:?}");
            }
        }
    }

    #[test]
    fn infeasible_components_are_counted() {
        let g = Graph::empty(2);
        let mut dp = DynamicForest::new(&g, vec![0b001, 0b001]);
        assert_eq!(dp.weight(), None);
        dp.set_mask(0, 0b010);
        assert_eq!(dp.weight(), None);
        dp.set_mask(1, 0b100);
        assert_eq!(dp.weight(), Some(2));
        let dp = DynamicForest::new(&Graph::empty(0), Vec::new());
        assert_eq!(dp.weight(), Some(0));
    }
}
