//! Seeded random trees and graphs for property trials.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

pub type TrialRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Decodes a Prüfer sequence over `0..seq.len()+2` into a labeled tree.
pub fn prufer_decode(seq: &[usize]) -> Graph {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut g = Graph::empty(n);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        g.add_edge(leaf, x).unwrap();
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    g.add_edge(rest[0], rest[1]).unwrap();
    g
}

/// Uniform labeled tree on `n` vertices.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    match n {
        0 | 1 => Graph::empty(n),
        _ => {
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            prufer_decode(&seq)
        }
    }
}

/// Erdős–Rényi `G(n, p)`.
pub fn random_gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::empty(n);
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

/// `G(n, p)` resampled until connected.
pub fn random_connected_gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    loop {
        let g = random_gnp(n, p, rng);
        if g.is_connected() {
            return g;
        }
    }
}

/// Uniformly random relabeling of `g`.
pub fn shuffle_labels<R: Rng>(g: &Graph, rng: &mut R) -> Graph {
    let mut perm: Vec<usize> = g.vertices().collect();
    for i in (1..perm.len()).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    g.permuted(&perm)
}
