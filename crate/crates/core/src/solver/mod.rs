//! Exact computation of the 2-rainbow independent domination number.
//!
//! Forest components go through the linear-time tree DP; components with a
//! cycle go through exhaustive depth-first search. The literal `3^n` scan
//! ([`gamma_bruteforce`]) is kept as an independent oracle.

mod assignment;
mod brute;
mod dynamic;
pub(crate) mod search;
mod tree_dp;

pub use assignment::{
    is_2ridf, ColorConstraint, RainbowAssignment, SolveOutcome, ALL_COLORS, NONZERO, ZERO_ONLY,
};
pub use brute::gamma_bruteforce;
pub use tree_dp::{gamma_tree_dp, tree_weight};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_BRUTE_CAP: usize = 15;
pub const DEFAULT_SEARCH_CAP: usize = 30;

/// Solver limits.
///
/// `brute_cap` bounds the exponential scans (the `3^n` oracle, optimal-function
/// enumeration, independent domination); `search_cap` bounds the order of a
/// single cyclic component handed to the exact search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Solver {
    pub brute_cap: usize,
    pub search_cap: usize,
}

impl Default for Solver {
    fn default() -> Self {
        Solver { brute_cap: DEFAULT_BRUTE_CAP, search_cap: DEFAULT_SEARCH_CAP }
    }
}

impl Solver {
    pub fn with_caps(brute_cap: usize, search_cap: usize) -> Self {
        Solver { brute_cap, search_cap }
    }

    fn check_len(g: &Graph, c: &ColorConstraint) -> Result<()> {
        if c.len() != g.order() {
            return Err(Error::LengthMismatch { expected: g.order(), got: c.len() });
        }
        Ok(())
    }

    pub fn bruteforce(&self, g: &Graph, c: &ColorConstraint) -> Result<SolveOutcome> {
        gamma_bruteforce(g, c, self.brute_cap)
    }

    /// Optimal weight under `c`, or `None` when infeasible. Sums over components.
    pub fn weight(&self, g: &Graph, c: &ColorConstraint) -> Result<Option<u32>> {
        Self::check_len(g, c)?;
        if g.is_forest() {
            return Ok(tree_dp::weight_unchecked(g, c));
        }
        let mut total = 0;
        for comp in g.components() {
            let (sub, _) = g.induced(&comp);
            let sc = c.sub(&comp);
            let w = if sub.is_forest() {
                tree_dp::weight_unchecked(&sub, &sc)
            } else {
                if sub.order() > self.search_cap {
                    return Err(Error::CapExceeded { order: sub.order(), cap: self.search_cap });
                }
                search::min_weight(&sub, &sc)
            };
            match w {
                Some(w) => total += w,
                None => return Ok(None),
            }
        }
        Ok(Some(total))
    }

    /// Unconstrained optimum; always feasible.
    pub fn gamma_weight(&self, g: &Graph) -> Result<u32> {
        Ok(self.weight(g, &ColorConstraint::none(g.order()))?.expect("every graph has a 2RiDF"))
    }

    /// Optimum with the lexicographically smallest optimal witness.
    pub fn gamma(&self, g: &Graph, c: &ColorConstraint) -> Result<SolveOutcome> {
        Self::check_len(g, c)?;
        if g.is_forest() {
            return gamma_tree_dp(g, c);
        }
        let mut colors = vec![0u8; g.order()];
        let mut total = 0;
        for comp in g.components() {
            let (sub, _) = g.induced(&comp);
            let sc = c.sub(&comp);
            let out = if sub.is_forest() {
                gamma_tree_dp(&sub, &sc)?
            } else {
                if sub.order() > self.search_cap {
                    return Err(Error::CapExceeded { order: sub.order(), cap: self.search_cap });
                }
                match search::min_weight(&sub, &sc) {
                    None => SolveOutcome::Infeasible,
                    Some(weight) => {
                        let f = search::first_of_weight(&sub, &sc, weight).expect("optimum is attained");
                        SolveOutcome::Optimal { weight, witness: RainbowAssignment(f) }
                    }
                }
            };
            let SolveOutcome::Optimal { weight, witness } = out else {
                return Ok(SolveOutcome::Infeasible);
            };
            total += weight;
            for (i, &v) in comp.iter().enumerate() {
                colors[v] = witness.color(i);
            }
        }
        Ok(SolveOutcome::Optimal { weight: total, witness: RainbowAssignment(colors) })
    }

    /// Every minimum-weight 2RiDF, lexicographic by vertex id.
    pub fn enumerate_min_functions(&self, g: &Graph) -> Result<Vec<RainbowAssignment>> {
        if g.order() > self.brute_cap {
            return Err(Error::CapExceeded { order: g.order(), cap: self.brute_cap });
        }
        let gamma = self.gamma_weight(g)?;
        let c = ColorConstraint::none(g.order());
        Ok(search::all_of_weight(g, &c, gamma).into_iter().map(RainbowAssignment).collect())
    }

    /// Whether every minimum function assigns 0 to `v`.
    pub fn in_w_zero(&self, g: &Graph, v: usize) -> Result<bool> {
        g.check_vertex(v)?;
        let gamma = self.gamma_weight(g)?;
        let c = ColorConstraint::none(g.order()).restrict(v, NONZERO)?;
        Ok(self.weight(g, &c)?.is_none_or(|w| w > gamma))
    }

    /// `W_0(G)`: vertices assigned 0 by every minimum function.
    pub fn w_zero(&self, g: &Graph) -> Result<Vec<usize>> {
        if g.is_forest() {
            return Ok(tree_dp::forest_w_zero(g));
        }
        let gamma = self.gamma_weight(g)?;
        let mut out = Vec::new();
        for v in g.vertices() {
            let c = ColorConstraint::none(g.order()).restrict(v, NONZERO)?;
            if self.weight(g, &c)?.is_none_or(|w| w > gamma) {
                out.push(v);
            }
        }
        Ok(out)
    }

    /// Whether some minimum function assigns a color from `mask` to `v`.
    pub fn some_min_function_allows(&self, g: &Graph, v: usize, mask: u8) -> Result<bool> {
        g.check_vertex(v)?;
        let gamma = self.gamma_weight(g)?;
        let c = ColorConstraint::none(g.order()).restrict(v, mask)?;
        Ok(self.weight(g, &c)? == Some(gamma))
    }

    /// Independent domination number `i(G)` by subset enumeration.
    pub fn independent_domination(&self, g: &Graph) -> Result<u32> {
        let n = g.order();
        let cap = self.brute_cap.min(31);
        if n > cap {
            return Err(Error::CapExceeded { order: n, cap });
        }
        let nbr: Vec<u32> = g
            .vertices()
            .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
            .collect();
        let full: u32 = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
        let mut best = n as u32;
        for set in 0u32..=full {
            let size = set.count_ones();
            if size >= best {
                continue;
            }
            let mut covered = set;
            let mut independent = true;
            let mut rest = set;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if nbr[v] & set != 0 {
                    independent = false;
                    break;
                }
                covered |= nbr[v];
            }
            if independent && covered == full {
                best = size;
            }
        }
        Ok(best)
    }
}

/// [`Solver::gamma`] with default caps.
pub fn gamma(g: &Graph, c: &ColorConstraint) -> Result<SolveOutcome> {
    Solver::default().gamma(g, c)
}

/// Unconstrained optimum with default caps.
pub fn gamma_weight(g: &Graph) -> Result<u32> {
    Solver::default().gamma_weight(g)
}

pub fn enumerate_min_functions(g: &Graph) -> Result<Vec<RainbowAssignment>> {
    Solver::default().enumerate_min_functions(g)
}

pub fn w_zero(g: &Graph) -> Result<Vec<usize>> {
    Solver::default().w_zero(g)
}

pub fn independent_domination(g: &Graph) -> Result<u32> {
    Solver::default().independent_domination(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> RainbowAssignment {
        s.parse().unwrap()
    }

    #[test]
    fn dispatch_examples() {
        let g = Graph::empty(1).disjoint_union(&Graph::path(2));
        assert_eq!(gamma_weight(&g).unwrap(), 3);
        assert_eq!(gamma_weight(&Graph::cycle(4)).unwrap(), 2);
        assert_eq!(gamma_weight(&Graph::star(4)).unwrap(), 4);
    }

    #[test]
    fn mixed_components_witness() {
        let g = Graph::cycle(5).disjoint_union(&Graph::path(3));
        let out = gamma(&g, &ColorConstraint::none(8)).unwrap();
        assert_eq!(out.weight(), Some(6));
        let f = out.witness().unwrap();
        assert!(is_2ridf(&g, f).unwrap());
        let brute = gamma_bruteforce(&g, &ColorConstraint::none(8), 15).unwrap();
        assert_eq!(&brute, &out);
    }

    #[test]
    fn min_functions() {
        assert_eq!(enumerate_min_functions(&Graph::path(3)).unwrap(), vec![a("102"), a("201")]);
        assert_eq!(enumerate_min_functions(&Graph::path(2)).unwrap(), vec![a("12"), a("21")]);
        assert_eq!(enumerate_min_functions(&Graph::empty(1)).unwrap(), vec![a("1"), a("2")]);
    }

    #[test]
    fn w_zero_examples() {
        let s3 = Graph::spider(3).unwrap();
        // head 0, v2 of each leg at 3i+2
        assert_eq!(w_zero(&s3).unwrap(), vec![0, 2, 5, 8]);
        assert_eq!(w_zero(&Graph::path(3)).unwrap(), vec![1]);
        assert!(w_zero(&Graph::path(2)).unwrap().is_empty());
    }

    #[test]
    fn independent_domination_examples() {
        assert_eq!(independent_domination(&Graph::star(3)).unwrap(), 1);
        assert_eq!(independent_domination(&Graph::path(4)).unwrap(), 2);
        assert_eq!(independent_domination(&Graph::cycle(5)).unwrap(), 2);
        assert_eq!(independent_domination(&Graph::empty(0)).unwrap(), 0);
        assert_eq!(independent_domination(&Graph::empty(2)).unwrap(), 2);
    }

    #[test]
    fn caps_are_enforced() {
        let s = Solver::with_caps(15, 6);
        assert_eq!(
            s.gamma_weight(&Graph::cycle(7)),
            Err(Error::CapExceeded { order: 7, cap: 6 })
        );
        // forests are never capped
        assert_eq!(s.gamma_weight(&Graph::path(40)).unwrap(), 21);
        assert!(s.enumerate_min_functions(&Graph::path(16)).is_err());
    }
}
