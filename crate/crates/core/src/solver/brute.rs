use super::assignment::{valid_colors, ColorConstraint, RainbowAssignment, SolveOutcome};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Scans every assignment allowed by `c` in lexicographic order. Serves as
/// the reference oracle for the faster solvers.
pub fn gamma_bruteforce(g: &Graph, c: &ColorConstraint, cap: usize) -> Result<SolveOutcome> {
    let n = g.order();
    if n > cap {
        return Err(Error::CapExceeded { order: n, cap });
    }
    if c.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: c.len() });
    }
    let choices: Vec<Vec<u8>> = g.vertices().map(|v| c.colors(v).collect()).collect();
    let mut digit = vec![0usize; n];
    let mut colors: Vec<u8> = choices.iter().map(|ch| ch[0]).collect();
    let mut best: Option<(u32, Vec<u8>)> = None;
    loop {
        let w = colors.iter().filter(|&&x| x != 0).count() as u32;
        if best.as_ref().is_none_or(|(bw, _)| w < *bw) && valid_colors(g, &colors) {
            best = Some((w, colors.clone()));
        }
        // Odometer with the last vertex varying fastest.
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(match best {
                    None => SolveOutcome::Infeasible,
                    Some((weight, f)) => SolveOutcome::Optimal { weight, witness: RainbowAssignment(f) },
                });
            }
            i -= 1;
            digit[i] += 1;
            if digit[i] < choices[i].len() {
                colors[i] = choices[i][digit[i]];
                break;
            }
            digit[i] = 0;
            colors[i] = choices[i][0];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unconstrained(g: &Graph) -> SolveOutcome {
        gamma_bruteforce(g, &ColorConstraint::none(g.order()), 15).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(unconstrained(&Graph::path(7)).weight(), Some(4));
        assert_eq!(unconstrained(&Graph::cycle(5)).weight(), Some(4));
        assert_eq!(unconstrained(&Graph::empty(1)).weight(), Some(1));
        assert_eq!(unconstrained(&Graph::empty(0)).weight(), Some(0));
    }

    #[test]
    fn lexicographically_first_witness() {
        let out = unconstrained(&Graph::path(3));
        assert_eq!(out.witness().unwrap().to_string(), "102");
    }

    #[test]
    fn infeasible_and_capped() {
        let c = ColorConstraint::none(1).force(0, 0).unwrap();
        assert_eq!(gamma_bruteforce(&Graph::empty(1), &c, 15).unwrap(), SolveOutcome::Infeasible);
        assert_eq!(
            gamma_bruteforce(&Graph::path(16), &ColorConstraint::none(16), 15),
            Err(Error::CapExceeded { order: 16, cap: 15 })
        );
    }
}
