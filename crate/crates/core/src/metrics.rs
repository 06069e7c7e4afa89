use serde::Serialize;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Metrics {
    /// `None` when the graph is disconnected or empty.
    pub diameter: Option<usize>,
    /// Diameter of each component, in [`Graph::components`] order.
    pub component_diameters: Vec<usize>,
    /// `None` for forests.
    pub girth: Option<usize>,
    pub leaves: Vec<usize>,
    pub components: Vec<Vec<usize>>,
    /// Non-increasing.
    pub degree_sequence: Vec<usize>,
}

pub fn eccentricity(g: &Graph, v: usize) -> usize {
    g.distances_from(v).into_iter().flatten().max().unwrap_or(0)
}

pub fn girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for s in g.vertices() {
        let mut dist = vec![usize::MAX; g.order()];
        let mut parent = vec![usize::MAX; g.order()];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

pub fn metrics(g: &Graph) -> Metrics {
    let components = g.components();
    let component_diameters: Vec<usize> = components
        .iter()
        .map(|c| c.iter().map(|&v| eccentricity(g, v)).max().unwrap_or(0))
        .collect();
    let diameter = if components.len() == 1 { Some(component_diameters[0]) } else { None };
    let mut degree_sequence: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    degree_sequence.sort_unstable_by(|a, b| b.cmp(a));
    Metrics {
        diameter,
        component_diameters,
        girth: girth(g),
        leaves: g.leaves(),
        components,
        degree_sequence,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_graphs() {
        let m = metrics(&Graph::path(5));
        assert_eq!((m.diameter, m.girth, m.leaves.len()), (Some(4), None, 2));

        let m = metrics(&Graph::cycle(6));
        assert_eq!((m.diameter, m.girth, m.leaves.len()), (Some(3), Some(6), 0));

        let m = metrics(&Graph::star(4));
        assert_eq!((m.diameter, m.leaves.len()), (Some(2), 4));
        assert_eq!(m.degree_sequence, vec![4, 1, 1, 1, 1]);
    }

    #[test]
    fn disconnected_reports_per_component() {
        let g = Graph::path(3).disjoint_union(&Graph::cycle(3));
        let m = metrics(&g);
        assert_eq!(m.diameter, None);
        assert_eq!(m.component_diameters, vec![2, 1]);
        assert_eq!(m.girth, Some(3));
    }

    #[test]
    fn girth_picks_shortest_cycle() {
        // C6 with a chord 0-3 creates two 4-cycles.
        let mut g = Graph::cycle(6);
        g.add_edge(0, 3).unwrap();
        assert_eq!(girth(&g), Some(4));
        let mut g = Graph::cycle(5);
        g.add_edge(0, 2).unwrap();
        assert_eq!(girth(&g), Some(3));
    }
}
