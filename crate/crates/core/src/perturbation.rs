//! Effect of single vertex and edge deletions on `γ_ri2`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::solver::{RainbowAssignment, Solver};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Removed {
    Vertex(usize),
    Edge(Edge),
}

impl fmt::Display for Removed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Removed::Vertex(v) => write!(f, "v{v}"),
            Removed::Edge(e) => write!(f, "e{e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemovalEntry {
    pub removed: Removed,
    pub gamma: u32,
    pub delta: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemovalProfile {
    pub base_gamma: u32,
    pub entries: Vec<RemovalEntry>,
}

impl fmt::Display for RemovalProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "base {}", self.base_gamma)?;
        for e in &self.entries {
            writeln!(f, "{}\t{}\t{:+}", e.removed, e.gamma, e.delta)?;
        }
        Ok(())
    }
}

pub fn vertex_removal_profile(solver: &Solver, g: &Graph) -> Result<RemovalProfile> {
    let base = solver.gamma_weight(g)?;
    let mut entries = Vec::with_capacity(g.order());
    for v in g.vertices() {
        let (h, _) = g.remove_vertex(v)?;
        let gamma = solver.gamma_weight(&h)?;
        entries.push(RemovalEntry { removed: Removed::Vertex(v), gamma, delta: gamma as i64 - base as i64 });
    }
    Ok(RemovalProfile { base_gamma: base, entries })
}

pub fn edge_removal_profile(solver: &Solver, g: &Graph) -> Result<RemovalProfile> {
    let base = solver.gamma_weight(g)?;
    let mut entries = Vec::with_capacity(g.size());
    for e in g.edges() {
        let gamma = solver.gamma_weight(&g.remove_edge(e)?)?;
        entries.push(RemovalEntry { removed: Removed::Edge(e), gamma, delta: gamma as i64 - base as i64 });
    }
    Ok(RemovalProfile { base_gamma: base, entries })
}

/// `γ_ri2(G - x) = γ_ri2(G)` for every vertex `x`.
pub fn is_stable(solver: &Solver, g: &Graph) -> Result<bool> {
    let base = solver.gamma_weight(g)?;
    for v in g.vertices() {
        let (h, _) = g.remove_vertex(v)?;
        if solver.gamma_weight(&h)? != base {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every edge deletion raises `γ_ri2` by exactly one. Trees only.
pub fn is_er_critical(solver: &Solver, t: &Graph) -> Result<bool> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    if t.size() == 0 {
        return Err(Error::OrderTooSmall { order: t.order(), min: 2 });
    }
    let base = solver.gamma_weight(t)?;
    for e in t.edges() {
        if solver.gamma_weight(&t.remove_edge(e)?)? != base + 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// How one minimum function sits on the deleted edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctionRecord {
    pub function: RainbowAssignment,
    /// The endpoint colored 0, when exactly one is.
    pub zero_endpoint: Option<usize>,
    /// Neighbors of `zero_endpoint` in `V_1 ∪ V_2`.
    pub positive_neighbors: Option<usize>,
    /// Exactly one endpoint is 0 and it has exactly two positive neighbors.
    pub meets_condition: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeWitness {
    pub edge: Edge,
    pub records: Vec<FunctionRecord>,
    /// Every minimum function meets the condition, which predicts a +1 delta.
    pub predicts_increase: bool,
    pub measured_delta: i64,
    pub agrees: bool,
}

fn record(t: &Graph, e: Edge, f: &RainbowAssignment) -> FunctionRecord {
    let zero_endpoint = match (f.color(e.u) == 0, f.color(e.v) == 0) {
        (true, false) => Some(e.u),
        (false, true) => Some(e.v),
        _ => None,
    };
    let positive_neighbors =
        zero_endpoint.map(|z| t.neighbors(z).iter().filter(|&&w| f.color(w) != 0).count());
    FunctionRecord {
        function: f.clone(),
        zero_endpoint,
        positive_neighbors,
        meets_condition: positive_neighbors == Some(2),
    }
}

/// Checks the structural characterization of a +1 edge deletion against
/// the measured delta, given the minimum functions of `t`.
pub fn edgedel_witness_with(
    solver: &Solver,
    t: &Graph,
    e: Edge,
    base_gamma: u32,
    functions: &[RainbowAssignment],
) -> Result<EdgeWitness> {
    let records: Vec<FunctionRecord> = functions.iter().map(|f| record(t, e, f)).collect();
    let predicts_increase = records.iter().all(|r| r.meets_condition);
    let measured_delta = solver.gamma_weight(&t.remove_edge(e)?)? as i64 - base_gamma as i64;
    Ok(EdgeWitness {
        edge: e,
        records,
        predicts_increase,
        measured_delta,
        agrees: predicts_increase == (measured_delta == 1),
    })
}

pub fn edgedel_witness(solver: &Solver, t: &Graph, e: Edge) -> Result<EdgeWitness> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let functions = solver.enumerate_min_functions(t)?;
    let base = functions[0].weight();
    edgedel_witness_with(solver, t, e, base, &functions)
}
