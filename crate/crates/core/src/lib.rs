//! Exact 2-rainbow independent domination (`γ_ri2`) for small graphs, with
//! vertex/edge removal analysis and constructive recognition of the stable
//! and edge-removal-critical tree families.

pub mod enumerate;
pub mod error;
pub mod gadget;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod iso;
pub mod metrics;
pub mod perturbation;
pub mod random;
pub mod recognize;
pub mod solver;

pub use enumerate::enumerate_free_trees;
pub use error::{Error, Graph6Error, Result};
pub use gadget::{attach_gadget, Attached, GadgetKind};
pub use graph::{Edge, Graph, VertexMap};
pub use graph6::{emit_graph6, parse_graph6};
pub use harness::{Suite, SuiteParams, SuiteReport};
pub use iso::{canonical_form, trees_isomorphic};
pub use metrics::{metrics, Metrics};
pub use perturbation::{is_er_critical, is_stable};
pub use recognize::{
    recognize_family_f, recognize_family_t, replay_certificate, FMembership, FamilyTCertificate,
    SubdivisionPreimage, TMembership,
};
pub use solver::{
    gamma, gamma_bruteforce, gamma_tree_dp, gamma_weight, is_2ridf, ColorConstraint,
    RainbowAssignment, SolveOutcome, Solver,
};
