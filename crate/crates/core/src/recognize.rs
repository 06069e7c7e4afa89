//! Constructive recognition of the two tree families.
//!
//! Stable trees are built from `P_3` or a spider `S_k` (`k >= 3`) by the
//! operations `O1` (path `v2 v1 v3` glued at a `W_0` vertex), `O2` (an `S_2`
//! glued by its head at a vertex outside `W_0`) and `O3` (an `S_k`, `k >= 3`,
//! glued anywhere). [`recognize_family_t`] peels the last operation off the
//! far end of a diametrical path and recurses, producing a certificate whose
//! replay reconstructs the input.
//!
//! Edge-removal-critical trees are exactly subdivision graphs of nontrivial
//! trees; [`recognize_family_f`] extracts the preimage.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gadget::{attach_gadget, GadgetKind};
use crate::graph::Graph;
use crate::graph6::emit_graph6;
use crate::iso::trees_isomorphic;
use crate::solver::Solver;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum BaseTree {
    P3,
    #[serde(rename = "spider")]
    Spider { k: usize },
}

impl BaseTree {
    pub fn build(self) -> Result<Graph> {
        match self {
            BaseTree::P3 => Ok(Graph::path(3)),
            BaseTree::Spider { k } if k >= 3 => Graph::spider(k),
            BaseTree::Spider { k } => Err(Error::InvalidGadget(format!("base spider needs k >= 3, got {k}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operation {
    O1,
    O2,
    O3 { k: usize },
}

impl Operation {
    pub fn gadget(self) -> GadgetKind {
        match self {
            Operation::O1 => GadgetKind::O1,
            Operation::O2 => GadgetKind::O2,
            Operation::O3 { k } => GadgetKind::O3(k),
        }
    }
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operation::O1 => write!(f, "O1"),
            Operation::O2 => write!(f, "O2"),
            Operation::O3 { k } => write!(f, "O3(k={k})"),
        }
    }
}

/// One construction step; `attach` is a vertex id of the tree before the step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "StepRepr", try_from = "StepRepr")]
pub struct TreeCertificateStep {
    pub op: Operation,
    pub attach: usize,
}

#[derive(Serialize, Deserialize)]
struct StepRepr {
    op: String,
    #[serde(default)]
    params: BTreeMap<String, usize>,
    attach: usize,
}

impl From<TreeCertificateStep> for StepRepr {
    fn from(s: TreeCertificateStep) -> Self {
        let (op, params) = match s.op {
            Operation::O1 => ("O1", BTreeMap::new()),
            Operation::O2 => ("O2", BTreeMap::new()),
            Operation::O3 { k } => ("O3", BTreeMap::from([("k".to_string(), k)])),
        };
        StepRepr { op: op.to_string(), params, attach: s.attach }
    }
}

impl TryFrom<StepRepr> for TreeCertificateStep {
    type Error = String;

    fn try_from(r: StepRepr) -> std::result::Result<Self, String> {
        let op = match r.op.as_str() {
            "O1" => Operation::O1,
            "O2" => Operation::O2,
            "O3" => Operation::O3 { k: *r.params.get("k").ok_or("O3 needs params.k")? },
            other => return Err(format!("unknown operation {other:?}")),
        };
        Ok(TreeCertificateStep { op, attach: r.attach })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyTCertificate {
    pub base: BaseTree,
    pub steps: Vec<TreeCertificateStep>,
}

impl fmt::Display for FamilyTCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.base {
            BaseTree::P3 => write!(f, "P3")?,
            BaseTree::Spider { k } => write!(f, "S{k}")?,
        }
        for s in &self.steps {
            write!(f, " {}@{}", s.op, s.attach)?;
        }
        Ok(())
    }
}

/// Outcome of [`recognize_family_t`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TMembership {
    /// `image[v]` is the id of input vertex `v` in the replayed tree.
    Member { certificate: FamilyTCertificate, image: Vec<usize> },
    NotMember { reason: String },
}

impl TMembership {
    pub fn certificate(&self) -> Option<&FamilyTCertificate> {
        match self {
            TMembership::Member { certificate, .. } => Some(certificate),
            TMembership::NotMember { .. } => None,
        }
    }

    pub fn is_member(&self) -> bool {
        matches!(self, TMembership::Member { .. })
    }
}

/// Rebuilds the tree described by `cert`, checking each step's side
/// condition on the tree built so far.
pub fn replay_certificate(solver: &Solver, cert: &FamilyTCertificate) -> Result<Graph> {
    let mut t = cert.base.build()?;
    for (i, step) in cert.steps.iter().enumerate() {
        t.check_vertex(step.attach)?;
        match step.op {
            Operation::O1 if !solver.in_w_zero(&t, step.attach)? => {
                return Err(Error::SideCondition {
                    step: i,
                    reason: format!("O1 attach vertex {} is not in W_0", step.attach),
                });
            }
            Operation::O2 if solver.in_w_zero(&t, step.attach)? => {
                return Err(Error::SideCondition {
                    step: i,
                    reason: format!("O2 attach vertex {} is in W_0", step.attach),
                });
            }
            _ => {}
        }
        t = attach_gadget(&t, step.attach, step.op.gadget())?.graph;
    }
    Ok(t)
}

struct Rooted {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    height: Vec<usize>,
}

fn root_at(t: &Graph, root: usize) -> Rooted {
    let n = t.order();
    let mut parent = vec![None; n];
    let mut order = vec![root];
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        for &w in t.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(u);
                order.push(w);
            }
        }
        i += 1;
    }
    let mut children = vec![Vec::new(); n];
    for &u in &order[1..] {
        children[parent[u].unwrap()].push(u);
    }
    let mut height = vec![0; n];
    for &u in order.iter().rev() {
        if let Some(p) = parent[u] {
            height[p] = height[p].max(height[u] + 1);
        }
    }
    Rooted { parent, children, height }
}

/// Identifies `t` as `S_k` (`k >= 3`); returns the image map into [`Graph::spider`].
fn match_spider(t: &Graph) -> Option<(usize, Vec<usize>)> {
    let n = t.order();
    if n < 10 || !(n - 1).is_multiple_of(3) {
        return None;
    }
    let k = (n - 1) / 3;
    let head = t.vertices().find(|&v| t.degree(v) == k)?;
    let mut image = vec![usize::MAX; n];
    image[head] = 0;
    for (i, &a) in t.neighbors(head).iter().enumerate() {
        let leg = leg_from(t, head, a)?;
        for (j, &v) in leg.iter().enumerate() {
            image[v] = 3 * i + 1 + j;
        }
    }
    Some((k, image))
}

/// The pendant path `a b c` hanging from `from` via `a`, if it is exactly that.
fn leg_from(t: &Graph, from: usize, a: usize) -> Option<[usize; 3]> {
    if t.degree(a) != 2 {
        return None;
    }
    let b = *t.neighbors(a).iter().find(|&&w| w != from)?;
    if t.degree(b) != 2 {
        return None;
    }
    let c = *t.neighbors(b).iter().find(|&&w| w != a)?;
    (t.degree(c) == 1).then_some([a, b, c])
}

/// End `v1` of a diametrical path whose second vertex has the largest
/// degree (ties: smaller second vertex, then smaller end), and the other
/// end `vk` (smallest id at maximum distance).
fn diametrical_ends(t: &Graph) -> (usize, usize, usize) {
    let ecc: Vec<usize> =
        t.vertices().map(|v| t.distances_from(v).into_iter().flatten().max().unwrap_or(0)).collect();
    let diam = ecc.iter().copied().max().unwrap_or(0);
    let v1 = t
        .vertices()
        .filter(|&v| ecc[v] == diam && t.degree(v) == 1)
        .min_by_key(|&v| {
            let s = t.neighbors(v)[0];
            (std::cmp::Reverse(t.degree(s)), s, v)
        })
        .expect("a tree with an edge has a peripheral leaf");
    let dist = t.distances_from(v1);
    let vk = t.vertices().find(|&v| dist[v] == Some(diam)).unwrap();
    (v1, vk, diam)
}

enum Peel {
    /// Strip `removed`, then attach `op` at `attach` (an id in `t`);
    /// `gadget_image` lists the stripped vertices in gadget id order.
    Step { op: Operation, attach: usize, gadget_image: Vec<usize> },
    Reject(String),
}

fn reject<T>(msg: impl Into<String>) -> std::result::Result<T, Peel> {
    Err(Peel::Reject(msg.into()))
}

fn choose_peel(t: &Graph) -> std::result::Result<Peel, Peel> {
    let (v1, vk, diam) = diametrical_ends(t);
    if diam < 3 {
        return reject("star other than P3");
    }
    let r = root_at(t, vk);
    let up = |v: usize| r.parent[v].expect("below the root");
    let v2 = up(v1);
    let v3 = up(v2);
    match t.degree(v2) {
        3 => {
            let mut leaves = r.children[v2].clone();
            leaves.sort_unstable();
            return Ok(Peel::Step { op: Operation::O1, attach: v3, gadget_image: vec![v2, leaves[0], leaves[1]] });
        }
        2 => {}
        d => return reject(format!("support vertex {v2} carries {} leaves", d - 1)),
    }
    if t.degree(v3) != 2 {
        return reject(format!("vertex {v3} above a pendant P2 has degree {}", t.degree(v3)));
    }
    if diam < 4 {
        return reject("path P4");
    }
    let v4 = up(v3);
    let v5 = up(v4);

    let mut kids = r.children[v4].clone();
    kids.sort_unstable();
    if let Some(&y) = kids.iter().find(|&&c| r.height[c] == 1) {
        if t.degree(y) != 3 {
            return reject(format!("child {y} of {v4} has {} leaves", t.degree(y) - 1));
        }
        let mut leaves = r.children[y].clone();
        leaves.sort_unstable();
        return Ok(Peel::Step { op: Operation::O1, attach: v4, gadget_image: vec![y, leaves[0], leaves[1]] });
    }
    if let Some(&x) = kids.iter().find(|&&c| r.height[c] == 0) {
        return reject(format!("{v4} has leaf child {x} next to a pendant P3"));
    }
    let mut legs = Vec::with_capacity(kids.len());
    for &c in &kids {
        match leg_from(t, v4, c) {
            Some(leg) => legs.push(leg),
            None => return reject(format!("subtree at {c} below {v4} is not a pendant P3")),
        }
    }
    match legs.len() {
        1 => reject(format!("pendant P4 hanging from {v5}")),
        2 => {
            // O2 labels: v1 head, v2 v3 v4 first leg, v5 v6 v7 second leg.
            let mut image = vec![v4];
            image.extend(legs.iter().flatten());
            Ok(Peel::Step { op: Operation::O2, attach: v5, gadget_image: image })
        }
        k => {
            let mut image = vec![v4];
            image.extend(legs.iter().flatten());
            Ok(Peel::Step { op: Operation::O3 { k }, attach: v5, gadget_image: image })
        }
    }
}

fn decompose(solver: &Solver, t: &Graph) -> Result<TMembership> {
    if t.order() == 3 {
        // The only tree on three vertices is P3; map its center to 1.
        let center = t.vertices().find(|&v| t.degree(v) == 2).unwrap();
        let mut image = vec![0; 3];
        let mut next = [0, 2].into_iter();
        for v in t.vertices() {
            image[v] = if v == center { 1 } else { next.next().unwrap() };
        }
        let certificate = FamilyTCertificate { base: BaseTree::P3, steps: Vec::new() };
        return Ok(TMembership::Member { certificate, image });
    }
    if let Some((k, image)) = match_spider(t) {
        let certificate = FamilyTCertificate { base: BaseTree::Spider { k }, steps: Vec::new() };
        return Ok(TMembership::Member { certificate, image });
    }
    let (op, attach, gadget_image) = match choose_peel(t) {
        Ok(Peel::Step { op, attach, gadget_image }) | Err(Peel::Step { op, attach, gadget_image }) => {
            (op, attach, gadget_image)
        }
        Ok(Peel::Reject(reason)) | Err(Peel::Reject(reason)) => return Ok(TMembership::NotMember { reason }),
    };
    let (rest, map) = t.remove_vertices(&gadget_image)?;
    if rest.order() < 3 {
        return Ok(TMembership::NotMember {
            reason: format!("peeling {op} leaves a tree of order {}", rest.order()),
        });
    }
    let x = map[attach].expect("attach vertex survives");
    match op {
        Operation::O1 if !solver.in_w_zero(&rest, x)? => {
            return Ok(TMembership::NotMember { reason: format!("O1 attach vertex {attach} not in W_0 of the residual tree") });
        }
        Operation::O2 if solver.in_w_zero(&rest, x)? => {
            return Ok(TMembership::NotMember { reason: format!("O2 attach vertex {attach} in W_0 of the residual tree") });
        }
        _ => {}
    }
    let (mut certificate, rest_image) = match decompose(solver, &rest)? {
        TMembership::Member { certificate, image } => (certificate, image),
        not => return Ok(not),
    };
    let base_order = rest.order();
    let mut image = vec![usize::MAX; t.order()];
    for v in t.vertices() {
        if let Some(w) = map[v] {
            image[v] = rest_image[w];
        }
    }
    for (i, &v) in gadget_image.iter().enumerate() {
        image[v] = base_order + i;
    }
    certificate.steps.push(TreeCertificateStep { op, attach: rest_image[x] });
    Ok(TMembership::Member { certificate, image })
}

/// Decides membership in the stable-tree family, with a certificate on success.
pub fn recognize_family_t(solver: &Solver, t: &Graph) -> Result<TMembership> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    if t.order() < 3 {
        return Err(Error::OrderTooSmall { order: t.order(), min: 3 });
    }
    decompose(solver, t)
}

/// A tree `T` together with the classes of `S(T)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionPreimage {
    pub preimage: Graph,
    /// Input vertices that are vertices of the preimage (preimage id = index).
    pub originals: Vec<usize>,
    /// Input vertices that subdivide a preimage edge.
    pub subdividers: Vec<usize>,
}

impl Serialize for SubdivisionPreimage {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let g6 = emit_graph6(&self.preimage).map_err(serde::ser::Error::custom)?;
        let mut st = s.serialize_struct("SubdivisionPreimage", 3)?;
        st.serialize_field("preimage", &g6)?;
        st.serialize_field("originals", &self.originals)?;
        st.serialize_field("subdividers", &self.subdividers)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FMembership {
    Member(SubdivisionPreimage),
    NotMember { reason: String },
}

impl FMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, FMembership::Member(_))
    }
}

/// Decides whether `t` is the subdivision graph of a nontrivial tree.
pub fn recognize_family_f(t: &Graph) -> Result<FMembership> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let not = |reason: String| Ok(FMembership::NotMember { reason });
    if t.order() < 3 {
        return not(format!("order {} is below 3", t.order()));
    }
    if t.order().is_multiple_of(2) {
        return not(format!("even order {}", t.order()));
    }
    let leaf = t.leaves()[0];
    let dist = t.distances_from(leaf);
    let (originals, subdividers): (Vec<usize>, Vec<usize>) =
        t.vertices().partition(|&v| dist[v].unwrap().is_multiple_of(2));
    if let Some(&x) = subdividers.iter().find(|&&x| t.degree(x) != 2) {
        return not(format!("odd-distance vertex {x} has degree {}", t.degree(x)));
    }
    if originals.len() < 2 {
        return not("fewer than two original vertices".into());
    }
    let mut index = vec![usize::MAX; t.order()];
    for (i, &y) in originals.iter().enumerate() {
        index[y] = i;
    }
    let mut preimage = Graph::empty(originals.len());
    for &x in &subdividers {
        let ns = t.neighbors(x);
        preimage.add_edge(index[ns[0]], index[ns[1]])?;
    }
    if !trees_isomorphic(&preimage.subdivision(), t)? {
        return not("subdivision of the extracted preimage does not match".into());
    }
    Ok(FMembership::Member(SubdivisionPreimage { preimage, originals, subdividers }))
}
