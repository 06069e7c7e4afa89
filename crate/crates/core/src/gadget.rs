//! Pendant gadgets glued onto an existing vertex.
//!
//! New vertices are appended after the existing ids in the order their
//! names are listed for each kind; the returned name map addresses them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GadgetKind {
    /// Path `v2 v1 v3`, `x ~ v1`. Meant for `x` in `W_0`.
    O1,
    /// Path `v4 v3 v2 v1 v5 v6 v7`, `x ~ v1`. Meant for `x` outside `W_0`.
    O2,
    /// Spider `S_k` (`k >= 3`), `x ~` head.
    O3(usize),
    /// Path `v2 v1 v3`, `x ~ v1`.
    K12Path,
    /// Path `v5 v4 v3 v2 v1`, `x ~ v4`.
    K13Path,
    /// Spider `S_k` (`k >= 2`), `x ~` head.
    SpiderAttach(usize),
    /// Leaf `v` and path `v1 v2`, `x ~ v`, `x ~ v2`.
    LeafAndP2,
    /// Paths `v1 v2` and `v1' v2'`, `x ~ v2`, `x ~ v2'`.
    TwoP2,
    /// Paths `v1 v2` and `u1 u2 u3`, `x ~ v2`, `x ~ u3`.
    P2AndP3,
    /// Path `u1 u2 u3 u4`, `x ~ u4`.
    P4,
    /// Paths `v1 v2 v3`, `u1 u2 u3` and vertex `w`, `x ~ w, v3, u3`.
    TwoP3AndLeaf,
    /// `k >= 3` pendant leaves `v1..vk` on `x`.
    PendantLeaves(usize),
    /// Path `u1 .. u5`, `x ~ u4`.
    P5AtFourth,
}

impl GadgetKind {
    /// The seven configurations that always destroy stability.
    pub fn non_stable_configs(pendant_leaves: usize) -> [GadgetKind; 7] {
        [
            GadgetKind::LeafAndP2,
            GadgetKind::TwoP2,
            GadgetKind::P2AndP3,
            GadgetKind::P4,
            GadgetKind::TwoP3AndLeaf,
            GadgetKind::PendantLeaves(pendant_leaves),
            GadgetKind::P5AtFourth,
        ]
    }

    /// Number of vertices the gadget adds.
    pub fn added_order(self) -> usize {
        match self {
            GadgetKind::O1 | GadgetKind::K12Path | GadgetKind::LeafAndP2 => 3,
            GadgetKind::O2 | GadgetKind::TwoP3AndLeaf => 7,
            GadgetKind::O3(k) | GadgetKind::SpiderAttach(k) => 3 * k + 1,
            GadgetKind::K13Path | GadgetKind::P2AndP3 | GadgetKind::P5AtFourth => 5,
            GadgetKind::TwoP2 | GadgetKind::P4 => 4,
            GadgetKind::PendantLeaves(k) => k,
        }
    }

    fn validate(self) -> Result<()> {
        match self {
            GadgetKind::O3(k) if k < 3 => Err(Error::InvalidGadget(format!("O3 needs k >= 3, got {k}"))),
            GadgetKind::SpiderAttach(k) if k < 2 => {
                Err(Error::InvalidGadget(format!("spider needs k >= 2, got {k}")))
            }
            GadgetKind::PendantLeaves(k) if k < 3 => {
                Err(Error::InvalidGadget(format!("pendant configuration needs k >= 3, got {k}")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GadgetKind::O1 => write!(f, "o1"),
            GadgetKind::O2 => write!(f, "o2"),
            GadgetKind::O3(k) => write!(f, "o3:{k}"),
            GadgetKind::K12Path => write!(f, "k12"),
            GadgetKind::K13Path => write!(f, "k13"),
            GadgetKind::SpiderAttach(k) => write!(f, "spider:{k}"),
            GadgetKind::LeafAndP2 => write!(f, "k14-1"),
            GadgetKind::TwoP2 => write!(f, "k14-2"),
            GadgetKind::P2AndP3 => write!(f, "k14-3"),
            GadgetKind::P4 => write!(f, "k14-4"),
            GadgetKind::TwoP3AndLeaf => write!(f, "k14-5"),
            GadgetKind::PendantLeaves(k) => write!(f, "k14-6:{k}"),
            GadgetKind::P5AtFourth => write!(f, "k14-7"),
        }
    }
}

impl FromStr for GadgetKind {
    type Err = Error;

    /// Accepts the [`Display`](fmt::Display) form, e.g. `o1`, `o3:4`, `k14-6:3`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, param) = match s.split_once(':') {
            Some((a, b)) => {
                let k = b
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidGadget(format!("bad parameter in {s:?}")))?;
                (a, Some(k))
            }
            None => (s, None),
        };
        let kind = match (name.to_ascii_lowercase().as_str(), param) {
            ("o1", None) => GadgetKind::O1,
            ("o2", None) => GadgetKind::O2,
            ("o3", Some(k)) => GadgetKind::O3(k),
            ("o3", None) => GadgetKind::O3(3),
            ("k12", None) => GadgetKind::K12Path,
            ("k13", None) => GadgetKind::K13Path,
            ("spider", Some(k)) => GadgetKind::SpiderAttach(k),
            ("k14-1", None) => GadgetKind::LeafAndP2,
            ("k14-2", None) => GadgetKind::TwoP2,
            ("k14-3", None) => GadgetKind::P2AndP3,
            ("k14-4", None) => GadgetKind::P4,
            ("k14-5", None) => GadgetKind::TwoP3AndLeaf,
            ("k14-6", Some(k)) => GadgetKind::PendantLeaves(k),
            ("k14-6", None) => GadgetKind::PendantLeaves(3),
            ("k14-7", None) => GadgetKind::P5AtFourth,
            _ => return Err(Error::InvalidGadget(format!("unknown gadget {s:?}"))),
        };
        kind.validate()?;
        Ok(kind)
    }
}

/// Result of [`attach_gadget`]: the grown graph and named gadget vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attached {
    pub graph: Graph,
    /// Includes `"x"` for the attachment vertex.
    pub names: BTreeMap<String, usize>,
}

impl Attached {
    pub fn id(&self, name: &str) -> usize {
        self.names[name]
    }
}

struct Builder {
    graph: Graph,
    names: BTreeMap<String, usize>,
}

impl Builder {
    fn fresh(&mut self, name: impl Into<String>) -> usize {
        let id = self.graph.add_vertex();
        self.names.insert(name.into(), id);
        id
    }

    fn fresh_all(&mut self, names: &[&str]) -> Vec<usize> {
        names.iter().map(|&n| self.fresh(n)).collect()
    }

    fn join(&mut self, a: usize, b: usize) {
        self.graph.add_edge(a, b).expect("fresh ids");
    }

    fn path(&mut self, ids: &[usize]) {
        for w in ids.windows(2) {
            self.join(w[0], w[1]);
        }
    }

    /// Spider with head `v1` and legs `v1^i v2^i v3^i`, `i` 1-based.
    fn spider(&mut self, k: usize) -> usize {
        let head = self.fresh("v1");
        for i in 1..=k {
            let leg: Vec<usize> = (1..=3).map(|j| self.fresh(format!("v{j}^{i}"))).collect();
            self.join(head, leg[0]);
            self.path(&leg);
        }
        head
    }
}

pub fn attach_gadget(g: &Graph, x: usize, kind: GadgetKind) -> Result<Attached> {
    g.check_vertex(x)?;
    kind.validate()?;
    let mut b = Builder { graph: g.clone(), names: BTreeMap::from([("x".to_string(), x)]) };
    match kind {
        GadgetKind::O1 | GadgetKind::K12Path => {
            let v = b.fresh_all(&["v1", "v2", "v3"]);
            b.path(&[v[1], v[0], v[2]]);
            b.join(x, v[0]);
        }
        GadgetKind::O2 => {
            let v = b.fresh_all(&["v1", "v2", "v3", "v4", "v5", "v6", "v7"]);
            b.path(&[v[3], v[2], v[1], v[0], v[4], v[5], v[6]]);
            b.join(x, v[0]);
        }
        GadgetKind::O3(k) | GadgetKind::SpiderAttach(k) => {
            let head = b.spider(k);
            b.join(x, head);
        }
        GadgetKind::K13Path => {
            let v = b.fresh_all(&["v1", "v2", "v3", "v4", "v5"]);
            b.path(&[v[4], v[3], v[2], v[1], v[0]]);
            b.join(x, v[3]);
        }
        GadgetKind::LeafAndP2 => {
            let v = b.fresh_all(&["v", "v1", "v2"]);
            b.join(x, v[0]);
            b.join(x, v[2]);
            b.join(v[2], v[1]);
        }
        GadgetKind::TwoP2 => {
            let v = b.fresh_all(&["v1", "v2", "v1'", "v2'"]);
            b.join(v[0], v[1]);
            b.join(v[2], v[3]);
            b.join(x, v[1]);
            b.join(x, v[3]);
        }
        GadgetKind::P2AndP3 => {
            let v = b.fresh_all(&["v1", "v2", "u1", "u2", "u3"]);
            b.join(v[0], v[1]);
            b.path(&[v[2], v[3], v[4]]);
            b.join(x, v[1]);
            b.join(x, v[4]);
        }
        GadgetKind::P4 => {
            let u = b.fresh_all(&["u1", "u2", "u3", "u4"]);
            b.path(&u);
            b.join(x, u[3]);
        }
        GadgetKind::TwoP3AndLeaf => {
            let v = b.fresh_all(&["v1", "v2", "v3", "u1", "u2", "u3", "w"]);
            b.path(&v[0..3]);
            b.path(&v[3..6]);
            b.join(x, v[6]);
            b.join(x, v[2]);
            b.join(x, v[5]);
        }
        GadgetKind::PendantLeaves(k) => {
            for i in 1..=k {
                let v = b.fresh(format!("v{i}"));
                b.join(x, v);
            }
        }
        GadgetKind::P5AtFourth => {
            let u = b.fresh_all(&["u1", "u2", "u3", "u4", "u5"]);
            b.path(&u);
            b.join(x, u[3]);
        }
    }
    Ok(Attached { graph: b.graph, names: b.names })
}
