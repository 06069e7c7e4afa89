use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A map `V -> {0, 1, 2}`, stored by vertex id.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RainbowAssignment(pub Vec<u8>);

impl RainbowAssignment {
    pub fn new(colors: Vec<u8>) -> Self {
        debug_assert!(colors.iter().all(|&c| c <= 2));
        RainbowAssignment(colors)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn color(&self, v: usize) -> u8 {
        self.0[v]
    }

    /// `|V_1| + |V_2|`.
    pub fn weight(&self) -> u32 {
        self.0.iter().filter(|&&c| c != 0).count() as u32
    }

    /// Vertices assigned `color`.
    pub fn class(&self, color: u8) -> Vec<usize> {
        self.0.iter().enumerate().filter(|&(_, &c)| c == color).map(|(v, _)| v).collect()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for RainbowAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for RainbowAssignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|ch| match ch {
                '0'..='2' => Ok(ch as u8 - b'0'),
                _ => Err(Error::InvalidDigit(ch)),
            })
            .collect::<Result<Vec<u8>>>()
            .map(RainbowAssignment)
    }
}

impl Serialize for RainbowAssignment {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RainbowAssignment {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub const ALL_COLORS: u8 = 0b111;
pub const NONZERO: u8 = 0b110;
pub const ZERO_ONLY: u8 = 0b001;

/// Per-vertex allowed colors as bitmasks (bit `c` allows color `c`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColorConstraint {
    allowed: Vec<u8>,
}

impl ColorConstraint {
    pub fn none(n: usize) -> Self {
        ColorConstraint { allowed: vec![ALL_COLORS; n] }
    }

    pub fn from_masks(allowed: Vec<u8>) -> Result<Self> {
        if let Some(v) = allowed.iter().position(|&m| m & ALL_COLORS == 0) {
            return Err(Error::EmptyConstraint(v));
        }
        Ok(ColorConstraint { allowed: allowed.into_iter().map(|m| m & ALL_COLORS).collect() })
    }

    pub fn len(&self) -> usize {
        self.allowed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.allowed.is_empty()
    }

    pub fn mask(&self, v: usize) -> u8 {
        self.allowed[v]
    }

    pub fn allows(&self, v: usize, color: u8) -> bool {
        self.allowed[v] >> color & 1 == 1
    }

    pub fn is_unconstrained(&self) -> bool {
        self.allowed.iter().all(|&m| m == ALL_COLORS)
    }

    /// Intersects the allowed set of `v` with `mask`.
    pub fn restrict(mut self, v: usize, mask: u8) -> Result<Self> {
        self.allowed[v] &= mask;
        if self.allowed[v] == 0 {
            return Err(Error::EmptyConstraint(v));
        }
        Ok(self)
    }

    pub fn force(self, v: usize, color: u8) -> Result<Self> {
        self.restrict(v, 1 << color)
    }

    pub fn forbid(self, v: usize, color: u8) -> Result<Self> {
        self.restrict(v, ALL_COLORS & !(1 << color))
    }

    /// Allowed colors of `v`, ascending.
    pub fn colors(&self, v: usize) -> impl Iterator<Item = u8> + '_ {
        (0..3u8).filter(move |&c| self.allows(v, c))
    }

    /// Restriction to `keep` (in that order).
    pub fn sub(&self, keep: &[usize]) -> ColorConstraint {
        ColorConstraint { allowed: keep.iter().map(|&v| self.allowed[v]).collect() }
    }

    pub fn satisfied_by(&self, f: &RainbowAssignment) -> bool {
        f.len() == self.len() && f.0.iter().enumerate().all(|(v, &c)| self.allows(v, c))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum SolveOutcome {
    Infeasible,
    Optimal { weight: u32, witness: RainbowAssignment },
}

impl SolveOutcome {
    pub fn weight(&self) -> Option<u32> {
        match self {
            SolveOutcome::Infeasible => None,
            SolveOutcome::Optimal { weight, .. } => Some(*weight),
        }
    }

    pub fn witness(&self) -> Option<&RainbowAssignment> {
        match self {
            SolveOutcome::Infeasible => None,
            SolveOutcome::Optimal { witness, .. } => Some(witness),
        }
    }
}

/// Slice-level validity check shared by the solvers.
pub(crate) fn valid_colors(g: &Graph, colors: &[u8]) -> bool {
    for v in g.vertices() {
        let c = colors[v];
        let mut seen = 0u8;
        for &w in g.neighbors(v) {
            let cw = colors[w];
            if c != 0 && cw == c {
                return false;
            }
            seen |= 1 << cw;
        }
        if c == 0 && seen & NONZERO != NONZERO {
            return false;
        }
    }
    true
}

/// Whether `f` is a 2-rainbow independent dominating function of `g`:
/// `V_1` and `V_2` independent, every 0-vertex sees both colors.
pub fn is_2ridf(g: &Graph, f: &RainbowAssignment) -> Result<bool> {
    if f.len() != g.order() {
        return Err(Error::LengthMismatch { expected: g.order(), got: f.len() });
    }
    Ok(valid_colors(g, f.as_slice()))
}
