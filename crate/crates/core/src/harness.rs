//! Named verification suites. Each suite checks a family of exact claims
//! against the solver and returns a [`SuiteReport`] whose failures carry a
//! graph6 witness.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::enumerate::enumerate_free_trees;
use crate::error::{Error, Result};
use crate::gadget::{attach_gadget, GadgetKind};
use crate::graph::Graph;
use crate::graph6::emit_graph6;
use crate::iso::trees_isomorphic;
use crate::metrics::{girth, metrics};
use crate::perturbation::{edgedel_witness_with, is_er_critical, is_stable, vertex_removal_profile};
use crate::random::{random_connected_gnp, random_gnp, random_tree, rng, TrialRng};
use crate::recognize::{recognize_family_f, recognize_family_t, replay_certificate, FMembership, TMembership};
use crate::solver::{ColorConstraint, RainbowAssignment, Solver, NONZERO, ZERO_ONLY};

/// Failure records kept per check; the check summary still counts all of them.
pub const MAX_RECORDED_FAILURES: usize = 20;
/// Largest order of the random trees in the oracle suite.
pub const ORACLE_RANDOM_MAX_N: usize = 12;
/// Orders of a stable tree that exist below 15; every order from 15 on has one.
pub const STABLE_ORDERS_BELOW_15: [usize; 6] = [3, 6, 9, 10, 12, 13];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    PathCycle,
    Oracle,
    Diameter,
    Gadgets,
    Stability,
    Er,
    Bounds,
    Removal,
    MinFunction,
    Unicyclic,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::PathCycle,
        Suite::Oracle,
        Suite::Diameter,
        Suite::Gadgets,
        Suite::Stability,
        Suite::Er,
        Suite::Bounds,
        Suite::Removal,
        Suite::MinFunction,
        Suite::Unicyclic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::PathCycle => "path-cycle",
            Suite::Oracle => "oracle",
            Suite::Diameter => "diameter",
            Suite::Gadgets => "gadgets",
            Suite::Stability => "stability",
            Suite::Er => "er",
            Suite::Bounds => "bounds",
            Suite::Removal => "removal",
            Suite::MinFunction => "minfunction",
            Suite::Unicyclic => "unicyclic",
        }
    }

    /// Non-assertive suites only collect evidence and never fail.
    pub fn assertive(self) -> bool {
        self != Suite::Unicyclic
    }

    pub fn defaults(self) -> SuiteParams {
        let p = |max_n, trials, seed| SuiteParams { max_n, trials, seed };
        match self {
            Suite::PathCycle => p(Some(20), None, None),
            Suite::Oracle => p(Some(10), Some(500), Some(1)),
            Suite::Diameter => p(Some(14), None, None),
            Suite::Gadgets => p(None, Some(200), Some(1)),
            Suite::Stability => p(Some(14), Some(100), Some(1)),
            Suite::Er => p(Some(13), None, None),
            Suite::Bounds => p(Some(14), None, None),
            Suite::Removal => p(Some(12), Some(500), Some(1)),
            Suite::MinFunction => p(Some(10), None, None),
            Suite::Unicyclic => p(Some(10), None, None),
        }
    }

    /// Runs the suite with its defaults, overridden by any value in `overrides`
    /// that the suite uses.
    pub fn run(self, solver: &Solver, overrides: &SuiteParams) -> Result<SuiteReport> {
        let d = self.defaults();
        let max_n = d.max_n.map(|v| overrides.max_n.unwrap_or(v)).unwrap_or(0);
        let trials = d.trials.map(|v| overrides.trials.unwrap_or(v)).unwrap_or(0);
        let seed = d.seed.map(|v| overrides.seed.unwrap_or(v)).unwrap_or(0);
        match self {
            Suite::PathCycle => verify_path_cycle(solver, max_n),
            Suite::Oracle => verify_oracle(solver, max_n, trials, seed),
            Suite::Diameter => verify_diameter_and_extremal(solver, max_n),
            Suite::Gadgets => verify_gadget_props(solver, trials, seed),
            Suite::Stability => verify_stability_theorem(solver, max_n, trials, seed),
            Suite::Er => verify_er_theorem(solver, max_n),
            Suite::Bounds => verify_bs_bounds(solver, max_n),
            Suite::Removal => verify_removal_bounds(solver, max_n, trials, seed),
            Suite::MinFunction => verify_minfunction_structure(solver, max_n),
            Suite::Unicyclic => explore_unicyclic(solver, max_n),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
            format!("unknown suite {s:?}; expected one of {}", names.join(", "))
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SuiteParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub runs: u64,
    pub failures: u64,
    pub skipped: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: String,
    /// Graph the failing check ran on; absent for aggregate checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph6: Option<String>,
    pub expected: String,
    pub actual: String,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Evidence,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Evidence => "evidence",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub status: Status,
    pub assertive: bool,
    pub params: SuiteParams,
    pub checks: Vec<CheckSummary>,
    pub skipped: u64,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<UnicyclicEvidence>,
    /// Wall time; excluded from JSON so reports stay byte-identical.
    #[serde(skip)]
    pub seconds: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn runs(&self) -> u64 {
        self.checks.iter().map(|c| c.runs).sum()
    }

    pub fn failure_count(&self) -> u64 {
        self.checks.iter().map(|c| c.failures).sum()
    }

    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// One line for the aggregate table.
    pub fn summary_line(&self) -> String {
        let mut params = Vec::new();
        if let Some(v) = self.params.max_n {
            params.push(format!("max_n={v}"));
        }
        if let Some(v) = self.params.trials {
            params.push(format!("trials={v}"));
        }
        if let Some(v) = self.params.seed {
            params.push(format!("seed={v}"));
        }
        format!(
            "{:<12} {:<28} {:>9} {:>8} {:>7} {:>8.2} {}",
            self.suite,
            params.join(","),
            self.runs(),
            self.failure_count(),
            self.skipped,
            self.seconds,
            self.status
        )
    }

    pub const SUMMARY_HEADER: &'static str =
        "suite        params                          checks failures skipped  seconds status";
}

#[derive(Default)]
struct Recorder {
    checks: Vec<CheckSummary>,
    failures: Vec<Failure>,
    recorded: BTreeMap<String, usize>,
    notes: Vec<String>,
}

impl Recorder {
    fn new(names: &[&str]) -> Self {
        let mut r = Recorder::default();
        for n in names {
            r.entry(n);
        }
        r
    }

    fn entry(&mut self, name: &str) -> &mut CheckSummary {
        let i = match self.checks.iter().position(|c| c.name == name) {
            Some(i) => i,
            None => {
                self.checks.push(CheckSummary { name: name.to_string(), runs: 0, failures: 0, skipped: 0 });
                self.checks.len() - 1
            }
        };
        &mut self.checks[i]
    }

    fn check<F>(&mut self, name: &str, g: Option<&Graph>, ok: bool, fail: F)
    where
        F: FnOnce() -> (String, String, String),
    {
        let c = self.entry(name);
        c.runs += 1;
        if ok {
            return;
        }
        c.failures += 1;
        let kept = self.recorded.entry(name.to_string()).or_default();
        if *kept >= MAX_RECORDED_FAILURES {
            return;
        }
        *kept += 1;
        let (expected, actual, detail) = fail();
        self.failures.push(Failure {
            check: name.to_string(),
            graph6: g.map(|g| emit_graph6(g).unwrap_or_else(|e| format!("<{e}>"))),
            expected,
            actual,
            detail,
        });
    }

    /// Equality check with the values as the failure payload.
    fn eq<T: PartialEq + fmt::Display>(&mut self, name: &str, g: &Graph, expected: T, actual: T, detail: &str) {
        let ok = expected == actual;
        self.check(name, Some(g), ok, || (expected.to_string(), actual.to_string(), detail.to_string()));
    }

    fn skip(&mut self, name: &str) {
        self.entry(name).skipped += 1;
    }

    /// Turns a cap overrun into a skip; other errors propagate.
    fn capped<T>(&mut self, name: &str, r: Result<T>) -> Result<Option<T>> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(Error::CapExceeded { .. }) => {
                self.skip(name);
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }

    fn note(&mut self, s: String) {
        self.notes.push(s);
    }

    fn finish(self, suite: Suite, params: SuiteParams, start: Instant) -> SuiteReport {
        let skipped = self.checks.iter().map(|c| c.skipped).sum();
        let status = if !suite.assertive() {
            Status::Evidence
        } else if self.failures.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        SuiteReport {
            suite: suite.name().to_string(),
            status,
            assertive: suite.assertive(),
            params,
            checks: self.checks,
            skipped,
            failures: self.failures,
            notes: self.notes,
            evidence: None,
            seconds: start.elapsed().as_secs_f64(),
        }
    }
}

fn stream(seed: u64, id: u64) -> TrialRng {
    let mut r = rng(seed);
    r.set_stream(id);
    r
}

fn trees(n: usize) -> impl Iterator<Item = Graph> {
    enumerate_free_trees(n)
}

fn cycle_formula(m: usize) -> u32 {
    let half = m.div_ceil(2) as u32;
    match m % 4 {
        0 | 3 => half,
        _ => half + 1,
    }
}

fn path_formula(n: usize) -> u32 {
    (n + 1).div_ceil(2) as u32
}

/// Path and cycle closed forms for `1 <= n <= max_n`, `3 <= m <= max_n`.
pub fn verify_path_cycle(solver: &Solver, max_n: usize) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut rec = Recorder::new(&["path", "cycle"]);
    for n in 1..=max_n {
        let p = Graph::path(n);
        let w = solver.gamma_weight(&p)?;
        rec.eq("path", &p, path_formula(n), w, &format!("P{n}"));
    }
    for m in 3..=max_n {
        let c = Graph::cycle(m);
        if let Some(w) = rec.capped("cycle", solver.gamma_weight(&c))? {
            rec.eq("cycle", &c, cycle_formula(m), w, &format!("C{m}, m mod 4 = {}", m % 4));
        }
    }
    let params = SuiteParams { max_n: Some(max_n), ..Default::default() };
    Ok(rec.finish(Suite::PathCycle, params, start))
}

fn random_constraint<R: Rng>(n: usize, rng: &mut R, forbid: bool) -> ColorConstraint {
    let c = ColorConstraint::none(n);
    if n == 0 {
        return c;
    }
    let v = rng.gen_range(0..n);
    let color = rng.gen_range(0..3u8);
    let out = if forbid { c.forbid(v, color) } else { c.force(v, color) };
    out.expect("single-vertex restriction is never empty")
}

fn constraint_label(c: &ColorConstraint) -> String {
    (0..c.len())
        .filter(|&v| !c.allows(v, 0) || !c.allows(v, 1) || !c.allows(v, 2))
        .map(|v| {
            let colors: Vec<String> = c.colors(v).map(|x| x.to_string()).collect();
            format!("vertex {v} allowed {{{}}}", colors.join(","))
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn oracle_compare(rec: &mut Recorder, solver: &Solver, name: &str, g: &Graph, c: &ColorConstraint) -> Result<()> {
    let dp = solver.gamma(g, c)?;
    let Some(brute) = rec.capped(name, solver.bruteforce(g, c))? else {
        return Ok(());
    };
    let label = constraint_label(c);
    let detail = if label.is_empty() { "unconstrained".to_string() } else { label };
    rec.check(name, Some(g), dp == brute, || (format!("{brute:?}"), format!("{dp:?}"), detail.clone()));
    if let Some(f) = dp.witness() {
        let ok = crate::solver::is_2ridf(g, f)? && c.satisfied_by(f) && f.weight() == dp.weight().unwrap();
        rec.check("witness-valid", Some(g), ok, || ("valid witness".into(), f.to_string(), detail));
    }
    Ok(())
}

/// Tree DP against the `3^n` scan: all trees up to `max_n`, then `trials`
/// random trees up to [`ORACLE_RANDOM_MAX_N`], each unconstrained, with one
/// forced color and with one forbidden color.
pub fn verify_oracle(solver: &Solver, max_n: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut rec = Recorder::new(&["exhaustive-trees", "random-trees", "witness-valid"]);
    let mut r = stream(seed, 0);
    for n in 1..=max_n {
        for t in trees(n) {
            for c in [ColorConstraint::none(n), random_constraint(n, &mut r, false), random_constraint(n, &mut r, true)] {
                oracle_compare(&mut rec, solver, "exhaustive-trees", &t, &c)?;
            }
        }
    }
    let mut r = stream(seed, 1);
    for _ in 0..trials {
        let n = r.gen_range(1..=ORACLE_RANDOM_MAX_N);
        let t = random_tree(n, &mut r);
        for c in [ColorConstraint::none(n), random_constraint(n, &mut r, false), random_constraint(n, &mut r, true)] {
            oracle_compare(&mut rec, solver, "random-trees", &t, &c)?;
        }
    }
    let params = SuiteParams { max_n: Some(max_n), trials: Some(trials), seed: Some(seed) };
    Ok(rec.finish(Suite::Oracle, params, start))
}

fn is_star(t: &Graph) -> bool {
    let n = t.order();
    n >= 2 && t.vertices().any(|v| t.degree(v) == n - 1)
}

/// Diameter upper bound on all trees and the `n - 1` extremal characterization.
pub fn verify_diameter_and_extremal(solver: &Solver, max_n: usize) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut rec = Recorder::new(&["diameter-bound", "n-minus-one"]);
    let mut tight = 0u64;
    for n in 1..=max_n {
        let ds = (n >= 4).then(|| Graph::double_star(1, n - 3));
        for t in trees(n) {
            let w = solver.gamma_weight(&t)?;
            let d = metrics(&t).diameter.unwrap_or(0);
            let bound = (n - d + d.div_ceil(2)) as u32;
            tight += u64::from(w == bound);
            rec.check("diameter-bound", Some(&t), w <= bound, || {
                (format!("<= {bound}"), w.to_string(), format!("n={n}, diam={d}"))
            });
            if let Some(ds) = &ds {
                let shape = is_star(&t) || trees_isomorphic(&t, ds)?;
                let extremal = w as usize == n - 1;
                rec.check("n-minus-one", Some(&t), shape == extremal, || {
                    let e = if shape { "gamma = n-1" } else { "gamma < n-1" };
                    (e.into(), w.to_string(), format!("n={n}, star or DS_1,{}: {shape}", n - 3))
                });
            }
        }
    }
    rec.note(format!("diameter bound tight on {tight} trees"));
    let params = SuiteParams { max_n: Some(max_n), ..Default::default() };
    Ok(rec.finish(Suite::Diameter, params, start))
}

/// Gadget increments and the seven stability-destroying configurations on
/// random connected base graphs.
pub fn verify_gadget_props(solver: &Solver, trials: usize, seed: u64) -> Result<SuiteReport> {
    let start = Instant::now();
    let increments = [
        ("k12-path", GadgetKind::K12Path, 2u32),
        ("k13-path", GadgetKind::K13Path, 3),
        ("spider-2", GadgetKind::SpiderAttach(2), 4),
        ("spider-3", GadgetKind::SpiderAttach(3), 6),
    ];
    let k14_names = ["k14-1", "k14-2", "k14-3", "k14-4", "k14-5", "k14-6", "k14-7"];
    let mut names: Vec<&str> = increments.iter().map(|x| x.0).collect();
    names.extend(k14_names);
    let mut rec = Recorder::new(&names);
    let mut r = stream(seed, 0);
    for _ in 0..trials {
        let n = r.gen_range(1..=8);
        let p = *[0.3, 0.5].choose(&mut r).unwrap();
        let g = random_connected_gnp(n, p, &mut r);
        let x = r.gen_range(0..n);
        let pendant = r.gen_range(3..=4);
        let base6 = emit_graph6(&g)?;
        let Some(base) = rec.capped("k12-path", solver.gamma_weight(&g))? else {
            continue;
        };
        for (name, kind, delta) in increments {
            let h = attach_gadget(&g, x, kind)?.graph;
            if let Some(w) = rec.capped(name, solver.gamma_weight(&h))? {
                let detail = format!("base {base6} (gamma {base}), attached {kind} at {x}");
                rec.eq(name, &h, base + delta, w, &detail);
            }
        }
        for (name, kind) in k14_names.into_iter().zip(GadgetKind::non_stable_configs(pendant)) {
            let h = attach_gadget(&g, x, kind)?.graph;
            if let Some(st) = rec.capped(name, is_stable(solver, &h))? {
                rec.check(name, Some(&h), !st, || {
                    ("not stable".into(), "stable".into(), format!("base {base6}, attached {kind} at {x}"))
                });
            }
        }
    }
    let params = SuiteParams { trials: Some(trials), seed: Some(seed), ..Default::default() };
    Ok(rec.finish(Suite::Gadgets, params, start))
}

fn expected_stable_orders(max_n: usize) -> BTreeSet<usize> {
    (3..=max_n).filter(|&n| n >= 15 || STABLE_ORDERS_BELOW_15.contains(&n)).collect()
}

fn fmt_set<T: fmt::Display>(s: impl IntoIterator<Item = T>) -> String {
    let v: Vec<String> = s.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

/// Recognizer against exact stability on all trees `3..=max_n`, certificate
/// replay, the set of stable orders, and `trials` single operations applied
/// to stable trees under their side conditions.
pub fn verify_stability_theorem(solver: &Solver, max_n: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut rec = Recorder::new(&["recognizer-agrees", "certificate-replays", "replay-stable", "stable-orders", "operations-preserve"]);
    let mut pool = Vec::new();
    let mut orders = BTreeSet::new();
    for n in 3..=max_n {
        let (mut count, mut total) = (0, 0);
        for t in trees(n) {
            total += 1;
            let Some(st) = rec.capped("recognizer-agrees", is_stable(solver, &t))? else { continue };
            let m = recognize_family_t(solver, &t)?;
            rec.check("recognizer-agrees", Some(&t), st == m.is_member(), || {
                let reason = match &m {
                    TMembership::Member { certificate, .. } => format!("certificate {certificate}"),
                    TMembership::NotMember { reason } => reason.clone(),
                };
                (format!("member = {st}"), format!("member = {}", m.is_member()), reason)
            });
            if st {
                count += 1;
                pool.push(t.clone());
            }
            if let TMembership::Member { certificate, image } = &m {
                match replay_certificate(solver, certificate) {
                    Ok(r) => {
                        let same = r == t.permuted(image) && trees_isomorphic(&r, &t)?;
                        rec.check("certificate-replays", Some(&t), same, || {
                            ("isomorphic replay".into(), emit_graph6(&r).unwrap_or_default(), certificate.to_string())
                        });
                        let ok = is_stable(solver, &r)?;
                        rec.check("replay-stable", Some(&r), ok, || ("stable".into(), "not stable".into(), certificate.to_string()));
                    }
                    Err(e) => rec.check("certificate-replays", Some(&t), false, || {
                        ("replay".into(), e.to_string(), certificate.to_string())
                    }),
                }
            }
        }
        if count > 0 {
            orders.insert(n);
        }
        rec.note(format!("n={n}: {count} of {total} trees stable"));
    }
    let expected = expected_stable_orders(max_n);
    rec.check("stable-orders", None, orders == expected, || {
        (fmt_set(&expected), fmt_set(&orders), format!("orders 3..={max_n}"))
    });

    if pool.is_empty() {
        pool.push(Graph::path(3));
    }
    let mut r = stream(seed, 0);
    for _ in 0..trials {
        let t = pool.choose(&mut r).unwrap().clone();
        let w0 = solver.w_zero(&t)?;
        let outside: Vec<usize> = t.vertices().filter(|v| !w0.contains(v)).collect();
        let (kind, x) = match r.gen_range(0..3) {
            0 if !w0.is_empty() => (GadgetKind::O1, *w0.choose(&mut r).unwrap()),
            1 if !outside.is_empty() => (GadgetKind::O2, *outside.choose(&mut r).unwrap()),
            _ => (GadgetKind::O3(r.gen_range(3..=4)), r.gen_range(0..t.order())),
        };
        let h = attach_gadget(&t, x, kind)?.graph;
        let ok = is_stable(solver, &h)?;
        let detail = format!("from {} by {kind} at {x}", emit_graph6(&t)?);
        rec.check("operations-preserve", Some(&h), ok, || ("stable".into(), "not stable".into(), detail));
        if ok && h.order() <= 40 {
            pool.push(h);
        }
    }
    rec.note(format!("orders with a stable tree: {}", fmt_set(&orders)));
    let params = SuiteParams { max_n: Some(max_n), trials: Some(trials), seed: Some(seed) };
    Ok(rec.finish(Suite::Stability, params, start))
}

fn bs_bounds(rec: &mut Recorder, t: &Graph, w: u32) {
    let n = t.order() as u32;
    let leaves = t.leaves().len() as u32;
    rec.check("bs-lower", Some(t), 2 * w > n, || ("2*gamma >= n+1".into(), w.to_string(), format!("n={n}")));
    rec.check("bs-upper", Some(t), 2 * w <= n + leaves, || {
        ("2*gamma <= n+leaves".into(), w.to_string(), format!("n={n}, leaves={leaves}"))
    });
}

/// Edge-removal criticality against subdivision recognition on all trees
/// `3..=max_n`, with the value and count consequences.
pub fn verify_er_theorem(solver: &Solver, max_n: usize) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut rec = Recorder::new(&[
        "recognizer-agrees",
        "odd-order",
        "gamma-ceiling",
        "gamma-preimage",
        "counts",
        "bs-lower",
        "bs-upper",
    ]);
    let mut counts = BTreeMap::new();
    for n in 3..=max_n {
        let mut count = 0usize;
        for t in trees(n) {
            let w = solver.gamma_weight(&t)?;
            bs_bounds(&mut rec, &t, w);
            let er = is_er_critical(solver, &t)?;
            let f = recognize_family_f(&t)?;
            rec.check("recognizer-agrees", Some(&t), er == f.is_member(), || {
                let reason = match &f {
                    FMembership::Member(p) => format!("preimage {}", emit_graph6(&p.preimage).unwrap_or_default()),
                    FMembership::NotMember { reason } => reason.clone(),
                };
                (format!("member = {er}"), format!("member = {}", f.is_member()), reason)
            });
            if !er {
                continue;
            }
            count += 1;
            rec.eq("odd-order", &t, 1, n % 2, "order mod 2");
            rec.eq("gamma-ceiling", &t, path_formula(n), w, "ceil((n+1)/2)");
            if let FMembership::Member(p) = &f {
                rec.eq("gamma-preimage", &t, p.preimage.order() as u32, w, "order of the preimage");
            }
        }
        counts.insert(n, count);
        let expected = if n % 2 == 1 { enumerate_free_trees(n.div_ceil(2)).count() } else { 0 };
        rec.check("counts", None, count == expected, || {
            (expected.to_string(), count.to_string(), format!("ER-critical trees of order {n}"))
        });
    }
    let table: Vec<String> = counts.iter().map(|(n, c)| format!("{n}:{c}")).collect();
    rec.note(format!("ER-critical trees per order: {}", table.join(" ")));
    let params = SuiteParams { max_n: Some(max_n), ..Default::default() };
    Ok(rec.finish(Suite::Er, params, start))
}

/// `(n+1)/2 <= gamma <= (n+leaves)/2` on all trees of order `2..=max_n`.
pub fn verify_bs_bounds(solver: &Solver, max_n: usize) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut rec = Recorder::new(&["bs-lower", "bs-upper"]);
    let (mut low, mut high) = (0u64, 0u64);
    for n in 2..=max_n {
        for t in trees(n) {
            let w = solver.gamma_weight(&t)?;
            bs_bounds(&mut rec, &t, w);
            low += u64::from(2 * w as usize == n + 1);
            high += u64::from(2 * w as usize == n + t.leaves().len());
        }
    }
    rec.note(format!("lower bound tight on {low} trees, upper bound tight on {high}"));
    let params = SuiteParams { max_n: Some(max_n), ..Default::default() };
    Ok(rec.finish(Suite::Bounds, params, start))
}

/// Every nonempty clique of `g`, each sorted, in lexicographic order.
pub fn cliques(g: &Graph) -> Vec<Vec<usize>> {
    fn grow(g: &Graph, current: &mut Vec<usize>, candidates: &[usize], out: &mut Vec<Vec<usize>>) {
        for (i, &v) in candidates.iter().enumerate() {
            current.push(v);
            out.push(current.clone());
            let next: Vec<usize> = candidates[i + 1..].iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            grow(g, current, &next, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    let all: Vec<usize> = g.vertices().collect();
    grow(g, &mut Vec::new(), &all, &mut out);
    out
}

fn clique_check(rec: &mut Recorder, solver: &Solver, g: &Graph) -> Result<()> {
    let Some(base) = rec.capped("clique-bound", solver.gamma_weight(g))? else {
        return Ok(());
    };
    for s in cliques(g) {
        let (h, _) = g.remove_vertices(&s)?;
        if let Some(w) = rec.capped("clique-bound", solver.gamma_weight(&h))? {
            rec.check("clique-bound", Some(g), w + 2 >= base, || {
                (format!(">= {}", base as i64 - 2), w.to_string(), format!("removed clique {s:?}"))
            });
        }
    }
    Ok(())
}

fn edge_witness_checks(rec: &mut Recorder, solver: &Solver, t: &Graph) -> Result<()> {
    let Some(functions) = rec.capped("edgedel-witness", solver.enumerate_min_functions(t))? else {
        return Ok(());
    };
    let base = functions[0].weight();
    for e in t.edges() {
        let w = edgedel_witness_with(solver, t, e, base, &functions)?;
        rec.check("edgedel-range", Some(t), (0..=1).contains(&w.measured_delta), || {
            ("delta in {0,1}".into(), w.measured_delta.to_string(), format!("edge {e}"))
        });
        rec.check("edgedel-witness", Some(t), w.agrees, || {
            (
                format!("prediction {}", w.predicts_increase),
                format!("delta {}", w.measured_delta),
                format!("edge {e}"),
            )
        });
    }
    Ok(())
}

/// Vertex, clique, leaf and edge deletion claims.
///
/// `trials` random graphs of order at most 10 for the single-vertex bounds,
/// `min(trials, 200)` random graphs of order at most 9 plus all trees of
/// order at most 10 for the clique bound, all trees up to `max_n` for the
/// tree statements and up to `min(max_n, 10)` for those that enumerate
/// minimum functions.
pub fn verify_removal_bounds(solver: &Solver, max_n: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut rec = Recorder::new(&[
        "vertex-bounds",
        "clique-bound",
        "leaf-bounds",
        "leaf-i-bounds",
        "some-vertex-no-increase",
        "leaf-support-nonzero",
        "zero-vertex-no-increase",
        "all-decrease-only-k1-k2",
        "edgedel-range",
        "edgedel-witness",
    ]);
    let mut r = stream(seed, 0);
    for _ in 0..trials {
        let n = r.gen_range(1..=10);
        let p = *[0.3, 0.5].choose(&mut r).unwrap();
        let g = random_gnp(n, p, &mut r);
        let Some(profile) = rec.capped("vertex-bounds", vertex_removal_profile(solver, &g))? else { continue };
        let base = profile.base_gamma as i64;
        for e in &profile.entries {
            let crate::perturbation::Removed::Vertex(x) = e.removed else { unreachable!() };
            let hi = base + g.degree(x) as i64 - 1;
            let ok = e.delta >= -1 && (e.gamma as i64) <= hi;
            rec.check("vertex-bounds", Some(&g), ok, || {
                (format!("[{}, {hi}]", base - 1), e.gamma.to_string(), format!("removed vertex {x}"))
            });
        }
    }
    let mut r = stream(seed, 1);
    for _ in 0..trials.min(200) {
        let n = r.gen_range(1..=9);
        let p = *[0.3, 0.5].choose(&mut r).unwrap();
        clique_check(&mut rec, solver, &random_gnp(n, p, &mut r))?;
    }
    let small = max_n.min(10);
    for n in 1..=max_n {
        for t in trees(n) {
            if n <= 10 {
                clique_check(&mut rec, solver, &t)?;
            }
            let profile = vertex_removal_profile(solver, &t)?;
            let base = profile.base_gamma;
            let gamma_minus = |x: usize| profile.entries[x].gamma;

            rec.check("some-vertex-no-increase", Some(&t), t.vertices().any(|x| gamma_minus(x) <= base), || {
                (format!("some deletion <= {base}"), "every deletion increases".into(), String::new())
            });
            for x in t.vertices() {
                if solver.some_min_function_allows(&t, x, ZERO_ONLY)? {
                    rec.check("zero-vertex-no-increase", Some(&t), gamma_minus(x) <= base, || {
                        (format!("<= {base}"), gamma_minus(x).to_string(), format!("vertex {x} is 0 in a minimum function"))
                    });
                }
            }
            if n >= 2 {
                let i_t = rec.capped("leaf-i-bounds", solver.independent_domination(&t))?;
                for x in t.leaves() {
                    let gx = gamma_minus(x);
                    rec.check("leaf-bounds", Some(&t), gx + 1 >= base && gx <= base, || {
                        (format!("[{}, {base}]", base - 1), gx.to_string(), format!("removed leaf {x}"))
                    });
                    if let Some(i_t) = i_t {
                        let (h, _) = t.remove_vertex(x)?;
                        let ix = solver.independent_domination(&h)?;
                        rec.check("leaf-i-bounds", Some(&t), ix + 1 >= i_t && ix <= i_t, || {
                            (format!("i in [{}, {i_t}]", i_t - 1), ix.to_string(), format!("removed leaf {x}"))
                        });
                    }
                    let y = t.neighbors(x)[0];
                    if solver.some_min_function_allows(&t, y, NONZERO)? {
                        rec.check("leaf-support-nonzero", Some(&t), gx < base, || {
                            (format!("< {base}"), gx.to_string(), format!("leaf {x}, support {y} nonzero in a minimum function"))
                        });
                    }
                }
            }
            if n <= small {
                let all_drop = t.vertices().all(|x| gamma_minus(x) + 1 == base);
                rec.check("all-decrease-only-k1-k2", Some(&t), all_drop == (n <= 2), || {
                    (format!("holds = {}", n <= 2), format!("holds = {all_drop}"), String::new())
                });
                if n >= 2 {
                    edge_witness_checks(&mut rec, solver, &t)?;
                }
            }
        }
    }
    let params = SuiteParams { max_n: Some(max_n), trials: Some(trials), seed: Some(seed) };
    Ok(rec.finish(Suite::Removal, params, start))
}

/// Vertex-disjoint pendant paths `v1 v2 v3` with `v3` a leaf and
/// `deg(v2) = deg(v1) = 2`, chosen greedily by leaf id; entries are `[v1, v2, v3]`.
pub fn pendant_p3s(g: &Graph) -> Vec<[usize; 3]> {
    let mut used = vec![false; g.order()];
    let mut out = Vec::new();
    for v3 in g.leaves() {
        let v2 = g.neighbors(v3)[0];
        if g.degree(v2) != 2 {
            continue;
        }
        let v1 = *g.neighbors(v2).iter().find(|&&w| w != v3).unwrap();
        if g.degree(v1) != 2 || [v1, v2, v3].iter().any(|&v| used[v]) {
            continue;
        }
        for v in [v1, v2, v3] {
            used[v] = true;
        }
        out.push([v1, v2, v3]);
    }
    out
}

/// Structure of the minimum functions themselves on all trees `2..=max_n`.
pub fn verify_minfunction_structure(solver: &Solver, max_n: usize) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut rec = Recorder::new(&[
        "leaf-nonzero",
        "pendant-p3-all-zero",
        "pendant-p3-swap",
        "w-zero-consistent",
        "edgedel-range",
        "edgedel-witness",
    ]);
    for n in 2..=max_n {
        for t in trees(n) {
            let Some(functions) = rec.capped("leaf-nonzero", solver.enumerate_min_functions(&t))? else { continue };
            let leaves = t.leaves();
            for f in &functions {
                let ok = leaves.iter().all(|&x| f.color(x) != 0);
                rec.check("leaf-nonzero", Some(&t), ok, || ("leaves nonzero".into(), f.to_string(), String::new()));
            }
            let pens = pendant_p3s(&t);
            if !pens.is_empty() {
                let ok = functions.iter().any(|f| pens.iter().all(|p| f.color(p[1]) == 0));
                rec.check("pendant-p3-all-zero", Some(&t), ok, || {
                    ("a minimum function zeroing every middle vertex".into(), "none".into(), format!("paths {pens:?}"))
                });
                let set: HashSet<&RainbowAssignment> = functions.iter().collect();
                for f in &functions {
                    for p in &pens {
                        if f.color(p[1]) == 0 {
                            continue;
                        }
                        let found = [(1u8, 2u8), (2, 1)].iter().any(|&(a, c)| {
                            let mut l = f.clone();
                            l.0[p[0]] = a;
                            l.0[p[1]] = 0;
                            l.0[p[2]] = c;
                            set.contains(&l)
                        });
                        rec.check("pendant-p3-swap", Some(&t), found, || {
                            ("swapped minimum function".into(), "none".into(), format!("from {f} on path {p:?}"))
                        });
                    }
                }
            }
            let w0 = solver.w_zero(&t)?;
            let inter: Vec<usize> = t.vertices().filter(|&v| functions.iter().all(|f| f.color(v) == 0)).collect();
            rec.check("w-zero-consistent", Some(&t), w0 == inter, || {
                (format!("{inter:?}"), format!("{w0:?}"), "W_0 from enumeration vs constrained solves".into())
            });
            edge_witness_checks(&mut rec, solver, &t)?;
        }
    }
    let params = SuiteParams { max_n: Some(max_n), ..Default::default() };
    Ok(rec.finish(Suite::MinFunction, params, start))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Matches,
    UpperBoundOnly,
    Neither,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Matches => "matches",
            Verdict::UpperBoundOnly => "upper-bound-only",
            Verdict::Neither => "neither",
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub instances: u64,
    pub equal: u64,
    pub below: u64,
    pub above: u64,
}

impl Tally {
    fn add(&mut self, measured: u32, stated: u32) {
        self.instances += 1;
        match measured.cmp(&stated) {
            std::cmp::Ordering::Equal => self.equal += 1,
            std::cmp::Ordering::Less => self.below += 1,
            std::cmp::Ordering::Greater => self.above += 1,
        }
    }

    pub fn verdict(&self) -> Verdict {
        if self.above > 0 {
            Verdict::Neither
        } else if self.below > 0 {
            Verdict::UpperBoundOnly
        } else {
            Verdict::Matches
        }
    }
}

/// Unicyclic graphs of order `n` and girth `m`, grouped by `(n, m mod 4)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassRow {
    pub n: usize,
    pub girth_mod_4: usize,
    pub tally: Tally,
    pub measured_min: u32,
    pub measured_max: u32,
    pub verdict: Verdict,
    /// Instances within `n - m + gamma(C_m)`.
    pub within_cycle_bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleRow {
    pub m: usize,
    pub stated: u32,
    pub measured: u32,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnicyclicEvidence {
    pub classes: Vec<ClassRow>,
    pub cycles: Vec<CycleRow>,
}

impl fmt::Display for UnicyclicEvidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>3} {:>5} {:>9} {:>6} {:>6} {:>6} {:>9} {:>11}  verdict", "n", "m%4", "instances", "equal", "below", "above", "measured", "cycle-bound")?;
        for r in &self.classes {
            writeln!(
                f,
                "{:>3} {:>5} {:>9} {:>6} {:>6} {:>6} {:>9} {:>11}  {}",
                r.n,
                r.girth_mod_4,
                r.tally.instances,
                r.tally.equal,
                r.tally.below,
                r.tally.above,
                format!("{}..{}", r.measured_min, r.measured_max),
                format!("{}/{}", r.within_cycle_bound, r.tally.instances),
                r.verdict
            )?;
        }
        writeln!(f, "{:>5} {:>7} {:>9}  verdict", "cycle", "stated", "measured")?;
        for c in &self.cycles {
            writeln!(f, "{:>5} {:>7} {:>9}  {}", format!("C{}", c.m), c.stated, c.measured, c.verdict)?;
        }
        Ok(())
    }
}

/// The expression claimed for a unicyclic graph of order `n` and girth `m`,
/// evaluated literally in each residue class.
pub fn unicyclic_stated(n: usize, m: usize) -> u32 {
    let v = match m % 4 {
        0 | 3 => n - m / 2,
        _ => n + 1 - (m / 2 + 1),
    };
    v as u32
}

/// Evidence table for unicyclic graphs (every tree of order `3..=max_n` plus
/// one chord, counted with multiplicity). Never fails.
pub fn explore_unicyclic(solver: &Solver, max_n: usize) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut rec = Recorder::new(&["unicyclic"]);
    let mut cycle_gamma = BTreeMap::new();
    let mut classes: BTreeMap<(usize, usize), (Tally, u32, u32, u64)> = BTreeMap::new();
    for n in 3..=max_n {
        for t in trees(n) {
            for a in 0..n {
                for b in a + 1..n {
                    if t.has_edge(a, b) {
                        continue;
                    }
                    let mut g = t.clone();
                    g.add_edge(a, b)?;
                    let m = girth(&g).expect("one chord closes one cycle");
                    let Some(w) = rec.capped("unicyclic", solver.gamma_weight(&g))? else { continue };
                    rec.entry("unicyclic").runs += 1;
                    let cm = match cycle_gamma.get(&m) {
                        Some(&c) => c,
                        None => {
                            let c = solver.gamma_weight(&Graph::cycle(m))?;
                            cycle_gamma.insert(m, c);
                            c
                        }
                    };
                    let row = classes.entry((n, m % 4)).or_insert((Tally::default(), u32::MAX, 0, 0));
                    row.0.add(w, unicyclic_stated(n, m));
                    row.1 = row.1.min(w);
                    row.2 = row.2.max(w);
                    row.3 += u64::from(w as usize <= n - m + cm as usize);
                }
            }
        }
    }
    let classes = classes
        .into_iter()
        .map(|((n, r), (tally, lo, hi, within))| ClassRow {
            n,
            girth_mod_4: r,
            verdict: tally.verdict(),
            tally,
            measured_min: lo,
            measured_max: hi,
            within_cycle_bound: within,
        })
        .collect();
    let mut cycles = Vec::new();
    for m in 3..=max_n {
        let Some(measured) = rec.capped("unicyclic", solver.gamma_weight(&Graph::cycle(m)))? else { continue };
        let stated = unicyclic_stated(m, m);
        let mut t = Tally::default();
        t.add(measured, stated);
        cycles.push(CycleRow { m, stated, measured, verdict: t.verdict() });
    }
    let mismatched: Vec<String> =
        cycles.iter().filter(|c| c.verdict != Verdict::Matches).map(|c| format!("C{}", c.m)).collect();
    rec.note(format!("cycles where the stated expression differs from gamma: {}", mismatched.join(" ")));
    let mut report = rec.finish(Suite::Unicyclic, SuiteParams { max_n: Some(max_n), ..Default::default() }, start);
    report.evidence = Some(UnicyclicEvidence { classes, cycles });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(path_formula(10), 6);
        assert_eq!(cycle_formula(7), 4);
        assert_eq!(cycle_formula(5), 4);
        assert_eq!(cycle_formula(4), 2);
        assert_eq!(unicyclic_stated(4, 4), 2);
        assert_eq!(unicyclic_stated(5, 5), 3);
    }

    #[test]
    fn clique_listing() {
        assert_eq!(cliques(&Graph::path(3)), vec![vec![0], vec![0, 1], vec![1], vec![1, 2], vec![2]]);
        assert_eq!(cliques(&Graph::complete(3)).len(), 7);
    }

    #[test]
    fn pendant_paths() {
        assert_eq!(pendant_p3s(&Graph::spider(2).unwrap()), vec![[1, 2, 3], [4, 5, 6]]);
        assert_eq!(pendant_p3s(&Graph::path(5)).len(), 1);
        assert!(pendant_p3s(&Graph::path(3)).is_empty());
    }

    #[test]
    fn recorder_caps_failure_records() {
        let mut rec = Recorder::new(&["a"]);
        for _ in 0..MAX_RECORDED_FAILURES + 5 {
            rec.check("a", Some(&Graph::path(2)), false, || ("x".into(), "y".into(), String::new()));
        }
        let r = rec.finish(Suite::Bounds, SuiteParams::default(), Instant::now());
        assert_eq!(r.failures.len(), MAX_RECORDED_FAILURES);
        assert_eq!(r.failure_count(), (MAX_RECORDED_FAILURES + 5) as u64);
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.failures[0].graph6.as_deref(), Some("A_"));
    }

    #[test]
    fn small_suites_pass() {
        let s = Solver::default();
        assert!(verify_path_cycle(&s, 8).unwrap().passed());
        let r = verify_stability_theorem(&s, 9, 5, 3).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.check("stable-orders").unwrap().runs, 1);
    }

    #[test]
    fn reports_are_deterministic() {
        let s = Solver::default();
        let a = serde_json::to_string(&verify_gadget_props(&s, 5, 9).unwrap()).unwrap();
        let b = serde_json::to_string(&verify_gadget_props(&s, 5, 9).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn over_cap_instances_are_skipped() {
        let s = Solver::with_caps(15, 5);
        let r = verify_path_cycle(&s, 7).unwrap();
        assert_eq!(r.check("cycle").unwrap().skipped, 2);
        assert_eq!(r.skipped, 2);
        assert!(r.passed());
    }
}
