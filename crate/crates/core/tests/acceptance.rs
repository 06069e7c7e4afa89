//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ridom_core::harness::{
    explore_unicyclic, verify_bs_bounds, verify_er_theorem, verify_gadget_props, verify_minfunction_structure,
    verify_oracle, verify_path_cycle, verify_removal_bounds, verify_stability_theorem, SuiteReport,
};
use ridom_core::Solver;

const SEED: u64 = 1;

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_report(r: &SuiteReport, extra: &[(&str, bool)]) -> Outcome {
    let mut problems: Vec<String> = r.failures.iter().take(3).map(|f| format!("{} on {:?}", f.check, f.graph6)).collect();
    if r.skipped > 0 {
        problems.push(format!("{} instances skipped", r.skipped));
    }
    for (what, ok) in extra {
        if !ok {
            problems.push(what.to_string());
        }
    }
    let ok = r.passed() && problems.is_empty();
    let detail = if ok { format!("{} checks", r.runs()) } else { problems.join("; ") };
    Outcome { ok, detail }
}

fn runs(r: &SuiteReport, check: &str) -> u64 {
    r.check(check).map_or(0, |c| c.runs)
}

fn criterion(id: usize, title: &str, limit: Duration, body: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = body();
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    let ok = out.ok && in_time;
    let timing = if in_time { String::new() } else { format!("; over the {}s limit", limit.as_secs()) };
    println!(
        "criterion {id}: {} {title} ({:.2}s / {}s) {}{timing}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs(),
        out.detail
    );
    ok
}

fn main() -> ExitCode {
    let s = Solver::default();
    let secs = Duration::from_secs;
    let results = [
        criterion(1, "path and cycle closed forms, n and m up to 20", secs(5), || {
            let r = verify_path_cycle(&s, 20).unwrap();
            from_report(&r, &[("20 paths", runs(&r, "path") == 20), ("18 cycles", runs(&r, "cycle") == 18)])
        }),
        criterion(2, "tree DP equals the 3^n scan", secs(120), || {
            let r = verify_oracle(&s, 10, 500, SEED).unwrap();
            from_report(
                &r,
                &[
                    ("201 trees x 3 constraints", runs(&r, "exhaustive-trees") == 603),
                    ("500 random trees x 3 constraints", runs(&r, "random-trees") == 1500),
                ],
            )
        }),
        criterion(3, "stable trees are exactly the recognized family, n in 3..=14", secs(600), || {
            let r = verify_stability_theorem(&s, 14, 100, SEED).unwrap();
            let orders = r.notes.iter().any(|n| n == "orders with a stable tree: {3,6,9,10,12,13}");
            from_report(
                &r,
                &[
                    ("5445 trees classified", runs(&r, "recognizer-agrees") == 5445),
                    ("stable orders {3,6,9,10,12,13}", orders && runs(&r, "stable-orders") == 1),
                    ("every certificate replayed", runs(&r, "certificate-replays") == 9),
                ],
            )
        }),
        criterion(4, "edge-removal-critical trees are exactly subdivisions, n in 3..=13", secs(300), || {
            let r = verify_er_theorem(&s, 13).unwrap();
            let counts = r.notes.iter().any(|n| n.contains("9:3") && n.contains("11:6") && n.contains("13:11"));
            from_report(
                &r,
                &[
                    ("counts 3/6/11 at orders 9/11/13", counts),
                    ("24 critical trees", runs(&r, "gamma-preimage") == 24 && runs(&r, "gamma-ceiling") == 24),
                ],
            )
        }),
        criterion(5, "gadget increments and the seven non-stable configurations", secs(120), || {
            let r = verify_gadget_props(&s, 200, SEED).unwrap();
            let all = r.checks.iter().all(|c| c.runs == 200);
            from_report(&r, &[("200 trials per check", all && r.checks.len() == 11)])
        }),
        criterion(6, "removal bounds battery", secs(600), || {
            let r = verify_removal_bounds(&s, 12, 500, SEED).unwrap();
            let ran = r.checks.iter().all(|c| c.runs > 0);
            let k1k2 = runs(&r, "all-decrease-only-k1-k2") == 201;
            from_report(&r, &[("every check ran", ran), ("K1/K2 claim on the 201 trees up to order 10", k1k2)])
        }),
        criterion(7, "leaf rule and pendant-path structure of minimum functions", secs(300), || {
            let r = verify_minfunction_structure(&s, 10).unwrap();
            let ran = ["leaf-nonzero", "pendant-p3-all-zero", "pendant-p3-swap"].iter().all(|c| runs(&r, c) > 0);
            from_report(&r, &[("leaf and pendant-path checks ran", ran)])
        }),
        criterion(8, "tree bounds (n+1)/2 <= gamma <= (n+leaves)/2, n up to 14", secs(180), || {
            let r = verify_bs_bounds(&s, 14).unwrap();
            from_report(&r, &[("5446 trees", runs(&r, "bs-lower") == 5446 && runs(&r, "bs-upper") == 5446)])
        }),
        criterion(9, "unicyclic evidence exposes the C5 discrepancy", secs(120), || {
            let r = explore_unicyclic(&s, 10).unwrap();
            let ev = r.evidence.as_ref().expect("evidence table");
            let c5 = ev.cycles.iter().find(|c| c.m == 5);
            let shown = c5.is_some_and(|c| c.measured == 4 && c.stated == 3);
            let non_assertive = !r.assertive && r.passed();
            let detail = match c5 {
                Some(c) => format!("{} class rows; C5 measured {} vs stated {} ({})", ev.classes.len(), c.measured, c.stated, c.verdict),
                None => "no C5 row".to_string(),
            };
            Outcome { ok: shown && non_assertive && !ev.classes.is_empty(), detail }
        }),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
