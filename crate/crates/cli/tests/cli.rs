use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn ridom(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ridom"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn gen(args: &[&str]) -> String {
    let o = ridom(args, "");
    assert!(o.status.success(), "{}", stderr(&o));
    stdout(&o).trim().to_string()
}

const P3_CENTER_0: &str = "Bo";

#[test]
fn solve_path_of_order_seven() {
    let p7 = gen(&["gen", "spider", "--k", "2"]);
    let o = ridom(&["solve", &p7], "");
    assert!(o.status.success());
    assert!(stdout(&o).contains("gamma=4"), "{}", stdout(&o));
}

#[test]
fn solve_json_reports_w_zero_and_independent_domination() {
    let s3 = gen(&["gen", "spider", "--k", "3"]);
    let o = ridom(&["solve", "--json", "--wzero", "--indep"], &format!("{s3}\n"));
    assert!(o.status.success());
    let v = &json_lines(&o)[0];
    assert_eq!(v["line"], 1);
    assert_eq!(v["order"], 10);
    assert_eq!(v["gamma"], 6);
    assert_eq!(v["w_zero"].as_array().unwrap().len(), 4);
    assert!(v["independent_domination"].is_u64());
    let witness = v["witness"].as_str().unwrap();
    assert_eq!(witness.len(), 10);
    assert_eq!(witness.chars().map(|c| c.to_digit(10).unwrap().min(1)).sum::<u32>(), 6);
}

#[test]
fn empty_and_blank_input_is_not_an_error() {
    let o = ridom(&["solve"], "");
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
    let o = ridom(&["classify", "--json"], "\n\n");
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
}

#[test]
fn parse_errors_name_the_line_and_processing_continues() {
    let o = ridom(&["solve", "--json"], "Bw\n\n~~bad\nCr\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
    let lines = json_lines(&o);
    assert_eq!(lines.iter().map(|v| v["line"].as_u64().unwrap()).collect::<Vec<_>>(), [1, 4]);
}

#[test]
fn input_file_is_read() {
    let path = std::env::temp_dir().join(format!("ridom-cli-{}.g6", std::process::id()));
    std::fs::write(&path, "Bw\nCr\n").unwrap();
    let o = ridom(&["solve", "--input", path.to_str().unwrap()], "");
    std::fs::remove_file(&path).unwrap();
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn cap_overrun_is_reported_per_line() {
    let o = ridom(&["solve", "--indep", "--brute-cap", "3"], "Bw\nCr\n");
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o).lines().count(), 1);
    assert!(stderr(&o).contains("line 2"));
}

#[test]
fn classify_double_star_gives_certificate() {
    let ds = gen(&["gen", "gadget", "--kind", "o1", "--base", P3_CENTER_0, "--at", "0"]);
    let o = ridom(&["classify", "--json", &ds], "");
    assert!(o.status.success());
    let v = &json_lines(&o)[0];
    assert_eq!(v["stable"], true);
    assert_eq!(v["er_critical"], false);
    assert_eq!(v["in_T"]["member"], true);
    let cert = &v["in_T"]["certificate"];
    assert_eq!(cert["base"]["tag"], "P3");
    assert_eq!(cert["steps"][0]["op"], "O1");
    assert_eq!(cert["steps"].as_array().unwrap().len(), 1);
    assert_eq!(v["in_F"]["member"], false);
}

#[test]
fn classify_subdivisions_are_er_critical() {
    for (g6, originals) in [("DhC", 3), ("FkE?G", 4)] {
        let o = ridom(&["classify", "--json", g6], "");
        let v = &json_lines(&o)[0];
        assert_eq!(v["tree"], true);
        assert_eq!(v["er_critical"], true, "{g6}");
        assert_eq!(v["in_F"]["member"], true);
        assert_eq!(v["in_F"]["preimage"]["originals"].as_array().unwrap().len(), originals);
    }
    let o = ridom(&["classify", "DhC"], "");
    assert!(stdout(&o).contains("in_T=no"), "{}", stdout(&o));
}

#[test]
fn classify_skips_tree_checks_on_cycles() {
    let o = ridom(&["classify", "Cr"], "");
    assert!(o.status.success());
    assert!(stdout(&o).contains("tree checks skipped"));
    let o = ridom(&["classify", "--json", "Cr"], "");
    let v = &json_lines(&o)[0];
    assert_eq!(v["tree"], false);
    assert!(v["in_T"].is_null() && v["in_F"].is_null() && v["er_critical"].is_null());
}

#[test]
fn profile_edges_of_p4_and_vertices_of_k13() {
    let trees = gen(&["gen", "trees", "--n", "4"]);
    let (mut p4, mut k13) = (None, None);
    for t in trees.lines() {
        let v = &json_lines(&ridom(&["profile", "--json", "--vertices", t], ""))[0];
        let gammas: Vec<u64> = v["profile"]["entries"].as_array().unwrap().iter().map(|e| e["gamma"].as_u64().unwrap()).collect();
        if gammas.iter().filter(|&&g| g == 2).count() == 3 {
            k13 = Some(gammas);
        } else {
            p4 = Some(t.to_string());
        }
    }
    let mut k13 = k13.expect("star among the order-4 trees");
    k13.sort();
    assert_eq!(k13, [2, 2, 2, 3]);

    let o = ridom(&["profile", "--json", "--edges", &p4.unwrap()], "");
    let v = &json_lines(&o)[0];
    assert_eq!(v["mode"], "edges");
    assert_eq!(v["profile"]["base_gamma"], 3);
    let mut gammas: Vec<u64> =
        v["profile"]["entries"].as_array().unwrap().iter().map(|e| e["gamma"].as_u64().unwrap()).collect();
    gammas.sort();
    assert_eq!(gammas, [3, 3, 4]);
}

#[test]
fn profile_requires_a_mode() {
    assert_eq!(ridom(&["profile", "Bw"], "").status.code(), Some(2));
    assert_eq!(ridom(&["profile", "--edges", "--vertices", "Bw"], "").status.code(), Some(2));
}

#[test]
fn gen_streams_trees_and_respects_enum_cap() {
    assert_eq!(gen(&["gen", "trees", "--n", "4"]).lines().count(), 2);
    assert_eq!(gen(&["gen", "trees", "--n", "10"]).lines().count(), 106);
    let o = ridom(&["gen", "trees", "--n", "9", "--enum-cap", "8"], "");
    assert_eq!(o.status.code(), Some(2));
    let o = ridom(&["gen", "--json", "trees", "--n", "5"], "");
    assert_eq!(json_lines(&o).len(), 3);
}

#[test]
fn gen_spider_and_gadgets() {
    let s3 = gen(&["gen", "spider", "--k", "3"]);
    let v = &json_lines(&ridom(&["solve", "--json", &s3], ""))[0];
    assert_eq!(v["order"], 10);
    let o = ridom(&["gen", "gadget", "--kind", "nope", "--base", "Bw", "--at", "0"], "");
    assert_eq!(o.status.code(), Some(2));
    let o = ridom(&["gen", "gadget", "--kind", "o1", "--base", "Bw", "--at", "7"], "");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_path_cycle_passes() {
    let o = ridom(&["verify", "path-cycle", "--max-n", "20", "--json"], "");
    assert!(o.status.success(), "{}", stderr(&o));
    let v = &json_lines(&o)[0];
    assert_eq!(v["suite"], "path-cycle");
    assert_eq!(v["status"], "pass");
    assert!(v.get("seconds").is_none());
    assert!(stderr(&o).contains("seconds"));
}

#[test]
fn verify_stability_small() {
    let o = ridom(&["verify", "stability", "--max-n", "12"], "");
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("stability [pass]"));
}

#[test]
fn verify_reports_are_deterministic() {
    let args = ["verify", "gadgets", "--trials", "10", "--seed", "5", "--json"];
    assert_eq!(stdout(&ridom(&args, "")), stdout(&ridom(&args, "")));
}

#[test]
fn unicyclic_evidence_does_not_fail_the_run() {
    let o = ridom(&["verify", "unicyclic", "--max-n", "8", "--json"], "");
    assert!(o.status.success());
    let v = &json_lines(&o)[0];
    assert_eq!(v["status"], "evidence");
    assert_eq!(v["assertive"], false);
    let c5 = v["evidence"]["cycles"].as_array().unwrap().iter().find(|c| c["m"] == 5).unwrap();
    assert_eq!(c5["measured"], 4);
}

#[test]
fn verify_rejects_unknown_suites_and_oversized_sweeps() {
    let o = ridom(&["verify", "nope"], "");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("path-cycle"));
    let o = ridom(&["verify", "bounds", "--max-n", "12", "--enum-cap", "10"], "");
    assert_eq!(o.status.code(), Some(2));
}

fn schema(name: &str) -> Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/schema/");
    serde_json::from_str(&std::fs::read_to_string(format!("{path}{name}.schema.json")).unwrap()).unwrap()
}

fn assert_top_level_keys(schema: &Value, v: &Value) {
    let props = schema["properties"].as_object().unwrap();
    let obj = v.as_object().unwrap();
    for req in schema["required"].as_array().unwrap() {
        assert!(obj.contains_key(req.as_str().unwrap()), "missing {req} in {v}");
    }
    for key in obj.keys() {
        assert!(props.contains_key(key), "undeclared {key}");
    }
}

#[test]
fn json_output_keys_match_published_schemas() {
    let cases: [(&str, &[&str], &str); 5] = [
        ("solve", &["solve", "--json", "--wzero", "--indep"], "Bw\nDhC\n"),
        ("classify", &["classify", "--json"], "Bw\nDhC\nCr\n"),
        ("profile", &["profile", "--json", "--edges"], "DhC\n"),
        ("gen", &["gen", "--json", "spider", "--k", "3"], ""),
        ("suite-report", &["verify", "unicyclic", "--max-n", "6", "--json"], ""),
    ];
    for (name, args, input) in cases {
        let s = schema(name);
        let lines = json_lines(&ridom(args, input));
        assert!(!lines.is_empty());
        for v in &lines {
            assert_top_level_keys(&s, v);
        }
    }
    assert_eq!(schema("certificate")["required"], serde_json::json!(["base", "steps"]));
}
