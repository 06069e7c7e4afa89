use std::collections::BTreeSet;

use proptest::prelude::*;
use ridom_core::gadget::GadgetKind;
use ridom_core::random::{prufer_decode, rng, shuffle_labels};
use ridom_core::recognize::{BaseTree, Operation, TreeCertificateStep};
use ridom_core::solver::{ALL_COLORS, NONZERO};
use ridom_core::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut it = bits.into_iter();
            for a in 0..n {
                for b in a + 1..n {
                    if it.next().unwrap() {
                        g.add_edge(a, b).unwrap();
                    }
                }
            }
            g
        })
    })
}

fn tree(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n.max(2)..=max_n).prop_flat_map(|n| prop::collection::vec(0..n, n - 2).prop_map(|seq| prufer_decode(&seq)))
}

fn constraint(n: usize) -> impl Strategy<Value = ColorConstraint> {
    prop::collection::vec(prop::sample::select(vec![ALL_COLORS, ALL_COLORS, ALL_COLORS, 1, 2, 4, 3, 5, 6]), n)
        .prop_map(|m| ColorConstraint::from_masks(m).unwrap())
}

fn graph_with_constraint(max_n: usize) -> impl Strategy<Value = (Graph, ColorConstraint)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), constraint(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn graph6_round_trip(g in graph(62)) {
        let s = emit_graph6(&g).unwrap();
        prop_assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn search_matches_bruteforce((g, c) in graph_with_constraint(9)) {
        let fast = Solver::default().gamma(&g, &c).unwrap();
        let slow = gamma_bruteforce(&g, &c, 9).unwrap();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn witnesses_are_valid((g, c) in graph_with_constraint(12)) {
        if let SolveOutcome::Optimal { weight, witness } = Solver::default().gamma(&g, &c).unwrap() {
            prop_assert!(is_2ridf(&g, &witness).unwrap());
            prop_assert!(c.satisfied_by(&witness));
            prop_assert_eq!(witness.weight(), weight);
        }
    }

    #[test]
    fn tree_dp_matches_bruteforce(t in tree(2, 11), seed in any::<u64>()) {
        let n = t.order();
        let mut masks = vec![ALL_COLORS; n];
        masks[(seed as usize) % n] = [1u8, 2, 4, 3, 5, 6][(seed >> 8) as usize % 6];
        let c = ColorConstraint::from_masks(masks).unwrap();
        prop_assert_eq!(gamma_tree_dp(&t, &c).unwrap(), gamma_bruteforce(&t, &c, 11).unwrap());
    }

    #[test]
    fn extra_constraints_never_lower_the_optimum((g, c) in graph_with_constraint(10), v in any::<prop::sample::Index>(), mask in 1u8..=7) {
        prop_assume!(g.order() > 0);
        let v = v.index(g.order());
        prop_assume!(c.mask(v) & mask != 0);
        let s = Solver::default();
        let before = s.weight(&g, &c).unwrap();
        let after = s.weight(&g, &c.clone().restrict(v, mask).unwrap()).unwrap();
        match (before, after) {
            (Some(b), Some(a)) => prop_assert!(a >= b),
            (None, a) => prop_assert_eq!(a, None),
            (Some(_), None) => {}
        }
    }

    #[test]
    fn disjoint_union_is_additive(g in graph(8), h in graph(8)) {
        let s = Solver::default();
        let sum = s.gamma_weight(&g).unwrap() + s.gamma_weight(&h).unwrap();
        prop_assert_eq!(s.gamma_weight(&g.disjoint_union(&h)).unwrap(), sum);
    }

    #[test]
    fn min_functions_are_exactly_the_optimal_2ridfs(g in graph(7)) {
        let s = Solver::default();
        let found = s.enumerate_min_functions(&g).unwrap();
        let gamma = s.gamma_weight(&g).unwrap();
        let n = g.order();
        let mut expected = Vec::new();
        for code in 0..3usize.pow(n as u32) {
            let mut x = code;
            let mut colors = vec![0u8; n];
            for c in colors.iter_mut().rev() {
                *c = (x % 3) as u8;
                x /= 3;
            }
            let f = RainbowAssignment(colors);
            if f.weight() == gamma && is_2ridf(&g, &f).unwrap() {
                expected.push(f);
            }
        }
        prop_assert_eq!(found, expected);
    }

    #[test]
    fn w_zero_matches_enumeration(g in graph(8)) {
        let s = Solver::default();
        let fs = s.enumerate_min_functions(&g).unwrap();
        let inter: Vec<usize> = g.vertices().filter(|&v| fs.iter().all(|f| f.color(v) == 0)).collect();
        prop_assert_eq!(s.w_zero(&g).unwrap(), inter);
        for v in g.vertices() {
            prop_assert_eq!(s.some_min_function_allows(&g, v, NONZERO).unwrap(), fs.iter().any(|f| f.color(v) != 0));
        }
    }

    #[test]
    fn relabeling_preserves_invariants(t in tree(1, 16), seed in any::<u64>()) {
        let u = shuffle_labels(&t, &mut rng(seed));
        prop_assert_eq!(canonical_form(&t).unwrap(), canonical_form(&u).unwrap());
        prop_assert!(trees_isomorphic(&t, &u).unwrap());
        prop_assert_eq!(gamma_weight(&t).unwrap(), gamma_weight(&u).unwrap());
        let s = Solver::default();
        prop_assert_eq!(is_stable(&s, &t).unwrap(), is_stable(&s, &u).unwrap());
    }

    #[test]
    fn subdivisions_are_edge_removal_critical(t in tree(2, 14)) {
        let s = Solver::default();
        let st = t.subdivision();
        prop_assert_eq!(st.order(), 2 * t.order() - 1);
        prop_assert!(st.is_tree());
        prop_assert_eq!(gamma_weight(&st).unwrap() as usize, t.order());
        prop_assert!(is_er_critical(&s, &st).unwrap());
        match recognize_family_f(&st).unwrap() {
            FMembership::Member(p) => prop_assert!(trees_isomorphic(&p.preimage, &t).unwrap()),
            FMembership::NotMember { reason } => prop_assert!(false, "rejected: {}", reason),
        }
    }

    #[test]
    fn tree_edge_deletion_changes_by_zero_or_one(t in tree(2, 16)) {
        let p = ridom_core::perturbation::edge_removal_profile(&Solver::default(), &t).unwrap();
        prop_assert!(p.entries.iter().all(|e| e.delta == 0 || e.delta == 1));
    }

    #[test]
    fn vertex_deletion_bounds(g in graph(9)) {
        let p = ridom_core::perturbation::vertex_removal_profile(&Solver::default(), &g).unwrap();
        for (x, e) in p.entries.iter().enumerate() {
            prop_assert!((-1..g.degree(x) as i64).contains(&e.delta));
        }
    }

    #[test]
    fn recognition_is_exact_on_random_trees(t in tree(3, 22)) {
        let s = Solver::default();
        let m = recognize_family_t(&s, &t).unwrap();
        prop_assert_eq!(m.is_member(), is_stable(&s, &t).unwrap());
        prop_assert_eq!(recognize_family_f(&t).unwrap().is_member(), is_er_critical(&s, &t).unwrap());
    }
}

/// Random valid certificate built step by step under the side conditions.
fn random_certificate(seed: u64, steps: usize) -> FamilyTCertificate {
    use rand::Rng;
    let s = Solver::default();
    let mut r = rng(seed);
    let base = if r.gen_bool(0.5) { BaseTree::P3 } else { BaseTree::Spider { k: r.gen_range(3..=4) } };
    let mut t = base.build().unwrap();
    let mut cert = FamilyTCertificate { base, steps: Vec::new() };
    for _ in 0..steps {
        let w0 = s.w_zero(&t).unwrap();
        let outside: Vec<usize> = t.vertices().filter(|v| !w0.contains(v)).collect();
        let (op, at) = match r.gen_range(0..3) {
            0 if !w0.is_empty() => (Operation::O1, w0[r.gen_range(0..w0.len())]),
            1 if !outside.is_empty() => (Operation::O2, outside[r.gen_range(0..outside.len())]),
            _ => (Operation::O3 { k: r.gen_range(3..=4) }, r.gen_range(0..t.order())),
        };
        t = attach_gadget(&t, at, op.gadget()).unwrap().graph;
        cert.steps.push(TreeCertificateStep { op, attach: at });
    }
    cert
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constructed_stable_trees_are_recognized(seed in any::<u64>(), steps in 0usize..5, shuffle in any::<u64>()) {
        let s = Solver::default();
        let cert = random_certificate(seed, steps);
        let t = replay_certificate(&s, &cert).unwrap();
        prop_assert!(is_stable(&s, &t).unwrap());
        let u = shuffle_labels(&t, &mut rng(shuffle));
        match recognize_family_t(&s, &u).unwrap() {
            TMembership::Member { certificate, image } => {
                let back = replay_certificate(&s, &certificate).unwrap();
                prop_assert_eq!(u.permuted(&image), back);
            }
            TMembership::NotMember { reason } => prop_assert!(false, "rejected {}: {}", cert, reason),
        }
    }
}

#[test]
fn free_tree_counts_match_labeled_tree_dedup() {
    for n in 2..=8usize {
        let mut forms = BTreeSet::new();
        let mut seq = vec![0usize; n - 2];
        loop {
            forms.insert(canonical_form(&prufer_decode(&seq)).unwrap());
            let Some(i) = seq.iter().rposition(|&x| x + 1 < n) else { break };
            seq[i] += 1;
            seq[i + 1..].fill(0);
        }
        let enumerated: BTreeSet<String> = enumerate_free_trees(n).map(|t| canonical_form(&t).unwrap()).collect();
        assert_eq!(enumerate_free_trees(n).count(), enumerated.len(), "duplicates at n={n}");
        assert_eq!(enumerated, forms, "n={n}");
    }
}

#[test]
fn spider_matches_relabeled_construction() {
    let s3 = Graph::spider(3).unwrap();
    let built = attach_gadget(&Graph::empty(1), 0, GadgetKind::SpiderAttach(3)).unwrap();
    let (spider_only, _) = built.graph.remove_vertex(0).unwrap();
    assert!(trees_isomorphic(&s3, &shuffle_labels(&s3, &mut rng(7))).unwrap());
    assert!(trees_isomorphic(&s3, &spider_only).unwrap());
    assert!(!trees_isomorphic(&s3, &Graph::path(10)).unwrap());
}
