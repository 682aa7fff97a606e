use std::collections::{BTreeSet, HashSet};

use kreeb_core::graph::build_kr_graph;
use kreeb_core::orbit::{
    compute_group, edge_orbits, group_of, orbit_count_of, orbit_count_recursive,
    preserves_edge_classes, preserves_incidence, rotation_generators, verify_main_theorem,
};
use kreeb_core::tree::parse_tree;
use kreeb_core::{DecompositionTree, EdgeClass, EdgeId, KrGraph, Node, TreeGenParams};

/// Internal-edge orbits from the fully enumerated permutation group. Only
/// usable when the group is small; returns `None` past `limit` elements.
fn oracle_orbits(graph: &KrGraph, limit: usize) -> Option<BTreeSet<BTreeSet<usize>>> {
    let n = graph.edges().len();
    let gens: Vec<Vec<usize>> = rotation_generators(graph)
        .iter()
        .map(|g| (0..n).map(|e| g.apply(EdgeId(e)).0).collect())
        .collect();
    let identity: Vec<usize> = (0..n).collect();
    let mut group: HashSet<Vec<usize>> = HashSet::from([identity.clone()]);
    let mut frontier = vec![identity];
    while let Some(p) = frontier.pop() {
        for g in &gens {
            let q: Vec<usize> = p.iter().map(|&x| g[x]).collect();
            if group.insert(q.clone()) {
                if group.len() > limit {
                    return None;
                }
                frontier.push(q);
            }
        }
    }
    let internal: Vec<usize> = graph
        .edges()
        .iter()
        .filter(|e| e.class == EdgeClass::Internal)
        .map(|e| e.id.0)
        .collect();
    Some(
        internal
            .iter()
            .map(|&e| group.iter().map(|p| p[e]).collect::<BTreeSet<_>>())
            .collect(),
    )
}

fn tree(text: &str) -> DecompositionTree {
    parse_tree(text).unwrap()
}

#[test]
fn hand_cases_match_group_enumeration() {
    let cases = [
        ("(disk (E))", 0),
        ("(cyl (B))", 0),
        ("(disk (A 1 reps [] fixed []))", 1),
        ("(disk (A 3 reps [(E)] fixed []))", 1),
        ("(disk (A 2 reps [(A 1 reps [] fixed [])] fixed []))", 2),
        ("(disk (A 1 reps [] fixed [(E) (A 1 reps [] fixed [])]))", 2),
        ("(disk (A 2 reps [(A 1 reps [] fixed [])] fixed [(A 1 reps [] fixed [])]))", 3),
        ("(cyl (A 2 reps [(A 3 reps [(A 1 reps [] fixed [])] fixed [])] fixed [(A 1 reps [] fixed [(B) (E)])]))", 4),
    ];
    for (text, expected) in cases {
        let t = tree(text);
        let g = build_kr_graph(&t);
        let orbits = edge_orbits(&g, &rotation_generators(&g));
        let oracle = oracle_orbits(&g, 10_000).unwrap();
        let ours: BTreeSet<BTreeSet<usize>> =
            orbits.iter().map(|o| o.iter().map(|e| e.0).collect()).collect();
        assert_eq!(ours, oracle, "{text}");
        assert_eq!(orbits.len(), expected, "{text}");
        let r = verify_main_theorem(&t);
        assert!(r.pass, "{r}");
        assert_eq!(r.beta1, expected);
    }
}

#[test]
fn fuzzed_trees_agree_with_enumeration_oracle() {
    let params = TreeGenParams::new(5, 3, 3).with_max_edges(24);
    let mut checked = 0;
    for seed in 0..400 {
        let t = params.generate(seed);
        let g = build_kr_graph(&t);
        let Some(oracle) = oracle_orbits(&g, 5_000) else { continue };
        let orbits = edge_orbits(&g, &rotation_generators(&g));
        let ours: BTreeSet<BTreeSet<usize>> =
            orbits.iter().map(|o| o.iter().map(|e| e.0).collect()).collect();
        assert_eq!(ours, oracle, "{t}");
        checked += 1;
    }
    assert!(checked > 300, "only {checked} trees small enough for enumeration");
}

#[test]
fn main_theorem_on_fuzzed_trees() {
    let params = TreeGenParams::new(5, 3, 4);
    for seed in 0..1000 {
        let t = params.generate(seed);
        let r = verify_main_theorem(&t);
        assert!(r.pass, "seed {seed}:\n{r}");
        let g = compute_group(&t);
        let sample = g.random_element(2, seed);
        assert_eq!(g.abelianize(&sample).unwrap().len(), r.beta1);
    }
}

#[test]
fn graph_invariants_on_fuzzed_trees() {
    let params = TreeGenParams::new(5, 3, 4);
    for seed in 0..500 {
        let t = params.generate(seed);
        let g = build_kr_graph(&t);
        assert_eq!(g.edges().len(), g.vertices().len() - 1);
        assert_eq!(g.edges().len(), t.edge_count());
        // Connected: every non-root vertex has a parent edge into a smaller id.
        for e in g.edges() {
            assert!(e.endpoints.0 .0 < e.endpoints.1 .0);
        }
        let internal = g.internal_edges().len();
        assert_eq!(internal + g.external_edges().len(), g.edges().len());
        let gens = rotation_generators(&g);
        assert!(preserves_edge_classes(&g, &gens));
        assert!(preserves_incidence(&g, &gens));
        for gen in &gens {
            assert!(gen.order() >= 2);
        }
        // Every atom vertex: one parent edge plus its child edges.
        for v in g.vertices() {
            if v.kind == kreeb_core::VertexKind::Atom {
                let children = g.edges().iter().filter(|e| e.endpoints.0 == v.id).count();
                assert_eq!(v.degree, 1 + children);
            }
        }
    }
}

#[test]
fn atom_degree_law() {
    let t = tree("(disk (A 3 reps [(E) (A 1 reps [] fixed [])] fixed [(E)]))");
    let g = build_kr_graph(&t);
    assert_eq!(g.vertices()[1].degree, 1 + 3 * 2 + 1);
}

#[test]
fn orbits_stay_within_one_tree_node() {
    let params = TreeGenParams::new(5, 3, 4);
    for seed in 0..300 {
        let t = params.generate(seed);
        let g = build_kr_graph(&t);
        for orbit in edge_orbits(&g, &rotation_generators(&g)) {
            let sources: HashSet<_> = orbit
                .iter()
                .map(|e| g.vertex(g.edge(*e).endpoints.1).source)
                .collect();
            assert_eq!(sources.len(), 1, "{t}");
        }
    }
}

#[test]
fn per_atom_recursion_laws() {
    let params = TreeGenParams::new(5, 3, 4);
    for seed in 0..500 {
        let t = params.generate(seed);
        let mut stack = vec![t.root()];
        while let Some(node) = stack.pop() {
            let Node::Atom(a) = node else { continue };
            let children: usize = a.reps.iter().chain(&a.fixed).map(|c| group_of(c).beta1()).sum();
            assert_eq!(group_of(node).beta1(), children + 1);
            let child_orbits: usize = a.reps.iter().chain(&a.fixed).map(orbit_count_of).sum();
            assert_eq!(orbit_count_of(node), child_orbits + 1);
            stack.extend(a.reps.iter().chain(&a.fixed));
        }
        assert_eq!(orbit_count_recursive(&t), compute_group(&t).beta1());
    }
}
