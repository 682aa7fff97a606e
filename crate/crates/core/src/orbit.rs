//! The stabilizer group `π₀𝒮′(f,V)` of a tree and the orbits of its action
//! on internal edges, computed two independent ways.
//!
//! * [`compute_group`] follows the induction on the nearest critical
//!   component: an invariant atom contributes `∏ G(Xᵢ) × ℤ`, a rotating
//!   atom of order `m` contributes `(∏ G(Yᵢ)) ≀ₘ ℤ`, times `G(X₁)` when it
//!   has a fixed child.
//! * [`edge_orbits`] closes the internal edges of the expanded graph under
//!   the rotation generators, one per rotating atom instance.
//! * [`orbit_count_recursive`] sums the per-atom counts without looking at
//!   the graph.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::time::Duration;

use crate::graph::{build_kr_graph, EdgeClass, EdgeId, KrGraph};
use crate::group::GroupExpr;
use crate::tree::{DecompositionTree, Node};
use crate::word::render;

/// A bijection on the edge ids of one graph; `images[e]` is the image of `e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgePermutation {
    images: Vec<EdgeId>,
}

impl EdgePermutation {
    pub fn identity(len: usize) -> Self {
        EdgePermutation { images: (0..len).map(EdgeId).collect() }
    }

    pub fn apply(&self, e: EdgeId) -> EdgeId {
        self.images[e.0]
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Edges that are moved.
    pub fn support(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, e)| e.0 != i)
            .map(|(i, _)| EdgeId(i))
    }

    /// Order of the permutation.
    pub fn order(&self) -> usize {
        let mut seen = alloc::vec![false; self.len()];
        let mut order = 1;
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut e = start;
            while !seen[e] {
                seen[e] = true;
                e = self.images[e].0;
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }
}

fn lcm(a: usize, b: usize) -> usize {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// `π₀𝒮′(f,V)` as the raw word produced by the recursion, products
/// right-nested and never normalized.
pub fn compute_group(tree: &DecompositionTree) -> GroupExpr {
    group_of(tree.root())
}

/// [`compute_group`] for the subsurface bounded by the parent edge of `node`.
pub fn group_of(node: &Node) -> GroupExpr {
    match node {
        Node::Extremum | Node::Boundary => GroupExpr::Trivial,
        Node::Atom(a) if a.m == 1 => right_product(a.fixed.iter().map(group_of), GroupExpr::Z),
        Node::Atom(a) => {
            let (last, init) = a.reps.split_last().expect("rotating atom without reps");
            let base = right_product(init.iter().map(group_of), group_of(last));
            let wreath = GroupExpr::wreath(base, a.m);
            match a.fixed.first() {
                Some(x) => GroupExpr::product(wreath, group_of(x)),
                None => wreath,
            }
        }
    }
}

/// `f₁ × (f₂ × (… × (fₖ × last)))`; just `last` when `factors` is empty.
fn right_product(factors: impl Iterator<Item = GroupExpr>, last: GroupExpr) -> GroupExpr {
    let factors: Vec<_> = factors.collect();
    factors.into_iter().rev().fold(last, |acc, f| GroupExpr::product(f, acc))
}

/// One generator per rotating atom instance: copy `j` of its reps goes to
/// copy `j + 1 mod m`, every other edge stays put.
pub fn rotation_generators(graph: &KrGraph) -> Vec<EdgePermutation> {
    graph
        .rotation_families()
        .iter()
        .map(|fam| {
            let mut p = EdgePermutation::identity(graph.edges().len());
            for j in 0..fam.m {
                let to = (j + 1) % fam.m;
                for off in 0..fam.copy_len {
                    let from = fam.start.0 + j * fam.copy_len + off;
                    p.images[from] = EdgeId(fam.start.0 + to * fam.copy_len + off);
                }
            }
            p
        })
        .collect()
}

/// Orbits of the group generated by `generators` on the internal edges,
/// by breadth-first closure. Each orbit is sorted and orbits are ordered by
/// their smallest edge.
pub fn edge_orbits(graph: &KrGraph, generators: &[EdgePermutation]) -> Vec<Vec<EdgeId>> {
    let n = graph.edges().len();
    let mut seen = alloc::vec![false; n];
    let mut orbits = Vec::new();
    let mut queue = alloc::collections::VecDeque::new();
    for e in graph.internal_edges() {
        if seen[e.0] {
            continue;
        }
        seen[e.0] = true;
        queue.push_back(e);
        let mut orbit = Vec::new();
        while let Some(x) = queue.pop_front() {
            orbit.push(x);
            for g in generators {
                let y = g.apply(x);
                if !seen[y.0] {
                    seen[y.0] = true;
                    queue.push_back(y);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

/// Internal-edge orbit count from the tree alone: leaves count 0, every
/// atom counts its children plus one for its own edge towards `V`.
pub fn orbit_count_recursive(tree: &DecompositionTree) -> usize {
    orbit_count_of(tree.root())
}

pub fn orbit_count_of(node: &Node) -> usize {
    match node {
        Node::Extremum | Node::Boundary => 0,
        Node::Atom(a) => {
            let reps: usize = a.reps.iter().map(orbit_count_of).sum();
            let fixed: usize = a.fixed.iter().map(orbit_count_of).sum();
            reps + 1 + fixed
        }
    }
}

/// Outcome of checking `orb(M,V) = β₁(π₀𝒮′(f,V))` on one tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub beta1: usize,
    pub orbits_bruteforce: usize,
    pub orbits_recursive: usize,
    /// Rendered raw group word.
    pub group_word: String,
    pub pass: bool,
    /// Zero unless filled in by a caller that has a clock.
    pub elapsed: Duration,
    /// The tree in its text format, for replay.
    pub tree: String,
}

impl VerificationReport {
    /// Field order of [`VerificationReport::to_record`].
    pub const RECORD_FIELDS: [&'static str; 7] = [
        "beta1",
        "orbits_bruteforce",
        "orbits_recursive",
        "pass",
        "elapsed_us",
        "group_word",
        "tree",
    ];

    pub fn with_elapsed(self, elapsed: Duration) -> Self {
        VerificationReport { elapsed, ..self }
    }

    /// One tab-separated line in [`RECORD_FIELDS`] order, no trailing newline.
    ///
    /// [`RECORD_FIELDS`]: VerificationReport::RECORD_FIELDS
    pub fn to_record(&self) -> String {
        alloc::format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.beta1,
            self.orbits_bruteforce,
            self.orbits_recursive,
            if self.pass { "pass" } else { "fail" },
            self.elapsed.as_micros(),
            self.group_word,
            self.tree
        )
    }
}

/// `key: value` lines in [`VerificationReport::RECORD_FIELDS`] order.
impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "beta1: {}", self.beta1)?;
        writeln!(f, "orbits_bruteforce: {}", self.orbits_bruteforce)?;
        writeln!(f, "orbits_recursive: {}", self.orbits_recursive)?;
        writeln!(f, "pass: {}", self.pass)?;
        writeln!(f, "elapsed_us: {}", self.elapsed.as_micros())?;
        writeln!(f, "group_word: {}", self.group_word)?;
        writeln!(f, "tree: {}", self.tree)
    }
}

/// Computes `β₁` of the recursion word and the internal-edge orbit count by
/// both routes.
pub fn verify_main_theorem(tree: &DecompositionTree) -> VerificationReport {
    let group = compute_group(tree);
    let graph = build_kr_graph(tree);
    let gens = rotation_generators(&graph);
    let beta1 = group.beta1();
    let orbits_bruteforce = edge_orbits(&graph, &gens).len();
    let orbits_recursive = orbit_count_recursive(tree);
    VerificationReport {
        beta1,
        orbits_bruteforce,
        orbits_recursive,
        group_word: render(&group),
        pass: beta1 == orbits_bruteforce && orbits_bruteforce == orbits_recursive,
        elapsed: Duration::ZERO,
        tree: tree.to_string(),
    }
}

/// True iff every generator maps internal edges to internal edges.
pub fn preserves_edge_classes(graph: &KrGraph, generators: &[EdgePermutation]) -> bool {
    generators.iter().all(|g| {
        graph
            .edges()
            .iter()
            .all(|e| graph.edge(g.apply(e.id)).class == e.class)
    })
}

/// True iff every generator maps the edge `(u, v)` onto an edge whose
/// endpoints have the same kinds as `u` and `v`, and sends edges sharing a
/// vertex to edges sharing the corresponding vertex.
pub fn preserves_incidence(graph: &KrGraph, generators: &[EdgePermutation]) -> bool {
    let n = graph.vertices().len();
    generators.iter().all(|g| {
        // Edge k ends at vertex k + 1, so the child map is read off directly.
        let mut vmap: Vec<usize> = (0..n).collect();
        for e in graph.edges() {
            vmap[e.endpoints.1 .0] = graph.edge(g.apply(e.id)).endpoints.1 .0;
        }
        graph.edges().iter().all(|e| {
            let img = graph.edge(g.apply(e.id));
            let (u, v) = e.endpoints;
            let (iu, iv) = img.endpoints;
            vmap[u.0] == iu.0
                && vmap[v.0] == iv.0
                && graph.vertex(u).kind == graph.vertex(iu).kind
                && graph.vertex(v).kind == graph.vertex(iv).kind
                && (img.class == EdgeClass::Internal) == (e.class == EdgeClass::Internal)
        })
    })
}
