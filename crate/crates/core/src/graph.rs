//! Explicit Kronrod–Reeb graphs expanded from decomposition trees.
//!
//! Numbering is depth-first: the root vertex `V` is vertex 0 and edge `k`
//! always joins its parent to vertex `k + 1`. Inside an atom the `m` copies
//! of its representatives come first, copy 0 to copy `m − 1`, each copy
//! listing the reps in order; the fixed children follow.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::tree::{DecompositionTree, Node};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    /// The reference boundary `V`.
    Root,
    Atom,
    Extremum,
    Boundary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    Internal,
    External,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: VertexId,
    pub kind: VertexKind,
    /// Preorder index of the tree node this vertex expands; `None` for the root.
    pub source: Option<usize>,
    /// Copy index inside the innermost enclosing rep family, 0 outside any.
    pub copy: usize,
    pub degree: usize,
    pub external: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    /// `(parent, child)`.
    pub endpoints: (VertexId, VertexId),
    pub class: EdgeClass,
}

/// The `m` copies of the reps of one atom instance with `m ≥ 2`.
///
/// Copy `j` occupies edges `start + j·copy_len .. start + (j+1)·copy_len`,
/// and equal offsets inside two copies are corresponding edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RotationFamily {
    pub atom: VertexId,
    pub m: usize,
    pub start: EdgeId,
    pub copy_len: usize,
}

impl RotationFamily {
    /// Copy index and offset of `e`, if `e` lies in this family.
    pub fn locate(&self, e: EdgeId) -> Option<(usize, usize)> {
        let rel = e.0.checked_sub(self.start.0)?;
        (rel < self.m * self.copy_len).then(|| (rel / self.copy_len, rel % self.copy_len))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KrGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    families: Vec<RotationFamily>,
}

impl KrGraph {
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, id: VertexId) -> &Vertex {
        &self.vertices[id.0]
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id.0]
    }

    /// One entry per atom instance with `m ≥ 2`; nested families precede
    /// the family that contains them.
    pub fn rotation_families(&self) -> &[RotationFamily] {
        &self.families
    }

    /// Edges whose endpoints are both internal, ascending.
    pub fn internal_edges(&self) -> Vec<EdgeId> {
        self.edges
            .iter()
            .filter(|e| e.class == EdgeClass::Internal)
            .map(|e| e.id)
            .collect()
    }

    pub fn external_edges(&self) -> Vec<EdgeId> {
        self.edges
            .iter()
            .filter(|e| e.class == EdgeClass::External)
            .map(|e| e.id)
            .collect()
    }

    /// DOT rendering: internal edges solid, external dashed, vertices
    /// labelled by kind, everything in ascending id order.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        self.write_dot(&mut out).expect("writing to a String cannot fail");
        out
    }

    fn write_dot<W: fmt::Write>(&self, out: &mut W) -> fmt::Result {
        out.write_str("graph kronrod_reeb {\n")?;
        for v in &self.vertices {
            let label = match v.kind {
                VertexKind::Root => "V",
                VertexKind::Atom => "atom",
                VertexKind::Extremum => "extremum",
                VertexKind::Boundary => "boundary",
            };
            writeln!(out, "  v{} [label=\"{}\"];", v.id.0, label)?;
        }
        for e in &self.edges {
            let style = match e.class {
                EdgeClass::Internal => "solid",
                EdgeClass::External => "dashed",
            };
            let (a, b) = e.endpoints;
            writeln!(out, "  v{} -- v{} [id=\"e{}\", style={}];", a.0, b.0, e.id.0, style)?;
        }
        out.write_str("}\n")
    }
}

/// Expands a tree into its Kronrod–Reeb graph.
pub fn build_kr_graph(tree: &DecompositionTree) -> KrGraph {
    let mut b = Builder { vertices: Vec::new(), edges: Vec::new(), families: Vec::new() };
    b.vertices.push(Vertex {
        id: VertexId(0),
        kind: VertexKind::Root,
        source: None,
        copy: 0,
        degree: 0,
        external: false,
    });
    let mut src = 0;
    b.expand(tree.root(), VertexId(0), &mut src, 0);

    let mut vertices = b.vertices;
    for e in &b.edges {
        vertices[e.0 .0].degree += 1;
        vertices[e.1 .0].degree += 1;
    }
    for v in &mut vertices {
        v.external = v.degree == 1 && matches!(v.kind, VertexKind::Extremum | VertexKind::Boundary);
    }
    let edges = b
        .edges
        .iter()
        .enumerate()
        .map(|(i, &(p, c))| Edge {
            id: EdgeId(i),
            endpoints: (p, c),
            class: if vertices[p.0].external || vertices[c.0].external {
                EdgeClass::External
            } else {
                EdgeClass::Internal
            },
        })
        .collect();
    KrGraph { vertices, edges, families: b.families }
}

pub fn internal_edges(graph: &KrGraph) -> Vec<EdgeId> {
    graph.internal_edges()
}

pub fn export_dot(graph: &KrGraph) -> String {
    graph.to_dot()
}

struct Builder {
    vertices: Vec<Vertex>,
    edges: Vec<(VertexId, VertexId)>,
    families: Vec<RotationFamily>,
}

impl Builder {
    fn expand(&mut self, node: &Node, parent: VertexId, src: &mut usize, copy: usize) {
        let kind = match node {
            Node::Extremum => VertexKind::Extremum,
            Node::Boundary => VertexKind::Boundary,
            Node::Atom(_) => VertexKind::Atom,
        };
        let id = VertexId(self.vertices.len());
        self.vertices.push(Vertex { id, kind, source: Some(*src), copy, degree: 0, external: false });
        self.edges.push((parent, id));
        *src += 1;

        let Node::Atom(atom) = node else { return };
        let reps_src = *src;
        let start = self.edges.len();
        for j in 0..atom.m {
            *src = reps_src;
            for rep in &atom.reps {
                self.expand(rep, id, src, j);
            }
        }
        if atom.m >= 2 {
            self.families.push(RotationFamily {
                atom: id,
                m: atom.m,
                start: EdgeId(start),
                copy_len: (self.edges.len() - start) / atom.m,
            });
        }
        for child in &atom.fixed {
            self.expand(child, id, src, copy);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::parse_tree;

    fn graph(text: &str) -> KrGraph {
        build_kr_graph(&parse_tree(text).unwrap())
    }

    fn counts(g: &KrGraph) -> (usize, usize) {
        (g.internal_edges().len(), g.external_edges().len())
    }

    #[test]
    fn base_cases() {
        let g = graph("(disk (E))");
        assert_eq!(g.vertices().len(), 2);
        assert_eq!(g.vertex(VertexId(1)).kind, VertexKind::Extremum);
        assert_eq!(counts(&g), (0, 1));

        let g = graph("(disk (A 1 reps [] fixed []))");
        assert_eq!(g.vertices().len(), 2);
        assert_eq!(g.vertex(VertexId(1)).kind, VertexKind::Atom);
        assert_eq!(g.internal_edges(), [EdgeId(0)]);
        assert_eq!(counts(&g), (1, 0));

        let g = graph("(cyl (B))");
        assert!(g.internal_edges().is_empty());
        assert_eq!(counts(&g), (0, 1));
    }

    #[test]
    fn case_2a_expansion() {
        let g = graph("(disk (A 3 reps [(E)] fixed []))");
        assert_eq!(g.vertices().len(), 5);
        assert_eq!(counts(&g), (1, 3));
        assert_eq!(g.vertex(VertexId(1)).degree, 4);
        let copies: Vec<usize> = g.vertices()[2..].iter().map(|v| v.copy).collect();
        assert_eq!(copies, [0, 1, 2]);
        assert_eq!(
            g.rotation_families(),
            [RotationFamily { atom: VertexId(1), m: 3, start: EdgeId(1), copy_len: 1 }]
        );
    }

    #[test]
    fn degenerate_child_edges_are_internal() {
        let g = graph("(disk (A 1 reps [] fixed [(E) (A 1 reps [] fixed [])]))");
        assert_eq!(g.internal_edges(), [EdgeId(0), EdgeId(2)]);
        assert_eq!(g.external_edges(), [EdgeId(1)]);
    }

    #[test]
    fn nested_families_exist_per_copy() {
        let g = graph("(disk (A 2 reps [(A 3 reps [(E)] fixed [])] fixed []))");
        assert_eq!(g.rotation_families().len(), 3);
        assert_eq!(g.edges().len(), 1 + 2 * 4);
        let outer = g.rotation_families().last().unwrap();
        assert_eq!((outer.m, outer.copy_len), (2, 4));
        assert_eq!(outer.locate(EdgeId(5)), Some((1, 0)));
        assert_eq!(outer.locate(EdgeId(0)), None);
    }

    #[test]
    fn dot_output() {
        let dot = graph("(cyl (B))").to_dot();
        assert_eq!(
            dot,
            "graph kronrod_reeb {\n  v0 [label=\"V\"];\n  v1 [label=\"boundary\"];\n  v0 -- v1 [id=\"e0\", style=dashed];\n}\n"
        );
        let dot = graph("(disk (A 1 reps [] fixed []))").to_dot();
        assert!(dot.contains("v1 [label=\"atom\"]"));
        assert!(dot.contains("style=solid"));
        let t = "(disk (A 2 reps [(E) (A 1 reps [] fixed [])] fixed [(E)]))";
        assert_eq!(graph(t).to_dot(), graph(t).to_dot());
    }
}
