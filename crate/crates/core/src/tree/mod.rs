//! Decorated decomposition trees of functions on the disk and the cylinder.
//!
//! The root of a tree is the critical level component nearest to the
//! reference boundary `V`. An [`Atom`] is such a component together with
//! its saturated neighbourhood: its `reps` are one representative per free
//! orbit of the rotation of order `m` (each stands for `m` copies), its
//! `fixed` children are the invariant components other than the cylinder
//! leading back towards `V`, which is implicit in the parent edge.
//!
//! Text format (whitespace-insensitive):
//!
//! ```text
//! top  := "(disk" node ")" | "(cyl" node ")"
//! node := "(E)" | "(B)" | "(A" NAT "reps" "[" node* "]" "fixed" "[" node* "]" ")"
//! ```

mod gen;
mod parse;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use gen::{gen_random_tree, TreeGenParams, DEFAULT_MAX_EDGES};
pub use parse::parse_tree;

use crate::error::TreeViolation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Surface {
    Disk,
    Cylinder,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    /// Disk around a non-degenerate local extremum.
    Extremum,
    /// The far boundary circle of a cylinder.
    Boundary,
    Atom(Atom),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    /// Order of the rotation acting on the complementary components.
    pub m: usize,
    pub reps: Vec<Node>,
    pub fixed: Vec<Node>,
}

/// A tree that satisfies every structural rule; see [`DecompositionTree::new`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecompositionTree {
    surface: Surface,
    root: Node,
}

/// A violated rule and the path of the offending node, e.g.
/// `root.fixed[0].reps[1]`.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{path}: {violation}")]
pub struct InvalidTree {
    pub path: String,
    pub violation: TreeViolation,
}

impl Atom {
    pub fn new(m: usize, reps: Vec<Node>, fixed: Vec<Node>) -> Self {
        Atom { m, reps, fixed }
    }

    /// Case 1 atom: every complementary component is invariant.
    pub fn invariant(fixed: Vec<Node>) -> Self {
        Atom { m: 1, reps: Vec::new(), fixed }
    }

    /// Local rules of a single atom, independent of its position.
    pub(crate) fn check_shape(m: usize, reps: usize, fixed: usize) -> Result<(), TreeViolation> {
        match (m, reps, fixed) {
            (0, _, _) => Err(TreeViolation::ZeroMultiplicity),
            (1, r, _) if r > 0 => Err(TreeViolation::RepsRequireMultiplicity),
            (m, 0, _) if m >= 2 => Err(TreeViolation::MultiplicityRequiresReps),
            (m, _, f) if m >= 2 && f > 1 => Err(TreeViolation::TooManyFixed),
            _ => Ok(()),
        }
    }
}

impl Node {
    /// A degenerate local extremum: an invariant atom with no children.
    pub fn degenerate() -> Node {
        Node::Atom(Atom::invariant(Vec::new()))
    }

    /// Number of graph edges in the expansion of this subtree, counting the
    /// edge to its parent.
    pub fn edge_count(&self) -> usize {
        match self {
            Node::Extremum | Node::Boundary => 1,
            Node::Atom(a) => {
                let reps: usize = a.reps.iter().map(Node::edge_count).sum();
                let fixed: usize = a.fixed.iter().map(Node::edge_count).sum();
                1 + a.m * reps + fixed
            }
        }
    }

    /// Nesting depth; leaves have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Node::Extremum | Node::Boundary => 1,
            Node::Atom(a) => 1 + a.reps.iter().chain(&a.fixed).map(Node::depth).max().unwrap_or(0),
        }
    }
}

impl DecompositionTree {
    /// Checks every structural rule:
    ///
    /// * `m ≥ 1`; `m = 1` forbids reps; `m ≥ 2` needs reps and allows at
    ///   most one fixed child;
    /// * `B` occurs exactly once on a cylinder, never on a disk, and never
    ///   below a `reps` list.
    pub fn new(surface: Surface, root: Node) -> Result<Self, InvalidTree> {
        let mut boundaries = 0;
        check_node(&root, surface, false, &mut String::from("root"), &mut boundaries)?;
        if surface == Surface::Cylinder && boundaries != 1 {
            return Err(InvalidTree { path: String::from("root"), violation: TreeViolation::BoundaryCount });
        }
        Ok(DecompositionTree { surface, root })
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn edge_count(&self) -> usize {
        self.root.edge_count()
    }

    pub fn depth(&self) -> usize {
        self.root.depth()
    }
}

fn check_node(
    node: &Node,
    surface: Surface,
    in_reps: bool,
    path: &mut String,
    boundaries: &mut usize,
) -> Result<(), InvalidTree> {
    let fail = |path: &String, violation| Err(InvalidTree { path: path.clone(), violation });
    match node {
        Node::Extremum => Ok(()),
        Node::Boundary => {
            if surface != Surface::Cylinder {
                return fail(path, TreeViolation::BoundaryOutsideCylinder);
            }
            if in_reps {
                return fail(path, TreeViolation::BoundaryInsideReps);
            }
            *boundaries += 1;
            if *boundaries > 1 {
                return fail(path, TreeViolation::BoundaryCount);
            }
            Ok(())
        }
        Node::Atom(a) => {
            if let Err(v) = Atom::check_shape(a.m, a.reps.len(), a.fixed.len()) {
                return fail(path, v);
            }
            for (list, name, reps) in [(&a.reps, "reps", true), (&a.fixed, "fixed", false)] {
                for (i, child) in list.iter().enumerate() {
                    let len = path.len();
                    path.push_str(&format!(".{name}[{i}]"));
                    check_node(child, surface, in_reps || reps, path, boundaries)?;
                    path.truncate(len);
                }
            }
            Ok(())
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Surface::Disk => "disk",
            Surface::Cylinder => "cyl",
        })
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Extremum => f.write_str("(E)"),
            Node::Boundary => f.write_str("(B)"),
            Node::Atom(a) => {
                write!(f, "(A {} reps [", a.m)?;
                write_list(f, &a.reps)?;
                f.write_str("] fixed [")?;
                write_list(f, &a.fixed)?;
                f.write_str("])")
            }
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, nodes: &[Node]) -> fmt::Result {
    for (i, n) in nodes.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{n}")?;
    }
    Ok(())
}

/// Renders in the text format accepted by [`parse_tree`].
impl fmt::Display for DecompositionTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {})", self.surface, self.root)
    }
}
