//! Exact computations around groups of the class 𝒢 (built from the trivial
//! group by direct products and `A ≀ₙ ℤ`) and around Kronrod–Reeb graphs of
//! functions on the 2-disk and the cylinder.
//!
//! The crate is `no_std` and needs only `alloc`. It provides:
//!
//! * [`group`]: element arithmetic, abelianization, commutator-subgroup
//!   membership and center generators for any [`GroupExpr`];
//! * [`word`]: the realization-word grammar (`(1 wr_3 Z) x Z`), rendering
//!   and normalization;
//! * [`tree`]: decorated decomposition trees and their text format;
//! * [`graph`]: expansion of a tree into an explicit Kronrod–Reeb graph with
//!   internal/external classification and DOT export;
//! * [`orbit`]: the stabilizer group word, internal-edge orbits by closure
//!   and by recursion, and the report tying them to `β₁`.
#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod error;
pub mod graph;
pub mod group;
pub mod orbit;
pub mod rank;
pub mod tree;
pub mod word;

pub use error::{ParseError, ParseErrorKind, TreeViolation};
pub use graph::{EdgeClass, EdgeId, KrGraph, VertexId, VertexKind};
pub use group::{Element, GroupError, GroupExpr, IntVector};
pub use orbit::{EdgePermutation, VerificationReport};
pub use tree::{Atom, DecompositionTree, InvalidTree, Node, Surface, TreeGenParams};
