use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Atom, DecompositionTree, Node, Surface};

/// Edge cap used by [`gen_random_tree`].
pub const DEFAULT_MAX_EDGES: usize = 40;

/// Bounds for random decomposition trees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeGenParams {
    /// Nesting depth of nodes; the root has depth 1.
    pub max_depth: usize,
    /// Bound on `|reps| + |fixed|` of every atom.
    pub max_children: usize,
    /// Bound on the multiplicity `m`.
    pub max_m: usize,
    /// Bound on the number of edges of the expanded Kronrod–Reeb graph.
    pub max_edges: usize,
}

impl TreeGenParams {
    pub fn new(max_depth: usize, max_children: usize, max_m: usize) -> Self {
        TreeGenParams { max_depth, max_children, max_m, max_edges: DEFAULT_MAX_EDGES }
    }

    pub fn with_max_edges(self, max_edges: usize) -> Self {
        TreeGenParams { max_edges, ..self }
    }

    pub fn generate(&self, seed: u64) -> DecompositionTree {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample(&mut rng)
    }

    /// Draws a valid tree; the surface is chosen uniformly.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> DecompositionTree {
        let surface = if rng.gen_bool(0.5) { Surface::Disk } else { Surface::Cylinder };
        self.sample_on(surface, rng)
    }

    pub fn sample_on<R: Rng + ?Sized>(&self, surface: Surface, rng: &mut R) -> DecompositionTree {
        let mut g = Gen { p: self, rng };
        let depth = self.max_depth.max(1);
        let budget = self.max_edges.max(1);
        let (root, _) = match surface {
            Surface::Disk => g.disk(depth, budget),
            Surface::Cylinder => g.chain(depth, budget),
        };
        DecompositionTree::new(surface, root).expect("generator produced an invalid tree")
    }
}

/// `TreeGenParams::new(max_depth, max_children, max_m).generate(seed)`.
pub fn gen_random_tree(max_depth: usize, max_children: usize, max_m: usize, seed: u64) -> DecompositionTree {
    TreeGenParams::new(max_depth, max_children, max_m).generate(seed)
}

struct Gen<'a, R: ?Sized> {
    p: &'a TreeGenParams,
    rng: &'a mut R,
}

impl<R: Rng + ?Sized> Gen<'_, R> {
    fn leaf(&mut self) -> (Node, usize) {
        let node = if self.rng.gen_bool(0.6) { Node::Extremum } else { Node::degenerate() };
        (node, 1)
    }

    fn multiplicity(&mut self) -> usize {
        if self.p.max_m < 2 || self.rng.gen_bool(0.4) {
            1
        } else {
            self.rng.gen_range(2..=self.p.max_m)
        }
    }

    /// Random share of `left` for one child, keeping `reserve` for the rest.
    fn share(&mut self, left: usize, reserve: usize, weight: usize) -> usize {
        let avail = (left - reserve) / weight;
        self.rng.gen_range(1..=avail.max(1))
    }

    /// A subtree containing no boundary leaf, costing at most `budget` edges.
    fn disk(&mut self, depth: usize, budget: usize) -> (Node, usize) {
        if depth <= 1 || budget < 2 || self.p.max_children == 0 || self.rng.gen_bool(0.25) {
            return self.leaf();
        }
        let inner = budget - 1;
        let m = self.multiplicity();
        if m >= 2 && inner >= m {
            let c = self.rng.gen_range(1..=self.p.max_children.min(inner / m));
            let want_fixed = c < self.p.max_children && inner > c * m && self.rng.gen_bool(0.5);
            let mut left = inner;
            let mut reps = Vec::with_capacity(c);
            for i in 0..c {
                let reserve = (c - i - 1) * m + usize::from(want_fixed);
                let b = self.share(left, reserve, m);
                let (n, cost) = self.disk(depth - 1, b);
                left -= m * cost;
                reps.push(n);
            }
            let fixed = if want_fixed {
                let b = self.share(left, 0, 1);
                let (n, cost) = self.disk(depth - 1, b);
                left -= cost;
                alloc::vec![n]
            } else {
                Vec::new()
            };
            (Node::Atom(Atom::new(m, reps, fixed)), budget - left)
        } else {
            let a = self.rng.gen_range(0..=self.p.max_children.min(inner));
            let mut left = inner;
            let mut fixed = Vec::with_capacity(a);
            for i in 0..a {
                let b = self.share(left, a - i - 1, 1);
                let (n, cost) = self.disk(depth - 1, b);
                left -= cost;
                fixed.push(n);
            }
            (Node::Atom(Atom::invariant(fixed)), budget - left)
        }
    }

    /// A subtree holding the cylinder's far boundary along its fixed chain.
    fn chain(&mut self, depth: usize, budget: usize) -> (Node, usize) {
        if depth <= 1 || budget < 2 || self.p.max_children == 0 || self.rng.gen_bool(0.2) {
            return (Node::Boundary, 1);
        }
        let inner = budget - 1;
        let m = self.multiplicity();
        if m >= 2 && self.p.max_children >= 2 && inner > m {
            let c = self.rng.gen_range(1..=(self.p.max_children - 1).min((inner - 1) / m));
            let b = self.share(inner, c * m, 1);
            let (link, cost) = self.chain(depth - 1, b);
            let mut left = inner - cost;
            let mut reps = Vec::with_capacity(c);
            for i in 0..c {
                let b = self.share(left, (c - i - 1) * m, m);
                let (n, cost) = self.disk(depth - 1, b);
                left -= m * cost;
                reps.push(n);
            }
            (Node::Atom(Atom::new(m, reps, alloc::vec![link])), budget - left)
        } else {
            let a = self.rng.gen_range(1..=self.p.max_children.min(inner));
            let link_at = self.rng.gen_range(0..a);
            let b = self.share(inner, a - 1, 1);
            let (link, cost) = self.chain(depth - 1, b);
            let mut left = inner - cost;
            let mut fixed = Vec::with_capacity(a);
            for i in 0..a - 1 {
                let b = self.share(left, a - i - 2, 1);
                let (n, cost) = self.disk(depth - 1, b);
                left -= cost;
                fixed.push(n);
            }
            fixed.insert(link_at, link);
            (Node::Atom(Atom::invariant(fixed)), budget - left)
        }
    }
}
