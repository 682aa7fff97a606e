use alloc::boxed::Box;
use core::num::NonZeroUsize;

use rand::{Rng, SeedableRng};

use super::{Element, GroupExpr};

/// Entry bound for the partners drawn by [`GroupExpr::is_central_sampled`].
pub const CENTRALITY_SAMPLE_BOUND: u32 = 16;

/// Draws an element of `expr`, each integer slot uniform in `[−bound, bound]`.
pub fn sample_element<R: Rng + ?Sized>(expr: &GroupExpr, bound: u32, rng: &mut R) -> Element {
    let b = i64::from(bound);
    match expr {
        GroupExpr::Trivial => Element::Unit,
        GroupExpr::Z => Element::Int(rng.gen_range(-b..=b)),
        GroupExpr::Product(a, c) => {
            let x = sample_element(a, bound, rng);
            Element::pair(x, sample_element(c, bound, rng))
        }
        GroupExpr::Wreath(base, n) => {
            let coords = (0..n.get()).map(|_| sample_element(base, bound, rng)).collect();
            Element::Wreath { coords, shift: rng.gen_range(-b..=b) }
        }
    }
}

/// Draws a realization word of depth at most `max_depth` whose wreath
/// arities lie in `1..=max_arity`.
pub fn sample_expr<R: Rng + ?Sized>(max_depth: usize, max_arity: usize, rng: &mut R) -> GroupExpr {
    let max_arity = max_arity.max(1);
    if max_depth <= 1 {
        return if rng.gen_bool(0.5) { GroupExpr::Z } else { GroupExpr::Trivial };
    }
    match rng.gen_range(0..10) {
        0 => GroupExpr::Trivial,
        1 | 2 => GroupExpr::Z,
        3..=5 => {
            let a = sample_expr(max_depth - 1, max_arity, rng);
            let b = sample_expr(max_depth - 1, max_arity, rng);
            GroupExpr::product(a, b)
        }
        _ => {
            let n = rng.gen_range(1..=max_arity);
            let base = sample_expr(max_depth - 1, max_arity, rng);
            GroupExpr::Wreath(Box::new(base), NonZeroUsize::new(n).unwrap())
        }
    }
}

pub fn random_expr(max_depth: usize, max_arity: usize, seed: u64) -> GroupExpr {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    sample_expr(max_depth, max_arity, &mut rng)
}
