//! Groups of the class 𝒢 and exact arithmetic on their elements.
//!
//! A [`GroupExpr`] is a realization word: the trivial group, `ℤ`, a direct
//! product, or a wreath product `A ≀ₙ ℤ = Aⁿ ⋊ ℤ` where `ℤ` acts by cyclic
//! shifts of coordinates. An [`Element`] mirrors the shape of its expression.
//!
//! Multiplication in `A ≀ₙ ℤ` uses the convention
//!
//! ```text
//! (a, k) · (b, p) = (σ_p(a) ⊙ b, k + p),    σ_p(a)_i = a_{(i + p) mod n}
//! ```
//!
//! with `⊙` the coordinatewise product in `A`.

mod sample;

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::num::NonZeroUsize;
use core::ops::{Add, Neg};

use crate::rank;

pub use sample::{random_expr, sample_element, sample_expr, CENTRALITY_SAMPLE_BOUND};

/// A realization word over the alphabet `{1, ℤ, (, ), ×, ≀₂, ≀₃, …}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupExpr {
    Trivial,
    Z,
    Product(Box<GroupExpr>, Box<GroupExpr>),
    Wreath(Box<GroupExpr>, NonZeroUsize),
}

/// A value of the group denoted by some [`GroupExpr`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Unit,
    Int(i64),
    Pair(Box<Element>, Box<Element>),
    /// `coords` has one entry per coordinate of `Aⁿ`; `shift` is the `ℤ`
    /// component and is never reduced.
    Wreath { coords: Vec<Element>, shift: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("element does not have the shape of the group (expected {0})")]
    ShapeMismatch(&'static str),
    #[error("integer overflow in group arithmetic")]
    Overflow,
}

/// An element of `ℤ^β₁`, the image of the abelianization map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntVector(pub Vec<i64>);

impl IntVector {
    pub fn zero(len: usize) -> Self {
        IntVector(vec![0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn checked_add(&self, other: &IntVector) -> Option<IntVector> {
        if self.len() != other.len() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<_>>>()
            .map(IntVector)
    }
}

impl Add for &IntVector {
    type Output = IntVector;

    /// Panics if the lengths differ or a coordinate overflows.
    fn add(self, other: &IntVector) -> IntVector {
        assert_eq!(self.len(), other.len(), "IntVector length mismatch");
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Neg for &IntVector {
    type Output = IntVector;

    fn neg(self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }
}

type Result<T> = core::result::Result<T, GroupError>;

impl GroupExpr {
    pub fn product(left: GroupExpr, right: GroupExpr) -> GroupExpr {
        GroupExpr::Product(Box::new(left), Box::new(right))
    }

    /// `base ≀ₙ ℤ`.
    ///
    /// Panics if `n == 0`; use [`GroupExpr::Wreath`] with a `NonZeroUsize`
    /// when the arity is not known to be positive.
    pub fn wreath(base: GroupExpr, n: usize) -> GroupExpr {
        let n = NonZeroUsize::new(n).expect("wreath arity must be ≥ 1");
        GroupExpr::Wreath(Box::new(base), n)
    }

    /// Number of `ℤ` symbols in the word. Every wreath node spells one `ℤ`.
    pub fn beta1(&self) -> usize {
        match self {
            GroupExpr::Trivial => 0,
            GroupExpr::Z => 1,
            GroupExpr::Product(a, b) => a.beta1() + b.beta1(),
            GroupExpr::Wreath(a, _) => a.beta1() + 1,
        }
    }

    /// Height of the syntax tree; leaves have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            GroupExpr::Trivial | GroupExpr::Z => 1,
            GroupExpr::Product(a, b) => 1 + a.depth().max(b.depth()),
            GroupExpr::Wreath(a, _) => 1 + a.depth(),
        }
    }

    pub fn identity(&self) -> Element {
        match self {
            GroupExpr::Trivial => Element::Unit,
            GroupExpr::Z => Element::Int(0),
            GroupExpr::Product(a, b) => Element::pair(a.identity(), b.identity()),
            GroupExpr::Wreath(a, n) => Element::Wreath {
                coords: vec![a.identity(); n.get()],
                shift: 0,
            },
        }
    }

    /// True iff `g` has the shape of an element of this group.
    pub fn contains(&self, g: &Element) -> bool {
        match (self, g) {
            (GroupExpr::Trivial, Element::Unit) | (GroupExpr::Z, Element::Int(_)) => true,
            (GroupExpr::Product(a, b), Element::Pair(x, y)) => a.contains(x) && b.contains(y),
            (GroupExpr::Wreath(a, n), Element::Wreath { coords, .. }) => {
                coords.len() == n.get() && coords.iter().all(|c| a.contains(c))
            }
            _ => false,
        }
    }

    pub fn multiply(&self, g: &Element, h: &Element) -> Result<Element> {
        match (self, g, h) {
            (GroupExpr::Trivial, Element::Unit, Element::Unit) => Ok(Element::Unit),
            (GroupExpr::Z, Element::Int(x), Element::Int(y)) => {
                x.checked_add(*y).map(Element::Int).ok_or(GroupError::Overflow)
            }
            (GroupExpr::Product(a, b), Element::Pair(g1, g2), Element::Pair(h1, h2)) => {
                Ok(Element::pair(a.multiply(g1, h1)?, b.multiply(g2, h2)?))
            }
            (
                GroupExpr::Wreath(base, n),
                Element::Wreath { coords: ga, shift: k },
                Element::Wreath { coords: hb, shift: p },
            ) => {
                let n = n.get();
                check_arity(ga, n)?;
                check_arity(hb, n)?;
                let offset = shift_offset(*p, n);
                let coords = (0..n)
                    .map(|i| base.multiply(&ga[(i + offset) % n], &hb[i]))
                    .collect::<Result<Vec<_>>>()?;
                let shift = k.checked_add(*p).ok_or(GroupError::Overflow)?;
                Ok(Element::Wreath { coords, shift })
            }
            _ => Err(self.mismatch()),
        }
    }

    pub fn inverse(&self, g: &Element) -> Result<Element> {
        match (self, g) {
            (GroupExpr::Trivial, Element::Unit) => Ok(Element::Unit),
            (GroupExpr::Z, Element::Int(x)) => {
                x.checked_neg().map(Element::Int).ok_or(GroupError::Overflow)
            }
            (GroupExpr::Product(a, b), Element::Pair(x, y)) => {
                Ok(Element::pair(a.inverse(x)?, b.inverse(y)?))
            }
            (GroupExpr::Wreath(base, n), Element::Wreath { coords, shift }) => {
                // (a, k)⁻¹ = (b, −k) with b_i = (a_{(i − k) mod n})⁻¹
                let n = n.get();
                check_arity(coords, n)?;
                let back = n - shift_offset(*shift, n);
                let inv = (0..n)
                    .map(|i| base.inverse(&coords[(i + back) % n]))
                    .collect::<Result<Vec<_>>>()?;
                let shift = shift.checked_neg().ok_or(GroupError::Overflow)?;
                Ok(Element::Wreath { coords: inv, shift })
            }
            _ => Err(self.mismatch()),
        }
    }

    /// `g·h·g⁻¹·h⁻¹`.
    pub fn commutator(&self, g: &Element, h: &Element) -> Result<Element> {
        let gh = self.multiply(g, h)?;
        let ghg = self.multiply(&gh, &self.inverse(g)?)?;
        self.multiply(&ghg, &self.inverse(h)?)
    }

    /// The quotient map `G → G/[G,G] ≅ ℤ^β₁`.
    pub fn abelianize(&self, g: &Element) -> Result<IntVector> {
        let mut out = Vec::with_capacity(self.beta1());
        self.abelianize_into(g, &mut out)?;
        Ok(IntVector(out))
    }

    fn abelianize_into(&self, g: &Element, out: &mut Vec<i64>) -> Result<()> {
        match (self, g) {
            (GroupExpr::Trivial, Element::Unit) => Ok(()),
            (GroupExpr::Z, Element::Int(x)) => {
                out.push(*x);
                Ok(())
            }
            (GroupExpr::Product(a, b), Element::Pair(x, y)) => {
                a.abelianize_into(x, out)?;
                b.abelianize_into(y, out)
            }
            (GroupExpr::Wreath(base, n), Element::Wreath { coords, shift }) => {
                check_arity(coords, n.get())?;
                base.abelianize_into(&base.ordered_product(coords)?, out)?;
                out.push(*shift);
                Ok(())
            }
            _ => Err(self.mismatch()),
        }
    }

    /// Structural membership test for `[G,G]`.
    pub fn in_commutator_subgroup(&self, g: &Element) -> Result<bool> {
        match (self, g) {
            (GroupExpr::Trivial, Element::Unit) => Ok(true),
            (GroupExpr::Z, Element::Int(x)) => Ok(*x == 0),
            (GroupExpr::Product(a, b), Element::Pair(x, y)) => {
                Ok(a.in_commutator_subgroup(x)? && b.in_commutator_subgroup(y)?)
            }
            (GroupExpr::Wreath(base, n), Element::Wreath { coords, shift }) => {
                check_arity(coords, n.get())?;
                if *shift != 0 {
                    return Ok(false);
                }
                base.in_commutator_subgroup(&base.ordered_product(coords)?)
            }
            _ => Err(self.mismatch()),
        }
    }

    /// `β₁` elements generating a free abelian central subgroup.
    ///
    /// For `A ≀ₙ ℤ` these are the diagonals `((c, …, c), 0)` of the base
    /// generators followed by the pure shift `((e, …, e), n)`.
    pub fn center_generators(&self) -> Vec<Element> {
        match self {
            GroupExpr::Trivial => Vec::new(),
            GroupExpr::Z => vec![Element::Int(1)],
            GroupExpr::Product(a, b) => {
                let (ea, eb) = (a.identity(), b.identity());
                let left = a.center_generators().into_iter().map(|c| Element::pair(c, eb.clone()));
                let right = b.center_generators().into_iter().map(|c| Element::pair(ea.clone(), c));
                left.chain(right).collect()
            }
            GroupExpr::Wreath(base, n) => {
                let n = n.get();
                let mut gens: Vec<Element> = base
                    .center_generators()
                    .into_iter()
                    .map(|c| Element::Wreath { coords: vec![c; n], shift: 0 })
                    .collect();
                gens.push(Element::Wreath {
                    coords: vec![base.identity(); n],
                    shift: n as i64,
                });
                gens
            }
        }
    }

    /// One-sided centrality test: `false` is definitive, `true` means no
    /// non-commuting partner was found among `trials` random elements.
    pub fn is_central_sampled(&self, g: &Element, trials: usize, seed: u64) -> Result<bool> {
        use rand::SeedableRng;

        if !self.contains(g) {
            return Err(self.mismatch());
        }
        let id = self.identity();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let h = sample_element(self, CENTRALITY_SAMPLE_BOUND, &mut rng);
            if self.commutator(g, &h)? != id {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Deterministic pseudo-random element with every integer entry drawn
    /// uniformly from `[−bound, bound]`.
    pub fn random_element(&self, bound: u32, seed: u64) -> Element {
        use rand::SeedableRng;

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        sample_element(self, bound, &mut rng)
    }

    /// Rank over `ℚ` of the abelianization images of [`center_generators`].
    ///
    /// [`center_generators`]: GroupExpr::center_generators
    pub fn center_image_rank(&self) -> Result<usize> {
        let rows = self
            .center_generators()
            .iter()
            .map(|c| self.abelianize(c).map(|v| v.0))
            .collect::<Result<Vec<_>>>()?;
        rank::rational_rank(&rows).ok_or(GroupError::Overflow)
    }

    fn ordered_product(&self, items: &[Element]) -> Result<Element> {
        items
            .iter()
            .try_fold(self.identity(), |acc, x| self.multiply(&acc, x))
    }

    fn mismatch(&self) -> GroupError {
        GroupError::ShapeMismatch(match self {
            GroupExpr::Trivial => "unit",
            GroupExpr::Z => "integer",
            GroupExpr::Product(..) => "pair",
            GroupExpr::Wreath(..) => "wreath element",
        })
    }
}

impl Element {
    pub fn pair(a: Element, b: Element) -> Element {
        Element::Pair(Box::new(a), Box::new(b))
    }

    /// Largest absolute value of any integer entry.
    pub fn magnitude(&self) -> u64 {
        match self {
            Element::Unit => 0,
            Element::Int(x) => x.unsigned_abs(),
            Element::Pair(a, b) => a.magnitude().max(b.magnitude()),
            Element::Wreath { coords, shift } => coords
                .iter()
                .map(Element::magnitude)
                .fold(shift.unsigned_abs(), u64::max),
        }
    }
}

fn check_arity(coords: &[Element], n: usize) -> Result<()> {
    if coords.len() == n {
        Ok(())
    } else {
        Err(GroupError::ShapeMismatch("wreath element of matching arity"))
    }
}

/// `shift mod n` in `0..n`.
fn shift_offset(shift: i64, n: usize) -> usize {
    shift.rem_euclid(n as i64) as usize
}
