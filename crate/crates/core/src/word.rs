//! Realization words: parsing, canonical rendering and normalization.
//!
//! Grammar (whitespace between tokens is ignored):
//!
//! ```text
//! expr    := wr ( "x" wr )*
//! wr      := primary ( "wr_" NAT "Z" )*
//! primary := "1" | "Z" | "(" expr ")"
//! ```
//!
//! `x` is a left-associative product and a chain `A wr_2 Z wr_3 Z` reads as
//! `(A ≀₂ ℤ) ≀₃ ℤ`. On input, `×` may replace `x`, `ℤ` may replace `Z`, and
//! `≀` (optionally followed by `_`) may replace `wr_`, with the arity in
//! ASCII or subscript digits.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::num::NonZeroUsize;

use crate::error::{ParseError, ParseErrorKind};
use crate::group::GroupExpr;

/// Parentheses deeper than this are rejected instead of recursing further.
pub const MAX_NESTING: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    One,
    Z,
    Open,
    Close,
    Times,
    Wr(NonZeroUsize),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut toks = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((at, c)) = chars.next() {
        let tok = match c {
            c if c.is_whitespace() => continue,
            '1' => Tok::One,
            'Z' | 'ℤ' => Tok::Z,
            '(' => Tok::Open,
            ')' => Tok::Close,
            'x' | '×' => Tok::Times,
            'w' => {
                for want in ['r', '_'] {
                    match chars.next() {
                        Some((_, c)) if c == want => {}
                        Some((i, c)) => return Err(ParseError::new(i, ParseErrorKind::UnexpectedChar(c))),
                        None => return Err(ParseError::new(text.len(), ParseErrorKind::UnexpectedEnd("`wr_`"))),
                    }
                }
                Tok::Wr(lex_arity(text, &mut chars)?)
            }
            '≀' => {
                if let Some((_, '_')) = chars.peek() {
                    chars.next();
                }
                Tok::Wr(lex_arity(text, &mut chars)?)
            }
            other => return Err(ParseError::new(at, ParseErrorKind::UnexpectedChar(other))),
        };
        toks.push((at, tok));
    }
    Ok(toks)
}

fn lex_arity(
    text: &str,
    chars: &mut core::iter::Peekable<core::str::CharIndices<'_>>,
) -> Result<NonZeroUsize, ParseError> {
    let start = chars.peek().map_or(text.len(), |&(i, _)| i);
    let mut value: usize = 0;
    let mut digits = 0;
    while let Some(&(_, c)) = chars.peek() {
        let d = match c {
            '0'..='9' => c as u32 - '0' as u32,
            '₀'..='₉' => c as u32 - '₀' as u32,
            _ => break,
        };
        chars.next();
        digits += 1;
        value = value
            .checked_mul(10)
            .and_then(|v| v.checked_add(d as usize))
            .ok_or(ParseError::new(start, ParseErrorKind::NumberTooLarge))?;
    }
    if digits == 0 {
        return Err(match chars.peek() {
            Some(&(i, _)) => ParseError::new(i, ParseErrorKind::Expected("wreath arity")),
            None => ParseError::new(text.len(), ParseErrorKind::UnexpectedEnd("wreath arity")),
        });
    }
    NonZeroUsize::new(value).ok_or(ParseError::new(start, ParseErrorKind::ZeroArity))
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).map(|&(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(o, _)| o)
    }

    fn expect(&mut self, want: Tok, what: &'static str) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(_) => Err(ParseError::new(self.offset(), ParseErrorKind::Expected(what))),
            None => Err(ParseError::new(self.end, ParseErrorKind::UnexpectedEnd(what))),
        }
    }

    fn expr(&mut self) -> Result<GroupExpr, ParseError> {
        let mut acc = self.wreath()?;
        while self.peek() == Some(Tok::Times) {
            self.pos += 1;
            let rhs = self.wreath()?;
            acc = GroupExpr::product(acc, rhs);
        }
        Ok(acc)
    }

    fn wreath(&mut self) -> Result<GroupExpr, ParseError> {
        let mut acc = self.primary()?;
        while let Some(Tok::Wr(n)) = self.peek() {
            self.pos += 1;
            self.expect(Tok::Z, "`Z` after wreath arity")?;
            acc = GroupExpr::Wreath(Box::new(acc), n);
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<GroupExpr, ParseError> {
        let at = self.offset();
        match self.peek() {
            Some(Tok::One) => {
                self.pos += 1;
                Ok(GroupExpr::Trivial)
            }
            Some(Tok::Z) => {
                self.pos += 1;
                Ok(GroupExpr::Z)
            }
            Some(Tok::Open) => {
                if self.depth >= MAX_NESTING {
                    return Err(ParseError::new(at, ParseErrorKind::TooDeep(MAX_NESTING)));
                }
                self.pos += 1;
                self.depth += 1;
                let inner = self.expr()?;
                self.depth -= 1;
                self.expect(Tok::Close, "`)`")?;
                Ok(inner)
            }
            Some(_) => Err(ParseError::new(at, ParseErrorKind::Expected("`1`, `Z` or `(`"))),
            None => Err(ParseError::new(self.end, ParseErrorKind::UnexpectedEnd("`1`, `Z` or `(`"))),
        }
    }
}

/// Parses a realization word.
pub fn parse_realization(text: &str) -> Result<GroupExpr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), depth: 0 };
    let expr = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ParseError::new(p.offset(), ParseErrorKind::TrailingInput));
    }
    Ok(expr)
}

/// Canonical ASCII spelling; `parse_realization(&render(e)) == Ok(e)`.
pub fn render(expr: &GroupExpr) -> String {
    let mut out = String::new();
    write_expr(&mut out, expr).expect("writing to a String cannot fail");
    out
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self)
    }
}

fn write_expr<W: fmt::Write>(out: &mut W, expr: &GroupExpr) -> fmt::Result {
    match expr {
        GroupExpr::Trivial => out.write_char('1'),
        GroupExpr::Z => out.write_char('Z'),
        GroupExpr::Product(a, b) => {
            // Left operand: a product chain continues unparenthesized.
            match **a {
                GroupExpr::Wreath(..) => write_parenthesized(out, a)?,
                _ => write_expr(out, a)?,
            }
            out.write_str(" x ")?;
            match **b {
                GroupExpr::Trivial | GroupExpr::Z => write_expr(out, b),
                _ => write_parenthesized(out, b),
            }
        }
        GroupExpr::Wreath(base, n) => {
            match **base {
                GroupExpr::Product(..) => write_parenthesized(out, base)?,
                _ => write_expr(out, base)?,
            }
            write!(out, " wr_{} Z", n)
        }
    }
}

fn write_parenthesized<W: fmt::Write>(out: &mut W, expr: &GroupExpr) -> fmt::Result {
    out.write_char('(')?;
    write_expr(out, expr)?;
    out.write_char(')')
}

/// Applies `1 ≀ₙ ℤ → ℤ`, `A ≀₁ ℤ → A × ℤ`, `1 × A → A`, `A × 1 → A` and
/// reassociates products to the right, innermost first, until nothing
/// changes. Operands of a product are never reordered.
pub fn normalize(expr: &GroupExpr) -> GroupExpr {
    match expr {
        GroupExpr::Trivial => GroupExpr::Trivial,
        GroupExpr::Z => GroupExpr::Z,
        GroupExpr::Product(a, b) => product_normal(normalize(a), normalize(b)),
        GroupExpr::Wreath(base, n) => {
            let base = normalize(base);
            if base == GroupExpr::Trivial {
                GroupExpr::Z
            } else if n.get() == 1 {
                product_normal(base, GroupExpr::Z)
            } else {
                GroupExpr::Wreath(Box::new(base), *n)
            }
        }
    }
}

/// Product of two normal forms, itself in normal form.
fn product_normal(a: GroupExpr, b: GroupExpr) -> GroupExpr {
    match (a, b) {
        (GroupExpr::Trivial, b) => b,
        (a, GroupExpr::Trivial) => a,
        (GroupExpr::Product(x, y), b) => product_normal(*x, product_normal(*y, b)),
        (a, b) => GroupExpr::product(a, b),
    }
}
