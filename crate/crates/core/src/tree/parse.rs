use alloc::vec::Vec;

use super::{Atom, DecompositionTree, Node, Surface};
use crate::error::{ParseError, ParseErrorKind, TreeViolation};
use crate::word::MAX_NESTING;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok<'a> {
    Open,
    Close,
    LBracket,
    RBracket,
    Word(&'a str),
    Nat(usize),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok<'_>)>, ParseError> {
    let mut toks = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let tok = match b {
            b'(' => Tok::Open,
            b')' => Tok::Close,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b if b.is_ascii_whitespace() => {
                i += 1;
                continue;
            }
            b if b.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                toks.push((start, Tok::Word(&text[start..i])));
                continue;
            }
            b if b.is_ascii_digit() => {
                let mut v: usize = 0;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(usize::from(bytes[i] - b'0')))
                        .ok_or(ParseError::new(start, ParseErrorKind::NumberTooLarge))?;
                    i += 1;
                }
                toks.push((start, Tok::Nat(v)));
                continue;
            }
            _ => {
                let c = text[i..].chars().next().unwrap_or('\u{FFFD}');
                return Err(ParseError::new(i, ParseErrorKind::UnexpectedChar(c)));
            }
        };
        toks.push((start, tok));
        i += 1;
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok<'a>)>,
    pos: usize,
    end: usize,
    surface: Surface,
    boundaries: usize,
}

impl<'a> Parser<'a> {
    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(o, _)| o)
    }

    fn next(&mut self, what: &'static str) -> Result<(usize, Tok<'a>), ParseError> {
        let t = self
            .toks
            .get(self.pos)
            .copied()
            .ok_or(ParseError::new(self.end, ParseErrorKind::UnexpectedEnd(what)))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, want: Tok<'_>, what: &'static str) -> Result<(), ParseError> {
        let (at, t) = self.next(what)?;
        if t == want {
            Ok(())
        } else {
            Err(ParseError::new(at, ParseErrorKind::Expected(what)))
        }
    }

    fn node(&mut self, in_reps: bool, depth: usize) -> Result<Node, ParseError> {
        let (open_at, t) = self.next("`(`")?;
        if t != Tok::Open {
            return Err(ParseError::new(open_at, ParseErrorKind::Expected("`(`")));
        }
        if depth > MAX_NESTING {
            return Err(ParseError::new(open_at, ParseErrorKind::TooDeep(MAX_NESTING)));
        }
        let (at, t) = self.next("`E`, `B` or `A`")?;
        let node = match t {
            Tok::Word("E") => Node::Extremum,
            Tok::Word("B") => {
                let violation = if self.surface != Surface::Cylinder {
                    Some(TreeViolation::BoundaryOutsideCylinder)
                } else if in_reps {
                    Some(TreeViolation::BoundaryInsideReps)
                } else if self.boundaries > 0 {
                    Some(TreeViolation::BoundaryCount)
                } else {
                    None
                };
                if let Some(v) = violation {
                    return Err(ParseError::new(at, v.into()));
                }
                self.boundaries += 1;
                Node::Boundary
            }
            Tok::Word("A") => {
                let (m_at, t) = self.next("multiplicity")?;
                let Tok::Nat(m) = t else {
                    return Err(ParseError::new(m_at, ParseErrorKind::Expected("multiplicity")));
                };
                if m == 0 {
                    return Err(ParseError::new(m_at, TreeViolation::ZeroMultiplicity.into()));
                }
                self.expect(Tok::Word("reps"), "`reps`")?;
                let reps = self.list(true, depth)?;
                self.expect(Tok::Word("fixed"), "`fixed`")?;
                let fixed = self.list(in_reps, depth)?;
                Atom::check_shape(m, reps.len(), fixed.len())
                    .map_err(|v| ParseError::new(open_at, v.into()))?;
                Node::Atom(Atom { m, reps, fixed })
            }
            _ => return Err(ParseError::new(at, ParseErrorKind::Expected("`E`, `B` or `A`"))),
        };
        self.expect(Tok::Close, "`)`")?;
        Ok(node)
    }

    fn list(&mut self, in_reps: bool, depth: usize) -> Result<Vec<Node>, ParseError> {
        self.expect(Tok::LBracket, "`[`")?;
        let mut out = Vec::new();
        loop {
            match self.toks.get(self.pos) {
                Some((_, Tok::RBracket)) => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some(_) => out.push(self.node(in_reps, depth + 1)?),
                None => return Err(ParseError::new(self.end, ParseErrorKind::UnexpectedEnd("`]`"))),
            }
        }
    }
}

/// Parses and validates a decomposition tree. Rule violations are reported
/// at the offset of the offending node.
pub fn parse_tree(text: &str) -> Result<DecompositionTree, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), surface: Surface::Disk, boundaries: 0 };
    let top_at = p.offset();
    p.expect(Tok::Open, "`(`")?;
    let (at, t) = p.next("`disk` or `cyl`")?;
    p.surface = match t {
        Tok::Word("disk") => Surface::Disk,
        Tok::Word("cyl") => Surface::Cylinder,
        _ => return Err(ParseError::new(at, ParseErrorKind::Expected("`disk` or `cyl`"))),
    };
    let root = p.node(false, 1)?;
    p.expect(Tok::Close, "`)`")?;
    if p.pos != p.toks.len() {
        return Err(ParseError::new(p.offset(), ParseErrorKind::TrailingInput));
    }
    if p.surface == Surface::Cylinder && p.boundaries != 1 {
        return Err(ParseError::new(top_at, TreeViolation::BoundaryCount.into()));
    }
    DecompositionTree::new(p.surface, root)
        .map_err(|e| ParseError::new(top_at, e.violation.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn parses_base_cases() {
        let t = parse_tree("(disk (E))").unwrap();
        assert_eq!((t.surface(), t.root()), (Surface::Disk, &Node::Extremum));
        let t = parse_tree("(disk (A 1 reps [] fixed []))").unwrap();
        assert_eq!(t.root(), &Node::degenerate());
        let t = parse_tree("(cyl (B))").unwrap();
        assert_eq!((t.surface(), t.root()), (Surface::Cylinder, &Node::Boundary));
    }

    #[test]
    fn parses_case_2a_atom() {
        let t = parse_tree("(disk (A 3 reps [(E)] fixed []))").unwrap();
        assert_eq!(t.root(), &Node::Atom(Atom::new(3, vec![Node::Extremum], vec![])));
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = parse_tree("(disk(A 2 reps[(E)(A 1 reps[]fixed[])]fixed[(E)]))").unwrap();
        let b = parse_tree("  ( disk\n ( A 2 reps [ (E) (A 1 reps [ ] fixed [ ]) ]\n fixed [ ( E ) ] ) )\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_tree(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn invariant_violations_have_messages_and_offsets() {
        let cases: &[(&str, usize, &str)] = &[
            ("(disk (A 1 reps [(E)] fixed []))", 6, "reps nonempty requires m ≥ 2"),
            ("(disk (B))", 7, "B outside cylinder"),
            ("(cyl (A 2 reps [(B)] fixed [(E)]))", 17, "B inside reps"),
            ("(disk (A 2 reps [(E)] fixed [(E) (E)]))", 6, "|fixed| > 1 with m ≥ 2"),
            ("(disk (A 2 reps [] fixed []))", 6, "m ≥ 2 requires at least one rep"),
            ("(disk (A 0 reps [] fixed []))", 9, "multiplicity m must be ≥ 1"),
            ("(cyl (E))", 0, "cylinder must contain exactly one B"),
            ("(cyl (A 1 reps [] fixed [(B) (B)]))", 30, "cylinder must contain exactly one B"),
        ];
        for &(text, offset, msg) in cases {
            let err = parse_tree(text).unwrap_err();
            assert_eq!(err.offset, offset, "{text}");
            assert_eq!(err.kind.to_string(), msg, "{text}");
        }
    }

    #[test]
    fn syntax_errors() {
        let cases: &[(&str, usize)] = &[
            ("", 0),
            ("(disc (E))", 1),
            ("(disk (E)", 9),
            ("(disk (E)) x", 11),
            ("(disk (X))", 7),
            ("(disk (A reps [] fixed []))", 9),
            ("(disk (A 1 reps [] fixed [)", 26),
            ("(disk (A 1 reps [] fixed []", 27),
            ("(disk {E})", 6),
            ("(disk (A 99999999999999999999999 reps [] fixed []))", 9),
        ];
        for &(text, offset) in cases {
            let err = parse_tree(text).unwrap_err();
            assert_eq!(err.offset, offset, "{text:?}: {err}");
        }
    }
}
