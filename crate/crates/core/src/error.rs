use core::fmt;

/// A rejected input together with the byte offset where the problem was seen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected end of input, expected {0}")]
    UnexpectedEnd(&'static str),
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("trailing input after a complete expression")]
    TrailingInput,
    #[error("nesting deeper than {0} levels")]
    TooDeep(usize),
    #[error("number too large")]
    NumberTooLarge,
    #[error("wreath arity must be ≥ 1")]
    ZeroArity,
    #[error(transparent)]
    Invalid(#[from] TreeViolation),
}

/// A broken structural rule of a decomposition tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum TreeViolation {
    #[error("multiplicity m must be ≥ 1")]
    ZeroMultiplicity,
    #[error("reps nonempty requires m ≥ 2")]
    RepsRequireMultiplicity,
    #[error("m ≥ 2 requires at least one rep")]
    MultiplicityRequiresReps,
    #[error("|fixed| > 1 with m ≥ 2")]
    TooManyFixed,
    #[error("B outside cylinder")]
    BoundaryOutsideCylinder,
    #[error("B inside reps")]
    BoundaryInsideReps,
    #[error("cylinder must contain exactly one B")]
    BoundaryCount,
}

impl ParseError {
    pub fn new(offset: usize, kind: ParseErrorKind) -> Self {
        ParseError { offset, kind }
    }

    /// 1-based `(line, column)` of the error inside `source`, columns
    /// counted in characters.
    pub fn line_col(&self, source: &str) -> (usize, usize) {
        let mut end = self.offset.min(source.len());
        while !source.is_char_boundary(end) {
            end -= 1;
        }
        let before = &source[..end];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        let col = before[line_start..].chars().count() + 1;
        (line, col)
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "byte {}: {}", self.offset, self.kind)
    }
}

impl core::error::Error for ParseError {}
