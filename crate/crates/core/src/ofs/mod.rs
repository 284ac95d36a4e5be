//! OWL 2 functional-style syntax: the subset of axioms and class expressions
//! the archive model uses.

mod ast;
mod lexer;
mod parser;
mod serializer;

pub use ast::*;
pub use lexer::{tokenize, LexError, Token, TokenKind};
pub use parser::{parse_ontology, parse_str, Mode, ParseError, ParseErrorKind, Parsed, Warning};
pub use serializer::serialize;

/// 1-based line and column (in characters) of a position in the source.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Location {
    pub line: u32,
    pub column: u32,
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}
