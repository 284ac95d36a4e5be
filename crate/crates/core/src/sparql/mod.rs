//! SELECT queries over basic graph patterns: PREFIX, SELECT, WHERE and
//! `.`-separated triple patterns with constant predicates.

mod eval;
mod parser;

pub use eval::{evaluate, evaluate_with_reasoning_flag, BindingSet, Term};
pub use parser::{parse_query, Predicate, Query, QueryError, TermPattern, TriplePattern};
