//! Knowledge base for the cadastral archive model: functional-syntax parsing,
//! indexed TBox/ABox storage, Horn materialization with proofs, consistency
//! checks, completeness lints and a small SPARQL subset.

pub mod corpus;
pub mod iri;
pub mod kb;
pub mod ofs;
pub mod reasoner;
pub mod render;
pub mod sparql;

pub use iri::{Iri, Literal};
pub use kb::{Fact, KnowledgeBase, TermId};
pub use reasoner::{Closure, LiteralMatching, RuleId};
