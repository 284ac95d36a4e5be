//! Generators and reference implementations used only by tests. The oracles
//! work from the parsed syntax tree or raw text and never touch the indices
//! or closure machinery they are compared against.

pub mod gen;
pub mod matrix;
pub mod naive;
pub mod query;
pub mod tally;
