//! Horn materialization, consistency checking, completeness lints and proofs.

mod check;
mod classify;
mod closure;
mod explain;
mod export;
mod lint;
mod rules;

use serde::Serialize;

pub use check::{check_consistency, Clash, ClashDetails, ClashKind};
pub use classify::{classify, Subsumption};
pub use closure::{materialize, materialize_from, unreasoned, Closure, FactId, Support};
pub use explain::{explain, ExplainError, ProofTree};
pub use export::{export_facts, fact_line, Report, ReportStats};
pub use lint::{lint_completeness, ConstraintRef, Lint, LintKind, LintOptions};
pub use rules::fire;

use crate::iri::Literal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RuleId {
    #[serde(rename = "R-SUB")]
    Sub,
    #[serde(rename = "R-DOM")]
    Dom,
    #[serde(rename = "R-RNG")]
    Rng,
    #[serde(rename = "R-INV")]
    Inv,
    #[serde(rename = "R-SPO")]
    Spo,
    #[serde(rename = "R-SOME")]
    Some,
    #[serde(rename = "R-EQD")]
    Eqd,
    #[serde(rename = "R-UNI")]
    Uni,
}

impl RuleId {
    pub const ALL: [RuleId; 8] =
        [RuleId::Sub, RuleId::Dom, RuleId::Rng, RuleId::Inv, RuleId::Spo, RuleId::Some, RuleId::Eqd, RuleId::Uni];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::Sub => "R-SUB",
            RuleId::Dom => "R-DOM",
            RuleId::Rng => "R-RNG",
            RuleId::Inv => "R-INV",
            RuleId::Spo => "R-SPO",
            RuleId::Some => "R-SOME",
            RuleId::Eqd => "R-EQD",
            RuleId::Uni => "R-UNI",
        }
    }
}

impl std::fmt::Display for RuleId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// How literals in different datatypes compare.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LiteralMatching {
    /// An `rdfs:Literal`-typed literal equals any literal with the same lexical form.
    #[default]
    Plain,
    /// Lexical form and datatype must both be identical.
    Strict,
}

impl LiteralMatching {
    pub fn matches(self, a: &Literal, b: &Literal) -> bool {
        if a.lexical != b.lexical {
            return false;
        }
        a.datatype == b.datatype
            || (self == LiteralMatching::Plain && (a.datatype.is_rdfs_literal() || b.datatype.is_rdfs_literal()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    /// Distinct IRIs denote distinct individuals.
    pub una: bool,
    pub literals: LiteralMatching,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { una: true, literals: LiteralMatching::Plain }
    }
}
