use serde::Serialize;

use super::{
    explain, CheckConfig, Clash, ClashDetails, Closure, ConstraintRef, Lint, LintOptions, ProofTree,
};
use crate::kb::{Fact, KnowledgeBase, Requirement, Trigger};
use crate::render::Renderer;

/// `member(<i>, <C>)`, `edge(<p>, <s>, <o>)` or `data(<d>, <s>, "lex"^^<dt>)`.
pub fn fact_line(kb: &KnowledgeBase, f: &Fact) -> String {
    Renderer::full().fact(kb, f)
}

/// All closure facts, one per line, sorted bytewise.
pub fn export_facts(kb: &KnowledgeBase, closure: &Closure) -> String {
    let mut lines: Vec<String> = closure.facts().map(|f| fact_line(kb, f)).collect();
    lines.sort();
    let mut out = String::new();
    for l in lines {
        out.push_str(&l);
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ReportStats {
    pub asserted: usize,
    pub derived: usize,
    pub classes: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProofJson {
    pub fact: String,
    pub rule: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub premises: Vec<ProofJson>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq, PartialOrd, Ord)]
pub struct ClashJson {
    pub kind: &'static str,
    pub individual: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub properties: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub property: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    pub proofs: Vec<ProofJson>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq, PartialOrd, Ord)]
pub struct LintJson {
    pub kind: &'static str,
    pub individual: String,
    pub constraint: String,
    pub required: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub have: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub need: Option<u32>,
}

/// Validation report with a fixed key order.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Report {
    pub clashes: Vec<ClashJson>,
    pub lints: Vec<LintJson>,
    pub stats: ReportStats,
}

fn proof_json(kb: &KnowledgeBase, r: &Renderer, t: &ProofTree) -> ProofJson {
    ProofJson {
        fact: r.fact(kb, &t.fact),
        rule: t.rule.map_or("ASSERTED".to_string(), |x| x.name().to_string()),
        premises: t.children.iter().map(|c| proof_json(kb, r, c)).collect(),
    }
}

fn clash_json(kb: &KnowledgeBase, closure: &Closure, r: &Renderer, c: &Clash) -> ClashJson {
    let mut j = ClashJson {
        kind: c.kind.name(),
        individual: r.term(kb, c.individual),
        classes: None,
        properties: None,
        values: None,
        property: None,
        max: None,
        count: None,
        proofs: c
            .facts
            .iter()
            .filter_map(|f| explain(closure, f).ok())
            .map(|t| proof_json(kb, r, &t))
            .collect(),
    };
    match c.details {
        ClashDetails::Classes { a, b } => j.classes = Some([r.term(kb, a), r.term(kb, b)]),
        ClashDetails::DataProperties { a, b, value_a, value_b } => {
            j.properties = Some([r.term(kb, a), r.term(kb, b)]);
            j.values = Some([r.literal(kb.literal(value_a)), r.literal(kb.literal(value_b))]);
        }
        ClashDetails::Cardinality { prop, max, count } => {
            j.property = Some(r.prop(kb, prop));
            j.max = Some(max);
            j.count = Some(count);
        }
    }
    j
}

fn requirement(kb: &KnowledgeBase, r: &Renderer, q: &Requirement) -> String {
    match *q {
        Requirement::Obj(p) => r.prop(kb, p),
        Requirement::Data(d) => r.term(kb, d),
    }
}

fn trigger(kb: &KnowledgeBase, r: &Renderer, t: &Trigger) -> String {
    match *t {
        Trigger::Class(c) => r.term(kb, c),
        Trigger::Obj(p) => format!("some {}", r.prop(kb, p)),
        Trigger::Data(d) => format!("some {}", r.term(kb, d)),
    }
}

fn lint_json(kb: &KnowledgeBase, r: &Renderer, l: &Lint) -> LintJson {
    let (constraint, required) = match &l.constraint {
        ConstraintRef::Participation(p) => {
            let req: Vec<String> = p.required.iter().map(|q| requirement(kb, r, q)).collect();
            let what = if req.len() == 1 { req[0].clone() } else { format!("one of {}", req.join(", ")) };
            (format!("{} requires {}", trigger(kb, r, &p.trigger), what), req)
        }
        ConstraintRef::Cardinality(c) => {
            let p = r.prop(kb, c.prop);
            (format!("{} requires at least {} {}", r.term(kb, c.class), c.n, p), vec![p])
        }
        ConstraintRef::RangeUnion(u) => {
            let cs: Vec<String> = u.classes.iter().map(|&c| r.term(kb, c)).collect();
            (format!("range of {} is one of {}", r.term(kb, u.prop), cs.join(", ")), cs)
        }
        ConstraintRef::OneToOne { prop } => {
            let p = r.term(kb, *prop);
            (format!("{p} is one-to-one"), vec![p])
        }
    };
    LintJson { kind: l.kind.name(), individual: r.term(kb, l.individual), constraint, required, have: l.have, need: l.need }
}

impl Report {
    pub fn build(
        kb: &KnowledgeBase,
        closure: &Closure,
        config: CheckConfig,
        options: &LintOptions,
        renderer: &Renderer,
    ) -> Report {
        let mut clashes: Vec<ClashJson> = super::check_consistency(kb, closure, config)
            .iter()
            .map(|c| clash_json(kb, closure, renderer, c))
            .collect();
        clashes.sort();
        let mut lints: Vec<LintJson> =
            super::lint_completeness(kb, closure, options).iter().map(|l| lint_json(kb, renderer, l)).collect();
        lints.sort();
        Report {
            clashes,
            lints,
            stats: ReportStats {
                asserted: closure.asserted_count(),
                derived: closure.derived_count(),
                classes: kb.counts().classes,
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
