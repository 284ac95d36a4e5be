//! Query answers by enumerating every assignment of variables to terms that
//! occur in the fact set.

use std::collections::BTreeSet;

use modeus_core::iri::RDFS_LITERAL;
use modeus_core::sparql::{Predicate, Query, TermPattern, TriplePattern};
use modeus_core::{Iri, Literal};

use crate::naive::NFact;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum OTerm {
    Iri(Iri),
    Lit(Literal),
}

impl OTerm {
    pub fn serialized(&self) -> String {
        match self {
            OTerm::Iri(i) => format!("<{}>", i.as_str()),
            OTerm::Lit(l) => l.to_ntriples(),
        }
    }
}

fn lit_eq(strict: bool, a: &Literal, b: &Literal) -> bool {
    if a.lexical != b.lexical {
        return false;
    }
    if a.datatype == b.datatype {
        return true;
    }
    !strict && (a.datatype.as_str() == RDFS_LITERAL || b.datatype.as_str() == RDFS_LITERAL)
}

fn universe(facts: &BTreeSet<NFact>) -> Vec<OTerm> {
    let mut u = BTreeSet::new();
    for f in facts {
        match f {
            NFact::Member(i, c) => {
                u.insert(OTerm::Iri(i.clone()));
                u.insert(OTerm::Iri(c.clone()));
            }
            NFact::Edge(_, s, o) => {
                u.insert(OTerm::Iri(s.clone()));
                u.insert(OTerm::Iri(o.clone()));
            }
            NFact::Data(_, s, l) => {
                u.insert(OTerm::Iri(s.clone()));
                u.insert(OTerm::Lit(l.clone()));
            }
        }
    }
    u.into_iter().collect()
}

fn var<'a>(v: &str, vars: &[String], asg: &'a [OTerm]) -> &'a OTerm {
    &asg[vars.iter().position(|x| x == v).expect("variable collected")]
}

fn holds(p: &TriplePattern, vars: &[String], asg: &[OTerm], facts: &BTreeSet<NFact>, strict: bool) -> bool {
    let subj = match &p.subject {
        TermPattern::Iri(i) => i.clone(),
        TermPattern::Var(v) => match var(v, vars, asg) {
            OTerm::Iri(i) => i.clone(),
            _ => return false,
        },
        TermPattern::Literal(_) => return false,
    };
    let (obj, constant): (Option<OTerm>, Option<&Literal>) = match &p.object {
        TermPattern::Iri(i) => (Some(OTerm::Iri(i.clone())), None),
        TermPattern::Literal(l) => (None, Some(l)),
        TermPattern::Var(v) => (Some(var(v, vars, asg).clone()), None),
    };
    match &p.predicate {
        Predicate::Type => match obj {
            Some(OTerm::Iri(c)) => facts.contains(&NFact::Member(subj, c)),
            _ => false,
        },
        Predicate::Iri(prop) => match (obj, constant) {
            (Some(OTerm::Iri(o)), _) => facts.contains(&NFact::Edge(prop.clone(), subj, o)),
            (Some(OTerm::Lit(l)), _) => facts.contains(&NFact::Data(prop.clone(), subj, l)),
            (None, Some(c)) => facts.iter().any(|f| match f {
                NFact::Data(d, s, l) => d == prop && *s == subj && lit_eq(strict, l, c),
                _ => false,
            }),
            (None, None) => false,
        },
    }
}

/// Sorted distinct rows of serialized terms, in SELECT order.
pub fn answers(query: &Query, facts: &BTreeSet<NFact>, strict_literals: bool) -> Vec<Vec<String>> {
    let mut vars: Vec<String> = Vec::new();
    for p in &query.patterns {
        for t in [&p.subject, &p.object] {
            if let TermPattern::Var(v) = t {
                if !vars.contains(v) {
                    vars.push(v.clone());
                }
            }
        }
    }
    let u = universe(facts);
    let mut rows = BTreeSet::new();
    let mut asg: Vec<OTerm> = Vec::with_capacity(vars.len());
    if vars.is_empty() || !u.is_empty() {
        enumerate(query, &vars, &u, facts, strict_literals, &mut asg, &mut rows);
    }
    let mut out: Vec<(String, Vec<String>)> = rows
        .into_iter()
        .map(|r: Vec<String>| (r.join("\t"), r))
        .collect();
    out.sort();
    out.dedup();
    out.into_iter().map(|(_, r)| r).collect()
}

fn enumerate(
    query: &Query,
    vars: &[String],
    u: &[OTerm],
    facts: &BTreeSet<NFact>,
    strict: bool,
    asg: &mut Vec<OTerm>,
    rows: &mut BTreeSet<Vec<String>>,
) {
    if asg.len() == vars.len() {
        if query.patterns.iter().all(|p| holds(p, vars, asg, facts, strict)) {
            let row = query
                .select
                .iter()
                .map(|v| var(v, vars, asg).serialized())
                .collect();
            rows.insert(row);
        }
        return;
    }
    for t in u {
        asg.push(t.clone());
        enumerate(query, vars, u, facts, strict, asg, rows);
        asg.pop();
    }
}
