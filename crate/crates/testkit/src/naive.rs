//! Closure by applying every axiom to every fact until nothing changes.
//! Facts are plain IRIs and literals; output lines use the fact-export format.

use std::collections::BTreeSet;

use modeus_core::iri::escape_string;
use modeus_core::ofs::{AxiomKind, ClassExpression, Ontology, PropertyExpression};
use modeus_core::{Iri, Literal};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum NFact {
    Member(Iri, Iri),
    Edge(Iri, Iri, Iri),
    Data(Iri, Iri, Literal),
}

impl NFact {
    pub fn line(&self) -> String {
        match self {
            NFact::Member(i, c) => format!("member(<{}>, <{}>)", i.as_str(), c.as_str()),
            NFact::Edge(p, s, o) => format!("edge(<{}>, <{}>, <{}>)", p.as_str(), s.as_str(), o.as_str()),
            NFact::Data(d, s, l) => format!(
                "data(<{}>, <{}>, \"{}\"^^<{}>)",
                d.as_str(),
                s.as_str(),
                escape_string(&l.lexical),
                l.datatype.as_str()
            ),
        }
    }
}

pub fn asserted(onts: &[Ontology]) -> BTreeSet<NFact> {
    let mut out = BTreeSet::new();
    for o in onts {
        for a in &o.axioms {
            match &a.kind {
                AxiomKind::ClassAssertion(ClassExpression::Named(c), i) => {
                    out.insert(NFact::Member(i.clone(), c.clone()));
                }
                AxiomKind::ObjectPropertyAssertion(p, s, x) => {
                    out.insert(NFact::Edge(p.clone(), s.clone(), x.clone()));
                }
                AxiomKind::DataPropertyAssertion(d, s, l) => {
                    out.insert(NFact::Data(d.clone(), s.clone(), l.clone()));
                }
                _ => {}
            }
        }
    }
    out
}

fn pairs(facts: &BTreeSet<NFact>, pe: &PropertyExpression) -> Vec<(Iri, Iri)> {
    facts
        .iter()
        .filter_map(|f| match f {
            NFact::Edge(p, s, o) if p == pe.iri() => {
                Some(if pe.is_inverse() { (o.clone(), s.clone()) } else { (s.clone(), o.clone()) })
            }
            _ => None,
        })
        .collect()
}

/// Individuals that satisfy `ce` in a way the rules can detect.
fn satisfying(facts: &BTreeSet<NFact>, ce: &ClassExpression) -> Vec<Iri> {
    match ce {
        ClassExpression::Named(c) => facts
            .iter()
            .filter_map(|f| match f {
                NFact::Member(i, k) if k == c => Some(i.clone()),
                _ => None,
            })
            .collect(),
        ClassExpression::Union(xs) => xs.iter().flat_map(|x| satisfying(facts, x)).collect(),
        ClassExpression::SomeValues(p, f) if **f == ClassExpression::Thing => {
            pairs(facts, p).into_iter().map(|(s, _)| s).collect()
        }
        ClassExpression::DataSomeValues { property, .. } => facts
            .iter()
            .filter_map(|f| match f {
                NFact::Data(d, s, _) if d == property => Some(s.clone()),
                _ => None,
            })
            .collect(),
        _ => Vec::new(),
    }
}

fn conclusions(ce: &ClassExpression, out: &mut Vec<Iri>) {
    match ce {
        ClassExpression::Named(c) => out.push(c.clone()),
        ClassExpression::Intersection(xs) => xs.iter().for_each(|x| conclusions(x, out)),
        _ => {}
    }
}

fn apply(ax: &AxiomKind, facts: &BTreeSet<NFact>, new: &mut Vec<NFact>) {
    let incl = |x: &ClassExpression, y: &ClassExpression, new: &mut Vec<NFact>| {
        let mut cs = Vec::new();
        conclusions(y, &mut cs);
        for i in satisfying(facts, x) {
            for c in &cs {
                new.push(NFact::Member(i.clone(), c.clone()));
            }
        }
    };
    match ax {
        AxiomKind::SubClassOf(x, y) => incl(x, y, new),
        AxiomKind::EquivalentClasses(xs) => {
            for (i, x) in xs.iter().enumerate() {
                for (j, y) in xs.iter().enumerate() {
                    if i != j {
                        incl(x, y, new);
                    }
                }
            }
        }
        AxiomKind::ObjectPropertyDomain(p, ce) | AxiomKind::ObjectPropertyRange(p, ce) => {
            let range = matches!(ax, AxiomKind::ObjectPropertyRange(..));
            let mut cs = Vec::new();
            conclusions(ce, &mut cs);
            for (s, o) in pairs(facts, &PropertyExpression::Named(p.clone())) {
                for c in &cs {
                    new.push(NFact::Member(if range { o.clone() } else { s.clone() }, c.clone()));
                }
            }
        }
        AxiomKind::DataPropertyDomain(d, ce) => {
            let mut cs = Vec::new();
            conclusions(ce, &mut cs);
            for f in facts {
                if let NFact::Data(e, s, _) = f {
                    if e == d {
                        for c in &cs {
                            new.push(NFact::Member(s.clone(), c.clone()));
                        }
                    }
                }
            }
        }
        AxiomKind::SubObjectPropertyOf(a, b) => {
            for (x, y) in pairs(facts, a) {
                new.push(match b {
                    PropertyExpression::Named(q) => NFact::Edge(q.clone(), x, y),
                    PropertyExpression::InverseOf(q) => NFact::Edge(q.clone(), y, x),
                });
            }
        }
        AxiomKind::SubDataPropertyOf(a, b) => copy_data(facts, a, b, new),
        AxiomKind::EquivalentDataProperties(xs) => {
            for a in xs {
                for b in xs {
                    if a != b {
                        copy_data(facts, a, b, new);
                    }
                }
            }
        }
        _ => {}
    }
}

fn copy_data(facts: &BTreeSet<NFact>, from: &Iri, to: &Iri, new: &mut Vec<NFact>) {
    for f in facts {
        if let NFact::Data(d, s, l) = f {
            if d == from {
                new.push(NFact::Data(to.clone(), s.clone(), l.clone()));
            }
        }
    }
}

pub fn closure(onts: &[Ontology]) -> BTreeSet<NFact> {
    closure_from(onts, asserted(onts))
}

pub fn closure_from(onts: &[Ontology], mut facts: BTreeSet<NFact>) -> BTreeSet<NFact> {
    loop {
        let mut new = Vec::new();
        for o in onts {
            for a in &o.axioms {
                apply(&a.kind, &facts, &mut new);
            }
        }
        let before = facts.len();
        facts.extend(new);
        if facts.len() == before {
            return facts;
        }
    }
}

pub fn lines(facts: &BTreeSet<NFact>) -> Vec<String> {
    let mut v: Vec<String> = facts.iter().map(NFact::line).collect();
    v.sort();
    v
}
