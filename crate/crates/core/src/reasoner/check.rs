use std::collections::BTreeMap;

use super::{CheckConfig, Closure};
use crate::kb::{Bound, Fact, KnowledgeBase, LitId, PropRef, TermId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClashKind {
    DisjointClasses,
    DisjointDataProperties,
    MaxCardinality,
}

impl ClashKind {
    pub fn name(self) -> &'static str {
        match self {
            ClashKind::DisjointClasses => "disjoint-classes",
            ClashKind::DisjointDataProperties => "disjoint-data-properties",
            ClashKind::MaxCardinality => "max-cardinality",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClashDetails {
    Classes { a: TermId, b: TermId },
    DataProperties { a: TermId, b: TermId, value_a: LitId, value_b: LitId },
    Cardinality { prop: PropRef, max: u32, count: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Clash {
    pub kind: ClashKind,
    pub individual: TermId,
    pub details: ClashDetails,
    /// The closure facts that together contradict the TBox.
    pub facts: Vec<Fact>,
}

pub fn check_consistency(kb: &KnowledgeBase, closure: &Closure, config: CheckConfig) -> Vec<Clash> {
    let ix = &kb.index;
    let mut out = Vec::new();
    for &(a, b) in &ix.disjoint_classes {
        for &ind in closure.members(a) {
            if closure.is_member(ind, b) {
                out.push(Clash {
                    kind: ClashKind::DisjointClasses,
                    individual: ind,
                    details: ClashDetails::Classes { a, b },
                    facts: vec![Fact::Member { ind, class: a }, Fact::Member { ind, class: b }],
                });
            }
        }
    }
    for &(a, b) in &ix.disjoint_data {
        for (subj, la) in closure.data(a) {
            for lb in closure.values(b, subj) {
                if config.literals.matches(kb.literal(la), kb.literal(lb)) {
                    out.push(Clash {
                        kind: ClashKind::DisjointDataProperties,
                        individual: subj,
                        details: ClashDetails::DataProperties { a, b, value_a: la, value_b: lb },
                        facts: vec![Fact::Data { prop: a, subj, lit: la }, Fact::Data { prop: b, subj, lit: lb }],
                    });
                }
            }
        }
    }
    if config.una {
        // Tightest bound per (individual, property).
        let mut worst: BTreeMap<(TermId, PropRef), (u32, TermId)> = BTreeMap::new();
        for c in ix.cardinality.iter().filter(|c| c.bound == Bound::Max) {
            for &ind in closure.members(c.class) {
                if closure.successors(ind, c.prop).len() > c.n as usize {
                    let e = worst.entry((ind, c.prop)).or_insert((c.n, c.class));
                    if (c.n, c.class) < *e {
                        *e = (c.n, c.class);
                    }
                }
            }
        }
        for ((ind, prop), (max, class)) in worst {
            let succ = closure.successors(ind, prop);
            let mut facts = vec![Fact::Member { ind, class }];
            facts.extend(succ.iter().map(|&o| {
                if prop.inverse {
                    Fact::Edge { prop: prop.prop, subj: o, obj: ind }
                } else {
                    Fact::Edge { prop: prop.prop, subj: ind, obj: o }
                }
            }));
            out.push(Clash {
                kind: ClashKind::MaxCardinality,
                individual: ind,
                details: ClashDetails::Cardinality { prop, max, count: succ.len() },
                facts,
            });
        }
    }
    out.sort();
    out
}
