use std::collections::{BTreeMap, BTreeSet};

use super::Closure;
use crate::kb::{Bound, Cardinality, KnowledgeBase, Participation, PropRef, RangeUnion, Requirement, TermId, Trigger};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LintKind {
    MissingMandatoryObjectParticipation,
    MissingMandatoryDataProperty,
    AtLeastOneOfUnsatisfied,
    ExactCardinalityShortfall,
    RangeUnionUntyped,
    OneToOneViolated,
}

impl LintKind {
    pub fn name(self) -> &'static str {
        match self {
            LintKind::MissingMandatoryObjectParticipation => "missing-mandatory-object-participation",
            LintKind::MissingMandatoryDataProperty => "missing-mandatory-data-property",
            LintKind::AtLeastOneOfUnsatisfied => "at-least-one-of-unsatisfied",
            LintKind::ExactCardinalityShortfall => "exact-cardinality-shortfall",
            LintKind::RangeUnionUntyped => "range-union-untyped",
            LintKind::OneToOneViolated => "one-to-one-violated",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ConstraintRef {
    Participation(Participation),
    Cardinality(Cardinality),
    RangeUnion(RangeUnion),
    /// Subjects and objects of `prop` pair up one to one.
    OneToOne { prop: TermId },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Lint {
    pub kind: LintKind,
    pub individual: TermId,
    pub constraint: ConstraintRef,
    pub have: Option<usize>,
    pub need: Option<u32>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LintOptions {
    /// Properties checked by the optional one-to-one rule. Empty by default.
    pub one_to_one: Vec<TermId>,
}

fn holds(closure: &Closure, ind: TermId, r: Requirement) -> bool {
    match r {
        Requirement::Obj(p) => !closure.successors(ind, p).is_empty(),
        Requirement::Data(d) => closure.values(d, ind).next().is_some(),
    }
}

fn triggered(closure: &Closure, t: Trigger) -> BTreeSet<TermId> {
    match t {
        Trigger::Class(c) => closure.members(c).clone(),
        Trigger::Obj(p) => closure.subjects(p),
        Trigger::Data(d) => closure.data(d).map(|(s, _)| s).collect(),
    }
}

/// Closed-world completeness gaps. One lint per (individual, unmet
/// requirement), citing the first constraint that demands it.
pub fn lint_completeness(kb: &KnowledgeBase, closure: &Closure, options: &LintOptions) -> Vec<Lint> {
    let ix = &kb.index;
    let mut gaps: BTreeMap<(TermId, Vec<Requirement>), &Participation> = BTreeMap::new();
    for p in &ix.participation {
        for ind in triggered(closure, p.trigger) {
            if !p.required.iter().any(|&r| holds(closure, ind, r)) {
                gaps.entry((ind, p.required.clone())).or_insert(p);
            }
        }
    }
    let mut out: Vec<Lint> = gaps
        .into_iter()
        .map(|((ind, required), p)| Lint {
            kind: match required.as_slice() {
                [Requirement::Obj(_)] => LintKind::MissingMandatoryObjectParticipation,
                [Requirement::Data(_)] => LintKind::MissingMandatoryDataProperty,
                _ => LintKind::AtLeastOneOfUnsatisfied,
            },
            individual: ind,
            constraint: ConstraintRef::Participation(p.clone()),
            have: None,
            need: None,
        })
        .collect();

    let mut short: BTreeMap<(TermId, PropRef), &Cardinality> = BTreeMap::new();
    for c in ix.cardinality.iter().filter(|c| c.bound == Bound::Min) {
        for &ind in closure.members(c.class) {
            if closure.successors(ind, c.prop).len() < c.n as usize {
                let e = short.entry((ind, c.prop)).or_insert(c);
                if c.n > e.n {
                    *e = c;
                }
            }
        }
    }
    for ((ind, prop), c) in short {
        out.push(Lint {
            kind: LintKind::ExactCardinalityShortfall,
            individual: ind,
            constraint: ConstraintRef::Cardinality(*c),
            have: Some(closure.successors(ind, prop).len()),
            need: Some(c.n),
        });
    }

    for ru in &ix.range_unions {
        let objects: BTreeSet<TermId> = closure.edges(ru.prop).map(|(_, o)| o).collect();
        for o in objects {
            if !ru.classes.iter().any(|&c| closure.is_member(o, c)) {
                out.push(Lint {
                    kind: LintKind::RangeUnionUntyped,
                    individual: o,
                    constraint: ConstraintRef::RangeUnion(ru.clone()),
                    have: None,
                    need: None,
                });
            }
        }
    }

    for &prop in &options.one_to_one {
        for inverse in [false, true] {
            let p = PropRef { prop, inverse };
            for ind in closure.subjects(p) {
                let n = closure.successors(ind, p).len();
                if n > 1 {
                    out.push(Lint {
                        kind: LintKind::OneToOneViolated,
                        individual: ind,
                        constraint: ConstraintRef::OneToOne { prop },
                        have: Some(n),
                        need: Some(1),
                    });
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}
