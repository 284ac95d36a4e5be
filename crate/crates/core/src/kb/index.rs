use std::collections::{BTreeMap, BTreeSet};

use super::terms::{TermId, TermTable};
use crate::iri::Iri;
use crate::ofs::{AxiomKind, ClassExpression, PropertyExpression};

/// A property used forwards or backwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PropRef {
    pub prop: TermId,
    pub inverse: bool,
}

/// What makes a constraint apply to an individual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Trigger {
    Class(TermId),
    /// The individual has an edge along the property (or is the target of one
    /// when inverse).
    Obj(PropRef),
    Data(TermId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Requirement {
    Obj(PropRef),
    Data(TermId),
}

/// The individual must satisfy at least one of `required`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Participation {
    pub trigger: Trigger,
    pub required: Vec<Requirement>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    Min,
    Max,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cardinality {
    pub class: TermId,
    pub prop: PropRef,
    pub bound: Bound,
    pub n: u32,
}

/// Objects of `prop` edges should belong to one of `classes`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RangeUnion {
    pub prop: TermId,
    pub classes: Vec<TermId>,
}

/// Lookup structures derived from the axiom set alone.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Indices {
    /// Named subclass edges from SubClassOf and named EquivalentClasses pairs,
    /// including union-LHS flattening of SubClassOf.
    pub sub: BTreeMap<TermId, BTreeSet<TermId>>,
    /// Union member to union class, from EquivalentClasses(C, Union(...)).
    pub uni: BTreeMap<TermId, BTreeSet<TermId>>,
    pub equivalence_groups: Vec<BTreeSet<TermId>>,
    pub domain: BTreeMap<TermId, BTreeSet<TermId>>,
    pub range: BTreeMap<TermId, BTreeSet<TermId>>,
    /// Existential pattern to the class it implies.
    pub some_obj: BTreeMap<PropRef, BTreeSet<TermId>>,
    pub some_data: BTreeMap<TermId, BTreeSet<TermId>>,
    /// p to (q, flipped): p(x, y) implies q(x, y), or q(y, x) when flipped.
    pub sub_obj: BTreeMap<TermId, BTreeSet<(TermId, bool)>>,
    pub sub_data: BTreeMap<TermId, BTreeSet<TermId>>,
    pub equiv_data: BTreeMap<TermId, BTreeSet<TermId>>,
    pub disjoint_sets: Vec<Vec<TermId>>,
    pub disjoint_classes: BTreeSet<(TermId, TermId)>,
    pub disjoint_data: BTreeSet<(TermId, TermId)>,
    pub cardinality: BTreeSet<Cardinality>,
    pub participation: BTreeSet<Participation>,
    pub range_unions: BTreeSet<RangeUnion>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Origin {
    SubClass,
    Equivalent { lhs_union: bool },
    Domain,
    Range,
}

impl Indices {
    /// Every IRI in `axioms` must already be interned in `terms`.
    pub fn build(axioms: &[AxiomKind], terms: &TermTable) -> Indices {
        let mut b = Builder { terms, ix: Indices::default() };
        for a in axioms {
            b.axiom(a);
        }
        b.ix
    }
}

struct Builder<'a> {
    terms: &'a TermTable,
    ix: Indices,
}

fn pattern(ce: &ClassExpression) -> bool {
    matches!(ce, ClassExpression::SomeValues(..) | ClassExpression::DataSomeValues { .. })
}

impl Builder<'_> {
    fn id(&self, iri: &Iri) -> TermId {
        self.terms.get(iri).expect("IRI interned before indexing")
    }

    fn pref(&self, pe: &PropertyExpression) -> PropRef {
        PropRef { prop: self.id(pe.iri()), inverse: pe.is_inverse() }
    }

    fn axiom(&mut self, a: &AxiomKind) {
        match a {
            AxiomKind::SubClassOf(x, y) => {
                let t = self.triggers(x);
                self.inclusion(&t, y, Origin::SubClass, true);
            }
            AxiomKind::EquivalentClasses(xs) => {
                let named: BTreeSet<TermId> = xs.iter().filter_map(|x| x.named()).map(|i| self.id(i)).collect();
                if named.len() >= 2 {
                    self.ix.equivalence_groups.push(named.clone());
                }
                let has_named = !named.is_empty();
                for (i, x) in xs.iter().enumerate() {
                    let t = self.triggers(x);
                    let origin = Origin::Equivalent { lhs_union: matches!(x, ClassExpression::Union(_)) };
                    for (j, y) in xs.iter().enumerate() {
                        if i != j {
                            // With a named member present, expression-to-expression
                            // requirements already follow through the named class.
                            let constraints = !(has_named && x.named().is_none() && y.named().is_none());
                            self.inclusion(&t, y, origin, constraints);
                        }
                    }
                }
            }
            AxiomKind::DisjointClasses(xs) => {
                let mut set: Vec<TermId> = xs.iter().filter_map(|x| x.named()).map(|i| self.id(i)).collect();
                set.sort();
                set.dedup();
                for (i, &a) in set.iter().enumerate() {
                    for &b in &set[i + 1..] {
                        self.ix.disjoint_classes.insert((a, b));
                    }
                }
                if set.len() >= 2 && !self.ix.disjoint_sets.contains(&set) {
                    self.ix.disjoint_sets.push(set);
                }
            }
            AxiomKind::SubObjectPropertyOf(p, q) => {
                let (p, q) = (self.pref(p), self.pref(q));
                self.ix.sub_obj.entry(p.prop).or_default().insert((q.prop, p.inverse != q.inverse));
            }
            AxiomKind::ObjectPropertyDomain(p, ce) => {
                let t = [Trigger::Obj(PropRef { prop: self.id(p), inverse: false })];
                self.inclusion(&t, ce, Origin::Domain, true);
            }
            AxiomKind::ObjectPropertyRange(p, ce) => {
                let t = [Trigger::Obj(PropRef { prop: self.id(p), inverse: true })];
                self.inclusion(&t, ce, Origin::Range, true);
            }
            AxiomKind::DataPropertyDomain(d, ce) => {
                let t = [Trigger::Data(self.id(d))];
                self.inclusion(&t, ce, Origin::Domain, true);
            }
            AxiomKind::SubDataPropertyOf(a, b) => {
                let (a, b) = (self.id(a), self.id(b));
                self.ix.sub_data.entry(a).or_default().insert(b);
            }
            AxiomKind::EquivalentDataProperties(xs) => {
                let ids: Vec<TermId> = xs.iter().map(|x| self.id(x)).collect();
                for &a in &ids {
                    for &b in &ids {
                        if a != b {
                            self.ix.equiv_data.entry(a).or_default().insert(b);
                        }
                    }
                }
            }
            AxiomKind::DisjointDataProperties(xs) => {
                let mut ids: Vec<TermId> = xs.iter().map(|x| self.id(x)).collect();
                ids.sort();
                ids.dedup();
                for (i, &a) in ids.iter().enumerate() {
                    for &b in &ids[i + 1..] {
                        self.ix.disjoint_data.insert((a, b));
                    }
                }
            }
            AxiomKind::Declaration(..)
            | AxiomKind::ClassAssertion(..)
            | AxiomKind::ObjectPropertyAssertion(..)
            | AxiomKind::DataPropertyAssertion(..) => {}
        }
    }

    /// Ways an individual can come to satisfy `ce` through the Horn rules.
    fn triggers(&self, ce: &ClassExpression) -> Vec<Trigger> {
        match ce {
            ClassExpression::Named(i) => vec![Trigger::Class(self.id(i))],
            ClassExpression::Union(xs) => xs.iter().flat_map(|x| self.triggers(x)).collect(),
            ClassExpression::SomeValues(p, f) if **f == ClassExpression::Thing => vec![Trigger::Obj(self.pref(p))],
            ClassExpression::DataSomeValues { property, .. } => vec![Trigger::Data(self.id(property))],
            _ => Vec::new(),
        }
    }

    fn requirement(&self, ce: &ClassExpression) -> Option<Requirement> {
        match ce {
            ClassExpression::SomeValues(p, _) => Some(Requirement::Obj(self.pref(p))),
            ClassExpression::DataSomeValues { property, .. } => Some(Requirement::Data(self.id(property))),
            _ => None,
        }
    }

    fn inclusion(&mut self, triggers: &[Trigger], rhs: &ClassExpression, origin: Origin, constraints: bool) {
        match rhs {
            ClassExpression::Named(d) => {
                let d = self.id(d);
                for &t in triggers {
                    match (t, origin) {
                        (Trigger::Class(c), Origin::Equivalent { lhs_union: true }) => {
                            self.ix.uni.entry(c).or_default().insert(d);
                        }
                        (Trigger::Class(c), _) => {
                            if c != d {
                                self.ix.sub.entry(c).or_default().insert(d);
                            }
                        }
                        (Trigger::Obj(p), Origin::Domain) | (Trigger::Obj(p), Origin::Range) => {
                            let map = if p.inverse { &mut self.ix.range } else { &mut self.ix.domain };
                            map.entry(p.prop).or_default().insert(d);
                        }
                        (Trigger::Obj(p), _) => {
                            self.ix.some_obj.entry(p).or_default().insert(d);
                        }
                        (Trigger::Data(p), Origin::Domain) => {
                            self.ix.domain.entry(p).or_default().insert(d);
                        }
                        (Trigger::Data(p), _) => {
                            self.ix.some_data.entry(p).or_default().insert(d);
                        }
                    }
                }
            }
            ClassExpression::Thing => {}
            ClassExpression::Intersection(xs) => {
                for x in xs {
                    self.inclusion(triggers, x, origin, constraints);
                }
            }
            ClassExpression::SomeValues(..) | ClassExpression::DataSomeValues { .. } if constraints => {
                let r = self.requirement(rhs).expect("existential pattern");
                for &t in triggers {
                    self.ix.participation.insert(Participation { trigger: t, required: vec![r] });
                }
            }
            ClassExpression::Union(xs) if constraints && xs.iter().all(pattern) => {
                let mut required: Vec<Requirement> = xs.iter().filter_map(|x| self.requirement(x)).collect();
                required.sort();
                required.dedup();
                for &t in triggers {
                    self.ix.participation.insert(Participation { trigger: t, required: required.clone() });
                }
            }
            ClassExpression::Union(xs) if origin == Origin::Range && xs.iter().all(|x| x.named().is_some()) => {
                let mut classes: Vec<TermId> = xs.iter().filter_map(|x| x.named()).map(|i| self.id(i)).collect();
                classes.sort();
                classes.dedup();
                for &t in triggers {
                    if let Trigger::Obj(p) = t {
                        self.ix.range_unions.insert(RangeUnion { prop: p.prop, classes: classes.clone() });
                    }
                }
            }
            ClassExpression::MinCard(n, p) | ClassExpression::MaxCard(n, p) if constraints => {
                let bound = if matches!(rhs, ClassExpression::MinCard(..)) { Bound::Min } else { Bound::Max };
                let prop = self.pref(p);
                for &t in triggers {
                    if let Trigger::Class(class) = t {
                        self.ix.cardinality.insert(Cardinality { class, prop, bound, n: *n });
                    }
                }
            }
            _ => {}
        }
    }
}
