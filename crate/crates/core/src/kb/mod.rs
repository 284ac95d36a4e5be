//! Merged, deduplicated and indexed TBox + ABox.

mod fact;
mod index;
mod syntax;
mod terms;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use thiserror::Error;

pub use fact::Fact;
pub use index::{Bound, Cardinality, Indices, Participation, PropRef, RangeUnion, Requirement, Trigger};
pub use syntax::{parse_fact_pattern, FactPattern, FactSyntaxError};
pub use terms::{Handle, Interner, LitId, LiteralTable, TermId, TermTable};

use crate::iri::{Iri, Literal, PrefixMap};
use crate::ofs::{AxiomKind, ClassExpression, EntityKind, Location, Ontology, PropertyExpression};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum KbError {
    #[error("{loc}: ClassAssertion with a complex class expression is not supported")]
    ComplexClassAssertion { loc: Location },
    #[error("{iri} is declared both as an object property and as a data property")]
    ConflictingDeclaration { iri: Iri },
    #[error("unknown term id {0}")]
    UnknownTerm(u32),
}

#[derive(Clone, Debug)]
pub struct KnowledgeBase {
    pub ontology_iris: Vec<Iri>,
    /// Prefix bindings of all loaded ontologies; the first binding of a label wins.
    pub prefixes: PrefixMap,
    pub terms: TermTable,
    pub literals: LiteralTable,
    /// Distinct axioms in first-seen order.
    pub axioms: Vec<AxiomKind>,
    pub declared: BTreeMap<EntityKind, BTreeSet<TermId>>,
    pub index: Indices,
    /// Sorted, distinct.
    pub asserted: Vec<Fact>,
}

fn visit_prop(p: &PropertyExpression, f: &mut impl FnMut(&Iri)) {
    f(p.iri());
}

fn visit_class(ce: &ClassExpression, f: &mut impl FnMut(&Iri)) {
    match ce {
        ClassExpression::Named(i) => f(i),
        ClassExpression::Thing => {}
        ClassExpression::Union(xs) | ClassExpression::Intersection(xs) => xs.iter().for_each(|x| visit_class(x, f)),
        ClassExpression::SomeValues(p, c) => {
            visit_prop(p, f);
            visit_class(c, f);
        }
        ClassExpression::DataSomeValues { property, range } => {
            f(property);
            f(range);
        }
        ClassExpression::MinCard(_, p) | ClassExpression::MaxCard(_, p) => visit_prop(p, f),
    }
}

/// Calls `f` on every IRI mentioned by the axiom, in source order.
pub fn visit_iris(a: &AxiomKind, f: &mut impl FnMut(&Iri)) {
    match a {
        AxiomKind::Declaration(_, i) => f(i),
        AxiomKind::SubClassOf(x, y) => {
            visit_class(x, f);
            visit_class(y, f);
        }
        AxiomKind::EquivalentClasses(xs) | AxiomKind::DisjointClasses(xs) => xs.iter().for_each(|x| visit_class(x, f)),
        AxiomKind::SubObjectPropertyOf(p, q) => {
            visit_prop(p, f);
            visit_prop(q, f);
        }
        AxiomKind::ObjectPropertyDomain(p, c) | AxiomKind::ObjectPropertyRange(p, c) | AxiomKind::DataPropertyDomain(p, c) => {
            f(p);
            visit_class(c, f);
        }
        AxiomKind::SubDataPropertyOf(a, b) => {
            f(a);
            f(b);
        }
        AxiomKind::EquivalentDataProperties(xs) | AxiomKind::DisjointDataProperties(xs) => xs.iter().for_each(&mut *f),
        AxiomKind::ClassAssertion(c, i) => {
            visit_class(c, f);
            f(i);
        }
        AxiomKind::ObjectPropertyAssertion(p, s, o) => {
            f(p);
            f(s);
            f(o);
        }
        AxiomKind::DataPropertyAssertion(d, s, l) => {
            f(d);
            f(s);
            f(&l.datatype);
        }
    }
}

pub fn build_kb(ontologies: &[Ontology]) -> Result<KnowledgeBase, KbError> {
    let mut prefixes = PrefixMap::new();
    let mut ontology_iris = Vec::new();
    let mut seen = HashSet::new();
    let mut axioms = Vec::new();
    for o in ontologies {
        for (l, ns) in o.prefixes.iter() {
            prefixes.insert_if_absent(l, ns);
        }
        if let Some(iri) = &o.iri {
            if !ontology_iris.contains(iri) {
                ontology_iris.push(iri.clone());
            }
        }
        for a in &o.axioms {
            if let AxiomKind::ClassAssertion(ce, _) = &a.kind {
                if !matches!(ce, ClassExpression::Named(_) | ClassExpression::Thing) {
                    return Err(KbError::ComplexClassAssertion { loc: a.loc });
                }
            }
            if seen.insert(a.kind.clone()) {
                axioms.push(a.kind.clone());
            }
        }
    }
    KnowledgeBase::from_axioms(ontology_iris, prefixes, axioms)
}

impl KnowledgeBase {
    fn from_axioms(ontology_iris: Vec<Iri>, prefixes: PrefixMap, axioms: Vec<AxiomKind>) -> Result<Self, KbError> {
        let mut terms = TermTable::default();
        let mut literals = LiteralTable::default();
        for a in &axioms {
            visit_iris(a, &mut |i| {
                terms.intern(i);
            });
        }
        let mut declared: BTreeMap<EntityKind, BTreeSet<TermId>> = BTreeMap::new();
        let mut asserted = Vec::new();
        for a in &axioms {
            match a {
                AxiomKind::Declaration(k, i) => {
                    declared.entry(*k).or_default().insert(terms.intern(i));
                }
                AxiomKind::ClassAssertion(ClassExpression::Named(c), i) => {
                    asserted.push(Fact::Member { ind: terms.intern(i), class: terms.intern(c) });
                }
                AxiomKind::ObjectPropertyAssertion(p, s, o) => {
                    asserted.push(Fact::Edge { prop: terms.intern(p), subj: terms.intern(s), obj: terms.intern(o) });
                }
                AxiomKind::DataPropertyAssertion(d, s, l) => {
                    asserted.push(Fact::Data { prop: terms.intern(d), subj: terms.intern(s), lit: literals.intern(l) });
                }
                _ => {}
            }
        }
        if let (Some(op), Some(dp)) = (declared.get(&EntityKind::ObjectProperty), declared.get(&EntityKind::DataProperty)) {
            if let Some(t) = op.intersection(dp).next() {
                return Err(KbError::ConflictingDeclaration { iri: terms.resolve(*t).clone() });
            }
        }
        asserted.sort();
        asserted.dedup();
        let index = Indices::build(&axioms, &terms);
        Ok(KnowledgeBase { ontology_iris, prefixes, terms, literals, axioms, declared, index, asserted })
    }

    pub fn empty() -> Self {
        KnowledgeBase::from_axioms(Vec::new(), PrefixMap::new(), Vec::new()).expect("empty KB is valid")
    }

    pub fn id(&self, iri: &Iri) -> Option<TermId> {
        self.terms.get(iri)
    }

    pub fn iri(&self, t: TermId) -> &Iri {
        self.terms.resolve(t)
    }

    pub fn literal(&self, l: LitId) -> &Literal {
        self.literals.resolve(l)
    }

    pub fn declared(&self, kind: EntityKind) -> &BTreeSet<TermId> {
        static EMPTY: BTreeSet<TermId> = BTreeSet::new();
        self.declared.get(&kind).unwrap_or(&EMPTY)
    }

    /// Declared classes plus every class mentioned in a subclass, equivalence,
    /// assertion or typing position.
    pub fn classes(&self) -> BTreeSet<TermId> {
        let ix = &self.index;
        let mut out = self.declared(EntityKind::Class).clone();
        for (c, ds) in ix.sub.iter().chain(ix.uni.iter()) {
            out.insert(*c);
            out.extend(ds);
        }
        for ds in ix.domain.values().chain(ix.range.values()).chain(ix.some_obj.values()).chain(ix.some_data.values()) {
            out.extend(ds);
        }
        for g in &ix.equivalence_groups {
            out.extend(g);
        }
        for s in &ix.disjoint_sets {
            out.extend(s);
        }
        for f in &self.asserted {
            if let Fact::Member { class, .. } = f {
                out.insert(*class);
            }
        }
        out
    }

    /// Declared individuals plus every term in an individual position of an
    /// asserted fact.
    pub fn individuals(&self) -> BTreeSet<TermId> {
        let mut out = self.declared(EntityKind::NamedIndividual).clone();
        for f in &self.asserted {
            out.extend(f.individuals());
        }
        out
    }

    /// Named classes reached by one subclass or union-membership edge.
    pub fn direct_superclasses(&self, cls: TermId) -> Result<BTreeSet<TermId>, KbError> {
        if cls.index() >= self.terms.len() {
            return Err(KbError::UnknownTerm(cls.0));
        }
        let mut out = self.index.sub.get(&cls).cloned().unwrap_or_default();
        out.extend(self.index.uni.get(&cls).into_iter().flatten());
        Ok(out)
    }

    /// Constraints whose trigger is membership in `cls`.
    pub fn mandatory_participations(&self, cls: TermId) -> Vec<&Participation> {
        self.index.participation.iter().filter(|p| p.trigger == Trigger::Class(cls)).collect()
    }

    pub fn cardinalities(&self, cls: TermId) -> Vec<&Cardinality> {
        self.index.cardinality.iter().filter(|c| c.class == cls).collect()
    }

    /// Rebuilds the indices from the stored axioms.
    pub fn rebuild_indices(&self) -> Indices {
        Indices::build(&self.axioms, &self.terms)
    }

    pub fn counts(&self) -> EntityCounts {
        EntityCounts {
            axioms: self.axioms.len(),
            classes: self.declared(EntityKind::Class).len(),
            object_properties: self.declared(EntityKind::ObjectProperty).len(),
            data_properties: self.declared(EntityKind::DataProperty).len(),
            individuals: self.declared(EntityKind::NamedIndividual).len(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EntityCounts {
    pub axioms: usize,
    pub classes: usize,
    pub object_properties: usize,
    pub data_properties: usize,
    pub individuals: usize,
}
