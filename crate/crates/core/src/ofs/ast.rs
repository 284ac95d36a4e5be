use super::Location;
use crate::iri::{Iri, Literal, PrefixMap};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropertyExpression {
    Named(Iri),
    InverseOf(Iri),
}

impl PropertyExpression {
    pub fn iri(&self) -> &Iri {
        match self {
            PropertyExpression::Named(i) | PropertyExpression::InverseOf(i) => i,
        }
    }

    pub fn is_inverse(&self) -> bool {
        matches!(self, PropertyExpression::InverseOf(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassExpression {
    Named(Iri),
    Thing,
    Union(Vec<ClassExpression>),
    Intersection(Vec<ClassExpression>),
    SomeValues(PropertyExpression, Box<ClassExpression>),
    DataSomeValues { property: Iri, range: Iri },
    MinCard(u32, PropertyExpression),
    MaxCard(u32, PropertyExpression),
}

impl ClassExpression {
    pub fn named(&self) -> Option<&Iri> {
        match self {
            ClassExpression::Named(i) => Some(i),
            _ => None,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            ClassExpression::Named(_)
            | ClassExpression::Thing
            | ClassExpression::DataSomeValues { .. }
            | ClassExpression::MinCard(..)
            | ClassExpression::MaxCard(..) => 1,
            ClassExpression::Union(xs) | ClassExpression::Intersection(xs) => {
                1 + xs.iter().map(|x| x.depth()).max().unwrap_or(0)
            }
            ClassExpression::SomeValues(_, f) => 1 + f.depth(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntityKind {
    Class,
    ObjectProperty,
    DataProperty,
    NamedIndividual,
}

impl EntityKind {
    pub fn keyword(self) -> &'static str {
        match self {
            EntityKind::Class => "Class",
            EntityKind::ObjectProperty => "ObjectProperty",
            EntityKind::DataProperty => "DataProperty",
            EntityKind::NamedIndividual => "NamedIndividual",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomKind {
    Declaration(EntityKind, Iri),
    SubClassOf(ClassExpression, ClassExpression),
    EquivalentClasses(Vec<ClassExpression>),
    DisjointClasses(Vec<ClassExpression>),
    SubObjectPropertyOf(PropertyExpression, PropertyExpression),
    ObjectPropertyDomain(Iri, ClassExpression),
    ObjectPropertyRange(Iri, ClassExpression),
    SubDataPropertyOf(Iri, Iri),
    EquivalentDataProperties(Vec<Iri>),
    DisjointDataProperties(Vec<Iri>),
    DataPropertyDomain(Iri, ClassExpression),
    ClassAssertion(ClassExpression, Iri),
    ObjectPropertyAssertion(Iri, Iri, Iri),
    DataPropertyAssertion(Iri, Iri, Literal),
}

impl AxiomKind {
    pub fn keyword(&self) -> &'static str {
        match self {
            AxiomKind::Declaration(..) => "Declaration",
            AxiomKind::SubClassOf(..) => "SubClassOf",
            AxiomKind::EquivalentClasses(..) => "EquivalentClasses",
            AxiomKind::DisjointClasses(..) => "DisjointClasses",
            AxiomKind::SubObjectPropertyOf(..) => "SubObjectPropertyOf",
            AxiomKind::ObjectPropertyDomain(..) => "ObjectPropertyDomain",
            AxiomKind::ObjectPropertyRange(..) => "ObjectPropertyRange",
            AxiomKind::SubDataPropertyOf(..) => "SubDataPropertyOf",
            AxiomKind::EquivalentDataProperties(..) => "EquivalentDataProperties",
            AxiomKind::DisjointDataProperties(..) => "DisjointDataProperties",
            AxiomKind::DataPropertyDomain(..) => "DataPropertyDomain",
            AxiomKind::ClassAssertion(..) => "ClassAssertion",
            AxiomKind::ObjectPropertyAssertion(..) => "ObjectPropertyAssertion",
            AxiomKind::DataPropertyAssertion(..) => "DataPropertyAssertion",
        }
    }

    pub const KEYWORDS: [&'static str; 14] = [
        "Declaration",
        "SubClassOf",
        "EquivalentClasses",
        "DisjointClasses",
        "SubObjectPropertyOf",
        "ObjectPropertyDomain",
        "ObjectPropertyRange",
        "SubDataPropertyOf",
        "EquivalentDataProperties",
        "DisjointDataProperties",
        "DataPropertyDomain",
        "ClassAssertion",
        "ObjectPropertyAssertion",
        "DataPropertyAssertion",
    ];
}

/// An axiom with the position of its head keyword. Equality ignores the
/// position so that re-parsed output compares equal to the original.
#[derive(Clone, Debug, Eq)]
pub struct Axiom {
    pub kind: AxiomKind,
    pub loc: Location,
}

impl PartialEq for Axiom {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl From<AxiomKind> for Axiom {
    fn from(kind: AxiomKind) -> Self {
        Axiom { kind, loc: Location::default() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ontology {
    pub iri: Option<Iri>,
    pub prefixes: PrefixMap,
    pub axioms: Vec<Axiom>,
}

impl Ontology {
    pub fn new(iri: Option<Iri>) -> Self {
        Ontology { iri, ..Default::default() }
    }

    pub fn push(&mut self, kind: AxiomKind) {
        self.axioms.push(kind.into());
    }
}
