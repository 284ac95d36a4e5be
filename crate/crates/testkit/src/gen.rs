//! Random ontologies and queries. Everything is driven by a seeded `StdRng`
//! so failures reproduce from the seed alone.

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use modeus_core::iri::{RDFS_LITERAL, XSD, XSD_INTEGER, XSD_STRING};
use modeus_core::ofs::{AxiomKind, ClassExpression as CE, EntityKind, Ontology, PropertyExpression as PE};
use modeus_core::sparql::{Predicate, Query, TermPattern, TriplePattern};
use modeus_core::{Iri, Literal};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

const NAMESPACES: [(&str, &str); 4] = [
    ("", "http://example.org/onto#"),
    ("ex", "http://example.org/other/"),
    ("città", "http://example.org/città#"),
    ("a.b", "http://example.org/dotted#"),
];

const LOCALS: [&str; 12] = [
    "A", "Bee", "persona_R", "Unità", "x-1", "über", "née", "part_5", "Q", "long_name_with_parts", "zz", "c3",
];

const LEXICALS: [&str; 10] = ["", "plain", "with space", "quote\"in", "back\\slash", "Città di Tivoli", "ASR, Roma", "42", "tab\there", "ünïcødé"];

fn fuzz_iri(rng: &mut StdRng) -> Iri {
    match rng.gen_range(0..10) {
        // not covered by any declared prefix
        0 => Iri::new(format!("http://elsewhere.net/{}/{}", rng.gen_range(0..5), LOCALS.choose(rng).unwrap())),
        // covered by a prefix but the local part cannot be written as a name
        1 => Iri::new(format!("{}has/slash{}", NAMESPACES[rng.gen_range(0..NAMESPACES.len())].1, rng.gen_range(0..3))),
        _ => {
            let (_, ns) = NAMESPACES[rng.gen_range(0..NAMESPACES.len())];
            Iri::new(format!("{ns}{}", LOCALS.choose(rng).unwrap()))
        }
    }
}

fn fuzz_prop(rng: &mut StdRng) -> PE {
    if rng.gen_bool(0.3) {
        PE::InverseOf(fuzz_iri(rng))
    } else {
        PE::Named(fuzz_iri(rng))
    }
}

fn fuzz_class(rng: &mut StdRng, depth: u32) -> CE {
    let leaf = depth == 0 || rng.gen_bool(0.4);
    let pick = if leaf { rng.gen_range(0..5) } else { rng.gen_range(0..8) };
    match pick {
        0 | 1 => CE::Named(fuzz_iri(rng)),
        2 => CE::Thing,
        3 => CE::DataSomeValues {
            property: fuzz_iri(rng),
            range: if rng.gen_bool(0.5) { Iri::new(RDFS_LITERAL) } else { Iri::new(format!("{XSD}int")) },
        },
        4 => {
            let n = rng.gen_range(0..5);
            if rng.gen_bool(0.5) {
                CE::MinCard(n, fuzz_prop(rng))
            } else {
                CE::MaxCard(n, fuzz_prop(rng))
            }
        }
        5 => CE::Union(fuzz_classes(rng, depth - 1)),
        6 => CE::Intersection(fuzz_classes(rng, depth - 1)),
        _ => CE::SomeValues(fuzz_prop(rng), Box::new(fuzz_class(rng, depth - 1))),
    }
}

fn fuzz_classes(rng: &mut StdRng, depth: u32) -> Vec<CE> {
    (0..rng.gen_range(2..4)).map(|_| fuzz_class(rng, depth)).collect()
}

fn fuzz_literal(rng: &mut StdRng) -> Literal {
    let dt = match rng.gen_range(0..4) {
        0 => Iri::new(RDFS_LITERAL),
        1 => Iri::new(XSD_INTEGER),
        2 => fuzz_iri(rng),
        _ => Iri::new(XSD_STRING),
    };
    Literal::new(*LEXICALS.choose(rng).unwrap(), dt)
}

fn fuzz_axiom(rng: &mut StdRng) -> AxiomKind {
    let d = rng.gen_range(0..5);
    match rng.gen_range(0..14) {
        0 => {
            let kind = *[EntityKind::Class, EntityKind::ObjectProperty, EntityKind::DataProperty, EntityKind::NamedIndividual]
                .choose(rng)
                .unwrap();
            AxiomKind::Declaration(kind, fuzz_iri(rng))
        }
        1 => AxiomKind::SubClassOf(fuzz_class(rng, d), fuzz_class(rng, d)),
        2 => AxiomKind::EquivalentClasses(fuzz_classes(rng, d)),
        3 => AxiomKind::DisjointClasses(fuzz_classes(rng, d)),
        4 => AxiomKind::SubObjectPropertyOf(fuzz_prop(rng), fuzz_prop(rng)),
        5 => AxiomKind::ObjectPropertyDomain(fuzz_iri(rng), fuzz_class(rng, d)),
        6 => AxiomKind::ObjectPropertyRange(fuzz_iri(rng), fuzz_class(rng, d)),
        7 => AxiomKind::SubDataPropertyOf(fuzz_iri(rng), fuzz_iri(rng)),
        8 => AxiomKind::EquivalentDataProperties((0..rng.gen_range(2..4)).map(|_| fuzz_iri(rng)).collect()),
        9 => AxiomKind::DisjointDataProperties((0..rng.gen_range(2..4)).map(|_| fuzz_iri(rng)).collect()),
        10 => AxiomKind::DataPropertyDomain(fuzz_iri(rng), fuzz_class(rng, d)),
        11 => AxiomKind::ClassAssertion(fuzz_class(rng, d), fuzz_iri(rng)),
        12 => AxiomKind::ObjectPropertyAssertion(fuzz_iri(rng), fuzz_iri(rng), fuzz_iri(rng)),
        _ => AxiomKind::DataPropertyAssertion(fuzz_iri(rng), fuzz_iri(rng), fuzz_literal(rng)),
    }
}

/// A syntactically varied ontology over every supported construct. Not meant
/// to be sensible, only to exercise the parser and serializer.
pub fn fuzz_ontology(rng: &mut StdRng) -> Ontology {
    let iri = rng.gen_bool(0.8).then(|| Iri::new(format!("http://example.org/o{}", rng.gen_range(0..100))));
    let mut o = Ontology::new(iri);
    for (label, ns) in NAMESPACES {
        if rng.gen_bool(0.7) {
            o.prefixes.insert(label, ns);
        }
    }
    if rng.gen_bool(0.3) {
        o.prefixes.insert("xsd", XSD);
    }
    for _ in 0..rng.gen_range(0..40) {
        o.push(fuzz_axiom(rng));
    }
    o
}

pub fn arb_ontology() -> impl Strategy<Value = Ontology> {
    any::<u64>().prop_map(|s| fuzz_ontology(&mut rng(s)))
}

/// Size limits for [`small_kb`].
#[derive(Clone, Copy, Debug)]
pub struct Sizes {
    pub classes: usize,
    pub object_properties: usize,
    pub data_properties: usize,
    pub individuals: usize,
    pub tbox_axioms: usize,
    pub abox_axioms: usize,
}

impl Default for Sizes {
    fn default() -> Self {
        Sizes { classes: 12, object_properties: 5, data_properties: 3, individuals: 20, tbox_axioms: 25, abox_axioms: 30 }
    }
}

impl Sizes {
    pub fn tiny() -> Self {
        Sizes { classes: 4, object_properties: 2, data_properties: 2, individuals: 4, tbox_axioms: 6, abox_axioms: 12 }
    }
}

pub const NS: &str = "http://example.org/kb#";

pub fn term(kind: char, n: usize) -> Iri {
    Iri::new(format!("{NS}{kind}{n}"))
}

/// Vocabulary of a generated KB.
#[derive(Clone, Debug)]
pub struct Vocab {
    pub classes: Vec<Iri>,
    pub object_properties: Vec<Iri>,
    pub data_properties: Vec<Iri>,
    pub individuals: Vec<Iri>,
    pub lexicals: Vec<&'static str>,
}

impl Vocab {
    fn new(rng: &mut StdRng, s: Sizes) -> Self {
        let n = |rng: &mut StdRng, max: usize| rng.gen_range(1..=max.max(1));
        Vocab {
            classes: (0..n(rng, s.classes)).map(|i| term('C', i)).collect(),
            object_properties: (0..n(rng, s.object_properties)).map(|i| term('p', i)).collect(),
            data_properties: (0..n(rng, s.data_properties)).map(|i| term('d', i)).collect(),
            individuals: (0..n(rng, s.individuals)).map(|i| term('i', i)).collect(),
            lexicals: vec!["a", "b", "7"],
        }
    }

    fn class(&self, rng: &mut StdRng) -> CE {
        CE::Named(self.classes.choose(rng).unwrap().clone())
    }

    fn prop(&self, rng: &mut StdRng) -> PE {
        let p = self.object_properties.choose(rng).unwrap().clone();
        if rng.gen_bool(0.25) {
            PE::InverseOf(p)
        } else {
            PE::Named(p)
        }
    }

    fn some(&self, rng: &mut StdRng) -> CE {
        if rng.gen_bool(0.7) {
            CE::SomeValues(self.prop(rng), Box::new(CE::Thing))
        } else {
            CE::DataSomeValues { property: self.data(rng), range: Iri::new(RDFS_LITERAL) }
        }
    }

    fn data(&self, rng: &mut StdRng) -> Iri {
        self.data_properties.choose(rng).unwrap().clone()
    }

    fn ind(&self, rng: &mut StdRng) -> Iri {
        self.individuals.choose(rng).unwrap().clone()
    }

    fn literal(&self, rng: &mut StdRng) -> Literal {
        let dt = match rng.gen_range(0..3) {
            0 => RDFS_LITERAL,
            1 => XSD_STRING,
            _ => XSD_INTEGER,
        };
        Literal::new(*self.lexicals.choose(rng).unwrap(), Iri::new(dt))
    }

    fn tbox_axiom(&self, rng: &mut StdRng) -> AxiomKind {
        match rng.gen_range(0..16) {
            0..=3 => AxiomKind::SubClassOf(self.class(rng), self.class(rng)),
            4 => AxiomKind::SubClassOf(CE::Union(vec![self.class(rng), self.class(rng)]), self.class(rng)),
            5 => AxiomKind::SubClassOf(self.class(rng), CE::Intersection(vec![self.class(rng), self.some(rng)])),
            6 => AxiomKind::SubClassOf(self.class(rng), CE::Union(vec![self.some(rng), self.some(rng)])),
            7 => {
                let p = self.prop(rng);
                let n = rng.gen_range(0..3);
                AxiomKind::SubClassOf(self.class(rng), CE::Intersection(vec![CE::MinCard(n, p.clone()), CE::MaxCard(n + rng.gen_range(0..2), p)]))
            }
            8 => AxiomKind::EquivalentClasses(vec![self.class(rng), if rng.gen_bool(0.5) { self.class(rng) } else { self.some(rng) }]),
            9 => {
                let other = if rng.gen_bool(0.5) { self.class(rng) } else { self.some(rng) };
                AxiomKind::EquivalentClasses(vec![CE::Union(vec![self.class(rng), self.class(rng)]), other])
            }
            10 => AxiomKind::DisjointClasses(vec![self.class(rng), self.class(rng)]),
            11 => AxiomKind::SubObjectPropertyOf(self.prop(rng), self.prop(rng)),
            12 => {
                let p = self.object_properties.choose(rng).unwrap().clone();
                if rng.gen_bool(0.5) {
                    AxiomKind::ObjectPropertyDomain(p, self.class(rng))
                } else if rng.gen_bool(0.7) {
                    AxiomKind::ObjectPropertyRange(p, self.class(rng))
                } else {
                    AxiomKind::ObjectPropertyRange(p, CE::Union(vec![self.class(rng), self.class(rng)]))
                }
            }
            13 => AxiomKind::DataPropertyDomain(self.data(rng), self.class(rng)),
            14 => {
                if rng.gen_bool(0.5) {
                    AxiomKind::SubDataPropertyOf(self.data(rng), self.data(rng))
                } else {
                    AxiomKind::EquivalentDataProperties(vec![self.data(rng), self.data(rng)])
                }
            }
            _ => AxiomKind::DisjointDataProperties(vec![self.data(rng), self.data(rng)]),
        }
    }

    pub fn abox_axiom(&self, rng: &mut StdRng) -> AxiomKind {
        match rng.gen_range(0..3) {
            0 => AxiomKind::ClassAssertion(self.class(rng), self.ind(rng)),
            1 => AxiomKind::ObjectPropertyAssertion(
                self.object_properties.choose(rng).unwrap().clone(),
                self.ind(rng),
                self.ind(rng),
            ),
            _ => AxiomKind::DataPropertyAssertion(self.data(rng), self.ind(rng), self.literal(rng)),
        }
    }
}

/// A generated knowledge base split into terminology and assertions.
#[derive(Clone, Debug)]
pub struct SmallKb {
    pub vocab: Vocab,
    pub tbox: Ontology,
    pub abox: Ontology,
}

impl SmallKb {
    pub fn ontologies(&self) -> Vec<Ontology> {
        vec![self.tbox.clone(), self.abox.clone()]
    }
}

pub fn small_kb(rng: &mut StdRng, sizes: Sizes) -> SmallKb {
    let vocab = Vocab::new(rng, sizes);
    let mut tbox = Ontology::new(Some(Iri::new("http://example.org/kb")));
    tbox.prefixes.insert("", NS);
    for c in &vocab.classes {
        tbox.push(AxiomKind::Declaration(EntityKind::Class, c.clone()));
    }
    for p in &vocab.object_properties {
        tbox.push(AxiomKind::Declaration(EntityKind::ObjectProperty, p.clone()));
    }
    for d in &vocab.data_properties {
        tbox.push(AxiomKind::Declaration(EntityKind::DataProperty, d.clone()));
    }
    for _ in 0..rng.gen_range(0..=sizes.tbox_axioms) {
        tbox.push(vocab.tbox_axiom(rng));
    }
    let mut abox = Ontology::new(Some(Iri::new("http://example.org/kb/data")));
    abox.prefixes.insert("", NS);
    for i in &vocab.individuals {
        abox.push(AxiomKind::Declaration(EntityKind::NamedIndividual, i.clone()));
    }
    for _ in 0..rng.gen_range(0..=sizes.abox_axioms) {
        abox.push(vocab.abox_axiom(rng));
    }
    SmallKb { vocab, tbox, abox }
}

/// A basic graph pattern over the KB vocabulary with one to three patterns.
pub fn random_query(rng: &mut StdRng, vocab: &Vocab) -> Query {
    let vars = ["x", "y", "z"];
    let mut prefixes = modeus_core::iri::PrefixMap::new();
    prefixes.insert("", NS);
    let node = |rng: &mut StdRng| -> TermPattern {
        if rng.gen_bool(0.75) {
            TermPattern::Var(vars.choose(rng).unwrap().to_string())
        } else {
            TermPattern::Iri(vocab.ind(rng))
        }
    };
    let mut patterns = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let subject = node(rng);
        let (predicate, object) = match rng.gen_range(0..3) {
            0 => (
                Predicate::Type,
                if rng.gen_bool(0.8) {
                    TermPattern::Iri(vocab.classes.choose(rng).unwrap().clone())
                } else {
                    node(rng)
                },
            ),
            1 => (Predicate::Iri(vocab.object_properties.choose(rng).unwrap().clone()), node(rng)),
            _ => (
                Predicate::Iri(vocab.data(rng)),
                if rng.gen_bool(0.5) {
                    TermPattern::Literal(vocab.literal(rng))
                } else {
                    TermPattern::Var(vars.choose(rng).unwrap().to_string())
                },
            ),
        };
        patterns.push(TriplePattern { subject, predicate, object });
    }
    let mut used: Vec<String> = Vec::new();
    for p in &patterns {
        for t in [&p.subject, &p.object] {
            if let TermPattern::Var(v) = t {
                if !used.contains(v) {
                    used.push(v.clone());
                }
            }
        }
    }
    let select = if used.is_empty() {
        // every query needs a variable; fall back to a type pattern
        patterns.push(TriplePattern {
            subject: TermPattern::Var("x".into()),
            predicate: Predicate::Type,
            object: TermPattern::Iri(vocab.classes[0].clone()),
        });
        vec!["x".to_string()]
    } else {
        let k = rng.gen_range(1..=used.len());
        used.shuffle(rng);
        used.truncate(k);
        used
    };
    Query { prefixes, select, patterns }
}

/// Renders a query as text so it can go through the parser too.
pub fn query_text(q: &Query) -> String {
    let term = |t: &TermPattern| match t {
        TermPattern::Var(v) => format!("?{v}"),
        TermPattern::Iri(i) => format!("<{}>", i.as_str()),
        TermPattern::Literal(l) => l.to_ntriples(),
    };
    let mut out = String::new();
    out.push_str("SELECT ");
    out.push_str(&q.select.iter().map(|v| format!("?{v}")).collect::<Vec<_>>().join(" "));
    out.push_str(" WHERE {\n");
    for p in &q.patterns {
        let pred = match &p.predicate {
            Predicate::Type => "a".to_string(),
            Predicate::Iri(i) => format!("<{}>", i.as_str()),
        };
        out.push_str(&format!("  {} {} {} .\n", term(&p.subject), pred, term(&p.object)));
    }
    out.push_str("}\n");
    out
}
