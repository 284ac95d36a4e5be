use std::fmt::Write;

use super::ast::*;
use crate::iri::{escape_string, Iri, Literal, PrefixMap, OWL_THING};

/// Writes the ontology with one axiom per line, prefixes in declaration order
/// and prefixed names wherever a declared prefix covers the IRI.
pub fn serialize(ontology: &Ontology) -> String {
    let mut out = String::new();
    for (label, ns) in ontology.prefixes.iter() {
        let _ = writeln!(out, "Prefix({label}:=<{ns}>)");
    }
    out.push_str("Ontology(");
    if let Some(iri) = &ontology.iri {
        let _ = write!(out, "<{}>", iri.as_str());
    }
    out.push('\n');
    let w = Writer { prefixes: &ontology.prefixes };
    for a in &ontology.axioms {
        w.axiom(&mut out, &a.kind);
        out.push('\n');
    }
    out.push_str(")\n");
    out
}

struct Writer<'a> {
    prefixes: &'a PrefixMap,
}

impl Writer<'_> {
    fn iri(&self, out: &mut String, iri: &Iri) {
        match self.prefixes.abbreviate(iri.as_str()) {
            Some(short) => out.push_str(&short),
            None => {
                let _ = write!(out, "<{}>", iri.as_str());
            }
        }
    }

    fn literal(&self, out: &mut String, lit: &Literal) {
        let _ = write!(out, "\"{}\"^^", escape_string(&lit.lexical));
        self.iri(out, &lit.datatype);
    }

    fn prop(&self, out: &mut String, p: &PropertyExpression) {
        match p {
            PropertyExpression::Named(i) => self.iri(out, i),
            PropertyExpression::InverseOf(i) => {
                out.push_str("ObjectInverseOf(");
                self.iri(out, i);
                out.push(')');
            }
        }
    }

    fn class(&self, out: &mut String, ce: &ClassExpression) {
        match ce {
            ClassExpression::Named(i) => self.iri(out, i),
            ClassExpression::Thing => self.iri(out, &Iri::new(OWL_THING)),
            ClassExpression::Union(xs) => self.nary_class(out, "ObjectUnionOf", xs),
            ClassExpression::Intersection(xs) => self.nary_class(out, "ObjectIntersectionOf", xs),
            ClassExpression::SomeValues(p, f) => {
                out.push_str("ObjectSomeValuesFrom(");
                self.prop(out, p);
                out.push(' ');
                self.class(out, f);
                out.push(')');
            }
            ClassExpression::DataSomeValues { property, range } => {
                out.push_str("DataSomeValuesFrom(");
                self.iri(out, property);
                out.push(' ');
                self.iri(out, range);
                out.push(')');
            }
            ClassExpression::MinCard(n, p) | ClassExpression::MaxCard(n, p) => {
                let kw = if matches!(ce, ClassExpression::MinCard(..)) { "ObjectMinCardinality" } else { "ObjectMaxCardinality" };
                let _ = write!(out, "{kw}({n} ");
                self.prop(out, p);
                out.push(')');
            }
        }
    }

    fn nary_class(&self, out: &mut String, kw: &str, xs: &[ClassExpression]) {
        out.push_str(kw);
        out.push('(');
        for (i, x) in xs.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            self.class(out, x);
        }
        out.push(')');
    }

    fn iris(&self, out: &mut String, xs: &[Iri]) {
        for (i, x) in xs.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            self.iri(out, x);
        }
    }

    fn axiom(&self, out: &mut String, a: &AxiomKind) {
        out.push_str(a.keyword());
        out.push('(');
        match a {
            AxiomKind::Declaration(k, i) => {
                out.push_str(k.keyword());
                out.push('(');
                self.iri(out, i);
                out.push(')');
            }
            AxiomKind::SubClassOf(x, y) => {
                self.class(out, x);
                out.push(' ');
                self.class(out, y);
            }
            AxiomKind::EquivalentClasses(xs) | AxiomKind::DisjointClasses(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    self.class(out, x);
                }
            }
            AxiomKind::SubObjectPropertyOf(p, q) => {
                self.prop(out, p);
                out.push(' ');
                self.prop(out, q);
            }
            AxiomKind::ObjectPropertyDomain(p, c) | AxiomKind::ObjectPropertyRange(p, c) | AxiomKind::DataPropertyDomain(p, c) => {
                self.iri(out, p);
                out.push(' ');
                self.class(out, c);
            }
            AxiomKind::SubDataPropertyOf(a, b) => self.iris(out, &[a.clone(), b.clone()]),
            AxiomKind::EquivalentDataProperties(xs) | AxiomKind::DisjointDataProperties(xs) => self.iris(out, xs),
            AxiomKind::ClassAssertion(c, i) => {
                self.class(out, c);
                out.push(' ');
                self.iri(out, i);
            }
            AxiomKind::ObjectPropertyAssertion(p, s, o) => self.iris(out, &[p.clone(), s.clone(), o.clone()]),
            AxiomKind::DataPropertyAssertion(d, s, l) => {
                self.iris(out, &[d.clone(), s.clone()]);
                out.push(' ');
                self.literal(out, l);
            }
        }
        out.push(')');
    }
}
