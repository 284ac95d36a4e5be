use thiserror::Error;

use super::ast::*;
use super::lexer::{tokenize, LexError, Token, TokenKind};
use super::Location;
use crate::iri::{Iri, Literal, PrefixMap, OWL, RDF, RDFS, XSD, XSD_STRING};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    #[default]
    Strict,
    /// Unknown axiom heads and constructs are skipped with a warning.
    Lax,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lex,
    UnknownPrefix,
    UnbalancedParens,
    UnknownAxiom,
    UnknownConstruct,
    Arity,
    Unexpected,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{loc}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub loc: Location,
    pub message: String,
}

impl From<LexError> for ParseError {
    fn from(e: LexError) -> Self {
        ParseError { kind: ParseErrorKind::Lex, loc: e.location(), message: e.message() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Warning {
    pub loc: Location,
    pub message: String,
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.loc, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed {
    pub ontology: Ontology,
    pub warnings: Vec<Warning>,
}

/// Tokenizes and parses in one step.
pub fn parse_str(source: &str, mode: Mode) -> Result<Parsed, ParseError> {
    parse_ontology(&tokenize(source)?, mode)
}

/// Parses a token stream. Accepts a full document (`Prefix(...)*
/// Ontology(...)`) or a bare sequence of axioms. The owl, rdf, rdfs and xsd
/// prefixes resolve even when undeclared.
pub fn parse_ontology(tokens: &[Token], mode: Mode) -> Result<Parsed, ParseError> {
    let tokens: Vec<&Token> = tokens.iter().filter(|t| t.kind != TokenKind::Comment).collect();
    let mut resolve = PrefixMap::new();
    for (l, ns) in [("owl", OWL), ("rdf", RDF), ("rdfs", RDFS), ("xsd", XSD)] {
        resolve.insert(l, ns);
    }
    let mut p = Parser { tokens, pos: 0, mode, resolve, open: Vec::new(), warnings: Vec::new() };
    let ontology = p.document()?;
    Ok(Parsed { ontology, warnings: p.warnings })
}

struct Parser<'a> {
    tokens: Vec<&'a Token>,
    pos: usize,
    mode: Mode,
    resolve: PrefixMap,
    /// Locations of currently unmatched `(`.
    open: Vec<Location>,
    warnings: Vec<Warning>,
}

type PResult<T> = Result<T, ParseError>;

fn err(kind: ParseErrorKind, loc: Location, message: impl Into<String>) -> ParseError {
    ParseError { kind, loc, message: message.into() }
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos).copied()
    }

    fn next(&mut self) -> PResult<&'a Token> {
        match self.peek() {
            Some(t) => {
                self.pos += 1;
                Ok(t)
            }
            None => Err(self.eof_error()),
        }
    }

    fn eof_error(&self) -> ParseError {
        let loc = self.open.last().copied().unwrap_or(Location { line: 1, column: 1 });
        err(ParseErrorKind::UnbalancedParens, loc, "unbalanced parentheses")
    }

    fn expect_open(&mut self) -> PResult<()> {
        let t = self.next()?;
        if !t.is_punct("(") {
            return Err(err(ParseErrorKind::Unexpected, t.loc, format!("expected '(' but found {:?}", t.lexeme)));
        }
        self.open.push(t.loc);
        Ok(())
    }

    fn expect_close(&mut self) -> PResult<()> {
        let t = self.next()?;
        if !t.is_punct(")") {
            return Err(err(ParseErrorKind::Unexpected, t.loc, format!("expected ')' but found {:?}", t.lexeme)));
        }
        self.open.pop();
        Ok(())
    }

    fn at_close(&self) -> bool {
        self.peek().is_some_and(|t| t.is_punct(")"))
    }

    fn document(&mut self) -> PResult<Ontology> {
        let mut ont = Ontology::default();
        while self.peek().is_some_and(|t| t.kind == TokenKind::Keyword && t.lexeme == "Prefix") {
            let (label, ns) = self.prefix_decl()?;
            self.resolve.insert(label.clone(), ns.clone());
            ont.prefixes.insert(label, ns);
        }
        match self.peek() {
            Some(t) if t.kind == TokenKind::Keyword && t.lexeme == "Ontology" => {
                self.pos += 1;
                self.expect_open()?;
                if self.peek().is_some_and(|t| t.kind == TokenKind::FullIri) {
                    ont.iri = Some(self.iri()?);
                }
                while !self.at_close() {
                    if self.peek().is_none() {
                        return Err(self.eof_error());
                    }
                    if let Some(a) = self.axiom()? {
                        ont.axioms.push(a);
                    }
                }
                self.expect_close()?;
                if let Some(t) = self.peek() {
                    let kind = if t.is_punct(")") { ParseErrorKind::UnbalancedParens } else { ParseErrorKind::Unexpected };
                    return Err(err(kind, t.loc, format!("unexpected {:?} after the ontology", t.lexeme)));
                }
            }
            _ => {
                while let Some(t) = self.peek() {
                    if t.is_punct(")") {
                        return Err(err(ParseErrorKind::UnbalancedParens, t.loc, "unbalanced parentheses"));
                    }
                    if let Some(a) = self.axiom()? {
                        ont.axioms.push(a);
                    }
                }
            }
        }
        Ok(ont)
    }

    fn prefix_decl(&mut self) -> PResult<(String, String)> {
        self.pos += 1;
        self.expect_open()?;
        let t = self.next()?;
        let label = match t.kind {
            TokenKind::PrefixedName if t.lexeme.ends_with(':') && t.lexeme.matches(':').count() == 1 => {
                t.lexeme[..t.lexeme.len() - 1].to_string()
            }
            _ if t.is_punct("=") => {
                // `Prefix(=<...>)`: the empty label written without its colon.
                self.pos -= 1;
                String::new()
            }
            _ => return Err(err(ParseErrorKind::Unexpected, t.loc, format!("expected a prefix label, found {:?}", t.lexeme))),
        };
        let eq = self.next()?;
        if !eq.is_punct("=") {
            return Err(err(ParseErrorKind::Unexpected, eq.loc, "expected '=' in prefix declaration"));
        }
        let ns = self.next()?;
        if ns.kind != TokenKind::FullIri {
            return Err(err(ParseErrorKind::Unexpected, ns.loc, "expected a full IRI in prefix declaration"));
        }
        self.expect_close()?;
        Ok((label, ns.lexeme[1..ns.lexeme.len() - 1].to_string()))
    }

    /// Returns `None` for an axiom skipped in lax mode.
    fn axiom(&mut self) -> PResult<Option<Axiom>> {
        let start = self.pos;
        let depth = self.open.len();
        match self.axiom_inner() {
            Ok(a) => Ok(Some(a)),
            Err(e)
                if self.mode == Mode::Lax
                    && matches!(e.kind, ParseErrorKind::UnknownAxiom | ParseErrorKind::UnknownConstruct) =>
            {
                self.pos = start;
                self.open.truncate(depth);
                self.skip_axiom()?;
                self.warnings.push(Warning { loc: e.loc, message: format!("skipped: {}", e.message) });
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }

    fn skip_axiom(&mut self) -> PResult<()> {
        let head = self.next()?;
        if head.kind != TokenKind::Keyword {
            return Err(err(ParseErrorKind::Unexpected, head.loc, format!("expected an axiom, found {:?}", head.lexeme)));
        }
        self.expect_open()?;
        let base = self.open.len();
        while self.open.len() >= base {
            let t = self.next()?;
            if t.is_punct("(") {
                self.open.push(t.loc);
            } else if t.is_punct(")") {
                self.open.pop();
            }
        }
        Ok(())
    }

    fn axiom_inner(&mut self) -> PResult<Axiom> {
        let head = self.next()?;
        if head.kind != TokenKind::Keyword {
            return Err(err(ParseErrorKind::Unexpected, head.loc, format!("expected an axiom, found {:?}", head.lexeme)));
        }
        let loc = head.loc;
        if !AxiomKind::KEYWORDS.contains(&head.lexeme.as_str()) {
            return Err(err(ParseErrorKind::UnknownAxiom, loc, format!("unknown axiom {:?}", head.lexeme)));
        }
        self.expect_open()?;
        let kind = match head.lexeme.as_str() {
            "Declaration" => {
                let k = self.next()?;
                let kind = match (k.kind, k.lexeme.as_str()) {
                    (TokenKind::Keyword, "Class") => EntityKind::Class,
                    (TokenKind::Keyword, "ObjectProperty") => EntityKind::ObjectProperty,
                    (TokenKind::Keyword, "DataProperty") => EntityKind::DataProperty,
                    (TokenKind::Keyword, "NamedIndividual") => EntityKind::NamedIndividual,
                    _ => {
                        return Err(err(ParseErrorKind::UnknownConstruct, k.loc, format!("unsupported declaration {:?}", k.lexeme)))
                    }
                };
                self.expect_open()?;
                let iri = self.iri()?;
                self.expect_close()?;
                AxiomKind::Declaration(kind, iri)
            }
            "SubClassOf" => {
                let a = self.class_expr()?;
                let b = self.class_expr()?;
                AxiomKind::SubClassOf(a, b)
            }
            "EquivalentClasses" => AxiomKind::EquivalentClasses(self.class_list(loc, "EquivalentClasses")?),
            "DisjointClasses" => AxiomKind::DisjointClasses(self.class_list(loc, "DisjointClasses")?),
            "SubObjectPropertyOf" => {
                let a = self.prop_expr()?;
                let b = self.prop_expr()?;
                AxiomKind::SubObjectPropertyOf(a, b)
            }
            "ObjectPropertyDomain" => {
                let p = self.iri()?;
                AxiomKind::ObjectPropertyDomain(p, self.class_expr()?)
            }
            "ObjectPropertyRange" => {
                let p = self.iri()?;
                AxiomKind::ObjectPropertyRange(p, self.class_expr()?)
            }
            "SubDataPropertyOf" => {
                let a = self.iri()?;
                AxiomKind::SubDataPropertyOf(a, self.iri()?)
            }
            "EquivalentDataProperties" => AxiomKind::EquivalentDataProperties(self.iri_list(loc, "EquivalentDataProperties")?),
            "DisjointDataProperties" => AxiomKind::DisjointDataProperties(self.iri_list(loc, "DisjointDataProperties")?),
            "DataPropertyDomain" => {
                let d = self.iri()?;
                AxiomKind::DataPropertyDomain(d, self.class_expr()?)
            }
            "ClassAssertion" => {
                let c = self.class_expr()?;
                AxiomKind::ClassAssertion(c, self.iri()?)
            }
            "ObjectPropertyAssertion" => {
                let p = self.iri()?;
                let s = self.iri()?;
                AxiomKind::ObjectPropertyAssertion(p, s, self.iri()?)
            }
            "DataPropertyAssertion" => {
                let d = self.iri()?;
                let s = self.iri()?;
                AxiomKind::DataPropertyAssertion(d, s, self.literal()?)
            }
            _ => unreachable!(),
        };
        self.expect_close()?;
        Ok(Axiom { kind, loc })
    }

    fn class_list(&mut self, loc: Location, what: &str) -> PResult<Vec<ClassExpression>> {
        let mut xs = Vec::new();
        while !self.at_close() {
            xs.push(self.class_expr()?);
        }
        if xs.len() < 2 {
            return Err(err(ParseErrorKind::Arity, loc, format!("{what} needs at least 2 operands, found {}", xs.len())));
        }
        Ok(xs)
    }

    fn iri_list(&mut self, loc: Location, what: &str) -> PResult<Vec<Iri>> {
        let mut xs = Vec::new();
        while !self.at_close() {
            xs.push(self.iri()?);
        }
        if xs.len() < 2 {
            return Err(err(ParseErrorKind::Arity, loc, format!("{what} needs at least 2 operands, found {}", xs.len())));
        }
        Ok(xs)
    }

    fn class_expr(&mut self) -> PResult<ClassExpression> {
        let t = self.peek().ok_or_else(|| self.eof_error())?;
        if t.kind != TokenKind::Keyword {
            let iri = self.iri()?;
            return Ok(if iri.is_owl_thing() { ClassExpression::Thing } else { ClassExpression::Named(iri) });
        }
        self.pos += 1;
        let loc = t.loc;
        let ce = match t.lexeme.as_str() {
            "ObjectUnionOf" => {
                self.expect_open()?;
                ClassExpression::Union(self.class_list(loc, "ObjectUnionOf")?)
            }
            "ObjectIntersectionOf" => {
                self.expect_open()?;
                ClassExpression::Intersection(self.class_list(loc, "ObjectIntersectionOf")?)
            }
            "ObjectSomeValuesFrom" => {
                self.expect_open()?;
                let p = self.prop_expr()?;
                ClassExpression::SomeValues(p, Box::new(self.class_expr()?))
            }
            "DataSomeValuesFrom" => {
                self.expect_open()?;
                let property = self.iri()?;
                ClassExpression::DataSomeValues { property, range: self.iri()? }
            }
            "ObjectMinCardinality" | "ObjectMaxCardinality" => {
                self.expect_open()?;
                let n = self.next()?;
                if n.kind != TokenKind::Integer {
                    return Err(err(ParseErrorKind::Unexpected, n.loc, "expected a cardinality"));
                }
                let k: u32 = n
                    .lexeme
                    .parse()
                    .map_err(|_| err(ParseErrorKind::Unexpected, n.loc, "cardinality out of range"))?;
                let p = self.prop_expr()?;
                if !self.at_close() {
                    let t = self.peek().ok_or_else(|| self.eof_error())?;
                    return Err(err(ParseErrorKind::UnknownConstruct, t.loc, "qualified cardinality is not supported"));
                }
                if t.lexeme == "ObjectMinCardinality" {
                    ClassExpression::MinCard(k, p)
                } else {
                    ClassExpression::MaxCard(k, p)
                }
            }
            other => {
                return Err(err(ParseErrorKind::UnknownConstruct, loc, format!("unsupported class expression {other:?}")))
            }
        };
        self.expect_close()?;
        Ok(ce)
    }

    fn prop_expr(&mut self) -> PResult<PropertyExpression> {
        let t = self.peek().ok_or_else(|| self.eof_error())?;
        if t.kind == TokenKind::Keyword {
            if t.lexeme != "ObjectInverseOf" {
                return Err(err(ParseErrorKind::UnknownConstruct, t.loc, format!("unsupported property expression {:?}", t.lexeme)));
            }
            self.pos += 1;
            self.expect_open()?;
            let iri = self.iri()?;
            self.expect_close()?;
            return Ok(PropertyExpression::InverseOf(iri));
        }
        Ok(PropertyExpression::Named(self.iri()?))
    }

    fn iri(&mut self) -> PResult<Iri> {
        let t = self.next()?;
        match t.kind {
            TokenKind::FullIri => Ok(Iri::new(&t.lexeme[1..t.lexeme.len() - 1])),
            TokenKind::PrefixedName => {
                let (label, local) = t.lexeme.split_once(':').expect("prefixed name has a colon");
                self.resolve
                    .expand(label, local)
                    .ok_or_else(|| err(ParseErrorKind::UnknownPrefix, t.loc, format!("unknown prefix {label:?}")))
            }
            _ if t.is_punct(")") => Err(err(ParseErrorKind::Arity, t.loc, "missing operand")),
            _ => Err(err(ParseErrorKind::Unexpected, t.loc, format!("expected an IRI, found {:?}", t.lexeme))),
        }
    }

    fn literal(&mut self) -> PResult<Literal> {
        let t = self.next()?;
        if t.kind != TokenKind::StringLiteral {
            return Err(err(ParseErrorKind::Unexpected, t.loc, format!("expected a literal, found {:?}", t.lexeme)));
        }
        let lexical = t.string_value();
        if self.peek().is_some_and(|t| t.kind == TokenKind::DatatypeMarker) {
            self.pos += 1;
            let dt = self.iri()?;
            Ok(Literal::new(lexical, dt))
        } else {
            Ok(Literal::new(lexical, Iri::new(XSD_STRING)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MODEUS: &str = "Prefix(modeus:=<http://modeus.uniroma1.it/ontology#>)\n";

    fn m(local: &str) -> Iri {
        Iri::new(format!("http://modeus.uniroma1.it/ontology#{local}"))
    }

    #[test]
    fn declaration() {
        let p = parse_str(&format!("{MODEUS}Declaration(Class(modeus:Acqua))"), Mode::Strict).unwrap();
        assert_eq!(p.ontology.axioms.len(), 1);
        assert_eq!(p.ontology.axioms[0].kind, AxiomKind::Declaration(EntityKind::Class, m("Acqua")));
    }

    #[test]
    fn prefixes_only() {
        let p = parse_str(&format!("{MODEUS}Ontology(<http://x>)"), Mode::Strict).unwrap();
        assert!(p.ontology.axioms.is_empty());
        assert_eq!(p.ontology.iri, Some(Iri::new("http://x")));
        assert_eq!(p.ontology.prefixes.len(), 1);
    }

    #[test]
    fn unbalanced() {
        let e = parse_str(&format!("{MODEUS}\nSubClassOf(modeus:A"), Mode::Strict).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnbalancedParens);
        assert_eq!(e.message, "unbalanced parentheses");
        assert_eq!(e.loc.line, 3);
        let e = parse_str("Ontology(<http://x>))", Mode::Strict).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnbalancedParens);
    }

    #[test]
    fn unknown_prefix() {
        let e = parse_str("Declaration(Class(foo:A))", Mode::Strict).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownPrefix);
        assert_eq!(e.loc, Location { line: 1, column: 19 });
    }

    #[test]
    fn arity() {
        let e = parse_str(&format!("{MODEUS}DisjointClasses(modeus:A)"), Mode::Strict).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Arity);
        let e = parse_str(&format!("{MODEUS}SubClassOf(modeus:A)"), Mode::Strict).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Arity);
    }

    #[test]
    fn lax_skips_unknown_heads() {
        let src = format!(
            "{MODEUS}Ontology(<http://x>\nAnnotationAssertion(rdfs:label modeus:A \"a\")\nTransitiveObjectProperty(ObjectInverseOf(modeus:p))\nDeclaration(Class(modeus:A))\n)"
        );
        assert_eq!(parse_str(&src, Mode::Strict).unwrap_err().kind, ParseErrorKind::UnknownAxiom);
        let p = parse_str(&src, Mode::Lax).unwrap();
        assert_eq!(p.ontology.axioms.len(), 1);
        assert_eq!(p.warnings.len(), 2);
        assert_eq!(p.warnings[0].loc.line, 3);
    }

    #[test]
    fn lax_skips_unknown_constructs() {
        let src = format!("{MODEUS}SubClassOf(modeus:A ObjectComplementOf(modeus:B))\nSubClassOf(modeus:A modeus:B)");
        assert_eq!(parse_str(&src, Mode::Strict).unwrap_err().kind, ParseErrorKind::UnknownConstruct);
        let p = parse_str(&src, Mode::Lax).unwrap();
        assert_eq!(p.ontology.axioms.len(), 1);
        assert_eq!(p.warnings.len(), 1);
    }

    #[test]
    fn mixed_iri_forms_resolve_equal() {
        let src = format!(
            "{MODEUS}ClassAssertion(<http://modeus.uniroma1.it/ontology#Mappa> modeus:mappa1)\nClassAssertion(modeus:Mappa <http://modeus.uniroma1.it/ontology#mappa1>)"
        );
        let p = parse_str(&src, Mode::Strict).unwrap();
        assert_eq!(p.ontology.axioms[0], p.ontology.axioms[1]);
    }

    #[test]
    fn nested_expressions() {
        let src = format!(
            "{MODEUS}SubClassOf(modeus:Mappa ObjectIntersectionOf(ObjectMinCardinality(3 modeus:r) ObjectMaxCardinality(3 modeus:r)))\n\
             EquivalentClasses(modeus:C ObjectSomeValuesFrom(ObjectInverseOf(modeus:p) owl:Thing))\n\
             EquivalentClasses(modeus:M DataSomeValuesFrom(modeus:scala rdfs:Literal))"
        );
        let p = parse_str(&src, Mode::Strict).unwrap();
        let r = PropertyExpression::Named(m("r"));
        assert_eq!(
            p.ontology.axioms[0].kind,
            AxiomKind::SubClassOf(
                ClassExpression::Named(m("Mappa")),
                ClassExpression::Intersection(vec![ClassExpression::MinCard(3, r.clone()), ClassExpression::MaxCard(3, r)])
            )
        );
        assert_eq!(
            p.ontology.axioms[1].kind,
            AxiomKind::EquivalentClasses(vec![
                ClassExpression::Named(m("C")),
                ClassExpression::SomeValues(PropertyExpression::InverseOf(m("p")), Box::new(ClassExpression::Thing)),
            ])
        );
    }

    #[test]
    fn deep_nesting_has_no_limit() {
        let mut ce = "modeus:A".to_string();
        for _ in 0..200 {
            ce = format!("ObjectSomeValuesFrom(modeus:p {ce})");
        }
        let p = parse_str(&format!("{MODEUS}SubClassOf(modeus:B {ce})"), Mode::Strict).unwrap();
        match &p.ontology.axioms[0].kind {
            AxiomKind::SubClassOf(_, sup) => assert_eq!(sup.depth(), 201),
            _ => panic!(),
        }
    }

    #[test]
    fn literals_in_both_quote_styles() {
        let src = format!("{MODEUS}DataPropertyAssertion(modeus:d modeus:x 'Poggi'^^xsd:string)\nDataPropertyAssertion(modeus:d modeus:x \"Poggi\"^^rdfs:Literal)");
        let p = parse_str(&src, Mode::Strict).unwrap();
        match (&p.ontology.axioms[0].kind, &p.ontology.axioms[1].kind) {
            (AxiomKind::DataPropertyAssertion(_, _, a), AxiomKind::DataPropertyAssertion(_, _, b)) => {
                assert_eq!(a.lexical, "Poggi");
                assert_eq!(b.lexical, "Poggi");
                assert!(b.datatype.is_rdfs_literal());
            }
            _ => panic!(),
        }
    }
}
