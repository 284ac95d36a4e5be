use thiserror::Error;

use crate::iri::{is_name_char, Iri, Literal, PrefixMap, RDF_TYPE, XSD_INTEGER, XSD_STRING};
use crate::ofs::Location;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TermPattern {
    Var(String),
    Iri(Iri),
    Literal(Literal),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Predicate {
    /// `a` or `rdf:type`.
    Type,
    Iri(Iri),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriplePattern {
    pub subject: TermPattern,
    pub predicate: Predicate,
    pub object: TermPattern,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub prefixes: PrefixMap,
    /// Variable names without the leading `?`.
    pub select: Vec<String>,
    pub patterns: Vec<TriplePattern>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{loc}: {message}")]
pub struct QueryError {
    pub loc: Location,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Var(String),
    PName(String, String),
    IriRef(String),
    Str(String),
    Int(String),
    Caret2,
    Punct(char),
}

struct Lexer {
    chars: Vec<char>,
    i: usize,
    line: u32,
    column: u32,
}

fn qerr(loc: Location, message: impl Into<String>) -> QueryError {
    QueryError { loc, message: message.into() }
}

impl Lexer {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.i += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn loc(&self) -> Location {
        Location { line: self.line, column: self.column }
    }

    /// A dot is part of a name only when a name character follows it.
    fn name(&mut self, allow_dot: bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            let inner_dot = allow_dot
                && c == '.'
                && !s.is_empty()
                && self.chars.get(self.i + 1).is_some_and(|&n| is_name_char(n));
            if is_name_char(c) || inner_dot {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        s
    }

    fn tokens(mut self) -> Result<Vec<(Tok, Location)>, QueryError> {
        let mut out = Vec::new();
        while let Some(c) = self.peek() {
            let loc = self.loc();
            if c.is_whitespace() {
                self.bump();
                continue;
            }
            let tok = match c {
                '#' => {
                    while self.peek().is_some_and(|c| c != '\n') {
                        self.bump();
                    }
                    continue;
                }
                '{' | '}' | '.' | '*' | ';' | ',' | '(' | ')' => {
                    self.bump();
                    Tok::Punct(c)
                }
                '^' => {
                    self.bump();
                    if self.bump() != Some('^') {
                        return Err(qerr(loc, "expected '^^'"));
                    }
                    Tok::Caret2
                }
                '?' | '$' => {
                    self.bump();
                    let n = self.name(false);
                    if n.is_empty() {
                        return Err(qerr(loc, "empty variable name"));
                    }
                    Tok::Var(n)
                }
                '<' => {
                    self.bump();
                    let mut s = String::new();
                    loop {
                        match self.bump() {
                            Some('>') => break,
                            Some(c) if !c.is_whitespace() => s.push(c),
                            _ => return Err(qerr(loc, "unterminated IRI")),
                        }
                    }
                    Tok::IriRef(s)
                }
                '"' | '\'' => {
                    self.bump();
                    let mut s = String::new();
                    loop {
                        match self.bump() {
                            Some('\\') => match self.bump() {
                                Some('n') => s.push('\n'),
                                Some('t') => s.push('\t'),
                                Some(e) => s.push(e),
                                None => return Err(qerr(loc, "unterminated string literal")),
                            },
                            Some(q) if q == c => break,
                            Some('\n') | None => return Err(qerr(loc, "unterminated string literal")),
                            Some(x) => s.push(x),
                        }
                    }
                    Tok::Str(s)
                }
                c if c.is_ascii_digit() => {
                    let mut s = String::new();
                    while let Some(d) = self.peek() {
                        if !d.is_ascii_digit() {
                            break;
                        }
                        s.push(d);
                        self.bump();
                    }
                    Tok::Int(s)
                }
                c if is_name_char(c) || c == ':' => {
                    let prefix = self.name(true);
                    if self.peek() == Some(':') {
                        self.bump();
                        Tok::PName(prefix, self.name(true))
                    } else {
                        Tok::Word(prefix)
                    }
                }
                other => return Err(qerr(loc, format!("illegal character {other:?}"))),
            };
            out.push((tok, loc));
        }
        Ok(out)
    }
}

struct Parser {
    toks: Vec<(Tok, Location)>,
    pos: usize,
    prefixes: PrefixMap,
    end: Location,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn loc(&self) -> Location {
        self.toks.get(self.pos).map(|(_, l)| *l).unwrap_or(self.end)
    }

    fn next(&mut self) -> Result<(Tok, Location), QueryError> {
        let t = self.toks.get(self.pos).cloned().ok_or_else(|| qerr(self.end, "unexpected end of query"))?;
        self.pos += 1;
        Ok(t)
    }

    fn keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Word(w)) if w.eq_ignore_ascii_case(kw))
    }

    fn punct(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Punct(c))
    }

    fn expect_punct(&mut self, c: char) -> Result<(), QueryError> {
        let (t, loc) = self.next()?;
        if t != Tok::Punct(c) {
            return Err(qerr(loc, format!("expected '{c}'")));
        }
        Ok(())
    }

    fn query(&mut self) -> Result<Query, QueryError> {
        while self.keyword("PREFIX") {
            self.pos += 1;
            let (t, loc) = self.next()?;
            let label = match t {
                Tok::PName(p, l) if l.is_empty() => p,
                _ => return Err(qerr(loc, "expected a prefix label such as 'ex:'")),
            };
            let (t, loc) = self.next()?;
            let Tok::IriRef(ns) = t else {
                return Err(qerr(loc, "expected <namespace IRI>"));
            };
            self.prefixes.insert(label, ns);
        }
        if !self.keyword("SELECT") {
            return Err(qerr(self.loc(), "expected SELECT"));
        }
        self.pos += 1;
        if self.keyword("DISTINCT") || self.keyword("REDUCED") {
            return Err(qerr(self.loc(), "DISTINCT/REDUCED are not supported; results are already sets"));
        }
        let mut select = Vec::new();
        while let Some(Tok::Var(v)) = self.peek() {
            if !select.contains(v) {
                select.push(v.clone());
            }
            self.pos += 1;
        }
        if select.is_empty() {
            return Err(qerr(self.loc(), "expected at least one ?variable after SELECT"));
        }
        if self.keyword("WHERE") {
            self.pos += 1;
        }
        let open = self.loc();
        self.expect_punct('{')?;
        let mut patterns = Vec::new();
        loop {
            if self.punct('}') {
                break;
            }
            patterns.push(self.triple()?);
            if self.punct('.') {
                self.pos += 1;
            } else if !self.punct('}') {
                return Err(qerr(self.loc(), "expected '.' or '}' after a triple pattern"));
            }
        }
        self.pos += 1;
        if patterns.is_empty() {
            return Err(qerr(open, "empty pattern block"));
        }
        if self.pos < self.toks.len() {
            return Err(qerr(self.loc(), "unexpected input after the closing '}'"));
        }
        for v in &select {
            let used = patterns.iter().any(|p| {
                [&p.subject, &p.object].iter().any(|t| matches!(t, TermPattern::Var(x) if x == v))
            });
            if !used {
                return Err(qerr(open, format!("selected variable ?{v} does not occur in the pattern")));
            }
        }
        Ok(Query { prefixes: self.prefixes.clone(), select, patterns })
    }

    fn iri_of(&self, t: &Tok, loc: Location) -> Result<Option<Iri>, QueryError> {
        match t {
            Tok::IriRef(s) => Ok(Some(Iri::new(s))),
            Tok::PName(p, l) => self
                .prefixes
                .expand(p, l)
                .map(Some)
                .ok_or_else(|| qerr(loc, format!("unknown prefix {p:?}"))),
            _ => Ok(None),
        }
    }

    fn term(&mut self) -> Result<TermPattern, QueryError> {
        let (t, loc) = self.next()?;
        if let Some(i) = self.iri_of(&t, loc)? {
            return Ok(TermPattern::Iri(i));
        }
        match t {
            Tok::Var(v) => Ok(TermPattern::Var(v)),
            Tok::Str(s) => {
                if self.peek() == Some(&Tok::Caret2) {
                    self.pos += 1;
                    let (t, loc) = self.next()?;
                    let dt = self.iri_of(&t, loc)?.ok_or_else(|| qerr(loc, "expected a datatype IRI"))?;
                    Ok(TermPattern::Literal(Literal::new(s, dt)))
                } else {
                    Ok(TermPattern::Literal(Literal::new(s, Iri::new(XSD_STRING))))
                }
            }
            Tok::Int(n) => Ok(TermPattern::Literal(Literal::new(n, Iri::new(XSD_INTEGER)))),
            _ => Err(qerr(loc, "expected a variable, IRI or literal")),
        }
    }

    fn triple(&mut self) -> Result<TriplePattern, QueryError> {
        let sloc = self.loc();
        let subject = self.term()?;
        if matches!(subject, TermPattern::Literal(_)) {
            return Err(qerr(sloc, "a literal cannot be a subject"));
        }
        let (t, loc) = self.next()?;
        let predicate = match &t {
            Tok::Word(w) if w == "a" => Predicate::Type,
            Tok::Var(_) => return Err(qerr(loc, "variable predicate is not supported")),
            _ => match self.iri_of(&t, loc)? {
                Some(i) if i.as_str() == RDF_TYPE => Predicate::Type,
                Some(i) => Predicate::Iri(i),
                None => return Err(qerr(loc, "expected a predicate IRI or 'a'")),
            },
        };
        let object = self.term()?;
        Ok(TriplePattern { subject, predicate, object })
    }
}

pub fn parse_query(text: &str) -> Result<Query, QueryError> {
    let lexer = Lexer { chars: text.chars().collect(), i: 0, line: 1, column: 1 };
    let toks = lexer.tokens()?;
    let end = {
        let lines = text.split('\n').collect::<Vec<_>>();
        Location { line: lines.len() as u32, column: lines.last().map_or(0, |l| l.chars().count()) as u32 + 1 }
    };
    Parser { toks, pos: 0, prefixes: PrefixMap::new(), end }.query()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q23: &str = "PREFIX xsd:<http://www.w3.org/2001/XMLSchema#>\nPREFIX :<http://modeus.uniroma1.it/ontology#>\nSELECT ?particella WHERE {?i :est_persona_intestatario_R_padrone_diretto ?particella. ?i\n:cognome_persona_R 'Poggi'^^xsd:string.}\n";
    const Q24: &str = "PREFIX :<http://modeus.uniroma1.it/ontology#>\nSELECT ?mappa WHERE {?sez :sezione_catastale_contiene_rappresentazione_particella :part1. ?sez\n:sezione_catastale_est_rappresentata_graficamente ?mappa}\n";

    fn m(l: &str) -> Iri {
        Iri::new(format!("http://modeus.uniroma1.it/ontology#{l}"))
    }

    #[test]
    fn first_published_query() {
        let q = parse_query(Q23).unwrap();
        assert_eq!(q.select, vec!["particella"]);
        assert_eq!(q.patterns.len(), 2);
        assert_eq!(
            q.patterns[1],
            TriplePattern {
                subject: TermPattern::Var("i".into()),
                predicate: Predicate::Iri(m("cognome_persona_R")),
                object: TermPattern::Literal(Literal::new("Poggi", Iri::new(XSD_STRING))),
            }
        );
    }

    #[test]
    fn second_published_query() {
        let q = parse_query(Q24).unwrap();
        assert_eq!(q.select, vec!["mappa"]);
        assert_eq!(q.patterns.len(), 2);
        assert_eq!(q.patterns[0].object, TermPattern::Iri(m("part1")));
    }

    #[test]
    fn empty_block() {
        let e = parse_query("SELECT ?x WHERE { }").unwrap_err();
        assert_eq!(e.message, "empty pattern block");
    }

    #[test]
    fn variable_predicate() {
        let e = parse_query("SELECT ?x WHERE { ?x ?p ?y }").unwrap_err();
        assert!(e.message.contains("variable predicate"), "{e}");
        assert_eq!(e.loc, Location { line: 1, column: 22 });
    }

    #[test]
    fn unknown_prefix() {
        let e = parse_query("SELECT ?x WHERE {\n ?x a ex:C }").unwrap_err();
        assert!(e.message.contains("unknown prefix"), "{e}");
        assert_eq!(e.loc.line, 2);
    }

    #[test]
    fn type_keyword_and_rdf_type() {
        let q = parse_query(
            "PREFIX rdf:<http://www.w3.org/1999/02/22-rdf-syntax-ns#>\nPREFIX :<http://x#>\nSELECT ?x WHERE { ?x a :C . ?x rdf:type :D . }",
        )
        .unwrap();
        assert!(q.patterns.iter().all(|p| p.predicate == Predicate::Type));
    }

    #[test]
    fn unselected_variable_is_rejected() {
        assert!(parse_query("PREFIX :<http://x#>\nSELECT ?y WHERE { ?x a :C }").is_err());
    }

    #[test]
    fn dotted_local_name_keeps_inner_dots() {
        let q = parse_query("PREFIX :<http://x#>\nSELECT ?x WHERE { ?x :p :a.b.}").unwrap();
        assert_eq!(q.patterns[0].object, TermPattern::Iri(Iri::new("http://x#a.b")));
    }
}
