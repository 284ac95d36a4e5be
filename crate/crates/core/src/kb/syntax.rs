//! Text form of a single fact: `member(i, C)`, `edge(p, s, o)` or
//! `data(d, s, "lex"^^dt)`, with prefixed names resolved against the KB.

use thiserror::Error;

use super::{Fact, KnowledgeBase};
use crate::iri::{Iri, Literal, PrefixMap, OWL, RDF, RDFS, XSD, XSD_STRING};
use crate::ofs::{tokenize, Location, Token, TokenKind};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{loc}: {message}")]
pub struct FactSyntaxError {
    pub loc: Location,
    pub message: String,
}

/// A fact whose terms may or may not occur in the KB.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactPattern {
    Member(Iri, Iri),
    Edge(Iri, Iri, Iri),
    Data(Iri, Iri, Literal),
}

struct Reader<'a> {
    toks: Vec<Token>,
    pos: usize,
    prefixes: &'a PrefixMap,
    std: PrefixMap,
}

fn fail<T>(loc: Location, message: impl Into<String>) -> Result<T, FactSyntaxError> {
    Err(FactSyntaxError { loc, message: message.into() })
}

impl Reader<'_> {
    fn end_loc(&self) -> Location {
        self.toks.last().map(|t| t.loc).unwrap_or(Location { line: 1, column: 1 })
    }

    fn next(&mut self) -> Result<Token, FactSyntaxError> {
        match self.toks.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => fail(self.end_loc(), "unexpected end of fact"),
        }
    }

    fn punct(&mut self, c: &str) -> Result<(), FactSyntaxError> {
        let t = self.next()?;
        if t.is_punct(c) {
            Ok(())
        } else {
            fail(t.loc, format!("expected {c:?}, found {:?}", t.lexeme))
        }
    }

    fn comma(&mut self) {
        if self.toks.get(self.pos).is_some_and(|t| t.is_punct(",")) {
            self.pos += 1;
        }
    }

    fn iri(&mut self) -> Result<Iri, FactSyntaxError> {
        let t = self.next()?;
        match t.kind {
            TokenKind::FullIri => Ok(Iri::new(&t.lexeme[1..t.lexeme.len() - 1])),
            TokenKind::PrefixedName => {
                let (label, local) = t.lexeme.split_once(':').expect("prefixed name has a colon");
                match self.prefixes.expand(label, local).or_else(|| self.std.expand(label, local)) {
                    Some(i) => Ok(i),
                    None => fail(t.loc, format!("unknown prefix {label:?}")),
                }
            }
            _ => fail(t.loc, format!("expected an IRI, found {:?}", t.lexeme)),
        }
    }

    fn literal(&mut self) -> Result<Literal, FactSyntaxError> {
        let t = self.next()?;
        if t.kind != TokenKind::StringLiteral {
            return fail(t.loc, format!("expected a literal, found {:?}", t.lexeme));
        }
        let lexical = t.string_value();
        if self.toks.get(self.pos).is_some_and(|t| t.kind == TokenKind::DatatypeMarker) {
            self.pos += 1;
            Ok(Literal::new(lexical, self.iri()?))
        } else {
            Ok(Literal::new(lexical, Iri::new(XSD_STRING)))
        }
    }
}

/// Parses the text form. Commas between arguments are optional.
pub fn parse_fact_pattern(text: &str, prefixes: &PrefixMap) -> Result<FactPattern, FactSyntaxError> {
    let toks = tokenize_with_commas(text)?;
    let mut std = PrefixMap::new();
    for (l, ns) in [("owl", OWL), ("rdf", RDF), ("rdfs", RDFS), ("xsd", XSD)] {
        std.insert(l, ns);
    }
    let mut r = Reader { toks, pos: 0, prefixes, std };
    let head = r.next()?;
    let kind = head.lexeme.clone();
    r.punct("(")?;
    let pattern = match kind.as_str() {
        "member" => {
            let i = r.iri()?;
            r.comma();
            FactPattern::Member(i, r.iri()?)
        }
        "edge" => {
            let p = r.iri()?;
            r.comma();
            let s = r.iri()?;
            r.comma();
            FactPattern::Edge(p, s, r.iri()?)
        }
        "data" => {
            let d = r.iri()?;
            r.comma();
            let s = r.iri()?;
            r.comma();
            FactPattern::Data(d, s, r.literal()?)
        }
        _ => return fail(head.loc, format!("expected member, edge or data, found {kind:?}")),
    };
    r.punct(")")?;
    if let Some(t) = r.toks.get(r.pos) {
        return fail(t.loc, format!("trailing input {:?}", t.lexeme));
    }
    Ok(pattern)
}

/// The ontology lexer has no comma token; commas become spaces outside of
/// quotes and IRIs, then are re-inserted as punctuation tokens.
fn tokenize_with_commas(text: &str) -> Result<Vec<Token>, FactSyntaxError> {
    let mut cleaned = String::with_capacity(text.len());
    let mut commas = Vec::new();
    let mut quote: Option<char> = None;
    let (mut in_iri, mut escaped) = (false, false);
    for (off, c) in text.char_indices() {
        let mut out = c;
        if let Some(q) = quote {
            if escaped {
                escaped = false;
            } else if c == '\\' {
                escaped = true;
            } else if c == q {
                quote = None;
            }
        } else if in_iri {
            in_iri = c != '>';
        } else if c == '"' || c == '\'' {
            quote = Some(c);
        } else if c == '<' {
            in_iri = true;
        } else if c == ',' {
            commas.push(off);
            out = ' ';
        }
        cleaned.push(out);
    }
    let mut toks = tokenize(&cleaned).map_err(|e| FactSyntaxError { loc: e.location(), message: e.message() })?;
    for off in commas {
        let at = toks.partition_point(|t| t.offset < off);
        let loc = Location { line: 1, column: text[..off].chars().count() as u32 + 1 };
        toks.insert(at, Token { kind: TokenKind::Punct, lexeme: ",".into(), loc, offset: off });
    }
    toks.retain(|t| t.kind != TokenKind::Comment);
    Ok(toks)
}

impl KnowledgeBase {
    /// Resolves the pattern to a fact over interned terms, or `None` when a
    /// term does not occur in the KB.
    pub fn lookup_fact(&self, p: &FactPattern) -> Option<Fact> {
        Some(match p {
            FactPattern::Member(i, c) => Fact::Member { ind: self.id(i)?, class: self.id(c)? },
            FactPattern::Edge(p, s, o) => Fact::Edge { prop: self.id(p)?, subj: self.id(s)?, obj: self.id(o)? },
            FactPattern::Data(d, s, l) => Fact::Data { prop: self.id(d)?, subj: self.id(s)?, lit: self.literals.get(l)? },
        })
    }

    pub fn parse_fact(&self, text: &str) -> Result<Option<Fact>, FactSyntaxError> {
        parse_fact_pattern(text, &self.prefixes).map(|p| self.lookup_fact(&p))
    }
}
