use thiserror::Error;

use super::Location;
use crate::iri::is_name_char;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Keyword,
    PrefixedName,
    FullIri,
    StringLiteral,
    Integer,
    DatatypeMarker,
    Punct,
    Comment,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    /// Exact source text of the token.
    pub lexeme: String,
    pub loc: Location,
    /// Byte offset of the lexeme in the source.
    pub offset: usize,
}

impl Token {
    pub fn is_punct(&self, c: &str) -> bool {
        self.kind == TokenKind::Punct && self.lexeme == c
    }

    /// Decoded value of a string literal token (quotes removed, escapes resolved).
    pub fn string_value(&self) -> String {
        let inner = &self.lexeme[1..self.lexeme.len() - 1];
        let mut out = String::with_capacity(inner.len());
        let mut chars = inner.chars();
        while let Some(c) = chars.next() {
            if c == '\\' {
                if let Some(n) = chars.next() {
                    out.push(n);
                }
            } else {
                out.push(c);
            }
        }
        out
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LexError {
    #[error("{loc}: unterminated string literal")]
    UnterminatedString { loc: Location },
    #[error("{loc}: unterminated IRI")]
    UnterminatedIri { loc: Location },
    #[error("{loc}: illegal character {ch:?}")]
    IllegalChar { loc: Location, ch: char },
}

impl LexError {
    pub fn location(&self) -> Location {
        match self {
            LexError::UnterminatedString { loc }
            | LexError::UnterminatedIri { loc }
            | LexError::IllegalChar { loc, .. } => *loc,
        }
    }

    pub fn message(&self) -> String {
        match self {
            LexError::UnterminatedString { .. } => "unterminated string literal".into(),
            LexError::UnterminatedIri { .. } => "unterminated IRI".into(),
            LexError::IllegalChar { ch, .. } => format!("illegal character {ch:?}"),
        }
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    line: u32,
    column: u32,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.src[self.pos..].chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
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

    fn eat_while(&mut self, f: impl Fn(char) -> bool) {
        while let Some(c) = self.peek() {
            if !f(c) {
                break;
            }
            self.bump();
        }
    }
}

fn is_prefix_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-' || c == '.'
}

pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    let mut cur = Cursor { src: source, pos: 0, line: 1, column: 1 };
    let mut tokens = Vec::new();
    while let Some(c) = cur.peek() {
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        let start = cur.pos;
        let loc = cur.loc();
        let kind = match c {
            '#' => {
                cur.eat_while(|c| c != '\n');
                TokenKind::Comment
            }
            '(' | ')' | '=' => {
                cur.bump();
                TokenKind::Punct
            }
            '^' if cur.peek_at(1) == Some('^') => {
                cur.bump();
                cur.bump();
                TokenKind::DatatypeMarker
            }
            '<' => {
                cur.bump();
                loop {
                    match cur.bump() {
                        Some('>') => break,
                        Some(c) if c.is_whitespace() || c == '<' => {
                            return Err(LexError::UnterminatedIri { loc })
                        }
                        Some(_) => {}
                        None => return Err(LexError::UnterminatedIri { loc }),
                    }
                }
                TokenKind::FullIri
            }
            '"' | '\'' => {
                cur.bump();
                loop {
                    match cur.bump() {
                        Some('\\') => {
                            if cur.bump().is_none() {
                                return Err(LexError::UnterminatedString { loc });
                            }
                        }
                        Some(q) if q == c => break,
                        Some(_) => {}
                        None => return Err(LexError::UnterminatedString { loc }),
                    }
                }
                TokenKind::StringLiteral
            }
            c if c.is_ascii_digit() => {
                cur.eat_while(|c| c.is_ascii_digit());
                if cur.peek().is_some_and(|c| is_name_char(c) || c == ':') {
                    lex_name(&mut cur)
                } else {
                    TokenKind::Integer
                }
            }
            c if is_name_char(c) || c == ':' => lex_name(&mut cur),
            other => return Err(LexError::IllegalChar { loc, ch: other }),
        };
        tokens.push(Token { kind, lexeme: source[start..cur.pos].to_string(), loc, offset: start });
    }
    Ok(tokens)
}

/// A bare word is a keyword; a word containing a colon is a prefixed name.
fn lex_name(cur: &mut Cursor<'_>) -> TokenKind {
    cur.eat_while(is_prefix_char);
    if cur.peek() == Some(':') {
        cur.bump();
        cur.eat_while(is_name_char);
        TokenKind::PrefixedName
    } else {
        TokenKind::Keyword
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<(TokenKind, String)> {
        tokenize(src).unwrap().into_iter().map(|t| (t.kind, t.lexeme)).collect()
    }

    #[test]
    fn prefix_declaration() {
        use TokenKind::*;
        assert_eq!(
            kinds("Prefix(owl:=<http://www.w3.org/2002/07/owl#>)"),
            vec![
                (Keyword, "Prefix".into()),
                (Punct, "(".into()),
                (PrefixedName, "owl:".into()),
                (Punct, "=".into()),
                (FullIri, "<http://www.w3.org/2002/07/owl#>".into()),
                (Punct, ")".into()),
            ]
        );
    }

    #[test]
    fn typed_literal() {
        use TokenKind::*;
        assert_eq!(
            kinds("\"Tivoli\"^^rdfs:Literal"),
            vec![
                (StringLiteral, "\"Tivoli\"".into()),
                (DatatypeMarker, "^^".into()),
                (PrefixedName, "rdfs:Literal".into()),
            ]
        );
    }

    #[test]
    fn empty_source() {
        assert!(tokenize("").unwrap().is_empty());
        assert!(tokenize("  \n\t ").unwrap().is_empty());
    }

    #[test]
    fn comments_are_tokens() {
        let toks = tokenize("# Individual: :Catastino1\nClassAssertion").unwrap();
        assert_eq!(toks[0].kind, TokenKind::Comment);
        assert_eq!(toks[0].lexeme, "# Individual: :Catastino1");
        assert_eq!(toks[1].loc, Location { line: 2, column: 1 });
    }

    #[test]
    fn hash_inside_iri_is_not_a_comment() {
        let toks = tokenize("<http://x/o#A>").unwrap();
        assert_eq!(toks.len(), 1);
        assert_eq!(toks[0].kind, TokenKind::FullIri);
    }

    #[test]
    fn unicode_local_names() {
        let toks = tokenize("modeus:Unità_di_descrizione :part1").unwrap();
        assert_eq!(toks[0].lexeme, "modeus:Unità_di_descrizione");
        assert_eq!(toks[1].lexeme, ":part1");
        assert_eq!(toks[1].loc.column, 29);
    }

    #[test]
    fn single_quotes_and_escapes() {
        let toks = tokenize(r#"'Poggi' "a\"b""#).unwrap();
        assert_eq!(toks[0].string_value(), "Poggi");
        assert_eq!(toks[1].string_value(), "a\"b");
    }

    #[test]
    fn errors_carry_location() {
        assert_eq!(
            tokenize("X(\n  \"abc").unwrap_err(),
            LexError::UnterminatedString { loc: Location { line: 2, column: 3 } }
        );
        assert_eq!(
            tokenize("A { B").unwrap_err(),
            LexError::IllegalChar { loc: Location { line: 1, column: 3 }, ch: '{' }
        );
    }

    #[test]
    fn cardinality_integer() {
        let toks = tokenize("ObjectMinCardinality(3 modeus:p)").unwrap();
        assert_eq!(toks[2].kind, TokenKind::Integer);
    }
}
