//! Text forms of terms and facts for people: prefixed names by default,
//! `<full>` IRIs on request.

use crate::iri::{escape_string, Iri, Literal, PrefixMap};
use crate::kb::{Fact, KnowledgeBase, PropRef, TermId};

#[derive(Clone, Debug, Default)]
pub struct Renderer {
    pub prefixes: PrefixMap,
    pub full_iris: bool,
}

impl Renderer {
    pub fn new(prefixes: PrefixMap, full_iris: bool) -> Self {
        Renderer { prefixes, full_iris }
    }

    pub fn full() -> Self {
        Renderer { prefixes: PrefixMap::new(), full_iris: true }
    }

    pub fn iri(&self, iri: &Iri) -> String {
        if !self.full_iris {
            if let Some(s) = self.prefixes.abbreviate(iri.as_str()) {
                return s;
            }
        }
        format!("<{}>", iri.as_str())
    }

    pub fn literal(&self, l: &Literal) -> String {
        format!("\"{}\"^^{}", escape_string(&l.lexical), self.iri(&l.datatype))
    }

    pub fn term(&self, kb: &KnowledgeBase, t: TermId) -> String {
        self.iri(kb.iri(t))
    }

    pub fn prop(&self, kb: &KnowledgeBase, p: PropRef) -> String {
        if p.inverse {
            format!("inverse({})", self.term(kb, p.prop))
        } else {
            self.term(kb, p.prop)
        }
    }

    pub fn fact(&self, kb: &KnowledgeBase, f: &Fact) -> String {
        match *f {
            Fact::Member { ind, class } => format!("member({}, {})", self.term(kb, ind), self.term(kb, class)),
            Fact::Edge { prop, subj, obj } => {
                format!("edge({}, {}, {})", self.term(kb, prop), self.term(kb, subj), self.term(kb, obj))
            }
            Fact::Data { prop, subj, lit } => {
                format!("data({}, {}, {})", self.term(kb, prop), self.term(kb, subj), self.literal(kb.literal(lit)))
            }
        }
    }
}
