//! IRIs, literals and the handful of vocabulary terms the engine treats specially.

use std::fmt;
use std::sync::Arc;

pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";

pub const OWL_THING: &str = "http://www.w3.org/2002/07/owl#Thing";
pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDFS_LITERAL: &str = "http://www.w3.org/2000/01/rdf-schema#Literal";
pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";

/// An absolute IRI after prefix expansion. Equality is byte equality of the
/// expanded text.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(Arc<str>);

impl Iri {
    pub fn new(full: impl AsRef<str>) -> Self {
        Iri(Arc::from(full.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_owl_thing(&self) -> bool {
        &*self.0 == OWL_THING
    }

    pub fn is_rdfs_literal(&self) -> bool {
        &*self.0 == RDFS_LITERAL
    }
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl From<&str> for Iri {
    fn from(s: &str) -> Self {
        Iri::new(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub lexical: String,
    pub datatype: Iri,
}

impl Literal {
    pub fn new(lexical: impl Into<String>, datatype: Iri) -> Self {
        Literal { lexical: lexical.into(), datatype }
    }

    /// `"lex"^^<dt>` with `"` and `\` escaped.
    pub fn to_ntriples(&self) -> String {
        format!("\"{}\"^^<{}>", escape_string(&self.lexical), self.datatype.as_str())
    }
}

pub fn escape_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            _ => out.push(c),
        }
    }
    out
}

/// Characters allowed inside a local name (after the colon of a prefixed name).
pub fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-'
}

/// True when `local` can be written after `prefix:` and read back unchanged.
pub fn is_valid_local(local: &str) -> bool {
    local.chars().all(is_name_char)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrefixMap {
    entries: Vec<(String, String)>,
}

impl PrefixMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Binds `label` (without colon). A later binding of the same label replaces
    /// the namespace but keeps the original position.
    pub fn insert(&mut self, label: impl Into<String>, namespace: impl Into<String>) {
        let label = label.into();
        let namespace = namespace.into();
        if let Some(e) = self.entries.iter_mut().find(|(l, _)| *l == label) {
            e.1 = namespace;
        } else {
            self.entries.push((label, namespace));
        }
    }

    /// Adds the binding only if the label is still free.
    pub fn insert_if_absent(&mut self, label: &str, namespace: &str) {
        if self.get(label).is_none() {
            self.entries.push((label.to_string(), namespace.to_string()));
        }
    }

    pub fn get(&self, label: &str) -> Option<&str> {
        self.entries.iter().find(|(l, _)| l == label).map(|(_, n)| n.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(l, n)| (l.as_str(), n.as_str()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Shortest `label:local` form for `iri`: longest matching namespace, then
    /// shortest label, then first declared.
    pub fn abbreviate(&self, iri: &str) -> Option<String> {
        let mut best: Option<(&str, &str)> = None;
        for (label, ns) in self.iter() {
            if let Some(local) = iri.strip_prefix(ns) {
                if !is_valid_local(local) {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bl, bn)) => ns.len() > bn.len() || (ns.len() == bn.len() && label.len() < bl.len()),
                };
                if better {
                    best = Some((label, ns));
                }
            }
        }
        best.map(|(label, ns)| format!("{}:{}", label, &iri[ns.len()..]))
    }

    pub fn expand(&self, label: &str, local: &str) -> Option<Iri> {
        self.get(label).map(|ns| Iri::new(format!("{ns}{local}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abbreviate_prefers_longest_namespace() {
        let mut p = PrefixMap::new();
        p.insert("a", "http://x/");
        p.insert("b", "http://x/y#");
        assert_eq!(p.abbreviate("http://x/y#Z").as_deref(), Some("b:Z"));
        assert_eq!(p.abbreviate("http://x/Q").as_deref(), Some("a:Q"));
        assert_eq!(p.abbreviate("http://other/Q"), None);
        p.insert("", "http://x/y#");
        assert_eq!(p.abbreviate("http://x/y#Z").as_deref(), Some(":Z"));
    }

    #[test]
    fn abbreviate_skips_unreadable_locals() {
        let mut p = PrefixMap::new();
        p.insert("a", "http://x/");
        assert_eq!(p.abbreviate("http://x/a/b"), None);
        assert_eq!(p.abbreviate("http://x/Unità").as_deref(), Some("a:Unità"));
    }
}
