//! Line and keyword counts over `.ofn` text, with prefix expansion done by
//! regular expressions.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use regex::Regex;

pub const AXIOM_KEYWORDS: [&str; 14] = [
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

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub per_keyword: BTreeMap<String, usize>,
    /// Axiom lines with every name expanded to a full IRI.
    pub normalized: Vec<String>,
    /// Declared entity kind to expanded IRIs.
    pub declared: BTreeMap<String, BTreeSet<String>>,
}

impl Tally {
    pub fn axioms(&self) -> usize {
        self.per_keyword.values().sum()
    }

    pub fn count(&self, kw: &str) -> usize {
        self.per_keyword.get(kw).copied().unwrap_or(0)
    }
}

fn prefixes(text: &str) -> Vec<(String, String)> {
    let re = Regex::new(r"(?m)^Prefix\(([^:=]*):=<([^>]*)>\)").unwrap();
    re.captures_iter(text).map(|c| (c[1].to_string(), c[2].to_string())).collect()
}

/// Replaces `label:local` outside quotes and angle brackets with `<ns local>`.
pub fn expand(line: &str, prefixes: &[(String, String)]) -> String {
    static RE: OnceLock<Regex> = OnceLock::new();
    let re = RE.get_or_init(|| {
        Regex::new(r#"("(?:[^"\\]|\\.)*"|'(?:[^'\\]|\\.)*'|<[^>]*>)|([\w.-]*):([\w-]*)"#).unwrap()
    });
    re.replace_all(line, |c: &regex::Captures| {
        if let Some(q) = c.get(1) {
            return q.as_str().to_string();
        }
        let label = &c[2];
        match prefixes.iter().find(|(l, _)| l == label) {
            Some((_, ns)) => format!("<{}{}>", ns, &c[3]),
            None => c[0].to_string(),
        }
    })
    .into_owned()
}

/// Tallies one-axiom-per-line text.
pub fn tally(text: &str) -> Tally {
    let px = prefixes(text);
    let head = Regex::new(&format!(r"^\s*({})\(", AXIOM_KEYWORDS.join("|"))).unwrap();
    let decl = Regex::new(r"^Declaration\((Class|ObjectProperty|DataProperty|NamedIndividual)\(<([^>]*)>\)\)").unwrap();
    let mut t = Tally::default();
    for line in text.lines() {
        if let Some(c) = head.captures(line) {
            *t.per_keyword.entry(c[1].to_string()).or_default() += 1;
            let norm = expand(line.trim(), &px);
            if let Some(d) = decl.captures(&norm) {
                t.declared.entry(d[1].to_string()).or_default().insert(d[2].to_string());
            }
            t.normalized.push(norm);
        }
    }
    t
}

/// Tally of several files as if merged: distinct normalized lines.
pub fn merged(texts: &[&str]) -> Tally {
    let mut out = Tally::default();
    let mut seen = BTreeSet::new();
    for text in texts {
        let t = tally(text);
        for (k, v) in t.declared {
            out.declared.entry(k).or_default().extend(v);
        }
        for line in t.normalized {
            if seen.insert(line.clone()) {
                let kw = line.split('(').next().unwrap().to_string();
                *out.per_keyword.entry(kw).or_default() += 1;
                out.normalized.push(line);
            }
        }
    }
    out
}
