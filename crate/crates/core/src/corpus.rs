//! The bundled TBox/ABox transcription, the two reference queries, the table
//! of editorial repairs and the golden CLI cases. Contents are checked against
//! `SHA256SUMS` on load.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::ofs::{parse_str, Mode, Ontology, ParseError};

const SUMS: &str = include_str!("../../../corpus/SHA256SUMS");

/// Paths relative to the corpus directory, with their embedded contents.
const FILES: &[(&str, &str)] = &[
    ("tbox.ofn", include_str!("../../../corpus/tbox.ofn")),
    ("abox.ofn", include_str!("../../../corpus/abox.ofn")),
    ("q23.rq", include_str!("../../../corpus/q23.rq")),
    ("q24.rq", include_str!("../../../corpus/q24.rq")),
    ("normalization.tsv", include_str!("../../../corpus/normalization.tsv")),
    ("golden/manifest.json", include_str!("../../../corpus/golden/manifest.json")),
    ("golden/q23.tsv", include_str!("../../../corpus/golden/q23.tsv")),
    ("golden/q23_strict.tsv", include_str!("../../../corpus/golden/q23_strict.tsv")),
    ("golden/q24.tsv", include_str!("../../../corpus/golden/q24.tsv")),
    ("golden/explain_mappa1.txt", include_str!("../../../corpus/golden/explain_mappa1.txt")),
    ("golden/explain_geom1.txt", include_str!("../../../corpus/golden/explain_geom1.txt")),
    ("golden/explain_acqua.txt", include_str!("../../../corpus/golden/explain_acqua.txt")),
];

/// The property the optional one-to-one lint checks on the corpus.
pub const ONE_TO_ONE_PROPERTY: &str = "http://modeus.uniroma1.it/ontology#rappresentazione_particella_ha_intestazione";

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("corpus file {0} does not match its recorded SHA-256")]
    HashMismatch(String),
    #[error("corpus file {0} has no recorded SHA-256")]
    Unlisted(String),
    #[error("corpus file {path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("corpus file {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("golden manifest: {0}")]
    Manifest(#[from] serde_json::Error),
    #[error("normalization table line {0} is malformed")]
    Normalization(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationEntry {
    pub location: String,
    pub printed_form: String,
    pub canonical_form: String,
    pub rationale: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct GoldenCase {
    pub name: String,
    /// Arguments to the `modeus` binary, run from the repository root.
    pub args: Vec<String>,
    /// File under `golden/` holding the expected standard output.
    pub expected: String,
    pub exit: i32,
    pub provenance: String,
    #[serde(skip)]
    pub expected_output: String,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub tbox: Ontology,
    pub abox: Ontology,
    /// (file name, text).
    pub queries: Vec<(String, String)>,
    pub normalization: Vec<NormalizationEntry>,
    pub goldens: Vec<GoldenCase>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut s = String::with_capacity(64);
    for b in digest {
        let _ = write!(s, "{b:02x}");
    }
    s
}

fn recorded(sums: &str, path: &str) -> Option<String> {
    sums.lines().find_map(|l| {
        let (hash, name) = l.split_once("  ")?;
        (name == path).then(|| hash.to_string())
    })
}

fn verify(sums: &str, path: &str, contents: &str) -> Result<(), CorpusError> {
    match recorded(sums, path) {
        None => Err(CorpusError::Unlisted(path.to_string())),
        Some(h) if h == sha256_hex(contents.as_bytes()) => Ok(()),
        Some(_) => Err(CorpusError::HashMismatch(path.to_string())),
    }
}

/// Raw text of an embedded corpus file.
pub fn embedded(path: &str) -> Option<&'static str> {
    FILES.iter().find(|(p, _)| *p == path).map(|(_, c)| *c)
}

pub fn parse_normalization(text: &str) -> Result<Vec<NormalizationEntry>, CorpusError> {
    let unescape = |s: &str| {
        let mut out = String::new();
        let mut chars = s.chars();
        while let Some(c) = chars.next() {
            if c == '\\' {
                match chars.next() {
                    Some('n') => out.push('\n'),
                    Some('t') => out.push('\t'),
                    Some(o) => out.push(o),
                    None => out.push('\\'),
                }
            } else {
                out.push(c);
            }
        }
        out
    };
    text.lines()
        .enumerate()
        .skip(1)
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, l)| {
            let f: Vec<&str> = l.split('\t').collect();
            if f.len() != 4 {
                return Err(CorpusError::Normalization(i + 1));
            }
            Ok(NormalizationEntry {
                location: f[0].to_string(),
                printed_form: unescape(f[1]),
                canonical_form: unescape(f[2]),
                rationale: f[3].to_string(),
            })
        })
        .collect()
}

fn assemble(read: impl Fn(&str) -> Result<String, CorpusError>) -> Result<Corpus, CorpusError> {
    let parse = |path: &str| -> Result<Ontology, CorpusError> {
        let text = read(path)?;
        parse_str(&text, Mode::Strict)
            .map(|p| p.ontology)
            .map_err(|source| CorpusError::Parse { path: path.to_string(), source })
    };
    let tbox = parse("tbox.ofn")?;
    let abox = parse("abox.ofn")?;
    let queries = ["q23.rq", "q24.rq"]
        .iter()
        .map(|q| Ok((q.to_string(), read(q)?)))
        .collect::<Result<Vec<_>, CorpusError>>()?;
    let normalization = parse_normalization(&read("normalization.tsv")?)?;
    let mut goldens: Vec<GoldenCase> = serde_json::from_str(&read("golden/manifest.json")?)?;
    for g in &mut goldens {
        g.expected_output = read(&format!("golden/{}", g.expected))?;
    }
    Ok(Corpus { tbox, abox, queries, normalization, goldens })
}

/// The embedded corpus, verified and parsed in strict mode.
pub fn load_corpus() -> Result<Corpus, CorpusError> {
    assemble(|path| {
        let text = embedded(path).ok_or_else(|| CorpusError::Unlisted(path.to_string()))?;
        verify(SUMS, path, text)?;
        Ok(text.to_string())
    })
}

/// A corpus directory on disk, verified against its own `SHA256SUMS`.
pub fn load_corpus_from(dir: &Path) -> Result<Corpus, CorpusError> {
    let io = |path: &str, source| CorpusError::Io { path: path.to_string(), source };
    let sums = std::fs::read_to_string(dir.join("SHA256SUMS")).map_err(|e| io("SHA256SUMS", e))?;
    assemble(|path| {
        let text = std::fs::read_to_string(dir.join(path)).map_err(|e| io(path, e))?;
        verify(&sums, path, &text)?;
        Ok(text)
    })
}

/// Every embedded path listed in `SHA256SUMS`.
pub fn files() -> impl Iterator<Item = (&'static str, &'static str)> {
    FILES.iter().copied()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_mismatch_is_reported() {
        let sums = format!("{}  a.txt\n", sha256_hex(b"hello"));
        assert!(verify(&sums, "a.txt", "hello").is_ok());
        assert!(matches!(verify(&sums, "a.txt", "hellO"), Err(CorpusError::HashMismatch(_))));
        assert!(matches!(verify(&sums, "b.txt", "hello"), Err(CorpusError::Unlisted(_))));
    }

    #[test]
    fn normalization_escapes() {
        let t = "location\tprinted_form\tcanonical_form\trationale\nabox\ta\\nb\tab\twrap\n";
        let e = parse_normalization(t).unwrap();
        assert_eq!(e[0].printed_form, "a\nb");
        assert!(parse_normalization("h\nonly\ttwo\n").is_err());
    }
}
