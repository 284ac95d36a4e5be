use std::collections::BTreeSet;
use std::path::Path;

use modeus_core::corpus::{embedded, files, load_corpus, load_corpus_from, sha256_hex, CorpusError};
use modeus_core::kb::build_kb;
use modeus_core::ofs::{AxiomKind, EntityKind};
use modeus_core::Iri;

const M: &str = "http://modeus.uniroma1.it/ontology#";

fn corpus_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus"))
}

#[test]
fn abox_declares_the_expected_individuals() {
    let c = load_corpus().unwrap();
    let declared: BTreeSet<String> = c
        .abox
        .axioms
        .iter()
        .filter_map(|a| match &a.kind {
            AxiomKind::Declaration(EntityKind::NamedIndividual, i) => Some(i.as_str().trim_start_matches(M).to_string()),
            _ => None,
        })
        .collect();
    let expected: BTreeSet<String> = [
        "Catastino1", "Catastino2", "IntestazioneR1", "IntestazioneR2", "IntestazioneR3", "bro1", "destprod1",
        "destprod2", "destprod3", "destprod4", "geom1", "mappa1", "mappadigit1", "part1", "part2", "part3", "part4",
        "part5", "part6", "part7", "pers_i1", "pers_i2", "sez1", "voltura1",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    assert_eq!(declared, expected);
    let tbox_individuals = c
        .tbox
        .axioms
        .iter()
        .filter(|a| matches!(a.kind, AxiomKind::Declaration(EntityKind::NamedIndividual, _)))
        .count();
    assert_eq!(tbox_individuals, 10);
    let kb = build_kb(&[c.tbox, c.abox]).unwrap();
    assert_eq!(kb.counts().individuals, 34);
}

#[test]
fn every_individual_in_an_assertion_is_declared() {
    let c = load_corpus().unwrap();
    let kb = build_kb(&[c.tbox, c.abox]).unwrap();
    assert_eq!(&kb.individuals(), kb.declared(EntityKind::NamedIndividual));
}

#[test]
fn printed_forms_are_gone_and_canonical_forms_present() {
    let c = load_corpus().unwrap();
    assert!(!c.normalization.is_empty());
    let shipped: String = ["tbox.ofn", "abox.ofn", "q23.rq", "q24.rq"].iter().map(|f| embedded(f).unwrap()).collect();
    for e in &c.normalization {
        assert!(!shipped.contains(&e.printed_form), "{:?} still present", e.printed_form);
        let file = match e.location.as_str() {
            "tbox" => "tbox.ofn",
            "abox" => "abox.ofn",
            q => {
                assert!(q == "q23" || q == "q24", "{q}");
                if q == "q23" { "q23.rq" } else { "q24.rq" }
            }
        };
        // repairs compose: a canonical form may still carry a spelling that a
        // later entry rewrites
        let mut needle = e.canonical_form.trim_end_matches(['\n', ' ']).to_string();
        for other in c.normalization.iter().filter(|o| o.location == e.location && o != &e) {
            if !other.canonical_form.contains(&other.printed_form) {
                needle = needle.replace(&other.printed_form, &other.canonical_form);
            }
        }
        assert!(embedded(file).unwrap().contains(&needle), "{needle:?} missing from {file}");
        assert!(!e.rationale.is_empty());
    }
}

#[test]
fn canonical_spellings() {
    let c = load_corpus().unwrap();
    let kb = build_kb(&[c.tbox, c.abox]).unwrap();
    for local in ["Soggetto_produttore", "Governo_distrettuale", "Istituto_conservatore", "Comune_sede_di_ufficio_di_registro"] {
        let id = kb.id(&Iri::new(format!("{M}{local}"))).unwrap_or_else(|| panic!("{local}"));
        assert!(kb.declared(EntityKind::Class).contains(&id), "{local}");
    }
    for wrong in ["Soggetto_prodotto", "intestatarario", "Isituto_conservatore"] {
        assert!(kb.terms.iter().all(|(_, i)| !i.as_str().contains(wrong)), "{wrong}");
    }
    let q23 = embedded("q23.rq").unwrap();
    assert!(q23.contains("intestatario") && q23.trim_end().ends_with('}'));
}

#[test]
fn embedded_files_match_the_checksums_on_disk() {
    let on_disk = load_corpus_from(corpus_dir()).unwrap();
    let embedded_corpus = load_corpus().unwrap();
    assert_eq!(on_disk.tbox, embedded_corpus.tbox);
    assert_eq!(on_disk.goldens, embedded_corpus.goldens);
    let sums = std::fs::read_to_string(corpus_dir().join("SHA256SUMS")).unwrap();
    for (path, text) in files() {
        assert!(sums.contains(&format!("{}  {path}", sha256_hex(text.as_bytes()))), "{path}");
    }
}

#[test]
fn tampered_corpus_is_rejected() {
    let dir = std::env::temp_dir().join(format!("modeus-corpus-{}", std::process::id()));
    std::fs::create_dir_all(dir.join("golden")).unwrap();
    for (path, text) in files() {
        std::fs::write(dir.join(path), text).unwrap();
    }
    std::fs::copy(corpus_dir().join("SHA256SUMS"), dir.join("SHA256SUMS")).unwrap();
    assert!(load_corpus_from(&dir).is_ok());
    let abox = embedded("abox.ofn").unwrap().replace(":mappa1", ":mappa9");
    std::fs::write(dir.join("abox.ofn"), abox).unwrap();
    let err = load_corpus_from(&dir).unwrap_err();
    std::fs::remove_dir_all(&dir).unwrap();
    assert!(matches!(err, CorpusError::HashMismatch(ref p) if p == "abox.ofn"), "{err}");
}

#[test]
fn golden_cases_are_complete() {
    let c = load_corpus().unwrap();
    let names: BTreeSet<&str> = c.goldens.iter().map(|g| g.name.as_str()).collect();
    assert_eq!(names.len(), c.goldens.len());
    for g in &c.goldens {
        assert!(!g.expected_output.is_empty(), "{}", g.name);
        assert!(g.provenance.starts_with("derived"), "{}", g.name);
        assert!([0, 4].contains(&g.exit));
    }
}
