use std::collections::BTreeSet;

use modeus_core::corpus::load_corpus;
use modeus_core::kb::{build_kb, Fact, TermId};
use modeus_core::ofs::{parse_str, Mode, Ontology};
use modeus_core::reasoner::{
    check_consistency, classify, explain, export_facts, fact_line, materialize, materialize_from, CheckConfig,
    ClashDetails, ClashKind, LiteralMatching, RuleId, Support,
};
use modeus_core::{Iri, KnowledgeBase};
use modeus_testkit::gen::{rng, small_kb, Sizes};
use modeus_testkit::{matrix, naive};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

const M: &str = "http://modeus.uniroma1.it/ontology#";

fn corpus_onts() -> Vec<Ontology> {
    let c = load_corpus().unwrap();
    vec![c.tbox, c.abox]
}

fn with_extra(extra: &str) -> KnowledgeBase {
    let mut onts = corpus_onts();
    let src = format!("Prefix(:=<{M}>)\nOntology(<http://example.org/extra>\n{extra}\n)\n");
    onts.push(parse_str(&src, Mode::Strict).unwrap().ontology);
    build_kb(&onts).unwrap()
}

fn t(kb: &KnowledgeBase, local: &str) -> TermId {
    kb.id(&Iri::new(format!("{M}{local}"))).unwrap_or_else(|| panic!("{local}"))
}

#[test]
fn corpus_classification_matches_matrix_closure() {
    let onts = corpus_onts();
    let kb = build_kb(&onts).unwrap();
    let s = classify(&kb);
    let classes: Vec<Iri> = kb.classes().into_iter().map(|c| kb.iri(c).clone()).collect();
    let oracle = matrix::closure(&classes, &matrix::edges(&onts));
    for (sub, sups) in &oracle {
        let got: BTreeSet<Iri> = s.superclasses(kb.id(sub).unwrap()).into_iter().map(|c| kb.iri(c).clone()).collect();
        let want: BTreeSet<Iri> = sups.iter().cloned().collect();
        assert_eq!(got, want, "{sub}");
    }
    assert!(s.subsumes(t(&kb, "Mappa"), t(&kb, "Unità_di_descrizione")));
    assert!(!s.subsumes(t(&kb, "Unità_di_descrizione"), t(&kb, "Mappa")));
}

#[test]
fn corpus_closure_equals_naive_closure() {
    let onts = corpus_onts();
    let kb = build_kb(&onts).unwrap();
    let closure = materialize(&kb);
    let got: Vec<String> = export_facts(&kb, &closure).lines().map(str::to_string).collect();
    assert_eq!(got, naive::lines(&naive::closure(&onts)));
}

#[test]
fn double_membership_in_acqua_and_strada_is_one_clash() {
    let kb = with_extra("ClassAssertion(:Acqua :x1)\nClassAssertion(:Strada :x1)");
    let clashes = check_consistency(&kb, &materialize(&kb), CheckConfig::default());
    assert_eq!(clashes.len(), 1);
    assert_eq!(clashes[0].kind, ClashKind::DisjointClasses);
    assert_eq!(clashes[0].individual, t(&kb, "x1"));
    assert_eq!(clashes[0].facts.len(), 2);
}

#[test]
fn fourth_reproduction_of_a_map_breaks_the_maximum() {
    let three = "ObjectPropertyAssertion(:mappa_est_riprodotta_in :mappa1 :r1)\nObjectPropertyAssertion(:mappa_est_riprodotta_in :mappa1 :r2)\nObjectPropertyAssertion(:mappa_est_riprodotta_in :mappa1 :r3)";
    let kb3 = with_extra(three);
    assert!(check_consistency(&kb3, &materialize(&kb3), CheckConfig::default()).is_empty());
    let kb = with_extra(&format!("{three}\nObjectPropertyAssertion(:mappa_est_riprodotta_in :mappa1 :r4)"));
    let closure = materialize(&kb);
    let clashes = check_consistency(&kb, &closure, CheckConfig::default());
    assert_eq!(clashes.len(), 1);
    assert_eq!(clashes[0].kind, ClashKind::MaxCardinality);
    assert_eq!(clashes[0].individual, t(&kb, "mappa1"));
    assert!(matches!(clashes[0].details, ClashDetails::Cardinality { max: 3, count: 4, .. }));
    let no_una = CheckConfig { una: false, ..CheckConfig::default() };
    assert!(check_consistency(&kb, &closure, no_una).is_empty());
}

#[test]
fn disjoint_data_properties_share_a_value() {
    let extra = "DataPropertyAssertion(:indirizzo_sede_principale :ist9 \"Via Roma 1\"^^rdfs:Literal)\nDataPropertyAssertion(:indirizzo_sede_succursale :ist9 \"Via Roma 1\"^^xsd:string)";
    let kb = with_extra(extra);
    let closure = materialize(&kb);
    let plain = check_consistency(&kb, &closure, CheckConfig::default());
    assert_eq!(plain.len(), 1);
    assert_eq!(plain[0].kind, ClashKind::DisjointDataProperties);
    let strict = CheckConfig { literals: LiteralMatching::Strict, ..CheckConfig::default() };
    assert!(check_consistency(&kb, &closure, strict).is_empty());
}

#[test]
fn neighbouring_parcels_are_symmetric() {
    let mut r = rng(23);
    let c = load_corpus().unwrap();
    let base = build_kb(&[c.tbox.clone(), c.abox.clone()]).unwrap();
    let parcels: Vec<String> = base
        .individuals()
        .into_iter()
        .map(|i| base.iri(i).as_str().to_string())
        .filter(|s| s.contains("#part"))
        .collect();
    assert!(!parcels.is_empty());
    let p = format!("{M}rappresentazione_particella_confina_con");
    for _ in 0..100 {
        let a = parcels.choose(&mut r).unwrap();
        let b = if r.gen_bool(0.2) { format!("{M}fresh{}", r.gen_range(0..1000)) } else { parcels.choose(&mut r).unwrap().clone() };
        let mut extra = Ontology::new(None);
        extra.push(modeus_core::ofs::AxiomKind::ObjectPropertyAssertion(Iri::new(&p), Iri::new(a), Iri::new(&b)));
        let kb = build_kb(&[c.tbox.clone(), c.abox.clone(), extra]).unwrap();
        let closure = materialize(&kb);
        let prop = kb.id(&Iri::new(&p)).unwrap();
        let (ai, bi) = (kb.id(&Iri::new(a)).unwrap(), kb.id(&Iri::new(&b)).unwrap());
        assert!(closure.contains(&Fact::Edge { prop, subj: bi, obj: ai }), "{b} -> {a}");
    }
}

#[test]
fn every_corpus_proof_replays() {
    let kb = build_kb(&corpus_onts()).unwrap();
    let closure = materialize(&kb);
    for f in closure.facts() {
        let proof = explain(&closure, f).unwrap();
        assert!(proof.replays(&kb, &kb.asserted), "{}", fact_line(&kb, f));
    }
}

#[test]
fn proofs_prefer_the_class_hierarchy() {
    let kb = build_kb(&corpus_onts()).unwrap();
    let closure = materialize(&kb);
    let f = Fact::Member { ind: t(&kb, "mappa1"), class: t(&kb, "Unità_di_descrizione") };
    let proof = explain(&closure, &f).unwrap();
    assert_eq!(proof.rules(), vec![RuleId::Sub, RuleId::Sub]);
    assert_eq!(proof.height(), 2);
    // an asserted fact is its own proof even when a rule could also derive it
    let g = Fact::Member { ind: t(&kb, "geom1"), class: t(&kb, "Geometra_R") };
    assert_eq!(closure.support(closure.id_of(&g).unwrap()), &Support::Asserted);
}

#[test]
fn export_is_deterministic() {
    let a = build_kb(&corpus_onts()).unwrap();
    let b = build_kb(&corpus_onts()).unwrap();
    assert_eq!(export_facts(&a, &materialize(&a)), export_facts(&b, &materialize(&b)));
}

fn small(seed: u64) -> (Vec<Ontology>, KnowledgeBase) {
    let g = small_kb(&mut rng(seed), Sizes::default());
    let onts = g.ontologies();
    let kb = build_kb(&onts).unwrap();
    (onts, kb)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_equals_naive_oracle(seed in any::<u64>()) {
        let (onts, kb) = small(seed);
        let closure = materialize(&kb);
        let got: Vec<String> = export_facts(&kb, &closure).lines().map(str::to_string).collect();
        prop_assert_eq!(got, naive::lines(&naive::closure(&onts)));
    }

    #[test]
    fn materialization_is_idempotent(seed in any::<u64>()) {
        let (_, kb) = small(seed);
        let once = materialize(&kb);
        let twice = materialize_from(&kb, once.facts().copied());
        prop_assert_eq!(once.fact_set(), twice.fact_set());
        prop_assert_eq!(twice.derived_count(), 0);
    }

    #[test]
    fn materialization_is_monotone(seed in any::<u64>(), keep in 0.0f64..1.0) {
        let (_, kb) = small(seed);
        let mut r = rng(seed ^ 0x5eed);
        let subset: Vec<Fact> = kb.asserted.iter().copied().filter(|_| r.gen_bool(keep)).collect();
        let small_closure = materialize_from(&kb, subset).fact_set();
        let full = materialize(&kb).fact_set();
        prop_assert!(small_closure.is_subset(&full));
    }

    #[test]
    fn classification_matches_matrix_oracle(seed in any::<u64>()) {
        let (onts, kb) = small(seed);
        let s = classify(&kb);
        let classes: Vec<Iri> = kb.classes().into_iter().map(|c| kb.iri(c).clone()).collect();
        let oracle = matrix::closure(&classes, &matrix::edges(&onts));
        for (sub, sups) in &oracle {
            let got: BTreeSet<Iri> = s.superclasses(kb.id(sub).unwrap()).into_iter().map(|c| kb.iri(c).clone()).collect();
            prop_assert_eq!(got, sups.iter().cloned().collect::<BTreeSet<_>>());
        }
    }

    #[test]
    fn closure_invents_no_individuals(seed in any::<u64>()) {
        let (_, kb) = small(seed);
        let inds: BTreeSet<TermId> = kb.asserted.iter().flat_map(|f| f.individuals()).collect();
        for f in materialize(&kb).facts() {
            for i in f.individuals() {
                prop_assert!(inds.contains(&i));
            }
        }
    }

    #[test]
    fn every_proof_replays(seed in any::<u64>()) {
        let (_, kb) = small(seed);
        let closure = materialize(&kb);
        for f in closure.facts() {
            let proof = explain(&closure, f).unwrap();
            prop_assert!(proof.replays(&kb, &kb.asserted));
            prop_assert!(proof.leaves().iter().all(|l| kb.asserted.binary_search(l).is_ok()));
        }
    }

    #[test]
    fn clashes_only_cite_closure_facts(seed in any::<u64>()) {
        let (_, kb) = small(seed);
        let closure = materialize(&kb);
        for c in check_consistency(&kb, &closure, CheckConfig::default()) {
            prop_assert!(c.facts.iter().all(|f| closure.contains(f)));
        }
    }
}

#[test]
fn generated_kbs_exercise_every_rule() {
    let mut seen = BTreeSet::new();
    let mut clashes = BTreeSet::new();
    for seed in 0..200 {
        let (_, kb) = small(seed);
        let closure = materialize(&kb);
        for f in closure.facts() {
            if let Support::Derived { rule, .. } = closure.support(closure.id_of(f).unwrap()) {
                seen.insert(*rule);
            }
        }
        for c in check_consistency(&kb, &closure, CheckConfig::default()) {
            clashes.insert(c.kind);
        }
    }
    assert_eq!(seen, RuleId::ALL.iter().copied().collect());
    assert_eq!(clashes.len(), 3);
}

#[test]
fn punned_names_keep_class_and_individual_apart() {
    let src = "Prefix(:=<http://x#>)\nOntology(\nDeclaration(Class(:Fondo))\nDeclaration(NamedIndividual(:Fondo))\nSubClassOf(:Fondo :Unita)\nClassAssertion(:Collezione :Fondo)\nClassAssertion(:Fondo :f1)\n)";
    let kb = build_kb(&[parse_str(src, Mode::Strict).unwrap().ontology]).unwrap();
    let closure = materialize(&kb);
    let id = |l: &str| kb.id(&Iri::new(format!("http://x#{l}"))).unwrap();
    assert!(closure.is_member(id("f1"), id("Unita")));
    assert!(!closure.is_member(id("Fondo"), id("Unita")));
    assert_eq!(closure.classes_of(id("Fondo")), &BTreeSet::from([id("Collezione")]));
}
