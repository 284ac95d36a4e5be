use std::collections::BTreeSet;

use modeus_core::corpus::load_corpus;
use modeus_core::kb::{build_kb, KbError, Requirement, TermId, Trigger};
use modeus_core::ofs::{parse_str, EntityKind, Mode};
use modeus_core::render::Renderer;
use modeus_core::{Iri, KnowledgeBase};
use modeus_testkit::gen::{rng, small_kb, Sizes};
use modeus_testkit::matrix;
use proptest::prelude::*;

const M: &str = "http://modeus.uniroma1.it/ontology#";

fn corpus() -> KnowledgeBase {
    let c = load_corpus().unwrap();
    build_kb(&[c.tbox, c.abox]).unwrap()
}

fn t(kb: &KnowledgeBase, local: &str) -> TermId {
    kb.id(&Iri::new(format!("{M}{local}"))).unwrap_or_else(|| panic!("{local}"))
}

#[test]
fn acqua_and_strada_are_disjoint() {
    let kb = corpus();
    let (a, s) = (t(&kb, "Acqua"), t(&kb, "Strada"));
    assert!(kb.index.disjoint_classes.contains(&(a.min(s), a.max(s))));
}

#[test]
fn direct_superclasses_of_mappa_and_fondo() {
    let kb = corpus();
    assert_eq!(kb.direct_superclasses(t(&kb, "Mappa")).unwrap(), BTreeSet::from([t(&kb, "Scrittura_impianto_primaria")]));
    assert_eq!(kb.direct_superclasses(t(&kb, "Fondo")).unwrap(), BTreeSet::from([t(&kb, "Unità_di_descrizione")]));
    assert_eq!(kb.direct_superclasses(TermId(u32::MAX)), Err(KbError::UnknownTerm(u32::MAX)));
}

#[test]
fn direct_superclasses_agree_with_axiom_edges() {
    let c = load_corpus().unwrap();
    let onts = [c.tbox.clone(), c.abox.clone()];
    let kb = build_kb(&onts).unwrap();
    let edges = matrix::edges(&onts);
    for cls in kb.classes() {
        let iri = kb.iri(cls);
        let expected: BTreeSet<TermId> =
            edges.iter().filter(|(a, b)| a == iri && b != iri).map(|(_, b)| kb.id(b).unwrap()).collect();
        assert_eq!(kb.direct_superclasses(cls).unwrap(), expected, "{iri}");
    }
}

#[test]
fn mappa_must_have_a_scale() {
    let kb = corpus();
    let ps = kb.mandatory_participations(t(&kb, "Mappa"));
    assert!(ps.iter().any(|p| p.required == vec![Requirement::Data(t(&kb, "scala_mappa"))]));
    assert!(ps.iter().all(|p| p.trigger == Trigger::Class(t(&kb, "Mappa"))));
    assert!(!kb.cardinalities(t(&kb, "Mappa")).is_empty());
}

#[test]
fn corpus_entity_kinds_do_not_overlap() {
    let kb = corpus();
    let op = kb.declared(EntityKind::ObjectProperty);
    let dp = kb.declared(EntityKind::DataProperty);
    assert!(op.is_disjoint(dp));
    assert!(!kb.declared(EntityKind::NamedIndividual).is_empty());
}

#[test]
fn class_assertion_of_a_complex_expression_is_rejected() {
    let o = parse_str("ClassAssertion(ObjectUnionOf(<http://x#A> <http://x#B>) <http://x#i>)", Mode::Strict)
        .unwrap()
        .ontology;
    assert!(matches!(build_kb(&[o]), Err(KbError::ComplexClassAssertion { .. })));
}

#[test]
fn empty_kb_has_nothing() {
    let kb = KnowledgeBase::empty();
    assert!(kb.asserted.is_empty());
    assert!(kb.classes().is_empty());
    assert_eq!(kb.counts().axioms, 0);
}

fn rendered(kb: &KnowledgeBase) -> (BTreeSet<String>, BTreeSet<String>) {
    let r = Renderer::full();
    let facts = kb.asserted.iter().map(|f| r.fact(kb, f)).collect();
    let axioms = kb.axioms.iter().map(|a| format!("{a:?}")).collect();
    (facts, axioms)
}

#[test]
fn merge_order_does_not_change_content() {
    let c = load_corpus().unwrap();
    let ab = build_kb(&[c.tbox.clone(), c.abox.clone()]).unwrap();
    let ba = build_kb(&[c.abox, c.tbox]).unwrap();
    assert_eq!(rendered(&ab), rendered(&ba));
    assert_eq!(ab.counts(), ba.counts());
}

#[test]
fn indices_rebuild_identically() {
    let kb = corpus();
    assert_eq!(kb.rebuild_indices(), kb.index);
}

proptest! {
    #[test]
    fn generated_kbs_merge_commutatively(seed in any::<u64>()) {
        let g = small_kb(&mut rng(seed), Sizes::default());
        let ab = build_kb(&[g.tbox.clone(), g.abox.clone()]).unwrap();
        let ba = build_kb(&[g.abox.clone(), g.tbox.clone()]).unwrap();
        prop_assert_eq!(rendered(&ab), rendered(&ba));
        prop_assert_eq!(ab.rebuild_indices(), ab.index.clone());
    }

    #[test]
    fn duplicating_an_ontology_changes_nothing(seed in any::<u64>()) {
        let g = small_kb(&mut rng(seed), Sizes::default());
        let once = build_kb(&g.ontologies()).unwrap();
        let mut twice_in = g.ontologies();
        twice_in.extend(g.ontologies());
        let twice = build_kb(&twice_in).unwrap();
        prop_assert_eq!(rendered(&once), rendered(&twice));
        prop_assert_eq!(once.index, twice.index);
    }

    #[test]
    fn interning_is_injective(seed in any::<u64>()) {
        let g = small_kb(&mut rng(seed), Sizes::default());
        let kb = build_kb(&g.ontologies()).unwrap();
        let mut seen = BTreeSet::new();
        for (i, iri) in kb.terms.iter() {
            prop_assert_eq!(kb.id(iri), Some(i));
            prop_assert!(seen.insert(iri.clone()));
        }
    }
}
