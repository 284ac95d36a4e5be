use modeus_core::corpus::load_corpus;
use modeus_core::kb::build_kb;
use modeus_core::reasoner::{
    check_consistency, explain, lint_completeness, materialize, CheckConfig, LintKind, LintOptions, RuleId,
};
use modeus_core::render::Renderer;
use modeus_core::sparql::{evaluate, evaluate_with_reasoning_flag, parse_query};
use modeus_core::kb::{Requirement, TermId};
use modeus_core::reasoner::ConstraintRef;
use modeus_core::{Iri, KnowledgeBase, LiteralMatching};

fn corpus_kb() -> KnowledgeBase {
    let c = load_corpus().unwrap();
    build_kb(&[c.tbox, c.abox]).unwrap()
}

fn query_text(name: &str) -> String {
    let c = load_corpus().unwrap();
    c.queries.into_iter().find(|(n, _)| n == name).unwrap().1
}

fn renderer(kb: &KnowledgeBase) -> Renderer {
    Renderer::new(kb.prefixes.clone(), false)
}

#[test]
fn q23_returns_part5_and_part6() {
    let kb = corpus_kb();
    let closure = materialize(&kb);
    let q = parse_query(&query_text("q23.rq")).unwrap();
    let rows = evaluate(&q, &kb, &closure, LiteralMatching::Plain);
    assert_eq!(rows.to_tsv(&renderer(&kb)), "?particella\n:part5\n:part6\n");
    let strict = evaluate(&q, &kb, &closure, LiteralMatching::Strict);
    assert!(strict.is_empty());
}

#[test]
fn q24_returns_mappa1() {
    let kb = corpus_kb();
    let q = parse_query(&query_text("q24.rq")).unwrap();
    let rows = evaluate_with_reasoning_flag(&q, &kb, true, LiteralMatching::Plain);
    assert_eq!(rows.to_tsv(&renderer(&kb)), "?mappa\n:mappa1\n");
}

#[test]
fn mappa1_is_a_unit_of_description_through_two_subclass_steps() {
    let kb = corpus_kb();
    let closure = materialize(&kb);
    let f = kb.parse_fact("member(:mappa1, :Unità_di_descrizione)").unwrap().unwrap();
    let proof = explain(&closure, &f).unwrap();
    assert_eq!(proof.rules(), vec![RuleId::Sub, RuleId::Sub]);
    assert_eq!(proof.leaves(), vec![kb.parse_fact("member(:mappa1, :Mappa)").unwrap().unwrap()]);
    assert!(proof.replays(&kb, &kb.asserted));
    let c = load_corpus().unwrap();
    let golden = c.goldens.iter().find(|g| g.name == "explain-mappa1").unwrap();
    assert_eq!(proof.render(&kb, &renderer(&kb)), golden.expected_output);

    let q = parse_query("PREFIX : <http://modeus.uniroma1.it/ontology#>\nSELECT ?x WHERE { ?x a :Unità_di_descrizione }")
        .unwrap();
    let with = evaluate_with_reasoning_flag(&q, &kb, true, LiteralMatching::Plain);
    assert!(with.to_tsv(&renderer(&kb)).lines().any(|l| l == ":mappa1"));
    let without = evaluate_with_reasoning_flag(&q, &kb, false, LiteralMatching::Plain);
    assert!(without.is_empty());
}

#[test]
fn asserted_fact_explains_as_a_single_leaf() {
    let kb = corpus_kb();
    let closure = materialize(&kb);
    let f = kb.parse_fact("member(:geom1, :Geometra_R)").unwrap().unwrap();
    let proof = explain(&closure, &f).unwrap();
    assert_eq!(proof.rule, None);
    assert_eq!(proof.render(&kb, &renderer(&kb)), "member(:geom1, :Geometra_R) ASSERTED\n");
}

#[test]
fn acqua_is_not_entailed_for_mappa1() {
    let kb = corpus_kb();
    let closure = materialize(&kb);
    let f = kb.parse_fact("member(:mappa1, :Acqua)").unwrap().unwrap();
    assert!(explain(&closure, &f).is_err());
}

fn t(kb: &KnowledgeBase, local: &str) -> TermId {
    kb.id(&Iri::new(format!("http://modeus.uniroma1.it/ontology#{local}"))).unwrap()
}

#[test]
fn corpus_is_consistent_with_expected_lints() {
    let kb = corpus_kb();
    let closure = materialize(&kb);
    assert!(check_consistency(&kb, &closure, CheckConfig::default()).is_empty());
    let lints = lint_completeness(&kb, &closure, &LintOptions::default());
    let mappa1 = t(&kb, "mappa1");
    let scala = t(&kb, "scala_mappa");
    let riprodotta = t(&kb, "mappa_est_riprodotta_in");
    assert!(lints.iter().any(|l| l.individual == mappa1
        && l.kind == LintKind::MissingMandatoryDataProperty
        && matches!(&l.constraint, ConstraintRef::Participation(p) if p.required == vec![Requirement::Data(scala)])));
    let card: Vec<_> = lints
        .iter()
        .filter(|l| l.individual == mappa1 && l.kind == LintKind::ExactCardinalityShortfall)
        .collect();
    assert_eq!(card.len(), 1);
    assert_eq!((card[0].have, card[0].need), (Some(0), Some(3)));
    assert!(matches!(&card[0].constraint, ConstraintRef::Cardinality(c) if c.prop.prop == riprodotta && !c.prop.inverse));
}
