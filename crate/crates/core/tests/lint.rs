use modeus_core::corpus::{load_corpus, ONE_TO_ONE_PROPERTY};
use modeus_core::kb::{build_kb, Requirement};
use modeus_core::ofs::{parse_str, Mode};
use modeus_core::reasoner::{
    lint_completeness, materialize, CheckConfig, ConstraintRef, LintKind, LintOptions, Report,
};
use modeus_core::render::Renderer;
use modeus_core::{Iri, KnowledgeBase};
use modeus_testkit::gen::{rng, small_kb, Sizes};
use proptest::prelude::*;

fn kb_of(body: &str) -> KnowledgeBase {
    let src = format!("Prefix(:=<http://x#>)\nOntology(<http://x>\n{body}\n)\n");
    build_kb(&[parse_str(&src, Mode::Strict).unwrap().ontology]).unwrap()
}

fn kinds(kb: &KnowledgeBase, options: &LintOptions) -> Vec<(LintKind, String)> {
    let r = Renderer::new(kb.prefixes.clone(), false);
    lint_completeness(kb, &materialize(kb), options).into_iter().map(|l| (l.kind, r.term(kb, l.individual))).collect()
}

#[test]
fn empty_kb_has_no_lints() {
    assert!(kinds(&KnowledgeBase::empty(), &LintOptions::default()).is_empty());
}

#[test]
fn participation_gaps() {
    let kb = kb_of(
        "SubClassOf(:A ObjectSomeValuesFrom(:p owl:Thing))
SubClassOf(:A DataSomeValuesFrom(:d rdfs:Literal))
SubClassOf(:A ObjectUnionOf(ObjectSomeValuesFrom(:q owl:Thing) ObjectSomeValuesFrom(:r owl:Thing)))
ClassAssertion(:A :bare)
ClassAssertion(:A :full)
ObjectPropertyAssertion(:p :full :o)
DataPropertyAssertion(:d :full \"1\")
ObjectPropertyAssertion(:r :full :o)",
    );
    let got = kinds(&kb, &LintOptions::default());
    assert_eq!(
        got,
        vec![
            (LintKind::MissingMandatoryObjectParticipation, ":bare".to_string()),
            (LintKind::MissingMandatoryDataProperty, ":bare".to_string()),
            (LintKind::AtLeastOneOfUnsatisfied, ":bare".to_string()),
        ]
    );
}

#[test]
fn shortfall_uses_the_tightest_minimum() {
    let kb = kb_of(
        "SubClassOf(:A ObjectMinCardinality(2 :p))
SubClassOf(:B ObjectMinCardinality(3 :p))
SubClassOf(:A :B)
ClassAssertion(:A :a)
ObjectPropertyAssertion(:p :a :o1)",
    );
    let lints = lint_completeness(&kb, &materialize(&kb), &LintOptions::default());
    assert_eq!(lints.len(), 1);
    assert_eq!((lints[0].have, lints[0].need), (Some(1), Some(3)));
}

#[test]
fn untyped_object_of_a_union_range() {
    let kb = kb_of(
        "ObjectPropertyRange(:p ObjectUnionOf(:A :B))
ObjectPropertyAssertion(:p :s :o1)
ObjectPropertyAssertion(:p :s :o2)
ClassAssertion(:B :o2)",
    );
    assert_eq!(kinds(&kb, &LintOptions::default()), vec![(LintKind::RangeUnionUntyped, ":o1".to_string())]);
}

#[test]
fn one_to_one_is_opt_in() {
    let kb = kb_of(
        "ObjectPropertyAssertion(:p :a :x)
ObjectPropertyAssertion(:p :a :y)
ObjectPropertyAssertion(:p :b :y)",
    );
    assert!(kinds(&kb, &LintOptions::default()).is_empty());
    let p = kb.id(&Iri::new("http://x#p")).unwrap();
    let got = kinds(&kb, &LintOptions { one_to_one: vec![p] });
    assert_eq!(got, vec![(LintKind::OneToOneViolated, ":a".to_string()), (LintKind::OneToOneViolated, ":y".to_string())]);
}

#[test]
fn corpus_one_to_one_check_runs() {
    let c = load_corpus().unwrap();
    let kb = build_kb(&[c.tbox, c.abox]).unwrap();
    let p = kb.id(&Iri::new(ONE_TO_ONE_PROPERTY)).unwrap();
    let closure = materialize(&kb);
    let base = lint_completeness(&kb, &closure, &LintOptions::default());
    let with = lint_completeness(&kb, &closure, &LintOptions { one_to_one: vec![p] });
    assert!(base.iter().all(|l| with.contains(l)));
    assert!(with.iter().filter(|l| !base.contains(l)).all(|l| l.kind == LintKind::OneToOneViolated));
}

#[test]
fn corpus_report_json() {
    let c = load_corpus().unwrap();
    let kb = build_kb(&[c.tbox, c.abox]).unwrap();
    let closure = materialize(&kb);
    let r = Renderer::new(kb.prefixes.clone(), false);
    let report = Report::build(&kb, &closure, CheckConfig::default(), &LintOptions::default(), &r);
    let json = report.to_json();
    assert!(json.ends_with("}\n"));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys.len(), 3);
    assert_eq!(v["clashes"].as_array().unwrap().len(), 0);
    assert_eq!(v["stats"]["asserted"].as_u64().unwrap() as usize, closure.asserted_count());
    assert_eq!(v["stats"]["derived"].as_u64().unwrap() as usize, closure.derived_count());
    let lints = v["lints"].as_array().unwrap();
    assert!(lints.iter().any(|l| l["kind"] == "missing-mandatory-data-property"
        && l["individual"] == ":mappa1"
        && l["required"][0] == ":scala_mappa"));
    assert!(lints.iter().any(|l| l["kind"] == "exact-cardinality-shortfall"
        && l["individual"] == ":mappa1"
        && l["have"] == 0
        && l["need"] == 3));
    assert_eq!(json, Report::build(&kb, &closure, CheckConfig::default(), &LintOptions::default(), &r).to_json());
}

proptest! {
    #[test]
    fn lints_are_sound_and_complete(seed in any::<u64>()) {
        let g = small_kb(&mut rng(seed), Sizes::default());
        let kb = build_kb(&g.ontologies()).unwrap();
        let closure = materialize(&kb);
        let lints = lint_completeness(&kb, &closure, &LintOptions::default());
        let holds = |ind, r: Requirement| match r {
            Requirement::Obj(p) => !closure.successors(ind, p).is_empty(),
            Requirement::Data(d) => closure.values(d, ind).next().is_some(),
        };
        for l in &lints {
            match &l.constraint {
                ConstraintRef::Participation(p) => prop_assert!(p.required.iter().all(|&r| !holds(l.individual, r))),
                ConstraintRef::Cardinality(c) => {
                    prop_assert!(closure.is_member(l.individual, c.class));
                    prop_assert_eq!(l.have, Some(closure.successors(l.individual, c.prop).len()));
                    prop_assert!(l.have.unwrap() < c.n as usize);
                }
                ConstraintRef::RangeUnion(ru) => {
                    prop_assert!(ru.classes.iter().all(|&c| !closure.is_member(l.individual, c)));
                }
                ConstraintRef::OneToOne { .. } => prop_assert!(false, "not requested"),
            }
        }
        for p in &kb.index.participation {
            for (ind, class) in closure.member_facts() {
                if p.trigger == modeus_core::kb::Trigger::Class(class) && p.required.iter().all(|&r| !holds(ind, r)) {
                    let covered = lints.iter().any(|l| l.individual == ind
                        && matches!(&l.constraint, ConstraintRef::Participation(q) if q.required == p.required));
                    prop_assert!(covered);
                }
            }
        }
    }
}
