use std::collections::{BTreeSet, HashMap};

use super::parser::{Predicate, Query, TermPattern, TriplePattern};
use crate::iri::{Iri, Literal};
use crate::kb::{KnowledgeBase, LitId, PropRef, TermId};
use crate::reasoner::{materialize, Closure, LiteralMatching};
use crate::render::Renderer;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(Iri),
    Literal(Literal),
}

impl Term {
    /// `<iri>` or `"lex"^^<dt>`; rows sort on this form.
    pub fn serialized(&self) -> String {
        match self {
            Term::Iri(i) => format!("<{}>", i.as_str()),
            Term::Literal(l) => l.to_ntriples(),
        }
    }

    pub fn render(&self, r: &Renderer) -> String {
        match self {
            Term::Iri(i) => r.iri(i),
            Term::Literal(l) => r.literal(l),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BindingSet {
    pub vars: Vec<String>,
    /// Distinct rows ordered by their serialized terms.
    pub rows: Vec<Vec<Term>>,
}

impl BindingSet {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Header of `?var` names, then one tab-separated line per row.
    pub fn to_tsv(&self, r: &Renderer) -> String {
        let mut out = self.vars.iter().map(|v| format!("?{v}")).collect::<Vec<_>>().join("\t");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.iter().map(|t| t.render(r)).collect::<Vec<_>>().join("\t"));
            out.push('\n');
        }
        out
    }

    /// A JSON array of objects keyed by variable name, in SELECT order.
    pub fn to_json(&self, r: &Renderer) -> String {
        let mut out = String::from("[");
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str(if i == 0 { "\n  {" } else { ",\n  {" });
            for (j, (v, t)) in self.vars.iter().zip(row).enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                let k = serde_json::to_string(v).expect("string serializes");
                let val = serde_json::to_string(&t.render(r)).expect("string serializes");
                out.push_str(&format!("{k}: {val}"));
            }
            out.push('}');
        }
        out.push_str(if self.rows.is_empty() { "]\n" } else { "\n]\n" });
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Val {
    Ind(TermId),
    Lit(LitId),
}

/// A pattern position after resolving constants against the KB.
#[derive(Clone, Debug)]
enum Slot {
    Var(usize),
    Ind(TermId),
    Lit(Literal),
    /// A constant IRI the KB has never seen.
    Missing,
}

#[derive(Clone, Debug)]
enum Pred {
    Type,
    Prop(TermId),
    Missing,
}

struct Pattern {
    s: Slot,
    p: Pred,
    o: Slot,
}

struct Eval<'a> {
    kb: &'a KnowledgeBase,
    closure: &'a Closure,
    matching: LiteralMatching,
    patterns: Vec<Pattern>,
    binding: Vec<Option<Val>>,
    project: Vec<usize>,
    results: BTreeSet<Vec<Val>>,
}

impl Eval<'_> {
    fn bound(&self, s: &Slot) -> bool {
        match s {
            Slot::Var(v) => self.binding[*v].is_some(),
            _ => true,
        }
    }

    fn score(&self, p: &Pattern) -> usize {
        self.bound(&p.s) as usize + self.bound(&p.o) as usize
    }

    fn search(&mut self, remaining: &mut Vec<usize>) {
        if remaining.is_empty() {
            let row = self.project.iter().map(|&v| self.binding[v].expect("projected variable bound")).collect();
            self.results.insert(row);
            return;
        }
        // Most-bound pattern first; the original position breaks ties.
        let (pos, _) = remaining
            .iter()
            .enumerate()
            .max_by_key(|(i, &p)| (self.score(&self.patterns[p]), std::cmp::Reverse(*i)))
            .expect("non-empty");
        let pi = remaining.remove(pos);
        for (s, o) in self.matches(pi) {
            let saved = self.binding.clone();
            if self.bind(&self.patterns[pi].s.clone(), s) && self.bind(&self.patterns[pi].o.clone(), o) {
                self.search(remaining);
            }
            self.binding = saved;
        }
        remaining.insert(pos, pi);
    }

    fn bind(&mut self, slot: &Slot, v: Val) -> bool {
        match slot {
            Slot::Var(i) => match self.binding[*i] {
                Some(b) => b == v,
                None => {
                    self.binding[*i] = Some(v);
                    true
                }
            },
            _ => true,
        }
    }

    fn value(&self, s: &Slot) -> Option<Val> {
        match s {
            Slot::Var(v) => self.binding[*v],
            Slot::Ind(t) => Some(Val::Ind(*t)),
            _ => None,
        }
    }

    fn obj_ok(&self, o: &Slot, v: Val) -> bool {
        match (o, v) {
            (Slot::Var(i), v) => self.binding[*i].is_none_or(|b| b == v),
            (Slot::Ind(t), Val::Ind(x)) => *t == x,
            (Slot::Lit(l), Val::Lit(x)) => self.matching.matches(l, self.kb.literal(x)),
            _ => false,
        }
    }

    /// Candidate (subject, object) pairs for a pattern under the current binding.
    fn matches(&self, pi: usize) -> Vec<(Val, Val)> {
        let p = &self.patterns[pi];
        if matches!(p.s, Slot::Missing | Slot::Lit(_)) || matches!(p.o, Slot::Missing) {
            return Vec::new();
        }
        let subj = self.value(&p.s);
        if matches!(subj, Some(Val::Lit(_))) {
            return Vec::new();
        }
        let subj = subj.map(|v| match v {
            Val::Ind(t) => t,
            Val::Lit(_) => unreachable!(),
        });
        let obj = self.value(&p.o);
        let c = self.closure;
        let mut out = Vec::new();
        match p.p {
            Pred::Missing => {}
            Pred::Type => match (subj, obj) {
                (_, Some(Val::Lit(_))) => {}
                (Some(s), _) => {
                    for &cl in c.classes_of(s) {
                        if self.obj_ok(&p.o, Val::Ind(cl)) {
                            out.push((Val::Ind(s), Val::Ind(cl)));
                        }
                    }
                }
                (None, Some(Val::Ind(cl))) => {
                    for &s in c.members(cl) {
                        out.push((Val::Ind(s), Val::Ind(cl)));
                    }
                }
                (None, None) => {
                    for (s, cl) in c.member_facts() {
                        if self.obj_ok(&p.o, Val::Ind(cl)) {
                            out.push((Val::Ind(s), Val::Ind(cl)));
                        }
                    }
                }
            },
            Pred::Prop(prop) => {
                let fwd = PropRef { prop, inverse: false };
                match (subj, obj) {
                    (Some(s), _) => {
                        for &o in c.successors(s, fwd) {
                            if self.obj_ok(&p.o, Val::Ind(o)) {
                                out.push((Val::Ind(s), Val::Ind(o)));
                            }
                        }
                    }
                    (None, Some(Val::Ind(o))) => {
                        for &s in c.successors(o, PropRef { prop, inverse: true }) {
                            out.push((Val::Ind(s), Val::Ind(o)));
                        }
                    }
                    (None, _) => {
                        for (s, o) in c.edges(prop) {
                            if self.obj_ok(&p.o, Val::Ind(o)) {
                                out.push((Val::Ind(s), Val::Ind(o)));
                            }
                        }
                    }
                }
                match subj {
                    Some(s) => {
                        for l in c.values(prop, s) {
                            if self.obj_ok(&p.o, Val::Lit(l)) {
                                out.push((Val::Ind(s), Val::Lit(l)));
                            }
                        }
                    }
                    None => {
                        for (s, l) in c.data(prop) {
                            if self.obj_ok(&p.o, Val::Lit(l)) {
                                out.push((Val::Ind(s), Val::Lit(l)));
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Joins the query's patterns over `closure`.
pub fn evaluate(query: &Query, kb: &KnowledgeBase, closure: &Closure, matching: LiteralMatching) -> BindingSet {
    let mut vars: HashMap<String, usize> = HashMap::new();
    let slot = |t: &TermPattern, vars: &mut HashMap<String, usize>| -> Slot {
        match t {
            TermPattern::Var(v) => {
                let n = vars.len();
                Slot::Var(*vars.entry(v.clone()).or_insert(n))
            }
            TermPattern::Iri(i) => kb.id(i).map_or(Slot::Missing, Slot::Ind),
            TermPattern::Literal(l) => Slot::Lit(l.clone()),
        }
    };
    let patterns: Vec<Pattern> = query
        .patterns
        .iter()
        .map(|TriplePattern { subject, predicate, object }| Pattern {
            s: slot(subject, &mut vars),
            p: match predicate {
                Predicate::Type => Pred::Type,
                Predicate::Iri(i) => kb.id(i).map_or(Pred::Missing, Pred::Prop),
            },
            o: slot(object, &mut vars),
        })
        .collect();
    let project = query.select.iter().map(|v| vars[v.as_str()]).collect();
    let mut ev = Eval {
        kb,
        closure,
        matching,
        binding: vec![None; vars.len()],
        patterns,
        project,
        results: BTreeSet::new(),
    };
    let mut remaining: Vec<usize> = (0..ev.patterns.len()).collect();
    ev.search(&mut remaining);
    let mut rows: Vec<(String, Vec<Term>)> = ev
        .results
        .into_iter()
        .map(|r| {
            let terms: Vec<Term> = r
                .into_iter()
                .map(|v| match v {
                    Val::Ind(t) => Term::Iri(kb.iri(t).clone()),
                    Val::Lit(l) => Term::Literal(kb.literal(l).clone()),
                })
                .collect();
            (terms.iter().map(Term::serialized).collect::<Vec<_>>().join("\t"), terms)
        })
        .collect();
    rows.sort();
    rows.dedup();
    BindingSet { vars: query.select.clone(), rows: rows.into_iter().map(|(_, r)| r).collect() }
}

/// With `use_closure` false only asserted facts are consulted.
pub fn evaluate_with_reasoning_flag(
    query: &Query,
    kb: &KnowledgeBase,
    use_closure: bool,
    matching: LiteralMatching,
) -> BindingSet {
    let closure = if use_closure { materialize(kb) } else { Closure::asserted_only(kb) };
    evaluate(query, kb, &closure, matching)
}
