use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};

use super::rules::fire;
use super::RuleId;
use crate::kb::{Fact, KnowledgeBase, LitId, PropRef, TermId};

pub type FactId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Support {
    Asserted,
    Derived { rule: RuleId, premises: Vec<FactId> },
}

/// The materialized fact store. Each fact keeps one support, chosen so that
/// its proof has the fewest steps outside the class hierarchy (R-SUB, R-UNI),
/// then the fewest steps overall, ties broken by (rule, premise ids).
#[derive(Clone, Debug, Default)]
pub struct Closure {
    facts: Vec<Fact>,
    support: Vec<Support>,
    ids: HashMap<Fact, FactId>,
    asserted: usize,
    members_of: BTreeMap<TermId, BTreeSet<TermId>>,
    classes_of: BTreeMap<TermId, BTreeSet<TermId>>,
    out_edges: BTreeMap<(TermId, TermId), BTreeSet<TermId>>,
    in_edges: BTreeMap<(TermId, TermId), BTreeSet<TermId>>,
    edges: BTreeMap<TermId, BTreeSet<(TermId, TermId)>>,
    values: BTreeMap<(TermId, TermId), BTreeSet<LitId>>,
    data: BTreeMap<TermId, BTreeSet<(TermId, LitId)>>,
}

static EMPTY_TERMS: BTreeSet<TermId> = BTreeSet::new();

pub fn materialize(kb: &KnowledgeBase) -> Closure {
    materialize_from(kb, kb.asserted.iter().copied())
}

/// Semi-naive fixpoint over the given base facts, followed by proof selection.
pub fn materialize_from(kb: &KnowledgeBase, base: impl IntoIterator<Item = Fact>) -> Closure {
    let mut c = Closure::default();
    let base: BTreeSet<Fact> = base.into_iter().collect();
    let mut delta: Vec<FactId> = Vec::with_capacity(base.len());
    for f in base {
        delta.push(c.insert(f, Support::Asserted));
    }
    c.asserted = c.facts.len();
    while !delta.is_empty() {
        let mut found: BTreeMap<Fact, (RuleId, FactId)> = BTreeMap::new();
        for &id in &delta {
            for (rule, concl) in fire(kb, &c.facts[id]) {
                if c.ids.contains_key(&concl) {
                    continue;
                }
                found
                    .entry(concl)
                    .and_modify(|best| {
                        if (rule, id) < *best {
                            *best = (rule, id);
                        }
                    })
                    .or_insert((rule, id));
            }
        }
        delta = found
            .into_iter()
            .map(|(f, (rule, premise))| c.insert(f, Support::Derived { rule, premises: vec![premise] }))
            .collect();
    }
    c.choose_proofs(kb);
    c
}

fn step_cost(rule: RuleId) -> (u32, u32) {
    match rule {
        RuleId::Sub | RuleId::Uni => (0, 1),
        _ => (1, 1),
    }
}

/// Closure holding only the given facts, with no rule applied.
pub fn unreasoned(base: impl IntoIterator<Item = Fact>) -> Closure {
    let mut c = Closure::default();
    let base: BTreeSet<Fact> = base.into_iter().collect();
    for f in base {
        c.insert(f, Support::Asserted);
    }
    c.asserted = c.facts.len();
    c
}

impl Closure {
    /// The asserted facts of `kb` alone.
    pub fn asserted_only(kb: &KnowledgeBase) -> Closure {
        unreasoned(kb.asserted.iter().copied())
    }

    /// Dijkstra over the single-premise derivation graph from the base facts.
    /// Costs only grow along a proof, so a fact's support is final once every
    /// cheaper fact has been expanded.
    fn choose_proofs(&mut self, kb: &KnowledgeBase) {
        type Key = ((u32, u32), RuleId, FactId);
        let mut best: Vec<Option<Key>> = vec![None; self.facts.len()];
        let mut heap = BinaryHeap::new();
        for (id, b) in best.iter_mut().enumerate().take(self.asserted) {
            *b = Some(((0, 0), RuleId::Sub, id));
            heap.push(Reverse(((0, 0), id)));
        }
        let mut done = vec![false; self.facts.len()];
        while let Some(Reverse((cost, id))) = heap.pop() {
            if done[id] {
                continue;
            }
            done[id] = true;
            for (rule, concl) in fire(kb, &self.facts[id]) {
                let Some(&cid) = self.ids.get(&concl) else { continue };
                if done[cid] {
                    continue;
                }
                let (a, b) = step_cost(rule);
                let key = ((cost.0 + a, cost.1 + b), rule, id);
                if best[cid].is_none_or(|k| key < k) {
                    best[cid] = Some(key);
                    heap.push(Reverse((key.0, cid)));
                }
            }
        }
        for (id, b) in best.iter().enumerate().skip(self.asserted) {
            let (_, rule, premise) = b.expect("every derived fact is reachable");
            self.support[id] = Support::Derived { rule, premises: vec![premise] };
        }
    }

    fn insert(&mut self, f: Fact, s: Support) -> FactId {
        let id = self.facts.len();
        self.facts.push(f);
        self.support.push(s);
        self.ids.insert(f, id);
        match f {
            Fact::Member { ind, class } => {
                self.members_of.entry(class).or_default().insert(ind);
                self.classes_of.entry(ind).or_default().insert(class);
            }
            Fact::Edge { prop, subj, obj } => {
                self.out_edges.entry((prop, subj)).or_default().insert(obj);
                self.in_edges.entry((prop, obj)).or_default().insert(subj);
                self.edges.entry(prop).or_default().insert((subj, obj));
            }
            Fact::Data { prop, subj, lit } => {
                self.values.entry((prop, subj)).or_default().insert(lit);
                self.data.entry(prop).or_default().insert((subj, lit));
            }
        }
        id
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn asserted_count(&self) -> usize {
        self.asserted
    }

    pub fn derived_count(&self) -> usize {
        self.facts.len() - self.asserted
    }

    pub fn contains(&self, f: &Fact) -> bool {
        self.ids.contains_key(f)
    }

    pub fn id_of(&self, f: &Fact) -> Option<FactId> {
        self.ids.get(f).copied()
    }

    pub fn fact(&self, id: FactId) -> &Fact {
        &self.facts[id]
    }

    pub fn support(&self, id: FactId) -> &Support {
        &self.support[id]
    }

    /// Facts in derivation order.
    pub fn facts(&self) -> impl Iterator<Item = &Fact> {
        self.facts.iter()
    }

    pub fn fact_set(&self) -> BTreeSet<Fact> {
        self.facts.iter().copied().collect()
    }

    pub fn members(&self, class: TermId) -> &BTreeSet<TermId> {
        self.members_of.get(&class).unwrap_or(&EMPTY_TERMS)
    }

    pub fn classes_of(&self, ind: TermId) -> &BTreeSet<TermId> {
        self.classes_of.get(&ind).unwrap_or(&EMPTY_TERMS)
    }

    pub fn is_member(&self, ind: TermId, class: TermId) -> bool {
        self.classes_of(ind).contains(&class)
    }

    /// Objects reached from `ind` along `p` (subjects reaching it when inverse).
    pub fn successors(&self, ind: TermId, p: PropRef) -> &BTreeSet<TermId> {
        let map = if p.inverse { &self.in_edges } else { &self.out_edges };
        map.get(&(p.prop, ind)).unwrap_or(&EMPTY_TERMS)
    }

    pub fn edges(&self, prop: TermId) -> impl Iterator<Item = (TermId, TermId)> + '_ {
        self.edges.get(&prop).into_iter().flatten().copied()
    }

    /// Individuals having at least one edge along `p` in its direction.
    pub fn subjects(&self, p: PropRef) -> BTreeSet<TermId> {
        self.edges(p.prop).map(|(s, o)| if p.inverse { o } else { s }).collect()
    }

    pub fn values(&self, prop: TermId, subj: TermId) -> impl Iterator<Item = LitId> + '_ {
        self.values.get(&(prop, subj)).into_iter().flatten().copied()
    }

    pub fn data(&self, prop: TermId) -> impl Iterator<Item = (TermId, LitId)> + '_ {
        self.data.get(&prop).into_iter().flatten().copied()
    }

    pub fn member_facts(&self) -> impl Iterator<Item = (TermId, TermId)> + '_ {
        self.classes_of.iter().flat_map(|(i, cs)| cs.iter().map(move |c| (*i, *c)))
    }

    pub fn edge_props(&self) -> impl Iterator<Item = TermId> + '_ {
        self.edges.keys().copied()
    }

    pub fn data_props(&self) -> impl Iterator<Item = TermId> + '_ {
        self.data.keys().copied()
    }
}
