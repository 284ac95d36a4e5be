use std::collections::{BTreeMap, BTreeSet};

use crate::kb::{KnowledgeBase, TermId};

/// Reflexive-transitive subsumption between named classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subsumption {
    supers: BTreeMap<TermId, BTreeSet<TermId>>,
}

impl Subsumption {
    pub fn subsumes(&self, sub: TermId, sup: TermId) -> bool {
        sub == sup || self.supers.get(&sub).is_some_and(|s| s.contains(&sup))
    }

    /// All superclasses of `c`, itself included.
    pub fn superclasses(&self, c: TermId) -> BTreeSet<TermId> {
        let mut s = self.supers.get(&c).cloned().unwrap_or_default();
        s.insert(c);
        s
    }

    pub fn classes(&self) -> impl Iterator<Item = TermId> + '_ {
        self.supers.keys().copied()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (TermId, TermId)> + '_ {
        self.supers.iter().flat_map(|(a, bs)| bs.iter().map(move |b| (*a, *b)))
    }

    pub fn equivalent(&self, a: TermId, b: TermId) -> bool {
        self.subsumes(a, b) && self.subsumes(b, a)
    }
}

/// Closes the subclass and union-member edges by a search from every class.
pub fn classify(kb: &KnowledgeBase) -> Subsumption {
    let ix = &kb.index;
    let mut supers = BTreeMap::new();
    for c in kb.classes() {
        let mut seen = BTreeSet::from([c]);
        let mut stack = vec![c];
        while let Some(x) = stack.pop() {
            for &d in ix.sub.get(&x).into_iter().flatten().chain(ix.uni.get(&x).into_iter().flatten()) {
                if seen.insert(d) {
                    stack.push(d);
                }
            }
        }
        supers.insert(c, seen);
    }
    Subsumption { supers }
}
