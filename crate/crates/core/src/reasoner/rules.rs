use super::RuleId;
use crate::kb::{Fact, KnowledgeBase, PropRef};

/// Every single-premise consequence of `fact` under the rule set.
pub fn fire(kb: &KnowledgeBase, fact: &Fact) -> Vec<(RuleId, Fact)> {
    let ix = &kb.index;
    let mut out = Vec::new();
    match *fact {
        Fact::Member { ind, class } => {
            for &d in ix.sub.get(&class).into_iter().flatten() {
                out.push((RuleId::Sub, Fact::Member { ind, class: d }));
            }
            for &d in ix.uni.get(&class).into_iter().flatten() {
                out.push((RuleId::Uni, Fact::Member { ind, class: d }));
            }
        }
        Fact::Edge { prop, subj, obj } => {
            for &d in ix.domain.get(&prop).into_iter().flatten() {
                out.push((RuleId::Dom, Fact::Member { ind: subj, class: d }));
            }
            for &r in ix.range.get(&prop).into_iter().flatten() {
                out.push((RuleId::Rng, Fact::Member { ind: obj, class: r }));
            }
            for &(q, flipped) in ix.sub_obj.get(&prop).into_iter().flatten() {
                if flipped {
                    out.push((RuleId::Inv, Fact::Edge { prop: q, subj: obj, obj: subj }));
                } else {
                    out.push((RuleId::Spo, Fact::Edge { prop: q, subj, obj }));
                }
            }
            for (inverse, ind) in [(false, subj), (true, obj)] {
                for &c in ix.some_obj.get(&PropRef { prop, inverse }).into_iter().flatten() {
                    out.push((RuleId::Some, Fact::Member { ind, class: c }));
                }
            }
        }
        Fact::Data { prop, subj, lit } => {
            for &d in ix.domain.get(&prop).into_iter().flatten() {
                out.push((RuleId::Dom, Fact::Member { ind: subj, class: d }));
            }
            for &e in ix.sub_data.get(&prop).into_iter().flatten() {
                out.push((RuleId::Spo, Fact::Data { prop: e, subj, lit }));
            }
            for &e in ix.equiv_data.get(&prop).into_iter().flatten() {
                out.push((RuleId::Eqd, Fact::Data { prop: e, subj, lit }));
            }
            for &c in ix.some_data.get(&prop).into_iter().flatten() {
                out.push((RuleId::Some, Fact::Member { ind: subj, class: c }));
            }
        }
    }
    out
}
