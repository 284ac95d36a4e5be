use super::terms::{LitId, TermId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fact {
    Member { ind: TermId, class: TermId },
    Edge { prop: TermId, subj: TermId, obj: TermId },
    Data { prop: TermId, subj: TermId, lit: LitId },
}

impl Fact {
    /// Individuals mentioned by the fact.
    pub fn individuals(&self) -> impl Iterator<Item = TermId> {
        let (a, b) = match *self {
            Fact::Member { ind, .. } => (ind, None),
            Fact::Edge { subj, obj, .. } => (subj, Some(obj)),
            Fact::Data { subj, .. } => (subj, None),
        };
        std::iter::once(a).chain(b)
    }
}
