use thiserror::Error;

use super::{fire, Closure, RuleId, Support};
use crate::kb::{Fact, KnowledgeBase};
use crate::render::Renderer;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofTree {
    pub fact: Fact,
    /// `None` for an asserted leaf.
    pub rule: Option<RuleId>,
    pub children: Vec<ProofTree>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ExplainError {
    #[error("not entailed")]
    NotEntailed,
}

pub fn explain(closure: &Closure, fact: &Fact) -> Result<ProofTree, ExplainError> {
    let id = closure.id_of(fact).ok_or(ExplainError::NotEntailed)?;
    Ok(build(closure, id))
}

fn build(closure: &Closure, id: usize) -> ProofTree {
    let fact = *closure.fact(id);
    match closure.support(id) {
        Support::Asserted => ProofTree { fact, rule: None, children: Vec::new() },
        Support::Derived { rule, premises } => ProofTree {
            fact,
            rule: Some(*rule),
            children: premises.iter().map(|&p| build(closure, p)).collect(),
        },
    }
}

impl ProofTree {
    pub fn height(&self) -> usize {
        self.children.iter().map(|c| c.height() + 1).max().unwrap_or(0)
    }

    pub fn leaves(&self) -> Vec<Fact> {
        if self.children.is_empty() {
            return vec![self.fact];
        }
        self.children.iter().flat_map(|c| c.leaves()).collect()
    }

    /// Steps from root to leaf along the first child.
    pub fn rules(&self) -> Vec<RuleId> {
        let mut out = Vec::new();
        let mut node = self;
        while let Some(r) = node.rule {
            out.push(r);
            node = &node.children[0];
        }
        out
    }

    /// Re-fires each node's rule on its children and checks that the
    /// conclusion comes back; leaves must be in `asserted`.
    pub fn replays(&self, kb: &KnowledgeBase, asserted: &[Fact]) -> bool {
        match self.rule {
            None => self.children.is_empty() && asserted.binary_search(&self.fact).is_ok(),
            Some(rule) => {
                self.children.len() == 1
                    && fire(kb, &self.children[0].fact).contains(&(rule, self.fact))
                    && self.children.iter().all(|c| c.replays(kb, asserted))
            }
        }
    }
}

impl ProofTree {
    /// One node per line, children indented by two spaces, each line ending
    /// in `[RULE]` or `ASSERTED`.
    pub fn render(&self, kb: &KnowledgeBase, r: &Renderer) -> String {
        let mut out = String::new();
        self.render_into(kb, r, 0, &mut out);
        out
    }

    fn render_into(&self, kb: &KnowledgeBase, r: &Renderer, depth: usize, out: &mut String) {
        out.push_str(&"  ".repeat(depth));
        out.push_str(&r.fact(kb, &self.fact));
        match self.rule {
            Some(rule) => {
                out.push_str(" [");
                out.push_str(rule.name());
                out.push_str("]\n");
            }
            None => out.push_str(" ASSERTED\n"),
        }
        for c in &self.children {
            c.render_into(kb, r, depth + 1, out);
        }
    }
}
