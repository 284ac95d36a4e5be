use std::collections::HashMap;
use std::hash::Hash;

use crate::iri::{Iri, Literal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LitId(pub u32);

/// Dense, injective interning table.
#[derive(Clone, Debug)]
pub struct Interner<K, V> {
    values: Vec<K>,
    index: HashMap<K, V>,
}

impl<K, V> Default for Interner<K, V> {
    fn default() -> Self {
        Interner { values: Vec::new(), index: HashMap::new() }
    }
}

pub trait Handle: Copy {
    fn from_index(i: usize) -> Self;
    fn index(self) -> usize;
}

impl Handle for TermId {
    fn from_index(i: usize) -> Self {
        TermId(i as u32)
    }
    fn index(self) -> usize {
        self.0 as usize
    }
}

impl Handle for LitId {
    fn from_index(i: usize) -> Self {
        LitId(i as u32)
    }
    fn index(self) -> usize {
        self.0 as usize
    }
}

impl<K: Clone + Eq + Hash, V: Handle> Interner<K, V> {
    pub fn intern(&mut self, k: &K) -> V {
        if let Some(v) = self.index.get(k) {
            return *v;
        }
        let v = V::from_index(self.values.len());
        self.values.push(k.clone());
        self.index.insert(k.clone(), v);
        v
    }

    pub fn get(&self, k: &K) -> Option<V> {
        self.index.get(k).copied()
    }

    pub fn resolve(&self, v: V) -> &K {
        &self.values[v.index()]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (V, &K)> {
        self.values.iter().enumerate().map(|(i, k)| (V::from_index(i), k))
    }
}

pub type TermTable = Interner<Iri, TermId>;
pub type LiteralTable = Interner<Literal, LitId>;
