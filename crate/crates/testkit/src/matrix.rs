//! Subsumption closure by repeated squaring of a boolean adjacency matrix,
//! built straight from the axioms.

use std::collections::BTreeMap;

use modeus_core::ofs::{AxiomKind, ClassExpression, Ontology};
use modeus_core::Iri;

fn named_members(ce: &ClassExpression, out: &mut Vec<Iri>) {
    match ce {
        ClassExpression::Named(i) => out.push(i.clone()),
        ClassExpression::Union(xs) => xs.iter().for_each(|x| named_members(x, out)),
        _ => {}
    }
}

fn named_conjuncts(ce: &ClassExpression, out: &mut Vec<Iri>) {
    match ce {
        ClassExpression::Named(i) => out.push(i.clone()),
        ClassExpression::Intersection(xs) => xs.iter().for_each(|x| named_conjuncts(x, out)),
        _ => {}
    }
}

/// Direct named-to-named inclusions implied by the axioms.
pub fn edges(onts: &[Ontology]) -> Vec<(Iri, Iri)> {
    let mut out = Vec::new();
    let incl = |x: &ClassExpression, y: &ClassExpression, out: &mut Vec<(Iri, Iri)>| {
        let (mut l, mut r) = (Vec::new(), Vec::new());
        named_members(x, &mut l);
        named_conjuncts(y, &mut r);
        for a in &l {
            for b in &r {
                out.push((a.clone(), b.clone()));
            }
        }
    };
    for o in onts {
        for a in &o.axioms {
            match &a.kind {
                AxiomKind::SubClassOf(x, y) => incl(x, y, &mut out),
                AxiomKind::EquivalentClasses(xs) => {
                    for x in xs {
                        for y in xs {
                            if x != y {
                                incl(x, y, &mut out);
                            }
                        }
                    }
                }
                _ => {}
            }
        }
    }
    out
}

/// Reflexive-transitive closure over `classes`.
pub fn closure(classes: &[Iri], edges: &[(Iri, Iri)]) -> BTreeMap<Iri, Vec<Iri>> {
    let n = classes.len();
    let pos: BTreeMap<&Iri, usize> = classes.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut m = vec![vec![false; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = true;
    }
    for (a, b) in edges {
        if let (Some(&i), Some(&j)) = (pos.get(a), pos.get(b)) {
            m[i][j] = true;
        }
    }
    // (I + A)^(2^k) reaches every path of length up to 2^k.
    let mut len = 1;
    while len < n.max(1) {
        let mut next = vec![vec![false; n]; n];
        for i in 0..n {
            for (k, row) in m.iter().enumerate() {
                if m[i][k] {
                    for j in 0..n {
                        if row[j] {
                            next[i][j] = true;
                        }
                    }
                }
            }
        }
        m = next;
        len *= 2;
    }
    classes
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), (0..n).filter(|&j| m[i][j]).map(|j| classes[j].clone()).collect()))
        .collect()
}
