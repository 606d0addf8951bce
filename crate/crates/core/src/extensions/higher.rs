//! One-element simple extensions for relations of arity at least three.

use super::{appended, ExtensionResult, Metadata};
use crate::error::{Error, Result};
use crate::structure::{ElementId, RelationalStructure};

/// The simple binary structure on the input elements encoded by the new
/// tuples `(x, .., x, u, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HigherArityScaffold {
    pub x: ElementId,
    pub relation: String,
    /// Pairs `(u, v)` of the scaffold.
    pub pairs: Vec<(ElementId, ElementId)>,
}

impl HigherArityScaffold {
    pub fn lines(&self) -> Vec<String> {
        let pairs: Vec<String> = self.pairs.iter().map(|(u, v)| format!("{u}>{v}")).collect();
        vec![
            "construction: higher arity".into(),
            format!("new element: {}", self.x),
            format!("relation: {}", self.relation),
            format!("scaffold: {}", pairs.join(" ")),
        ]
    }
}

/// First relation of arity at least three.
fn wide_relation(a: &RelationalStructure) -> Result<usize> {
    (0..a.relation_count())
        .find(|&r| a.signature()[r].arity >= 3)
        .ok_or_else(|| Error::InvalidInput("no relation of arity at least three".into()))
}

/// Simple scaffold: a path (both directions) for `n >= 4`, otherwise a
/// simple tournament.
fn scaffold(n: usize) -> Vec<(ElementId, ElementId)> {
    match n {
        0 | 1 => Vec::new(),
        2 => vec![(0, 1)],
        3 => vec![(0, 1), (1, 2), (2, 0)],
        _ => (0..n - 1).flat_map(|i| [(i, i + 1), (i + 1, i)]).collect(),
    }
}

/// Adds one element `x` and the tuples `(x, .., x, u, v)` for every scaffold
/// pair `(u, v)`.
pub fn extend_higher_arity(a: &RelationalStructure) -> Result<ExtensionResult> {
    let r = wide_relation(a)?;
    let k = a.signature()[r].arity;
    let n = a.n();
    let (mut ext, added) = appended(a, 1);
    let x = added[0];
    let pairs = scaffold(n);
    for &(u, v) in &pairs {
        let mut t = vec![x; k - 2];
        t.extend([u, v]);
        ext.insert(r, t)?;
    }
    let meta = Metadata::HigherArity(HigherArityScaffold {
        x,
        relation: a.signature()[r].name.clone(),
        pairs,
    });
    Ok(ExtensionResult::new(ext, (0..n).collect(), added, meta))
}

/// For an irreflexive relation of arity `k` on `n >= k` elements: adds one
/// element `x` and every tuple with `x` in exactly one entry and distinct
/// input elements elsewhere. Symmetric inputs stay symmetric.
pub fn extend_irreflexive_kary(a: &RelationalStructure) -> Result<ExtensionResult> {
    let r = wide_relation(a)?;
    let k = a.signature()[r].arity;
    let n = a.n();
    if n < k {
        return Err(Error::InvalidInput(format!(
            "irreflexive extension needs at least {k} elements, got {n}"
        )));
    }
    if let Some(t) = a.tuples(r).find(|t| has_repeat(t)) {
        return Err(Error::InvalidInput(format!("tuple {t:?} repeats an entry")));
    }
    let (mut ext, added) = appended(a, 1);
    let x = added[0];
    let mut count = 0;
    for rest in arrangements(n, k - 1) {
        for pos in 0..k {
            let mut t = rest.clone();
            t.insert(pos, x);
            if ext.insert(r, t)? {
                count += 1;
            }
        }
    }
    let meta = Metadata::Irreflexive { x, tuples_added: count };
    Ok(ExtensionResult::new(ext, (0..n).collect(), added, meta))
}

fn has_repeat(t: &[ElementId]) -> bool {
    t.iter().enumerate().any(|(i, a)| t[i + 1..].contains(a))
}

/// All sequences of `len` distinct elements of `0..n`.
fn arrangements(n: usize, len: usize) -> Vec<Vec<ElementId>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<ElementId>| {
                (0..n)
                    .filter(|v| !prefix.contains(v))
                    .map(|v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intervals::is_simple;
    use crate::structure::{hypergraph, validate, StructureClass};

    #[test]
    fn empty_ternary_on_five() {
        let a = RelationalStructure::for_class(5, StructureClass::Kary(3));
        let e = extend_higher_arity(&a).unwrap();
        assert_eq!(e.added_count(), 1);
        assert!(e.is_simple());
        assert!(e.extended.holds(0, &[5, 0, 1]) && e.extended.holds(0, &[5, 1, 0]));
        assert_eq!(e.extended.tuple_count(0), 8);
    }

    #[test]
    fn small_scaffolds() {
        for n in 1..=3 {
            let a = RelationalStructure::for_class(n, StructureClass::Kary(3));
            assert!(is_simple(&extend_higher_arity(&a).unwrap().extended), "n={n}");
        }
    }

    #[test]
    fn hypergraph_stays_a_hypergraph() {
        let h = hypergraph(5, 3, &[vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        let e = extend_irreflexive_kary(&h).unwrap();
        assert!(e.is_simple());
        assert!(validate(&e.extended, StructureClass::Hypergraph(3)).unwrap().is_ok());
        assert!(e.restricts_to(&h));
    }

    #[test]
    fn repeated_entries_are_rejected() {
        let mut a = RelationalStructure::for_class(4, StructureClass::Kary(3));
        a.insert(0, vec![0, 0, 1]).unwrap();
        assert!(extend_irreflexive_kary(&a).is_err());
    }
}
