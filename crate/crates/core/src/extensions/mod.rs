//! Simple extensions: the per-class constructions and the dispatching
//! [`extend`] entry point.

mod digraph;
mod graph;
mod higher;
mod permutation;
mod poset;
mod tournament;

pub use digraph::{extend_digraph, extend_oriented_graph, DigraphEncoding, OrientedEncoding};
pub use graph::{extend_graph, GraphExtension};
pub use higher::{extend_higher_arity, extend_irreflexive_kary, HigherArityScaffold};
pub use permutation::{extend_permutation, PermExtension, PermExtensionPair, PermVariant};
pub use poset::{extend_antichain_via_graph, extend_poset, PosetExtension, PosetExtensionQuad, PosetVariant};
pub use tournament::{
    extend_tournament, has_one_point_tournament_extension, TournamentExtensionSet, TournamentVariant,
};

use crate::error::{Error, Result};
use crate::intervals::is_simple;
use crate::structure::{check, restrict_ordered, ElementId, RelationalStructure, StructureClass};

/// An extension together with the embedding of the input into it.
#[derive(Clone, Debug)]
pub struct ExtensionResult {
    pub extended: RelationalStructure,
    /// `original_image[i]` is the id of input element `i`; strictly increasing.
    pub original_image: Vec<ElementId>,
    /// Ids of the added elements, sorted.
    pub added: Vec<ElementId>,
    pub metadata: Metadata,
}

impl ExtensionResult {
    pub fn new(
        extended: RelationalStructure,
        original_image: Vec<ElementId>,
        mut added: Vec<ElementId>,
        metadata: Metadata,
    ) -> Self {
        added.sort_unstable();
        Self {
            extended,
            original_image,
            added,
            metadata,
        }
    }

    /// The input itself, with nothing added.
    pub fn unchanged(s: RelationalStructure) -> Self {
        let image = (0..s.n()).collect();
        Self::new(s, image, Vec::new(), Metadata::Unchanged)
    }

    pub fn added_count(&self) -> usize {
        self.added.len()
    }

    pub fn is_simple(&self) -> bool {
        is_simple(&self.extended)
    }

    /// Whether the extension restricted to the image is exactly `s`.
    pub fn restricts_to(&self, s: &RelationalStructure) -> bool {
        restrict_ordered(&self.extended, &self.original_image).is_ok_and(|r| &r == s)
    }
}

/// How an extension was produced, with the construction's distinguished
/// elements (ids in the extended structure).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Metadata {
    Unchanged,
    Search,
    Tournament {
        variant: TournamentVariant,
        added: Vec<ElementId>,
    },
    Graph {
        independent: Vec<ElementId>,
    },
    Permutation {
        variant: PermVariant,
        entry: ElementId,
        exit: ElementId,
        linking: Vec<ElementId>,
    },
    Poset {
        variant: PosetVariant,
        ext1: ElementId,
        ext2: ElementId,
    },
    PosetViaGraph {
        independent: Vec<ElementId>,
    },
    Digraph(DigraphEncoding),
    Oriented(OrientedEncoding),
    HigherArity(HigherArityScaffold),
    Irreflexive {
        x: ElementId,
        tuples_added: usize,
    },
}

impl Metadata {
    /// Human-readable `key: value` lines for reports.
    pub fn lines(&self) -> Vec<String> {
        let ids = |v: &[ElementId]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        match self {
            Metadata::Unchanged => vec!["construction: none (already simple)".into()],
            Metadata::Search => vec!["construction: exhaustive search".into()],
            Metadata::Tournament { variant, added } => vec![
                format!("construction: tournament {variant}"),
                format!("new vertices: {}", ids(added)),
            ],
            Metadata::Graph { independent } => vec![
                "construction: graph".into(),
                format!("independent set: {}", ids(independent)),
            ],
            Metadata::Permutation {
                variant,
                entry,
                exit,
                linking,
            } => vec![
                format!("construction: permutation {variant}"),
                format!("entry: {entry}"),
                format!("exit: {exit}"),
                format!("linking: {}", ids(linking)),
            ],
            Metadata::Poset { variant, ext1, ext2 } => vec![
                format!("construction: poset {variant}"),
                format!("ext1: {ext1}"),
                format!("ext2: {ext2}"),
            ],
            Metadata::PosetViaGraph { independent } => vec![
                "construction: antichain via graph".into(),
                format!("upper set: {}", ids(independent)),
            ],
            Metadata::Digraph(e) => e.lines(),
            Metadata::Oriented(e) => e.lines(),
            Metadata::HigherArity(h) => h.lines(),
            Metadata::Irreflexive { x, tuples_added } => vec![
                "construction: irreflexive k-ary".into(),
                format!("new element: {x}"),
                format!("tuples added: {tuples_added}"),
            ],
        }
    }
}

/// Least `m` with `base^m >= value`.
pub(crate) fn ceil_log(base: usize, value: usize) -> usize {
    let mut m = 0;
    let mut p = 1usize;
    while p < value {
        p = p.saturating_mul(base);
        m += 1;
    }
    m
}

/// Upper bound on the number of added elements guaranteed for class `c` on
/// `n` elements.
pub fn bound(c: StructureClass, n: usize) -> Result<usize> {
    use StructureClass::*;
    if n == 0 {
        return Err(Error::InvalidInput("bound needs n >= 1".into()));
    }
    Ok(match c {
        Tournament => 2,
        Graph => ceil_log(2, n + 1),
        Permutation | Poset => (n + 2) / 2,
        Digraph => ceil_log(4, n + 1),
        OrientedGraph => ceil_log(3, n + 1),
        Kary(k) | KaryIrreflexive(k) | Hypergraph(k) if k >= 3 => 1,
        _ => return Err(Error::Unsupported(c)),
    })
}

/// A simple extension of `s` within `class`. Simple inputs are returned
/// unchanged; otherwise the class construction is applied.
pub fn extend(s: &RelationalStructure, class: StructureClass) -> Result<ExtensionResult> {
    use StructureClass::*;
    check(s, class)?;
    if s.n() == 0 {
        return Err(Error::InvalidInput("cannot extend an empty structure".into()));
    }
    if is_simple(s) {
        return Ok(ExtensionResult::unchanged(s.clone()));
    }
    let result = match class {
        Graph => extend_graph(s)?.into_result(),
        Tournament => extend_tournament(s)?.best(),
        Digraph => extend_digraph(s)?,
        OrientedGraph => extend_oriented_graph(s)?,
        Permutation => extend_permutation(s)?.best()?,
        Poset => poset::best(s)?,
        Kary(k) if k >= 3 => extend_higher_arity(s)?,
        KaryIrreflexive(k) | Hypergraph(k) if k >= 3 => extend_irreflexive_kary(s)?,
        _ => return Err(Error::Unsupported(class)),
    };
    if !result.is_simple() {
        return Err(Error::ContractViolation(format!(
            "{class} construction produced a non-simple extension"
        )));
    }
    Ok(result)
}

/// Appends `m` elements to a copy of `s`; originals keep their ids.
pub(crate) fn appended(s: &RelationalStructure, m: usize) -> (RelationalStructure, Vec<ElementId>) {
    let mut ext = s.clone();
    let first = ext.add_elements(m);
    (ext, (first..first + m).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_follow_closed_forms() {
        use StructureClass::*;
        assert_eq!(bound(Graph, 7).unwrap(), 3);
        assert_eq!(bound(Graph, 8).unwrap(), 4);
        assert_eq!(bound(Permutation, 4).unwrap(), 3);
        assert_eq!(bound(Permutation, 5).unwrap(), 3);
        assert_eq!(bound(Poset, 1).unwrap(), 1);
        assert_eq!(bound(Digraph, 15).unwrap(), 2);
        assert_eq!(bound(Digraph, 16).unwrap(), 3);
        assert_eq!(bound(OrientedGraph, 8).unwrap(), 2);
        assert_eq!(bound(OrientedGraph, 9).unwrap(), 3);
        assert_eq!(bound(Tournament, 30).unwrap(), 2);
        assert_eq!(bound(Kary(3), 9).unwrap(), 1);
        assert!(bound(LinearOrder, 3).is_err());
        assert!(bound(Graph, 0).is_err());
    }
}
