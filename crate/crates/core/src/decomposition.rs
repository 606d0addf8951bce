//! Substitution decomposition: the root split of a structure, the pairwise
//! [`Decomposition`] with a canonical two-block split in the degenerate case,
//! and the n-ary [`DecompositionTree`].

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::intervals::IntervalIndex;
use crate::structure::{
    inflate_placed, restrict_ordered, ElementId, Permutation, RelationalStructure, ARC, EDGE,
    LESS, PREC,
};

/// Shape of the top level of the decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootKind {
    /// Maximal proper intervals are disjoint and there are at least three.
    Prime,
    /// Maximal proper intervals are disjoint and there are exactly two.
    Pair,
    /// Overlapping maximal intervals; the two-element quotient is symmetric
    /// under swapping, so every union of parts is an interval.
    Complete,
    /// Overlapping maximal intervals; the two-element quotient is not
    /// symmetric, so only runs of consecutive parts are intervals.
    Linear,
}

/// The top level of the decomposition.
///
/// For `Prime` and `Pair`, `parts` are the maximal proper intervals ordered by
/// least element and `quotient` is the induced structure on those least
/// elements. For `Complete` and `Linear`, `parts` is the split into as many
/// pieces as possible and `quotient` is the two-element structure relating any
/// earlier part to any later one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSplit {
    pub kind: RootKind,
    pub parts: Vec<Vec<ElementId>>,
    pub quotient: RelationalStructure,
}

impl RootSplit {
    pub fn is_degenerate(&self) -> bool {
        matches!(self.kind, RootKind::Complete | RootKind::Linear)
    }
}

fn ids(b: &FixedBitSet) -> Vec<ElementId> {
    b.ones().collect()
}

fn swapped(q: &RelationalStructure) -> RelationalStructure {
    q.relabel(&[1, 0]).expect("two-element relabelling")
}

fn tuple_key(q: &RelationalStructure) -> Vec<Vec<Vec<ElementId>>> {
    (0..q.relation_count())
        .map(|r| q.tuples(r).map(|t| t.to_vec()).collect())
        .collect()
}

/// Computes the top level of the decomposition. Requires `n >= 2`.
pub fn root_split(s: &RelationalStructure) -> RootSplit {
    let n = s.n();
    assert!(n >= 2, "root split needs at least two elements");
    let index = IntervalIndex::new(s);

    let mut unions: Vec<FixedBitSet> = (0..n)
        .map(|x| {
            let mut b = FixedBitSet::with_capacity(n);
            b.insert(x);
            b
        })
        .collect();
    for x in 0..n {
        for y in x + 1..n {
            let c = index.closure(&[x, y]);
            if c.count_ones(..) < n {
                unions[x].union_with(&c);
                unions[y].union_with(&c);
            }
        }
    }

    if unions.iter().all(|u| u.count_ones(..) < n) {
        let mut parts: Vec<Vec<ElementId>> = Vec::new();
        let mut seen = FixedBitSet::with_capacity(n);
        for u in &unions {
            let first = u.ones().next().expect("nonempty");
            if !seen.contains(first) {
                seen.union_with(u);
                parts.push(ids(u));
            }
        }
        parts.sort();
        let reps: Vec<ElementId> = parts.iter().map(|p| p[0]).collect();
        let quotient = restrict_ordered(s, &reps).expect("representatives in range");
        let kind = if parts.len() == 2 {
            RootKind::Pair
        } else {
            RootKind::Prime
        };
        return RootSplit {
            kind,
            parts,
            quotient,
        };
    }

    // grow a maximal interval other than the whole set; its complement is
    // then an interval as well
    let mut grown = index.closure(&[0]);
    for z in 1..n {
        if grown.contains(z) {
            continue;
        }
        let mut trial = grown.clone();
        trial.insert(z);
        let c = index.closure_set(trial);
        if c.count_ones(..) < n {
            grown = c;
        }
    }
    let mut a = ids(&grown);
    let mut b: Vec<ElementId> = (0..n).filter(|&x| !grown.contains(x)).collect();
    let mut q = restrict_ordered(s, &[a[0], b[0]]).expect("in range");
    let sq = swapped(&q);
    let kind = if sq == q {
        RootKind::Complete
    } else {
        RootKind::Linear
    };
    if tuple_key(&sq) < tuple_key(&q) {
        std::mem::swap(&mut a, &mut b);
        q = sq;
    }

    let mut parts = Vec::new();
    for piece in [a, b] {
        if piece.len() < 2 {
            parts.push(piece);
            continue;
        }
        let sub = restrict_ordered(s, &piece).expect("in range");
        let child = root_split(&sub);
        let mapped = |p: &Vec<ElementId>| p.iter().map(|&i| piece[i]).collect::<Vec<_>>();
        if child.quotient.n() == 2 && child.quotient == q {
            parts.extend(child.parts.iter().map(mapped));
        } else if child.quotient.n() == 2 && swapped(&child.quotient) == q {
            parts.extend(child.parts.iter().rev().map(mapped));
        } else {
            parts.push(piece);
        }
    }
    if kind == RootKind::Complete {
        parts.sort();
    }
    RootSplit {
        kind,
        parts,
        quotient: q,
    }
}

/// Which class-specific preference picks the two blocks of a degenerate
/// decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitRule {
    /// Largest part first, ties to the smallest least element.
    Graph,
    /// First block must not end with its largest element (dually smallest
    /// for decreasing), else the second must not start with its smallest.
    Permutation,
    /// Chains: first block without a unique maximum, else second without a
    /// unique minimum. Antichains: first non-singleton component.
    Poset,
    /// Odd transitive tournaments split off their two-vertex prefix; other
    /// linear splits take the first part.
    Tournament,
    /// First part against the rest.
    Generic,
}

impl SplitRule {
    /// The rule implied by the relation names of a signature.
    pub fn for_structure(s: &RelationalStructure) -> SplitRule {
        let names: Vec<&str> = s.signature().iter().map(|r| r.name.as_str()).collect();
        match names.as_slice() {
            [EDGE] => SplitRule::Graph,
            [LESS, PREC] => SplitRule::Permutation,
            [LESS] => SplitRule::Poset,
            [ARC] => SplitRule::Tournament,
            _ => SplitRule::Generic,
        }
    }
}

/// A substitution decomposition `s = quotient[blocks]`. Block `i` sits on the
/// original elements `members[i]` (ascending), and `block_map[x]` is the block
/// containing `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub quotient: RelationalStructure,
    pub blocks: Vec<RelationalStructure>,
    pub members: Vec<Vec<ElementId>>,
    pub block_map: Vec<usize>,
    pub degenerate: bool,
}

impl Decomposition {
    /// Re-inflates the quotient, placing each block back on its members.
    pub fn recompose(&self) -> Result<RelationalStructure> {
        inflate_placed(&self.quotient, &self.blocks, &self.members)
    }
}

/// Decomposes `s` with the split rule implied by its signature.
pub fn substitution_decompose(s: &RelationalStructure) -> Result<Decomposition> {
    decompose_with(s, SplitRule::for_structure(s))
}

pub fn decompose_with(s: &RelationalStructure, rule: SplitRule) -> Result<Decomposition> {
    if s.n() < 2 {
        return Err(Error::InvalidInput(
            "decomposition needs at least two elements".into(),
        ));
    }
    let root = root_split(s);
    if !root.is_degenerate() {
        return build(s, root.quotient.clone(), root.parts.clone(), false);
    }
    let first = canonical_first_block(s, &root, rule);
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (i, p) in root.parts.iter().enumerate() {
        if first.contains(&i) {
            a.extend_from_slice(p);
        } else {
            b.extend_from_slice(p);
        }
    }
    a.sort_unstable();
    b.sort_unstable();
    build(s, root.quotient.clone(), vec![a, b], true)
}

/// Indices of the parts of a degenerate root that form the first block.
/// For linear roots this is always a proper prefix of the parts.
pub fn canonical_first_block(s: &RelationalStructure, root: &RootSplit, rule: SplitRule) -> Vec<usize> {
    let parts = &root.parts;
    let k = parts.len();
    let prefix = |j: usize| (0..j).collect::<Vec<_>>();
    match (root.kind, rule) {
        (RootKind::Complete, SplitRule::Graph | SplitRule::Tournament) => {
            let best = (0..k)
                .max_by_key(|&i| (parts[i].len(), std::cmp::Reverse(i)))
                .expect("nonempty");
            vec![best]
        }
        (RootKind::Complete, SplitRule::Poset) => {
            vec![(0..k).find(|&i| parts[i].len() >= 2).unwrap_or(0)]
        }
        (RootKind::Linear, SplitRule::Permutation) => {
            let increasing = root.quotient.related(1, 0, 1);
            let lt = |x: ElementId, y: ElementId| s.related(0, x, y);
            let below = |x: ElementId, y: ElementId| s.related(1, x, y) == increasing;
            // first element by position, and the element extreme in the
            // direction of the quotient
            let last = |p: &[ElementId]| *p.iter().find(|&&x| p.iter().all(|&y| y == x || lt(y, x))).unwrap();
            let first = |p: &[ElementId]| *p.iter().find(|&&x| p.iter().all(|&y| y == x || lt(x, y))).unwrap();
            let top = |p: &[ElementId]| *p.iter().find(|&&x| p.iter().all(|&y| y == x || below(y, x))).unwrap();
            let bottom = |p: &[ElementId]| *p.iter().find(|&&x| p.iter().all(|&y| y == x || below(x, y))).unwrap();
            if let Some(i) = (0..k - 1).find(|&i| last(&parts[i]) != top(&parts[i])) {
                return prefix(i + 1);
            }
            if let Some(i) = (1..k).rev().find(|&i| first(&parts[i]) != bottom(&parts[i])) {
                return prefix(i);
            }
            if k > 3 {
                prefix(k - 2)
            } else {
                prefix(1)
            }
        }
        (RootKind::Linear, SplitRule::Poset) => {
            let unique_max = |p: &[ElementId]| p.iter().any(|&m| p.iter().all(|&y| y == m || s.related(0, y, m)));
            let unique_min = |p: &[ElementId]| p.iter().any(|&m| p.iter().all(|&y| y == m || s.related(0, m, y)));
            if let Some(i) = (0..k - 1).find(|&i| !unique_max(&parts[i])) {
                return prefix(i + 1);
            }
            if let Some(i) = (1..k).rev().find(|&i| !unique_min(&parts[i])) {
                return prefix(i);
            }
            prefix(1)
        }
        (RootKind::Linear, SplitRule::Tournament) => {
            let n = s.n();
            if k == n && n % 2 == 1 && n >= 5 {
                prefix(2)
            } else {
                prefix(1)
            }
        }
        _ => prefix(1),
    }
}

fn build(
    s: &RelationalStructure,
    quotient: RelationalStructure,
    members: Vec<Vec<ElementId>>,
    degenerate: bool,
) -> Result<Decomposition> {
    let mut block_map = vec![0; s.n()];
    let mut blocks = Vec::with_capacity(members.len());
    for (i, m) in members.iter().enumerate() {
        for &x in m {
            block_map[x] = i;
        }
        blocks.push(restrict_ordered(s, m)?);
    }
    Ok(Decomposition {
        quotient,
        blocks,
        members,
        block_map,
        degenerate,
    })
}
/// Recursive decomposition. Degenerate nodes are split into as many parts as
/// possible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionTree {
    Leaf(ElementId),
    Node {
        label: String,
        children: Vec<DecompositionTree>,
    },
}

impl DecompositionTree {
    pub fn leaf_count(&self) -> usize {
        match self {
            DecompositionTree::Leaf(_) => 1,
            DecompositionTree::Node { children, .. } => children.iter().map(|c| c.leaf_count()).sum(),
        }
    }

    /// Ground elements under this node, in tree order.
    pub fn leaves(&self) -> Vec<ElementId> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<ElementId>) {
        match self {
            DecompositionTree::Leaf(x) => out.push(*x),
            DecompositionTree::Node { children, .. } => {
                for c in children {
                    c.collect_leaves(out);
                }
            }
        }
    }
}

impl fmt::Display for DecompositionTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompositionTree::Leaf(x) => write!(f, "{x}"),
            DecompositionTree::Node { label, children } => {
                write!(f, "({label}")?;
                for c in children {
                    write!(f, " {c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Builds the decomposition tree. Requires `n >= 1`.
pub fn decomposition_tree(s: &RelationalStructure) -> Result<DecompositionTree> {
    if s.n() == 0 {
        return Err(Error::InvalidInput("empty structure has no decomposition tree".into()));
    }
    let all: Vec<ElementId> = (0..s.n()).collect();
    Ok(subtree(s, &all))
}

fn subtree(s: &RelationalStructure, ids: &[ElementId]) -> DecompositionTree {
    if ids.len() == 1 {
        return DecompositionTree::Leaf(ids[0]);
    }
    let sub = restrict_ordered(s, ids).expect("in range");
    let root = root_split(&sub);
    let label = match root.kind {
        RootKind::Prime => prime_label(&root.quotient),
        _ => degenerate_label(&root.quotient),
    };
    let children = root
        .parts
        .iter()
        .map(|p| {
            let mapped: Vec<ElementId> = p.iter().map(|&i| ids[i]).collect();
            subtree(s, &mapped)
        })
        .collect();
    DecompositionTree::Node { label, children }
}

fn names(s: &RelationalStructure) -> Vec<&str> {
    s.signature().iter().map(|r| r.name.as_str()).collect()
}

fn prime_label(q: &RelationalStructure) -> String {
    if names(q).as_slice() == [LESS, PREC] {
        if let Ok(p) = Permutation::from_structure(q) {
            return p.to_string();
        }
    }
    "prime".to_string()
}

/// Readable name for a two-element quotient.
pub fn degenerate_label(q: &RelationalStructure) -> String {
    let fwd = |r: usize| q.related(r, 0, 1);
    let back = |r: usize| q.related(r, 1, 0);
    let label = match names(q).as_slice() {
        [EDGE] if fwd(0) => "join",
        [EDGE] => "union",
        [LESS, PREC] if fwd(0) == fwd(1) => "increasing",
        [LESS, PREC] => "decreasing",
        [LESS] if fwd(0) || back(0) => "chain",
        [LESS] => "antichain",
        [ARC] if fwd(0) && back(0) => "join",
        [ARC] if fwd(0) || back(0) => "chain",
        [ARC] => "union",
        _ => "degenerate",
    };
    label.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intervals::{is_simple, maximal_proper_intervals};
    use crate::structure::{digraph, graph, perm_to_structure, poset, restrict};

    fn perm(s: &str) -> RelationalStructure {
        perm_to_structure(&Permutation::parse_compact(s).unwrap())
    }

    #[test]
    fn decompose_24513() {
        let d = substitution_decompose(&perm("24513")).unwrap();
        assert_eq!(d.quotient, perm("2413"));
        assert_eq!(d.members, vec![vec![0], vec![1, 2], vec![3], vec![4]]);
        assert_eq!(d.blocks[1], perm("12"));
        assert!(!d.degenerate);
        assert_eq!(d.recompose().unwrap(), perm("24513"));
    }

    #[test]
    fn decompose_2143() {
        // maximal intervals {0,1} and {2,3} are disjoint, so the split is unique
        let d = substitution_decompose(&perm("2143")).unwrap();
        assert_eq!(d.quotient, perm("12"));
        assert_eq!(d.blocks, vec![perm("21"), perm("21")]);
        assert!(!d.degenerate);
    }

    #[test]
    fn decompose_simple_is_trivial() {
        let d = substitution_decompose(&perm("2413")).unwrap();
        assert_eq!(d.quotient, perm("2413"));
        assert!(d.blocks.iter().all(|b| b.n() == 1));
    }

    #[test]
    fn degenerate_permutation_splits() {
        // 1 32 4: the first block 1 ends with its maximum, 132 does not
        let d = substitution_decompose(&perm("1324")).unwrap();
        assert!(d.degenerate);
        assert_eq!(d.members, vec![vec![0, 1, 2], vec![3]]);
        let id = substitution_decompose(&perm("12345")).unwrap();
        assert_eq!(id.members, vec![vec![0, 1, 2], vec![3, 4]]);
        // 1 2 43: the second block starts above its minimum
        let d = substitution_decompose(&perm("1243")).unwrap();
        assert_eq!(d.members, vec![vec![0, 1], vec![2, 3]]);
        let dec = substitution_decompose(&perm("4321")).unwrap();
        assert_eq!(dec.quotient, perm("21"));
        assert_eq!(dec.recompose().unwrap(), perm("4321"));
    }

    #[test]
    fn degenerate_graph_split_takes_largest_component() {
        let g = graph(5, &[(1, 2), (2, 3), (3, 1)]).unwrap();
        let d = substitution_decompose(&g).unwrap();
        assert!(d.degenerate);
        assert_eq!(d.members, vec![vec![1, 2, 3], vec![0, 4]]);
        assert_eq!(d.recompose().unwrap(), g);
    }

    #[test]
    fn degenerate_poset_split() {
        // chain of two 2-antichains over a single top
        let p = poset(5, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (3, 4)]).unwrap();
        let d = substitution_decompose(&p).unwrap();
        assert!(d.degenerate);
        assert_eq!(d.members, vec![vec![0, 1], vec![2, 3, 4]]);
        assert_eq!(d.recompose().unwrap(), p);
    }

    #[test]
    fn odd_chain_tournament_split() {
        let arcs: Vec<_> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
        let t = digraph(5, &arcs).unwrap();
        let d = substitution_decompose(&t).unwrap();
        assert_eq!(d.members, vec![vec![0, 1], vec![2, 3, 4]]);
        assert_eq!(d.recompose().unwrap(), t);
    }

    #[test]
    fn trees() {
        assert_eq!(decomposition_tree(&perm("1234")).unwrap().to_string(), "(increasing 0 1 2 3)");
        assert_eq!(decomposition_tree(&perm("24513")).unwrap().to_string(), "(2413 0 (increasing 1 2) 3 4)");
        assert_eq!(decomposition_tree(&perm("1")).unwrap().to_string(), "0");
        assert_eq!(decomposition_tree(&perm("2143")).unwrap().to_string(), "(increasing (decreasing 0 1) (decreasing 2 3))");
        let g = graph(4, &[(0, 1)]).unwrap();
        assert_eq!(decomposition_tree(&g).unwrap().to_string(), "(union (join 0 1) 2 3)");
        let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(decomposition_tree(&p4).unwrap().to_string(), "(prime 0 1 2 3)");
    }

    #[test]
    fn tree_children_are_intervals() {
        let p = perm("3412576");
        let t = decomposition_tree(&p).unwrap();
        assert_eq!(t.leaf_count(), 7);
        let mut leaves = t.leaves();
        leaves.sort();
        assert_eq!(leaves, (0..7).collect::<Vec<_>>());
    }

    #[test]
    fn blocks_match_maximal_intervals() {
        let p = perm("25314");
        let d = substitution_decompose(&p).unwrap();
        assert!(is_simple(&d.quotient));
        if d.quotient.n() > 2 {
            assert_eq!(d.members, maximal_proper_intervals(&p).unwrap());
        }
        for (m, b) in d.members.iter().zip(&d.blocks) {
            assert_eq!(&restrict(&p, m).unwrap(), b);
        }
    }
}
