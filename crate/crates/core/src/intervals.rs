//! Intervals, interval closures and simplicity.

use fixedbitset::FixedBitSet;

use crate::decomposition::{root_split, RootKind};
use crate::error::{Error, Result};
use crate::structure::{ElementId, RelationalStructure};

/// A tuple that separates two members of a candidate interval: `tuple` is in
/// `relation`, and replacing `swapped.0` at `position` by `swapped.1` leaves it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalWitness {
    pub relation: String,
    pub tuple: Vec<ElementId>,
    pub position: usize,
    pub swapped: (ElementId, ElementId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalReport {
    pub subset: Vec<ElementId>,
    pub is_interval: bool,
    pub witness: Option<IntervalWitness>,
}

fn to_bitset(n: usize, ids: &[ElementId]) -> Result<FixedBitSet> {
    let mut b = FixedBitSet::with_capacity(n);
    for &x in ids {
        if x >= n {
            return Err(Error::OutOfRange { id: x, n });
        }
        b.insert(x);
    }
    Ok(b)
}

/// Decides whether `subset` is an interval; on failure reports the first
/// separating tuple in lexicographic order (relations in signature order).
pub fn is_interval(s: &RelationalStructure, subset: &[ElementId]) -> Result<IntervalReport> {
    let inside = to_bitset(s.n(), subset)?;
    let members: Vec<ElementId> = inside.ones().collect();
    let mut witness = None;
    'outer: for (r, sig) in s.signature().iter().enumerate() {
        for t in s.tuples(r) {
            for p in 0..t.len() {
                if !inside.contains(t[p]) || context_inside(t, p, &inside) {
                    continue;
                }
                let mut u = t.to_vec();
                for &y in &members {
                    u[p] = y;
                    if !s.holds(r, &u) {
                        witness = Some(IntervalWitness {
                            relation: sig.name.clone(),
                            tuple: t.to_vec(),
                            position: p,
                            swapped: (t[p], y),
                        });
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(IntervalReport {
        subset: members,
        is_interval: witness.is_none(),
        witness,
    })
}

fn context_inside(t: &[ElementId], p: usize, inside: &FixedBitSet) -> bool {
    t.iter()
        .enumerate()
        .all(|(i, &x)| i == p || inside.contains(x))
}

/// Adjacency rows for the binary relations of a structure, used to compute
/// closures quickly. Unary relations never separate elements and are dropped.
#[derive(Clone, Debug)]
pub struct IntervalIndex<'a> {
    s: &'a RelationalStructure,
    rows: Vec<(Vec<FixedBitSet>, Vec<FixedBitSet>)>,
    wide: Vec<usize>,
}

impl<'a> IntervalIndex<'a> {
    pub fn new(s: &'a RelationalStructure) -> Self {
        let n = s.n();
        let mut rows = Vec::new();
        let mut wide = Vec::new();
        for (r, sig) in s.signature().iter().enumerate() {
            match sig.arity {
                1 => {}
                2 => {
                    let mut out = vec![FixedBitSet::with_capacity(n); n];
                    let mut inn = vec![FixedBitSet::with_capacity(n); n];
                    for t in s.tuples(r) {
                        out[t[0]].insert(t[1]);
                        inn[t[1]].insert(t[0]);
                    }
                    rows.push((out, inn));
                }
                _ => wide.push(r),
            }
        }
        Self { s, rows, wide }
    }

    pub fn n(&self) -> usize {
        self.s.n()
    }

    /// Smallest interval containing `seed` (as a bitset).
    pub fn closure_set(&self, mut inside: FixedBitSet) -> FixedBitSet {
        let n = self.n();
        if inside.count_ones(..) <= 1 {
            return inside;
        }
        loop {
            let mut grew = false;
            // an outside z is forced in when its row splits the current set
            for z in 0..n {
                if inside.contains(z) {
                    continue;
                }
                let splits = self.rows.iter().any(|(out, inn)| {
                    let (o, i) = (&out[z], &inn[z]);
                    !(o.is_disjoint(&inside) || inside.is_subset(o))
                        || !(i.is_disjoint(&inside) || inside.is_subset(i))
                });
                if splits {
                    inside.insert(z);
                    grew = true;
                }
            }
            for &r in &self.wide {
                grew |= self.grow_wide(r, &mut inside);
            }
            if !grew || inside.count_ones(..) == n {
                return inside;
            }
        }
    }

    fn grow_wide(&self, r: usize, inside: &mut FixedBitSet) -> bool {
        let members: Vec<ElementId> = inside.ones().collect();
        let mut add = Vec::new();
        for t in self.s.tuples(r) {
            for p in 0..t.len() {
                if !inside.contains(t[p]) || context_inside(t, p, inside) {
                    continue;
                }
                let mut u = t.to_vec();
                let separated = members.iter().any(|&y| {
                    u[p] = y;
                    !self.s.holds(r, &u)
                });
                if separated {
                    add.extend(
                        t.iter()
                            .enumerate()
                            .filter(|&(i, &x)| i != p && !inside.contains(x))
                            .map(|(_, &x)| x),
                    );
                }
            }
        }
        let grew = !add.is_empty();
        for x in add {
            inside.insert(x);
        }
        grew
    }

    pub fn closure(&self, seed: &[ElementId]) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(self.n());
        for &x in seed {
            b.insert(x);
        }
        self.closure_set(b)
    }

    /// Some proper interval generated by a pair, if one exists.
    pub fn proper_pair_interval(&self) -> Option<FixedBitSet> {
        let n = self.n();
        if n <= 2 {
            return None;
        }
        for x in 0..n {
            for y in x + 1..n {
                let c = self.closure(&[x, y]);
                if c.count_ones(..) < n {
                    return Some(c);
                }
            }
        }
        None
    }

    pub fn is_simple(&self) -> bool {
        self.proper_pair_interval().is_none()
    }
}

/// Smallest interval containing `seed`, sorted.
pub fn interval_closure(s: &RelationalStructure, seed: &[ElementId]) -> Result<Vec<ElementId>> {
    if seed.is_empty() {
        return Err(Error::InvalidInput("closure seed must be nonempty".into()));
    }
    let b = to_bitset(s.n(), seed)?;
    Ok(IntervalIndex::new(s).closure_set(b).ones().collect())
}

/// True iff `s` has no proper interval. Structures with at most two elements
/// are simple.
pub fn is_simple(s: &RelationalStructure) -> bool {
    IntervalIndex::new(s).is_simple()
}

/// The intervals other than the whole ground set that are maximal under
/// inclusion, sorted lexicographically. They partition the ground set unless
/// the decomposition is degenerate, in which case they overlap.
pub fn maximal_proper_intervals(s: &RelationalStructure) -> Result<Vec<Vec<ElementId>>> {
    if s.n() < 2 {
        return Err(Error::InvalidInput(
            "maximal proper intervals need at least two elements".into(),
        ));
    }
    let root = root_split(s);
    let parts = &root.parts;
    let mut out: Vec<Vec<ElementId>> = match root.kind {
        RootKind::Prime | RootKind::Pair => parts.clone(),
        RootKind::Complete => (0..parts.len())
            .map(|skip| {
                let mut v: Vec<ElementId> = parts
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .flat_map(|(_, p)| p.iter().copied())
                    .collect();
                v.sort_unstable();
                v
            })
            .collect(),
        RootKind::Linear => {
            let k = parts.len();
            let join = |range: std::ops::Range<usize>| {
                let mut v: Vec<ElementId> = parts[range].iter().flatten().copied().collect();
                v.sort_unstable();
                v
            };
            vec![join(0..k - 1), join(1..k)]
        }
    };
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{digraph, graph, hypergraph, perm_to_structure, Permutation, RelationalStructure, StructureClass};

    fn perm(s: &str) -> RelationalStructure {
        perm_to_structure(&Permutation::parse_compact(s).unwrap())
    }

    #[test]
    fn intervals_of_3124() {
        let p = perm("3124");
        assert!(is_interval(&p, &[1, 2]).unwrap().is_interval);
        assert!(is_interval(&p, &[0, 1, 2]).unwrap().is_interval);
        assert!(!is_interval(&p, &[2, 3]).unwrap().is_interval);
    }

    #[test]
    fn singletons_and_extremes_are_intervals() {
        let p = perm("2413");
        for x in 0..4 {
            assert!(is_interval(&p, &[x]).unwrap().is_interval);
        }
        assert!(is_interval(&p, &[]).unwrap().is_interval);
        assert!(is_interval(&p, &[0, 1, 2, 3]).unwrap().is_interval);
    }

    #[test]
    fn witness_for_2413() {
        let p = perm("2413");
        let r = is_interval(&p, &[0, 1]).unwrap();
        assert!(!r.is_interval);
        let w = r.witness.unwrap();
        // first separating tuple: position 0 (value 2) precedes position 2 (value 1) in `lt`
        // for both, so the separation comes from `prec`
        assert_eq!(w.relation, "prec");
        let mut flipped = w.tuple.clone();
        flipped[w.position] = w.swapped.1;
        assert!(p.holds(1, &w.tuple));
        assert!(!p.holds(1, &flipped));
    }

    #[test]
    fn closures() {
        let p = perm("24513");
        assert_eq!(interval_closure(&p, &[1, 2]).unwrap(), vec![1, 2]);
        assert_eq!(interval_closure(&perm("2413"), &[0, 1]).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(interval_closure(&p, &[3]).unwrap(), vec![3]);
        assert!(interval_closure(&p, &[]).is_err());
    }

    #[test]
    fn simplicity() {
        assert!(is_simple(&perm("2413")));
        assert!(is_simple(&perm("3142")));
        assert!(!is_simple(&perm("1234")));
        assert!(is_simple(&perm("21")));
        assert!(is_simple(&digraph(2, &[(0, 1)]).unwrap()));
        assert!(is_simple(&graph(1, &[]).unwrap()));
        // every pair of the 3-cycle is separated by the third vertex
        assert!(is_simple(&digraph(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()));
        // P4 is the smallest simple graph
        assert!(is_simple(&graph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()));
    }

    #[test]
    fn no_simple_tournament_on_four_vertices() {
        let pairs: Vec<(usize, usize)> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
        for mask in 0..(1u32 << pairs.len()) {
            let arcs: Vec<_> = pairs
                .iter()
                .enumerate()
                .map(|(b, &(i, j))| if mask >> b & 1 == 1 { (i, j) } else { (j, i) })
                .collect();
            assert!(!is_simple(&digraph(4, &arcs).unwrap()));
        }
    }

    #[test]
    fn maximal_intervals() {
        assert_eq!(
            maximal_proper_intervals(&perm("24513")).unwrap(),
            vec![vec![0], vec![1, 2], vec![3], vec![4]]
        );
        let g = graph(3, &[(0, 1)]).unwrap();
        assert_eq!(maximal_proper_intervals(&g).unwrap(), vec![vec![0, 1], vec![2]]);
        assert_eq!(
            maximal_proper_intervals(&perm("2413")).unwrap(),
            vec![vec![0], vec![1], vec![2], vec![3]]
        );
        assert_eq!(
            maximal_proper_intervals(&perm("1234")).unwrap(),
            vec![vec![0, 1, 2], vec![1, 2, 3]]
        );
        let empty = graph(3, &[]).unwrap();
        assert_eq!(
            maximal_proper_intervals(&empty).unwrap(),
            vec![vec![0, 1], vec![0, 2], vec![1, 2]]
        );
    }

    #[test]
    fn ternary_intervals() {
        let h = hypergraph(4, 3, &[vec![0, 1, 2]]).unwrap();
        // 3 is outside every edge, and {0,1,2} all behave alike towards it
        assert!(is_interval(&h, &[0, 1, 2]).unwrap().is_interval);
        assert!(!is_interval(&h, &[0, 3]).unwrap().is_interval);
        assert_eq!(interval_closure(&h, &[0, 3]).unwrap(), vec![0, 1, 2, 3]);
        let lone = RelationalStructure::for_class(3, StructureClass::Kary(3));
        assert!(!is_simple(&lone));
    }
}
