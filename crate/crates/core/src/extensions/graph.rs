//! Simple extensions of graphs by an independent set.
//!
//! An extension is described by the list of neighbourhoods (in the input) of
//! the new vertices. For `n >= 2` at least two vertices are added, and every
//! input graph on `n` vertices needs at most `ceil(log2(n + 1))`.

use super::{appended, ExtensionResult, Metadata};
use crate::decomposition::{root_split, RootKind};
use crate::error::{Error, Result};
use crate::intervals::is_simple;
use crate::structure::{check, restrict_mapped, ElementId, RelationalStructure, StructureClass};

/// Candidate neighbourhoods tried for a simple graph.
const SIMPLE_CASE_MASKS: u64 = 1 << 14;

#[derive(Clone, Debug)]
pub struct GraphExtension {
    pub result: ExtensionResult,
    /// Neighbourhood (input ids, sorted) of each added vertex.
    pub neighbourhoods: Vec<Vec<ElementId>>,
}

impl GraphExtension {
    pub fn into_result(self) -> ExtensionResult {
        self.result
    }
}

type Hoods = Vec<Vec<bool>>;

fn adj(g: &RelationalStructure, u: ElementId, v: ElementId) -> bool {
    g.related(0, u, v)
}

/// `g` plus one vertex per neighbourhood, with no edges among the new ones.
pub(crate) fn attach(g: &RelationalStructure, hoods: &Hoods) -> (RelationalStructure, Vec<ElementId>) {
    let (mut ext, added) = appended(g, hoods.len());
    for (b, hood) in added.iter().zip(hoods) {
        for (v, _) in hood.iter().enumerate().filter(|(_, &h)| h) {
            ext.insert(0, vec![*b, v]).expect("ids in range");
            ext.insert(0, vec![v, *b]).expect("ids in range");
        }
    }
    (ext, added)
}

/// Lifts neighbourhoods of a restriction back to `n` input ids.
fn lift(sub: Hoods, map: &[ElementId], n: usize) -> Hoods {
    sub.into_iter()
        .map(|h| {
            let mut full = vec![false; n];
            for (i, &x) in h.iter().enumerate() {
                full[map[i]] = x;
            }
            full
        })
        .collect()
}

fn sub_hoods(g: &RelationalStructure, ids: &[ElementId]) -> Result<Hoods> {
    let (sub, map) = restrict_mapped(g, ids)?;
    Ok(lift(hoods(&sub)?, &map, g.n()))
}

/// Identifies the new vertices of `other` with those of `into`, index by
/// index.
fn merge(into: &mut Hoods, other: &Hoods) {
    for (h, o) in into.iter_mut().zip(other) {
        for (a, &b) in h.iter_mut().zip(o) {
            *a |= b;
        }
    }
}

/// First new vertex not adjacent to every vertex of `block`.
fn partial_vertex(b: &Hoods, block: &[ElementId]) -> usize {
    b.iter()
        .position(|h| !block.iter().all(|&v| h[v]))
        .unwrap_or(0)
}

/// Set of new-vertex indices adjacent to `v`, as a bitmask.
fn signature(b: &Hoods, v: ElementId) -> u64 {
    b.iter()
        .enumerate()
        .filter(|(_, h)| h[v])
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

fn simple_case(g: &RelationalStructure) -> Result<Hoods> {
    let n = g.n();
    let as_vec = |m: u64| -> Vec<bool> { (0..n).map(|v| v < 64 && m >> v & 1 == 1).collect() };
    let twin_free = |h: &Vec<bool>| {
        h.iter().any(|&x| x)
            && !h.iter().all(|&x| x)
            && (0..n).all(|v| (0..n).any(|u| u != v && h[u] != adj(g, v, u)))
    };
    let limit = if n < 14 { 1u64 << n } else { SIMPLE_CASE_MASKS };
    let admissible: Vec<Vec<bool>> = (1..limit).map(as_vec).filter(twin_free).collect();
    for (i, h1) in admissible.iter().enumerate() {
        for h2 in &admissible[i + 1..] {
            let hoods = vec![h1.clone(), h2.clone()];
            if is_simple(&attach(g, &hoods).0) {
                return Ok(hoods);
            }
        }
    }
    Err(Error::ContractViolation("no pair of neighbourhoods makes the graph simple".into()))
}

/// Neighbourhoods of the new independent vertices.
pub(crate) fn hoods(g: &RelationalStructure) -> Result<Hoods> {
    let n = g.n();
    match n {
        0 => return Err(Error::InvalidInput("empty graph".into())),
        1 => return Ok(vec![vec![true]]),
        2 => {
            return Ok(if adj(g, 0, 1) {
                vec![vec![true, false], vec![false, true]]
            } else {
                vec![vec![true, false], vec![true, true]]
            })
        }
        _ => {}
    }
    let root = root_split(g);
    if root.kind == RootKind::Prime {
        if root.parts.iter().all(|p| p.len() == 1) {
            return simple_case(g);
        }
        let mut lifted: Vec<Option<Hoods>> = Vec::new();
        for part in &root.parts {
            lifted.push(if part.len() > 1 { Some(sub_hoods(g, part)?) } else { None });
        }
        let x = (0..root.parts.len())
            .filter(|&i| lifted[i].is_some())
            .max_by_key(|&i| (lifted[i].as_ref().map_or(0, |h| h.len()), std::cmp::Reverse(i)))
            .expect("non-trivial block");
        let mut b = lifted[x].clone().expect("non-trivial block");
        for (i, l) in lifted.iter().enumerate() {
            if i != x {
                if let Some(h) = l {
                    merge(&mut b, h);
                }
            }
        }
        let jx = &root.parts[x];
        for (i, part) in root.parts.iter().enumerate() {
            if lifted[i].is_none() {
                let k = partial_vertex(&b, jx);
                b[k][part[0]] = true;
            }
        }
        return Ok(b);
    }

    let is_join = adj(g, root.parts[0][0], root.parts[1][0]);
    let big = (0..root.parts.len())
        .max_by_key(|&i| (root.parts[i].len(), std::cmp::Reverse(i)))
        .expect("two parts");
    let j1 = root.parts[big].clone();
    let j2: Vec<ElementId> = root
        .parts
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != big)
        .flat_map(|(_, p)| p.iter().copied())
        .collect();

    if j1.len() >= 2 {
        let b1 = sub_hoods(g, &j1)?;
        if j2.len() >= 2 {
            let b2 = sub_hoods(g, &j2)?;
            let (mut b, other) = if b2.len() > b1.len() { (b2, b1) } else { (b1, b2) };
            merge(&mut b, &other);
            return Ok(b);
        }
        let mut b = b1;
        let k = partial_vertex(&b, &j1);
        b[k][j2[0]] = true;
        return Ok(b);
    }

    // Every part is a single vertex: the graph is complete or edgeless.
    let a = j1[0];
    let mut b = sub_hoods(g, &j2)?;
    let m = b.len();
    let used: Vec<u64> = j2.iter().map(|&v| signature(&b, v)).collect();
    let full = (1u64 << m) - 1;
    let pick = if is_join {
        (0..full).find(|mask| !used.contains(mask))
    } else {
        (1..=full).find(|mask| !used.contains(mask))
    };
    match pick {
        Some(mask) => {
            for (i, h) in b.iter_mut().enumerate() {
                h[a] = mask >> i & 1 == 1;
            }
        }
        None => {
            if !is_join {
                b[0][a] = true;
            }
            let mut h = vec![false; n];
            h[a] = true;
            b.push(h);
        }
    }
    Ok(b)
}

/// Simple extension of `g` by an independent set of new vertices.
pub fn extend_graph(g: &RelationalStructure) -> Result<GraphExtension> {
    check(g, StructureClass::Graph)?;
    let h = hoods(g)?;
    let (ext, added) = attach(g, &h);
    if !is_simple(&ext) {
        return Err(Error::ContractViolation("graph construction is not simple".into()));
    }
    let neighbourhoods = h
        .iter()
        .map(|h| (0..g.n()).filter(|&v| h[v]).collect())
        .collect();
    Ok(GraphExtension {
        result: ExtensionResult::new(
            ext,
            (0..g.n()).collect(),
            added.clone(),
            Metadata::Graph { independent: added },
        ),
        neighbourhoods,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::graph;

    fn complete(n: usize) -> RelationalStructure {
        let e: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        graph(n, &e).unwrap()
    }

    #[test]
    fn complete_graphs_meet_the_bound() {
        for n in 2..=9 {
            let e = extend_graph(&complete(n)).unwrap();
            assert_eq!(e.result.added_count(), super::super::ceil_log(2, n + 1), "K{n}");
        }
    }

    #[test]
    fn edgeless_graphs_meet_the_bound() {
        for n in 2..=9 {
            let e = extend_graph(&graph(n, &[]).unwrap()).unwrap();
            assert_eq!(e.result.added_count(), super::super::ceil_log(2, n + 1), "empty {n}");
        }
    }

    #[test]
    fn two_vertex_cases_are_paths() {
        let e = extend_graph(&graph(2, &[]).unwrap()).unwrap();
        assert_eq!(e.neighbourhoods, vec![vec![0], vec![0, 1]]);
        let e = extend_graph(&graph(2, &[(0, 1)]).unwrap()).unwrap();
        assert_eq!(e.neighbourhoods, vec![vec![0], vec![1]]);
    }
}
