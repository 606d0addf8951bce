//! Simple extensions of digraphs and oriented graphs.
//!
//! Digraphs pair up the new vertices of the underlying-graph construction:
//! vertex `c_i` receives arcs from the neighbours of `b_{2i-1}` and sends arcs
//! to the neighbours of `b_{2i}`. Oriented graphs give each input vertex a
//! distinct nonzero base-3 codeword over a transitive chain of new vertices.
//! Tournament inputs take a one-vertex route in both classes.

use super::graph::hoods;
use super::tournament::{chain_order, is_odd_chain, t1_out, with_point};
use super::{appended, ceil_log, ExtensionResult, Metadata};
use crate::error::{Error, Result};
use crate::intervals::is_simple;
use crate::oracle::{find_extension, SearchBudget};
use crate::structure::{check, orderings, underlying_graph, validate, ElementId, RelationalStructure, StructureClass};

/// Largest tournament whose one-vertex extension may be found by search.
const ONE_VERTEX_SEARCH_LIMIT: usize = 11;

/// Codeword assignments tried per chain length.
const MAX_ASSIGNMENTS: usize = 50_000;

/// Most graph neighbourhoods whose orderings are all tried.
const MAX_REORDERED_HOODS: usize = 6;

/// Arc pattern between one new vertex and an input vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Link {
    None,
    /// New vertex to input vertex.
    Out,
    /// Input vertex to new vertex.
    In,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigraphEncoding {
    pub added: Vec<ElementId>,
    /// Neighbourhoods of the underlying-graph construction, when used.
    pub graph_neighbourhoods: Vec<Vec<ElementId>>,
    /// True when a tournament input took the one-vertex route.
    pub one_vertex: bool,
}

impl DigraphEncoding {
    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![
            format!(
                "construction: digraph{}",
                if self.one_vertex { " (one vertex)" } else { "" }
            ),
            format!("new vertices: {}", join(&self.added)),
        ];
        for (i, h) in self.graph_neighbourhoods.iter().enumerate() {
            out.push(format!("b{}: {}", i + 1, join(h)));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedEncoding {
    /// New vertices `c_1 .. c_l`, with `c_i -> c_j` for `i < j`.
    pub chain: Vec<ElementId>,
    /// Codeword of each input vertex: digit `1` is `v -> c_i`, `2` is
    /// `c_i -> v`. Empty for the one-vertex route.
    pub codewords: Vec<Vec<u8>>,
    /// True when one vertex beyond `ceil(log3(n + 1))` was needed.
    pub fallback: bool,
    pub one_vertex: bool,
}

impl OrientedEncoding {
    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![
            format!(
                "construction: oriented graph{}{}",
                if self.one_vertex { " (one vertex)" } else { "" },
                if self.fallback { " (fallback)" } else { "" }
            ),
            format!("new vertices: {}", join(&self.chain)),
        ];
        for (v, w) in self.codewords.iter().enumerate() {
            let digits: String = w.iter().map(|d| char::from(b'0' + d)).collect();
            out.push(format!("code {v}: {digits}"));
        }
        out
    }
}

fn join(v: &[ElementId]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn with_links(d: &RelationalStructure, links: &[Link]) -> RelationalStructure {
    let (mut ext, added) = appended(d, 1);
    let x = added[0];
    for (v, l) in links.iter().enumerate() {
        if *l == Link::Out {
            ext.insert(0, vec![x, v]).expect("ids in range");
        }
        if *l == Link::In {
            ext.insert(0, vec![v, x]).expect("ids in range");
        }
    }
    ext
}

/// One-vertex pattern for an odd chain: in chain order the input vertices
/// see `Out, In, Out`, then `None` for the middle, then `In, Out, In`.
fn odd_chain_links(t: &RelationalStructure) -> Vec<Link> {
    let order = chain_order(t);
    let n = order.len();
    let mut links = vec![Link::None; n];
    let head = [Link::Out, Link::In, Link::Out];
    let tail = [Link::In, Link::Out, Link::In];
    for (i, &v) in order.iter().enumerate() {
        if i < 3 {
            links[v] = head[i];
        }
        if i + 3 >= n {
            links[v] = tail[i + 3 - n];
        }
    }
    links
}

/// A simple one-vertex extension of a tournament within `class`, if the
/// constructions or a bounded search find one.
fn one_vertex(t: &RelationalStructure, class: StructureClass) -> Result<Option<RelationalStructure>> {
    let n = t.n();
    if n >= 2 && n != 3 && !is_odd_chain(t) {
        let out = t1_out(t)?;
        let t1 = with_point(t, &out);
        if is_simple(&t1) {
            return Ok(Some(t1));
        }
        let rev: Vec<bool> = out.iter().map(|&o| !o).collect();
        let t2 = with_point(t, &rev);
        if is_simple(&t2) {
            return Ok(Some(t2));
        }
    }
    if is_odd_chain(t) && n >= 7 {
        let ext = with_links(t, &odd_chain_links(t));
        if is_simple(&ext) {
            return Ok(Some(ext));
        }
    }
    if n <= ONE_VERTEX_SEARCH_LIMIT {
        if let Some(found) = find_extension(t, class, 1, SearchBudget::new(1))? {
            return Ok(Some(found.extended));
        }
    }
    Ok(None)
}

fn is_tournament(d: &RelationalStructure) -> bool {
    validate(d, StructureClass::Tournament).is_ok_and(|v| v.is_ok())
}

/// Simple extension of a digraph by at most `ceil(log4(n + 1))` vertices.
pub fn extend_digraph(d: &RelationalStructure) -> Result<ExtensionResult> {
    check(d, StructureClass::Digraph)?;
    let n = d.n();
    let image: Vec<ElementId> = (0..n).collect();
    if n >= 2 && is_tournament(d) {
        if let Some(ext) = one_vertex(d, StructureClass::Digraph)? {
            let enc = DigraphEncoding {
                added: vec![n],
                graph_neighbourhoods: Vec::new(),
                one_vertex: true,
            };
            return Ok(ExtensionResult::new(ext, image, vec![n], Metadata::Digraph(enc)));
        }
    }
    let g = underlying_graph(d)?;
    let h = hoods(&g)?;
    let l = h.len().div_ceil(2);
    // hood `order[2i]` gives the in-neighbours of `c_i`, `order[2i+1]` its
    // out-neighbours; the given order first, then the others
    let ids: Vec<usize> = (0..h.len()).collect();
    let orders = if h.len() <= MAX_REORDERED_HOODS {
        orderings(&ids)
    } else {
        vec![ids]
    };
    let found = orders
        .into_iter()
        .map(|order| paired(d, &h, &order, l))
        .find(|(ext, _)| is_simple(ext));
    let Some((ext, added)) = found else {
        return Err(Error::ContractViolation("digraph construction is not simple".into()));
    };
    let enc = DigraphEncoding {
        added: added.clone(),
        graph_neighbourhoods: h
            .iter()
            .map(|b| (0..n).filter(|&v| b[v]).collect())
            .collect(),
        one_vertex: false,
    };
    Ok(ExtensionResult::new(ext, image, added, Metadata::Digraph(enc)))
}

fn paired(
    d: &RelationalStructure,
    h: &[Vec<bool>],
    order: &[usize],
    l: usize,
) -> (RelationalStructure, Vec<ElementId>) {
    let n = d.n();
    let (mut ext, added) = appended(d, l);
    for (i, &c) in added.iter().enumerate() {
        for v in 0..n {
            if h[order[2 * i]][v] {
                ext.insert(0, vec![v, c]).expect("ids in range");
            }
            if 2 * i + 1 < order.len() && h[order[2 * i + 1]][v] {
                ext.insert(0, vec![c, v]).expect("ids in range");
            }
        }
    }
    (ext, added)
}

/// Nonzero words of length `l` over `{0, 1, 2}` in lexicographic order.
fn codewords(l: usize) -> Vec<Vec<u8>> {
    let total = 3usize.pow(l as u32);
    (1..total)
        .map(|mut x| {
            let mut w = vec![0u8; l];
            for d in w.iter_mut().rev() {
                *d = (x % 3) as u8;
                x /= 3;
            }
            w
        })
        .collect()
}

fn coded(d: &RelationalStructure, words: &[Vec<u8>], l: usize) -> (RelationalStructure, Vec<ElementId>) {
    let (mut ext, chain) = appended(d, l);
    for i in 0..l {
        for j in i + 1..l {
            ext.insert(0, vec![chain[i], chain[j]]).expect("ids in range");
        }
    }
    for (v, w) in words.iter().enumerate() {
        for (i, &digit) in w.iter().enumerate() {
            match digit {
                1 => ext.insert(0, vec![v, chain[i]]).expect("ids in range"),
                2 => ext.insert(0, vec![chain[i], v]).expect("ids in range"),
                _ => false,
            };
        }
    }
    (ext, chain)
}

/// Simple extension of an oriented graph by `ceil(log3(n + 1))` vertices,
/// or one more on the flagged fallback path.
pub fn extend_oriented_graph(d: &RelationalStructure) -> Result<ExtensionResult> {
    check(d, StructureClass::OrientedGraph)?;
    let n = d.n();
    let image: Vec<ElementId> = (0..n).collect();
    if n >= 2 && is_tournament(d) {
        if let Some(ext) = one_vertex(d, StructureClass::OrientedGraph)? {
            let enc = OrientedEncoding {
                chain: vec![n],
                codewords: Vec::new(),
                fallback: false,
                one_vertex: true,
            };
            return Ok(ExtensionResult::new(ext, image, vec![n], Metadata::Oriented(enc)));
        }
    }
    let l0 = ceil_log(3, n + 1);
    for (l, fallback) in [(l0, false), (l0 + 1, true)] {
        let words = codewords(l);
        let mut pick: Vec<usize> = (0..n).collect();
        for _ in 0..MAX_ASSIGNMENTS {
            let assigned: Vec<Vec<u8>> = pick.iter().map(|&i| words[i].clone()).collect();
            let (ext, chain) = coded(d, &assigned, l);
            if is_simple(&ext) {
                let enc = OrientedEncoding {
                    chain: chain.clone(),
                    codewords: assigned,
                    fallback,
                    one_vertex: false,
                };
                return Ok(ExtensionResult::new(ext, image, chain, Metadata::Oriented(enc)));
            }
            if !next_assignment(&mut pick, words.len()) {
                break;
            }
        }
    }
    Err(Error::ContractViolation("no codeword assignment is simple".into()))
}

/// Advances `pick` (distinct indices below `total`) to the next injective
/// assignment in lexicographic order; false after the last one.
fn next_assignment(pick: &mut [usize], total: usize) -> bool {
    let k = pick.len();
    for i in (0..k).rev() {
        let used = |v: usize| pick[..i].contains(&v);
        if let Some(v) = (pick[i] + 1..total).find(|&v| !used(v)) {
            pick[i] = v;
            let mut next = 0;
            for j in i + 1..k {
                while pick[..j].contains(&next) {
                    next += 1;
                }
                pick[j] = next;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::digraph;

    fn chain(n: usize) -> RelationalStructure {
        let arcs: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        digraph(n, &arcs).unwrap()
    }

    #[test]
    fn seven_chain_pattern_is_simple() {
        let links = odd_chain_links(&chain(7));
        use Link::*;
        assert_eq!(links, vec![Out, In, Out, None, In, Out, In]);
        assert!(is_simple(&with_links(&chain(7), &links)));
    }

    #[test]
    fn linear_digraphs_take_one_vertex() {
        for n in 1..=7 {
            let e = extend_digraph(&chain(n)).unwrap();
            assert!(e.is_simple(), "n={n}");
            assert_eq!(e.added_count(), 1, "n={n}");
        }
    }

    #[test]
    fn assignments_advance_lexicographically() {
        let mut p = vec![0, 1];
        let mut seen = vec![p.clone()];
        while next_assignment(&mut p, 3) {
            seen.push(p.clone());
        }
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 2], vec![2, 0], vec![2, 1]]);
    }

    #[test]
    fn empty_oriented_graphs() {
        for n in 1..=16 {
            let d = digraph(n, &[]).unwrap();
            let e = extend_oriented_graph(&d).unwrap();
            assert!(e.is_simple(), "n={n}");
            assert!(!matches!(e.metadata, Metadata::Oriented(OrientedEncoding { fallback: true, .. })), "n={n}");
        }
    }
}
