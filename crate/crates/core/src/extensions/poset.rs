//! Simple extensions of posets in four variants.
//!
//! Each variant adds two distinguished elements `Ext1` and `Ext2`, each either
//! a new maximal or a new minimal element:
//!
//! | variant | `Ext1` | `Ext2` |
//! |---------|--------|--------|
//! | up      | max    | max    |
//! | down    | min    | min    |
//! | updown  | max    | min    |
//! | downup  | min    | max    |
//!
//! Every proper interval contains `Ext2`, and at least one variant is simple.

use std::fmt;

use super::graph::{attach, hoods};
use super::permutation::{ext as perm_ext, Ext};
use super::{ExtensionResult, Metadata};
use crate::decomposition::{root_split, RootKind};
use crate::error::{Error, Result};
use crate::intervals::is_simple;
use crate::structure::{check, ElementId, RelationalStructure, StructureClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PosetVariant {
    Up,
    Down,
    UpDown,
    DownUp,
}

impl PosetVariant {
    pub const ALL: [PosetVariant; 4] = [
        PosetVariant::Up,
        PosetVariant::Down,
        PosetVariant::UpDown,
        PosetVariant::DownUp,
    ];

    pub fn ext1_is_max(self) -> bool {
        matches!(self, PosetVariant::Up | PosetVariant::UpDown)
    }

    pub fn ext2_is_max(self) -> bool {
        matches!(self, PosetVariant::Up | PosetVariant::DownUp)
    }

    fn from_types(ext1_max: bool, ext2_max: bool) -> Self {
        match (ext1_max, ext2_max) {
            (true, true) => PosetVariant::Up,
            (false, false) => PosetVariant::Down,
            (true, false) => PosetVariant::UpDown,
            (false, true) => PosetVariant::DownUp,
        }
    }

    fn dual(self) -> Self {
        Self::from_types(!self.ext1_is_max(), !self.ext2_is_max())
    }
}

impl fmt::Display for PosetVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PosetVariant::Up => "up",
            PosetVariant::Down => "down",
            PosetVariant::UpDown => "updown",
            PosetVariant::DownUp => "downup",
        })
    }
}

impl std::str::FromStr for PosetVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|v| v.to_string() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown poset variant `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub struct PosetExtension {
    pub variant: PosetVariant,
    pub result: ExtensionResult,
    pub ext1: ElementId,
    pub ext2: ElementId,
}

#[derive(Clone, Debug)]
pub struct PosetExtensionQuad {
    pub up: PosetExtension,
    pub down: PosetExtension,
    pub updown: PosetExtension,
    pub downup: PosetExtension,
}

impl PosetExtensionQuad {
    pub fn get(&self, v: PosetVariant) -> &PosetExtension {
        match v {
            PosetVariant::Up => &self.up,
            PosetVariant::Down => &self.down,
            PosetVariant::UpDown => &self.updown,
            PosetVariant::DownUp => &self.downup,
        }
    }

    /// The simple variants, fewest additions first.
    pub fn simple_variants(&self) -> Vec<&PosetExtension> {
        let mut v: Vec<&PosetExtension> = PosetVariant::ALL
            .iter()
            .map(|&x| self.get(x))
            .filter(|e| e.result.is_simple())
            .collect();
        v.sort_by_key(|e| e.result.added_count());
        v
    }
}

/// Strict order as a dense matrix: `lt[u][v]` means `u < v`.
type Mat = Vec<Vec<bool>>;

fn mat_of(s: &RelationalStructure) -> Mat {
    let n = s.n();
    let mut m = vec![vec![false; n]; n];
    for t in s.tuples(0) {
        m[t[0]][t[1]] = true;
    }
    m
}

fn structure_of(m: &Mat) -> RelationalStructure {
    let mut s = RelationalStructure::for_class(m.len(), StructureClass::Poset);
    for (u, row) in m.iter().enumerate() {
        for (v, &b) in row.iter().enumerate() {
            if b {
                s.insert(0, vec![u, v]).expect("ids in range");
            }
        }
    }
    s
}

fn close(m: &mut Mat) {
    let n = m.len();
    for k in 0..n {
        for i in 0..n {
            if m[i][k] {
                for j in 0..n {
                    if m[k][j] {
                        m[i][j] = true;
                    }
                }
            }
        }
    }
}

fn grow(m: &mut Mat) -> ElementId {
    for row in m.iter_mut() {
        row.push(false);
    }
    m.push(vec![false; m.len() + 1]);
    m.len() - 1
}

fn sub(m: &Mat, ids: &[ElementId]) -> Mat {
    ids.iter()
        .map(|&u| ids.iter().map(|&v| m[u][v]).collect())
        .collect()
}

fn transpose(m: &Mat) -> Mat {
    let n = m.len();
    (0..n).map(|u| (0..n).map(|v| m[v][u]).collect()).collect()
}

fn comparable(m: &Mat, u: ElementId, v: ElementId) -> bool {
    m[u][v] || m[v][u]
}

/// A variant extension: the first `n` ids are the input elements.
#[derive(Clone, Debug)]
pub(crate) struct PExt {
    lt: Mat,
    ext1: ElementId,
    ext2: ElementId,
}

impl PExt {
    fn dual(self) -> Self {
        Self {
            lt: transpose(&self.lt),
            ext1: self.ext1,
            ext2: self.ext2,
        }
    }

    fn is_core(&self, x: ElementId) -> bool {
        x != self.ext1 && x != self.ext2
    }
}

/// `n` input elements plus `extra` new ones, with the input order copied.
fn widen(m: &Mat, extra: usize) -> Mat {
    let total = m.len() + extra;
    let mut w = vec![vec![false; total]; total];
    for (u, row) in m.iter().enumerate() {
        w[u][..row.len()].copy_from_slice(row);
    }
    w
}

fn base(m: &Mat, v: PosetVariant) -> PExt {
    let chain = comparable(m, 0, 1);
    let (a, b) = if m[1][0] { (1, 0) } else { (0, 1) };
    let (x, y) = (2, 3);
    let mut w = widen(m, 2);
    let (pairs, ext1, ext2): (&[(usize, usize)], usize, usize) = match (chain, v) {
        (true, PosetVariant::Up) => (&[(a, x), (b, y)], x, y),
        (true, PosetVariant::Down) => (&[(x, a), (y, b)], y, x),
        (true, PosetVariant::UpDown) => (&[(a, y), (x, y)], y, x),
        (true, PosetVariant::DownUp) => (&[(x, y), (x, b)], x, y),
        (false, PosetVariant::Up) => (&[(a, x), (b, x), (b, y)], y, x),
        (false, PosetVariant::Down) => (&[(x, a), (x, b), (y, b)], y, x),
        (false, PosetVariant::DownUp) => (&[(x, a), (x, y)], x, y),
        (false, PosetVariant::UpDown) => (&[(x, y), (b, y)], y, x),
    };
    for &(u, v) in pairs {
        w[u][v] = true;
    }
    close(&mut w);
    PExt { lt: w, ext1, ext2 }
}

fn maximal(m: &Mat, ids: &[ElementId]) -> Vec<ElementId> {
    ids.iter()
        .copied()
        .filter(|&u| !ids.iter().any(|&v| m[u][v]))
        .collect()
}

fn first_simple(cands: Vec<PExt>) -> Result<PExt> {
    let first = cands.first().cloned();
    cands
        .into_iter()
        .find(|c| is_simple(&structure_of(&c.lt)))
        .or(first)
        .ok_or_else(|| Error::ContractViolation("no candidate poset extension".into()))
}

fn simple_case(m: &Mat, v: PosetVariant) -> Result<PExt> {
    let n = m.len();
    let all: Vec<ElementId> = (0..n).collect();
    let mut cands = Vec::new();
    match v {
        PosetVariant::Up | PosetVariant::Down => {
            let oriented = if v == PosetVariant::Up { m.clone() } else { transpose(m) };
            let tops = maximal(&oriented, &all);
            for (i, &m1) in tops.iter().enumerate() {
                for &m2 in &tops[i + 1..] {
                    let mut w = widen(&oriented, 2);
                    let (e1, e2) = (n, n + 1);
                    w[m1][e1] = true;
                    w[m1][e2] = true;
                    w[m2][e2] = true;
                    close(&mut w);
                    let c = PExt { lt: w, ext1: e1, ext2: e2 };
                    cands.push(if v == PosetVariant::Up { c } else { c.dual() });
                }
            }
        }
        PosetVariant::UpDown | PosetVariant::DownUp => {
            for p in 0..n {
                let mut w = widen(m, 2);
                let (q1, q2) = (n, n + 1);
                if v == PosetVariant::UpDown {
                    w[p][q1] = true;
                    w[q2][q1] = true;
                } else {
                    w[q1][p] = true;
                    w[q1][q2] = true;
                }
                close(&mut w);
                cands.push(PExt { lt: w, ext1: q1, ext2: q2 });
            }
        }
    }
    first_simple(cands)
}

/// Order on a permutation's points: dominance (`u` left of and below `v`) or
/// anti-dominance (`u` right of and below `v`). Input points first, in
/// `order`; then the added points.
fn from_points(e: &Ext, anti: bool, order: &[ElementId]) -> PExt {
    let total = e.line.len();
    let mut id = vec![0; total];
    let mut next = order.len();
    let mut k = 0;
    for q in 0..total {
        if e.original[q] {
            id[q] = order[k];
            k += 1;
        } else {
            id[q] = next;
            next += 1;
        }
    }
    let mut w = vec![vec![false; total]; total];
    for q1 in 0..total {
        for q2 in 0..total {
            let left = if anti { q1 > q2 } else { q1 < q2 };
            if left && e.line[q1] < e.line[q2] {
                w[id[q1]][id[q2]] = true;
            }
        }
    }
    PExt {
        lt: w,
        ext1: id[e.entry],
        ext2: id[e.exit],
    }
}

fn via_permutation(m: &Mat, v: PosetVariant, is_chain: bool) -> Result<PExt> {
    let n = m.len();
    let mut order: Vec<ElementId> = (0..n).collect();
    if is_chain {
        order.sort_by_key(|&u| (0..n).filter(|&w| m[w][u]).count());
    }
    let ext1_min = !v.ext1_is_max();
    // dominance sends the leftmost point to a minimal element
    let anti = !ext1_min;
    let increasing = is_chain != anti;
    let pi: Vec<usize> = if increasing {
        (0..n).collect()
    } else {
        (0..n).rev().collect()
    };
    let e = perm_ext(&pi, v.ext2_is_max())?;
    if is_chain && anti {
        order.reverse();
    }
    Ok(from_points(&e, anti, &order))
}

/// Blocks of the top level with `block_lt[a][b]` when block `a` lies below
/// block `b`.
fn link(m: &Mat, parts: &[Vec<ElementId>], block_lt: &Mat, v: PosetVariant) -> Result<PExt> {
    let n = m.len();
    let nontrivial: Vec<usize> = (0..parts.len()).filter(|&i| parts[i].len() > 1).collect();
    let t = nontrivial.len();
    let mut e1max = vec![false; t];
    let mut e2max = vec![false; t];
    e1max[0] = v.ext1_is_max();
    e2max[t - 1] = v.ext2_is_max();
    for r in 0..t - 1 {
        let (a, b) = (nontrivial[r], nontrivial[r + 1]);
        let (e2, e1) = if block_lt[a][b] {
            (true, false)
        } else if block_lt[b][a] {
            (false, true)
        } else {
            (true, true)
        };
        e2max[r] = e2;
        e1max[r + 1] = e1;
    }
    let mut exts = Vec::with_capacity(t);
    for r in 0..t {
        let block = &parts[nontrivial[r]];
        exts.push(pext(&sub(m, block), PosetVariant::from_types(e1max[r], e2max[r]))?);
    }

    let mut w = m.clone();
    let mut members: Vec<Vec<ElementId>> = parts.to_vec();
    // local id -> global id for each block extension (ext points excluded)
    let mut maps: Vec<Vec<Option<ElementId>>> = Vec::with_capacity(t);
    for (r, e) in exts.iter().enumerate() {
        let block = &parts[nontrivial[r]];
        let mut map = vec![None; e.lt.len()];
        for (i, &g) in block.iter().enumerate() {
            map[i] = Some(g);
        }
        for x in block.len()..e.lt.len() {
            if e.is_core(x) {
                let g = grow(&mut w);
                map[x] = Some(g);
                members[nontrivial[r]].push(g);
            }
        }
        for x in 0..e.lt.len() {
            for y in 0..e.lt.len() {
                if let (true, Some(gx), Some(gy)) = (e.lt[x][y], map[x], map[y]) {
                    w[gx][gy] = true;
                }
            }
        }
        maps.push(map);
    }
    for a in 0..parts.len() {
        for b in 0..parts.len() {
            if block_lt[a][b] {
                for &x in &members[a] {
                    for &y in &members[b] {
                        w[x][y] = true;
                    }
                }
            }
        }
    }
    let links: Vec<ElementId> = (0..=t).map(|_| grow(&mut w)).collect();
    // link `l` copies how `ext` of extension `r` relates to that block's core
    let copy = |w: &mut Mat, l: ElementId, r: usize, ext: ElementId| {
        let e = &exts[r];
        for x in 0..e.lt.len() {
            if let Some(g) = maps[r][x] {
                if e.lt[ext][x] {
                    w[l][g] = true;
                }
                if e.lt[x][ext] {
                    w[g][l] = true;
                }
            }
        }
    };
    copy(&mut w, links[0], 0, exts[0].ext1);
    for r in 1..t {
        copy(&mut w, links[r], r - 1, exts[r - 1].ext2);
        copy(&mut w, links[r], r, exts[r].ext1);
    }
    copy(&mut w, links[t], t - 1, exts[t - 1].ext2);
    // links r and r + 1 stand for Ext1 and Ext2 of block extension r
    for (r, e) in exts.iter().enumerate() {
        w[links[r]][links[r + 1]] |= e.lt[e.ext1][e.ext2];
        w[links[r + 1]][links[r]] |= e.lt[e.ext2][e.ext1];
    }
    close(&mut w);
    debug_assert!(n <= w.len());
    Ok(PExt {
        lt: w,
        ext1: links[0],
        ext2: links[t],
    })
}

/// Unique maximal element of the block, if any.
fn has_unique_max(m: &Mat, ids: &[ElementId]) -> bool {
    maximal(m, ids).len() == 1
}

/// Extension of a poset on at least two elements in variant `v`.
pub(crate) fn pext(m: &Mat, v: PosetVariant) -> Result<PExt> {
    let n = m.len();
    if n < 2 {
        return Err(Error::InvalidInput("poset extensions need two elements".into()));
    }
    if n == 2 {
        return Ok(base(m, v));
    }
    let root = root_split(&structure_of(m));
    let mut parts = root.parts.clone();
    for p in &mut parts {
        p.sort_unstable();
    }
    let k = parts.len();
    if root.kind == RootKind::Prime {
        if parts.iter().all(|p| p.len() == 1) {
            return simple_case(m, v);
        }
        let block_lt: Mat = (0..k)
            .map(|a| (0..k).map(|b| m[parts[a][0]][parts[b][0]]).collect())
            .collect();
        return link(m, &parts, &block_lt, v);
    }

    let is_chain = comparable(m, parts[0][0], parts[1][0]);
    if is_chain {
        if m[parts[1][0]][parts[0][0]] {
            parts.reverse();
        }
        if let Some(i) = (0..k - 1).find(|&i| !has_unique_max(m, &parts[i])) {
            let a1: Vec<ElementId> = parts[..=i].concat();
            let a2: Vec<ElementId> = parts[i + 1..].concat();
            if a2.len() == 1 {
                return chain_top_singleton(m, &a1, a2[0], v);
            }
            let chain2 = vec![vec![false, true], vec![false, false]];
            return link(m, &[a1, a2], &chain2, v);
        }
        let dual = transpose(m);
        let tops_ok = (1..k).all(|i| has_unique_max(&dual, &parts[i]));
        if !tops_ok {
            return Ok(pext(&dual, v.dual())?.dual());
        }
        return via_permutation(m, v, true);
    }

    parts.sort_unstable();
    let Some(i) = parts.iter().position(|p| p.len() > 1) else {
        return via_permutation(m, v, false);
    };
    let a1 = parts[i].clone();
    let a2: Vec<ElementId> = parts
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .flat_map(|(_, p)| p.iter().copied())
        .collect();
    if a2.len() == 1 {
        return antichain_singleton(m, &a1, a2[0], v);
    }
    let anti2 = vec![vec![false; 2]; 2];
    link(m, &[a1, a2], &anti2, v)
}

/// Re-embeds an extension of the restriction to `ids` (sorted) into `n`
/// input elements plus its added elements.
fn embed(e: &PExt, ids: &[ElementId], n: usize) -> (Mat, Vec<ElementId>) {
    let size = e.lt.len();
    let mut map = vec![0; size];
    map[..ids.len()].copy_from_slice(ids);
    let mut next = n;
    for slot in map.iter_mut().skip(ids.len()) {
        *slot = next;
        next += 1;
    }
    let total = n + size - ids.len();
    let mut w = vec![vec![false; total]; total];
    for x in 0..size {
        for y in 0..size {
            if e.lt[x][y] {
                w[map[x]][map[y]] = true;
            }
        }
    }
    (w, map)
}

/// Chain of `A1` below a single top element `c`.
fn chain_top_singleton(m: &Mat, a1: &[ElementId], c: ElementId, v: PosetVariant) -> Result<PExt> {
    let mut ids = a1.to_vec();
    ids.sort_unstable();
    let e = pext(&sub(m, &ids), v)?;
    let (mut w, map) = embed(&e, &ids, m.len());
    for x in 0..e.lt.len() {
        if e.is_core(x) {
            w[map[x]][c] = true;
        }
    }
    close(&mut w);
    Ok(PExt {
        lt: w,
        ext1: map[e.ext1],
        ext2: map[e.ext2],
    })
}

/// `A1` beside a single incomparable element `c`.
fn antichain_singleton(m: &Mat, a1: &[ElementId], c: ElementId, v: PosetVariant) -> Result<PExt> {
    let mut ids = a1.to_vec();
    ids.sort_unstable();
    let e = pext(&sub(m, &ids), v)?;
    let (mut w, map) = embed(&e, &ids, m.len());
    let x2 = map[e.ext2];
    match v {
        PosetVariant::Up => w[c][x2] = true,
        PosetVariant::Down => w[x2][c] = true,
        _ => {}
    }
    close(&mut w);
    Ok(PExt {
        lt: w,
        ext1: map[e.ext1],
        ext2: x2,
    })
}

fn finish(s: &RelationalStructure, e: PExt, variant: PosetVariant) -> PosetExtension {
    let n = s.n();
    let extended = structure_of(&e.lt);
    let added = (n..e.lt.len()).collect();
    PosetExtension {
        variant,
        result: ExtensionResult::new(
            extended,
            (0..n).collect(),
            added,
            Metadata::Poset {
                variant,
                ext1: e.ext1,
                ext2: e.ext2,
            },
        ),
        ext1: e.ext1,
        ext2: e.ext2,
    }
}

/// All four variants for a poset on at least two elements.
pub fn extend_poset(s: &RelationalStructure) -> Result<PosetExtensionQuad> {
    check(s, StructureClass::Poset)?;
    let m = mat_of(s);
    let one = |v| pext(&m, v).map(|e| finish(s, e, v));
    Ok(PosetExtensionQuad {
        up: one(PosetVariant::Up)?,
        down: one(PosetVariant::Down)?,
        updown: one(PosetVariant::UpDown)?,
        downup: one(PosetVariant::DownUp)?,
    })
}

/// Antichain extended by an independent set of the graph construction, each
/// new element above its neighbours.
pub fn extend_antichain_via_graph(s: &RelationalStructure) -> Result<ExtensionResult> {
    check(s, StructureClass::Poset)?;
    if s.tuple_count(0) > 0 {
        return Err(Error::InvalidInput("input is not an antichain".into()));
    }
    let n = s.n();
    let empty = RelationalStructure::for_class(n, StructureClass::Graph);
    let h = hoods(&empty)?;
    let (g, added) = attach(&empty, &h);
    let mut ext = RelationalStructure::for_class(g.n(), StructureClass::Poset);
    for t in g.tuples(0) {
        if t[0] < n {
            ext.insert(0, vec![t[0], t[1]])?;
        }
    }
    Ok(ExtensionResult::new(
        ext,
        (0..n).collect(),
        added.clone(),
        Metadata::PosetViaGraph { independent: added },
    ))
}

/// Fewest-addition simple extension among the four variants and, for
/// antichains, the graph route.
pub(crate) fn best(s: &RelationalStructure) -> Result<ExtensionResult> {
    let quad = extend_poset(s)?;
    let mut best = quad
        .simple_variants()
        .first()
        .map(|e| e.result.clone())
        .ok_or_else(|| Error::ContractViolation("no poset variant is simple".into()))?;
    if s.tuple_count(0) == 0 {
        let g = extend_antichain_via_graph(s)?;
        if g.is_simple() && g.added_count() < best.added_count() {
            best = g;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::poset;

    fn chain(n: usize) -> RelationalStructure {
        let l: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        poset(n, &l).unwrap()
    }

    fn contracts(s: &RelationalStructure) {
        let quad = extend_poset(s).unwrap();
        assert!(!quad.simple_variants().is_empty(), "{s:?}");
        for v in PosetVariant::ALL {
            let e = quad.get(v);
            let ext = &e.result.extended;
            check(ext, StructureClass::Poset).unwrap();
            assert!(e.result.restricts_to(s));
            let above = |x: ElementId| (0..ext.n()).any(|y| ext.related(0, x, y));
            let below = |x: ElementId| (0..ext.n()).any(|y| ext.related(0, y, x));
            assert_eq!(!above(e.ext1), v.ext1_is_max(), "{v} ext1 {s:?}");
            assert_eq!(v.ext1_is_max(), !above(e.ext1));
            assert!(if v.ext1_is_max() { !above(e.ext1) } else { !below(e.ext1) });
            assert!(if v.ext2_is_max() { !above(e.ext2) } else { !below(e.ext2) });
            for iv in crate::oracle::all_intervals(ext).unwrap() {
                if iv.len() > 1 && iv.len() < ext.n() {
                    assert!(iv.contains(&e.ext2), "{v}: interval {iv:?} misses ext2");
                }
            }
        }
    }

    #[test]
    fn small_chains_and_antichains() {
        for n in 2..=6 {
            contracts(&chain(n));
            contracts(&poset(n, &[]).unwrap());
        }
    }

    #[test]
    fn mixed_shapes() {
        contracts(&poset(4, &[(0, 1), (2, 3)]).unwrap());
        contracts(&poset(5, &[(0, 2), (1, 2), (2, 3), (2, 4)]).unwrap());
        contracts(&poset(4, &[(0, 2), (1, 2), (1, 3)]).unwrap());
        contracts(&poset(5, &[(0, 1), (1, 2)]).unwrap());
    }

    #[test]
    fn antichain_via_graph_is_simple() {
        for n in 2..=8 {
            let e = extend_antichain_via_graph(&poset(n, &[]).unwrap()).unwrap();
            assert!(e.is_simple(), "n={n}");
            assert_eq!(e.added_count(), super::super::ceil_log(2, n + 1));
        }
    }
}
