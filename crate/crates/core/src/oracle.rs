//! Brute-force ground truth, written independently of the closure-based code
//! in [`crate::intervals`]: interval tests straight from the definition,
//! enumeration of labeled structures, and exhaustive minimal-extension search.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::extensions::{ExtensionResult, Metadata};
use crate::structure::{
    check, orderings, perm_to_structure, ElementId, Permutation, RelationalStructure,
    StructureClass,
};

/// Largest ground set [`exhaustive_is_simple`] accepts by default.
pub const DEFAULT_ORACLE_LIMIT: usize = 12;

/// Ceiling on enumerated candidates when a budget sets no cap of its own.
pub const HARD_CANDIDATE_CEILING: u64 = 1 << 34;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Smallest number of added elements considered; 0 admits the input
    /// itself when it is already simple.
    pub min_added: usize,
    pub max_added: usize,
    pub max_candidates: Option<u64>,
}

impl SearchBudget {
    pub fn new(max_added: usize) -> Self {
        Self {
            min_added: 0,
            max_added,
            max_candidates: None,
        }
    }

    /// Only extensions adding at least `m` elements.
    pub fn at_least(mut self, m: usize) -> Self {
        self.min_added = m;
        self
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.max_candidates = Some(cap);
        self
    }

    fn cap(&self) -> u64 {
        self.max_candidates.unwrap_or(HARD_CANDIDATE_CEILING)
    }
}

/// Dense membership table for one relation.
struct Dense {
    n: usize,
    arity: usize,
    bits: Vec<bool>,
}

impl Dense {
    fn new(s: &RelationalStructure, r: usize) -> Self {
        let n = s.n();
        let arity = s.signature()[r].arity;
        let mut bits = vec![false; n.pow(arity as u32)];
        for t in s.tuples(r) {
            bits[Self::index(n, t)] = true;
        }
        Self { n, arity, bits }
    }

    fn index(n: usize, t: &[ElementId]) -> usize {
        t.iter().fold(0, |acc, &x| acc * n + x)
    }

    fn get(&self, t: &[ElementId]) -> bool {
        self.bits[Self::index(self.n, t)]
    }
}

fn raw_is_interval(tables: &[Dense], n: usize, inside: &[bool]) -> bool {
    let members: Vec<ElementId> = (0..n).filter(|&x| inside[x]).collect();
    let Some(&f) = members.first() else {
        return true;
    };
    for d in tables {
        let k = d.arity;
        let contexts = n.pow(k as u32 - 1);
        let mut t = vec![0; k];
        for p in 0..k {
            for code in 0..contexts {
                // decode the context into the slots other than p
                let mut c = code;
                let mut all_inside = true;
                for (i, slot) in t.iter_mut().enumerate() {
                    if i == p {
                        continue;
                    }
                    *slot = c % n;
                    c /= n;
                    all_inside &= inside[*slot];
                }
                if all_inside {
                    continue;
                }
                t[p] = f;
                let base = d.get(&t);
                for &y in &members[1..] {
                    t[p] = y;
                    if d.get(&t) != base {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn tables(s: &RelationalStructure) -> Vec<Dense> {
    (0..s.relation_count()).map(|r| Dense::new(s, r)).collect()
}

/// Simplicity by testing every subset against the definition of an interval.
pub fn exhaustive_is_simple(s: &RelationalStructure) -> Result<bool> {
    exhaustive_is_simple_with_limit(s, DEFAULT_ORACLE_LIMIT)
}

pub fn exhaustive_is_simple_with_limit(s: &RelationalStructure, limit: usize) -> Result<bool> {
    let n = s.n();
    if n > limit {
        return Err(Error::SearchSpace(format!(
            "exhaustive simplicity limited to {limit} elements, got {n}"
        )));
    }
    let t = tables(s);
    let mut inside = vec![false; n];
    for mask in 0u64..(1u64 << n) {
        let size = mask.count_ones() as usize;
        if size < 2 || size == n {
            continue;
        }
        for (x, slot) in inside.iter_mut().enumerate() {
            *slot = mask >> x & 1 == 1;
        }
        if raw_is_interval(&t, n, &inside) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every interval of `s`, including the trivial ones, in increasing order of
/// their bitmask.
pub fn all_intervals(s: &RelationalStructure) -> Result<Vec<Vec<ElementId>>> {
    let n = s.n();
    if n > DEFAULT_ORACLE_LIMIT {
        return Err(Error::SearchSpace(format!("interval listing limited to {DEFAULT_ORACLE_LIMIT} elements")));
    }
    let t = tables(s);
    let mut out = Vec::new();
    let mut inside = vec![false; n];
    for mask in 0u64..(1u64 << n) {
        for (x, slot) in inside.iter_mut().enumerate() {
            *slot = mask >> x & 1 == 1;
        }
        if raw_is_interval(&t, n, &inside) {
            out.push((0..n).filter(|&x| inside[x]).collect());
        }
    }
    Ok(out)
}

/// Adjacency bitmasks of a binary-only structure with at most 64 elements,
/// for fast repeated simplicity tests during search.
#[derive(Clone, Debug)]
struct Rows {
    n: usize,
    out: Vec<Vec<u64>>,
    inn: Vec<Vec<u64>>,
}

impl Rows {
    fn new(n: usize, relations: usize) -> Self {
        Self {
            n,
            out: vec![vec![0; n]; relations],
            inn: vec![vec![0; n]; relations],
        }
    }

    fn of(s: &RelationalStructure) -> Option<Self> {
        if s.n() > 64 || s.signature().iter().any(|r| r.arity != 2) {
            return None;
        }
        let mut rows = Self::new(s.n(), s.relation_count());
        for r in 0..s.relation_count() {
            for t in s.tuples(r) {
                rows.set(r, t[0], t[1]);
            }
        }
        Some(rows)
    }

    fn set(&mut self, r: usize, u: usize, v: usize) {
        self.out[r][u] |= 1 << v;
        self.inn[r][v] |= 1 << u;
    }

    fn clear(&mut self, r: usize, u: usize, v: usize) {
        self.out[r][u] &= !(1 << v);
        self.inn[r][v] &= !(1 << u);
    }

    fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    fn pair_spans(&self, x: usize, y: usize) -> bool {
        let full = self.full();
        let mut set = (1u64 << x) | (1u64 << y);
        loop {
            let mut next = set;
            let mut rest = full & !set;
            while rest != 0 {
                let z = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let splits = (0..self.out.len()).any(|r| {
                    let o = self.out[r][z] & set;
                    let i = self.inn[r][z] & set;
                    (o != 0 && o != set) || (i != 0 && i != set)
                });
                if splits {
                    next |= 1 << z;
                }
            }
            if next == set {
                return set == full;
            }
            if next == full {
                return true;
            }
            set = next;
        }
    }

    fn simple(&self) -> bool {
        let n = self.n;
        (0..n).all(|x| (x + 1..n).all(|y| self.pair_spans(x, y)))
    }
}

fn any_simple(s: &RelationalStructure) -> Result<bool> {
    match Rows::of(s) {
        Some(r) => Ok(r.simple()),
        None if s.n() <= DEFAULT_ORACLE_LIMIT => exhaustive_is_simple(s),
        None => Ok(crate::intervals::is_simple(s)),
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of labeled structures of `class` on `n` elements, when it has a
/// closed form.
pub fn structure_count(class: StructureClass, n: usize) -> Option<u128> {
    use StructureClass::*;
    let pairs = (n * n.saturating_sub(1) / 2) as u32;
    let pow = |b: u128, e: u32| b.checked_pow(e);
    match class {
        Graph | Tournament => pow(2, pairs),
        OrientedGraph => pow(3, pairs),
        Digraph => pow(2, (n * n) as u32),
        LinearOrder | Permutation => (1..=n as u128).try_fold(1u128, |a, b| a.checked_mul(b)),
        Kary(k) => pow(2, n.checked_pow(k as u32)? as u32),
        KaryIrreflexive(k) => {
            let t = (0..k).try_fold(1usize, |a, i| a.checked_mul(n.checked_sub(i)?))?;
            pow(2, t as u32)
        }
        Hypergraph(k) => pow(2, binomial(n as u64, k as u64) as u32),
        Poset => None,
    }
}

const ENUMERATION_CEILING: u128 = 1 << 24;

/// All labeled structures of `class` on `n` elements, each once, in a fixed
/// order.
pub fn enumerate_structures(
    class: StructureClass,
    n: usize,
) -> Result<Box<dyn Iterator<Item = RelationalStructure>>> {
    use StructureClass::*;
    if let Some(count) = structure_count(class, n) {
        if count > ENUMERATION_CEILING {
            return Err(Error::SearchSpace(format!(
                "{count} labeled {class} structures on {n} elements"
            )));
        }
    } else if class != Poset {
        return Err(Error::SearchSpace(format!("too many {class} structures on {n} elements")));
    } else if n > 6 {
        return Err(Error::SearchSpace(format!("poset enumeration limited to 6 elements, got {n}")));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let it: Box<dyn Iterator<Item = RelationalStructure>> = match class {
        Graph | Tournament | OrientedGraph => {
            let base: u64 = if class == OrientedGraph { 3 } else { 2 };
            let total = base.pow(pairs.len() as u32);
            Box::new((0..total).map(move |mut code| {
                let mut s = RelationalStructure::for_class(n, class);
                for &(i, j) in &pairs {
                    let digit = code % base;
                    code /= base;
                    let arcs: &[(usize, usize)] = match (class, digit) {
                        (Graph, 1) => &[(i, j), (j, i)],
                        (Tournament, 0) => &[(j, i)],
                        (Tournament, 1) | (OrientedGraph, 1) => &[(i, j)],
                        (OrientedGraph, 2) => &[(j, i)],
                        _ => &[],
                    };
                    for &(u, v) in arcs {
                        s.insert(0, vec![u, v]).expect("in range");
                    }
                }
                s
            }))
        }
        Digraph => {
            let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
            Box::new((0u64..1 << cells.len()).map(move |mask| {
                let mut s = RelationalStructure::for_class(n, Digraph);
                for (b, &(i, j)) in cells.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        s.insert(0, vec![i, j]).expect("in range");
                    }
                }
                s
            }))
        }
        Permutation => Box::new(permutations(n).into_iter().map(|p| {
            perm_to_structure(&crate::structure::Permutation::new(p).expect("valid"))
        })),
        LinearOrder => Box::new(permutations(n).into_iter().map(move |p| {
            let mut s = RelationalStructure::for_class(n, LinearOrder);
            for i in 0..n {
                for j in 0..n {
                    if p[i] < p[j] {
                        s.insert(0, vec![i, j]).expect("in range");
                    }
                }
            }
            s
        })),
        Poset => Box::new(labeled_posets(n).into_iter()),
        Kary(_) | KaryIrreflexive(_) | Hypergraph(_) => {
            let slots = tuple_slots(class, n, &|_| true);
            Box::new((0u64..1 << slots.len()).map(move |mask| {
                let mut s = RelationalStructure::for_class(n, class);
                for (b, orbit) in slots.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        for t in orbit {
                            s.insert(0, t.clone()).expect("in range");
                        }
                    }
                }
                s
            }))
        }
    };
    Ok(it)
}

/// One-line notations (1-based) of all permutations of length `n`, in
/// lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

/// The independently settable tuple groups of a k-ary class, restricted to
/// tuples accepted by `keep`. Hypergraph edges form one group per set.
fn tuple_slots(
    class: StructureClass,
    n: usize,
    keep: &dyn Fn(&[ElementId]) -> bool,
) -> Vec<Vec<Vec<ElementId>>> {
    use StructureClass::*;
    let k = match class {
        Kary(k) | KaryIrreflexive(k) | Hypergraph(k) => k,
        _ => 2,
    };
    let mut out = Vec::new();
    let total = n.pow(k as u32);
    for code in 0..total {
        let mut c = code;
        let mut t = vec![0; k];
        for slot in t.iter_mut().rev() {
            *slot = c % n;
            c /= n;
        }
        if !keep(&t) {
            continue;
        }
        let distinct = t.iter().collect::<HashSet<_>>().len() == k;
        match class {
            KaryIrreflexive(_) if !distinct => {}
            Hypergraph(_) => {
                if distinct && t.windows(2).all(|w| w[0] < w[1]) {
                    out.push(orderings(&t));
                }
            }
            _ => out.push(vec![t]),
        }
    }
    out
}

/// Labeled posets on `0..n`, built by adding each element above a down-set
/// and below a disjoint up-set.
fn labeled_posets(n: usize) -> Vec<RelationalStructure> {
    let mut layer: Vec<Vec<u64>> = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::new();
        for below in &layer {
            for (d, u) in placements(below, k) {
                let mut b = below.clone();
                b.push(d);
                // everything below x is below the new element; the new
                // element joins the down-set of every member of u
                for (y, row) in b.iter_mut().enumerate().take(k) {
                    if u >> y & 1 == 1 {
                        *row |= (1 << k) | d;
                    }
                }
                next.push(b);
            }
        }
        layer = next;
    }
    layer
        .into_iter()
        .map(|below| {
            let mut s = RelationalStructure::for_class(n, StructureClass::Poset);
            for (y, &row) in below.iter().enumerate() {
                for x in 0..n {
                    if row >> x & 1 == 1 {
                        s.insert(0, vec![x, y]).expect("in range");
                    }
                }
            }
            s
        })
        .collect()
}

/// Valid (down-set, up-set) pairs for a new element over a poset given by
/// strict down-sets `below[y]`.
fn placements(below: &[u64], k: usize) -> Vec<(u64, u64)> {
    let above = |x: usize| -> u64 { (0..k).filter(|&y| below[y] >> x & 1 == 1).fold(0, |a, y| a | 1 << y) };
    let ups: Vec<u64> = (0..k).map(above).collect();
    let mut out = Vec::new();
    for d in 0u64..(1 << k) {
        if (0..k).any(|y| d >> y & 1 == 1 && below[y] & !d != 0) {
            continue;
        }
        // every element above a member of d is a candidate blocker
        let forced_out: u64 = (0..k).filter(|&y| d >> y & 1 == 1).fold(0, |a, y| a | 1 << y);
        for u in 0u64..(1 << k) {
            if u & forced_out != 0 {
                continue;
            }
            if (0..k).any(|y| u >> y & 1 == 1 && ups[y] & !u != 0) {
                continue;
            }
            let related = (0..k).all(|x| {
                d >> x & 1 == 0 || (0..k).all(|y| u >> y & 1 == 0 || ups[x] >> y & 1 == 1)
            });
            if related {
                out.push((d, u));
            }
        }
    }
    out
}

/// Smallest number of added elements (up to `budget.max_added`) admitting a
/// simple extension within the class.
pub fn minimal_extension_size(
    s: &RelationalStructure,
    class: StructureClass,
    budget: SearchBudget,
) -> Result<Option<usize>> {
    check(s, class)?;
    for m in budget.min_added..=budget.max_added {
        if find_extension(s, class, m, budget)?.is_some() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// A simple one-element extension, if one exists.
pub fn find_one_point_extension(
    s: &RelationalStructure,
    class: StructureClass,
) -> Result<Option<ExtensionResult>> {
    check(s, class)?;
    find_extension(s, class, 1, SearchBudget::new(1))
}

/// The first simple extension by exactly `m` elements in the search order,
/// if any.
pub fn find_extension(
    s: &RelationalStructure,
    class: StructureClass,
    m: usize,
    budget: SearchBudget,
) -> Result<Option<ExtensionResult>> {
    use StructureClass::*;
    if m == 0 {
        return Ok(if any_simple(s)? {
            Some(ExtensionResult::unchanged(s.clone()))
        } else {
            None
        });
    }
    if s.n() + m > 64 {
        return Err(Error::SearchSpace("searches are limited to 64 elements".into()));
    }
    let found = match class {
        Graph => search_pair_codes(s, m, &[(false, false), (true, true)], budget)?,
        Tournament => search_pair_codes(s, m, &[(false, true), (true, false)], budget)?,
        Digraph => search_pair_codes(
            s,
            m,
            &[(false, false), (true, false), (false, true), (true, true)],
            budget,
        )?,
        OrientedGraph => search_pair_codes(s, m, &[(false, false), (true, false), (false, true)], budget)?,
        Permutation => search_permutation(s, m, budget)?,
        LinearOrder => search_linear(s, m, budget)?,
        Poset => search_poset(s, m, budget)?,
        Kary(_) | KaryIrreflexive(_) | Hypergraph(_) => search_tuples(s, class, m, budget)?,
    };
    Ok(found)
}

fn too_many(count: u128, budget: SearchBudget) -> Result<()> {
    if count > budget.cap() as u128 {
        return Err(Error::SearchSpace(format!(
            "{count} candidates exceed the cap of {}",
            budget.cap()
        )));
    }
    Ok(())
}

fn appended(s: &RelationalStructure, m: usize) -> (Vec<ElementId>, Vec<ElementId>) {
    let n = s.n();
    ((0..n).collect(), (n..n + m).collect())
}

/// Binary single-relation classes: each (old, new) and (new, new) pair gets
/// one of `codes`, read as (`u -> w`, `w -> u`). New elements are taken with
/// non-decreasing code vectors towards the originals.
fn search_pair_codes(
    s: &RelationalStructure,
    m: usize,
    codes: &[(bool, bool)],
    budget: SearchBudget,
) -> Result<Option<ExtensionResult>> {
    let n = s.n();
    let k = codes.len() as u128;
    let vectors = k.checked_pow(n as u32).ok_or_else(|| Error::SearchSpace("code space overflow".into()))?;
    let inner_pairs = (m * (m - 1) / 2) as u32;
    let inner = k.pow(inner_pairs);
    let count = binomial_u128(vectors + m as u128 - 1, m as u128).saturating_mul(inner);
    too_many(count, budget)?;

    let total = n + m;
    let mut base = Rows::new(total, 1);
    for t in s.tuples(0) {
        base.set(0, t[0], t[1]);
    }
    let vectors = vectors as u64;
    let mut chosen = vec![0u64; m];
    let apply = |rows: &mut Rows, u: usize, w: usize, code: usize| {
        let (f, b) = codes[code];
        if f {
            rows.set(0, u, w);
        } else {
            rows.clear(0, u, w);
        }
        if b {
            rows.set(0, w, u);
        } else {
            rows.clear(0, w, u);
        }
    };
    loop {
        let mut rows = base.clone();
        for (i, &c) in chosen.iter().enumerate() {
            let mut c = c as usize;
            for u in 0..n {
                apply(&mut rows, u, n + i, c % codes.len());
                c /= codes.len();
            }
        }
        for inner_code in 0..inner as u64 {
            let mut c = inner_code as usize;
            for i in 0..m {
                for j in i + 1..m {
                    apply(&mut rows, n + i, n + j, c % codes.len());
                    c /= codes.len();
                }
            }
            if rows.simple() {
                let mut ext = s.clone();
                ext.add_elements(m);
                for u in 0..total {
                    let mut row = rows.out[0][u];
                    while row != 0 {
                        let v = row.trailing_zeros() as usize;
                        row &= row - 1;
                        ext.insert(0, vec![u, v])?;
                    }
                }
                let (image, added) = appended(s, m);
                return Ok(Some(ExtensionResult::new(ext, image, added, Metadata::Search)));
            }
        }
        // next non-decreasing vector
        let Some(i) = (0..m).rev().find(|&i| chosen[i] + 1 < vectors) else {
            return Ok(None);
        };
        chosen[i] += 1;
        for j in i + 1..m {
            chosen[j] = chosen[i];
        }
    }
}

fn binomial_u128(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Ordered subsets of size `k` of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn search_permutation(s: &RelationalStructure, m: usize, budget: SearchBudget) -> Result<Option<ExtensionResult>> {
    let p = Permutation::from_structure(s)?;
    let n = p.len();
    let total = n + m;
    let count = binomial(total as u64, m as u64).pow(2) * (1..=m as u128).product::<u128>();
    too_many(count, budget)?;
    let assignments = permutations(m);
    for pos in combinations(total, m) {
        for vals in combinations(total, m) {
            for a in &assignments {
                let mut line = vec![0; total];
                let mut is_new = vec![false; total];
                for (i, &q) in pos.iter().enumerate() {
                    line[q] = vals[a[i] - 1] + 1;
                    is_new[q] = true;
                }
                let old_vals: Vec<usize> = (1..=total).filter(|v| !vals.contains(&(v - 1))).collect();
                let mut k = 0;
                for q in 0..total {
                    if !is_new[q] {
                        line[q] = old_vals[p.oneline()[k] - 1];
                        k += 1;
                    }
                }
                let ext = perm_to_structure(&Permutation::new(line)?);
                if Rows::of(&ext).expect("binary").simple() {
                    let image: Vec<ElementId> = (0..total).filter(|&q| !is_new[q]).collect();
                    return Ok(Some(ExtensionResult::new(ext, image, pos.clone(), Metadata::Search)));
                }
            }
        }
    }
    Ok(None)
}

fn search_linear(s: &RelationalStructure, m: usize, budget: SearchBudget) -> Result<Option<ExtensionResult>> {
    let n = s.n();
    let total = n + m;
    too_many(binomial(total as u64, m as u64), budget)?;
    // original rank order
    let mut order: Vec<ElementId> = (0..n).collect();
    order.sort_by_key(|&x| (0..n).filter(|&y| s.related(0, y, x)).count());
    for slots in combinations(total, m) {
        // slot positions hold new elements; the rest hold originals in order
        let mut rank = vec![0; total];
        let mut next_old = 0;
        for q in 0..total {
            if let Ok(i) = slots.binary_search(&q) {
                rank[n + i] = q;
            } else {
                rank[order[next_old]] = q;
                next_old += 1;
            }
        }
        let mut ext = s.clone();
        ext.add_elements(m);
        for u in 0..total {
            for v in 0..total {
                if rank[u] < rank[v] {
                    ext.insert(0, vec![u, v])?;
                }
            }
        }
        if any_simple(&ext)? {
            let (image, added) = appended(s, m);
            return Ok(Some(ExtensionResult::new(ext, image, added, Metadata::Search)));
        }
    }
    Ok(None)
}

fn search_poset(s: &RelationalStructure, m: usize, budget: SearchBudget) -> Result<Option<ExtensionResult>> {
    let n = s.n();
    let mut below: Vec<u64> = (0..n)
        .map(|y| (0..n).filter(|&x| s.related(0, x, y)).fold(0, |a, x| a | 1 << x))
        .collect();
    let mut visited = 0u64;
    let found = poset_dfs(&mut below, n + m, budget.cap(), &mut visited)?;
    Ok(found.map(|below| {
        let mut ext = s.clone();
        ext.add_elements(m);
        for (y, &row) in below.iter().enumerate() {
            for x in 0..n + m {
                if row >> x & 1 == 1 {
                    ext.insert(0, vec![x, y]).expect("in range");
                }
            }
        }
        let (image, added) = appended(s, m);
        ExtensionResult::new(ext, image, added, Metadata::Search)
    }))
}

fn poset_dfs(below: &mut Vec<u64>, total: usize, cap: u64, visited: &mut u64) -> Result<Option<Vec<u64>>> {
    let k = below.len();
    if k == total {
        *visited += 1;
        if *visited > cap {
            return Err(Error::SearchSpace(format!("more than {cap} candidate posets")));
        }
        let mut rows = Rows::new(total, 1);
        for (y, &row) in below.iter().enumerate() {
            for x in 0..total {
                if row >> x & 1 == 1 {
                    rows.set(0, x, y);
                }
            }
        }
        return Ok(if rows.simple() { Some(below.clone()) } else { None });
    }
    for (d, u) in placements(below, k) {
        let saved = below.clone();
        below.push(d);
        for (y, row) in below.iter_mut().enumerate().take(k) {
            if u >> y & 1 == 1 {
                *row |= (1 << k) | d;
            }
        }
        if let Some(found) = poset_dfs(below, total, cap, visited)? {
            return Ok(Some(found));
        }
        *below = saved;
    }
    Ok(None)
}

fn search_tuples(
    s: &RelationalStructure,
    class: StructureClass,
    m: usize,
    budget: SearchBudget,
) -> Result<Option<ExtensionResult>> {
    let n = s.n();
    let total = n + m;
    let slots = tuple_slots(class, total, &|t| t.iter().any(|&x| x >= n));
    if slots.len() >= 63 {
        return Err(Error::SearchSpace(format!("2^{} tuple assignments", slots.len())));
    }
    too_many(1u128 << slots.len(), budget)?;
    for mask in 0u64..(1u64 << slots.len()) {
        let mut ext = s.clone();
        ext.add_elements(m);
        for (b, orbit) in slots.iter().enumerate() {
            if mask >> b & 1 == 1 {
                for t in orbit {
                    ext.insert(0, t.clone())?;
                }
            }
        }
        if any_simple(&ext)? {
            let (image, added) = appended(s, m);
            return Ok(Some(ExtensionResult::new(ext, image, added, Metadata::Search)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{digraph, graph};

    fn chain(n: usize) -> RelationalStructure {
        let arcs: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        digraph(n, &arcs).unwrap()
    }

    fn complete(n: usize) -> RelationalStructure {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        graph(n, &edges).unwrap()
    }

    #[test]
    fn simple_permutations_of_length_four() {
        let simple: Vec<String> = enumerate_structures(StructureClass::Permutation, 4)
            .unwrap()
            .filter(|s| exhaustive_is_simple(s).unwrap())
            .map(|s| Permutation::from_structure(&s).unwrap().to_string())
            .collect();
        assert_eq!(simple, vec!["2413", "3142"]);
    }

    #[test]
    fn no_simple_four_vertex_tournament() {
        let all: Vec<_> = enumerate_structures(StructureClass::Tournament, 4).unwrap().collect();
        assert_eq!(all.len(), 64);
        assert!(all.iter().all(|t| !exhaustive_is_simple(t).unwrap()));
    }

    #[test]
    fn two_element_structures_are_simple() {
        for s in enumerate_structures(StructureClass::Digraph, 2).unwrap() {
            assert!(exhaustive_is_simple(&s).unwrap());
        }
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_structures(StructureClass::Tournament, 3).unwrap().count(), 8);
        assert_eq!(enumerate_structures(StructureClass::Graph, 2).unwrap().count(), 2);
        assert_eq!(enumerate_structures(StructureClass::Permutation, 3).unwrap().count(), 6);
        assert_eq!(enumerate_structures(StructureClass::OrientedGraph, 3).unwrap().count(), 27);
        assert_eq!(enumerate_structures(StructureClass::Hypergraph(3), 4).unwrap().count(), 16);
        // labeled posets: 1, 3, 19, 219, 4231
        let posets: Vec<usize> = (1..=5)
            .map(|n| enumerate_structures(StructureClass::Poset, n).unwrap().count())
            .collect();
        assert_eq!(posets, vec![1, 3, 19, 219, 4231]);
    }

    #[test]
    fn enumerated_structures_validate_and_are_distinct() {
        for class in [StructureClass::Poset, StructureClass::OrientedGraph, StructureClass::LinearOrder] {
            let all: Vec<_> = enumerate_structures(class, 4).unwrap().collect();
            for s in &all {
                check(s, class).unwrap();
            }
            let distinct: HashSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
        }
    }

    #[test]
    fn permutations_in_lex_order() {
        assert_eq!(
            permutations(3),
            vec![vec![1, 2, 3], vec![1, 3, 2], vec![2, 1, 3], vec![2, 3, 1], vec![3, 1, 2], vec![3, 2, 1]]
        );
    }

    #[test]
    fn odd_chain_needs_two() {
        let c5 = chain(5);
        assert!(find_one_point_extension(&c5, StructureClass::Tournament).unwrap().is_none());
        assert_eq!(
            minimal_extension_size(&c5, StructureClass::Tournament, SearchBudget::new(2)).unwrap(),
            Some(2)
        );
    }

    #[test]
    fn even_chain_takes_one() {
        let w = find_one_point_extension(&chain(4), StructureClass::Tournament).unwrap().unwrap();
        assert!(exhaustive_is_simple(&w.extended).unwrap());
        let w2 = find_one_point_extension(&chain(2), StructureClass::Tournament).unwrap().unwrap();
        // the only simple 3-vertex tournament is the cyclic one
        assert_eq!(w2.extended, digraph(3, &[(0, 1), (1, 2), (2, 0)]).unwrap());
    }

    #[test]
    fn identity_four_needs_three() {
        let id = perm_to_structure(&Permutation::identity(4));
        assert_eq!(
            minimal_extension_size(&id, StructureClass::Permutation, SearchBudget::new(3)).unwrap(),
            Some(3)
        );
    }

    #[test]
    fn triangle_needs_two() {
        assert_eq!(
            minimal_extension_size(&complete(3), StructureClass::Graph, SearchBudget::new(2)).unwrap(),
            Some(2)
        );
    }

    #[test]
    fn cap_is_enforced() {
        let budget = SearchBudget::new(2).with_cap(10);
        assert!(matches!(
            minimal_extension_size(&complete(5), StructureClass::Graph, budget),
            Err(Error::SearchSpace(_))
        ));
    }

    #[test]
    fn poset_search_finds_extension() {
        let anti = crate::structure::poset(3, &[]).unwrap();
        let size = minimal_extension_size(&anti, StructureClass::Poset, SearchBudget::new(2)).unwrap();
        assert_eq!(size, Some(2));
    }

    #[test]
    fn all_intervals_of_2413() {
        let p = perm_to_structure(&Permutation::parse_compact("2413").unwrap());
        assert_eq!(all_intervals(&p).unwrap().len(), 6);
    }
}
