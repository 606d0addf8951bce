//! Finite relational structures over arbitrary signatures.
//!
//! A structure has a dense ground set `0..n` and, for every relation symbol in
//! its signature, a set of tuples of the declared arity. Tuples are kept in a
//! `BTreeSet`, so two structures are equal exactly when their ground sets,
//! signatures and tuple sets coincide.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Index of an element in the ground set `0..n`.
pub type ElementId = usize;

/// A relation symbol together with its arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelationSignature {
    pub name: String,
    pub arity: usize,
}

impl RelationSignature {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        assert!(arity >= 1, "relation arity must be positive");
        Self {
            name: name.into(),
            arity,
        }
    }
}

/// Relation symbol used by graphs.
pub const EDGE: &str = "E";
/// Relation symbol used by tournaments, digraphs and oriented graphs.
pub const ARC: &str = "arc";
/// Relation symbol used by posets and linear orders, and for the positional
/// order of a permutation.
pub const LESS: &str = "lt";
/// Relation symbol for the value order of a permutation.
pub const PREC: &str = "prec";
/// Relation symbol used by the k-ary classes.
pub const KARY: &str = "R";

/// The class (axiom package) a structure is meant to belong to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructureClass {
    Graph,
    Tournament,
    Digraph,
    OrientedGraph,
    Poset,
    LinearOrder,
    Permutation,
    Kary(usize),
    KaryIrreflexive(usize),
    Hypergraph(usize),
}

impl StructureClass {
    /// The signature every structure of this class carries.
    pub fn signature(self) -> Vec<RelationSignature> {
        use StructureClass::*;
        match self {
            Graph => vec![RelationSignature::new(EDGE, 2)],
            Tournament | Digraph | OrientedGraph => vec![RelationSignature::new(ARC, 2)],
            Poset | LinearOrder => vec![RelationSignature::new(LESS, 2)],
            Permutation => vec![
                RelationSignature::new(LESS, 2),
                RelationSignature::new(PREC, 2),
            ],
            Kary(k) | KaryIrreflexive(k) | Hypergraph(k) => vec![RelationSignature::new(KARY, k)],
        }
    }

    /// All classes with a fixed arity, plus the k-ary ones instantiated at `k`.
    pub fn all_with_arity(k: usize) -> Vec<StructureClass> {
        use StructureClass::*;
        vec![
            Graph,
            Tournament,
            Digraph,
            OrientedGraph,
            Poset,
            LinearOrder,
            Permutation,
            Kary(k),
            KaryIrreflexive(k),
            Hypergraph(k),
        ]
    }
}

impl fmt::Display for StructureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use StructureClass::*;
        match self {
            Graph => f.write_str("graph"),
            Tournament => f.write_str("tournament"),
            Digraph => f.write_str("digraph"),
            OrientedGraph => f.write_str("oriented-graph"),
            Poset => f.write_str("poset"),
            LinearOrder => f.write_str("linear-order"),
            Permutation => f.write_str("permutation"),
            Kary(k) => write!(f, "kary({k})"),
            KaryIrreflexive(k) => write!(f, "kary-irreflexive({k})"),
            Hypergraph(k) => write!(f, "hypergraph({k})"),
        }
    }
}

impl FromStr for StructureClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use StructureClass::*;
        let simple = match s {
            "graph" => Some(Graph),
            "tournament" => Some(Tournament),
            "digraph" => Some(Digraph),
            "oriented-graph" => Some(OrientedGraph),
            "poset" => Some(Poset),
            "linear-order" => Some(LinearOrder),
            "permutation" => Some(Permutation),
            _ => None,
        };
        if let Some(c) = simple {
            return Ok(c);
        }
        let (head, rest) = s
            .split_once('(')
            .ok_or_else(|| Error::InvalidInput(format!("unknown class `{s}`")))?;
        let k: usize = rest
            .strip_suffix(')')
            .and_then(|k| k.parse().ok())
            .ok_or_else(|| Error::InvalidInput(format!("malformed arity in class `{s}`")))?;
        if k < 1 {
            return Err(Error::InvalidInput(format!("arity must be positive in `{s}`")));
        }
        match head {
            "kary" => Ok(Kary(k)),
            "kary-irreflexive" => Ok(KaryIrreflexive(k)),
            "hypergraph" => Ok(Hypergraph(k)),
            _ => Err(Error::InvalidInput(format!("unknown class `{s}`"))),
        }
    }
}

/// The axiom a [`Violation`] breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    Symmetry,
    Irreflexivity,
    Asymmetry,
    Transitivity,
    Trichotomy,
    EntrySymmetry,
    RepeatedEntry,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Symmetry => "symmetry",
            Axiom::Irreflexivity => "irreflexivity",
            Axiom::Asymmetry => "asymmetry",
            Axiom::Transitivity => "transitivity",
            Axiom::Trichotomy => "trichotomy",
            Axiom::EntrySymmetry => "entry-symmetry",
            Axiom::RepeatedEntry => "repeated-entry",
        };
        f.write_str(s)
    }
}

/// A class axiom that fails, with a witness tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Violation {
    pub axiom: Axiom,
    pub relation: String,
    pub witness: Vec<ElementId>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.witness.iter().map(|x| x.to_string()).collect();
        write!(f, "{} of `{}` fails at ({})", self.axiom, self.relation, w.join(","))
    }
}

/// A finite relational structure on the ground set `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelationalStructure {
    n: usize,
    signature: Vec<RelationSignature>,
    relations: Vec<BTreeSet<Vec<ElementId>>>,
}

impl RelationalStructure {
    /// A structure with no tuples.
    pub fn empty(n: usize, signature: Vec<RelationSignature>) -> Self {
        let relations = vec![BTreeSet::new(); signature.len()];
        Self {
            n,
            signature,
            relations,
        }
    }

    /// An empty structure carrying the signature of `class`.
    pub fn for_class(n: usize, class: StructureClass) -> Self {
        Self::empty(n, class.signature())
    }

    /// Builds a structure from explicit tuple lists, one per relation.
    pub fn from_tuples(
        n: usize,
        signature: Vec<RelationSignature>,
        tuples: Vec<Vec<Vec<ElementId>>>,
    ) -> Result<Self> {
        if tuples.len() != signature.len() {
            return Err(Error::SignatureMismatch(format!(
                "{} relations declared, {} tuple lists given",
                signature.len(),
                tuples.len()
            )));
        }
        let mut s = Self::empty(n, signature);
        for (r, list) in tuples.into_iter().enumerate() {
            for t in list {
                s.insert(r, t)?;
            }
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn signature(&self) -> &[RelationSignature] {
        &self.signature
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }

    pub fn relation_index(&self, name: &str) -> Option<usize> {
        self.signature.iter().position(|r| r.name == name)
    }

    /// The tuples of relation `rel` in lexicographic order.
    pub fn tuples(&self, rel: usize) -> impl Iterator<Item = &[ElementId]> + '_ {
        self.relations[rel].iter().map(|t| t.as_slice())
    }

    pub fn tuple_count(&self, rel: usize) -> usize {
        self.relations[rel].len()
    }

    pub fn holds(&self, rel: usize, tuple: &[ElementId]) -> bool {
        self.relations[rel].contains(tuple)
    }

    /// Shorthand for a binary relation lookup.
    pub fn related(&self, rel: usize, u: ElementId, v: ElementId) -> bool {
        self.relations[rel].contains(&[u, v][..])
    }

    /// Adds a tuple; returns whether it was new.
    pub fn insert(&mut self, rel: usize, tuple: Vec<ElementId>) -> Result<bool> {
        let sig = self
            .signature
            .get(rel)
            .ok_or_else(|| Error::SignatureMismatch(format!("no relation with index {rel}")))?;
        if tuple.len() != sig.arity {
            return Err(Error::ArityMismatch {
                relation: sig.name.clone(),
                expected: sig.arity,
                got: tuple.len(),
            });
        }
        if let Some(&id) = tuple.iter().find(|&&x| x >= self.n) {
            return Err(Error::OutOfRange { id, n: self.n });
        }
        Ok(self.relations[rel].insert(tuple))
    }

    pub fn remove(&mut self, rel: usize, tuple: &[ElementId]) -> bool {
        self.relations[rel].remove(tuple)
    }

    /// Appends `count` fresh elements with no tuples; returns the first new id.
    pub fn add_elements(&mut self, count: usize) -> ElementId {
        let first = self.n;
        self.n += count;
        first
    }

    /// Applies a bijection `old id -> new id` to every tuple.
    pub fn relabel(&self, map: &[ElementId]) -> Result<Self> {
        if map.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "relabelling has {} entries for {} elements",
                map.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &m in map {
            if m >= self.n || std::mem::replace(&mut seen[m], true) {
                return Err(Error::InvalidInput("relabelling is not a bijection".into()));
            }
        }
        let relations = self
            .relations
            .iter()
            .map(|rel| {
                rel.iter()
                    .map(|t| t.iter().map(|&x| map[x]).collect())
                    .collect()
            })
            .collect();
        Ok(Self {
            n: self.n,
            signature: self.signature.clone(),
            relations,
        })
    }

    fn check_same_signature(&self, other: &Self) -> Result<()> {
        if self.signature != other.signature {
            return Err(Error::SignatureMismatch(format!(
                "{} vs {}",
                describe(&self.signature),
                describe(&other.signature)
            )));
        }
        Ok(())
    }
}

fn describe(sig: &[RelationSignature]) -> String {
    let parts: Vec<String> = sig.iter().map(|r| format!("{}/{}", r.name, r.arity)).collect();
    format!("[{}]", parts.join(", "))
}

/// Outcome of [`validate`]: empty means the structure satisfies every axiom.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Validation {
    pub violations: Vec<Violation>,
}

impl Validation {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every axiom of `class` and lists the failures.
pub fn validate(s: &RelationalStructure, class: StructureClass) -> Result<Validation> {
    let expected = class.signature();
    if s.signature.len() != expected.len()
        || s
            .signature
            .iter()
            .zip(&expected)
            .any(|(a, b)| a.arity != b.arity)
    {
        return Err(Error::SignatureMismatch(format!(
            "class {class} expects {}, structure has {}",
            describe(&expected),
            describe(&s.signature)
        )));
    }
    use StructureClass::*;
    let mut out = Vec::new();
    match class {
        Graph => {
            irreflexive(s, 0, &mut out);
            symmetric(s, 0, &mut out);
        }
        Tournament => {
            irreflexive(s, 0, &mut out);
            asymmetric(s, 0, &mut out);
            total(s, 0, &mut out);
        }
        Digraph | Kary(_) => {}
        OrientedGraph => asymmetric(s, 0, &mut out),
        Poset => {
            asymmetric(s, 0, &mut out);
            transitive(s, 0, &mut out);
        }
        LinearOrder => linear(s, 0, &mut out),
        Permutation => {
            linear(s, 0, &mut out);
            linear(s, 1, &mut out);
        }
        KaryIrreflexive(_) => no_repeats(s, 0, &mut out),
        Hypergraph(_) => {
            no_repeats(s, 0, &mut out);
            entry_symmetric(s, 0, &mut out);
        }
    }
    Ok(Validation { violations: out })
}

/// [`validate`], turning violations into [`Error::Axiom`].
pub fn check(s: &RelationalStructure, class: StructureClass) -> Result<()> {
    let v = validate(s, class)?;
    if v.is_ok() {
        Ok(())
    } else {
        Err(Error::Axiom {
            class,
            violations: v.violations,
        })
    }
}

fn violation(s: &RelationalStructure, rel: usize, axiom: Axiom, witness: Vec<ElementId>) -> Violation {
    Violation {
        axiom,
        relation: s.signature[rel].name.clone(),
        witness,
    }
}

fn irreflexive(s: &RelationalStructure, rel: usize, out: &mut Vec<Violation>) {
    for x in 0..s.n {
        if s.related(rel, x, x) {
            out.push(violation(s, rel, Axiom::Irreflexivity, vec![x, x]));
        }
    }
}

fn symmetric(s: &RelationalStructure, rel: usize, out: &mut Vec<Violation>) {
    for t in s.tuples(rel) {
        if !s.related(rel, t[1], t[0]) {
            out.push(violation(s, rel, Axiom::Symmetry, t.to_vec()));
        }
    }
}

fn asymmetric(s: &RelationalStructure, rel: usize, out: &mut Vec<Violation>) {
    for t in s.tuples(rel) {
        if t[0] <= t[1] && s.related(rel, t[1], t[0]) {
            out.push(violation(s, rel, Axiom::Asymmetry, t.to_vec()));
        }
    }
}

fn total(s: &RelationalStructure, rel: usize, out: &mut Vec<Violation>) {
    for x in 0..s.n {
        for y in x + 1..s.n {
            if !s.related(rel, x, y) && !s.related(rel, y, x) {
                out.push(violation(s, rel, Axiom::Trichotomy, vec![x, y]));
            }
        }
    }
}

fn transitive(s: &RelationalStructure, rel: usize, out: &mut Vec<Violation>) {
    for t in s.tuples(rel) {
        let (x, y) = (t[0], t[1]);
        for z in 0..s.n {
            if s.related(rel, y, z) && !s.related(rel, x, z) {
                out.push(violation(s, rel, Axiom::Transitivity, vec![x, y, z]));
            }
        }
    }
}

fn linear(s: &RelationalStructure, rel: usize, out: &mut Vec<Violation>) {
    asymmetric(s, rel, out);
    transitive(s, rel, out);
    total(s, rel, out);
}

fn no_repeats(s: &RelationalStructure, rel: usize, out: &mut Vec<Violation>) {
    for t in s.tuples(rel) {
        let distinct: BTreeSet<_> = t.iter().collect();
        if distinct.len() != t.len() {
            out.push(violation(s, rel, Axiom::RepeatedEntry, t.to_vec()));
        }
    }
}

fn entry_symmetric(s: &RelationalStructure, rel: usize, out: &mut Vec<Violation>) {
    for t in s.tuples(rel) {
        let k = t.len();
        // adjacent transpositions generate the symmetric group
        for i in 0..k.saturating_sub(1) {
            let mut u = t.to_vec();
            u.swap(i, i + 1);
            if !s.holds(rel, &u) {
                out.push(violation(s, rel, Axiom::EntrySymmetry, t.to_vec()));
                break;
            }
        }
    }
}

/// The substructure induced on `subset`, re-indexed densely in increasing
/// order of the retained ids.
pub fn restrict(s: &RelationalStructure, subset: &[ElementId]) -> Result<RelationalStructure> {
    restrict_mapped(s, subset).map(|(r, _)| r)
}

/// [`restrict`], also returning the retained old ids (`new id -> old id`).
pub fn restrict_mapped(
    s: &RelationalStructure,
    subset: &[ElementId],
) -> Result<(RelationalStructure, Vec<ElementId>)> {
    let mut keep: Vec<ElementId> = subset.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if let Some(&id) = keep.iter().find(|&&x| x >= s.n) {
        return Err(Error::OutOfRange { id, n: s.n });
    }
    let mut new_id = vec![usize::MAX; s.n];
    for (i, &x) in keep.iter().enumerate() {
        new_id[x] = i;
    }
    let relations = s
        .relations
        .iter()
        .map(|rel| {
            rel.iter()
                .filter(|t| t.iter().all(|&x| new_id[x] != usize::MAX))
                .map(|t| t.iter().map(|&x| new_id[x]).collect())
                .collect()
        })
        .collect();
    Ok((
        RelationalStructure {
            n: keep.len(),
            signature: s.signature.clone(),
            relations,
        },
        keep,
    ))
}

/// The substructure on `ids`, with element `i` of the result being `ids[i]`.
pub fn restrict_ordered(s: &RelationalStructure, ids: &[ElementId]) -> Result<RelationalStructure> {
    let mut new_id = vec![usize::MAX; s.n];
    for (i, &x) in ids.iter().enumerate() {
        if x >= s.n {
            return Err(Error::OutOfRange { id: x, n: s.n });
        }
        if new_id[x] != usize::MAX {
            return Err(Error::InvalidInput(format!("element {x} listed twice")));
        }
        new_id[x] = i;
    }
    let relations = s
        .relations
        .iter()
        .map(|rel| {
            rel.iter()
                .filter(|t| t.iter().all(|&x| new_id[x] != usize::MAX))
                .map(|t| t.iter().map(|&x| new_id[x]).collect())
                .collect()
        })
        .collect();
    Ok(RelationalStructure {
        n: ids.len(),
        signature: s.signature.clone(),
        relations,
    })
}

/// Inflates `quotient` by `blocks`; block `i` occupies the next `blocks[i].n()`
/// ids of the result, in order.
pub fn inflate(quotient: &RelationalStructure, blocks: &[RelationalStructure]) -> Result<RelationalStructure> {
    let mut next = 0;
    let placement: Vec<Vec<ElementId>> = blocks
        .iter()
        .map(|b| {
            let ids = (next..next + b.n).collect();
            next += b.n;
            ids
        })
        .collect();
    inflate_placed(quotient, blocks, &placement)
}

/// Inflates `quotient` by `blocks`, sending element `j` of block `i` to
/// `placement[i][j]`. The placements must partition `0..total`.
pub fn inflate_placed(
    quotient: &RelationalStructure,
    blocks: &[RelationalStructure],
    placement: &[Vec<ElementId>],
) -> Result<RelationalStructure> {
    if blocks.len() != quotient.n {
        return Err(Error::InvalidInput(format!(
            "{} blocks for a quotient of size {}",
            blocks.len(),
            quotient.n
        )));
    }
    if placement.len() != blocks.len() {
        return Err(Error::InvalidInput("one placement per block required".into()));
    }
    for (b, p) in blocks.iter().zip(placement) {
        quotient.check_same_signature(b)?;
        if b.n == 0 {
            return Err(Error::InvalidInput("inflation blocks must be nonempty".into()));
        }
        if p.len() != b.n {
            return Err(Error::InvalidInput("placement size differs from block size".into()));
        }
    }
    let total: usize = blocks.iter().map(|b| b.n).sum();
    let mut seen = vec![false; total];
    for &x in placement.iter().flatten() {
        if x >= total || std::mem::replace(&mut seen[x], true) {
            return Err(Error::InvalidInput("placements must partition the ground set".into()));
        }
    }

    let mut out = RelationalStructure::empty(total, quotient.signature.clone());
    for (b, p) in blocks.iter().zip(placement) {
        for (r, rel) in b.relations.iter().enumerate() {
            for t in rel {
                out.relations[r].insert(t.iter().map(|&x| p[x]).collect());
            }
        }
    }
    for (r, rel) in quotient.relations.iter().enumerate() {
        for q in rel {
            if q.iter().all(|&x| x == q[0]) {
                continue;
            }
            // cartesian product of the blocks named by the quotient tuple
            let mut partial: Vec<Vec<ElementId>> = vec![Vec::with_capacity(q.len())];
            for &s in q {
                partial = partial
                    .into_iter()
                    .flat_map(|pre| {
                        placement[s].iter().map(move |&x| {
                            let mut t = pre.clone();
                            t.push(x);
                            t
                        })
                    })
                    .collect();
            }
            out.relations[r].extend(partial);
        }
    }
    Ok(out)
}

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(oneline: Vec<usize>) -> Result<Self> {
        let n = oneline.len();
        let mut seen = vec![false; n + 1];
        for &v in &oneline {
            if v == 0 || v > n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidInput(format!(
                    "{oneline:?} is not a permutation of 1..={n}"
                )));
            }
        }
        Ok(Self(oneline))
    }

    pub fn identity(n: usize) -> Self {
        Self((1..=n).collect())
    }

    /// Parses a compact one-line string such as `2413` (lengths below 10 only).
    pub fn parse_compact(s: &str) -> Result<Self> {
        let digits: Option<Vec<usize>> = s
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect();
        Self::new(digits.ok_or_else(|| Error::InvalidInput(format!("bad permutation `{s}`")))?)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn oneline(&self) -> &[usize] {
        &self.0
    }

    /// Reads a permutation back from a two-linear-order structure.
    pub fn from_structure(s: &RelationalStructure) -> Result<Self> {
        check(s, StructureClass::Permutation)?;
        let n = s.n();
        let rank = |rel: usize, x: usize| (0..n).filter(|&y| s.related(rel, y, x)).count();
        let mut pairs: Vec<(usize, usize)> = (0..n).map(|x| (rank(0, x), rank(1, x) + 1)).collect();
        pairs.sort_unstable();
        Self::new(pairs.into_iter().map(|(_, v)| v).collect())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.len() >= 10 { " " } else { "" };
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(sep))
    }
}

/// The two-linear-order structure of a permutation: `lt` is the positional
/// order and `prec` orders positions by value.
pub fn perm_to_structure(p: &Permutation) -> RelationalStructure {
    let n = p.len();
    let mut s = RelationalStructure::for_class(n, StructureClass::Permutation);
    for i in 0..n {
        for j in i + 1..n {
            s.relations[0].insert(vec![i, j]);
        }
        for j in 0..n {
            if p.0[i] < p.0[j] {
                s.relations[1].insert(vec![i, j]);
            }
        }
    }
    s
}

/// Graph with an edge between comparable elements of a poset.
pub fn comparability_graph(p: &RelationalStructure) -> Result<RelationalStructure> {
    check(p, StructureClass::Poset)?;
    Ok(symmetrize(p))
}

/// Graph with an edge `uv` whenever `u -> v` or `v -> u`; loops are dropped.
pub fn underlying_graph(d: &RelationalStructure) -> Result<RelationalStructure> {
    check(d, StructureClass::Digraph)?;
    Ok(symmetrize(d))
}

fn symmetrize(s: &RelationalStructure) -> RelationalStructure {
    let mut g = RelationalStructure::for_class(s.n, StructureClass::Graph);
    for t in s.tuples(0) {
        if t[0] != t[1] {
            g.relations[0].insert(vec![t[0], t[1]]);
            g.relations[0].insert(vec![t[1], t[0]]);
        }
    }
    g
}

/// Transitive closure of binary relation `rel`, in place.
pub fn close_transitively(s: &mut RelationalStructure, rel: usize) {
    let n = s.n;
    let mut m = vec![vec![false; n]; n];
    for t in s.tuples(rel) {
        m[t[0]][t[1]] = true;
    }
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
    for (i, row) in m.iter().enumerate() {
        for (j, &b) in row.iter().enumerate() {
            if b {
                s.relations[rel].insert(vec![i, j]);
            }
        }
    }
}

/// Cover pairs of a strict order stored in relation `rel`.
pub fn transitive_reduction(s: &RelationalStructure, rel: usize) -> Vec<(ElementId, ElementId)> {
    s.tuples(rel)
        .filter(|t| {
            !(0..s.n).any(|z| z != t[0] && z != t[1] && s.related(rel, t[0], z) && s.related(rel, z, t[1]))
        })
        .map(|t| (t[0], t[1]))
        .collect()
}

/// Graph on `n` vertices with the given undirected edges.
pub fn graph(n: usize, edges: &[(ElementId, ElementId)]) -> Result<RelationalStructure> {
    let mut g = RelationalStructure::for_class(n, StructureClass::Graph);
    for &(u, v) in edges {
        if u == v {
            return Err(Error::InvalidInput(format!("loop at {u} in a graph")));
        }
        g.insert(0, vec![u, v])?;
        g.insert(0, vec![v, u])?;
    }
    Ok(g)
}

/// Structure with one binary `arc` relation. Used for tournaments, digraphs
/// and oriented graphs; validate against the intended class separately.
pub fn digraph(n: usize, arcs: &[(ElementId, ElementId)]) -> Result<RelationalStructure> {
    let mut d = RelationalStructure::for_class(n, StructureClass::Digraph);
    for &(u, v) in arcs {
        d.insert(0, vec![u, v])?;
    }
    Ok(d)
}

/// Poset generated by the given comparabilities (closed transitively).
pub fn poset(n: usize, less: &[(ElementId, ElementId)]) -> Result<RelationalStructure> {
    let mut p = RelationalStructure::for_class(n, StructureClass::Poset);
    for &(u, v) in less {
        p.insert(0, vec![u, v])?;
    }
    close_transitively(&mut p, 0);
    check(&p, StructureClass::Poset)?;
    Ok(p)
}

/// k-uniform hypergraph; every edge is materialized in all entry orders.
pub fn hypergraph(n: usize, k: usize, edges: &[Vec<ElementId>]) -> Result<RelationalStructure> {
    let mut h = RelationalStructure::for_class(n, StructureClass::Hypergraph(k));
    for e in edges {
        if e.len() != k {
            return Err(Error::ArityMismatch {
                relation: KARY.into(),
                expected: k,
                got: e.len(),
            });
        }
        for t in orderings(e) {
            h.insert(0, t)?;
        }
    }
    Ok(h)
}

/// All orderings of `items` (with repetition if `items` repeats).
pub fn orderings(items: &[ElementId]) -> Vec<Vec<ElementId>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in orderings(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> RelationalStructure {
        graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn complete_graph_validates() {
        assert!(validate(&k3(), StructureClass::Graph).unwrap().is_ok());
    }

    #[test]
    fn two_cycle_is_not_oriented() {
        let d = digraph(2, &[(0, 1), (1, 0)]).unwrap();
        let v = validate(&d, StructureClass::OrientedGraph).unwrap();
        assert_eq!(v.violations.len(), 1);
        assert_eq!(v.violations[0].axiom, Axiom::Asymmetry);
        assert_eq!(v.violations[0].witness, vec![0, 1]);
    }

    #[test]
    fn transitive_triangle_is_a_tournament() {
        let t = digraph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(validate(&t, StructureClass::Tournament).unwrap().is_ok());
        let missing = digraph(3, &[(0, 1), (1, 2)]).unwrap();
        let v = validate(&missing, StructureClass::Tournament).unwrap();
        assert_eq!(v.violations[0].axiom, Axiom::Trichotomy);
    }

    #[test]
    fn validate_rejects_wrong_arity() {
        let s = RelationalStructure::for_class(3, StructureClass::Kary(3));
        assert!(matches!(
            validate(&s, StructureClass::Graph),
            Err(Error::SignatureMismatch(_))
        ));
    }

    #[test]
    fn restrict_permutation_to_pattern() {
        let p = perm_to_structure(&Permutation::parse_compact("24513").unwrap());
        let r = restrict(&p, &[1, 2]).unwrap();
        assert_eq!(r, perm_to_structure(&Permutation::identity(2)));
        assert_eq!(restrict(&p, &[0, 1, 2, 3, 4]).unwrap(), p);
        assert!(matches!(restrict(&p, &[7]), Err(Error::OutOfRange { id: 7, n: 5 })));
    }

    #[test]
    fn restrict_transitive_tournament() {
        let arcs: Vec<_> = (0..7).flat_map(|i| (i + 1..7).map(move |j| (i, j))).collect();
        let t = digraph(7, &arcs).unwrap();
        let r = restrict(&t, &[0, 2, 4]).unwrap();
        assert_eq!(r, digraph(3, &[(0, 1), (0, 2), (1, 2)]).unwrap());
    }

    #[test]
    fn inflate_2413_gives_24513() {
        let q = perm_to_structure(&Permutation::parse_compact("2413").unwrap());
        let one = perm_to_structure(&Permutation::identity(1));
        let two = perm_to_structure(&Permutation::identity(2));
        let blocks = vec![one.clone(), two, one.clone(), one];
        let got = inflate(&q, &blocks).unwrap();
        assert_eq!(got, perm_to_structure(&Permutation::parse_compact("24513").unwrap()));
    }

    #[test]
    fn inflate_singletons_is_identity() {
        let q = perm_to_structure(&Permutation::parse_compact("2413").unwrap());
        let one = perm_to_structure(&Permutation::identity(1));
        assert_eq!(inflate(&q, &vec![one; 4]).unwrap(), q);
    }

    #[test]
    fn inflate_chain_by_antichain() {
        let chain = poset(2, &[(0, 1)]).unwrap();
        let anti = poset(2, &[]).unwrap();
        let single = poset(1, &[]).unwrap();
        let got = inflate(&chain, &[anti, single]).unwrap();
        assert_eq!(got, poset(3, &[(0, 2), (1, 2)]).unwrap());
    }

    #[test]
    fn inflate_rejects_signature_mismatch() {
        let q = graph(2, &[]).unwrap();
        let b = digraph(1, &[]).unwrap();
        assert!(matches!(
            inflate(&q, &[b.clone(), b]),
            Err(Error::SignatureMismatch(_))
        ));
    }

    #[test]
    fn permutation_orders() {
        let id = perm_to_structure(&Permutation::identity(4));
        let lt: Vec<_> = id.tuples(0).map(|t| t.to_vec()).collect();
        let prec: Vec<_> = id.tuples(1).map(|t| t.to_vec()).collect();
        assert_eq!(lt, prec);

        let rev = perm_to_structure(&Permutation::parse_compact("21").unwrap());
        assert!(rev.related(0, 0, 1));
        assert!(rev.related(1, 1, 0));

        // 2413: ranking positions by value gives 3,1,4,2 (1-based)
        let p = perm_to_structure(&Permutation::parse_compact("2413").unwrap());
        let mut by_value: Vec<usize> = (0..4).collect();
        by_value.sort_by_key(|&i| (0..4).filter(|&j| p.related(1, j, i)).count());
        assert_eq!(by_value, vec![2, 0, 3, 1]);
        assert_eq!(Permutation::from_structure(&p).unwrap().to_string(), "2413");
    }

    #[test]
    fn comparability_graphs() {
        let chain = poset(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(comparability_graph(&chain).unwrap(), k3());
        let anti = poset(4, &[]).unwrap();
        assert_eq!(comparability_graph(&anti).unwrap(), graph(4, &[]).unwrap());
        let vee = poset(3, &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(comparability_graph(&vee).unwrap(), graph(3, &[(0, 2), (1, 2)]).unwrap());
        let not_poset = digraph(2, &[(0, 1), (1, 0)]).unwrap();
        let relabelled = RelationalStructure::from_tuples(
            2,
            StructureClass::Poset.signature(),
            vec![not_poset.tuples(0).map(|t| t.to_vec()).collect()],
        )
        .unwrap();
        assert!(comparability_graph(&relabelled).is_err());
    }

    #[test]
    fn underlying_graphs() {
        let complete: Vec<_> = (0..4)
            .flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(underlying_graph(&digraph(4, &complete).unwrap()).unwrap(), k4);
        let linear: Vec<_> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
        assert_eq!(underlying_graph(&digraph(4, &linear).unwrap()).unwrap(), k4);
        let single = digraph(3, &[(0, 1)]).unwrap();
        assert_eq!(underlying_graph(&single).unwrap(), graph(3, &[(0, 1)]).unwrap());
    }

    #[test]
    fn class_tags_round_trip() {
        for c in StructureClass::all_with_arity(3) {
            assert_eq!(c.to_string().parse::<StructureClass>().unwrap(), c);
        }
        assert!("kary(x)".parse::<StructureClass>().is_err());
    }

    #[test]
    fn hypergraph_is_materialized() {
        let h = hypergraph(4, 3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(h.tuple_count(0), 6);
        assert!(validate(&h, StructureClass::Hypergraph(3)).unwrap().is_ok());
        let mut broken = h.clone();
        broken.remove(0, &[2, 1, 0]);
        assert!(!validate(&broken, StructureClass::Hypergraph(3)).unwrap().is_ok());
    }
}
