//! Simple extensions of permutations.
//!
//! Each variant adds an entry point (leftmost, neither a new maximum nor a
//! new minimum) and an exit point (a new maximum for `up`, a new minimum for
//! `down`; never leftmost or rightmost). The remaining points form the core.
//! Every proper interval of either variant contains the exit point, and at
//! least one variant is simple.
//!
//! Internally a permutation is a 0-based one-line vector.

use std::fmt;

use super::{ExtensionResult, Metadata};
use crate::decomposition::{root_split, RootKind};
use crate::error::{Error, Result};
use crate::intervals::{is_simple, IntervalIndex};
use crate::structure::{check, perm_to_structure, Permutation, RelationalStructure, StructureClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PermVariant {
    Up,
    Down,
}

impl fmt::Display for PermVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PermVariant::Up => "up",
            PermVariant::Down => "down",
        })
    }
}

#[derive(Clone, Debug)]
pub struct PermExtension {
    pub result: ExtensionResult,
    /// The extension as a one-line permutation.
    pub oneline: Permutation,
    /// Positions (0-based) of the entry, exit and linking points.
    pub entry_position: usize,
    pub exit_position: usize,
    pub linking_positions: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct PermExtensionPair {
    pub up: PermExtension,
    pub down: PermExtension,
}

impl PermExtensionPair {
    /// `up` when simple, otherwise `down`.
    pub fn best(self) -> Result<ExtensionResult> {
        if self.up.result.is_simple() {
            Ok(self.up.result)
        } else if self.down.result.is_simple() {
            Ok(self.down.result)
        } else {
            Err(Error::ContractViolation("neither permutation variant is simple".into()))
        }
    }

    pub fn get(&self, v: PermVariant) -> &PermExtension {
        match v {
            PermVariant::Up => &self.up,
            PermVariant::Down => &self.down,
        }
    }
}

/// An extension in positional terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Ext {
    pub line: Vec<usize>,
    pub original: Vec<bool>,
    pub entry: usize,
    pub exit: usize,
    pub linking: Vec<usize>,
}

impl Ext {
    fn from_parts(line: &[usize], entry: usize, exit: usize) -> Self {
        let original = (0..line.len()).map(|q| q != entry && q != exit).collect();
        Self {
            line: line.to_vec(),
            original,
            entry,
            exit,
            linking: vec![entry, exit],
        }
    }

    fn complement(mut self) -> Self {
        let n = self.line.len();
        for v in &mut self.line {
            *v = n - 1 - *v;
        }
        self
    }

    fn is_core(&self, q: usize) -> bool {
        q != self.entry && q != self.exit
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Original,
    Added,
    Entry,
    Exit,
    Link,
}

#[derive(Clone)]
struct Point {
    h: (usize, usize),
    v: (usize, usize),
    role: Role,
}

/// Ranks points horizontally into positions and vertically into values.
fn assemble(points: Vec<Point>) -> Ext {
    let mut by_h: Vec<usize> = (0..points.len()).collect();
    by_h.sort_by_key(|&i| points[i].h);
    let mut by_v: Vec<usize> = (0..points.len()).collect();
    by_v.sort_by_key(|&i| points[i].v);
    let mut value = vec![0; points.len()];
    for (r, &i) in by_v.iter().enumerate() {
        value[i] = r;
    }
    let mut ext = Ext {
        line: Vec::with_capacity(points.len()),
        original: Vec::with_capacity(points.len()),
        entry: usize::MAX,
        exit: usize::MAX,
        linking: Vec::new(),
    };
    let mut links = Vec::new();
    for (q, &i) in by_h.iter().enumerate() {
        ext.line.push(value[i]);
        ext.original.push(points[i].role == Role::Original);
        match points[i].role {
            Role::Entry => ext.entry = q,
            Role::Exit => ext.exit = q,
            _ => {}
        }
        if matches!(points[i].role, Role::Entry | Role::Exit | Role::Link) {
            links.push((points[i].h, q));
        }
    }
    links.sort_unstable();
    ext.linking = links.into_iter().map(|(_, q)| q).collect();
    ext
}

fn complement(pi: &[usize]) -> Vec<usize> {
    let n = pi.len();
    pi.iter().map(|&v| n - 1 - v).collect()
}

/// The pattern formed by the points at `positions` (sorted).
fn pattern(pi: &[usize], positions: &[usize]) -> Vec<usize> {
    let vals: Vec<usize> = positions.iter().map(|&p| pi[p]).collect();
    let mut sorted = vals.clone();
    sorted.sort_unstable();
    vals.iter()
        .map(|v| sorted.binary_search(v).expect("value present"))
        .collect()
}

pub(crate) fn to_structure(pi: &[usize]) -> RelationalStructure {
    perm_to_structure(&Permutation::new(pi.iter().map(|v| v + 1).collect()).expect("valid one-line"))
}

/// Extension of a permutation of length at least two.
pub(crate) fn ext(pi: &[usize], up: bool) -> Result<Ext> {
    let n = pi.len();
    match (n, pi) {
        (0 | 1, _) => return Err(Error::InvalidInput("permutation extensions need two points".into())),
        (2, [0, 1]) => {
            return Ok(if up {
                Ext::from_parts(&[1, 3, 0, 2], 0, 1)
            } else {
                Ext::from_parts(&[2, 0, 1, 3], 0, 1)
            })
        }
        (3, [0, 1, 2]) => {
            return Ok(if up {
                Ext::from_parts(&[2, 0, 4, 1, 3], 0, 2)
            } else {
                Ext::from_parts(&[3, 1, 0, 2, 4], 0, 2)
            })
        }
        _ => {}
    }
    let root = root_split(&to_structure(pi));
    let mut parts = root.parts.clone();
    for p in &mut parts {
        p.sort_unstable();
    }
    parts.sort_unstable();
    let sigma = pattern(pi, &parts.iter().map(|p| p[0]).collect::<Vec<_>>());
    if root.kind == RootKind::Prime {
        return link(pi, &sigma, &parts, up);
    }
    if sigma[0] > sigma[1] {
        return Ok(ext(&complement(pi), !up)?.complement());
    }

    let k = parts.len();
    let ends_with_top = |p: &[usize]| p.iter().all(|&q| pi[q] <= pi[p[p.len() - 1]]);
    let starts_with_bottom = |p: &[usize]| p.iter().all(|&q| pi[q] >= pi[p[0]]);
    let split = if let Some(i) = (0..k - 1).find(|&i| !ends_with_top(&parts[i])) {
        i + 1
    } else if let Some(i) = (1..k).rev().find(|&i| !starts_with_bottom(&parts[i])) {
        i
    } else {
        // the identity: every part is a single point
        n - 2
    };
    let a1: Vec<usize> = parts[..split].concat();
    let a2: Vec<usize> = parts[split..].concat();

    if a2.len() == 1 {
        return last_singleton(pi, &a1, up);
    }
    if a1.len() == 1 {
        return first_singleton(pi, &a2, up);
    }
    link(pi, &[0, 1], &[a1, a2], up)
}

/// `12[pi1, pi2]` with `pi2` a single point: the exit of `pi1`'s extension
/// goes above that point for `up`.
fn last_singleton(pi: &[usize], a1: &[usize], up: bool) -> Result<Ext> {
    let e = ext(&pattern(pi, a1), up)?;
    let mut points: Vec<Point> = (0..e.line.len())
        .map(|q| Point {
            h: (1, q),
            v: if q == e.exit && up { (3, 0) } else { (1, e.line[q]) },
            role: role_of(&e, q),
        })
        .collect();
    points.push(Point {
        h: (2, 0),
        v: (2, 0),
        role: Role::Original,
    });
    Ok(assemble(points))
}

/// `12[pi1, pi2]` with `pi1` a single point: the added points left of all of
/// `pi2` move left of that point, which sits just below `pi2`.
fn first_singleton(pi: &[usize], a2: &[usize], up: bool) -> Result<Ext> {
    let e = ext(&pattern(pi, a2), up)?;
    let first_orig = e.original.iter().position(|&o| o).expect("original points");
    let lowest = (0..e.line.len())
        .filter(|&q| e.original[q])
        .map(|q| e.line[q])
        .min()
        .expect("original points");
    let mut points: Vec<Point> = (0..e.line.len())
        .map(|q| Point {
            h: (if q < first_orig { 0 } else { 2 }, q),
            v: (0, 2 * e.line[q] + 2),
            role: role_of(&e, q),
        })
        .collect();
    points.push(Point {
        h: (1, 0),
        v: (0, 2 * lowest + 1),
        role: Role::Original,
    });
    Ok(assemble(points))
}

fn role_of(e: &Ext, q: usize) -> Role {
    if q == e.entry {
        Role::Entry
    } else if q == e.exit {
        Role::Exit
    } else if e.original[q] {
        Role::Original
    } else {
        Role::Added
    }
}

/// Inflation of `sigma` by the blocks at `parts`, with the cores of the block
/// extensions chained through linking points.
fn link(pi: &[usize], sigma: &[usize], parts: &[Vec<usize>], up: bool) -> Result<Ext> {
    let m = parts.len();
    let nontrivial: Vec<usize> = (0..m).filter(|&i| parts[i].len() > 1).collect();
    if nontrivial.is_empty() {
        return simple_case(pi, up);
    }
    let t = nontrivial.len();
    let mut exts = Vec::with_capacity(t);
    for (r, &i) in nontrivial.iter().enumerate() {
        let b = if r + 1 < t {
            sigma[i] < sigma[nontrivial[r + 1]]
        } else {
            up
        };
        exts.push(ext(&pattern(pi, &parts[i]), b)?);
    }

    let mut points = Vec::new();
    let mut r = 0;
    for i in 0..m {
        if parts[i].len() == 1 {
            points.push(Point {
                h: (i + 1, 0),
                v: (sigma[i] + 1, 0),
                role: Role::Original,
            });
            continue;
        }
        let e = &exts[r];
        for q in (0..e.line.len()).filter(|&q| e.is_core(q)) {
            points.push(Point {
                h: (i + 1, 2 * q),
                v: (sigma[i] + 1, e.line[q]),
                role: if e.original[q] { Role::Original } else { Role::Added },
            });
        }
        r += 1;
    }
    let first = &exts[0];
    points.push(Point {
        h: (0, 0),
        v: (sigma[nontrivial[0]] + 1, first.line[first.entry]),
        role: Role::Entry,
    });
    for r in 1..t {
        let (prev, next) = (&exts[r - 1], &exts[r]);
        points.push(Point {
            h: (nontrivial[r - 1] + 1, 2 * prev.exit),
            v: (sigma[nontrivial[r]] + 1, next.line[next.entry]),
            role: Role::Link,
        });
    }
    let last = &exts[t - 1];
    let mut places = vec![(nontrivial[t - 1] + 1, 2 * last.exit)];
    // an exit left of its block's core may instead sit just after the
    // previous linking point
    if (0..last.exit).all(|q| !last.is_core(q)) {
        places.push(if t > 1 {
            (nontrivial[t - 2] + 1, 2 * exts[t - 2].exit + 1)
        } else {
            (0, 1)
        });
    }
    let candidates = places.into_iter().map(|h| {
        let mut pts = points.clone();
        pts.push(Point {
            h,
            v: if up { (m + 1, 0) } else { (0, 0) },
            role: Role::Exit,
        });
        assemble(pts)
    });
    Ok(preferred(candidates))
}

/// The first simple candidate, else the first meeting the interval
/// contract, else the first.
fn preferred(candidates: impl Iterator<Item = Ext>) -> Ext {
    let mut first = None;
    let mut fair = None;
    for e in candidates {
        let s = to_structure(&e.line);
        let idx = IntervalIndex::new(&s);
        if idx.is_simple() {
            return e;
        }
        if fair.is_none() && meets_contract(&e, &idx) {
            fair = Some(e.clone());
        }
        first.get_or_insert(e);
    }
    fair.or(first).expect("at least one candidate")
}

/// Every proper interval contains the exit and avoids the rightmost original.
fn meets_contract(e: &Ext, idx: &IntervalIndex<'_>) -> bool {
    let n = e.line.len();
    let last = (0..n).rev().find(|&q| e.original[q]).expect("original points");
    let whole = |c: fixedbitset::FixedBitSet| c.count_ones(..) == n;
    (0..n).all(|a| {
        (a + 1..n).all(|b| {
            let c = idx.closure(&[a, b]);
            c.contains(e.exit) || whole(c)
        })
    }) && (0..n).filter(|&a| a != last).all(|a| whole(idx.closure(&[a, last])))
}

/// Two points added to a simple permutation, avoiding the gaps next to the
/// first point's value and to the extreme value's position.
fn simple_case(pi: &[usize], up: bool) -> Result<Ext> {
    let n = pi.len();
    let extreme = pi
        .iter()
        .position(|&v| v == if up { n - 1 } else { 0 })
        .expect("extreme value");
    for g in (1..n).filter(|&g| g != pi[0] && g != pi[0] + 1) {
        for h in (1..n).filter(|&h| h != extreme && h != extreme + 1) {
            let mut points: Vec<Point> = (0..n)
                .map(|p| Point {
                    h: (2 * p + 1, 0),
                    v: (2 * pi[p] + 1, 0),
                    role: Role::Original,
                })
                .collect();
            points.push(Point {
                h: (0, 0),
                v: (2 * g, 0),
                role: Role::Entry,
            });
            points.push(Point {
                h: (2 * h, 0),
                v: (if up { 2 * n + 1 } else { 0 }, 0),
                role: Role::Exit,
            });
            let e = assemble(points);
            if is_simple(&to_structure(&e.line)) {
                return Ok(e);
            }
        }
    }
    Err(Error::ContractViolation("no two-point extension of a simple permutation".into()))
}

fn finish(s: &RelationalStructure, e: Ext, variant: PermVariant) -> Result<PermExtension> {
    let n = s.n();
    let total = e.line.len();
    // input element with positional rank r
    let mut by_rank = vec![0; n];
    for x in 0..n {
        let r = (0..n).filter(|&y| s.related(0, y, x)).count();
        by_rank[r] = x;
    }
    let mut map = vec![0; total];
    let mut next_added = n;
    let mut r = 0;
    for q in 0..total {
        if e.original[q] {
            map[q] = by_rank[r];
            r += 1;
        } else {
            map[q] = next_added;
            next_added += 1;
        }
    }
    let extended = to_structure(&e.line).relabel(&map)?;
    let added = (n..total).collect();
    let result = ExtensionResult::new(
        extended,
        (0..n).collect(),
        added,
        Metadata::Permutation {
            variant,
            entry: map[e.entry],
            exit: map[e.exit],
            linking: e.linking.iter().map(|&q| map[q]).collect(),
        },
    );
    Ok(PermExtension {
        result,
        oneline: Permutation::new(e.line.iter().map(|v| v + 1).collect())?,
        entry_position: e.entry,
        exit_position: e.exit,
        linking_positions: e.linking,
    })
}

/// Both variants for a permutation of length at least two.
pub fn extend_permutation(s: &RelationalStructure) -> Result<PermExtensionPair> {
    check(s, StructureClass::Permutation)?;
    if s.n() < 2 {
        return Err(Error::InvalidInput("permutation extensions need two points".into()));
    }
    let pi: Vec<usize> = Permutation::from_structure(s)?.oneline().iter().map(|v| v - 1).collect();
    Ok(PermExtensionPair {
        up: finish(s, ext(&pi, true)?, PermVariant::Up)?,
        down: finish(s, ext(&pi, false)?, PermVariant::Down)?,
    })
}

/// Positions of the input points inside an extension, in order.
#[cfg(test)]
fn original_positions(e: &Ext) -> Vec<usize> {
    (0..e.line.len()).filter(|&q| e.original[q]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oneline(e: &Ext) -> String {
        e.line.iter().map(|v| (v + 1).to_string()).collect()
    }

    fn parse(s: &str) -> Vec<usize> {
        s.bytes().map(|b| (b - b'1') as usize).collect()
    }

    #[test]
    fn base_cases() {
        assert_eq!(oneline(&ext(&parse("12"), true).unwrap()), "2413");
        assert_eq!(oneline(&ext(&parse("12"), false).unwrap()), "3124");
        assert_eq!(oneline(&ext(&parse("21"), true).unwrap()), "2431");
        assert_eq!(oneline(&ext(&parse("21"), false).unwrap()), "3142");
        assert_eq!(oneline(&ext(&parse("123"), true).unwrap()), "31524");
        assert_eq!(oneline(&ext(&parse("123"), false).unwrap()), "42135");
    }

    #[test]
    fn leading_singleton_example() {
        assert_eq!(oneline(&ext(&parse("132"), true).unwrap()), "35142");
        assert_eq!(oneline(&ext(&parse("132"), false).unwrap()), "41253");
    }

    #[test]
    fn entry_and_exit_roles() {
        for s in ["2143", "1234", "24513", "132", "3412", "25314"] {
            for up in [true, false] {
                let e = ext(&parse(s), up).unwrap();
                let n = e.line.len();
                assert_eq!(e.entry, 0, "{s}");
                assert!(e.exit > 0 && e.exit < n - 1, "{s}");
                assert_eq!(e.line[e.exit], if up { n - 1 } else { 0 }, "{s}");
                assert!(e.line[0] != 0 && e.line[0] != n - 1, "{s}");
                assert_eq!(pattern(&e.line, &original_positions(&e)), parse(s));
            }
        }
    }
}
