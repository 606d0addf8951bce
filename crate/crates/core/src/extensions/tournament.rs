//! One- and two-vertex simple extensions of tournaments.
//!
//! The construction fixes the out-set of one new vertex `x` (`T1`). `T2`
//! uses the reversed arcs for a vertex `y`, and `T12` adds both with
//! `x -> y`. Every proper interval of `T1` contains `x`.

use std::fmt;

use super::{appended, ExtensionResult, Metadata};
use crate::decomposition::{root_split, RootKind};
use crate::error::{Error, Result};
use crate::intervals::is_simple;
use crate::structure::{check, restrict_mapped, ElementId, RelationalStructure, StructureClass};

/// Largest tournament for which an out-set is searched exhaustively when the
/// direct construction does not verify.
const MASK_SEARCH_LIMIT: usize = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TournamentVariant {
    T1,
    T2,
    T12,
}

impl fmt::Display for TournamentVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TournamentVariant::T1 => "T1",
            TournamentVariant::T2 => "T2",
            TournamentVariant::T12 => "T12",
        })
    }
}

#[derive(Clone, Debug)]
pub struct TournamentExtensionSet {
    pub t1: ExtensionResult,
    pub t2: ExtensionResult,
    /// Present exactly when neither one-vertex extension is simple.
    pub t12: Option<ExtensionResult>,
}

impl TournamentExtensionSet {
    /// The first simple member in the order `T1`, `T2`, `T12`.
    pub fn best(self) -> ExtensionResult {
        if self.t1.is_simple() {
            self.t1
        } else if self.t2.is_simple() {
            self.t2
        } else {
            self.t12.unwrap_or(self.t1)
        }
    }
}

fn arc(t: &RelationalStructure, u: ElementId, v: ElementId) -> bool {
    t.related(0, u, v)
}

/// Transitive tournament: the out-degrees are pairwise distinct.
pub(crate) fn is_transitive(t: &RelationalStructure) -> bool {
    let n = t.n();
    let mut seen = vec![false; n];
    for u in 0..n {
        let d = (0..n).filter(|&v| arc(t, u, v)).count();
        if d >= n || seen[d] {
            return false;
        }
        seen[d] = true;
    }
    true
}

pub(crate) fn is_odd_chain(t: &RelationalStructure) -> bool {
    t.n() >= 3 && t.n() % 2 == 1 && is_transitive(t)
}

/// Vertices of a transitive tournament from source to sink.
pub(crate) fn chain_order(t: &RelationalStructure) -> Vec<ElementId> {
    let n = t.n();
    let mut order: Vec<ElementId> = (0..n).collect();
    order.sort_by_key(|&u| std::cmp::Reverse((0..n).filter(|&v| arc(t, u, v)).count()));
    order
}

/// `t` plus one vertex `x` with `x -> v` exactly when `out[v]`.
pub(crate) fn with_point(t: &RelationalStructure, out: &[bool]) -> RelationalStructure {
    let (mut ext, added) = appended(t, 1);
    let x = added[0];
    for (v, &o) in out.iter().enumerate() {
        let tuple = if o { vec![x, v] } else { vec![v, x] };
        ext.insert(0, tuple).expect("ids in range");
    }
    ext
}

/// Whether `T1` can be simple: fails only for three vertices and odd chains.
fn t1_can_be_simple(t: &RelationalStructure) -> bool {
    t.n() != 3 && !is_odd_chain(t)
}

/// Least out-set (as a bitmask over vertex ids) giving a simple extension.
fn least_simple_mask(t: &RelationalStructure) -> Option<Vec<bool>> {
    let n = t.n();
    if n > MASK_SEARCH_LIMIT {
        return None;
    }
    (0u64..1 << n).find_map(|mask| {
        let out: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        is_simple(&with_point(t, &out)).then_some(out)
    })
}

/// Out-set of `x` in `T1`.
pub(crate) fn t1_out(t: &RelationalStructure) -> Result<Vec<bool>> {
    let n = t.n();
    match n {
        0 => Err(Error::InvalidInput("empty tournament".into())),
        1 => Ok(vec![false]),
        2 => {
            let u = if arc(t, 0, 1) { 0 } else { 1 };
            let mut out = vec![false; 2];
            out[u] = true;
            Ok(out)
        }
        3 => {
            let mut out = vec![false; 3];
            if is_transitive(t) {
                let o = chain_order(t);
                out[o[0]] = true;
                out[o[2]] = true;
            } else {
                // x -> p2 only; with x -> y the out-set {p1, p3} would leave
                // {x, p3} an interval of T12
                out[if arc(t, 0, 1) { 1 } else { 2 }] = true;
            }
            Ok(out)
        }
        _ => {
            let out = construct(t)?;
            if !t1_can_be_simple(t) || is_simple(&with_point(t, &out)) {
                return Ok(out);
            }
            least_simple_mask(t).ok_or_else(|| {
                Error::ContractViolation("no simple one-vertex tournament extension found".into())
            })
        }
    }
}

/// `T1` out-set of the subtournament on `ids`, written into `out`.
fn sub_t1(t: &RelationalStructure, ids: &[ElementId], out: &mut [bool]) -> Result<()> {
    let (sub, map) = restrict_mapped(t, ids)?;
    for (i, o) in t1_out(&sub)?.into_iter().enumerate() {
        out[map[i]] = o;
    }
    Ok(())
}

fn construct(t: &RelationalStructure) -> Result<Vec<bool>> {
    let n = t.n();
    let root = root_split(t);
    let mut out = vec![false; n];
    if root.kind == RootKind::Prime {
        if root.parts.iter().all(|p| p.len() == 1) {
            return least_simple_mask(t)
                .ok_or_else(|| Error::ContractViolation("simple tournament without a twin-free out-set".into()));
        }
        let star = root.parts.iter().find(|p| p.len() > 1).expect("non-singleton part")[0];
        for part in &root.parts {
            if part.len() > 1 {
                sub_t1(t, part, &mut out)?;
            } else {
                let u = part[0];
                out[u] = arc(t, u, star);
            }
        }
        return Ok(out);
    }

    let mut parts = root.parts.clone();
    if arc(t, parts[1][0], parts[0][0]) {
        parts.reverse();
    }
    if is_odd_chain(t) {
        let order = chain_order(t);
        out[order[0]] = true;
        out[order[1]] = false;
        sub_t1(t, &order[2..], &mut out)?;
        if !out[order[2]] {
            for &v in &order[2..] {
                out[v] = !out[v];
            }
        }
        return Ok(out);
    }

    let good = |ids: &[ElementId]| -> Result<bool> {
        let (sub, _) = restrict_mapped(t, ids)?;
        Ok(t1_can_be_simple(&sub))
    };
    let k = parts.len();
    let split = |j: usize| -> (Vec<ElementId>, Vec<ElementId>) {
        (parts[..j].concat(), parts[j..].concat())
    };
    let mut candidates = Vec::new();
    for j in 1..k {
        let (a1, a2) = split(j);
        if a1.len() >= 2 && a2.len() >= 2 && good(&a1)? && good(&a2)? {
            candidates.push((a1, a2, 0));
        }
    }
    for j in 1..k {
        let (a1, a2) = split(j);
        if a2.len() == 1 && good(&a1)? {
            candidates.push((a1, a2, 1));
        }
    }
    for j in 1..k {
        let (a1, a2) = split(j);
        if a1.len() == 1 && good(&a2)? {
            candidates.push((a1, a2, 2));
        }
    }
    for (a1, a2, shape) in candidates {
        let mut cand = vec![false; n];
        match shape {
            0 => {
                sub_t1(t, &a1, &mut cand)?;
                sub_t1(t, &a2, &mut cand)?;
            }
            1 => sub_t1(t, &a1, &mut cand)?,
            _ => {
                cand[a1[0]] = true;
                sub_t1(t, &a2, &mut cand)?;
            }
        }
        if is_simple(&with_point(t, &cand)) {
            return Ok(cand);
        }
    }
    least_simple_mask(t)
        .ok_or_else(|| Error::ContractViolation("no simple one-vertex tournament extension found".into()))
}

/// `T1`, `T2` and, when both fail to be simple, `T12`.
pub fn extend_tournament(t: &RelationalStructure) -> Result<TournamentExtensionSet> {
    check(t, StructureClass::Tournament)?;
    let n = t.n();
    let out = t1_out(t)?;
    let rev: Vec<bool> = out.iter().map(|&o| !o).collect();
    let image: Vec<ElementId> = (0..n).collect();
    let one = |out: &[bool], variant| {
        ExtensionResult::new(
            with_point(t, out),
            image.clone(),
            vec![n],
            Metadata::Tournament {
                variant,
                added: vec![n],
            },
        )
    };
    let t1 = one(&out, TournamentVariant::T1);
    let t2 = one(&rev, TournamentVariant::T2);
    let t12 = if t1.is_simple() || t2.is_simple() {
        None
    } else {
        let mut ext = with_point(t, &out);
        let y = ext.add_elements(1);
        for (v, &o) in rev.iter().enumerate() {
            ext.insert(0, if o { vec![y, v] } else { vec![v, y] })?;
        }
        ext.insert(0, vec![n, y])?;
        Some(ExtensionResult::new(
            ext,
            image.clone(),
            vec![n, y],
            Metadata::Tournament {
                variant: TournamentVariant::T12,
                added: vec![n, y],
            },
        ))
    };
    Ok(TournamentExtensionSet { t1, t2, t12 })
}

/// Whether some one-vertex extension of `t` is simple: all tournaments except
/// those on three vertices and odd chains on at least five.
pub fn has_one_point_tournament_extension(t: &RelationalStructure) -> Result<bool> {
    check(t, StructureClass::Tournament)?;
    Ok(t1_can_be_simple(t))
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
    fn chain_two_gives_three_cycle() {
        let set = extend_tournament(&chain(2)).unwrap();
        assert!(set.t1.is_simple());
        assert!(set.t12.is_none());
    }

    #[test]
    fn odd_chains_need_two_vertices() {
        for n in [3, 5, 7, 9] {
            let t = chain(n);
            let set = extend_tournament(&t).unwrap();
            assert!(!set.t1.is_simple() && !set.t2.is_simple(), "n={n}");
            let t12 = set.t12.expect("two-vertex extension");
            assert!(t12.is_simple(), "n={n}");
            assert!(t12.restricts_to(&t));
            assert!(!has_one_point_tournament_extension(&t).unwrap());
        }
    }

    #[test]
    fn even_chains_need_one_vertex() {
        for n in [2, 4, 6, 8, 10] {
            let set = extend_tournament(&chain(n)).unwrap();
            assert!(set.t1.is_simple(), "n={n}");
        }
    }

    #[test]
    fn three_cycle_needs_two() {
        let t = digraph(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let set = extend_tournament(&t).unwrap();
        assert!(set.t12.unwrap().is_simple());
    }
}
