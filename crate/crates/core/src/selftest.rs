//! The acceptance corpus: eleven seeded, deterministic criteria.
//!
//! Each criterion counts its individual checks and keeps the first few
//! failure messages. A criterion passes when it ran at least one check and
//! none failed.

use std::fmt;
use std::time::{Duration, Instant};

use crate::decomposition::substitution_decompose;
use crate::error::Result;
use crate::extensions::{
    bound, extend, extend_antichain_via_graph, extend_digraph, extend_graph, extend_higher_arity,
    extend_irreflexive_kary, extend_oriented_graph, extend_permutation, extend_poset,
    extend_tournament, ExtensionResult, Metadata, OrientedEncoding, PermExtension, PermVariant,
    PosetVariant,
};
use crate::intervals::{is_simple, maximal_proper_intervals, IntervalIndex};
use crate::oracle::{enumerate_structures, exhaustive_is_simple, minimal_extension_size, SearchBudget};
use crate::random;
use crate::structure::{
    digraph, graph, perm_to_structure, validate, ElementId, Permutation, RelationalStructure,
    StructureClass,
};

/// Number of criteria in the corpus.
pub const CRITERIA: u8 = 11;

const KEPT_FAILURES: usize = 8;

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub checked: usize,
    pub failed: usize,
    /// The first few failure messages.
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.checked > 0 && self.failed == 0
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} [{}] {}: {} checks, {} failed ({:.2}s)",
            self.id,
            if self.passed() { "PASS" } else { "FAIL" },
            self.title,
            self.checked,
            self.failed,
            self.elapsed.as_secs_f64()
        )?;
        for m in &self.failures {
            write!(f, "\n    - {m}")?;
        }
        Ok(())
    }
}

struct Tally {
    checked: usize,
    failed: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Self {
            checked: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failed += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(msg);
        }
    }

    /// Unwraps `r`, recording an error as a failed check.
    fn ok<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checked += 1;
                self.fail(format!("{}: {e}", what()));
                None
            }
        }
    }
}

pub fn title(id: u8) -> &'static str {
    match id {
        1 => "tournaments",
        2 => "odd chains",
        3 => "complete graphs",
        4 => "random graphs",
        5 => "permutations",
        6 => "posets",
        7 => "digraphs",
        8 => "oriented graphs",
        9 => "higher arity",
        10 => "decomposition",
        11 => "oracle equivalence",
        _ => "unknown",
    }
}

/// Runs one criterion; `None` for an unknown id.
pub fn run_criterion(id: u8) -> Option<CriterionReport> {
    let start = Instant::now();
    let mut t = Tally::new();
    match id {
        1 => tournaments(&mut t),
        2 => odd_chains(&mut t),
        3 => complete_graphs(&mut t),
        4 => random_graphs(&mut t),
        5 => permutations(&mut t),
        6 => posets(&mut t),
        7 => digraphs(&mut t),
        8 => oriented_graphs(&mut t),
        9 => higher_arity(&mut t),
        10 => decomposition(&mut t),
        11 => oracle_equivalence(&mut t),
        _ => return None,
    }
    Some(CriterionReport {
        id,
        title: title(id),
        checked: t.checked,
        failed: t.failed,
        failures: t.failures,
        elapsed: start.elapsed(),
    })
}

pub fn run_all() -> Vec<CriterionReport> {
    (1..=CRITERIA).filter_map(run_criterion).collect()
}

fn enumerated(class: StructureClass, n: usize) -> Vec<RelationalStructure> {
    enumerate_structures(class, n)
        .expect("enumerable class")
        .collect()
}

fn sampled(
    seed: u64,
    count: usize,
    n: usize,
    mut gen: impl FnMut(usize, &mut rand_chacha::ChaCha8Rng) -> RelationalStructure,
) -> Vec<RelationalStructure> {
    let mut rng = random::rng(seed ^ (n as u64) << 32);
    (0..count).map(|_| gen(n, &mut rng)).collect()
}

/// Transitive tournament `0 -> 1 -> .. -> n-1`.
pub fn chain_tournament(n: usize) -> RelationalStructure {
    let arcs: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    digraph(n, &arcs).expect("valid arcs")
}

pub fn complete_graph(n: usize) -> RelationalStructure {
    let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    graph(n, &edges).expect("valid edges")
}

fn complete_digraph(n: usize) -> RelationalStructure {
    let arcs: Vec<_> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    digraph(n, &arcs).expect("valid arcs")
}

fn antichain(n: usize) -> RelationalStructure {
    RelationalStructure::for_class(n, StructureClass::Poset)
}

fn identity(n: usize) -> RelationalStructure {
    perm_to_structure(&Permutation::identity(n))
}

/// Whether every proper interval of `s` contains `x`. Exact: a proper
/// interval contains the closure of any pair inside it.
fn intervals_contain(s: &RelationalStructure, x: ElementId) -> bool {
    let idx = IntervalIndex::new(s);
    let n = s.n();
    (0..n).all(|a| {
        (a + 1..n).all(|b| {
            let c = idx.closure(&[a, b]);
            c.count_ones(..) == n || c.contains(x)
        })
    })
}

/// Whether no proper interval of `s` contains `x`.
fn intervals_avoid(s: &RelationalStructure, x: ElementId) -> bool {
    let idx = IntervalIndex::new(s);
    let n = s.n();
    (0..n).filter(|&a| a != x).all(|a| idx.closure(&[a, x]).count_ones(..) == n)
}

fn describe(s: &RelationalStructure) -> String {
    let tuples: Vec<String> = (0..s.relation_count())
        .flat_map(|r| s.tuples(r).map(|t| format!("{t:?}")).collect::<Vec<_>>())
        .collect();
    format!("n={} {}", s.n(), tuples.join(""))
}

fn tournament_corpus() -> Vec<RelationalStructure> {
    let mut out: Vec<_> = (1..=5).flat_map(|n| enumerated(StructureClass::Tournament, n)).collect();
    for n in [6, 7, 10] {
        out.extend(sampled(1, 500, n, random::tournament));
    }
    out
}

fn graph_corpus() -> Vec<RelationalStructure> {
    let mut out: Vec<_> = (1..=16).map(complete_graph).collect();
    for n in 2..=8 {
        out.extend(sampled(4, 500, n, random::graph));
    }
    out
}

fn permutation_corpus() -> Vec<RelationalStructure> {
    let mut out: Vec<_> = (2..=6).flat_map(|n| enumerated(StructureClass::Permutation, n)).collect();
    for n in [7, 8, 9] {
        out.extend(sampled(5, 500, n, random::permutation));
    }
    out
}

fn poset_corpus() -> Vec<RelationalStructure> {
    let mut out: Vec<_> = (1..=5).flat_map(|n| enumerated(StructureClass::Poset, n)).collect();
    for n in [6, 7, 8] {
        let mut rng = random::rng(6 ^ (n as u64) << 32);
        for i in 0..300 {
            // sweep densities so chains, antichains and mixtures all appear
            let density = [0.15, 0.3, 0.5, 0.8][i % 4];
            out.push(random::poset(n, density, &mut rng));
        }
    }
    out
}

fn digraph_corpus() -> Vec<RelationalStructure> {
    let mut out = Vec::new();
    for n in 1..=15 {
        out.push(complete_digraph(n));
        out.push(digraph(n, &[]).expect("empty digraph"));
    }
    out.extend((1..=10).map(chain_tournament));
    for n in 2..=8 {
        out.extend(sampled(7, 300, n, random::digraph));
    }
    out
}

fn oriented_corpus() -> Vec<RelationalStructure> {
    let mut out: Vec<_> = (1..=16).map(|n| digraph(n, &[]).expect("empty")).collect();
    out.extend((1..=5).flat_map(|n| enumerated(StructureClass::Tournament, n)));
    for n in 2..=8 {
        out.extend(sampled(8, 300, n, random::oriented_graph));
    }
    out
}

/// Inputs of the higher-arity criterion with the construction each uses.
fn higher_corpus() -> Vec<(RelationalStructure, bool)> {
    let mut out = Vec::new();
    for n in 3..=8 {
        for s in sampled(9, 300, n, |n, r| random::kary(n, 3, 0.2, r)) {
            out.push((s, false));
        }
        for s in sampled(19, 100, n, |n, r| random::irreflexive_kary(n, 3, 0.3, r)) {
            out.push((s, true));
        }
        for s in sampled(29, 100, n, |n, r| random::hypergraph(n, 3, 0.4, r)) {
            out.push((s, true));
        }
    }
    let mut rng = random::rng(39);
    out.push((random::irreflexive_kary(6, 4, 0.05, &mut rng), true));
    out.push((random::kary(6, 4, 0.02, &mut rng), false));
    out
}

fn tournaments(t: &mut Tally) {
    for s in tournament_corpus() {
        let Some(set) = t.ok(extend_tournament(&s), || describe(&s)) else {
            continue;
        };
        let n = s.n();
        for (e, name) in [(&set.t1, "T1"), (&set.t2, "T2")] {
            t.check(e.restricts_to(&s), || format!("{name} does not restrict: {}", describe(&s)));
            if !e.is_simple() {
                t.check(intervals_contain(&e.extended, n), || {
                    format!("{name} interval misses the new vertex: {}", describe(&s))
                });
            }
        }
        t.check(
            (0..n).all(|v| set.t1.extended.related(0, n, v) == set.t2.extended.related(0, v, n)),
            || format!("T2 does not reverse T1: {}", describe(&s)),
        );
        let either = set.t1.is_simple() || set.t2.is_simple();
        t.check(set.t12.is_some() != either, || {
            format!("T12 presence is wrong: {}", describe(&s))
        });
        let best = set.best();
        t.check(best.is_simple() && best.added_count() <= 2, || {
            format!("no simple extension with at most 2 vertices: {}", describe(&s))
        });
    }
}

fn odd_chains(t: &mut Tally) {
    let cases = [(2, 1), (3, 2), (4, 1), (5, 2), (6, 1), (7, 2), (9, 2)];
    for (n, want) in cases {
        let s = chain_tournament(n);
        let budget = SearchBudget::new(2).at_least(1);
        if let Some(got) = t.ok(
            minimal_extension_size(&s, StructureClass::Tournament, budget),
            || format!("chain-{n}"),
        ) {
            t.check(got == Some(want), || format!("chain-{n}: minimal size {got:?}, want {want}"));
        }
    }
}

fn complete_graphs(t: &mut Tally) {
    for n in 1..=16 {
        let g = complete_graph(n);
        let Some(e) = t.ok(extend_graph(&g), || format!("K{n}")) else {
            continue;
        };
        let e = e.into_result();
        let want = bound(StructureClass::Graph, n).expect("n >= 1");
        t.check(e.added_count() == want, || {
            format!("K{n}: added {}, want {want}", e.added_count())
        });
        t.check(independent(&e), || format!("K{n}: added set not independent"));
        t.check(e.is_simple() && e.restricts_to(&g), || format!("K{n}: not a simple extension"));
    }
    let search = |n: usize, max: usize| {
        minimal_extension_size(&complete_graph(n), StructureClass::Graph, SearchBudget::new(max))
    };
    if let Some(got) = t.ok(search(3, 2), || "K3 search".into()) {
        t.check(got == Some(2), || format!("K3 minimal size {got:?}, want 2"));
    }
    if let Some(got) = t.ok(search(7, 2), || "K7 search".into()) {
        t.check(got.is_none(), || format!("K7 within 2: {got:?}, want none"));
    }
    if let Some(got) = t.ok(search(7, 3), || "K7 search".into()) {
        t.check(got == Some(3), || format!("K7 minimal size {got:?}, want 3"));
    }
}

fn independent(e: &ExtensionResult) -> bool {
    e.added
        .iter()
        .all(|&a| e.added.iter().all(|&b| !e.extended.related(0, a, b)))
}

fn random_graphs(t: &mut Tally) {
    for n in 2..=8 {
        for g in sampled(4, 500, n, random::graph) {
            let Some(e) = t.ok(extend_graph(&g), || describe(&g)) else {
                continue;
            };
            let e = e.into_result();
            let b = bound(StructureClass::Graph, n).expect("n >= 1");
            t.check(e.is_simple() && e.restricts_to(&g) && e.added_count() <= b, || {
                format!("added {} (bound {b}): {}", e.added_count(), describe(&g))
            });
        }
    }
}

fn oneline(p: &PermExtension) -> String {
    p.oneline.to_string()
}

fn perm_contracts(t: &mut Tally, s: &RelationalStructure, p: &PermExtension, v: PermVariant) {
    let len = p.oneline.len();
    let line = p.oneline.oneline();
    let n = s.n();
    let at = |q: usize| line[q];
    let exit_value = if v == PermVariant::Up { len } else { 1 };
    t.check(
        p.entry_position == 0 && at(0) != 1 && at(0) != len,
        || format!("{v}: entry misplaced in {}", oneline(p)),
    );
    t.check(
        p.exit_position > 0 && p.exit_position + 1 < len && at(p.exit_position) == exit_value,
        || format!("{v}: exit misplaced in {}", oneline(p)),
    );
    let b = bound(StructureClass::Permutation, n).expect("n >= 1");
    t.check(p.result.added_count() <= b && p.result.restricts_to(s), || {
        format!("{v}: {} added over bound {b} or wrong restriction", p.result.added_count())
    });
    if !p.result.is_simple() {
        let Metadata::Permutation { exit, .. } = p.result.metadata else {
            t.fail(format!("{v}: missing permutation metadata"));
            return;
        };
        let rightmost = p.result.original_image[n - 1];
        t.check(
            intervals_contain(&p.result.extended, exit) && intervals_avoid(&p.result.extended, rightmost),
            || format!("{v}: interval contract fails for {}", oneline(p)),
        );
    }
}

fn permutations(t: &mut Tally) {
    for (input, up, down) in [("12", "2413", "3124"), ("123", "31524", "42135"), ("132", "35142", "41253")] {
        let s = perm_to_structure(&Permutation::parse_compact(input).expect("valid"));
        if let Some(pair) = t.ok(extend_permutation(&s), || input.to_string()) {
            t.check(oneline(&pair.up) == up && oneline(&pair.down) == down, || {
                format!("{input} gave ({}, {})", oneline(&pair.up), oneline(&pair.down))
            });
        }
    }
    for n in 2..=13 {
        let s = identity(n);
        let Some(best) = t.ok(extend_permutation(&s).and_then(|p| p.best()), || format!("identity-{n}"))
        else {
            continue;
        };
        let want = (n + 2) / 2;
        t.check(best.added_count() == want && best.is_simple(), || {
            format!("identity-{n}: added {}, want {want}", best.added_count())
        });
    }
    if let Some(got) = t.ok(
        minimal_extension_size(&identity(4), StructureClass::Permutation, SearchBudget::new(3)),
        || "identity-4 search".into(),
    ) {
        t.check(got == Some(3), || format!("identity-4 minimal size {got:?}, want 3"));
    }
    for s in permutation_corpus() {
        let Some(pair) = t.ok(extend_permutation(&s), || describe(&s)) else {
            continue;
        };
        t.check(pair.up.result.is_simple() || pair.down.result.is_simple(), || {
            format!("neither variant simple for {}", describe(&s))
        });
        perm_contracts(t, &s, &pair.up, PermVariant::Up);
        perm_contracts(t, &s, &pair.down, PermVariant::Down);
    }
}

fn is_maximal(p: &RelationalStructure, x: ElementId) -> bool {
    (0..p.n()).all(|y| !p.related(0, x, y))
}

fn is_minimal(p: &RelationalStructure, x: ElementId) -> bool {
    (0..p.n()).all(|y| !p.related(0, y, x))
}

fn posets(t: &mut Tally) {
    for s in poset_corpus() {
        let n = s.n();
        if n == 1 {
            // a single point is simple; the variants need two new points
            if let Some(e) = t.ok(extend(&s, StructureClass::Poset), || describe(&s)) {
                t.check(e.is_simple() && e.added_count() == 0, || "one-point poset".into());
            }
            continue;
        }
        let Some(quad) = t.ok(extend_poset(&s), || describe(&s)) else {
            continue;
        };
        t.check(!quad.simple_variants().is_empty(), || {
            format!("no simple variant for {}", describe(&s))
        });
        let b = bound(StructureClass::Poset, n).expect("n >= 1");
        for v in PosetVariant::ALL {
            let e = quad.get(v);
            let x = &e.result.extended;
            let placed = |id: ElementId, max: bool| {
                if max {
                    is_maximal(x, id)
                } else {
                    is_minimal(x, id)
                }
            };
            t.check(
                placed(e.ext1, v.ext1_is_max()) && placed(e.ext2, v.ext2_is_max()),
                || format!("{v}: Ext1/Ext2 misplaced for {}", describe(&s)),
            );
            t.check(e.ext1 >= n && e.ext2 >= n && e.ext1 != e.ext2, || {
                format!("{v}: distinguished elements are not new for {}", describe(&s))
            });
            t.check(intervals_contain(x, e.ext2), || {
                format!("{v}: an interval misses Ext2 for {}", describe(&s))
            });
            t.check(e.result.added_count() <= b && e.result.restricts_to(&s), || {
                format!("{v}: {} added over bound {b} for {}", e.result.added_count(), describe(&s))
            });
        }
    }
    for n in 1..=16 {
        let a = antichain(n);
        let Some(e) = t.ok(extend_antichain_via_graph(&a), || format!("antichain-{n}")) else {
            continue;
        };
        let b = bound(StructureClass::Graph, n).expect("n >= 1");
        t.check(e.is_simple() && e.added_count() <= b && e.restricts_to(&a), || {
            format!("antichain-{n}: added {} (bound {b})", e.added_count())
        });
    }
}

fn digraphs(t: &mut Tally) {
    for d in digraph_corpus() {
        let n = d.n();
        let Some(e) = t.ok(extend_digraph(&d), || describe(&d)) else {
            continue;
        };
        let b = bound(StructureClass::Digraph, n).expect("n >= 1");
        t.check(e.is_simple() && e.restricts_to(&d) && e.added_count() <= b, || {
            format!("added {} (bound {b}): {}", e.added_count(), describe(&d))
        });
    }
    for n in 1..=7 {
        if let Some(e) = t.ok(extend_digraph(&chain_tournament(n)), || format!("chain-{n}")) {
            t.check(e.added_count() == 1, || format!("chain-{n}: added {}", e.added_count()));
        }
    }
}

fn oriented_graphs(t: &mut Tally) {
    let tournaments: Vec<_> = (1..=5)
        .flat_map(|n| enumerated(StructureClass::Tournament, n))
        .collect();
    for d in oriented_corpus() {
        let n = d.n();
        let Some(e) = t.ok(extend_oriented_graph(&d), || describe(&d)) else {
            continue;
        };
        let b = bound(StructureClass::OrientedGraph, n).expect("n >= 1");
        t.check(e.is_simple() && e.restricts_to(&d) && e.added_count() <= b, || {
            format!("added {} (bound {b}): {}", e.added_count(), describe(&d))
        });
        let fallback = matches!(e.metadata, Metadata::Oriented(OrientedEncoding { fallback: true, .. }));
        t.check(!fallback, || format!("fallback used: {}", describe(&d)));
    }
    for d in tournaments {
        if let Some(e) = t.ok(extend_oriented_graph(&d), || describe(&d)) {
            t.check(e.added_count() == 1, || {
                format!("tournament took {}: {}", e.added_count(), describe(&d))
            });
        }
    }
}

fn higher_arity(t: &mut Tally) {
    for (s, irreflexive) in higher_corpus() {
        let mut runs = vec![("higher", extend_higher_arity(&s))];
        if irreflexive {
            runs.push(("irreflexive", extend_irreflexive_kary(&s)));
        }
        for (name, r) in runs {
            let Some(e) = t.ok(r, || format!("{name}: {}", describe(&s))) else {
                continue;
            };
            t.check(e.added_count() == 1 && e.is_simple() && e.restricts_to(&s), || {
                format!("{name}: added {} for {}", e.added_count(), describe(&s))
            });
            if name == "irreflexive" {
                let k = s.signature()[0].arity;
                let class = if validate(&s, StructureClass::Hypergraph(k)).is_ok_and(|v| v.is_ok()) {
                    StructureClass::Hypergraph(k)
                } else {
                    StructureClass::KaryIrreflexive(k)
                };
                t.check(validate(&e.extended, class).is_ok_and(|v| v.is_ok()), || {
                    format!("output leaves {class}: {}", describe(&s))
                });
            }
        }
    }
}

fn decomposition(t: &mut Tally) {
    let mut all = tournament_corpus();
    all.extend((2..=9).map(chain_tournament));
    all.extend(graph_corpus());
    all.extend(permutation_corpus());
    all.extend((2..=13).map(identity));
    all.extend(poset_corpus());
    all.extend((2..=16).map(antichain));
    all.extend(digraph_corpus());
    all.extend(oriented_corpus());
    all.extend(higher_corpus().into_iter().map(|(s, _)| s));
    for s in all.into_iter().filter(|s| s.n() >= 2) {
        let Some(d) = t.ok(substitution_decompose(&s), || describe(&s)) else {
            continue;
        };
        let back = d.recompose();
        t.check(back.as_ref().is_ok_and(|b| b == &s), || {
            format!("recompose differs: {}", describe(&s))
        });
        t.check(is_simple(&d.quotient), || format!("quotient not simple: {}", describe(&s)));
        if d.quotient.n() > 2 {
            let mut members = d.members.clone();
            members.sort();
            let maximal = maximal_proper_intervals(&s).map(|mut m| {
                m.sort();
                m
            });
            t.check(maximal.is_ok_and(|m| m == members), || {
                format!("blocks differ from maximal intervals: {}", describe(&s))
            });
        }
    }
}

fn oracle_equivalence(t: &mut Tally) {
    use StructureClass::{Graph, Poset, Tournament};
    let agree = |t: &mut Tally, s: &RelationalStructure| {
        if let Some(slow) = t.ok(exhaustive_is_simple(s), || describe(s)) {
            t.check(slow == is_simple(s), || format!("oracle says {slow}: {}", describe(s)));
        }
    };
    for class in [Tournament, Graph, StructureClass::Permutation, Poset] {
        for n in 1..=6 {
            for s in enumerated(class, n) {
                agree(t, &s);
            }
        }
        let mut rng = random::rng(11);
        for _ in 0..1000 {
            let n = rand::Rng::gen_range(&mut rng, 1..=8);
            let s = random::structure(class, n, &mut rng);
            agree(t, &s);
        }
    }
    let simple4: Vec<String> = enumerated(StructureClass::Permutation, 4)
        .into_iter()
        .filter(is_simple)
        .filter_map(|s| Permutation::from_structure(&s).ok())
        .map(|p| p.to_string())
        .collect();
    t.check(simple4 == ["2413", "3142"], || format!("simple length-4 permutations: {simple4:?}"));
}
