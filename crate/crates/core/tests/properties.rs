use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use simplext::decomposition::{decomposition_tree, substitution_decompose, DecompositionTree};
use simplext::extensions::{bound, extend, ExtensionResult};
use simplext::intervals::{interval_closure, is_interval, is_simple, maximal_proper_intervals};
use simplext::io::{parse_structure, split_report, write_structure};
use simplext::oracle::{all_intervals, exhaustive_is_simple, minimal_extension_size, SearchBudget};
use simplext::random;
use simplext::structure::{
    inflate, perm_to_structure, restrict_ordered, validate, ElementId, Permutation, RelationalStructure,
    StructureClass,
};

use StructureClass::*;

const CLASSES: [StructureClass; 10] = [
    Graph,
    Tournament,
    Digraph,
    OrientedGraph,
    Poset,
    LinearOrder,
    Permutation,
    Kary(3),
    KaryIrreflexive(3),
    Hypergraph(3),
];

const INFLATABLE: [StructureClass; 5] = [Graph, Tournament, Digraph, OrientedGraph, Poset];

const EXTENDABLE: [StructureClass; 8] = [
    Graph,
    Tournament,
    Digraph,
    OrientedGraph,
    Poset,
    Permutation,
    KaryIrreflexive(3),
    Hypergraph(3),
];

fn valid(s: &RelationalStructure, c: StructureClass) -> bool {
    validate(s, c).is_ok_and(|v| v.is_ok())
}

/// Quotient of class `c` with each element replaced by a smaller random
/// structure, nested up to `depth` levels; `c` must be closed under
/// inflation.
fn nested(c: StructureClass, n: usize, depth: usize, rng: &mut ChaCha8Rng) -> RelationalStructure {
    if n <= 2 || depth == 0 {
        return random::structure(c, n.max(1), rng);
    }
    let k = rng.gen_range(2..=n.min(4));
    let q = random::structure(c, k, rng);
    let mut sizes = vec![1; k];
    for _ in k..n {
        sizes[rng.gen_range(0..k)] += 1;
    }
    let blocks: Vec<_> = sizes.iter().map(|&m| nested(c, m, depth - 1, rng)).collect();
    inflate(&q, &blocks).expect("matching signatures")
}

/// A random input of class `c`: nested for the classes closed under
/// inflation, flat otherwise.
fn sample(c: StructureClass, n: usize, seed: u64) -> RelationalStructure {
    let mut rng = random::rng(seed);
    if INFLATABLE.contains(&c) {
        nested(c, n, 2, &mut rng)
    } else {
        random::structure(c, n, &mut rng)
    }
}

fn class_strategy(set: &'static [StructureClass]) -> impl Strategy<Value = StructureClass> {
    (0..set.len()).prop_map(move |i| set[i])
}

fn subset(n: usize, mask: u64) -> Vec<ElementId> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

fn check_tree(s: &RelationalStructure, t: &DecompositionTree) -> Result<(), TestCaseError> {
    if let DecompositionTree::Node { children, .. } = t {
        for c in children {
            prop_assert!(is_interval(s, &c.leaves()).unwrap().is_interval);
            check_tree(s, c)?;
        }
    }
    Ok(())
}

fn sound(s: &RelationalStructure, c: StructureClass, e: &ExtensionResult) -> Result<(), TestCaseError> {
    prop_assert!(e.is_simple());
    prop_assert!(e.restricts_to(s));
    prop_assert!(e.added_count() <= bound(c, s.n()).unwrap());
    prop_assert!(valid(&e.extended, c));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn inflation_restricts_to_its_blocks(
        c in class_strategy(&CLASSES),
        k in 1usize..=4,
        sizes in prop::collection::vec(1usize..=2, 4),
        seed in any::<u64>(),
    ) {
        let mut rng = random::rng(seed);
        let q = random::structure(c, k, &mut rng);
        let blocks: Vec<_> = sizes[..k].iter().map(|&m| random::structure(c, m, &mut rng)).collect();
        let s = inflate(&q, &blocks).unwrap();
        let mut next = 0;
        for b in &blocks {
            let ids: Vec<ElementId> = (next..next + b.n()).collect();
            next += b.n();
            prop_assert_eq!(&restrict_ordered(&s, &ids).unwrap(), b);
        }
    }

    #[test]
    fn inflation_stays_in_class(c in class_strategy(&INFLATABLE), n in 1usize..=8, seed in any::<u64>()) {
        prop_assert!(valid(&sample(c, n, seed), c));
    }

    #[test]
    fn permutation_structures_are_injective(n in 1usize..=7, a in any::<u64>(), b in any::<u64>()) {
        let p = random::permutation_oneline(n, &mut random::rng(a));
        let q = random::permutation_oneline(n, &mut random::rng(b));
        let sp = perm_to_structure(&Permutation::new(p.clone()).unwrap());
        let sq = perm_to_structure(&Permutation::new(q.clone()).unwrap());
        prop_assert_eq!(p == q, sp == sq);
    }

    #[test]
    fn intersections_and_unions_of_intervals(
        c in class_strategy(&CLASSES),
        n in 2usize..=7,
        seed in any::<u64>(),
        a in any::<u64>(),
        b in any::<u64>(),
    ) {
        let s = sample(c, n, seed);
        let i = interval_closure(&s, &subset(n, a | 1)).unwrap();
        let j = interval_closure(&s, &subset(n, b | 2)).unwrap();
        let inter: Vec<_> = i.iter().copied().filter(|x| j.contains(x)).collect();
        if !inter.is_empty() {
            let mut union = i.clone();
            union.extend(j.iter().copied().filter(|x| !i.contains(x)));
            prop_assert!(is_interval(&s, &inter).unwrap().is_interval);
            prop_assert!(is_interval(&s, &union).unwrap().is_interval);
        }
        // the difference is an interval once J does not lie inside I
        let diff: Vec<_> = i.iter().copied().filter(|x| !j.contains(x)).collect();
        if !diff.is_empty() && !j.iter().all(|x| i.contains(x)) {
            prop_assert!(is_interval(&s, &diff).unwrap().is_interval);
        }
    }

    #[test]
    fn closure_is_the_least_interval(
        c in class_strategy(&CLASSES),
        n in 1usize..=6,
        seed in any::<u64>(),
        mask in 1u64..64,
    ) {
        let s = sample(c, n, seed);
        let seed_ids = subset(n, mask);
        prop_assume!(!seed_ids.is_empty());
        let cl = interval_closure(&s, &seed_ids).unwrap();
        prop_assert!(is_interval(&s, &cl).unwrap().is_interval);
        prop_assert!(seed_ids.iter().all(|x| cl.contains(x)));
        for iv in all_intervals(&s).unwrap() {
            if seed_ids.iter().all(|x| iv.contains(x)) {
                prop_assert!(cl.iter().all(|x| iv.contains(x)));
            }
        }
    }

    #[test]
    fn simplicity_matches_the_oracle(c in class_strategy(&CLASSES), n in 1usize..=6, seed in any::<u64>()) {
        let s = sample(c, n, seed);
        prop_assert_eq!(is_simple(&s), exhaustive_is_simple(&s).unwrap());
    }

    #[test]
    fn decomposition_recomposes(c in class_strategy(&CLASSES), n in 2usize..=8, seed in any::<u64>()) {
        let s = sample(c, n, seed);
        let d = substitution_decompose(&s).unwrap();
        prop_assert_eq!(&d.recompose().unwrap(), &s);
        prop_assert!(is_simple(&d.quotient));
        if d.quotient.n() > 2 {
            let mut members = d.members.clone();
            members.sort();
            prop_assert_eq!(members, maximal_proper_intervals(&s).unwrap());
        }
        let t = decomposition_tree(&s).unwrap();
        prop_assert_eq!(t.leaf_count(), n);
        check_tree(&s, &t)?;
    }

    #[test]
    fn extensions_are_sound(c in class_strategy(&EXTENDABLE), n in 1usize..=9, seed in any::<u64>()) {
        let s = sample(c, n.max(if matches!(c, Hypergraph(_) | KaryIrreflexive(_)) { 3 } else { 1 }), seed);
        let e = extend(&s, c).unwrap();
        sound(&s, c, &e)?;
    }

    #[test]
    fn search_never_beats_a_construction_downward(
        c in class_strategy(&[Graph, Tournament, Permutation]),
        n in 1usize..=4,
        seed in any::<u64>(),
    ) {
        let s = sample(c, n, seed);
        let e = extend(&s, c).unwrap();
        let m = minimal_extension_size(&s, c, SearchBudget::new(e.added_count())).unwrap();
        prop_assert!(m.is_some_and(|m| m <= e.added_count()));
    }

    #[test]
    fn text_round_trip(c in class_strategy(&CLASSES), n in 0usize..=8, seed in any::<u64>()) {
        let s = random::structure(c, n, &mut random::rng(seed));
        let once = write_structure(&s, c).unwrap();
        let (back, class) = parse_structure(&once).unwrap();
        prop_assert_eq!(class, c);
        prop_assert_eq!(write_structure(&back, c).unwrap(), once);
    }

    #[test]
    fn report_simple_line_is_reproducible(c in class_strategy(&EXTENDABLE), n in 3usize..=7, seed in any::<u64>()) {
        let s = sample(c, n, seed);
        let e = extend(&s, c).unwrap();
        let text = simplext::cli::report(&s, c, &e).unwrap();
        let (block, rest) = split_report(&text);
        let (ext, _) = parse_structure(block).unwrap();
        let line = format!("simple {}", is_simple(&ext));
        prop_assert!(rest.lines().any(|l| l == line));
    }
}

#[test]
fn difference_needs_overlap() {
    // path a-b-c-d: removing a vertex from the whole set leaves a non-interval
    let (p4, _) = parse_structure("class graph n=4\nedge 0 1\nedge 1 2\nedge 2 3\n").unwrap();
    assert!(!is_interval(&p4, &[1, 2, 3]).unwrap().is_interval);
}

#[test]
fn bound_tightness_witnesses() {
    use simplext::selftest::{chain_tournament, complete_graph};
    let min = |s: &RelationalStructure, c, max| minimal_extension_size(s, c, SearchBudget::new(max)).unwrap();
    assert_eq!(min(&complete_graph(3), Graph, 2), Some(bound(Graph, 3).unwrap()));
    for n in [5, 7] {
        assert_eq!(min(&chain_tournament(n), Tournament, 2), Some(bound(Tournament, n).unwrap()));
    }
    for n in [3, 4] {
        let id = perm_to_structure(&Permutation::identity(n));
        assert_eq!(min(&id, Permutation, 3), Some(bound(Permutation, n).unwrap()));
    }
    let mut k3 = RelationalStructure::for_class(3, Digraph);
    for u in 0..3 {
        for v in 0..3 {
            if u != v {
                k3.insert(0, vec![u, v]).unwrap();
            }
        }
    }
    assert_eq!(min(&k3, Digraph, 2), Some(bound(Digraph, 3).unwrap()));
}
