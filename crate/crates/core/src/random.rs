//! Seeded random structures for tests and the self-test corpus.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::structure::{close_transitively, orderings, ElementId, RelationalStructure, StructureClass};

/// Deterministic generator for a given seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn tournament<R: Rng>(n: usize, rng: &mut R) -> RelationalStructure {
    let mut t = RelationalStructure::for_class(n, StructureClass::Tournament);
    for u in 0..n {
        for v in u + 1..n {
            let tuple = if rng.gen_bool(0.5) { vec![u, v] } else { vec![v, u] };
            t.insert(0, tuple).expect("ids in range");
        }
    }
    t
}

pub fn graph<R: Rng>(n: usize, rng: &mut R) -> RelationalStructure {
    let mut g = RelationalStructure::for_class(n, StructureClass::Graph);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.5) {
                g.insert(0, vec![u, v]).expect("ids in range");
                g.insert(0, vec![v, u]).expect("ids in range");
            }
        }
    }
    g
}

/// Loopless digraph with every ordered pair present with probability 1/2.
pub fn digraph<R: Rng>(n: usize, rng: &mut R) -> RelationalStructure {
    let mut d = RelationalStructure::for_class(n, StructureClass::Digraph);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(0.5) {
                d.insert(0, vec![u, v]).expect("ids in range");
            }
        }
    }
    d
}

/// Each pair is absent, `u -> v` or `v -> u` with equal probability.
pub fn oriented_graph<R: Rng>(n: usize, rng: &mut R) -> RelationalStructure {
    let mut d = RelationalStructure::for_class(n, StructureClass::OrientedGraph);
    for u in 0..n {
        for v in u + 1..n {
            match rng.gen_range(0..3) {
                1 => d.insert(0, vec![u, v]).expect("ids in range"),
                2 => d.insert(0, vec![v, u]).expect("ids in range"),
                _ => false,
            };
        }
    }
    d
}

/// One-line permutation (values `1..=n`) drawn uniformly.
pub fn permutation_oneline<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (1..=n).collect();
    p.shuffle(rng);
    p
}

pub fn permutation<R: Rng>(n: usize, rng: &mut R) -> RelationalStructure {
    let p = crate::structure::Permutation::new(permutation_oneline(n, rng)).expect("valid one-line");
    crate::structure::perm_to_structure(&p)
}

/// Transitive closure of a random DAG over a shuffled linear extension; each
/// forward pair is an arc with probability `density`.
pub fn poset<R: Rng>(n: usize, density: f64, rng: &mut R) -> RelationalStructure {
    let mut order: Vec<ElementId> = (0..n).collect();
    order.shuffle(rng);
    let mut p = RelationalStructure::for_class(n, StructureClass::Poset);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                p.insert(0, vec![order[i], order[j]]).expect("ids in range");
            }
        }
    }
    close_transitively(&mut p, 0);
    p
}

/// Every `k`-tuple over `0..n` present with probability `density`.
pub fn kary<R: Rng>(n: usize, k: usize, density: f64, rng: &mut R) -> RelationalStructure {
    let mut a = RelationalStructure::for_class(n, StructureClass::Kary(k));
    let total = n.pow(k as u32);
    for code in 0..total {
        if rng.gen_bool(density) {
            let mut t = vec![0; k];
            let mut c = code;
            for slot in t.iter_mut().rev() {
                *slot = c % n;
                c /= n;
            }
            a.insert(0, t).expect("ids in range");
        }
    }
    a
}

/// [`kary`] restricted to tuples with pairwise distinct entries.
pub fn irreflexive_kary<R: Rng>(n: usize, k: usize, density: f64, rng: &mut R) -> RelationalStructure {
    let a = kary(n, k, density, rng);
    let mut out = RelationalStructure::for_class(n, StructureClass::KaryIrreflexive(k));
    for t in a.tuples(0) {
        if t.iter().enumerate().all(|(i, x)| !t[i + 1..].contains(x)) {
            out.insert(0, t.to_vec()).expect("ids in range");
        }
    }
    out
}

/// `k`-uniform hypergraph with every `k`-set an edge with probability
/// `density`.
pub fn hypergraph<R: Rng>(n: usize, k: usize, density: f64, rng: &mut R) -> RelationalStructure {
    let mut h = RelationalStructure::for_class(n, StructureClass::Hypergraph(k));
    for set in crate::oracle::combinations(n, k) {
        if rng.gen_bool(density) {
            for t in orderings(&set) {
                h.insert(0, t).expect("ids in range");
            }
        }
    }
    h
}

/// A random structure of `class` on `n` elements.
pub fn structure<R: Rng>(class: StructureClass, n: usize, rng: &mut R) -> RelationalStructure {
    use StructureClass::*;
    match class {
        Graph => graph(n, rng),
        Tournament => tournament(n, rng),
        Digraph => digraph(n, rng),
        OrientedGraph => oriented_graph(n, rng),
        Poset => poset(n, 0.35, rng),
        LinearOrder => {
            let mut order: Vec<ElementId> = (0..n).collect();
            order.shuffle(rng);
            let mut l = RelationalStructure::for_class(n, LinearOrder);
            for i in 0..n {
                for j in i + 1..n {
                    l.insert(0, vec![order[i], order[j]]).expect("ids in range");
                }
            }
            l
        }
        Permutation => permutation(n, rng),
        Kary(k) => kary(n, k, 0.15, rng),
        KaryIrreflexive(k) => irreflexive_kary(n, k, 0.2, rng),
        Hypergraph(k) => hypergraph(n, k, 0.3, rng),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::validate;

    #[test]
    fn generators_respect_their_classes() {
        use StructureClass::*;
        let mut r = rng(7);
        for class in [
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
        ] {
            for n in 1..=7 {
                let s = structure(class, n, &mut r);
                assert!(validate(&s, class).unwrap().is_ok(), "{class} n={n}");
            }
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = graph(8, &mut rng(42));
        let b = graph(8, &mut rng(42));
        assert_eq!(a, b);
    }
}
