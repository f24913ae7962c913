//! Exhaustive generation of unlabelled graphs by canonical augmentation.
//!
//! A graph of order `n + 1` is produced from its parent of order `n` by adding
//! one vertex adjacent to a subset `S` of the parent. Only one `S` per orbit of
//! the parent's automorphism group is tried, and a child is kept only when the
//! new vertex lies in the orbit of the child's canonical deletion vertex: the
//! vertex of maximum cheap invariant that comes first in canonical order. Each
//! isomorphism class is then produced exactly once.

use alloc::vec;
use alloc::vec::Vec;

use crate::canon::canonical_labeling;
use crate::graph::{bit, bits, Graph};

/// A graph together with generators of its automorphism group, ready to be
/// extended by one vertex.
#[derive(Clone, Debug)]
pub struct Augmentable {
    pub graph: Graph,
    pub generators: Vec<Vec<usize>>,
}

impl Augmentable {
    fn root() -> Self {
        Augmentable { graph: Graph::empty(0).expect("order 0"), generators: Vec::new() }
    }
}

/// Every unlabelled graph of order `n`, each with automorphism generators.
pub fn level(n: usize) -> Vec<Augmentable> {
    let mut current = vec![Augmentable::root()];
    for _ in 0..n {
        current = current.iter().flat_map(extend_augmentable).collect();
    }
    current
}

/// Accepted children of `parent`.
pub fn extend(parent: &Augmentable) -> Vec<Graph> {
    augment(parent, false).into_iter().map(|a| a.graph).collect()
}

/// Accepted children of `parent`, with their automorphism generators.
pub fn extend_augmentable(parent: &Augmentable) -> Vec<Augmentable> {
    augment(parent, true)
}

/// Stream of one representative per isomorphism class of order-`n` graphs.
pub fn generate_all(n: usize) -> GenerateAll {
    if n == 0 {
        return GenerateAll { parents: Vec::new(), next_parent: 0, buffer: vec![Graph::empty(0).unwrap()] };
    }
    GenerateAll { parents: level(n - 1), next_parent: 0, buffer: Vec::new() }
}

pub struct GenerateAll {
    parents: Vec<Augmentable>,
    next_parent: usize,
    // reversed so that `pop` yields children in generation order
    buffer: Vec<Graph>,
}

impl GenerateAll {
    /// The parents whose children make up the stream, in stream order.
    pub fn into_parents(self) -> Vec<Augmentable> {
        self.parents
    }
}

impl Iterator for GenerateAll {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        loop {
            if let Some(g) = self.buffer.pop() {
                return Some(g);
            }
            let parent = self.parents.get(self.next_parent)?;
            self.next_parent += 1;
            self.buffer = extend(parent);
            self.buffer.reverse();
        }
    }
}

/// Invariant used to pick the deletion vertex; compared lexicographically.
fn vertex_invariant(g: &Graph, v: usize) -> (u32, u32, u32) {
    let mut s1 = 0;
    let mut s2 = 0;
    for u in bits(g.row(v)) {
        let d = g.degree(u) as u32;
        s1 += d;
        s2 += d * d;
    }
    (g.degree(v) as u32, s1, s2)
}

fn subset_orbit_representatives(m: usize, generators: &[Vec<usize>]) -> Vec<u128> {
    let count = 1usize << m;
    if generators.is_empty() {
        return (0..count as u128).collect();
    }
    let mut parent: Vec<u32> = (0..count as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    for gen in generators {
        for s in 0..count {
            let image = bits(s as u128).fold(0usize, |acc, v| acc | (1 << gen[v]));
            let (a, b) = (find(&mut parent, s as u32), find(&mut parent, image as u32));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi as usize] = lo;
            }
        }
    }
    (0..count as u32).filter(|&s| find(&mut parent, s) == s).map(|s| s as u128).collect()
}

fn augment(parent: &Augmentable, keep_generators: bool) -> Vec<Augmentable> {
    let m = parent.graph.order();
    assert!(m < 24, "vertex augmentation enumerates 2^n subsets");
    let mut out = Vec::new();
    let mut rows = parent.graph.rows().to_vec();
    rows.push(0);
    for s in subset_orbit_representatives(m, &parent.generators) {
        for (v, row) in rows.iter_mut().enumerate().take(m) {
            *row = parent.graph.row(v) & !bit(m) | if s & bit(v) != 0 { bit(m) } else { 0 };
        }
        rows[m] = s;
        let child = Graph::from_rows(rows.clone()).expect("order stays in range");

        let invariants: Vec<_> = (0..=m).map(|v| vertex_invariant(&child, v)).collect();
        let top = *invariants.iter().max().expect("child is nonempty");
        if invariants[m] != top {
            continue;
        }
        let candidates: u128 = (0..=m).filter(|&v| invariants[v] == top).fold(0, |a, v| a | bit(v));
        if candidates == bit(m) {
            let generators = if keep_generators { canonical_labeling(&child).generators } else { Vec::new() };
            out.push(Augmentable { graph: child, generators });
            continue;
        }
        let lab = canonical_labeling(&child);
        let chosen = lab.order.iter().copied().find(|&v| candidates & bit(v) != 0).expect("candidates are vertices");
        let orbits = lab.orbits();
        if orbits[chosen] == orbits[m] {
            let generators = if keep_generators { lab.generators } else { Vec::new() };
            out.push(Augmentable { graph: child, generators });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;
    use alloc::collections::BTreeSet;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (0..=7).map(|n| generate_all(n).count()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156, 1044]);
    }

    #[test]
    fn representatives_are_pairwise_non_isomorphic() {
        for n in 1..=6 {
            let forms: BTreeSet<_> = generate_all(n).map(|g| canonical_form(&g)).collect();
            assert_eq!(forms.len(), generate_all(n).count());
        }
    }

    #[test]
    fn subset_orbits_of_a_transposition() {
        let reps = subset_orbit_representatives(2, &[vec![1, 0]]);
        assert_eq!(reps, vec![0, 1, 3]);
    }
}
