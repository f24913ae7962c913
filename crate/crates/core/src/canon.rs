//! Canonical labelling by partition refinement and individualisation.
//!
//! The search tree is the usual one: refine an ordered partition to an
//! equitable one, individualise each vertex of the first non-singleton cell,
//! recurse. Leaves are discrete partitions, i.e. relabellings, and the
//! canonical graph is the lexicographically largest relabelled adjacency
//! among leaves. Automorphisms discovered by equal leaves prune the tree in
//! two ways: sibling vertices in one orbit of the pointwise stabiliser of the
//! current path are skipped, and a leaf equal to the first leaf lets the
//! search jump back to the node where its path left the first path.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::graph::{bit, bits, Graph, MAX_ORDER};
use crate::graph6;

/// Canonical string of a graph: graph6 of its canonical relabelling, with the
/// per-position colours appended for coloured graphs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.0)
    }
}

/// Result of a canonical search.
#[derive(Clone, Debug)]
pub struct Labeling {
    /// `order[i]` is the vertex placed at canonical position `i`.
    pub order: Vec<usize>,
    /// Automorphisms found during the search, as vertex maps. They generate
    /// the automorphism group (of the coloured graph, if coloured).
    pub generators: Vec<Vec<usize>>,
    /// Colour of each canonical position (all zero when uncoloured).
    colors: Vec<u32>,
    canonical: Graph,
}

impl Labeling {
    pub fn canonical_graph(&self) -> &Graph {
        &self.canonical
    }

    pub fn form(&self) -> CanonicalForm {
        let mut s = graph6::encode(&self.canonical);
        if self.colors.iter().any(|&c| c != 0) {
            s.push(';');
            for (i, c) in self.colors.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push_str(&alloc::format!("{c}"));
            }
        }
        CanonicalForm(s)
    }

    /// Orbit representative (smallest member) of every vertex.
    pub fn orbits(&self) -> Vec<usize> {
        orbits(self.order.len(), &self.generators)
    }
}

pub fn canonical_labeling(g: &Graph) -> Labeling {
    search(g, vec![low_cells(g.order())], &vec![0; g.order()])
}

/// Canonical labelling of a vertex-coloured graph; isomorphisms must preserve
/// colours, and colour classes are ordered by colour value.
pub fn canonical_labeling_colored(g: &Graph, colors: &[u32]) -> Labeling {
    assert_eq!(colors.len(), g.order(), "one colour per vertex");
    let mut values: Vec<u32> = colors.to_vec();
    values.sort_unstable();
    values.dedup();
    let cells = values
        .iter()
        .map(|&c| colors.iter().enumerate().filter(|(_, &x)| x == c).fold(0u128, |m, (v, _)| m | bit(v)))
        .collect();
    search(g, cells, colors)
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).form()
}

pub fn canonical_form_colored(g: &Graph, colors: &[u32]) -> CanonicalForm {
    canonical_labeling_colored(g, colors).form()
}

pub fn is_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    if g1.order() != g2.order() || g1.edge_count() != g2.edge_count() {
        return false;
    }
    let mut d1 = g1.degrees();
    let mut d2 = g2.degrees();
    d1.sort_unstable();
    d2.sort_unstable();
    d1 == d2 && canonical_form(g1) == canonical_form(g2)
}

pub fn has_trivial_automorphism_group(g: &Graph) -> bool {
    canonical_labeling(g).generators.is_empty()
}

/// Orbit representatives of the group generated by `generators`.
pub fn orbits(n: usize, generators: &[Vec<usize>]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for gen in generators {
        for (v, &w) in gen.iter().enumerate() {
            let (a, b) = (find(&mut parent, v), find(&mut parent, w));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

fn low_cells(n: usize) -> u128 {
    crate::graph::low_mask(n)
}

struct Leaf {
    perm: Vec<usize>,
    rows: Vec<u128>,
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

fn search(g: &Graph, mut cells: Vec<u128>, colors: &[u32]) -> Labeling {
    cells.retain(|&c| c != 0);
    let n = g.order();
    let mut state = Search { g, first: None, best: None, generators: Vec::new() };
    let active = vec![true; cells.len()];
    let mut path = Vec::with_capacity(n);
    state.visit(cells, active, &mut path);
    let best = state.best.expect("search reaches at least one leaf");
    let canonical = Graph::from_rows(best.rows).expect("relabelling keeps the order");
    let colors = best.perm.iter().map(|&v| colors[v]).collect();
    Labeling { order: best.perm, generators: state.generators, colors, canonical }
}

/// Refines `cells` to an equitable partition. Cells flagged in `active` are
/// pending splitters; the lowest-positioned pending cell is always taken
/// next and fragments are ordered by neighbour count, so the result depends
/// only on the structure of the input, never on vertex names.
fn refine(g: &Graph, cells: &mut Vec<u128>, active: &mut Vec<bool>) {
    let mut counts = [0u32; MAX_ORDER];
    let mut groups: Vec<(u32, u128)> = Vec::new();
    while let Some(w) = active.iter().position(|&a| a) {
        active[w] = false;
        let splitter = cells[w];
        let mut i = 0;
        while i < cells.len() {
            let cell = cells[i];
            if cell & (cell - 1) == 0 {
                i += 1;
                continue;
            }
            let mut uniform = true;
            let mut first = None;
            for v in bits(cell) {
                let c = (g.row(v) & splitter).count_ones();
                counts[v] = c;
                match first {
                    None => first = Some(c),
                    Some(f) if f != c => uniform = false,
                    _ => {}
                }
            }
            if uniform {
                i += 1;
                continue;
            }
            groups.clear();
            for v in bits(cell) {
                match groups.iter_mut().find(|(c, _)| *c == counts[v]) {
                    Some((_, m)) => *m |= bit(v),
                    None => groups.push((counts[v], bit(v))),
                }
            }
            groups.sort_unstable_by_key(|&(c, _)| c);
            let k = groups.len();
            cells.splice(i..=i, groups.iter().map(|&(_, m)| m));
            active.splice(i..=i, core::iter::repeat_n(true, k));
            i += k;
        }
    }
}

impl Search<'_> {
    /// Returns `Some(level)` to abandon every node deeper than `level`.
    fn visit(&mut self, mut cells: Vec<u128>, mut active: Vec<bool>, path: &mut Vec<usize>) -> Option<usize> {
        refine(self.g, &mut cells, &mut active);
        let depth = path.len();
        let Some(target) = cells.iter().position(|&c| c & (c - 1) != 0) else {
            return self.leaf(&cells, path);
        };
        let cell = cells[target];
        let mut explored: Vec<usize> = Vec::new();
        let mut orbit_cache: Option<(usize, Vec<usize>)> = None;
        for v in bits(cell) {
            if !explored.is_empty() && !self.generators.is_empty() {
                let stale = orbit_cache.as_ref().is_none_or(|(len, _)| *len != self.generators.len());
                if stale {
                    let fixing: Vec<Vec<usize>> =
                        self.generators.iter().filter(|gen| path.iter().all(|&p| gen[p] == p)).cloned().collect();
                    orbit_cache = Some((self.generators.len(), orbits(self.g.order(), &fixing)));
                }
                let rep = &orbit_cache.as_ref().unwrap().1;
                if explored.iter().any(|&w| rep[w] == rep[v]) {
                    continue;
                }
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(bit(v));
            child.push(cell & !bit(v));
            child.extend_from_slice(&cells[target + 1..]);
            let mut child_active = vec![false; child.len()];
            child_active[target] = true;
            path.push(v);
            let jump = self.visit(child, child_active, path);
            path.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
            explored.push(v);
        }
        None
    }

    fn leaf(&mut self, cells: &[u128], path: &[usize]) -> Option<usize> {
        let perm: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let rows = self.g.permuted(&perm).rows().to_vec();
        let Some(first) = &self.first else {
            let leaf = Leaf { perm, rows, path: path.to_vec() };
            self.best = Some(Leaf { perm: leaf.perm.clone(), rows: leaf.rows.clone(), path: leaf.path.clone() });
            self.first = Some(leaf);
            return None;
        };
        if rows == first.rows {
            self.generators.push(automorphism(&first.perm, &perm));
            let common = first.path.iter().zip(path).take_while(|(a, b)| a == b).count();
            return Some(common);
        }
        let best = self.best.as_ref().expect("best is set with first");
        match rows.cmp(&best.rows) {
            Ordering::Greater => {
                self.best = Some(Leaf { perm, rows, path: path.to_vec() });
            }
            Ordering::Equal => {
                let gen = automorphism(&best.perm, &perm);
                self.generators.push(gen);
            }
            Ordering::Less => {}
        }
        None
    }
}

/// The automorphism taking leaf `from` to leaf `to`.
fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut gamma = vec![0; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        gamma[a] = b;
    }
    gamma
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelled_cycle_is_isomorphic() {
        let c4 = Graph::cycle(4).unwrap();
        let other = Graph::from_edges(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_ne!(c4, other);
        assert!(is_isomorphic(&c4, &other));
        assert_eq!(canonical_form(&c4), canonical_form(&other));
    }

    #[test]
    fn star_versus_triangle_plus_point() {
        let star = Graph::star(3).unwrap();
        let k3k1 = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!is_isomorphic(&star, &k3k1));
        // same edge count and order, so the canonical forms must differ
        assert_ne!(canonical_form(&star), canonical_form(&k3k1));
    }

    #[test]
    fn generators_are_automorphisms() {
        let g = Graph::cycle(6).unwrap();
        let lab = canonical_labeling(&g);
        assert!(!lab.generators.is_empty());
        for gen in &lab.generators {
            for (u, v) in g.edges() {
                assert!(g.has_edge(gen[u], gen[v]));
            }
        }
        assert!(lab.orbits().iter().all(|&r| r == 0));
    }

    #[test]
    fn symmetric_graphs_stay_cheap() {
        // without automorphism pruning these would need n! leaves
        for n in [1, 12, 40, 128] {
            let e = Graph::empty(n).unwrap();
            assert_eq!(canonical_form(&e), canonical_form(&e.permuted(&(0..n).rev().collect::<Vec<_>>())));
            assert_eq!(has_trivial_automorphism_group(&e), n <= 1);
        }
        let k = Graph::complete(30).unwrap();
        assert_eq!(canonical_labeling(&k).orbits(), vec![0; 30]);
    }

    #[test]
    fn coloured_forms_respect_colours() {
        let p3 = Graph::path(3).unwrap();
        // hub coloured 1 versus a leaf coloured 1
        let a = canonical_form_colored(&p3, &[0, 1, 0]);
        let b = canonical_form_colored(&p3, &[1, 0, 0]);
        let c = canonical_form_colored(&p3, &[0, 0, 1]);
        assert_ne!(a, b);
        assert_eq!(b, c);
    }

    #[test]
    fn empty_graph_of_order_zero() {
        let g = Graph::empty(0).unwrap();
        assert_eq!(canonical_form(&g).as_str(), "?");
        assert!(has_trivial_automorphism_group(&g));
    }
}
