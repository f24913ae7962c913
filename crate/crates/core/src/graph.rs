//! Simple undirected graphs stored as one `u128` neighbour mask per vertex.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest supported order; one adjacency row fits in a `u128`.
pub const MAX_ORDER: usize = 128;

#[inline]
pub(crate) const fn bit(v: usize) -> u128 {
    1u128 << v
}

#[inline]
pub(crate) const fn low_mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Iterates the set bits of a mask in ascending order.
pub(crate) fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// A set of vertices of some graph, as a bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u128);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_mask(mask: u128) -> Self {
        VertexSet(mask)
    }

    /// All vertices `0..n`.
    pub const fn full(n: usize) -> Self {
        VertexSet(low_mask(n))
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Result<Self> {
        let mut mask = 0u128;
        for v in vertices {
            if v >= MAX_ORDER {
                return Err(Error::VertexOutOfRange { vertex: v, order: MAX_ORDER });
            }
            mask |= bit(v);
        }
        Ok(VertexSet(mask))
    }

    pub const fn mask(self) -> u128 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, v: usize) -> bool {
        v < MAX_ORDER && self.0 & bit(v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= bit(v);
    }

    pub const fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub const fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    /// True when every member is below `n`.
    pub const fn fits(self, n: usize) -> bool {
        self.0 & !low_mask(n) == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        bits(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

/// An undirected simple graph on vertices `0..n`.
///
/// `rows[v]` is the neighbour mask of `v`; the relation is kept symmetric and
/// irreflexive by every constructor.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    rows: Vec<u128>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge(n));
        }
        Ok(Graph { n, rows: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, order: n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from neighbour masks, symmetrising and dropping loops.
    pub fn from_rows(rows: Vec<u128>) -> Result<Self> {
        let n = rows.len();
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge(n));
        }
        let mut g = Graph { n, rows: vec![0; n] };
        let mask = low_mask(n);
        for (u, &r) in rows.iter().enumerate() {
            if r & !mask != 0 {
                let v = (r & !mask).trailing_zeros() as usize;
                return Err(Error::VertexOutOfRange { vertex: v, order: n });
            }
            for v in bits(r & !bit(u)) {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        let full = low_mask(n);
        for (v, row) in g.rows.iter_mut().enumerate() {
            *row = full & !bit(v);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    /// `K_{p,q}` with sides `0..p` and `p..p+q`.
    pub fn complete_bipartite(p: usize, q: usize) -> Result<Self> {
        let mut g = Graph::empty(p + q)?;
        for u in 0..p {
            for v in p..p + q {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    /// The star `K_{1,m}` with hub 0.
    pub fn star(m: usize) -> Result<Self> {
        Graph::complete_bipartite(1, m)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, v: usize) -> u128 {
        self.rows[v]
    }

    pub fn rows(&self) -> &[u128] {
        &self.rows
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u] & bit(v) != 0
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.rows[v])
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in bits(self.rows[u] >> (u + 1)) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    pub fn isolated_vertices(&self) -> VertexSet {
        self.rows.iter().enumerate().filter(|(_, r)| **r == 0).map(|(v, _)| v).collect()
    }

    pub fn is_regular(&self) -> bool {
        match self.rows.first() {
            None => true,
            Some(r) => {
                let d = r.count_ones();
                self.rows.iter().all(|x| x.count_ones() == d)
            }
        }
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        self.rows[u] |= bit(v);
        self.rows[v] |= bit(u);
    }

    /// Induced subgraph on `w`, relabelled `0..|w|` in ascending order of `w`.
    pub fn induced_subgraph(&self, w: VertexSet) -> Result<Graph> {
        if !w.fits(self.n) {
            return Err(Error::InvalidVertexSet(self.n));
        }
        let keep = w.to_vec();
        let mut index = [usize::MAX; MAX_ORDER];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut sub = Graph::empty(keep.len())?;
        for (i, &v) in keep.iter().enumerate() {
            for u in bits(self.rows[v] & w.mask()) {
                sub.rows[i] |= bit(index[u]);
            }
        }
        Ok(sub)
    }

    pub fn complement(&self) -> Graph {
        let full = low_mask(self.n);
        let rows = self.rows.iter().enumerate().map(|(v, r)| !r & full & !bit(v)).collect();
        Graph { n: self.n, rows }
    }

    /// `self` followed by `other`, whose vertices are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge(n));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|r| r << self.n));
        Ok(Graph { n, rows })
    }

    /// Relabels so that old vertex `perm[i]` becomes new vertex `i`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut pos = [0usize; MAX_ORDER];
        for (i, &v) in perm.iter().enumerate() {
            pos[v] = i;
        }
        let rows = perm.iter().map(|&v| bits(self.rows[v]).fold(0u128, |acc, u| acc | bit(pos[u]))).collect();
        Graph { n: self.n, rows }
    }

    /// A proper 2-colouring if one exists. Each component's lowest vertex is
    /// placed on the first side.
    pub fn bipartition(&self) -> Option<(VertexSet, VertexSet)> {
        let mut side = [u8::MAX; MAX_ORDER];
        let (mut first, mut second) = (0u128, 0u128);
        for root in 0..self.n {
            if side[root] != u8::MAX {
                continue;
            }
            side[root] = 0;
            first |= bit(root);
            let mut frontier = bit(root);
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                for u in bits(self.rows[v]) {
                    if side[u] == u8::MAX {
                        side[u] = 1 - side[v];
                        if side[u] == 0 {
                            first |= bit(u);
                        } else {
                            second |= bit(u);
                        }
                        frontier |= bit(u);
                    } else if side[u] == side[v] {
                        return None;
                    }
                }
            }
        }
        Some((VertexSet(first), VertexSet(second)))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Connected components as vertex sets, ordered by their lowest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = 0u128;
        let mut out = Vec::new();
        for root in 0..self.n {
            if seen & bit(root) != 0 {
                continue;
            }
            let mut comp = bit(root);
            let mut frontier = bit(root);
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.rows[v] & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            seen |= comp;
            out.push(VertexSet(comp));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(Graph::from_edges(2, &[(0, 2)]), Err(Error::VertexOutOfRange { vertex: 2, order: 2 }));
        assert_eq!(Graph::from_edges(3, &[(1, 1)]), Err(Error::LoopEdge(1)));
        assert!(Graph::empty(MAX_ORDER + 1).is_err());
    }

    #[test]
    fn small_constructions() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(k2, Graph::complete(2).unwrap());
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4, Graph::cycle(4).unwrap());
        assert_eq!(c4.degrees(), vec![2, 2, 2, 2]);
        let k1 = Graph::from_edges(1, &[]).unwrap();
        assert_eq!(k1.order(), 1);
        assert_eq!(k1.isolated_vertices().len(), 1);
    }

    #[test]
    fn induced_subgraphs() {
        let c4 = Graph::cycle(4).unwrap();
        let p3 = c4.induced_subgraph([0, 1, 2].into_iter().collect()).unwrap();
        assert_eq!(p3, Graph::path(3).unwrap());
        let k4 = Graph::complete(4).unwrap();
        let k3 = k4.induced_subgraph([0, 2, 3].into_iter().collect()).unwrap();
        assert_eq!(k3, Graph::complete(3).unwrap());
        assert_eq!(c4.induced_subgraph(VertexSet::EMPTY).unwrap().order(), 0);
        assert_eq!(c4.induced_subgraph(c4.vertices()).unwrap(), c4);
        assert_eq!(c4.induced_subgraph(VertexSet::from_mask(1 << 5)), Err(Error::InvalidVertexSet(4)));
    }

    #[test]
    fn complements() {
        assert_eq!(Graph::complete(4).unwrap().complement(), Graph::empty(4).unwrap());
        let star = Graph::star(3).unwrap();
        let tri_plus_point = Graph::from_edges(4, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(star.complement(), tri_plus_point);
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.complement().edge_count(), 5);
        assert!(c5.complement().is_regular());
        assert_eq!(c5.complement().complement(), c5);
    }

    #[test]
    fn disjoint_unions() {
        let k1 = Graph::empty(1).unwrap();
        assert_eq!(k1.disjoint_union(&k1).unwrap(), Graph::empty(2).unwrap());
        let piece = Graph::star(1).unwrap().disjoint_union(&Graph::star(6).unwrap()).unwrap();
        assert_eq!(piece.order(), 9);
        assert_eq!(piece.edges(), vec![(0, 1), (2, 3), (2, 4), (2, 5), (2, 6), (2, 7), (2, 8)]);
        let c4 = Graph::cycle(4).unwrap();
        let two = c4.disjoint_union(&c4).unwrap();
        assert_eq!(two.order(), 8);
        assert!(two.is_regular() && two.degree(0) == 2);
        let big = Graph::empty(100).unwrap();
        assert_eq!(big.disjoint_union(&big), Err(Error::OrderTooLarge(200)));
    }

    #[test]
    fn bipartitions() {
        let c4 = Graph::cycle(4).unwrap();
        let (a, b) = c4.bipartition().unwrap();
        assert_eq!((a.to_vec(), b.to_vec()), (vec![0, 2], vec![1, 3]));
        assert!(Graph::complete(3).unwrap().bipartition().is_none());
        let k23 = Graph::complete_bipartite(2, 3).unwrap();
        let (a, b) = k23.bipartition().unwrap();
        assert_eq!((a.to_vec(), b.to_vec()), (vec![0, 1], vec![2, 3, 4]));
        // an isolated vertex forms its own component and goes to side one
        let g = Graph::from_edges(3, &[(1, 2)]).unwrap();
        let (a, b) = g.bipartition().unwrap();
        assert_eq!((a.to_vec(), b.to_vec()), (vec![0, 1], vec![2]));
    }

    #[test]
    fn components_and_permutation() {
        let g = Graph::from_edges(5, &[(0, 3), (1, 2)]).unwrap();
        let comps: Vec<_> = g.components().into_iter().map(|c| c.to_vec()).collect();
        assert_eq!(comps, vec![vec![0, 3], vec![1, 2], vec![4]]);
        let p = g.permuted(&[3, 0, 4, 1, 2]);
        assert_eq!(p.edges(), vec![(0, 1), (3, 4)]);
    }
}
