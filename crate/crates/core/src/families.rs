//! Fuzzy balls, inflated stars and exponentially large cospectral families.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::canon::has_trivial_automorphism_group;
use crate::construct::{certify_pair, make_piece, CertifiedPair, SwapPiece};
use crate::error::{Error, Result};
use crate::generate::generate_all;
use crate::graph::{low_mask, Graph, VertexSet, MAX_ORDER};

/// A partition of `n` into `k` positive parts, largest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?}")));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }
}

/// Partitions of `n` into exactly `k` parts in descending lexicographic order.
pub fn partitions(n: usize, k: usize) -> Result<Partitions> {
    if k == 0 || k > n {
        return Err(Error::PartitionRange { n, k });
    }
    let mut first = alloc::vec![1; k];
    first[0] = n - k + 1;
    Ok(Partitions { next: Some(first) })
}

pub struct Partitions {
    next: Option<Vec<usize>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        self.next = successor(&current);
        Some(Partition { parts: current })
    }
}

fn successor(a: &[usize]) -> Option<Vec<usize>> {
    let k = a.len();
    for i in (0..k.saturating_sub(1)).rev() {
        let cap = a[i] - 1;
        let slots = k - 1 - i;
        let rest: usize = a[i + 1..].iter().sum::<usize>() + 1;
        if cap == 0 || slots * cap < rest {
            continue;
        }
        let mut out = a[..i].to_vec();
        out.push(cap);
        let mut left = rest;
        for j in 0..slots {
            let part = cap.min(left - (slots - 1 - j));
            out.push(part);
            left -= part;
        }
        return Some(out);
    }
    None
}

/// The `k` disjoint stars `K_{1,m_i}` as a piece whose `B` side is the
/// leaves. Leaves are `0..n` in consecutive blocks, centres are `n..n + k`.
pub fn star_forest_piece(p: &Partition) -> Result<SwapPiece> {
    let n = p.n();
    let g = Graph::from_edges(n + p.k(), &pendant_edges(p, 0, n))?;
    make_piece(g, VertexSet::from_mask(low_mask(n)))
}

// v_j at `v_start + j` joined to the j-th consecutive block of b_start..b_start + n
fn pendant_edges(p: &Partition, b_start: usize, v_start: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(p.n());
    let mut b = b_start;
    for (j, &m) in p.parts.iter().enumerate() {
        for _ in 0..m {
            edges.push((b, v_start + j));
            b += 1;
        }
    }
    edges
}

/// A clique on `b_0..b_{n-1}` (vertices `0..n`) with `v_j` (vertex `n + j`)
/// joined to `m_j` of them.
pub fn fuzzy_ball(p: &Partition) -> Result<Graph> {
    let n = p.n();
    let mut edges = pendant_edges(p, 0, n);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n + p.k(), &edges)
}

/// A hub `a` (vertex 0) joined to `b_1..b_n` (vertices `1..=n`), with `v_j`
/// (vertex `n + 1 + j`) joined to `m_j` of them.
pub fn inflated_star(p: &Partition) -> Result<Graph> {
    let n = p.n();
    let mut edges = pendant_edges(p, 1, n + 1);
    edges.extend((1..=n).map(|b| (0, b)));
    Graph::from_edges(n + p.k() + 1, &edges)
}

/// One widget per base vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WidgetChoice {
    bits: Vec<bool>,
}

impl WidgetChoice {
    pub fn new(bits: Vec<bool>) -> Self {
        WidgetChoice { bits }
    }

    /// Bit `i` is bit `i` of `index`.
    pub fn from_index(index: u64, len: usize) -> Self {
        WidgetChoice { bits: (0..len).map(|i| i < 64 && index >> i & 1 == 1).collect() }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

/// The two normalized Laplacian widgets, `IS(3,1)` and `IS(2,2)`, as pieces
/// whose `B` is joined to the hub.
pub fn nl_widgets() -> (SwapPiece, SwapPiece) {
    let piece = |parts: Vec<usize>| star_forest_piece(&Partition::new(parts).expect("partition")).expect("piece");
    (piece(alloc::vec![3, 1]), piece(alloc::vec![2, 2]))
}

/// The first graph of order `n` in generation order with no nontrivial
/// automorphism.
pub fn first_asymmetric_graph(n: usize) -> Option<Graph> {
    generate_all(n).find(has_trivial_automorphism_group)
}

/// `base` with, for each vertex `v`, a copy of `widgets.0` (bit clear) or
/// `widgets.1` (bit set) whose `B` side is joined to `v`. Copies follow the
/// base in vertex order, each laid out `B` then `C`.
pub fn attach_widgets(base: &Graph, choice: &WidgetChoice, widgets: (&SwapPiece, &SwapPiece)) -> Result<Graph> {
    if choice.len() != base.order() {
        return Err(Error::SizeMismatch(format!("{} choice bits for a base of order {}", choice.len(), base.order())));
    }
    let w = widgets.0.graph().order();
    if widgets.1.graph().order() != w {
        return Err(Error::SizeMismatch(String::from("widgets have different orders")));
    }
    let n = base.order() * (w + 1);
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge(n));
    }
    let mut edges = base.edges();
    for (v, &bit) in choice.bits.iter().enumerate() {
        let p = if bit { widgets.1 } else { widgets.0 };
        let offset = base.order() + v * w;
        let mut position = alloc::vec![0usize; w];
        for (i, u) in p.b().iter().chain(p.c().iter()).enumerate() {
            position[u] = offset + i;
        }
        edges.extend(p.graph().edges().into_iter().map(|(x, y)| (position[x], position[y])));
        edges.extend(p.b().iter().map(|u| (v, position[u])));
    }
    Graph::from_edges(n, &edges)
}

/// A member of the normalized Laplacian family over `base`: `IS(3,1)` or
/// `IS(2,2)` hung from every vertex by its hub.
pub fn exponential_family_nl(base: &Graph, choice: &WidgetChoice) -> Result<Graph> {
    if !has_trivial_automorphism_group(base) {
        return Err(Error::SymmetricBase);
    }
    let (w0, w1) = nl_widgets();
    attach_widgets(base, choice, (&w0, &w1))
}

/// A member of the `A + tD` family over `base`, using the two pieces of a
/// certified biregular pair as widgets.
pub fn exponential_family_atd(base: &Graph, choice: &WidgetChoice, widget: &CertifiedPair) -> Result<Graph> {
    if !has_trivial_automorphism_group(base) {
        return Err(Error::SymmetricBase);
    }
    certify_pair(&widget.p1, &widget.p2)?.check_theorem2()?;
    attach_widgets(base, choice, (&widget.p1, &widget.p2))
}
