//! Swap pieces, blueprints and the two swapping constructions.
//!
//! A swap piece is a bipartite graph on `B ∪ C` whose `B` vertices share one
//! degree `k`. A blueprint is a host graph on `A ∪ A'`; assembling puts the
//! piece next to it, joins every vertex of `A'` to every vertex of `B`, and
//! optionally makes `B` a clique. Swapping one piece for a suitable mate
//! leaves the spectrum of the assembly unchanged.

mod gammas;
mod search;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, MAX_ORDER};
use crate::linalg::{rank, IntMatrix};
use crate::spectra::{are_cospectral, MatrixKind};

pub use gammas::{
    decomposition_check_theorem1, decomposition_check_theorem2, multiset_remainder, predicted_gammas_theorem1,
    predicted_gammas_theorem2, DECOMPOSITION_TOLERANCE,
};
pub use search::{probe_blueprint, search_pieces, CertifiedPair, SearchMode};

/// A bipartite graph with a distinguished side `B` of common degree `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SwapPiece {
    graph: Graph,
    b: VertexSet,
    c: VertexSet,
    k: usize,
    ell: Option<usize>,
}

impl SwapPiece {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn b(&self) -> VertexSet {
        self.b
    }

    pub fn c(&self) -> VertexSet {
        self.c
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Common degree of the `C` side, if there is one.
    pub fn ell(&self) -> Option<usize> {
        self.ell
    }

    pub fn is_biregular(&self) -> bool {
        self.ell.is_some()
    }

    /// The same graph with the roles of `B` and `C` exchanged.
    pub fn flipped(&self) -> Result<SwapPiece> {
        make_piece(self.graph.clone(), self.c)
    }

    /// `|B| x |C|` biadjacency matrix, both sides in ascending order.
    pub fn biadjacency(&self) -> IntMatrix {
        let bs = self.b.to_vec();
        let cs = self.c.to_vec();
        IntMatrix::from_fn(bs.len(), cs.len(), |i, j| self.graph.has_edge(bs[i], cs[j]) as i64)
    }
}

pub fn make_piece(graph: Graph, b: VertexSet) -> Result<SwapPiece> {
    let n = graph.order();
    if !b.fits(n) {
        return Err(Error::InvalidVertexSet(n));
    }
    if b.is_empty() {
        return Err(Error::InvalidPiece(String::from("B is empty")));
    }
    let c = graph.vertices().difference(b);
    for v in 0..n {
        let same_side = if b.contains(v) { b } else { c };
        if !graph.neighbors(v).intersection(same_side).is_empty() {
            return Err(Error::InvalidPiece(format!("vertex {v} has a neighbour on its own side")));
        }
    }
    let k = graph.degree(b.iter().next().expect("B is nonempty"));
    if let Some(v) = b.iter().find(|&v| graph.degree(v) != k) {
        return Err(Error::InvalidPiece(format!(
            "B vertices have unequal degrees ({} at vertex {v}, {k} elsewhere)",
            graph.degree(v)
        )));
    }
    let ell = c.iter().next().map(|v| graph.degree(v)).filter(|&l| c.iter().all(|v| graph.degree(v) == l));
    Ok(SwapPiece { graph, b, c, k, ell })
}

/// Which eigenspace restricted to `B` is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EigenspaceMode {
    /// Eigenvalue 1 of the normalized Laplacian.
    NormalizedLambda1,
    /// Eigenvalue 0 of the adjacency matrix.
    AdjacencyLambda0,
}

/// Dimension of the eigenspace (per `mode`) intersected with the vectors
/// supported on `B`.
///
/// In both modes a vector supported on `B` is an eigenvector exactly when,
/// for every `C` vertex, its entries over the `B` neighbours sum to zero; the
/// dimension is therefore `|B| - rank(N)` for the biadjacency matrix `N`.
pub fn dim_eigenspace_on_b(p: &SwapPiece, mode: EigenspaceMode) -> usize {
    match mode {
        EigenspaceMode::NormalizedLambda1 | EigenspaceMode::AdjacencyLambda0 => p.b.len() - rank(&p.biadjacency()),
    }
}

/// As [`dim_eigenspace_on_b`], for vectors supported on `C`.
pub fn dim_eigenspace_on_c(p: &SwapPiece, mode: EigenspaceMode) -> usize {
    match mode {
        EigenspaceMode::NormalizedLambda1 | EigenspaceMode::AdjacencyLambda0 => p.c.len() - rank(&p.biadjacency()),
    }
}

/// Which hypotheses of the swapping theorems a pair of pieces satisfies.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PieceCertificate {
    pub nl_cospectral: bool,
    pub b_degree_match: bool,
    /// Eigenvalue-1 dimensions on `B`, first piece then second.
    pub dim_b_eigenspace_1: (usize, usize),
    /// Adjacency cospectrality, when both pieces are biregular with equal
    /// degrees.
    pub biregular_cospectral_a: Option<bool>,
    /// Eigenvalue-0 dimensions on `B`, when both pieces are biregular.
    pub dim_b_eigenspace_0: Option<(usize, usize)>,
}

impl PieceCertificate {
    /// Checks the normalized Laplacian hypotheses; the dimension condition is
    /// only needed when `B` becomes a clique.
    pub fn check_theorem1(&self, b_clique: bool) -> Result<()> {
        if !self.nl_cospectral {
            return Err(Error::CertificateFailed(String::from(
                "pieces are not cospectral for the normalized Laplacian",
            )));
        }
        if !self.b_degree_match {
            return Err(Error::CertificateFailed(String::from("B sides have different degrees")));
        }
        if b_clique && self.dim_b_eigenspace_1.0 != self.dim_b_eigenspace_1.1 {
            return Err(Error::CertificateFailed(format!(
                "eigenvalue-1 dimensions on B differ ({} vs {})",
                self.dim_b_eigenspace_1.0, self.dim_b_eigenspace_1.1
            )));
        }
        Ok(())
    }

    /// Checks the biregular hypotheses.
    pub fn check_theorem2(&self) -> Result<()> {
        match self.biregular_cospectral_a {
            None => Err(Error::CertificateFailed(String::from("pieces are not biregular with equal degrees"))),
            Some(false) => {
                Err(Error::CertificateFailed(String::from("pieces are not cospectral for the adjacency matrix")))
            }
            Some(true) => match self.dim_b_eigenspace_0 {
                Some((d1, d2)) if d1 != d2 => {
                    Err(Error::CertificateFailed(format!("eigenvalue-0 dimensions on B differ ({d1} vs {d2})")))
                }
                _ => Ok(()),
            },
        }
    }
}

pub fn certify_pair(p1: &SwapPiece, p2: &SwapPiece) -> Result<PieceCertificate> {
    if p1.b.len() != p2.b.len() || p1.c.len() != p2.c.len() {
        return Err(Error::SizeMismatch(format!(
            "pieces have |B|, |C| = ({}, {}) and ({}, {})",
            p1.b.len(),
            p1.c.len(),
            p2.b.len(),
            p2.c.len()
        )));
    }
    let lambda1 = EigenspaceMode::NormalizedLambda1;
    let lambda0 = EigenspaceMode::AdjacencyLambda0;
    let biregular = p1.ell.is_some() && p1.ell == p2.ell && p1.k == p2.k;
    Ok(PieceCertificate {
        nl_cospectral: are_cospectral(&p1.graph, &p2.graph, MatrixKind::NormalizedLaplacian),
        b_degree_match: p1.k == p2.k,
        dim_b_eigenspace_1: (dim_eigenspace_on_b(p1, lambda1), dim_eigenspace_on_b(p2, lambda1)),
        biregular_cospectral_a: biregular.then(|| are_cospectral(&p1.graph, &p2.graph, MatrixKind::Adjacency)),
        dim_b_eigenspace_0: biregular.then(|| (dim_eigenspace_on_b(p1, lambda0), dim_eigenspace_on_b(p2, lambda0))),
    })
}

/// Host scaffold: a graph on `A ∪ A'` with `A'` marked, the size of `B`, and
/// whether `B` is a clique.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Blueprint {
    core: Graph,
    a_prime: VertexSet,
    b_size: usize,
    b_clique: bool,
}

impl Blueprint {
    pub fn new(core: Graph, a_prime: VertexSet, b_size: usize, b_clique: bool) -> Result<Self> {
        if !a_prime.fits(core.order()) {
            return Err(Error::InvalidVertexSet(core.order()));
        }
        if b_size == 0 {
            return Err(Error::SizeMismatch(String::from("blueprint needs |B| >= 1")));
        }
        Ok(Blueprint { core, a_prime, b_size, b_clique })
    }

    pub fn core(&self) -> &Graph {
        &self.core
    }

    pub fn a_prime(&self) -> VertexSet {
        self.a_prime
    }

    pub fn b_size(&self) -> usize {
        self.b_size
    }

    pub fn b_clique(&self) -> bool {
        self.b_clique
    }

    pub fn with_b_clique(&self, b_clique: bool) -> Blueprint {
        Blueprint { b_clique, ..self.clone() }
    }

    /// Degree of a `B` vertex after assembly with a piece of `B` degree `k`.
    pub fn assembled_b_degree(&self, k: usize) -> usize {
        k + self.a_prime.len() + if self.b_clique { self.b_size - 1 } else { 0 }
    }

    /// Positions of `B` and `C` in an assembly with `p`.
    pub fn layout(&self, p: &SwapPiece) -> (VertexSet, VertexSet) {
        let base = self.core.order();
        let nb = p.b.len();
        let b = VertexSet::from_mask(crate::graph::low_mask(nb) << base);
        let c = VertexSet::from_mask(crate::graph::low_mask(p.c.len()) << (base + nb));
        (b, c)
    }
}

/// The host with the piece attached: core vertices first, then `B`, then `C`,
/// each side in ascending order of the piece's labels.
pub fn assemble(bp: &Blueprint, p: &SwapPiece) -> Result<Graph> {
    if bp.b_size != p.b.len() {
        return Err(Error::SizeMismatch(format!("blueprint has |B| = {}, piece has {}", bp.b_size, p.b.len())));
    }
    let base = bp.core.order();
    let n = base + p.graph.order();
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge(n));
    }
    let mut g = bp.core.disjoint_union(&Graph::empty(p.graph.order())?)?;
    let mut position = alloc::vec![0usize; p.graph.order()];
    for (i, v) in p.b.iter().chain(p.c.iter()).enumerate() {
        position[v] = base + i;
    }
    for (u, v) in p.graph.edges() {
        g.add_edge(position[u], position[v]);
    }
    let bs: Vec<usize> = p.b.iter().map(|v| position[v]).collect();
    for a in bp.a_prime.iter() {
        for &b in &bs {
            g.add_edge(a, b);
        }
    }
    if bp.b_clique {
        for (i, &u) in bs.iter().enumerate() {
            for &v in &bs[i + 1..] {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Assemblies of two pieces that are cospectral for the normalized
/// Laplacian. The hypotheses are checked first and the conclusion is
/// verified on the result.
pub fn theorem1_pair(bp: &Blueprint, p1: &SwapPiece, p2: &SwapPiece) -> Result<(Graph, Graph)> {
    certify_pair(p1, p2)?.check_theorem1(bp.b_clique)?;
    let g1 = assemble(bp, p1)?;
    let g2 = assemble(bp, p2)?;
    if !are_cospectral(&g1, &g2, MatrixKind::NormalizedLaplacian) {
        return Err(Error::NotCospectral(String::from("normalized Laplacian keys differ")));
    }
    Ok((g1, g2))
}

/// Assemblies of two biregular pieces that are cospectral for `A + tD` at
/// every `t`. The hypotheses are checked first and the conclusion is verified
/// on the result.
pub fn theorem2_pair(bp: &Blueprint, p1: &SwapPiece, p2: &SwapPiece) -> Result<(Graph, Graph)> {
    certify_pair(p1, p2)?.check_theorem2()?;
    let g1 = assemble(bp, p1)?;
    let g2 = assemble(bp, p2)?;
    if !are_cospectral(&g1, &g2, MatrixKind::AdjacencyPlusTD) {
        return Err(Error::NotCospectral(String::from("A+tD keys differ")));
    }
    Ok((g1, g2))
}
