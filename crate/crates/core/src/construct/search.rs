//! Exhaustive search for pairs of swap pieces.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::canon::{canonical_form_colored, is_isomorphic};
use crate::graph::{bit, low_mask, Graph, VertexSet};
use crate::spectra::{spectral_key, MatrixKind, SpectralKey};

use super::{assemble, certify_pair, make_piece, Blueprint, PieceCertificate, SwapPiece};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchMode {
    /// Pieces with a regular `B` side, paired by normalized Laplacian spectrum.
    NL,
    /// Biregular pieces, paired by adjacency spectrum.
    Biregular,
}

/// Two pieces satisfying the hypotheses of a swapping theorem whose probe
/// assemblies are not isomorphic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedPair {
    pub p1: SwapPiece,
    pub p2: SwapPiece,
    pub certificate: PieceCertificate,
    /// The two pieces are the same graph with different sides marked as `B`.
    pub self_pair: bool,
}

/// One `A'` vertex joined to all of `B`.
pub fn probe_blueprint(b_size: usize, b_clique: bool) -> Blueprint {
    Blueprint::new(Graph::empty(1).expect("order 1"), VertexSet::from_mask(1), b_size, b_clique)
        .expect("valid blueprint")
}

/// All certified pairs among pieces with at most `max_vertices` vertices and
/// no isolated vertex, each piece taken up to isomorphism preserving sides.
///
/// Results are ordered by `(|B|, |C|, k)`, then by spectral key, then by
/// discovery order.
pub fn search_pieces(max_vertices: usize, mode: SearchMode) -> Vec<CertifiedPair> {
    let kind = match mode {
        SearchMode::NL => MatrixKind::NormalizedLaplacian,
        SearchMode::Biregular => MatrixKind::Adjacency,
    };
    let mut groups: BTreeMap<(usize, usize, usize, SpectralKey), Vec<SwapPiece>> = BTreeMap::new();
    for b in 1..max_vertices {
        for c in 1..=max_vertices - b {
            for k in 1..=c {
                let ell = match mode {
                    SearchMode::NL => None,
                    SearchMode::Biregular if (k * b) % c == 0 => Some(k * b / c),
                    SearchMode::Biregular => continue,
                };
                let mut seen = BTreeSet::new();
                for piece in biadjacency_pieces(b, c, k, ell) {
                    let colors: Vec<u32> = (0..b + c).map(|v| (v >= b) as u32).collect();
                    if !seen.insert(canonical_form_colored(piece.graph(), &colors)) {
                        continue;
                    }
                    let key = spectral_key(piece.graph(), kind);
                    groups.entry((b, c, k, key)).or_default().push(piece);
                }
            }
        }
    }

    let mut out = Vec::new();
    for ((b, _, _, _), pieces) in groups {
        for i in 0..pieces.len() {
            for j in i + 1..pieces.len() {
                let (p1, p2) = (&pieces[i], &pieces[j]);
                let Ok(certificate) = certify_pair(p1, p2) else { continue };
                let passes = match mode {
                    SearchMode::NL => certificate.check_theorem1(false).is_ok(),
                    SearchMode::Biregular => certificate.check_theorem2().is_ok(),
                };
                if !passes {
                    continue;
                }
                let probe = probe_blueprint(b, false);
                let g1 = assemble(&probe, p1).expect("sizes agree");
                let g2 = assemble(&probe, p2).expect("sizes agree");
                if is_isomorphic(&g1, &g2) {
                    continue;
                }
                out.push(CertifiedPair {
                    p1: p1.clone(),
                    p2: p2.clone(),
                    certificate,
                    self_pair: is_isomorphic(p1.graph(), p2.graph()),
                });
            }
        }
    }
    out
}

/// Pieces whose `b x c` biadjacency matrix has row sums `k`, nonincreasing
/// rows, and column sums `ell` (or at least one when `ell` is `None`).
/// `B` is `0..b` and `C` is `b..b + c`.
fn biadjacency_pieces(b: usize, c: usize, k: usize, ell: Option<usize>) -> Vec<SwapPiece> {
    let mut masks: Vec<u128> = (0..bit(c)).filter(|m| m.count_ones() as usize == k).collect();
    masks.sort_unstable_by(|x, y| y.cmp(x));
    let mut out = Vec::new();
    let mut rows = Vec::with_capacity(b);
    let mut col_sums = vec![0usize; c];
    fill(b, c, ell, &masks, 0, &mut rows, &mut col_sums, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn fill(
    b: usize,
    c: usize,
    ell: Option<usize>,
    masks: &[u128],
    from: usize,
    rows: &mut Vec<u128>,
    col_sums: &mut [usize],
    out: &mut Vec<SwapPiece>,
) {
    let remaining = b - rows.len();
    if remaining == 0 {
        if col_sums.iter().all(|&s| s >= 1) {
            out.push(piece_from_rows(b, c, rows));
        }
        return;
    }
    // columns still empty must be covered by the remaining rows
    let empty = col_sums.iter().filter(|&&s| s == 0).count();
    let k = masks.first().map_or(0, |m| m.count_ones() as usize);
    if empty > remaining * k {
        return;
    }
    for (idx, &m) in masks.iter().enumerate().skip(from) {
        if let Some(l) = ell {
            let ok = (0..c).all(|j| {
                let s = col_sums[j] + (m >> j & 1) as usize;
                s <= l && s + (remaining - 1) >= l
            });
            if !ok {
                continue;
            }
        }
        for (j, s) in col_sums.iter_mut().enumerate() {
            *s += (m >> j & 1) as usize;
        }
        rows.push(m);
        fill(b, c, ell, masks, idx, rows, col_sums, out);
        rows.pop();
        for (j, s) in col_sums.iter_mut().enumerate() {
            *s -= (m >> j & 1) as usize;
        }
    }
}

fn piece_from_rows(b: usize, c: usize, rows: &[u128]) -> SwapPiece {
    let mut edges = Vec::new();
    for (i, &m) in rows.iter().enumerate() {
        for j in 0..c {
            if m >> j & 1 == 1 {
                edges.push((i, b + j));
            }
        }
    }
    let g = Graph::from_edges(b + c, &edges).expect("valid piece edges");
    make_piece(g, VertexSet::from_mask(low_mask(b))).expect("rows have equal sums")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_matchings() {
        // 2 x 2 with row sums 1 and every column covered: only the identity
        let pieces = biadjacency_pieces(2, 2, 1, None);
        assert_eq!(pieces.len(), 1);
        let pieces = biadjacency_pieces(3, 3, 2, Some(2));
        assert!(pieces.iter().all(|p| p.ell() == Some(2)));
        assert!(!pieces.is_empty());
    }

    #[test]
    fn finds_the_star_pair() {
        let pairs = search_pieces(9, SearchMode::NL);
        let found = pairs.iter().any(|p| {
            let shapes = |s: &SwapPiece| {
                let mut comps: Vec<usize> = s.graph().components().iter().map(|c| c.len()).collect();
                comps.sort_unstable();
                comps
            };
            p.p1.b().len() == 7 && {
                let mut a = [shapes(&p.p1), shapes(&p.p2)];
                a.sort();
                a == [vec![2, 7], vec![4, 5]]
            }
        });
        assert!(found);
    }
}
