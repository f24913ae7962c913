#![allow(dead_code)]

use cospec_core::construct::{make_piece, SwapPiece};
use cospec_core::{Graph, VertexSet};
use proptest::prelude::*;

/// Graph on `lo..=hi` vertices with each edge present independently.
pub fn graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

pub fn without_isolated(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    graph(lo, hi).prop_filter("isolated vertex", |g| g.isolated_vertices().is_empty())
}

/// Bipartite graph with sides `0..b` and `b..b + c`.
pub fn bipartite(max_side: usize) -> impl Strategy<Value = (Graph, usize)> {
    (1..=max_side, 1..=max_side).prop_flat_map(|(b, c)| {
        proptest::collection::vec(any::<bool>(), b * c).prop_map(move |bits| {
            let edges: Vec<(usize, usize)> = (0..b * c).filter(|&i| bits[i]).map(|i| (i / c, b + i % c)).collect();
            (Graph::from_edges(b + c, &edges).unwrap(), b)
        })
    })
}

/// Connected piece with `B = 0..b` of common degree `k` and no isolated vertex.
pub fn regular_side_piece(max_side: usize) -> impl Strategy<Value = SwapPiece> {
    (1..=max_side, 1..=max_side)
        .prop_flat_map(|(b, c)| (Just(b), Just(c), 1..=c))
        .prop_flat_map(|(b, c, k)| {
            proptest::collection::vec(proptest::sample::subsequence((0..c).collect::<Vec<_>>(), k), b)
                .prop_map(move |rows| piece_from_rows(b, c, &rows))
        })
        .prop_filter("isolated or disconnected", |p| {
            p.graph().isolated_vertices().is_empty() && p.graph().components().len() == 1
        })
}

pub fn piece_from_rows(b: usize, c: usize, rows: &[Vec<usize>]) -> SwapPiece {
    let edges: Vec<(usize, usize)> =
        rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |&j| (i, b + j))).collect();
    let g = Graph::from_edges(b + c, &edges).unwrap();
    make_piece(g, VertexSet::from_vertices(0..b).unwrap()).unwrap()
}

pub fn star_pieces(a: usize, b: usize) -> SwapPiece {
    let g = Graph::star(a).unwrap().disjoint_union(&Graph::star(b).unwrap()).unwrap();
    // the leaves; K_{1,1} keeps its first vertex in C
    let leaves: VertexSet = (1..=a).chain(a + 2..a + 2 + b).collect();
    make_piece(g, leaves).unwrap()
}

pub fn mat_vec(m: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    m.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

/// Whether `m x = lambda x` up to `tol` relative to the sizes involved.
pub fn is_eigenpair(m: &[Vec<f64>], x: &[f64], lambda: f64, tol: f64) -> bool {
    let scale = x.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let norm = m.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs())) * m.len() as f64;
    mat_vec(m, x).iter().zip(x).all(|(y, xv)| (y - lambda * xv).abs() <= tol * scale * (1.0 + norm + lambda.abs()))
}

pub fn close_multisets(a: &[f64], b: &[f64], tol: f64) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol)
}
