//! Randomised checks of the eigenvector facts and relations behind the
//! swapping constructions.

use cospec_core::construct::{make_piece, SwapPiece};
use cospec_core::spectra::{
    build_matrix, harmonic_eigenpairs, numeric_spectrum, satisfies_harmonic_relation, symmetric_eigen,
    verify_pencil_relation, MatrixKind,
};
use cospec_core::{Graph, VertexSet};
use num_rational::BigRational;
use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const TOLERANCE: f64 = 1e-9;

/// Each property is checked on this many random instances.
pub const INSTANCES: usize = 100;

pub fn random_graph(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> Graph {
    let n = rng.random_range(lo..=hi);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("valid edges")
}

pub fn random_graph_without_isolated(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> Graph {
    loop {
        let g = random_graph(rng, lo, hi);
        if g.isolated_vertices().is_empty() {
            return g;
        }
    }
}

fn piece_from_rows(b: usize, c: usize, rows: &[Vec<usize>]) -> SwapPiece {
    let edges: Vec<(usize, usize)> =
        rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |&j| (i, b + j))).collect();
    let g = Graph::from_edges(b + c, &edges).expect("valid edges");
    make_piece(g, VertexSet::from_vertices(0..b).expect("in range")).expect("equal row sums")
}

/// Connected piece with `B = 0..b` of common degree `k`.
pub fn random_regular_side_piece(rng: &mut ChaCha8Rng, max_side: usize) -> SwapPiece {
    loop {
        let b = rng.random_range(1..=max_side);
        let c = rng.random_range(1..=max_side);
        let k = rng.random_range(1..=c);
        let rows: Vec<Vec<usize>> = (0..b).map(|_| sample(rng, c, k).into_vec()).collect();
        let p = piece_from_rows(b, c, &rows);
        if p.graph().components().len() == 1 && p.graph().order() > 1 {
            return p;
        }
    }
}

/// Connected biregular piece from a circulant start randomised by
/// degree-preserving switches.
pub fn random_biregular_piece(rng: &mut ChaCha8Rng) -> SwapPiece {
    loop {
        let b = rng.random_range(2..=6);
        let c = rng.random_range(2..=6);
        let k = rng.random_range(1..=c);
        if (k * b) % c != 0 {
            continue;
        }
        let mut rows: Vec<Vec<bool>> =
            (0..b).map(|i| (0..c).map(|j| (j + c - (i * k) % c) % c < k).collect()).collect();
        for _ in 0..40 {
            let (i1, i2) = (rng.random_range(0..b), rng.random_range(0..b));
            let (j1, j2) = (rng.random_range(0..c), rng.random_range(0..c));
            if rows[i1][j1] && rows[i2][j2] && !rows[i1][j2] && !rows[i2][j1] {
                rows[i1][j1] = false;
                rows[i2][j2] = false;
                rows[i1][j2] = true;
                rows[i2][j1] = true;
            }
        }
        let lists: Vec<Vec<usize>> = rows.iter().map(|r| (0..c).filter(|&j| r[j]).collect()).collect();
        let p = piece_from_rows(b, c, &lists);
        if p.graph().components().len() == 1 {
            return p;
        }
    }
}

/// Random bipartite graph with sides `0..b` and `b..b + c`.
pub fn random_bipartite(rng: &mut ChaCha8Rng, max_side: usize) -> Graph {
    let b = rng.random_range(1..=max_side);
    let c = rng.random_range(1..=max_side);
    let edges: Vec<(usize, usize)> =
        (0..b).flat_map(|i| (0..c).map(move |j| (i, b + j))).filter(|_| rng.random_bool(0.5)).collect();
    Graph::from_edges(b + c, &edges).expect("valid edges")
}

fn mat_vec(m: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
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

fn split(x: &[f64], nb: usize) -> (Vec<f64>, Vec<f64>) {
    let b = x.iter().enumerate().map(|(i, &v)| if i < nb { v } else { 0.0 }).collect();
    let c = x.iter().enumerate().map(|(i, &v)| if i < nb { 0.0 } else { v }).collect();
    (b, c)
}

fn nonzero(x: &[f64]) -> bool {
    x.iter().any(|v| v.abs() > 1e-6)
}

/// Eigenvectors of `m` for `target` split into eigenvectors on each side.
fn splits_at(m: &[Vec<f64>], nb: usize, target: f64) -> bool {
    let eig = symmetric_eigen(m).expect("converges");
    eig.values.iter().zip(&eig.vectors).filter(|(l, _)| (*l - target).abs() < 1e-8).all(|(_, x)| {
        let (b, c) = split(x, nb);
        (!nonzero(&b) || is_eigenpair(m, &b, target, TOLERANCE))
            && (!nonzero(&c) || is_eigenpair(m, &c, target, TOLERANCE))
    })
}

/// `b - c` is an eigenvector for `reflect(lambda)`.
fn reflects(m: &[Vec<f64>], nb: usize, reflect: impl Fn(f64) -> f64) -> bool {
    let eig = symmetric_eigen(m).expect("converges");
    eig.values.iter().zip(&eig.vectors).all(|(&l, x)| {
        let (b, c) = split(x, nb);
        let r: Vec<f64> = b.iter().zip(&c).map(|(u, v)| u - v).collect();
        is_eigenpair(m, &r, reflect(l), TOLERANCE)
    })
}

pub fn regular_side_eigenvalue_one_splits(p: &SwapPiece) -> bool {
    let m = build_matrix(p.graph(), MatrixKind::NormalizedLaplacian, None).expect("matrix").to_f64();
    splits_at(&m, p.b().len(), 1.0)
}

pub fn regular_side_reflection(p: &SwapPiece) -> bool {
    let m = build_matrix(p.graph(), MatrixKind::NormalizedLaplacian, None).expect("matrix").to_f64();
    reflects(&m, p.b().len(), |l| 2.0 - l)
}

pub fn regular_side_interior_balance(p: &SwapPiece) -> bool {
    let pairs = harmonic_eigenpairs(p.graph()).expect("no isolated vertex");
    let d = p.graph().degrees();
    let nb = p.b().len();
    pairs[1..pairs.len() - 1].iter().all(|pair| {
        let on_b: f64 = (0..nb).map(|v| pair.y[v] * d[v] as f64).sum();
        let on_c: f64 = (nb..d.len()).map(|v| pair.y[v] * d[v] as f64).sum();
        let plain: f64 = pair.y[..nb].iter().sum();
        on_b.abs() < TOLERANCE && on_c.abs() < TOLERANCE && plain.abs() < TOLERANCE
    })
}

pub fn biregular_eigenvalue_zero_splits(p: &SwapPiece) -> bool {
    let m = build_matrix(p.graph(), MatrixKind::Adjacency, None).expect("matrix").to_f64();
    splits_at(&m, p.b().len(), 0.0)
}

pub fn biregular_reflection(p: &SwapPiece) -> bool {
    let m = build_matrix(p.graph(), MatrixKind::Adjacency, None).expect("matrix").to_f64();
    reflects(&m, p.b().len(), |l| -l)
}

pub fn biregular_interior_balance(p: &SwapPiece) -> bool {
    let nb = p.b().len();
    let m = build_matrix(p.graph(), MatrixKind::Adjacency, None).expect("matrix").to_f64();
    let eig = symmetric_eigen(&m).expect("converges");
    let top = ((p.k() * p.ell().expect("biregular")) as f64).sqrt();
    let last = eig.values.len() - 1;
    (eig.values[last] - top).abs() < TOLERANCE
        && (eig.values[0] + top).abs() < TOLERANCE
        && eig.vectors[1..last].iter().all(|x| {
            let on_b: f64 = x[..nb].iter().sum();
            let on_c: f64 = x[nb..].iter().sum();
            on_b.abs() < TOLERANCE && on_c.abs() < TOLERANCE
        })
}

/// The local averaging relation for every harmonic eigenvector, and its
/// failure for a shifted eigenvalue.
pub fn harmonic_relation(g: &Graph) -> bool {
    let pairs = harmonic_eigenpairs(g).expect("no isolated vertex");
    let holds = pairs.iter().all(|p| satisfies_harmonic_relation(g, &p.y, p.lambda).expect("sizes agree"));
    let last = pairs.last().expect("nonempty");
    holds && !satisfies_harmonic_relation(g, &last.y, last.lambda - 0.5).expect("sizes agree")
}

/// The eigenvector relation of `A + tD` at a rational `t`.
pub fn pencil_relation(g: &Graph, num: i64, den: i64) -> bool {
    let t = BigRational::new(num.into(), den.into());
    let m = build_matrix(g, MatrixKind::AdjacencyPlusTD, Some(&t)).expect("matrix").to_f64();
    let eig = symmetric_eigen(&m).expect("converges");
    let tf = num as f64 / den as f64;
    eig.values
        .iter()
        .zip(&eig.vectors)
        .all(|(&l, x)| verify_pencil_relation(g, x, l, tf).expect("sizes agree") && is_eigenpair(&m, x, l, TOLERANCE))
}

/// Symmetric adjacency spectrum, equal `L` and `Q` spectra, and a normalized
/// Laplacian spectrum symmetric about 1 once isolated vertices are removed.
pub fn bipartite_symmetries(g: &Graph) -> bool {
    let spectrum = |g: &Graph, kind| numeric_spectrum(g, kind, None).expect("converges").eigenvalues;
    let a = spectrum(g, MatrixKind::Adjacency);
    let neg: Vec<f64> = a.iter().map(|x| -x).collect();
    let stripped = g.induced_subgraph(g.vertices().difference(g.isolated_vertices())).expect("subset");
    let nl = spectrum(&stripped, MatrixKind::NormalizedLaplacian);
    let mirrored: Vec<f64> = nl.iter().map(|x| 2.0 - x).collect();
    close_multisets(&a, &neg, TOLERANCE)
        && close_multisets(&spectrum(g, MatrixKind::Laplacian), &spectrum(g, MatrixKind::SignlessLaplacian), TOLERANCE)
        && close_multisets(&nl, &mirrored, TOLERANCE)
}
