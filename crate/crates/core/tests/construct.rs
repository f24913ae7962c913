mod common;

use common::{close_multisets, is_eigenpair, star_pieces};
use cospec_core::canon::is_isomorphic;
use cospec_core::construct::{
    assemble, certify_pair, decomposition_check_theorem1, decomposition_check_theorem2, predicted_gammas_theorem1,
    search_pieces, theorem1_pair, theorem2_pair, Blueprint, SearchMode, SwapPiece,
};
use cospec_core::spectra::{build_matrix, harmonic_eigenpairs, spectral_key, symmetric_eigen, MatrixKind};
use cospec_core::{Error, Graph, VertexSet};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn hub(b: usize, clique: bool) -> Blueprint {
    Blueprint::new(Graph::empty(1).unwrap(), VertexSet::from_vertices([0]).unwrap(), b, clique).unwrap()
}

fn random_blueprint(rng: &mut ChaCha8Rng, b: usize) -> Blueprint {
    let n = rng.random_range(0..=5);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    let core = Graph::from_edges(n, &edges).unwrap();
    let a_prime: VertexSet = (0..n).filter(|_| rng.random_bool(0.5)).collect();
    Blueprint::new(core, a_prime, b, rng.random_bool(0.5)).unwrap()
}

/// Biregular piece from a circulant start, randomised by degree-preserving switches.
fn biregular_piece(b: usize, c: usize, k: usize, seed: u64) -> SwapPiece {
    let mut rows: Vec<Vec<bool>> = (0..b).map(|i| (0..c).map(|j| (j + c - (i * k) % c) % c < k).collect()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
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
    common::piece_from_rows(b, c, &lists)
}

fn biregular_strategy() -> impl Strategy<Value = SwapPiece> {
    (2usize..=6, 2usize..=6, any::<u64>())
        .prop_flat_map(|(b, c, seed)| (Just(b), Just(c), 1..=c, Just(seed)))
        .prop_filter("C degree must be an integer", |&(b, c, k, _)| (k * b) % c == 0)
        .prop_map(|(b, c, k, seed)| biregular_piece(b, c, k, seed))
        .prop_filter("disconnected", |p| p.graph().components().len() == 1)
}

fn split(x: &[f64], nb: usize) -> (Vec<f64>, Vec<f64>) {
    let b = x.iter().enumerate().map(|(i, &v)| if i < nb { v } else { 0.0 }).collect();
    let c = x.iter().enumerate().map(|(i, &v)| if i < nb { 0.0 } else { v }).collect();
    (b, c)
}

fn nonzero(x: &[f64]) -> bool {
    x.iter().any(|v| v.abs() > 1e-6)
}

#[test]
fn star_pair_end_to_end() {
    let (p1, p2) = (star_pieces(1, 6), star_pieces(4, 3));
    for clique in [false, true] {
        let (g1, g2) = theorem1_pair(&hub(7, clique), &p1, &p2).unwrap();
        assert_eq!(g1.order(), 10);
        assert_eq!(
            spectral_key(&g1, MatrixKind::NormalizedLaplacian),
            spectral_key(&g2, MatrixKind::NormalizedLaplacian)
        );
        assert!(!is_isomorphic(&g1, &g2));
        assert!(decomposition_check_theorem1(&hub(7, clique), &p1, &p2).unwrap());
    }
    assert_eq!(certify_pair(&p1, &p2).unwrap().dim_b_eigenspace_1, (5, 5));
}

#[test]
fn clique_needs_equal_dimensions() {
    let cert = certify_pair(&star_pieces(1, 6), &star_pieces(4, 3)).unwrap();
    let mut broken = cert.clone();
    broken.dim_b_eigenspace_1 = (5, 4);
    assert!(broken.check_theorem1(false).is_ok());
    assert!(matches!(broken.check_theorem1(true), Err(Error::CertificateFailed(_))));
}

#[test]
fn normalized_search_finds_certified_pairs() {
    let pairs = search_pieces(9, SearchMode::NL);
    assert!(!pairs.is_empty());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for pair in &pairs {
        assert!(pair.certificate.check_theorem1(false).is_ok());
        for _ in 0..3 {
            let bp = random_blueprint(&mut rng, pair.p1.b().len());
            let bp = if pair.certificate.check_theorem1(true).is_ok() { bp } else { bp.with_b_clique(false) };
            let (g1, g2) = theorem1_pair(&bp, &pair.p1, &pair.p2).unwrap();
            assert_eq!(g1.order(), g2.order());
            assert!(decomposition_check_theorem1(&bp, &pair.p1, &pair.p2).unwrap());
        }
    }
}

#[test]
fn biregular_search_self_piece() {
    let pairs = search_pieces(12, SearchMode::Biregular);
    let selfs: Vec<_> = pairs.iter().filter(|p| p.self_pair).collect();
    assert!(!selfs.is_empty());
    let p = selfs[0];
    assert_eq!((p.p1.b().len(), p.p1.c().len(), p.p1.k(), p.p1.ell()), (6, 6, 3, Some(3)));
    assert_eq!(p.certificate.dim_b_eigenspace_0, Some((2, 2)));
    let (g1, g2) = theorem2_pair(&hub(6, false), &p.p1, &p.p2).unwrap();
    assert!(!is_isomorphic(&g1, &g2));
    for kind in MatrixKind::ALL {
        assert_eq!(spectral_key(&g1, kind), spectral_key(&g2, kind));
    }
    for t in [-2i64, -1, 0, 1, 3] {
        let t = BigRational::from_integer(t.into());
        for clique in [false, true] {
            assert!(decomposition_check_theorem2(&hub(6, clique), &p.p1, &p.p2, &t).unwrap());
        }
    }
}

#[test]
fn disconnected_core_gives_disjoint_union() {
    let bp = Blueprint::new(Graph::path(3).unwrap(), VertexSet::EMPTY, 7, false).unwrap();
    let (p1, p2) = (star_pieces(1, 6), star_pieces(4, 3));
    let (g1, _) = theorem1_pair(&bp, &p1, &p2).unwrap();
    let bare = Blueprint::new(Graph::empty(0).unwrap(), VertexSet::EMPTY, 7, false).unwrap();
    let piece_alone = assemble(&bare, &p1).unwrap();
    assert_eq!(g1, Graph::path(3).unwrap().disjoint_union(&piece_alone).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn regular_side_eigenvalue_one_splits(p in common::regular_side_piece(5)) {
        let nb = p.b().len();
        let m = build_matrix(p.graph(), MatrixKind::NormalizedLaplacian, None).unwrap().to_f64();
        let eig = symmetric_eigen(&m).unwrap();
        for (l, x) in eig.values.iter().zip(&eig.vectors) {
            if (l - 1.0).abs() < 1e-8 {
                let (b, c) = split(x, nb);
                prop_assert!(!nonzero(&b) || is_eigenpair(&m, &b, 1.0, 1e-9));
                prop_assert!(!nonzero(&c) || is_eigenpair(&m, &c, 1.0, 1e-9));
            }
        }
    }

    #[test]
    fn regular_side_reflection(p in common::regular_side_piece(5)) {
        let nb = p.b().len();
        let m = build_matrix(p.graph(), MatrixKind::NormalizedLaplacian, None).unwrap().to_f64();
        let eig = symmetric_eigen(&m).unwrap();
        for (l, x) in eig.values.iter().zip(&eig.vectors) {
            let (b, c) = split(x, nb);
            let reflected: Vec<f64> = b.iter().zip(&c).map(|(u, v)| u - v).collect();
            prop_assert!(is_eigenpair(&m, &reflected, 2.0 - l, 1e-9));
        }
    }

    #[test]
    fn regular_side_interior_vectors_balance(p in common::regular_side_piece(5)) {
        let pairs = harmonic_eigenpairs(p.graph()).unwrap();
        let d = p.graph().degrees();
        let nb = p.b().len();
        for pair in &pairs[1..pairs.len() - 1] {
            let on_b: f64 = (0..nb).map(|v| pair.y[v] * d[v] as f64).sum();
            let on_c: f64 = (nb..d.len()).map(|v| pair.y[v] * d[v] as f64).sum();
            prop_assert!(on_b.abs() < 1e-9 && on_c.abs() < 1e-9);
            let plain: f64 = pair.y[..nb].iter().sum();
            prop_assert!(plain.abs() < 1e-9);
        }
    }

    #[test]
    fn biregular_eigenvalue_zero_splits(p in biregular_strategy()) {
        let nb = p.b().len();
        let m = build_matrix(p.graph(), MatrixKind::Adjacency, None).unwrap().to_f64();
        let eig = symmetric_eigen(&m).unwrap();
        for (l, x) in eig.values.iter().zip(&eig.vectors) {
            if l.abs() < 1e-8 {
                let (b, c) = split(x, nb);
                prop_assert!(!nonzero(&b) || is_eigenpair(&m, &b, 0.0, 1e-9));
                prop_assert!(!nonzero(&c) || is_eigenpair(&m, &c, 0.0, 1e-9));
            }
        }
    }

    #[test]
    fn biregular_reflection(p in biregular_strategy()) {
        let nb = p.b().len();
        let m = build_matrix(p.graph(), MatrixKind::Adjacency, None).unwrap().to_f64();
        let eig = symmetric_eigen(&m).unwrap();
        for (l, x) in eig.values.iter().zip(&eig.vectors) {
            let (b, c) = split(x, nb);
            let reflected: Vec<f64> = b.iter().zip(&c).map(|(u, v)| u - v).collect();
            prop_assert!(is_eigenpair(&m, &reflected, -l, 1e-9));
        }
    }

    #[test]
    fn biregular_interior_vectors_balance(p in biregular_strategy()) {
        let nb = p.b().len();
        let m = build_matrix(p.graph(), MatrixKind::Adjacency, None).unwrap().to_f64();
        let eig = symmetric_eigen(&m).unwrap();
        let top = ((p.k() * p.ell().unwrap()) as f64).sqrt();
        prop_assert!((eig.values[eig.values.len() - 1] - top).abs() < 1e-9);
        prop_assert!((eig.values[0] + top).abs() < 1e-9);
        for x in &eig.vectors[1..eig.vectors.len() - 1] {
            let on_b: f64 = x[..nb].iter().sum();
            let on_c: f64 = x[nb..].iter().sum();
            prop_assert!(on_b.abs() < 1e-9 && on_c.abs() < 1e-9);
        }
    }

    #[test]
    fn clique_variant_identities(lambda in 0.01f64..1.99, k in 1usize..6, extra in 0usize..10) {
        prop_assume!((lambda - 1.0).abs() > 1e-3);
        let s = k + extra;
        let (kf, sf) = (k as f64, s as f64);
        let root = (1.0 + 4.0 * (1.0 - lambda).powi(2) * sf * kf).sqrt();
        let t1 = (1.0 + root) / (2.0 * kf * (1.0 - lambda));
        let t2 = (1.0 - root) / (2.0 * kf * (1.0 - lambda));
        let g1 = (2.0 * sf + 1.0 - root) / (2.0 * sf);
        let g2 = (2.0 * sf + 1.0 + root) / (2.0 * sf);
        for (t, g) in [(t1, g1), (t2, g2)] {
            prop_assert!((t * (1.0 - g) - (1.0 - lambda)).abs() < 1e-9);
            prop_assert!((t * (1.0 - lambda) * kf - 1.0 - (1.0 - g) * sf).abs() < 1e-9);
        }
        let predicted = predicted_gammas_theorem1(&[0.0, lambda, 2.0 - lambda, 2.0], k, s, true, 0, 0).unwrap();
        prop_assert!(close_multisets(&predicted, &[g1, g2], 1e-12));
    }

    #[test]
    fn random_assemblies_stay_cospectral(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bp = random_blueprint(&mut rng, 7);
        let (p1, p2) = (star_pieces(1, 6), star_pieces(4, 3));
        let (g1, g2) = theorem1_pair(&bp, &p1, &p2).unwrap();
        prop_assert!(decomposition_check_theorem1(&bp, &p1, &p2).unwrap());
        let s1 = cospec_core::spectra::numeric_spectrum(&g1, MatrixKind::NormalizedLaplacian, None).unwrap();
        let s2 = cospec_core::spectra::numeric_spectrum(&g2, MatrixKind::NormalizedLaplacian, None).unwrap();
        prop_assert!(close_multisets(&s1.eigenvalues, &s2.eigenvalues, 1e-9));
    }
}
