use alloc::vec::Vec;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::{build_matrix, symmetric_eigen, MatrixKind};

/// Tolerance for the eigenvector relations, relative to the largest vector
/// entry and the size of the coefficients involved.
pub const RELATION_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct NumericSpectrum {
    pub kind: MatrixKind,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
}

/// An eigenvalue of the normalized Laplacian with a harmonic eigenvector
/// `y = D^{-1/2} x`, where `x` is a unit eigenvector.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicPair {
    pub lambda: f64,
    pub y: Vec<f64>,
}

pub fn numeric_spectrum(g: &Graph, kind: MatrixKind, t: Option<&BigRational>) -> Result<NumericSpectrum> {
    let m = build_matrix(g, kind, t)?;
    let eigen = symmetric_eigen(&m.to_f64())?;
    Ok(NumericSpectrum { kind, eigenvalues: eigen.values })
}

/// All `n` harmonic eigenpairs, eigenvalues ascending.
pub fn harmonic_eigenpairs(g: &Graph) -> Result<Vec<HarmonicPair>> {
    if let Some(v) = g.isolated_vertices().iter().next() {
        return Err(Error::IsolatedVertex(v));
    }
    let m = build_matrix(g, MatrixKind::NormalizedLaplacian, None)?;
    let eigen = symmetric_eigen(&m.to_f64())?;
    let scale: Vec<f64> = g.degrees().iter().map(|&d| 1.0 / libm::sqrt(d as f64)).collect();
    Ok(eigen
        .values
        .into_iter()
        .zip(eigen.vectors)
        .map(|(lambda, x)| HarmonicPair { lambda, y: x.iter().zip(&scale).map(|(a, s)| a * s).collect() })
        .collect())
}

fn max_abs(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Whether `Σ_{u~v} y(u) = (1 - λ) y(v) d(v)` at every vertex.
pub fn satisfies_harmonic_relation(g: &Graph, y: &[f64], lambda: f64) -> Result<bool> {
    check_relation(g, y, |v, yv| (1.0 - lambda) * yv * g.degree(v) as f64, 1.0 + lambda.abs())
}

/// Whether `Σ_{u~v} x(u) = (λ - t d(v)) x(v)` at every vertex, that is,
/// whether `x` is an eigenvector of `A + tD` for `λ`.
pub fn verify_pencil_relation(g: &Graph, x: &[f64], lambda: f64, t: f64) -> Result<bool> {
    check_relation(g, x, |v, xv| (lambda - t * g.degree(v) as f64) * xv, lambda.abs() + t.abs())
}

fn check_relation(g: &Graph, x: &[f64], rhs: impl Fn(usize, f64) -> f64, coeff: f64) -> Result<bool> {
    if x.len() != g.order() {
        return Err(Error::SizeMismatch(alloc::format!(
            "vector of length {} for a graph of order {}",
            x.len(),
            g.order()
        )));
    }
    let scale = max_abs(x);
    if scale == 0.0 {
        return Err(Error::ZeroVector);
    }
    let dmax = g.degrees().into_iter().max().unwrap_or(0) as f64;
    let tol = RELATION_TOLERANCE * scale * (1.0 + coeff) * dmax.max(1.0);
    Ok((0..g.order()).all(|v| {
        let lhs: f64 = g.neighbors(v).iter().map(|u| x[u]).sum();
        (lhs - rhs(v, x[v])).abs() <= tol
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
    }

    #[test]
    fn complete_bipartite_spectrum() {
        let g = Graph::complete_bipartite(2, 3).unwrap();
        let s = numeric_spectrum(&g, MatrixKind::NormalizedLaplacian, None).unwrap();
        assert!(close(&s.eigenvalues, &[0.0, 1.0, 1.0, 1.0, 2.0]));
    }

    #[test]
    fn small_spectra() {
        let k2 = Graph::complete(2).unwrap();
        let s = numeric_spectrum(&k2, MatrixKind::Adjacency, None).unwrap();
        assert!(close(&s.eigenvalues, &[-1.0, 1.0]));
        let e3 = Graph::empty(3).unwrap();
        let s = numeric_spectrum(&e3, MatrixKind::NormalizedLaplacian, None).unwrap();
        assert!(close(&s.eigenvalues, &[0.0, 0.0, 0.0]));
    }

    #[test]
    fn harmonic_pairs_of_k2() {
        let pairs = harmonic_eigenpairs(&Graph::complete(2).unwrap()).unwrap();
        assert!((pairs[0].lambda).abs() < 1e-12);
        assert!((pairs[0].y[0] - pairs[0].y[1]).abs() < 1e-12);
        assert!((pairs[1].lambda - 2.0).abs() < 1e-12);
        assert!((pairs[1].y[0] + pairs[1].y[1]).abs() < 1e-12);
    }

    #[test]
    fn harmonic_pairs_of_c4() {
        let g = Graph::cycle(4).unwrap();
        let pairs = harmonic_eigenpairs(&g).unwrap();
        let lambdas: Vec<f64> = pairs.iter().map(|p| p.lambda).collect();
        assert!(close(&lambdas, &[0.0, 1.0, 1.0, 2.0]));
        let y0 = &pairs[0].y;
        assert!(y0.iter().all(|&v| (v - y0[0]).abs() < 1e-12));
        for p in &pairs {
            assert!(satisfies_harmonic_relation(&g, &p.y, p.lambda).unwrap());
        }
    }

    #[test]
    fn isolated_vertex_rejected() {
        let g = Graph::complete(2).unwrap().disjoint_union(&Graph::empty(1).unwrap()).unwrap();
        assert_eq!(harmonic_eigenpairs(&g), Err(Error::IsolatedVertex(2)));
    }

    #[test]
    fn pencil_relation_on_k2() {
        let k2 = Graph::complete(2).unwrap();
        for t in [0.0, 1.0, -1.0] {
            assert!(verify_pencil_relation(&k2, &[1.0, 1.0], 1.0 + t, t).unwrap());
        }
        assert!(verify_pencil_relation(&k2, &[1.0, -1.0], -1.0, 0.0).unwrap());
        for lambda in [-1.0, 0.0, 1.0, 2.5] {
            assert!(!verify_pencil_relation(&k2, &[1.0, 0.0], lambda, 0.0).unwrap());
        }
        assert_eq!(verify_pencil_relation(&k2, &[0.0, 0.0], 1.0, 0.0), Err(Error::ZeroVector));
        assert!(verify_pencil_relation(&k2, &[1.0], 1.0, 0.0).is_err());
    }
}
