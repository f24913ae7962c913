//! Eigenvalues carried over from a piece to an assembly.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::spectra::{numeric_spectrum, MatrixKind};

use super::{assemble, dim_eigenspace_on_b, dim_eigenspace_on_c, Blueprint, EigenspaceMode, SwapPiece};

/// Matching tolerance for comparing predicted and computed spectra.
pub const DECOMPOSITION_TOLERANCE: f64 = 1e-7;

// numeric eigenvalues of a piece are classified as 0, 1 or paired within this
const CLASSIFY: f64 = 1e-8;

fn sorted(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// Splits an ascending multiset into the values below `centre` and those
/// equal to it, after checking symmetry about `centre`.
fn split_symmetric(values: &[f64], centre: f64) -> Result<(Vec<f64>, usize)> {
    let n = values.len();
    for i in 0..n {
        let mirror = 2.0 * centre - values[n - 1 - i];
        if (values[i] - mirror).abs() > CLASSIFY.max(CLASSIFY * centre.abs()) * 10.0 {
            return Err(Error::InvalidEigenvalues(format!("multiset is not symmetric about {centre}")));
        }
    }
    let at_centre = values.iter().filter(|&&x| (x - centre).abs() <= CLASSIFY).count();
    let below: Vec<f64> = values.iter().copied().filter(|&x| x < centre - CLASSIFY).collect();
    if 2 * below.len() + at_centre != n {
        return Err(Error::InvalidEigenvalues(format!("values too close to {centre} to classify")));
    }
    Ok((below, at_centre))
}

/// Normalized Laplacian eigenvalues an assembly inherits from a piece with
/// spectrum `lambdas` (the whole spectrum of the piece).
///
/// One eigenvalue 0 and one eigenvalue 2 belong to the vectors constant on
/// `B` and on `C` and are not transferred. Without a clique on `B`, every
/// other `λ` becomes `1 - (1 - λ)√(k/s)`. With a clique, eigenvalue-1 vectors
/// supported on `B` give `1 + 1/s`, those supported on `C` give `1`, and each
/// pair `λ, 2 - λ` gives the two roots `(2s + 1 ∓ √(1 + 4(1 - λ)²sk)) / 2s`.
pub fn predicted_gammas_theorem1(
    lambdas: &[f64],
    k: usize,
    s: usize,
    b_clique: bool,
    dim1_on_b: usize,
    dim1_on_c: usize,
) -> Result<Vec<f64>> {
    if lambdas.len() < 2 {
        return Err(Error::InvalidEigenvalues(String::from("a piece has at least two eigenvalues")));
    }
    let all = sorted(lambdas);
    if all[0] < -CLASSIFY || all[all.len() - 1] > 2.0 + CLASSIFY {
        return Err(Error::InvalidEigenvalues(String::from("values outside [0, 2]")));
    }
    if all[0].abs() > CLASSIFY || (all[all.len() - 1] - 2.0).abs() > CLASSIFY {
        return Err(Error::InvalidEigenvalues(String::from("a bipartite piece has eigenvalues 0 and 2")));
    }
    if k == 0 || s < k {
        return Err(Error::InvalidEigenvalues(format!("degrees k = {k}, s = {s} are inconsistent")));
    }
    let interior = &all[1..all.len() - 1];
    let (k, s) = (k as f64, s as f64);
    if !b_clique {
        let r = libm::sqrt(k / s);
        return Ok(sorted(&interior.iter().map(|&l| 1.0 - (1.0 - l) * r).collect::<Vec<_>>()));
    }
    let (below, ones) = split_symmetric(interior, 1.0)?;
    if ones != dim1_on_b + dim1_on_c {
        return Err(Error::InvalidEigenvalues(format!(
            "eigenvalue 1 has multiplicity {ones}, expected {dim1_on_b} + {dim1_on_c}"
        )));
    }
    let mut out = Vec::with_capacity(interior.len());
    out.extend(core::iter::repeat_n(1.0 + 1.0 / s, dim1_on_b));
    out.extend(core::iter::repeat_n(1.0, dim1_on_c));
    for l in below {
        let root = libm::sqrt(1.0 + 4.0 * (1.0 - l) * (1.0 - l) * s * k);
        out.push((2.0 * s + 1.0 - root) / (2.0 * s));
        out.push((2.0 * s + 1.0 + root) / (2.0 * s));
    }
    Ok(sorted(&out))
}

/// `A + tD` eigenvalues an assembly inherits from a `(k, ℓ)`-biregular piece
/// with adjacency spectrum `lambdas`.
///
/// The eigenvalues `±√(kℓ)` are not transferred. Eigenvalue-0 vectors on `B`
/// give `ts` (`ts - 1` with a clique on `B`), those on `C` give `tℓ`, and each
/// pair `±λ` gives `(t(s + ℓ) ± √(t²(s - ℓ)² + 4λ²)) / 2`, or with a clique
/// `(t(s + ℓ) - 1 ± √((1 - t(s - ℓ))² + 4λ²)) / 2`.
#[allow(clippy::too_many_arguments)]
pub fn predicted_gammas_theorem2(
    lambdas: &[f64],
    k: usize,
    ell: usize,
    s: usize,
    t: f64,
    b_clique: bool,
    dim0_on_b: usize,
    dim0_on_c: usize,
) -> Result<Vec<f64>> {
    if lambdas.len() < 2 {
        return Err(Error::InvalidEigenvalues(String::from("a piece has at least two eigenvalues")));
    }
    let all = sorted(lambdas);
    let top = libm::sqrt((k * ell) as f64);
    if (all[all.len() - 1] - top).abs() > CLASSIFY * top.max(1.0) || (all[0] + top).abs() > CLASSIFY * top.max(1.0) {
        return Err(Error::InvalidEigenvalues(String::from("extreme eigenvalues are not ±√(kℓ)")));
    }
    let interior = &all[1..all.len() - 1];
    let (below, zeros) = split_symmetric(interior, 0.0)?;
    if zeros != dim0_on_b + dim0_on_c {
        return Err(Error::InvalidEigenvalues(format!(
            "eigenvalue 0 has multiplicity {zeros}, expected {dim0_on_b} + {dim0_on_c}"
        )));
    }
    let (s, ell) = (s as f64, ell as f64);
    let shift = if b_clique { 1.0 } else { 0.0 };
    let mut out = Vec::with_capacity(interior.len());
    out.extend(core::iter::repeat_n(t * s - shift, dim0_on_b));
    out.extend(core::iter::repeat_n(t * ell, dim0_on_c));
    for l in below {
        let a = shift - t * (s - ell);
        let root = libm::sqrt(a * a + 4.0 * l * l);
        let centre = t * (s + ell) - shift;
        out.push((centre - root) / 2.0);
        out.push((centre + root) / 2.0);
    }
    Ok(sorted(&out))
}

/// Removes `predicted` from `spectrum` as multisets, matching each predicted
/// value to the nearest unused spectrum value within `tol`. Returns the rest,
/// ascending, or `None` if some predicted value has no match.
pub fn multiset_remainder(spectrum: &[f64], predicted: &[f64], tol: f64) -> Option<Vec<f64>> {
    let mut rest = sorted(spectrum);
    for &p in &sorted(predicted) {
        let (i, d) = rest.iter().enumerate().map(|(i, &x)| (i, (x - p).abs())).min_by(|a, b| a.1.total_cmp(&b.1))?;
        if d > tol {
            return None;
        }
        rest.remove(i);
    }
    Some(rest)
}

/// Numeric check that each assembly's normalized Laplacian spectrum is the
/// predicted multiset for its piece plus a remainder common to both.
pub fn decomposition_check_theorem1(bp: &Blueprint, p1: &SwapPiece, p2: &SwapPiece) -> Result<bool> {
    let mode = EigenspaceMode::NormalizedLambda1;
    let mut remainders = Vec::with_capacity(2);
    for p in [p1, p2] {
        let lambdas = numeric_spectrum(p.graph(), MatrixKind::NormalizedLaplacian, None)?.eigenvalues;
        let s = bp.assembled_b_degree(p.k());
        let predicted = predicted_gammas_theorem1(
            &lambdas,
            p.k(),
            s,
            bp.b_clique(),
            dim_eigenspace_on_b(p, mode),
            dim_eigenspace_on_c(p, mode),
        )?;
        let g = assemble(bp, p)?;
        let spectrum = numeric_spectrum(&g, MatrixKind::NormalizedLaplacian, None)?.eigenvalues;
        match multiset_remainder(&spectrum, &predicted, DECOMPOSITION_TOLERANCE) {
            Some(rest) => remainders.push(rest),
            None => return Ok(false),
        }
    }
    Ok(close(&remainders[0], &remainders[1]))
}

/// As [`decomposition_check_theorem1`], for `A + tD` and biregular pieces.
pub fn decomposition_check_theorem2(bp: &Blueprint, p1: &SwapPiece, p2: &SwapPiece, t: &BigRational) -> Result<bool> {
    let mode = EigenspaceMode::AdjacencyLambda0;
    let tf = t.to_f64().unwrap_or(f64::NAN);
    let mut remainders = Vec::with_capacity(2);
    for p in [p1, p2] {
        let ell = p.ell().ok_or_else(|| Error::CertificateFailed(String::from("piece is not biregular")))?;
        let lambdas = numeric_spectrum(p.graph(), MatrixKind::Adjacency, None)?.eigenvalues;
        let s = bp.assembled_b_degree(p.k());
        let predicted = predicted_gammas_theorem2(
            &lambdas,
            p.k(),
            ell,
            s,
            tf,
            bp.b_clique(),
            dim_eigenspace_on_b(p, mode),
            dim_eigenspace_on_c(p, mode),
        )?;
        let g = assemble(bp, p)?;
        let spectrum = numeric_spectrum(&g, MatrixKind::AdjacencyPlusTD, Some(t))?.eigenvalues;
        match multiset_remainder(&spectrum, &predicted, DECOMPOSITION_TOLERANCE) {
            Some(rest) => remainders.push(rest),
            None => return Ok(false),
        }
    }
    Ok(close(&remainders[0], &remainders[1]))
}

fn close(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= DECOMPOSITION_TOLERANCE)
}
