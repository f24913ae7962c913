//! Graph matrices, exact spectral keys and a numeric symmetric eigensolver.

mod jacobi;
mod key;
mod numeric;

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::IntMatrix;

pub use jacobi::{symmetric_eigen, Eigen, MAX_SWEEPS};
pub use key::{are_cospectral, spectral_key, SpectralKey};
pub use numeric::{
    harmonic_eigenpairs, numeric_spectrum, satisfies_harmonic_relation, verify_pencil_relation, HarmonicPair,
    NumericSpectrum, RELATION_TOLERANCE,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatrixKind {
    Adjacency,
    Laplacian,
    SignlessLaplacian,
    NormalizedLaplacian,
    AdjacencyPlusTD,
}

impl MatrixKind {
    pub const ALL: [MatrixKind; 5] = [
        MatrixKind::Adjacency,
        MatrixKind::Laplacian,
        MatrixKind::SignlessLaplacian,
        MatrixKind::NormalizedLaplacian,
        MatrixKind::AdjacencyPlusTD,
    ];

    /// The four kinds with a single matrix.
    pub const CLASSICAL: [MatrixKind; 4] =
        [MatrixKind::Adjacency, MatrixKind::Laplacian, MatrixKind::SignlessLaplacian, MatrixKind::NormalizedLaplacian];

    /// Short tag used in key serialisations and on the command line.
    pub fn tag(self) -> &'static str {
        match self {
            MatrixKind::Adjacency => "A",
            MatrixKind::Laplacian => "L",
            MatrixKind::SignlessLaplacian => "Q",
            MatrixKind::NormalizedLaplacian => "NL",
            MatrixKind::AdjacencyPlusTD => "ATD",
        }
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for MatrixKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" | "adjacency" => Ok(MatrixKind::Adjacency),
            "l" | "laplacian" => Ok(MatrixKind::Laplacian),
            "q" | "signless" | "signless-laplacian" => Ok(MatrixKind::SignlessLaplacian),
            "nl" | "normalized" | "normalized-laplacian" => Ok(MatrixKind::NormalizedLaplacian),
            "atd" | "a+td" => Ok(MatrixKind::AdjacencyPlusTD),
            _ => Err(Error::MalformedKey(s.to_string())),
        }
    }
}

pub fn adjacency_matrix(g: &Graph) -> IntMatrix {
    IntMatrix::from_fn(g.order(), g.order(), |i, j| g.has_edge(i, j) as i64)
}

pub fn degree_matrix(g: &Graph) -> IntMatrix {
    let d: Vec<i64> = g.degrees().iter().map(|&d| d as i64).collect();
    IntMatrix::diagonal(&d)
}

/// `A + tD` for an integer `t`; `t = -1` gives `-L`, `t = 1` gives `Q`.
pub fn a_plus_td(g: &Graph, t: i64) -> IntMatrix {
    adjacency_matrix(g).add_scaled(t, &degree_matrix(g))
}

pub fn laplacian_matrix(g: &Graph) -> IntMatrix {
    degree_matrix(g).add_scaled(-1, &adjacency_matrix(g))
}

pub fn signless_laplacian_matrix(g: &Graph) -> IntMatrix {
    a_plus_td(g, 1)
}

/// A real number `±√r` with `r` a nonnegative rational.
///
/// Entries of every matrix kind have this form: rational for `A`, `L`, `Q`
/// and `A + tD`, and `-1/√(d_u d_v)` off the diagonal of the normalized
/// Laplacian.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SqrtRational {
    negative: bool,
    square: BigRational,
}

impl SqrtRational {
    pub fn zero() -> Self {
        SqrtRational { negative: false, square: BigRational::zero() }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        SqrtRational { negative: r.is_negative(), square: r * r }
    }

    pub fn from_integer(v: i64) -> Self {
        SqrtRational::from_rational(&BigRational::from_integer(v.into()))
    }

    /// `sign * √square`
    ///
    /// # Panics
    /// If `square` is negative.
    pub fn new(negative: bool, square: BigRational) -> Self {
        assert!(!square.is_negative(), "square must be nonnegative");
        let negative = negative && !square.is_zero();
        SqrtRational { negative, square }
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn square(&self) -> &BigRational {
        &self.square
    }

    /// The value, if rational.
    pub fn to_rational(&self) -> Option<BigRational> {
        let n = exact_sqrt(self.square.numer())?;
        let d = exact_sqrt(self.square.denom())?;
        let r = BigRational::new(n, d);
        Some(if self.negative { -r } else { r })
    }

    pub fn to_f64(&self) -> f64 {
        let v = libm::sqrt(self.square.to_f64().unwrap_or(f64::NAN));
        if self.negative {
            -v
        } else {
            v
        }
    }
}

fn exact_sqrt(x: &BigInt) -> Option<BigInt> {
    let r = x.sqrt();
    (&r * &r == *x).then_some(r)
}

impl fmt::Display for SqrtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_rational() {
            Some(r) => write!(f, "{r}"),
            None => {
                let sign = if self.negative { "-" } else { "" };
                write!(f, "{sign}sqrt({})", self.square)
            }
        }
    }
}

/// Square matrix of exact entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    n: usize,
    entries: Vec<SqrtRational>,
}

impl ExactMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &SqrtRational {
        &self.entries[i * self.n + j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j).to_f64()).collect()).collect()
    }

    /// Rows of entries rendered with `Display`.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j).to_string()).collect()).collect()
    }
}

/// The matrix of the given kind. `t` must be given exactly when the kind is
/// [`MatrixKind::AdjacencyPlusTD`].
pub fn build_matrix(g: &Graph, kind: MatrixKind, t: Option<&BigRational>) -> Result<ExactMatrix> {
    if t.is_some() != (kind == MatrixKind::AdjacencyPlusTD) {
        return Err(Error::ParameterMismatch);
    }
    let n = g.order();
    let deg = g.degrees();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let adj = g.has_edge(i, j);
            let e = match kind {
                MatrixKind::Adjacency => SqrtRational::from_integer(adj as i64),
                MatrixKind::Laplacian if i == j => SqrtRational::from_integer(deg[i] as i64),
                MatrixKind::Laplacian => SqrtRational::from_integer(-(adj as i64)),
                MatrixKind::SignlessLaplacian if i == j => SqrtRational::from_integer(deg[i] as i64),
                MatrixKind::SignlessLaplacian => SqrtRational::from_integer(adj as i64),
                MatrixKind::NormalizedLaplacian if i == j => SqrtRational::from_integer((deg[i] > 0) as i64),
                MatrixKind::NormalizedLaplacian if adj => {
                    SqrtRational::new(true, BigRational::new(BigInt::from(1), BigInt::from(deg[i] * deg[j])))
                }
                MatrixKind::NormalizedLaplacian => SqrtRational::zero(),
                MatrixKind::AdjacencyPlusTD if i == j => {
                    let t = t.expect("checked above");
                    SqrtRational::from_rational(&(t * BigInt::from(deg[i])))
                }
                MatrixKind::AdjacencyPlusTD => SqrtRational::from_integer(adj as i64),
            };
            entries.push(e);
        }
    }
    Ok(ExactMatrix { n, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn laplacian_of_k2() {
        let m = build_matrix(&Graph::complete(2).unwrap(), MatrixKind::Laplacian, None).unwrap();
        assert_eq!(m.to_f64(), vec![vec![1.0, -1.0], vec![-1.0, 1.0]]);
    }

    #[test]
    fn a_plus_td_at_one_is_q() {
        let k2 = Graph::complete(2).unwrap();
        let m = build_matrix(&k2, MatrixKind::AdjacencyPlusTD, Some(&rat(1))).unwrap();
        assert_eq!(m, build_matrix(&k2, MatrixKind::SignlessLaplacian, None).unwrap());
        assert_eq!(m.to_f64(), vec![vec![1.0, 1.0], vec![1.0, 1.0]]);
        let half = BigRational::new(1.into(), 2.into());
        let m = build_matrix(&k2, MatrixKind::AdjacencyPlusTD, Some(&-half)).unwrap();
        assert_eq!(m.get(0, 0).to_string(), "-1/2");
    }

    #[test]
    fn normalized_laplacian_of_star() {
        let m = build_matrix(&Graph::star(3).unwrap(), MatrixKind::NormalizedLaplacian, None).unwrap();
        assert!(m.is_symmetric());
        for i in 0..4 {
            assert_eq!(m.get(i, i).to_rational(), Some(rat(1)));
        }
        for leaf in 1..4 {
            let e = m.get(0, leaf);
            assert_eq!(e.to_string(), "-sqrt(1/3)");
            assert!((e.to_f64() + 1.0 / libm::sqrt(3.0)).abs() < 1e-15);
            assert_eq!(m.get(leaf, 0), e);
        }
        assert_eq!(m.get(1, 2), &SqrtRational::zero());
    }

    #[test]
    fn isolated_rows_are_zero() {
        let m = build_matrix(&Graph::empty(2).unwrap(), MatrixKind::NormalizedLaplacian, None).unwrap();
        assert!(m.to_f64().iter().flatten().all(|&x| x == 0.0));
    }

    #[test]
    fn parameter_mismatch() {
        let g = Graph::complete(2).unwrap();
        assert_eq!(build_matrix(&g, MatrixKind::AdjacencyPlusTD, None), Err(Error::ParameterMismatch));
        assert_eq!(build_matrix(&g, MatrixKind::Adjacency, Some(&rat(1))), Err(Error::ParameterMismatch));
    }

    #[test]
    fn kind_tags_parse() {
        for k in MatrixKind::ALL {
            assert_eq!(k.tag().parse::<MatrixKind>().unwrap(), k);
        }
        assert!("x".parse::<MatrixKind>().is_err());
    }
}
