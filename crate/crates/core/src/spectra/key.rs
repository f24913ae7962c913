use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{modular, IntPoly};

use super::{a_plus_td, adjacency_matrix, degree_matrix, laplacian_matrix, signless_laplacian_matrix, MatrixKind};

/// Exact spectral fingerprint. Two graphs have equal keys of a kind exactly
/// when they are cospectral for that kind.
///
/// * `A`, `L`, `Q`: the characteristic polynomial.
/// * normalized Laplacian: the number of isolated vertices, and the primitive
///   part of `det(λD - L)` over the remaining vertices. The primitive part is
///   the characteristic polynomial of the normalized Laplacian scaled to
///   coprime integer coefficients; it is determined by the spectrum and
///   determines it.
/// * `A + tD`: the characteristic polynomials at `t = 0, 1, ..., n`. The
///   bivariate polynomial `det(xI - A - tD)` has degree at most `n` in `t`,
///   so these `n + 1` specialisations fix it for every real `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpectralKey {
    Adjacency(IntPoly),
    Laplacian(IntPoly),
    SignlessLaplacian(IntPoly),
    NormalizedLaplacian { isolated: usize, poly: IntPoly },
    AdjacencyPlusTD(Vec<IntPoly>),
}

impl SpectralKey {
    pub fn kind(&self) -> MatrixKind {
        match self {
            SpectralKey::Adjacency(_) => MatrixKind::Adjacency,
            SpectralKey::Laplacian(_) => MatrixKind::Laplacian,
            SpectralKey::SignlessLaplacian(_) => MatrixKind::SignlessLaplacian,
            SpectralKey::NormalizedLaplacian { .. } => MatrixKind::NormalizedLaplacian,
            SpectralKey::AdjacencyPlusTD(_) => MatrixKind::AdjacencyPlusTD,
        }
    }

    /// Canonical text form, e.g. `A:-1,0,1` or `NL:iso=1;0,-2,1`.
    pub fn serialize(&self) -> String {
        self.to_string()
    }

    /// Polynomial whose roots are the eigenvalues, with multiplicity. `None`
    /// for `A + tD`, which has one per parameter value.
    pub fn polynomial(&self) -> Option<IntPoly> {
        match self {
            SpectralKey::Adjacency(p) | SpectralKey::Laplacian(p) | SpectralKey::SignlessLaplacian(p) => {
                Some(p.clone())
            }
            SpectralKey::NormalizedLaplacian { isolated, poly } => Some(poly.shift(*isolated)),
            SpectralKey::AdjacencyPlusTD(_) => None,
        }
    }
}

impl fmt::Display for SpectralKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.kind().tag())?;
        match self {
            SpectralKey::Adjacency(p) | SpectralKey::Laplacian(p) | SpectralKey::SignlessLaplacian(p) => {
                f.write_str(&p.to_csv())
            }
            SpectralKey::NormalizedLaplacian { isolated, poly } => write!(f, "iso={isolated};{}", poly.to_csv()),
            SpectralKey::AdjacencyPlusTD(polys) => {
                for (i, p) in polys.iter().enumerate() {
                    if i > 0 {
                        f.write_str("|")?;
                    }
                    f.write_str(&p.to_csv())?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for SpectralKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedKey(s.to_string());
        let (tag, body) = s.split_once(':').ok_or_else(bad)?;
        let kind: MatrixKind = tag.parse().map_err(|_| bad())?;
        if tag != kind.tag() {
            return Err(bad());
        }
        Ok(match kind {
            MatrixKind::Adjacency => SpectralKey::Adjacency(IntPoly::from_csv(body)?),
            MatrixKind::Laplacian => SpectralKey::Laplacian(IntPoly::from_csv(body)?),
            MatrixKind::SignlessLaplacian => SpectralKey::SignlessLaplacian(IntPoly::from_csv(body)?),
            MatrixKind::NormalizedLaplacian => {
                let rest = body.strip_prefix("iso=").ok_or_else(bad)?;
                let (iso, poly) = rest.split_once(';').ok_or_else(bad)?;
                SpectralKey::NormalizedLaplacian {
                    isolated: iso.parse().map_err(|_| bad())?,
                    poly: IntPoly::from_csv(poly)?,
                }
            }
            MatrixKind::AdjacencyPlusTD => {
                SpectralKey::AdjacencyPlusTD(body.split('|').map(IntPoly::from_csv).collect::<Result<_>>()?)
            }
        })
    }
}

pub fn spectral_key(g: &Graph, kind: MatrixKind) -> SpectralKey {
    match kind {
        MatrixKind::Adjacency => SpectralKey::Adjacency(modular::charpoly(&adjacency_matrix(g))),
        MatrixKind::Laplacian => SpectralKey::Laplacian(modular::charpoly(&laplacian_matrix(g))),
        MatrixKind::SignlessLaplacian => {
            SpectralKey::SignlessLaplacian(modular::charpoly(&signless_laplacian_matrix(g)))
        }
        MatrixKind::NormalizedLaplacian => {
            let isolated = g.isolated_vertices();
            let core = g.induced_subgraph(g.vertices().difference(isolated)).expect("subset of the vertex set");
            let pencil = modular::pencil_charpoly(&laplacian_matrix(&core), &degree_matrix(&core));
            SpectralKey::NormalizedLaplacian { isolated: isolated.len(), poly: pencil.primitive_part() }
        }
        MatrixKind::AdjacencyPlusTD => {
            SpectralKey::AdjacencyPlusTD((0..=g.order() as i64).map(|t| modular::charpoly(&a_plus_td(g, t))).collect())
        }
    }
}

pub fn are_cospectral(g1: &Graph, g2: &Graph, kind: MatrixKind) -> bool {
    g1.order() == g2.order() && spectral_key(g1, kind) == spectral_key(g2, kind)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serialization_round_trip() {
        let c4 = Graph::cycle(4).unwrap();
        let with_isolated = c4.disjoint_union(&Graph::empty(2).unwrap()).unwrap();
        for kind in MatrixKind::ALL {
            for g in [&c4, &with_isolated] {
                let key = spectral_key(g, kind);
                let text = key.serialize();
                assert!(text.starts_with(kind.tag()));
                assert_eq!(text.parse::<SpectralKey>().unwrap(), key);
            }
        }
        assert_eq!(spectral_key(&Graph::complete(2).unwrap(), MatrixKind::Adjacency).serialize(), "A:-1,0,1");
        assert_eq!(spectral_key(&with_isolated, MatrixKind::NormalizedLaplacian).serialize(), "NL:iso=2;0,-2,5,-4,1");
        assert!("NL:1,2".parse::<SpectralKey>().is_err());
        assert!("nl:iso=0;1".parse::<SpectralKey>().is_err());
        assert!("Z:1".parse::<SpectralKey>().is_err());
    }

    #[test]
    fn normalized_key_of_c4() {
        // spectrum 0, 1, 1, 2
        let key = spectral_key(&Graph::cycle(4).unwrap(), MatrixKind::NormalizedLaplacian);
        let expect = IntPoly::from_i64s(&[0, -2, 5, -4, 1]);
        assert_eq!(key, SpectralKey::NormalizedLaplacian { isolated: 0, poly: expect });
    }

    #[test]
    fn empty_graph_keys() {
        let g = Graph::empty(3).unwrap();
        assert_eq!(
            spectral_key(&g, MatrixKind::NormalizedLaplacian),
            SpectralKey::NormalizedLaplacian { isolated: 3, poly: IntPoly::one() }
        );
        let g0 = Graph::empty(0).unwrap();
        assert_eq!(spectral_key(&g0, MatrixKind::Adjacency), SpectralKey::Adjacency(IntPoly::one()));
    }
}
