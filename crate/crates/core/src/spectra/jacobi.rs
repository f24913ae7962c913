use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 100;

/// Eigen decomposition of a real symmetric matrix, eigenvalues ascending;
/// `vectors[i]` is a unit eigenvector for `values[i]` and the vectors are
/// orthonormal.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
/// `1e-12 * max(1, ‖M‖_F)`.
///
/// # Panics
/// If the matrix is not square.
pub fn symmetric_eigen(m: &[Vec<f64>]) -> Result<Eigen> {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    let mut a: Vec<f64> = m.iter().flatten().copied().collect();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let norm = libm::sqrt(a.iter().map(|x| x * x).sum::<f64>());
    let tol = 1e-12 * norm.max(1.0);

    let mut converged = false;
    for _ in 0..=MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum();
        if libm::sqrt(off) < tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    let s = if theta >= 0.0 { 1.0 } else { -1.0 };
                    s / (theta.abs() + libm::sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors = order.iter().map(|&i| (0..n).map(|k| v[k * n + i]).collect()).collect();
    Ok(Eigen { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let e = symmetric_eigen(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
        let x = &e.vectors[1];
        assert!((x[0] - x[1]).abs() < 1e-14);
    }

    #[test]
    fn diagonal_and_empty() {
        let e = symmetric_eigen(&[vec![3.0, 0.0], vec![0.0, -2.0]]).unwrap();
        assert_eq!(e.values, vec![-2.0, 3.0]);
        assert!(symmetric_eigen(&[]).unwrap().values.is_empty());
    }

    #[test]
    fn reconstructs_matrix() {
        let m = vec![
            vec![4.0, 1.0, -2.0, 2.0],
            vec![1.0, 2.0, 0.0, 1.0],
            vec![-2.0, 0.0, 3.0, -2.0],
            vec![2.0, 1.0, -2.0, -1.0],
        ];
        let e = symmetric_eigen(&m).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let r: f64 = (0..4).map(|k| e.values[k] * e.vectors[k][i] * e.vectors[k][j]).sum();
                assert!((r - m[i][j]).abs() < 1e-12);
            }
        }
    }
}
