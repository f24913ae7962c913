use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::bareiss::det_big;
use super::{IntMatrix, IntPoly};

/// `det(λd - l)` as a polynomial in `λ`.
///
/// The determinant is evaluated exactly at `λ = 0, 1, ..., n` and the
/// polynomial recovered from its forward differences.
///
/// # Panics
/// If the matrices are not square of the same order.
pub fn pencil_charpoly(l: &IntMatrix, d: &IntMatrix) -> IntPoly {
    assert!(l.is_square() && d.is_square() && l.rows() == d.rows(), "pencil needs two square matrices of one order");
    let n = l.rows();
    let values: Vec<BigInt> = (0..=n as i64)
        .map(|lambda| {
            let rows = (0..n).map(|i| (0..n).map(|j| BigInt::from(lambda * d[(i, j)] - l[(i, j)])).collect()).collect();
            det_big(rows)
        })
        .collect();
    interpolate_consecutive(values)
}

/// The unique polynomial of degree `< values.len()` with `p(i) = values[i]`,
/// assuming it has integer coefficients.
pub(crate) fn interpolate_consecutive(mut values: Vec<BigInt>) -> IntPoly {
    let m = values.len();
    // values[k] becomes the k-th forward difference at 0, divided by k!
    for k in 1..m {
        for i in (k..m).rev() {
            let prev = values[i - 1].clone();
            values[i] -= prev;
        }
    }
    let mut fact = BigInt::from(1);
    for k in 1..m {
        fact *= k;
        let (q, r) = (&values[k] / &fact, &values[k] % &fact);
        debug_assert!(r.is_zero(), "values do not come from an integer polynomial");
        values[k] = q;
    }
    // Newton form in the falling factorials x(x-1)...(x-k+1), expanded by Horner
    let mut acc = IntPoly::zero();
    for k in (0..m).rev() {
        acc = acc.mul(&IntPoly::linear(k as i64));
        acc = IntPoly::new(add_constant(acc.into_coeffs(), &values[k]));
    }
    acc
}

fn add_constant(mut coeffs: Vec<BigInt>, c: &BigInt) -> Vec<BigInt> {
    if coeffs.is_empty() {
        coeffs.push(BigInt::zero());
    }
    coeffs[0] += c;
    coeffs
}
