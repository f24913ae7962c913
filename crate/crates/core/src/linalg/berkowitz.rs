use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{IntMatrix, IntPoly};

/// `det(xI - m)` by the Berkowitz algorithm: division free, `O(n^4)` big
/// integer operations.
///
/// # Panics
/// If `m` is not square.
pub fn charpoly(m: &IntMatrix) -> IntPoly {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.rows();
    let a = |i: usize, j: usize| BigInt::from(m[(i, j)]);

    // coefficients of the leading principal block, highest degree first
    let mut v: Vec<BigInt> = vec![BigInt::one()];
    for r in 0..n {
        // leading block is r x r; row r and column r extend it
        let mut t = Vec::with_capacity(r + 2);
        t.push(BigInt::one());
        t.push(-a(r, r));
        let mut col: Vec<BigInt> = (0..r).map(|i| a(i, r)).collect();
        for step in 0..r {
            let rc: BigInt = (0..r).map(|j| a(r, j) * &col[j]).sum();
            t.push(-rc);
            if step + 1 < r {
                col = (0..r).map(|i| (0..r).map(|j| a(i, j) * &col[j]).sum()).collect();
            }
        }
        // lower triangular Toeplitz product, (r + 2) x (r + 1) times v
        let mut next = vec![BigInt::zero(); r + 2];
        for (i, out) in next.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate().take(i + 1) {
                if let Some(tij) = t.get(i - j) {
                    *out += tij * vj;
                }
            }
        }
        v = next;
    }
    v.reverse();
    IntPoly::new(v)
}
