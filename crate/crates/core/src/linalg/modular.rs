//! Multimodular engine.
//!
//! Determinants and characteristic polynomials are computed modulo enough
//! 62-bit primes that their product exceeds twice a proven bound on every
//! coefficient, then lifted by Chinese remaindering to symmetric residues.
//! The result is exact. Arithmetic modulo each prime is in Montgomery form.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::{IntMatrix, IntPoly};

/// Primes just below `2^62`, in decreasing order.
pub const PRIMES: [u64; 64] = [
    0x3fffffffffffffc7,
    0x3fffffffffffffa9,
    0x3fffffffffffff8b,
    0x3fffffffffffff71,
    0x3fffffffffffff67,
    0x3fffffffffffff59,
    0x3fffffffffffff55,
    0x3fffffffffffff3d,
    0x3fffffffffffff35,
    0x3ffffffffffffeef,
    0x3ffffffffffffee1,
    0x3ffffffffffffec3,
    0x3ffffffffffffe45,
    0x3ffffffffffffe1d,
    0x3ffffffffffffe11,
    0x3ffffffffffffdc1,
    0x3ffffffffffffdbb,
    0x3ffffffffffffda5,
    0x3ffffffffffffd87,
    0x3ffffffffffffd69,
    0x3ffffffffffffd03,
    0x3ffffffffffffcfb,
    0x3ffffffffffffcf7,
    0x3ffffffffffffce9,
    0x3ffffffffffffcd3,
    0x3ffffffffffffcc1,
    0x3ffffffffffffc65,
    0x3ffffffffffffc2b,
    0x3ffffffffffffc1f,
    0x3ffffffffffffc17,
    0x3ffffffffffffc11,
    0x3ffffffffffffc07,
    0x3ffffffffffffb53,
    0x3ffffffffffffb27,
    0x3ffffffffffffaf3,
    0x3ffffffffffffab7,
    0x3ffffffffffffa67,
    0x3ffffffffffffa15,
    0x3ffffffffffff9ef,
    0x3ffffffffffff9d9,
    0x3ffffffffffff9d3,
    0x3ffffffffffff9c5,
    0x3ffffffffffff9af,
    0x3ffffffffffff977,
    0x3ffffffffffff95f,
    0x3ffffffffffff95b,
    0x3ffffffffffff959,
    0x3ffffffffffff8e1,
    0x3ffffffffffff8a7,
    0x3ffffffffffff889,
    0x3ffffffffffff87d,
    0x3ffffffffffff805,
    0x3ffffffffffff7e7,
    0x3ffffffffffff7c9,
    0x3ffffffffffff7a3,
    0x3ffffffffffff775,
    0x3ffffffffffff757,
    0x3ffffffffffff739,
    0x3ffffffffffff713,
    0x3ffffffffffff6d1,
    0x3ffffffffffff6c1,
    0x3ffffffffffff6b9,
    0x3ffffffffffff6a3,
    0x3ffffffffffff68b,
];

/// Arithmetic modulo an odd prime below `2^62`, in Montgomery form with
/// radix `2^64`.
#[derive(Clone, Copy, Debug)]
pub struct Field {
    p: u64,
    // -p^{-1} mod 2^64
    neg_inv: u64,
    // 2^128 mod p
    r2: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        assert!(p % 2 == 1 && p < 1 << 62, "modulus must be odd and below 2^62");
        let mut inv = p;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Field { p, neg_inv: inv.wrapping_neg(), r2 }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Montgomery form of an integer.
    pub fn from_i64(&self, a: i64) -> u64 {
        let r = a.rem_euclid(self.p as i64) as u64;
        self.mul(r, self.r2)
    }

    /// Montgomery form of a residue in `0..p`.
    pub fn from_u64(&self, a: u64) -> u64 {
        self.mul(a % self.p, self.r2)
    }

    /// Plain residue in `0..p`.
    pub fn to_u64(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    pub fn one(&self) -> u64 {
        self.from_u64(1)
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }
}

/// Square matrix over a [`Field`], entries in Montgomery form.
#[derive(Clone, Debug)]
struct ModMatrix {
    n: usize,
    a: Vec<u64>,
}

impl ModMatrix {
    fn from_int(f: &Field, m: &IntMatrix) -> Self {
        let n = m.rows();
        let a = (0..n).flat_map(|i| m.row(i).iter().map(|&x| f.from_i64(x))).collect();
        ModMatrix { n, a }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.n + j]
    }
}

/// Determinant modulo the field's prime, in Montgomery form.
fn det_mod(f: &Field, mut m: ModMatrix) -> u64 {
    let n = m.n;
    let mut acc = f.one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| m.at(i, k) != 0) else {
            return 0;
        };
        if p != k {
            for j in k..n {
                m.a.swap(p * n + j, k * n + j);
            }
            acc = f.neg(acc);
        }
        let pivot = m.at(k, k);
        acc = f.mul(acc, pivot);
        let inv = f.inv(pivot);
        for i in k + 1..n {
            let u = f.mul(m.at(i, k), inv);
            if u == 0 {
                continue;
            }
            for j in k + 1..n {
                let v = f.sub(m.at(i, j), f.mul(u, m.at(k, j)));
                m.a[i * n + j] = v;
            }
        }
    }
    acc
}

/// Characteristic polynomial modulo the field's prime, by reduction to upper
/// Hessenberg form. Returns plain residues in ascending degree, length `n + 1`.
fn charpoly_mod(f: &Field, mut h: ModMatrix) -> Vec<u64> {
    let n = h.n;
    for j in 0..n.saturating_sub(2) {
        let Some(i) = (j + 1..n).find(|&i| h.at(i, j) != 0) else {
            continue;
        };
        if i != j + 1 {
            for c in 0..n {
                h.a.swap(i * n + c, (j + 1) * n + c);
            }
            for r in 0..n {
                h.a.swap(r * n + i, r * n + j + 1);
            }
        }
        let inv = f.inv(h.at(j + 1, j));
        for k in j + 2..n {
            let u = f.mul(h.at(k, j), inv);
            if u == 0 {
                continue;
            }
            for c in j..n {
                let v = f.sub(h.at(k, c), f.mul(u, h.at(j + 1, c)));
                h.a[k * n + c] = v;
            }
            for r in 0..n {
                let v = f.add(h.at(r, j + 1), f.mul(u, h.at(r, k)));
                h.a[r * n + j + 1] = v;
            }
        }
    }

    let one = f.one();
    let mut polys: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    polys.push(vec![one]);
    for m in 0..n {
        let prev = &polys[m];
        let mut next = vec![0u64; m + 2];
        let diag = h.at(m, m);
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = f.add(next[d + 1], c);
            next[d] = f.sub(next[d], f.mul(diag, c));
        }
        let mut t = one;
        for i in (0..m).rev() {
            t = f.mul(t, h.at(i + 1, i));
            if t == 0 {
                break;
            }
            let coef = f.mul(h.at(i, m), t);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = f.sub(next[d], f.mul(coef, c));
            }
        }
        polys.push(next);
    }
    polys.pop().expect("n + 1 polynomials").into_iter().map(|c| f.to_u64(c)).collect()
}

/// `det(λd - l)` modulo the field's prime, plain residues ascending, length
/// `n + 1`.
fn pencil_mod(f: &Field, l: &IntMatrix, d: &IntMatrix) -> Vec<u64> {
    let n = l.rows();
    let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || d[(i, j)] == 0));
    if diagonal && (0..n).all(|i| f.from_i64(d[(i, i)]) != 0) {
        // det(λD - L) = det(D) det(λI - D^{-1} L)
        let mut m = ModMatrix::from_int(f, l);
        let mut det_d = f.one();
        for i in 0..n {
            let di = f.from_i64(d[(i, i)]);
            det_d = f.mul(det_d, di);
            let inv = f.inv(di);
            for j in 0..n {
                m.a[i * n + j] = f.mul(m.a[i * n + j], inv);
            }
        }
        return charpoly_mod(f, m).into_iter().map(|c| f.to_u64(f.mul(f.from_u64(c), det_d))).collect();
    }
    let values: Vec<u64> = (0..=n as i64)
        .map(|lambda| {
            let shifted = IntMatrix::from_fn(n, n, |i, j| lambda * d[(i, j)] - l[(i, j)]);
            det_mod(f, ModMatrix::from_int(f, &shifted))
        })
        .collect();
    interpolate_mod(f, values).into_iter().map(|c| f.to_u64(c)).collect()
}

/// Coefficients (Montgomery form) of the polynomial through `(i, values[i])`.
fn interpolate_mod(f: &Field, mut values: Vec<u64>) -> Vec<u64> {
    let m = values.len();
    for k in 1..m {
        for i in (k..m).rev() {
            values[i] = f.sub(values[i], values[i - 1]);
        }
    }
    let mut fact = f.one();
    for k in 1..m {
        fact = f.mul(fact, f.from_u64(k as u64));
        values[k] = f.mul(values[k], f.inv(fact));
    }
    let mut acc: Vec<u64> = Vec::with_capacity(m);
    for k in (0..m).rev() {
        // acc = acc * (x - k) + values[k]
        let kk = f.from_u64(k as u64);
        let mut next = vec![0u64; acc.len() + 1];
        for (d, &c) in acc.iter().enumerate() {
            next[d + 1] = f.add(next[d + 1], c);
            next[d] = f.sub(next[d], f.mul(kk, c));
        }
        next[0] = f.add(next[0], values[k]);
        acc = next;
    }
    acc.truncate(m);
    acc
}

/// Bound on the sum of absolute coefficients of `det(xI - m)`.
pub fn charpoly_bound(m: &IntMatrix) -> BigUint {
    (0..m.rows()).map(|i| BigUint::from(1 + m.abs_row_sum(i))).product()
}

/// Bound on the sum of absolute coefficients of `det(λd - l)`.
pub fn pencil_bound(l: &IntMatrix, d: &IntMatrix) -> BigUint {
    (0..l.rows()).map(|i| BigUint::from(l.abs_row_sum(i) + d.abs_row_sum(i))).product()
}

/// Bound on `|det m|`.
pub fn det_bound(m: &IntMatrix) -> BigUint {
    (0..m.rows()).map(|i| BigUint::from(m.abs_row_sum(i))).product()
}

/// Number of primes from [`PRIMES`] whose product exceeds `2 * bound`, or
/// `None` if the whole table is too small.
pub fn primes_needed(bound: &BigUint) -> Option<usize> {
    let target = bound * 2u32;
    let mut prod = BigUint::one();
    for (i, &p) in PRIMES.iter().enumerate() {
        prod *= p;
        if prod > target {
            return Some(i + 1);
        }
    }
    None
}

/// Lifts residue vectors (one per prime, plain residues) to the unique
/// integers of least absolute value.
fn crt(residues: &[Vec<u64>]) -> Vec<BigInt> {
    let len = residues[0].len();
    if residues.len() == 1 {
        let p = PRIMES[0];
        return residues[0]
            .iter()
            .map(|&r| if r > p / 2 { BigInt::from(r as i128 - p as i128) } else { BigInt::from(r) })
            .collect();
    }
    let fields: Vec<Field> = PRIMES[..residues.len()].iter().map(|&p| Field::new(p)).collect();
    // inverse of p_0 ... p_{j-1} modulo p_j, Montgomery form
    let mut modulus = BigUint::from(PRIMES[0]);
    let mut inverses = vec![0u64];
    for (j, f) in fields.iter().enumerate().skip(1) {
        let m = (&modulus % PRIMES[j]).try_into().unwrap_or(0u64);
        inverses.push(f.inv(f.from_u64(m)));
        modulus *= PRIMES[j];
    }
    let half = &modulus >> 1u32;
    (0..len)
        .map(|c| {
            let mut x = BigUint::from(residues[0][c]);
            let mut m = BigUint::from(PRIMES[0]);
            for (j, f) in fields.iter().enumerate().skip(1) {
                let xm: u64 = (&x % PRIMES[j]).try_into().unwrap_or(0);
                let diff = f.sub(f.from_u64(residues[j][c]), f.from_u64(xm));
                let h = f.to_u64(f.mul(diff, inverses[j]));
                x += &m * h;
                m *= PRIMES[j];
            }
            if x > half {
                BigInt::from(x) - BigInt::from(modulus.clone())
            } else {
                BigInt::from(x)
            }
        })
        .collect()
}

/// `det(xI - m)`, exact.
///
/// Falls back to [`super::charpoly`] when the coefficient bound exceeds the
/// prime table.
pub fn charpoly(m: &IntMatrix) -> IntPoly {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let Some(k) = primes_needed(&charpoly_bound(m)) else {
        return super::charpoly(m);
    };
    let residues: Vec<Vec<u64>> = PRIMES[..k]
        .iter()
        .map(|&p| {
            let f = Field::new(p);
            charpoly_mod(&f, ModMatrix::from_int(&f, m))
        })
        .collect();
    IntPoly::new(crt(&residues))
}

/// `det(λd - l)` as a polynomial in `λ`, exact.
pub fn pencil_charpoly(l: &IntMatrix, d: &IntMatrix) -> IntPoly {
    assert!(l.is_square() && d.is_square() && l.rows() == d.rows(), "pencil needs two square matrices of one order");
    let Some(k) = primes_needed(&pencil_bound(l, d)) else {
        return super::pencil_charpoly(l, d);
    };
    let residues: Vec<Vec<u64>> = PRIMES[..k].iter().map(|&p| pencil_mod(&Field::new(p), l, d)).collect();
    IntPoly::new(crt(&residues))
}

/// Exact determinant.
pub fn det(m: &IntMatrix) -> BigInt {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let Some(k) = primes_needed(&det_bound(m)) else {
        return super::det(m);
    };
    let residues: Vec<Vec<u64>> = PRIMES[..k]
        .iter()
        .map(|&p| {
            let f = Field::new(p);
            vec![f.to_u64(det_mod(&f, ModMatrix::from_int(&f, m)))]
        })
        .collect();
    crt(&residues).pop().unwrap_or_else(BigInt::zero)
}
