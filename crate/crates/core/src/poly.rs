//! Integer polynomials, coefficients stored from the constant term upward.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::matrix::ZMatrix;

pub type Poly = Vec<BigInt>;

pub fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn degree(p: &[BigInt]) -> usize {
    trim(p.to_vec()).len().saturating_sub(1)
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> Poly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Exact division by a monic divisor; `None` if the remainder is nonzero.
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Poly> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    assert!(b[db].is_one(), "divisor must be monic");
    if r.len() < b.len() {
        return if r.iter().all(Zero::is_zero) { Some(vec![BigInt::zero()]) } else { None };
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    if r.iter().all(Zero::is_zero) {
        Some(trim(q))
    } else {
        None
    }
}

/// Cyclotomic polynomial `Φ_n`.
pub fn cyclotomic(n: u32) -> Poly {
    assert!(n >= 1);
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            p = div_exact(&p, &cyclotomic(d)).expect("cyclotomic divisibility");
        }
    }
    p
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count() as u32
}

/// Characteristic polynomial `det(x·I − m)` by Faddeev–LeVerrier.
pub fn char_poly(m: &ZMatrix) -> Poly {
    let n = m.rows();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut mk = ZMatrix::zeros(n, n);
    for k in 1..=n {
        mk = &(m * &mk) + &ZMatrix::scalar(n, &c[n - k + 1]);
        let t = (m * &mk).trace();
        c[n - k] = -t / BigInt::from(k as u64);
    }
    c
}

/// `p(m)` by Horner's rule.
pub fn eval_matrix(p: &[BigInt], m: &ZMatrix) -> ZMatrix {
    let n = m.rows();
    let mut acc = ZMatrix::zeros(n, n);
    for c in p.iter().rev() {
        acc = &(&acc * m) + &ZMatrix::scalar(n, c);
    }
    acc
}

pub fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Multiplicity of the monic factor `f` in `p` (`p` nonzero).
pub fn multiplicity(p: &[BigInt], f: &[BigInt]) -> usize {
    let mut q = trim(p.to_vec());
    let mut k = 0;
    while q.len() > 1 {
        match div_exact(&q, f) {
            Some(next) => {
                q = next;
                k += 1;
            }
            None => break,
        }
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::zvec;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), zvec(&[-1, 1]));
        assert_eq!(cyclotomic(3), zvec(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), zvec(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), zvec(&[1, -1, 1]));
        assert_eq!(cyclotomic(8), zvec(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic(12), zvec(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn char_poly_agrees_with_determinant() {
        let m = ZMatrix::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let p = char_poly(&m);
        // p(0) = det(-m) = -det(m) in odd dimension.
        assert_eq!(p[0], -m.determinant());
        assert!(eval_matrix(&p, &m).is_zero());
    }

    #[test]
    fn multiplicity_of_linear_factor() {
        let p = mul(&mul(&zvec(&[1, 1]), &zvec(&[1, 1])), &zvec(&[-2, 1]));
        assert_eq!(multiplicity(&p, &zvec(&[1, 1])), 2);
        assert_eq!(multiplicity(&p, &zvec(&[-1, 1])), 0);
    }
}
