//! Exact enumeration of vectors of a given square in a definite lattice.
//!
//! The Gram matrix is first LLL-reduced (exact rational arithmetic), then
//! vectors are enumerated Fincke–Pohst style from an exact `LDL^T`
//! decomposition. Interval endpoints use integer square roots and every
//! candidate is filtered exactly, so no rounding can drop a solution.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{signature_of, Lattice, Sublattice};
use crate::matrix::{rat, sign_normalized, ZMatrix, ZVector};

/// Sign of a definite form.
fn definiteness(gram: &ZMatrix) -> Option<i8> {
    let s = signature_of(gram);
    let n = gram.rows();
    if s.plus == n {
        Some(1)
    } else if s.minus == n {
        Some(-1)
    } else {
        None
    }
}

/// LLL reduction of a positive definite Gram matrix. Returns `b` (columns are
/// the new basis in old coordinates) with `b^T g b` reduced.
pub fn lll_reduce(g: &ZMatrix) -> ZMatrix {
    let n = g.rows();
    let mut b = ZMatrix::identity(n);
    if n <= 1 {
        return b;
    }
    let mut gram = g.clone();
    let delta = BigRational::new(BigInt::from(99), BigInt::from(100));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let (mut mu, mut bstar) = gram_schmidt(&gram);
    let mut k = 1;
    while k < n {
        // Size reduction of b_k against b_{k-1}, ..., b_0; mu is updated in place.
        for j in (0..k).rev() {
            if mu[k][j].abs() > half {
                let q = mu[k][j].round().to_integer();
                add_column(&mut b, k, j, &-q.clone());
                gram = update_gram(&gram, k, j, &-q.clone());
                let qr = rat(&q);
                for l in 0..j {
                    let v = &qr * &mu[j][l];
                    mu[k][l] -= v;
                }
                mu[k][j] -= qr;
            }
        }
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bstar[k - 1];
        if bstar[k] >= rhs {
            k += 1;
        } else {
            swap_columns(&mut b, k, k - 1);
            gram = swap_gram(&gram, k, k - 1);
            (mu, bstar) = gram_schmidt(&gram);
            k = k.max(2) - 1;
        }
    }
    b
}

fn gram_schmidt(g: &ZMatrix) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let n = g.rows();
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut bstar = vec![BigRational::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut s = rat(g.get(i, j));
            for k in 0..j {
                s -= &mu[j][k] * &mu[i][k] * &bstar[k];
            }
            mu[i][j] = s / &bstar[j];
        }
        let mut s = rat(g.get(i, i));
        for k in 0..i {
            s -= &mu[i][k] * &mu[i][k] * &bstar[k];
        }
        bstar[i] = s;
    }
    (mu, bstar)
}

fn add_column(b: &mut ZMatrix, dst: usize, src: usize, k: &BigInt) {
    for i in 0..b.rows() {
        let v = b.get(i, dst) + k * b.get(i, src);
        b.set(i, dst, v);
    }
}

fn swap_columns(b: &mut ZMatrix, x: usize, y: usize) {
    for i in 0..b.rows() {
        let t = b.get(i, x).clone();
        b.set(i, x, b.get(i, y).clone());
        b.set(i, y, t);
    }
}

/// Gram after `b_dst += k b_src`.
fn update_gram(g: &ZMatrix, dst: usize, src: usize, k: &BigInt) -> ZMatrix {
    let n = g.rows();
    let mut e = ZMatrix::identity(n);
    e.set(src, dst, k.clone());
    e.congruence(g)
}

fn swap_gram(g: &ZMatrix, x: usize, y: usize) -> ZMatrix {
    let n = g.rows();
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(x, y);
    g.submatrix(&p, &p)
}

/// All coordinate vectors `x` with `x^T g x = a` for a positive definite `g`.
fn fincke_pohst(g: &ZMatrix, a: &BigInt) -> Vec<ZVector> {
    let n = g.rows();
    if a.is_negative() {
        return Vec::new();
    }
    if n == 0 {
        return if a.is_zero() { vec![Vec::new()] } else { Vec::new() };
    }
    // g = sum_i d_i (x_i + sum_{j>i} q_ij x_j)^2
    let mut q = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            q[i][j] = rat(g.get(i, j));
        }
    }
    for i in 0..n {
        let d = q[i][i].clone();
        for j in i + 1..n {
            let v = &q[i][j] / &d;
            q[j][i] = v;
        }
        for k in i + 1..n {
            for l in k..n {
                let v = &q[k][i] * &q[i][l];
                q[k][l] -= v;
            }
        }
        for j in i + 1..n {
            let v = q[j][i].clone();
            q[i][j] = v;
        }
    }
    let target = rat(a);
    let mut out = Vec::new();
    let mut x = vec![BigInt::zero(); n];
    descend(&q, n, n - 1, &target, &target, &mut x, &mut out);
    out
}

fn descend(
    q: &[Vec<BigRational>],
    n: usize,
    i: usize,
    remaining: &BigRational,
    target: &BigRational,
    x: &mut ZVector,
    out: &mut Vec<ZVector>,
) {
    let mut center = BigRational::zero();
    for j in i + 1..n {
        if !x[j].is_zero() {
            center -= &q[i][j] * rat(&x[j]);
        }
    }
    let d = &q[i][i];
    let r2 = remaining / d;
    let k = r2.floor().to_integer().sqrt() + BigInt::one();
    let lo = center.floor().to_integer() - &k;
    let hi = center.ceil().to_integer() + &k;
    let mut xi = lo;
    while xi <= hi {
        let diff = rat(&xi) - &center;
        let used = d * &diff * &diff;
        if &used <= remaining {
            let rest = remaining - &used;
            x[i] = xi.clone();
            if i == 0 {
                if rest.is_zero() {
                    out.push(x.clone());
                }
            } else {
                descend(q, n, i - 1, &rest, target, x, out);
            }
        }
        xi += 1;
    }
    x[i] = BigInt::zero();
}

/// Vectors of square `a` in a definite lattice, in lattice coordinates,
/// sorted lexicographically. With `up_to_sign`, only vectors whose first
/// nonzero coordinate is positive are kept.
pub fn enumerate_vectors(l: &Lattice, a: &BigInt, up_to_sign: bool) -> Result<Vec<ZVector>> {
    vectors_of_gram(l.gram(), a, up_to_sign)
}

pub fn vectors_of_gram(g: &ZMatrix, a: &BigInt, up_to_sign: bool) -> Result<Vec<ZVector>> {
    let n = g.rows();
    if n == 0 {
        return Ok(if a.is_zero() && !up_to_sign { vec![Vec::new()] } else { Vec::new() });
    }
    let sign = definiteness(g).ok_or_else(|| Error::NotDefinite(format!("rank {n} form is not definite")))?;
    let (g, a) = if sign < 0 { (-g, -a) } else { (g.clone(), a.clone()) };
    let b = lll_reduce(&g);
    let reduced = b.congruence(&g);
    let mut out: Vec<ZVector> = fincke_pohst(&reduced, &a).into_iter().map(|y| b.mul_vec(&y)).collect();
    if up_to_sign {
        out.retain(|v| v.iter().any(|x| !x.is_zero()));
        out = out.into_iter().map(|v| sign_normalized(&v)).collect();
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Vectors of square `a` in a definite sublattice, as ambient vectors.
pub fn sublattice_vectors(l: &Lattice, s: &Sublattice, a: &BigInt, up_to_sign: bool) -> Result<Vec<ZVector>> {
    let coords = vectors_of_gram(&s.gram(l), a, up_to_sign)?;
    let mut out: Vec<ZVector> = coords.iter().map(|c| s.embed(c)).collect();
    if up_to_sign {
        out = out.into_iter().map(|v| sign_normalized(&v)).collect();
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Roots (vectors of square −2) of a negative definite sublattice.
pub fn roots_in(l: &Lattice, s: &Sublattice) -> Result<Vec<ZVector>> {
    if s.is_zero() {
        return Ok(Vec::new());
    }
    sublattice_vectors(l, s, &BigInt::from(-2), false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::standard_lattice;
    use crate::matrix::zvec;

    #[test]
    fn e8_has_240_roots() {
        let e8 = standard_lattice("E8").unwrap();
        assert_eq!(enumerate_vectors(&e8, &BigInt::from(-2), false).unwrap().len(), 240);
        assert_eq!(enumerate_vectors(&e8, &BigInt::from(-2), true).unwrap().len(), 120);
    }

    #[test]
    fn indefinite_is_rejected() {
        let l = standard_lattice("diag(2,-2)").unwrap();
        assert!(matches!(enumerate_vectors(&l, &BigInt::from(-2), false), Err(Error::NotDefinite(_))));
    }

    #[test]
    fn skewed_basis_matches_naive() {
        let g = ZMatrix::from_i64(&[&[2, 7], &[7, 26]]);
        let found = vectors_of_gram(&g, &BigInt::from(2), false).unwrap();
        let mut naive = Vec::new();
        for x in -40i64..=40 {
            for y in -40i64..=40 {
                if 2 * x * x + 14 * x * y + 26 * y * y == 2 {
                    naive.push(zvec(&[x, y]));
                }
            }
        }
        naive.sort();
        assert_eq!(found, naive);
    }

    #[test]
    fn lll_preserves_determinant() {
        let g = ZMatrix::from_i64(&[&[10, 7, 3], &[7, 6, 2], &[3, 2, 2]]);
        let b = lll_reduce(&g);
        assert!(b.determinant().abs().is_one());
        assert_eq!(b.congruence(&g).determinant(), g.determinant());
    }
}
