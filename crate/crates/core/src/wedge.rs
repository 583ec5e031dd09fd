//! The lattice `Λ²(Z⁴)*` with its `∧⁴` pairing and the induced map
//! `φ ↦ ∧²φ*` from `SL₄(Z)`.
//!
//! Basis order: `e12, e13, e14, e23, e24, e34`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Isometry, Lattice};
use crate::matrix::ZMatrix;
use crate::poly::{char_poly, eval, multiplicity};

pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Gram matrix of `x·y = (x ∧ y)/e1234`.
pub fn wedge_gram() -> ZMatrix {
    let mut g = ZMatrix::zeros(6, 6);
    for (a, &(i, j)) in PAIRS.iter().enumerate() {
        for (b, &(k, l)) in PAIRS.iter().enumerate() {
            g.set(a, b, BigInt::from(permutation_sign(&[i, j, k, l])));
        }
    }
    g
}

/// Sign of a permutation of `0..4`, or 0 on repeated entries.
fn permutation_sign(p: &[usize; 4]) -> i64 {
    let mut s = 1;
    for a in 0..4 {
        for b in a + 1..4 {
            if p[a] == p[b] {
                return 0;
            }
            if p[a] > p[b] {
                s = -s;
            }
        }
    }
    s
}

pub fn wedge_lattice() -> Lattice {
    Lattice::new(wedge_gram()).expect("symmetric")
}

/// Signed permutation `P` with `Pᵀ · wedge_gram · P = Gram(3U)`.
pub fn three_u_basis() -> ZMatrix {
    // Columns: e12, e34, e13, -e24, e14, e23.
    ZMatrix::from_i64(&[
        &[1, 0, 0, 0, 0, 0],
        &[0, 0, 1, 0, 0, 0],
        &[0, 0, 0, 0, 1, 0],
        &[0, 0, 0, 0, 0, 1],
        &[0, 0, 0, -1, 0, 0],
        &[0, 1, 0, 0, 0, 0],
    ])
}

/// `∧²a` on `Λ²`: the `(kl, ij)` entry is the `2×2` minor on rows `k, l`
/// and columns `i, j`.
pub fn exterior_square(a: &ZMatrix) -> ZMatrix {
    let mut w = ZMatrix::zeros(6, 6);
    for (col, &(i, j)) in PAIRS.iter().enumerate() {
        for (row, &(k, l)) in PAIRS.iter().enumerate() {
            let minor = a.get(k, i) * a.get(l, j) - a.get(l, i) * a.get(k, j);
            w.set(row, col, minor);
        }
    }
    w
}

/// `∧²(φ^{-T})`, an isometry of [`wedge_lattice`] with determinant 1.
pub fn wedge_square(phi: &ZMatrix) -> Result<Isometry> {
    if phi.rows() != 4 || phi.cols() != 4 {
        return Err(Error::Dimension("expected a 4x4 matrix".into()));
    }
    if !phi.determinant().is_one() {
        return Err(Error::Precondition("determinant must be 1".into()));
    }
    let dual = phi.inverse_unimodular().expect("unimodular").transpose();
    Isometry::new(&wedge_lattice(), exterior_square(&dual))
}

/// Order of a matrix when it is at most `bound`.
pub fn finite_order(m: &ZMatrix, bound: u32) -> Option<u32> {
    let mut p = m.clone();
    for k in 1..=bound {
        if p.is_identity() {
            return Some(k);
        }
        p = &p * m;
    }
    None
}

/// For `φ ∈ SL₄(Z)` of finite order `> 2` whose `∧²` has eigenvalue `−1`
/// with multiplicity at least two: whether the eigenvalues of `φ` have the
/// form `ξ, ξ̄, −ξ, −ξ̄` with `ξ` non-real. Decided by the characteristic
/// polynomial being even with no roots `±1`.
pub fn conjugation_obstruction(phi: &ZMatrix) -> Result<bool> {
    if phi.rows() != 4 || phi.cols() != 4 {
        return Err(Error::Dimension("expected a 4x4 matrix".into()));
    }
    if !phi.determinant().is_one() {
        return Err(Error::Precondition("determinant must be 1".into()));
    }
    let order = finite_order(phi, 64).ok_or_else(|| Error::Precondition("matrix has infinite order".into()))?;
    if order <= 2 {
        return Err(Error::Precondition(format!("order {order} is at most 2")));
    }
    let w = wedge_square(phi)?;
    let x_plus_one = vec![BigInt::one(), BigInt::one()];
    if multiplicity(&char_poly(w.matrix()), &x_plus_one) < 2 {
        return Err(Error::Precondition("∧² lacks a double eigenvalue −1".into()));
    }
    let p = char_poly(phi);
    let even = p.iter().skip(1).step_by(2).all(Zero::is_zero);
    let no_real = !eval(&p, &BigInt::one()).is_zero() && !eval(&p, &-BigInt::one()).is_zero();
    Ok(even && no_real)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::standard_lattice;
    use num_traits::Signed;

    #[test]
    fn wedge_lattice_is_three_u() {
        let p = three_u_basis();
        assert_eq!(p.congruence(&wedge_gram()), standard_lattice("3U").unwrap().gram().clone());
        let l = wedge_lattice();
        assert!(l.is_even());
        assert_eq!(l.determinant().abs(), BigInt::one());
    }

    #[test]
    fn center_is_killed() {
        let m = -&ZMatrix::identity(4);
        assert!(wedge_square(&m).unwrap().is_identity());
        assert!(wedge_square(&ZMatrix::identity(4)).unwrap().is_identity());
        let bad = ZMatrix::from_i64(&[&[2, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert!(wedge_square(&bad).is_err());
    }

    #[test]
    fn x4_plus_1_companion() {
        let c = ZMatrix::from_i64(&[&[0, 0, 0, -1], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
        assert!(conjugation_obstruction(&c).unwrap());
        let order3 = ZMatrix::from_i64(&[&[0, -1, 0, 0], &[1, -1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert!(conjugation_obstruction(&order3).is_err());
        let swap = ZMatrix::from_i64(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
        assert!(conjugation_obstruction(&swap).is_err());
    }
}
