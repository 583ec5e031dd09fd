#![allow(dead_code)]

use lattice_actions::action::LatticeAction;
use lattice_actions::catalog::{matrix4, S, S_PRIME, T};
use lattice_actions::lattice::{standard_lattice, Lattice};
use lattice_actions::matrix::{ZMatrix, ZVector};
use num_bigint::BigInt;
use proptest::prelude::*;

pub const CASES: u32 = 1000;

pub fn config() -> ProptestConfig {
    ProptestConfig { cases: CASES, max_shrink_iters: 64, failure_persistence: None, ..ProptestConfig::default() }
}

pub fn to_i64(x: &BigInt) -> i64 {
    i64::try_from(x).expect("small entry")
}

/// All vectors with entries in `[-r, r]`.
pub fn box_vectors(n: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (-r..=r).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

pub fn zv(v: &[i64]) -> ZVector {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Vectors of a small box whose reflections are integral isometries.
pub fn reflecting_vectors(l: &Lattice) -> Vec<ZVector> {
    box_vectors(l.rank(), 1)
        .into_iter()
        .map(|v| zv(&v))
        .filter(|v| {
            let n = l.norm(v);
            (n == BigInt::from(2) || n == BigInt::from(-2) || n == BigInt::from(1) || n == BigInt::from(-1))
                && l.reflection(v).is_ok()
        })
        .collect()
}

/// Product of reflections selected by `word` (indices taken modulo the list).
pub fn reflection_word(l: &Lattice, vs: &[ZVector], word: &[usize]) -> ZMatrix {
    word.iter().fold(ZMatrix::identity(l.rank()), |m, &i| &l.reflection(&vs[i % vs.len()]).unwrap().into_matrix() * &m)
}

pub const SMALL_LATTICES: [&str; 6] = ["U+A2", "2U", "A3", "D4", "U(2)+A1", "U+A1+A1"];

/// `3U ⊕ A2` with the dihedral blocks on the first `2U` and the identity on
/// `U ⊕ A2`, a rank-8 model of the order-6 fixtures.
pub fn small_d3(prime: bool) -> LatticeAction {
    let l = standard_lattice("3U+A2").unwrap();
    let id = ZMatrix::identity(4);
    let t = ZMatrix::block_diag(&[&matrix4(&T), &id]);
    let s = ZMatrix::block_diag(&[&matrix4(if prime { &S_PRIME } else { &S }), &id]);
    LatticeAction::new(l, vec![("t".into(), t, 1), ("s".into(), s, -1)]).unwrap()
}

/// `3U ⊕ A2` with `−1` on the first `U`, κ = −1.
pub fn small_flip() -> LatticeAction {
    let l = standard_lattice("3U+A2").unwrap();
    let mut m = ZMatrix::identity(8);
    m.set(0, 0, BigInt::from(-1));
    m.set(1, 1, BigInt::from(-1));
    LatticeAction::new(l, vec![("c".into(), m, -1)]).unwrap()
}
