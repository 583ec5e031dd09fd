mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use common::*;
use lattice_actions::action::{analyze, Analysis, LatticeAction};
use lattice_actions::catalog::fixture;
use lattice_actions::lattice::{standard_lattice, Isometry, Lattice};
use lattice_actions::matrix::{sign_normalized, ZVector};
use lattice_actions::walls::{candidate_roots, component_count, segment_vectors, wall, wall_report};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn ambient() -> &'static (Lattice, Vec<ZVector>) {
    static CELL: OnceLock<(Lattice, Vec<ZVector>)> = OnceLock::new();
    CELL.get_or_init(|| {
        let l = standard_lattice("3U+A2").unwrap();
        let vs = reflecting_vectors(&l);
        (l, vs)
    })
}

fn conjugated(prime: bool, word: &[usize]) -> (LatticeAction, Isometry) {
    let (l, vs) = ambient();
    let h = Isometry::new(l, reflection_word(l, vs, word)).unwrap();
    (small_d3(prime).conjugate(&h), h)
}

fn analysis(a: &LatticeAction) -> Analysis {
    analyze(a, 1024).unwrap()
}

fn neg(v: &[BigInt]) -> ZVector {
    v.iter().map(|c| -c).collect()
}

/// Naive oracle for candidates when `L_ρ` is a `2U` block on the first four
/// coordinates: `v⁺² = (v·cv − 2)/2` and `v⁻² = (−2 − v·cv)/2`, so both
/// projections are zero or negative exactly when `v·cv ∈ {−1, 0, 1}` or
/// `cv = ±v`.
fn naive_candidates(l: &Lattice, c: &lattice_actions::matrix::ZMatrix, r: i64) -> BTreeSet<ZVector> {
    let n = l.rank();
    let mut out = BTreeSet::new();
    for head in box_vectors(4, r) {
        let mut v = zv(&head);
        v.resize(n, BigInt::zero());
        if l.norm(&v) != BigInt::from(-2) {
            continue;
        }
        let cv = c.mul_vec(&v);
        let p = l.dot(&v, &cv);
        if p.abs() <= BigInt::from(1) || cv == v || cv == neg(&v) {
            out.insert(sign_normalized(&v));
        }
    }
    out
}

#[test]
fn candidates_match_the_naive_oracle() {
    for prime in [false, true] {
        let a = small_d3(prime);
        let x = analysis(&a);
        let e = x.eigen.as_ref().unwrap();
        let got: BTreeSet<ZVector> = candidate_roots(a.ambient(), e, None).unwrap().roots.into_iter().collect();
        assert!(got.iter().all(|v| v.iter().all(|c| c.abs() <= BigInt::from(8))));
        assert_eq!(got, naive_candidates(a.ambient(), &e.c, 8), "prime = {prime}");
    }
}

#[test]
fn candidates_of_the_full_fixtures_match_the_naive_oracle() {
    for name in ["d3_S", "d3_Sprime"] {
        let a = fixture(name).unwrap().action;
        let x = analysis(&a);
        let e = x.eigen.as_ref().unwrap();
        assert_eq!(e.rho.rank(), 4);
        let got: BTreeSet<ZVector> = candidate_roots(a.ambient(), e, None).unwrap().roots.into_iter().collect();
        let rho_is_head = e.rho.basis().iter().all(|b| b[4..].iter().all(Zero::is_zero));
        assert!(rho_is_head, "{name}: L_ρ is not the leading 2U block");
        assert_eq!(got, naive_candidates(a.ambient(), &e.c, 8), "{name}");
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn wall_data_is_conjugation_equivariant(prime in any::<bool>(), word in prop::collection::vec(0usize..100_000, 0..4)) {
        let a = small_d3(prime);
        let (b, h) = conjugated(prime, &word);
        let (x, y) = (analysis(&a), analysis(&b));
        let (ex, ey) = (x.eigen.as_ref().unwrap(), y.eigen.as_ref().unwrap());
        let wx = wall_report(a.ambient(), ex, x.complex_structure.as_ref(), None).unwrap();
        let wy = wall_report(b.ambient(), ey, y.complex_structure.as_ref(), None).unwrap();
        prop_assert_eq!(wx.candidate_count, wy.candidate_count);
        prop_assert_eq!(wx.walls.len(), wy.walls.len());
        prop_assert_eq!(wx.components, wy.components);
        let moved: BTreeSet<ZVector> = wx.walls.iter().map(|w| sign_normalized(&h.matrix().mul_vec(&w.root))).collect();
        let roots: BTreeSet<ZVector> = wy.walls.iter().map(|w| sign_normalized(&w.root)).collect();
        // Several roots can share a ray; compare the rays they cut instead.
        let ray = |v: &ZVector| wall(b.ambient(), v, ey, y.complex_structure.as_ref()).direction;
        let rays_moved: BTreeSet<_> = moved.iter().map(ray).collect();
        let rays: BTreeSet<_> = roots.iter().map(ray).collect();
        prop_assert_eq!(rays_moved, rays);
    }

    #[test]
    fn walls_ignore_sign_and_scale(prime in any::<bool>(), word in prop::collection::vec(0usize..100_000, 0..3), k in 1i64..=5) {
        let (a, _) = conjugated(prime, &word);
        let x = analysis(&a);
        let e = x.eigen.as_ref().unwrap();
        let j = x.complex_structure.as_ref();
        let l = a.ambient();
        let c = candidate_roots(l, e, None).unwrap();
        let walls: Vec<_> = c.roots.iter().map(|v| wall(l, v, e, j)).collect();
        for (v, w) in c.roots.iter().zip(&walls) {
            let w2 = wall(l, &neg(v), e, j);
            prop_assert_eq!(&w.direction, &w2.direction);
            prop_assert_eq!(w.normal.as_ref().map(|n| sign_normalized(n)), w2.normal.as_ref().map(|n| sign_normalized(n)));
        }
        let base = component_count(&walls, e, c.roots.len(), c.complete).unwrap();
        let scaled: Vec<_> = walls.iter().map(|w| {
            let mut w = w.clone();
            w.direction = w.direction.map(|d| d.iter().map(|x| x * k).collect());
            w
        }).collect();
        let negated: Vec<_> = walls.iter().map(|w| {
            let mut w = w.clone();
            w.direction = w.direction.as_ref().map(|d| neg(d));
            w
        }).collect();
        prop_assert_eq!(component_count(&scaled, e, c.roots.len(), c.complete).unwrap().components, base.components);
        prop_assert_eq!(component_count(&negated, e, c.roots.len(), c.complete).unwrap().components, base.components);
    }

    #[test]
    fn segment_vectors_are_symmetric_and_sound(idx in 0usize..3, word in prop::collection::vec(0usize..1000, 0..3), a in prop::sample::select(vec![-2i64, -4, -6])) {
        let name = ["U+A2", "U+A1+A1", "U(2)+A1"][idx];
        let m = standard_lattice(name).unwrap();
        let vs = reflecting_vectors(&m);
        let h = reflection_word(&m, &vs, &word);
        let n = m.rank();
        let mut e1 = vec![BigInt::zero(); n];
        let mut e2 = vec![BigInt::zero(); n];
        e1[0] = BigInt::from(1);
        e2[1] = BigInt::from(1);
        let (u1, u2) = (h.mul_vec(&e1), h.mul_vec(&e2));
        let a = BigInt::from(a);
        let s12 = segment_vectors(&m, &u1, &u2, &a).unwrap();
        let s21 = segment_vectors(&m, &u2, &u1, &a).unwrap();
        prop_assert_eq!(&s12, &s21);
        let set: BTreeSet<&ZVector> = s12.iter().collect();
        for v in &s12 {
            prop_assert_eq!(&m.norm(v), &a);
            let (p, q) = (m.dot(&u1, v), m.dot(&u2, v));
            prop_assert!((&p * &q).is_negative() || (p.is_zero() && q.is_zero()));
            prop_assert!(set.contains(&neg(v)));
        }
        // Completeness on a box around the origin.
        for x in box_vectors(n, 2) {
            let v = zv(&x);
            if m.norm(&v) != a {
                continue;
            }
            let (p, q) = (m.dot(&u1, &v), m.dot(&u2, &v));
            if (&p * &q).is_negative() || (p.is_zero() && q.is_zero()) {
                prop_assert!(set.contains(&v));
            }
        }
    }
}
