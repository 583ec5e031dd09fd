mod common;

use std::sync::OnceLock;

use common::*;
use lattice_actions::catalog::{
    classify_order3_on_2u, fixture, matrix4, torus_symplectic_survey, Order3Report, FIXTURES, S, S_PRIME, T,
};
use lattice_actions::lattice::standard_lattice;
use lattice_actions::matrix::ZMatrix;
use lattice_actions::roots::RootSystem;
use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn order3() -> &'static Order3Report {
    static CELL: OnceLock<Order3Report> = OnceLock::new();
    CELL.get_or_init(|| classify_order3_on_2u(2))
}

/// Signed permutation matrices preserving `Gram(2U)`; they keep the
/// coordinate box of the search.
fn box_symmetries() -> &'static Vec<ZMatrix> {
    static CELL: OnceLock<Vec<ZMatrix>> = OnceLock::new();
    CELL.get_or_init(|| {
        let l = standard_lattice("2U").unwrap();
        let perms = [
            [0, 1, 2, 3],
            [1, 0, 2, 3],
            [0, 1, 3, 2],
            [1, 0, 3, 2],
            [2, 3, 0, 1],
            [3, 2, 0, 1],
            [2, 3, 1, 0],
            [3, 2, 1, 0],
        ];
        let mut out = Vec::new();
        for p in perms {
            for signs in 0..16u32 {
                let mut m = ZMatrix::zeros(4, 4);
                for (i, &j) in p.iter().enumerate() {
                    let s = if signs >> i & 1 == 1 { -1 } else { 1 };
                    m.set(j, i, BigInt::from(s));
                }
                if l.is_isometry(&m).unwrap() {
                    out.push(m);
                }
            }
        }
        out
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn order3_hits_are_closed_under_inverse_and_box_symmetries(i in 0usize..10_000, k in 0usize..64) {
        let r = order3();
        let l = standard_lattice("2U").unwrap();
        let t = &r.hits[i % r.hits.len()];
        let label = &r.labels[i % r.hits.len()];
        prop_assert!(l.is_isometry(t).unwrap());
        prop_assert!(t.pow(3).is_identity() && !t.is_identity());
        let t2 = t.pow(2);
        let j = r.hits.iter().position(|h| h == &t2).unwrap();
        prop_assert_eq!(&r.labels[j], label);
        let syms = box_symmetries();
        let u = &syms[k % syms.len()];
        let c = &(u * t) * &u.inverse_unimodular().unwrap();
        let j = r.hits.iter().position(|h| h == &c).unwrap();
        prop_assert_eq!(&r.labels[j], label);
        prop_assert!(["A2", "A2(-1)", "0"].contains(&label.as_str()));
    }

    #[test]
    fn fixture_actions_are_consistent(i in 0usize..FIXTURES.len(), word in prop::collection::vec(0usize..2, 0..12)) {
        let f = fixture(FIXTURES[i]).unwrap();
        let a = &f.action;
        let l = a.ambient();
        prop_assert_eq!(l.rank(), if f.name == "torus_lattice" { 6 } else { 22 });
        prop_assert!(l.is_even());
        prop_assert!(l.gram().determinant().abs().is_one());
        let mats = a.matrices();
        if mats.is_empty() {
            return Ok(());
        }
        let mut m = ZMatrix::identity(l.rank());
        for &w in &word {
            m = &mats[w % mats.len()] * &m;
        }
        prop_assert!(l.is_isometry(&m).unwrap());
    }
}

#[test]
fn dihedral_relations() {
    let t = matrix4(&T);
    for s in [matrix4(&S), matrix4(&S_PRIME)] {
        assert!(t.pow(3).is_identity());
        assert!(s.pow(2).is_identity());
        assert_eq!(&(&s * &t) * &s, t.pow(2));
    }
}

#[test]
fn survey_orders_agree_with_factorials() {
    // |W(A3)| = 4!, |W(A2 ⊕ A1)| = 3!·2!, |W(3A1)| = 2³; rotations are half.
    let expected = [("A3", 24usize, 12usize), ("A2+A1", 12, 8), ("3A1", 8, 6)];
    let survey = torus_symplectic_survey().unwrap();
    let e8 = standard_lattice("E8").unwrap();
    for (entry, (name, order, roots)) in survey.iter().zip(expected) {
        assert_eq!(entry.root_type, name);
        assert_eq!(entry.weyl_order, order);
        assert_eq!(entry.rotation_order, order / 2);
        let l = standard_lattice(name).unwrap();
        assert_eq!(&e8.gram_of(&entry.embedding), l.gram());
        let r = RootSystem::of_lattice(&l).unwrap();
        assert_eq!(r.roots().len(), roots);
    }
}
