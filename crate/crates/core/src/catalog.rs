//! Named actions and explicit classifications: the dihedral actions of
//! order 6 on `3U ⊕ 2E8`, order-3 isometries of `2U`, and the Weyl groups
//! bounding symplectic torus actions.
//!
//! The K3 lattice basis is `P ⊕ Q` with `P = 2U` spanned by
//! `u1, v1, u2, v2` (coordinates 0..4) and `Q = U ⊕ 2E8` (coordinates 4..22).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::action::{analyze, extend_equivariantly, LatticeAction, DEFAULT_BOUND};
use crate::binary::rank2_class;
use crate::enumerate::{enumerate_vectors, sublattice_vectors};
use crate::error::{Error, Result};
use crate::lattice::{fixed_sublattice, standard_lattice, Lattice, Sublattice};
use crate::matrix::{int, sign_normalized, zvec, ZMatrix, ZVector};
use crate::roots::RootSystem;
use crate::walls::{wall_report, WallReport};
use crate::wedge::wedge_lattice;

pub const FIXTURES: [&str; 7] =
    ["k3_lattice", "torus_lattice", "d3_S", "d3_Sprime", "e8_swap", "kappa_flip", "reflection"];

pub const T: [[i64; 4]; 4] = [[0, 0, -1, 0], [0, -1, 0, -1], [1, 0, -1, 0], [0, 1, 0, 0]];
pub const S: [[i64; 4]; 4] = [[0, 0, 1, 0], [1, 0, 0, 1], [1, 0, 0, 0], [0, 1, -1, 0]];
pub const S_PRIME: [[i64; 4]; 4] = [[1, 0, -1, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, -1, 0, -1]];

/// A named action with the values it is known to produce.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub action: LatticeAction,
    /// `(report key, value)` pairs.
    pub expected: Vec<(&'static str, String)>,
}

pub fn matrix4(m: &[[i64; 4]; 4]) -> ZMatrix {
    let rows: Vec<&[i64]> = m.iter().map(|r| &r[..]).collect();
    ZMatrix::from_i64(&rows)
}

pub fn k3_lattice() -> Lattice {
    standard_lattice("3U+2E8").expect("valid name")
}

/// `u1, v1, u2, v2` as ambient vectors.
pub fn p_basis() -> [ZVector; 4] {
    let e = |i: usize| {
        let mut v = vec![BigInt::zero(); 22];
        v[i] = BigInt::one();
        v
    };
    [e(0), e(1), e(2), e(3)]
}

fn embed4(v: &[i64]) -> ZVector {
    let mut out = zvec(v);
    out.resize(22, BigInt::zero());
    out
}

/// `w1 = u1 + v1 + u2`, `w2 = u1 + u2 − v2`.
pub fn w_basis() -> [ZVector; 2] {
    [embed4(&[1, 1, 1, 0]), embed4(&[1, 0, 1, -1])]
}

pub fn p_block() -> Sublattice {
    Sublattice::span(22, &p_basis())
}

pub fn q_block() -> Sublattice {
    let rows: Vec<ZVector> = (4..22).map(|i| ZMatrix::identity(22).row(i)).collect();
    Sublattice::span(22, &rows)
}

/// Twisted matrices: the involutions act on `Q` by `−1` in the induced action,
/// hence trivially after multiplying by κ = −1.
fn d3_action(s: &[[i64; 4]; 4]) -> LatticeAction {
    d3_action_with(&matrix4(&T), &matrix4(s))
}

/// The dihedral action with arbitrary blocks `t`, `s` on `P`.
pub fn d3_action_with(t: &ZMatrix, s: &ZMatrix) -> LatticeAction {
    let id18 = ZMatrix::identity(18);
    let t = ZMatrix::block_diag(&[t, &id18]);
    let s = ZMatrix::block_diag(&[s, &id18]);
    LatticeAction::new(k3_lattice(), vec![("t".into(), t, 1), ("s".into(), s, -1)]).expect("isometries")
}

pub fn fixture(name: &str) -> Result<Fixture> {
    let l = k3_lattice();
    let ex = |pairs: &[(&'static str, &str)]| pairs.iter().map(|(k, v)| (*k, v.to_string())).collect();
    let f = match name {
        "k3_lattice" => Fixture {
            name: "k3_lattice",
            action: LatticeAction::new(l, vec![])?,
            expected: ex(&[("lattice.signature", "(3,19)"), ("group.order", "1"), ("rho.order", "1")]),
        },
        "torus_lattice" => Fixture {
            name: "torus_lattice",
            action: LatticeAction::new(wedge_lattice(), vec![])?,
            expected: ex(&[("lattice.signature", "(3,3)"), ("group.order", "1")]),
        },
        "d3_S" => Fixture {
            name: "d3_S",
            action: d3_action(&S),
            expected: ex(&[
                ("group.order", "6"),
                ("rho.order", "3"),
                ("rho.real", "false"),
                ("ldot.rank", "0"),
                ("geometric", "true"),
                ("walls.count", "2"),
                ("components", "3"),
            ]),
        },
        "d3_Sprime" => Fixture {
            name: "d3_Sprime",
            action: d3_action(&S_PRIME),
            expected: ex(&[
                ("group.order", "6"),
                ("rho.order", "3"),
                ("rho.real", "false"),
                ("geometric", "true"),
                ("walls.count", "0"),
                ("components", "1"),
            ]),
        },
        "e8_swap" => {
            let mut m = ZMatrix::zeros(22, 22);
            for i in 0..6 {
                m.set(i, i, BigInt::one());
            }
            for i in 0..8 {
                m.set(6 + i, 14 + i, BigInt::one());
                m.set(14 + i, 6 + i, BigInt::one());
            }
            Fixture {
                name: "e8_swap",
                action: LatticeAction::new(l, vec![("swap".into(), m, 1)])?,
                expected: ex(&[("group.order", "2"), ("rho.order", "1"), ("ldot.rank", "8"), ("geometric", "true")]),
            }
        }
        "kappa_flip" => {
            let mut m = ZMatrix::identity(22);
            m.set(0, 0, -BigInt::one());
            m.set(1, 1, -BigInt::one());
            Fixture {
                name: "kappa_flip",
                action: LatticeAction::new(l, vec![("c".into(), m, -1)])?,
                expected: ex(&[("group.order", "2"), ("rho.order", "1"), ("rho.real", "true"), ("geometric", "true")]),
            }
        }
        "reflection" => {
            let mut r = vec![BigInt::zero(); 22];
            r[6] = BigInt::one();
            let m = l.reflection(&r)?.into_matrix();
            Fixture {
                name: "reflection",
                action: LatticeAction::new(l, vec![("r".into(), m, 1)])?,
                expected: ex(&[("group.order", "2"), ("geometric", "false")]),
            }
        }
        other => return Err(Error::UnknownFixture(other.to_string())),
    };
    Ok(f)
}

/// Fixed-lattice class label of an order-3 isometry of `2U`.
fn class_label(g: &ZMatrix) -> String {
    if g.rows() == 0 {
        return "0".into();
    }
    if g == &ZMatrix::from_i64(&[&[-2, 1], &[1, -2]]) {
        return "A2".into();
    }
    if g == &ZMatrix::from_i64(&[&[2, 1], &[1, 2]]) {
        return "A2(-1)".into();
    }
    g.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Order3Report {
    pub bound: i64,
    /// Solutions in lexicographic order of their columns.
    pub hits: Vec<ZMatrix>,
    /// Fixed-lattice class of each hit.
    pub labels: Vec<String>,
    pub class_counts: BTreeMap<String, usize>,
}

impl Order3Report {
    pub const CAVEAT: &'static str = "complete only for matrices with entries bounded by the search bound";

    pub fn all_three_occur(&self) -> bool {
        ["A2", "A2(-1)", "0"].iter().all(|k| self.class_counts.contains_key(*k))
    }
}

/// All `T` with entries in `[−bound, bound]`, `Tᵀ G T = G` for `G = Gram(2U)`,
/// `T³ = 1`, `T ≠ 1`. Columns are chosen one at a time subject to the Gram
/// conditions against the earlier columns.
pub fn classify_order3_on_2u(bound: i64) -> Order3Report {
    let l = standard_lattice("2U").expect("valid name");
    let g: Vec<Vec<i64>> =
        (0..4).map(|i| (0..4).map(|j| i64::try_from(l.gram().get(i, j)).expect("small")).collect()).collect();
    let dot = |x: &[i64], y: &[i64]| -> i64 {
        let mut s = 0;
        for i in 0..4 {
            for j in 0..4 {
                s += x[i] * g[i][j] * y[j];
            }
        }
        s
    };
    let mut boxed: Vec<[i64; 4]> = Vec::new();
    if bound >= 0 {
        let r = -bound..=bound;
        for a in r.clone() {
            for b in r.clone() {
                for c in r.clone() {
                    for d in r.clone() {
                        boxed.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    let mut hits = Vec::new();
    let mut cols: Vec<[i64; 4]> = Vec::with_capacity(4);
    fn search(
        k: usize,
        cols: &mut Vec<[i64; 4]>,
        boxed: &[[i64; 4]],
        g: &[Vec<i64>],
        dot: &dyn Fn(&[i64], &[i64]) -> i64,
        hits: &mut Vec<ZMatrix>,
    ) {
        if k == 4 {
            let rows: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| cols[j][i]).collect()).collect();
            let refs: Vec<&[i64]> = rows.iter().map(|r| &r[..]).collect();
            let t = ZMatrix::from_i64(&refs);
            let tr = t.trace();
            if !t.is_identity() && (tr == int(1) || tr == int(-2)) && t.pow(3).is_identity() {
                hits.push(t);
            }
            return;
        }
        for v in boxed {
            if dot(v, v) != g[k][k] {
                continue;
            }
            if (0..k).all(|i| dot(&cols[i], v) == g[i][k]) {
                cols.push(*v);
                search(k + 1, cols, boxed, g, dot, hits);
                cols.pop();
            }
        }
    }
    search(0, &mut cols, &boxed, &g, &dot, &mut hits);
    let labels: Vec<String> = hits
        .iter()
        .map(|t| {
            let f = fixed_sublattice(4, std::slice::from_ref(t));
            class_label(&rank2_class(&f.as_lattice(&l)).expect("definite or zero"))
        })
        .collect();
    let mut class_counts = BTreeMap::new();
    for lab in &labels {
        *class_counts.entry(lab.clone()).or_insert(0) += 1;
    }
    Order3Report { bound, hits, labels, class_counts }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusEntry {
    pub root_type: &'static str,
    pub weyl_order: usize,
    pub rotation_order: usize,
    /// Images in `E8` of the simple roots.
    pub embedding: Vec<ZVector>,
}

/// For `R ∈ {A3, A2⊕A1, 3A1}`: `|W(R)|`, `|W(R) ∩ SO|` and an embedding of
/// `R` into `E8`.
pub fn torus_symplectic_survey() -> Result<Vec<TorusEntry>> {
    let e8 = standard_lattice("E8")?;
    let e8_roots = enumerate_vectors(&e8, &int(-2), false)?;
    let mut out = Vec::new();
    for (name, spec) in [("A3", "A3"), ("A2+A1", "A2+A1"), ("3A1", "3A1")] {
        let l = standard_lattice(spec)?;
        let rs = RootSystem::of_lattice(&l)?;
        let (_, closure) = rs.weyl_group_on_span(100_000)?;
        let rotation_order = closure.elements.iter().filter(|m| m.determinant().is_one()).count();
        let embedding = embed_roots(&e8, &e8_roots, l.gram())
            .ok_or_else(|| Error::Verification(format!("{name} does not embed into E8")))?;
        out.push(TorusEntry { root_type: name, weyl_order: closure.order(), rotation_order, embedding });
    }
    Ok(out)
}

/// Roots of `e8` realizing the Gram matrix `target`, found by backtracking.
pub fn embed_roots(e8: &Lattice, roots: &[ZVector], target: &ZMatrix) -> Option<Vec<ZVector>> {
    fn go(e8: &Lattice, roots: &[ZVector], target: &ZMatrix, chosen: &mut Vec<ZVector>) -> bool {
        let k = chosen.len();
        if k == target.rows() {
            return true;
        }
        for r in roots {
            if &e8.norm(r) != target.get(k, k) {
                continue;
            }
            if (0..k).all(|i| &e8.dot(&chosen[i], r) == target.get(i, k)) {
                chosen.push(r.clone());
                if go(e8, roots, target, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    go(e8, roots, target, &mut chosen).then_some(chosen)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum D3Variant {
    S,
    SPrime,
}

#[derive(Clone, Debug)]
pub struct D3Report {
    pub variant: D3Variant,
    pub group_order: usize,
    pub invariant_is_q: bool,
    pub rho_order: u32,
    pub real: bool,
    pub rho_is_p: bool,
    pub ldot_rank: usize,
    /// Gram of `(w1, w2)` when they form a basis of `M⁺`.
    pub m_plus_w_gram: Option<ZMatrix>,
    pub m_plus_class: ZMatrix,
    pub m_minus_class: ZMatrix,
    /// Square −4 vectors up to sign in `M⁺` and `M⁻`.
    pub minus_four: (Vec<ZVector>, Vec<ZVector>),
    pub walls: WallReport,
    /// Sign-normalized normals of the wall rays.
    pub wall_normals: Vec<ZVector>,
    /// Sign pairs `(ε1, ε2)` on `(w1, w2)` that extend to `P`; empty when
    /// `(w1, w2)` is not a basis.
    pub extendable_signs: Vec<(i8, i8)>,
    pub mismatches: Vec<String>,
}

/// Runs the full group-action and wall pipeline on a dihedral fixture and
/// compares the outcome with the known values.
pub fn d3_full_pipeline(variant: D3Variant) -> Result<D3Report> {
    let name = match variant {
        D3Variant::S => "d3_S",
        D3Variant::SPrime => "d3_Sprime",
    };
    let fx = fixture(name)?;
    let a = &fx.action;
    let l = a.ambient();
    let an = analyze(a, DEFAULT_BOUND)?;
    let e = an.eigen.as_ref().ok_or_else(|| Error::Verification("no eigenlattices".into()))?;
    let j = an.complex_structure.as_ref();
    let walls = wall_report(l, e, j, None)?;
    let wall_normals: Vec<ZVector> = walls.walls.iter().filter_map(|w| w.normal.clone()).collect();

    let w = w_basis();
    let w_span = Sublattice::span(22, &w);
    let m_plus_w_gram = (w_span == e.m_plus).then(|| l.gram_of(&w));
    let mut extendable_signs = Vec::new();
    if m_plus_w_gram.is_some() {
        let c: Vec<ZVector> = w.iter().map(|x| e.m_plus.coordinates(x).expect("in M⁺")).collect();
        let cm = ZMatrix::from_columns(2, &c);
        let ci = cm.inverse_unimodular().expect("basis change");
        for (e1, e2) in [(1i8, 1i8), (1, -1), (-1, 1), (-1, -1)] {
            let dm = ZMatrix::from_i64(&[&[e1 as i64, 0], &[0, e2 as i64]]);
            let a_map = &(&cm * &dm) * &ci;
            if let Some(j) = j {
                if extend_equivariantly(l, e, j, &a_map)?.is_some() {
                    extendable_signs.push((e1, e2));
                }
            }
        }
    }
    let four = |s: &Sublattice| -> Result<Vec<ZVector>> {
        let mut v: Vec<ZVector> = if s.signature(l).plus > 0 && s.signature(l).minus > 0 {
            crate::binary::split_sublattice_vectors(l, s, &int(-4))?
        } else {
            sublattice_vectors(l, s, &int(-4), false)?
        };
        v = v.into_iter().map(|x| sign_normalized(&x)).collect();
        v.sort();
        v.dedup();
        Ok(v)
    };
    let report = D3Report {
        variant,
        group_order: an.group.order(),
        invariant_is_q: an.invariant == q_block(),
        rho_order: an.fundamental.order,
        real: an.fundamental.real,
        rho_is_p: an.rho == p_block(),
        ldot_rank: an.geometric.ldot.rank(),
        m_plus_w_gram,
        m_plus_class: rank2_class(&e.m_plus.as_lattice(l))?,
        m_minus_class: rank2_class(&e.m_minus.as_lattice(l))?,
        minus_four: (four(&e.m_plus)?, four(&e.m_minus)?),
        walls,
        wall_normals,
        extendable_signs,
        mismatches: Vec::new(),
    };
    let mut report = report;
    report.mismatches = d3_mismatches(&report, &fx);
    Ok(report)
}

fn d3_mismatches(r: &D3Report, fx: &Fixture) -> Vec<String> {
    let mut bad = Vec::new();
    let mut check = |ok: bool, what: &str| {
        if !ok {
            bad.push(what.to_string());
        }
    };
    let got = |k: &str| -> Option<String> {
        Some(match k {
            "group.order" => r.group_order.to_string(),
            "rho.order" => r.rho_order.to_string(),
            "rho.real" => r.real.to_string(),
            "ldot.rank" => r.ldot_rank.to_string(),
            "geometric" => (r.ldot_rank == 0).to_string(),
            "walls.count" => r.walls.walls.len().to_string(),
            "components" => r.walls.components.to_string(),
            _ => return None,
        })
    };
    for (k, v) in &fx.expected {
        if let Some(g) = got(k) {
            check(&g == v, &format!("{k} = {g}, expected {v}"));
        }
    }
    check(r.invariant_is_q, "L^G differs from the U ⊕ 2E8 block");
    check(r.rho_is_p, "L_ρ differs from the 2U block");
    let u2 = ZMatrix::from_i64(&[&[0, 2], &[2, 0]]);
    match r.variant {
        D3Variant::S => {
            check(r.m_plus_w_gram == Some(ZMatrix::from_i64(&[&[2, 0], &[0, -2]])), "M⁺ Gram in (w1, w2)");
            let [w1, w2] = w_basis();
            // With T on columns the second normal is w1 + 2w2; the label
            // 2w2 − w1 arises when T acts on rows (see `d3_action_with`).
            let w12: ZVector = w2.iter().zip(&w1).map(|(a, b)| a * 2 + b).collect();
            let mut want = vec![sign_normalized(&w2), sign_normalized(&w12)];
            want.sort();
            let mut have = r.wall_normals.clone();
            have.sort();
            check(have == want, "wall normals differ from {w2, w1 + 2w2}");
            check(r.extendable_signs == vec![(1, 1), (-1, -1)], "Aut_G P ≠ {±1}");
        }
        D3Variant::SPrime => {
            check(r.m_plus_class == u2 && r.m_minus_class == u2, "M^± not isomorphic to U(2)");
            check(r.minus_four.0.len() == 1 && r.minus_four.1.len() == 1, "square −4 vectors not unique");
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_valid() {
        for name in FIXTURES {
            let f = fixture(name).unwrap();
            assert_eq!(f.name, name);
        }
        assert!(matches!(fixture("nope"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn d3_relations() {
        let t = matrix4(&T);
        let s = matrix4(&S);
        assert!(t.pow(3).is_identity());
        assert!(s.pow(2).is_identity());
        assert_eq!(&(&s * &t) * &s, t.pow(2));
        let sp = matrix4(&S_PRIME);
        assert_eq!(&(&sp * &t) * &sp, t.pow(2));
    }

    #[test]
    fn order3_bound_zero_and_one() {
        assert!(classify_order3_on_2u(0).hits.is_empty());
        let r = classify_order3_on_2u(1);
        assert!(r.hits.iter().all(|t| t.pow(3).is_identity()));
    }

    #[test]
    fn d3_pipelines() {
        for v in [D3Variant::S, D3Variant::SPrime] {
            let r = d3_full_pipeline(v).unwrap();
            assert!(r.mismatches.is_empty(), "{v:?}: {:?}", r.mismatches);
        }
    }
}
