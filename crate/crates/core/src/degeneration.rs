//! τ-saturation of invariant root systems and the degenerated action
//! `τ_R(g) = τ(g) · w_g⁻¹`, where `τ(g)|_R̄ = s_g w_g` is the camera
//! factorization on the saturated system `R̄`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::action::{analyze, Analysis, LatticeAction, DEFAULT_BOUND};
use crate::enumerate::roots_in;
use crate::error::{Error, Result};
use crate::group::close;
use crate::lattice::{
    discriminant_action, discriminant_form, orthogonal_complement, primitive_hull, Lattice, Sublattice,
};
use crate::matrix::{fmt_vec, to_qvec, QVector, ZMatrix, ZVector};
use crate::normal_form::integer_kernel;
use crate::roots::{generic_combination, Camera, RootSystem, WeylWord};
use crate::walls::wall_in_h_plus;

/// The root system generated by all roots of `(R + L•)^hull`.
#[derive(Clone, Debug)]
pub struct SaturatedSystem {
    pub input: Sublattice,
    /// Carries the chosen chamber.
    pub system: RootSystem,
    pub camera: Camera,
    /// Hull/enumerate rounds until the root span stopped changing.
    pub rounds: usize,
}

impl SaturatedSystem {
    /// Whether `R̄` contains the input sublattice.
    pub fn contains_input(&self) -> bool {
        self.system.span().contains_sublattice(&self.input)
    }

    /// The same roots with the chamber selected by `functional`.
    pub fn with_functional(&self, l: &Lattice, functional: Vec<QVector>) -> Result<Self> {
        let system = self.system.with_functional(l, functional)?;
        let camera = system.camera(l);
        Ok(SaturatedSystem { input: self.input.clone(), system, camera, rounds: self.rounds })
    }
}

fn check_invariant(a: &LatticeAction, system: &RootSystem) -> Result<()> {
    for g in a.generators() {
        if !system.is_preserved_by(g.isometry.matrix()) {
            return Err(Error::Invariance(format!("generator {} does not preserve the saturated roots", g.name)));
        }
    }
    Ok(())
}

/// Saturates `r` against `L•` of the analysed action. `r` must be
/// G-invariant with `(r + L•)^hull` negative definite; it need not be
/// generated by roots.
pub fn tau_saturation(a: &LatticeAction, analysis: &Analysis, r: &Sublattice) -> Result<SaturatedSystem> {
    let l = a.ambient();
    let n = l.rank();
    if r.ambient_rank() != n {
        return Err(Error::Dimension(format!("sublattice of Z^{} in a lattice of rank {n}", r.ambient_rank())));
    }
    for g in a.generators() {
        if !r.is_invariant(g.isometry.matrix()) {
            return Err(Error::Invariance(format!("generator {} does not preserve R", g.name)));
        }
    }
    let ldot = &analysis.geometric.ldot;
    let mut current = r.clone();
    let mut rounds = 0;
    let roots = loop {
        rounds += 1;
        let (hull, _) = primitive_hull(&current.sum(ldot));
        let sig = hull.signature(l);
        if sig.plus != 0 || sig.null != 0 {
            return Err(Error::NotDefinite(format!("(R + L•)^hull has signature {sig}")));
        }
        let roots = roots_in(l, &hull)?;
        let next = Sublattice::span(n, &roots);
        if next == current {
            break roots;
        }
        current = next;
    };
    let system = RootSystem::from_roots(l, n, roots, Vec::new())?;
    check_invariant(a, &system)?;
    let camera = system.camera(l);
    Ok(SaturatedSystem { input: r.clone(), system, camera, rounds })
}

/// `τ(g)|_R̄ = s_g w_g` for one generator.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub generator: String,
    /// `s_g = τ(g) · w_g⁻¹`, the new generator.
    pub s: ZMatrix,
    pub w: WeylWord,
    /// Induced permutation of the simple roots.
    pub permutation: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct DegenerationResult {
    pub factors: Vec<Factorization>,
    /// `τ_R`, with the κ of `τ`.
    pub action: LatticeAction,
}

/// The degeneration of `a` at a saturated system. Verifies the factorization
/// on every generator and that `g ↦ s_g` is a homomorphism on the whole group.
pub fn degenerate(a: &LatticeAction, analysis: &Analysis, s: &SaturatedSystem) -> Result<DegenerationResult> {
    let l = a.ambient();
    let sys = &s.system;
    let mut factors = Vec::with_capacity(a.generators().len());
    for g in a.generators() {
        let m = g.isometry.matrix();
        let d = sys.camera_decompose(l, m)?;
        if &(&d.s * &d.w.matrix) != m || sys.word_matrix(&d.w.letters) != d.w.matrix {
            return Err(Error::Verification(format!("factorization of {} does not recompose", g.name)));
        }
        factors.push(Factorization { generator: g.name.clone(), s: d.s, w: d.w, permutation: d.permutation });
    }
    let group = &analysis.group;
    let mut s_of = Vec::with_capacity(group.order());
    for h in group.elements() {
        s_of.push(sys.camera_decompose(l, h)?.s);
    }
    for (gi, f) in factors.iter().enumerate() {
        let g = &a.generators()[gi];
        for (hi, h) in group.elements().iter().enumerate() {
            let k = group.position(&(g.isometry.matrix() * h)).expect("group is closed");
            if s_of[k] != &f.s * &s_of[hi] {
                return Err(Error::Verification(format!("τ_R is not multiplicative at {} · element {hi}", g.name)));
            }
        }
    }
    let action = a.with_matrices(factors.iter().map(|f| f.s.clone()).collect())?;
    Ok(DegenerationResult { factors, action })
}

/// One entry of [`verify_degeneration`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationReport {
    pub checks: Vec<Check>,
}

impl DegenerationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub const CHECK_NAMES: [&str; 5] = ["admissible", "complement", "components", "discriminant", "geometric"];

/// The five comparisons between `τ` and `τ_R`: `τ_R` preserves the camera,
/// agrees with `τ` on `R̄^⊥`, induces the same permutation of components and
/// the same map on `discr R̄`, and is geometric.
pub fn verify_degeneration(a: &LatticeAction, s: &SaturatedSystem, d: &DegenerationResult) -> DegenerationReport {
    let l = a.ambient();
    let sys = &s.system;
    let old = a.matrices();
    let new = d.action.matrices();
    let mut checks = Vec::with_capacity(5);
    let mut push = |name, failure: Option<String>| {
        checks.push(Check { name, passed: failure.is_none(), detail: failure.unwrap_or_default() })
    };

    push(
        CHECK_NAMES[0],
        new.iter()
            .zip(a.generators())
            .find(|(m, _)| sys.simple_permutation(m).is_err())
            .map(|(_, g)| format!("τ_R({}) moves the camera", g.name)),
    );

    let perp = orthogonal_complement(l, sys.span().basis());
    let complement = perp.basis().iter().find_map(|b| {
        old.iter()
            .zip(&new)
            .zip(a.generators())
            .find(|((x, y), _)| x.mul_vec(b) != y.mul_vec(b))
            .map(|(_, g)| format!("τ and τ_R differ at {} on {}", g.name, fmt_vec(b)))
    });
    push(CHECK_NAMES[1], complement);

    let components = old.iter().zip(&new).zip(a.generators()).find_map(|((x, y), g)| {
        let (p, q) = (sys.component_permutation(l, x), sys.component_permutation(l, y));
        (p.is_none() || p != q).then(|| format!("component permutations differ at {}", g.name))
    });
    push(CHECK_NAMES[2], components);

    push(CHECK_NAMES[3], discriminant_mismatch(l, sys, &old, &new, a));

    let geometric = match analyze(&d.action, DEFAULT_BOUND) {
        Ok(an) if an.geometric.is_geometric() => None,
        Ok(an) => Some(format!("L• of τ_R contains the root {}", fmt_vec(&an.geometric.roots[0]))),
        Err(e) => Some(format!("analysis of τ_R failed: {e}")),
    };
    push(CHECK_NAMES[4], geometric);
    DegenerationReport { checks }
}

fn discriminant_mismatch(
    l: &Lattice,
    sys: &RootSystem,
    old: &[ZMatrix],
    new: &[ZMatrix],
    a: &LatticeAction,
) -> Option<String> {
    let span = sys.span();
    if span.is_zero() {
        return None;
    }
    let lat = span.as_lattice(l);
    let disc = match discriminant_form(&lat) {
        Ok(d) => d,
        Err(e) => return Some(format!("discriminant form of R̄: {e}")),
    };
    for ((x, y), g) in old.iter().zip(new).zip(a.generators()) {
        let (Some(xr), Some(yr)) = (span.restrict_map(x), span.restrict_map(y)) else {
            return Some(format!("{} does not preserve R̄", g.name));
        };
        let (p, q) = (discriminant_action(&lat, &disc, &xr), discriminant_action(&lat, &disc, &yr));
        if p.is_none() || p != q {
            return Some(format!("maps on discr R̄ differ at {}", g.name));
        }
    }
    None
}

/// A chamber of `R̄` whose closure meets the common mirror of the roots of
/// `r_prime`: factorizations of elements preserving that face then have
/// `w_g` in the Weyl group of `r_prime`.
pub fn camera_adjacent(l: &Lattice, s: &SaturatedSystem, r_prime: &Sublattice) -> Result<SaturatedSystem> {
    let span = s.system.span();
    if !span.contains_sublattice(r_prime) {
        return Err(Error::Precondition("sublattice is not contained in R̄".into()));
    }
    if r_prime.is_zero() {
        return Ok(s.clone());
    }
    let k = span.rank();
    let mut m = ZMatrix::zeros(r_prime.rank(), k);
    for (i, r) in r_prime.basis().iter().enumerate() {
        for (j, b) in span.basis().iter().enumerate() {
            m.set(i, j, l.dot(r, b));
        }
    }
    let face: Vec<ZVector> = integer_kernel(&m).iter().map(|c| span.embed(c)).collect();
    let sub = r_prime.subspace();
    let off_face: Vec<ZVector> = s.system.roots().iter().filter(|r| !sub.contains(&to_qvec(r))).cloned().collect();
    let x = generic_combination(l, &off_face, &face)
        .ok_or_else(|| Error::Verification("no generic point on the face".into()))?;
    if x.is_empty() {
        return Ok(s.clone());
    }
    s.with_functional(l, vec![x])
}

/// An element `u ∈ W(R̄)` with `u · τ₁(g) · u⁻¹ = τ₂(g)` for every generator,
/// searched over the whole Weyl group when its order is at most `bound`.
pub fn weyl_conjugator(
    s: &SaturatedSystem,
    first: &LatticeAction,
    second: &LatticeAction,
    bound: usize,
) -> Result<Option<ZMatrix>> {
    let w = close(first.rank(), s.system.simple_reflections(), bound)?;
    let (x, y) = (first.matrices(), second.matrices());
    Ok(w.elements.iter().find(|u| x.iter().zip(&y).all(|(p, q)| &(*u * p) == &(q * *u))).cloned())
}

/// Degeneration at the wall of `v`: `R` is spanned by the roots of
/// `(L^G ⊕ 𝔴_x)^⊥`, where `𝔴_x = span(x, Jx)` for the wall direction `x`.
pub fn degenerate_at_wall(
    a: &LatticeAction,
    analysis: &Analysis,
    v: &[BigInt],
) -> Result<(SaturatedSystem, DegenerationResult)> {
    if a.is_holomorphic() {
        return Err(Error::Precondition("degeneration at a wall needs an antiholomorphic element".into()));
    }
    let l = a.ambient();
    let e = analysis.eigen.as_ref().ok_or_else(|| Error::Precondition("no eigenlattices".into()))?;
    let j = analysis.complex_structure.as_ref();
    let w =
        wall_in_h_plus(l, v, e, j).ok_or_else(|| Error::Precondition(format!("wall of {} is empty", fmt_vec(v))))?;
    let x = w.direction.expect("nonempty wall");
    let mut gens = analysis.invariant.basis().to_vec();
    gens.push(x.clone());
    if let Some(j) = j {
        gens.push(j.apply(&x));
    }
    let perp = orthogonal_complement(l, &gens);
    let roots = roots_in(l, &perp)?;
    if roots.is_empty() || roots.iter().all(|r| r.iter().all(Zero::is_zero)) {
        return Err(Error::Verification("wall carries no roots".into()));
    }
    let r = Sublattice::span(l.rank(), &roots);
    let sat = tau_saturation(a, analysis, &r)?;
    let d = degenerate(a, analysis, &sat)?;
    Ok((sat, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{fixture, k3_lattice};
    use crate::lattice::standard_lattice;
    use crate::matrix::zvec;

    fn root_u1_v1() -> ZVector {
        let mut r = vec![BigInt::zero(); 22];
        r[0] = BigInt::from(1);
        r[1] = BigInt::from(-1);
        r
    }

    #[test]
    fn e8_swap_is_already_saturated() {
        let a = fixture("e8_swap").unwrap().action;
        let an = analyze(&a, DEFAULT_BOUND).unwrap();
        let r = Sublattice::span(22, &[root_u1_v1()]);
        let s = tau_saturation(&a, &an, &r).unwrap();
        assert_eq!(s.system.span(), &r);
        let d = degenerate(&a, &an, &s).unwrap();
        assert_eq!(d.action.matrices(), a.matrices());
        assert!(d.factors.iter().all(|f| f.w.is_empty()));
        assert!(verify_degeneration(&a, &s, &d).all_passed());
    }

    #[test]
    fn kappa_flip_becomes_a_swap() {
        let a = fixture("kappa_flip").unwrap().action;
        let an = analyze(&a, DEFAULT_BOUND).unwrap();
        let s = tau_saturation(&a, &an, &Sublattice::span(22, &[root_u1_v1()])).unwrap();
        let d = degenerate(&a, &an, &s).unwrap();
        let m = &d.action.matrices()[0];
        assert_eq!(m.column(0)[..2], zvec(&[0, -1])[..]);
        assert_eq!(m.column(1)[..2], zvec(&[-1, 0])[..]);
        assert_eq!(m.mul_vec(&root_u1_v1()), root_u1_v1());
        let report = verify_degeneration(&a, &s, &d);
        assert!(report.all_passed(), "{report:?}");
        assert_eq!(d.action.generators()[0].kappa, -1);
    }

    #[test]
    fn saturation_of_a_multiple_and_of_a_split_a2() {
        // 3U ⊕ A2 with g = id ⊕ (−s_a): fixes a and negates a + 2b.
        let l = standard_lattice("3U+A2").unwrap();
        let a_root = zvec(&[0, 0, 0, 0, 0, 0, 1, 0]);
        let sa = l.reflection(&a_root).unwrap().into_matrix();
        let mut g = -&sa;
        for i in 0..6 {
            g.set(i, i, BigInt::from(1));
        }
        let act = LatticeAction::new(l.clone(), vec![("g".into(), g, 1)]).unwrap();
        let an = analyze(&act, DEFAULT_BOUND).unwrap();
        assert_eq!(an.geometric.ldot.rank(), 1);
        let doubled = Sublattice::span(8, &[zvec(&[0, 0, 0, 0, 0, 0, 2, 0])]);
        let s = tau_saturation(&act, &an, &doubled).unwrap();
        assert_eq!(s.system.roots().len(), 6);
        assert!(s.contains_input());
        assert!(s.system.is_root(&a_root));
        let d = degenerate(&act, &an, &s).unwrap();
        assert!(verify_degeneration(&act, &s, &d).all_passed());
    }

    #[test]
    fn corrupted_factor_fails_the_complement_check() {
        let a = fixture("kappa_flip").unwrap().action;
        let an = analyze(&a, DEFAULT_BOUND).unwrap();
        let s = tau_saturation(&a, &an, &Sublattice::span(22, &[root_u1_v1()])).unwrap();
        let mut d = degenerate(&a, &an, &s).unwrap();
        // Replace w_g by a non-Weyl isometry that moves R̄^⊥.
        let swap = fixture("e8_swap").unwrap().action.matrices()[0].clone();
        let w = &d.factors[0].w.matrix * &swap;
        let bad = &a.matrices()[0] * &w.inverse_unimodular().unwrap();
        d.action = a.with_matrices(vec![bad]).unwrap();
        let report = verify_degeneration(&a, &s, &d);
        assert!(!report.checks[1].passed);
    }

    #[test]
    fn camera_change_is_weyl_conjugation() {
        let a = fixture("kappa_flip").unwrap().action;
        let an = analyze(&a, DEFAULT_BOUND).unwrap();
        let s = tau_saturation(&a, &an, &Sublattice::span(22, &[root_u1_v1()])).unwrap();
        let d = degenerate(&a, &an, &s).unwrap();
        let opposite = s.camera.witness.iter().map(|x| -x).collect();
        let other = s.with_functional(a.ambient(), vec![opposite]).unwrap();
        assert_ne!(other.system.simple_roots(), s.system.simple_roots());
        let d2 = degenerate(&a, &an, &other).unwrap();
        assert!(weyl_conjugator(&s, &d.action, &d2.action, 64).unwrap().is_some());
        let again = degenerate(&d.action, &analyze(&d.action, DEFAULT_BOUND).unwrap(), &s).unwrap();
        assert_eq!(again.action, d.action);
    }

    #[test]
    fn adjacent_camera_keeps_words_in_the_face() {
        // A1 ⊕ A1 inside 3U ⊕ 2A1; g reflects in the first A1.
        let l = standard_lattice("3U+A1+A1").unwrap();
        let a1 = zvec(&[0, 0, 0, 0, 0, 0, 1, 0]);
        let a2 = zvec(&[0, 0, 0, 0, 0, 0, 0, 1]);
        let g = l.reflection(&a1).unwrap().into_matrix();
        let act = LatticeAction::new(l.clone(), vec![("g".into(), g.clone(), 1)]).unwrap();
        let an = analyze(&act, DEFAULT_BOUND).unwrap();
        let s = tau_saturation(&act, &an, &Sublattice::span(8, &[a1.clone(), a2.clone()])).unwrap();
        let face = Sublattice::span(8, &[a1.clone()]);
        let adj = camera_adjacent(&l, &s, &face).unwrap();
        let d = adj.system.camera_decompose(&l, &g).unwrap();
        let w = &d.w.matrix;
        assert_eq!(w.mul_vec(&a2), a2);
        assert!(camera_adjacent(&l, &s, &Sublattice::span(8, &[zvec(&[1, 0, 0, 0, 0, 0, 0, 0])])).is_err());
        assert_eq!(
            camera_adjacent(&l, &s, &l.zero_sublattice()).unwrap().system.simple_roots(),
            s.system.simple_roots()
        );
    }

    #[test]
    fn d3_walls_degenerate() {
        let a = fixture("d3_S").unwrap().action;
        let an = analyze(&a, DEFAULT_BOUND).unwrap();
        let e = an.eigen.as_ref().unwrap();
        let report = crate::walls::wall_report(&k3_lattice(), e, an.complex_structure.as_ref(), None).unwrap();
        assert_eq!(report.walls.len(), 2);
        for w in &report.walls {
            let (s, d) = degenerate_at_wall(&a, &an, &w.root).unwrap();
            assert!(s.system.is_root(&w.root));
            let r = verify_degeneration(&a, &s, &d);
            assert!(r.all_passed(), "{r:?}");
        }
        let mut off = vec![BigInt::zero(); 22];
        off[6] = BigInt::from(1);
        assert!(degenerate_at_wall(&a, &an, &off).is_err());
    }
}
