//! Walls cut by roots in the rank-2 slice `H⁺` of the period domain, and the
//! enumeration of hyperplanes crossing a segment between isotropic rays.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::action::{DilatedComplexStructure, EigenData};
use crate::binary::{divisors, isotropic_discriminant, represent_split};
use crate::enumerate::{sublattice_vectors, vectors_of_gram};
use crate::error::{Error, Result};
use crate::lattice::{orthogonal_complement, Lattice, Sublattice};
use crate::matrix::{
    make_primitive, primitive_on_ray, rat, sign_normalized, to_qvec, QMatrix, QVector, ZMatrix, ZVector,
};
use crate::normal_form::smith;

/// A root together with the ray it cuts out in `M⁺ ⊗ Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub root: ZVector,
    pub v_plus: QVector,
    pub v_minus: QVector,
    /// Primitive vector of `M⁺` spanning the defining condition, up to sign.
    pub normal: Option<ZVector>,
    /// Primitive positive vector of `M⁺` on the wall ray, up to sign.
    pub direction: Option<ZVector>,
}

impl Wall {
    pub fn is_nonempty(&self) -> bool {
        self.direction.is_some()
    }
}

/// Orthogonal projection to `L_ρ ⊗ Q` followed by `v^± = ½(v ± cv)`.
pub fn project_to_eigenspaces(l: &Lattice, v: &[BigInt], e: &EigenData) -> (QVector, QVector) {
    let rho = &e.rho;
    let n = l.rank();
    if rho.is_zero() {
        let z = vec![BigRational::zero(); n];
        return (z.clone(), z);
    }
    let g = rho.gram(l).to_q();
    let rhs: QVector = rho.basis().iter().map(|b| rat(&l.dot(b, v))).collect();
    let y = g.solve(&rhs).expect("L_ρ is nondegenerate");
    let p = rho.embed_q(&y);
    let cp = e.c.mul_qvec(&p);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let plus = p.iter().zip(&cp).map(|(a, b)| (a + b) * &half).collect();
    let minus = p.iter().zip(&cp).map(|(a, b)| (a - b) * &half).collect();
    (plus, minus)
}

/// Roots of `L_ρ(Z)` whose projections are zero or of negative square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidates {
    /// Sign-normalized roots.
    pub roots: Vec<ZVector>,
    /// Realized pairs `((Nv⁺)², (Nv⁻)²)`.
    pub square_pairs: Vec<(BigInt, BigInt)>,
    pub complete: bool,
}

/// Vectors of square `a < 0` in a rank-2 sublattice, exhaustive unless the
/// form is indefinite and anisotropic; then a coordinate box search of
/// radius `bound` is used and the flag is cleared.
fn rank2_vectors(l: &Lattice, s: &Sublattice, a: &BigInt, bound: Option<i64>) -> Result<(Vec<ZVector>, bool)> {
    if a.is_zero() {
        return Ok((vec![vec![BigInt::zero(); l.rank()]], true));
    }
    let g = s.gram(l);
    let sig = s.signature(l);
    if sig.plus == 0 || sig.minus == 0 {
        if sig.null > 0 {
            return Err(Error::Unsupported("degenerate eigenlattice".into()));
        }
        return Ok((sublattice_vectors(l, s, a, false)?, true));
    }
    if isotropic_discriminant(&g).is_some() {
        let sols = represent_split(&g, a)?;
        return Ok((sols.into_iter().map(|(x, y)| s.embed(&[x, y])).collect(), true));
    }
    let b = bound
        .ok_or_else(|| Error::Unsupported("eigenlattice form does not split; a search bound is required".into()))?;
    let mut out = Vec::new();
    for x in -b..=b {
        for y in -b..=b {
            let v = s.embed(&[BigInt::from(x), BigInt::from(y)]);
            if &l.norm(&v) == a {
                out.push(v);
            }
        }
    }
    Ok((out, false))
}

/// All roots `v ∈ L_ρ(Z)` with `(Nv⁺)² + (Nv⁻)² = −2N²`, each projection
/// zero or negative. Requires `rank M⁺ = rank M⁻ = 2`.
pub fn candidate_roots(l: &Lattice, e: &EigenData, bound: Option<i64>) -> Result<Candidates> {
    if e.m_plus.rank() != 2 || e.m_minus.rank() != 2 {
        return Err(Error::Unsupported(format!(
            "eigenlattices of ranks ({}, {}); only rank 2 is supported",
            e.m_plus.rank(),
            e.m_minus.rank()
        )));
    }
    let n = &e.exponent;
    let total = -(n * n) * 2;
    let mut roots = Vec::new();
    let mut pairs = Vec::new();
    let mut complete = true;
    let mut a = BigInt::zero();
    while a >= total {
        let b = &total - &a;
        let (xs, cx) = rank2_vectors(l, &e.m_plus, &a, bound)?;
        let (ys, cy) = rank2_vectors(l, &e.m_minus, &b, bound)?;
        complete &= cx && cy;
        let mut realized = false;
        for x in &xs {
            for y in &ys {
                let sum: ZVector = x.iter().zip(y).map(|(p, q)| p + q).collect();
                if sum.iter().any(|c| !(c % n).is_zero()) {
                    continue;
                }
                let v: ZVector = sum.iter().map(|c| c / n).collect();
                if e.rho.contains(&v) {
                    debug_assert_eq!(l.norm(&v), BigInt::from(-2));
                    roots.push(sign_normalized(&v));
                    realized = true;
                }
            }
        }
        if realized {
            pairs.push((a.clone(), b));
        }
        a -= 1;
    }
    roots.sort();
    roots.dedup();
    Ok(Candidates { roots, square_pairs: pairs, complete })
}

fn nonzero(x: &QVector) -> Option<QVector> {
    if x.iter().all(Zero::is_zero) {
        return None;
    }
    Some(x.clone())
}

/// The wall of `v` in `H⁺`: points `x ∈ M⁺ ⊗ R` with `x·v⁺ = 0` and, for
/// non-real ρ, `x·J(v⁻) = 0`. Nonempty iff the nonzero conditions are
/// proportional and cut a positive ray.
pub fn wall(l: &Lattice, v: &[BigInt], e: &EigenData, j: Option<&DilatedComplexStructure>) -> Wall {
    let (vp, vm) = project_to_eigenspaces(l, v, e);
    let mut conds: Vec<QVector> = Vec::new();
    conds.extend(nonzero(&vp));
    if let Some(j) = j {
        conds.extend(nonzero(&j.apply_q(&vm)));
    }
    let mut w = Wall { root: v.to_vec(), v_plus: vp, v_minus: vm, normal: None, direction: None };
    if conds.is_empty() || e.m_plus.rank() != 2 {
        return w;
    }
    let basis = &e.m_plus;
    // Functionals on M⁺ coordinates.
    let rows: Vec<QVector> =
        conds.iter().map(|c| basis.basis().iter().map(|b| l.dot_q(&to_qvec(b), c)).collect()).collect();
    let m = QMatrix::from_rows(&rows, 2);
    if m.rank() != 1 {
        return w;
    }
    let ker = m.kernel();
    let dir = sign_normalized(&basis.embed(&primitive_on_ray(&ker[0])));
    if !l.norm(&dir).is_positive() {
        return w;
    }
    let nrm = conds.iter().map(|c| sign_normalized(&primitive_on_ray(c))).next();
    w.normal = nrm;
    w.direction = Some(dir);
    w
}

pub fn wall_in_h_plus(l: &Lattice, v: &[BigInt], e: &EigenData, j: Option<&DilatedComplexStructure>) -> Option<Wall> {
    let w = wall(l, v, e, j);
    w.is_nonempty().then_some(w)
}

/// Components of `H⁺` minus the walls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallReport {
    pub candidate_count: usize,
    /// One wall per ray, sorted by direction.
    pub walls: Vec<Wall>,
    pub components: usize,
    pub complete: bool,
}

impl WallReport {
    /// The count is taken before dividing by the residual action of
    /// `Aut_G L` on `H⁺`.
    pub const CAVEAT: &'static str = "components counted in H+ before the quotient by equivariant automorphisms";
}

pub fn component_count(walls: &[Wall], e: &EigenData, candidate_count: usize, complete: bool) -> Result<WallReport> {
    if e.m_plus.rank() != 2 {
        return Err(Error::Unsupported(format!("M⁺ has rank {}", e.m_plus.rank())));
    }
    // Rays are compared through their primitive sign-normalized representative.
    let mut rays: Vec<Wall> = Vec::new();
    for w in walls {
        let Some(d) = &w.direction else { continue };
        let d = sign_normalized(&make_primitive(d));
        if rays.iter().all(|r| r.direction.as_ref() != Some(&d)) {
            rays.push(Wall { direction: Some(d), ..w.clone() });
        }
    }
    rays.sort_by(|a, b| a.direction.cmp(&b.direction));
    let components = rays.len() + 1;
    Ok(WallReport { candidate_count, walls: rays, components, complete })
}

/// Candidates, walls and component count in one pass.
pub fn wall_report(
    l: &Lattice,
    e: &EigenData,
    j: Option<&DilatedComplexStructure>,
    bound: Option<i64>,
) -> Result<WallReport> {
    let c = candidate_roots(l, e, bound)?;
    let walls: Vec<Wall> = c.roots.iter().filter_map(|v| wall_in_h_plus(l, v, e, j)).collect();
    component_count(&walls, e, c.roots.len(), c.complete)
}

/// Vectors `v` with `v² = a` whose hyperplane meets the open segment of rays
/// between the isotropic vectors `u1`, `u2`: `(u1·v)(u2·v) < 0`, or `v` is
/// orthogonal to both. Writing `d v = α u1 + β u2 + w` with `d` the exponent
/// of `m / (H ⊕ H^⊥)`, one has `2k αβ + w² = d² a` with `αβ < 0`, which
/// leaves finitely many cases.
pub fn segment_vectors(m: &Lattice, u1: &[BigInt], u2: &[BigInt], a: &BigInt) -> Result<Vec<ZVector>> {
    let n = m.rank();
    if u1.len() != n || u2.len() != n {
        return Err(Error::Dimension("isotropic vectors have wrong length".into()));
    }
    let k = m.dot(u1, u2);
    if !m.norm(u1).is_zero() || !m.norm(u2).is_zero() || !k.is_positive() {
        return Err(Error::Precondition("need u1² = u2² = 0 and u1·u2 > 0".into()));
    }
    let w = orthogonal_complement(m, &[u1.to_vec(), u2.to_vec()]);
    let ws = w.signature(m);
    if ws.plus != 0 || ws.null != 0 {
        return Err(Error::Precondition("complement of the hyperbolic plane is not negative definite".into()));
    }
    let mut rows = vec![u1.to_vec(), u2.to_vec()];
    rows.extend(w.basis().iter().cloned());
    let d = smith(&ZMatrix::from_rows(&rows)?).elementary_divisors().into_iter().max().unwrap_or_else(BigInt::one);
    let whole = m.full();
    let mut out: Vec<ZVector> = Vec::new();
    let push = |num: ZVector, out: &mut Vec<ZVector>| {
        if num.iter().all(|c| (c % &d).is_zero()) {
            let v: ZVector = num.iter().map(|c| c / &d).collect();
            if whole.contains(&v) && !v.iter().all(Zero::is_zero) {
                out.push(v);
            }
        }
    };
    let wg = w.gram(m);
    let ws_of = |val: &BigInt| -> Result<Vec<ZVector>> {
        if w.is_zero() {
            return Ok(if val.is_zero() { vec![vec![BigInt::zero(); n]] } else { Vec::new() });
        }
        if val.is_positive() {
            return Ok(Vec::new());
        }
        Ok(vectors_of_gram(&wg, val, false)?.iter().map(|c| w.embed(c)).collect())
    };
    let d2a = &d * &d * a;
    // Both pairings zero: v ∈ H^⊥.
    if !a.is_zero() {
        for wv in ws_of(&d2a)? {
            push(wv, &mut out);
        }
    }
    let two_k = &k * 2;
    let mut p = -BigInt::one();
    while &two_k * &p >= d2a {
        let rest = &d2a - &two_k * &p;
        let wvs = ws_of(&rest)?;
        if !wvs.is_empty() {
            for dv in divisors(&p) {
                for alpha in [dv.clone(), -dv] {
                    let beta = &p / &alpha;
                    for wv in &wvs {
                        let num: ZVector = (0..n).map(|i| &alpha * &u1[i] + &beta * &u2[i] + &wv[i]).collect();
                        push(num, &mut out);
                    }
                }
            }
        }
        p -= 1;
    }
    out.sort();
    out.dedup();
    debug_assert!(out.iter().all(|v| &m.norm(v) == a));
    Ok(out)
}
