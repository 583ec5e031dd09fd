//! Equivariant folding of root reflections and the classification of
//! admissible b-transitive actions on irreducible root systems.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::group::close;
use crate::lattice::{complement_of, fixed_sublattice, root_lattice_gram, Lattice, Sublattice};
use crate::matrix::{rat, sign_normalized, to_qvec, QVector, ZMatrix, ZVector};
use crate::roots::{is_admissible, Admissibility, RootSystem};

/// Outcome of folding a root reflection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fold {
    /// A root of `(N^G)^⊥`.
    Witness(ZVector),
    /// An equivariant product of reflections in mutually orthogonal roots.
    Reflection { isometry: ZMatrix, roots: Vec<ZVector> },
}

/// Orthogonal projection of `v` to the invariant part: the orbit average.
pub fn invariant_projection(elements: &[ZMatrix], v: &[BigInt]) -> QVector {
    let n = v.len();
    let mut sum = vec![BigInt::zero(); n];
    for g in elements {
        for (s, x) in sum.iter_mut().zip(g.mul_vec(v)) {
            *s += x;
        }
    }
    let k = rat(&BigInt::from(elements.len()));
    sum.iter().map(|x| rat(x) / &k).collect()
}

/// Either a root in `(N^G)^⊥`, or an element of the Weyl group of `N`
/// commuting with the action and restricting to `N^G` as the reflection
/// against `h(v)`.
pub fn fold_reflection(n: &Lattice, gens: &[ZMatrix], v: &[BigInt], bound: usize) -> Result<Fold> {
    let dim = n.rank();
    if v.len() != dim {
        return Err(Error::Dimension("root length".into()));
    }
    if n.norm(v) != BigInt::from(-2) {
        return Err(Error::Precondition("vector is not a root".into()));
    }
    let group = close(dim, gens, bound)?;
    let fixed = fixed_sublattice(dim, gens);
    let perp = complement_of(n, &fixed);
    let sig = perp.signature(n);
    if sig.minus != perp.rank() {
        return Err(Error::Precondition("(N^G)^⊥ is not negative definite".into()));
    }
    let vg = invariant_projection(&group.elements, v);
    if !n.norm_q(&vg).is_negative() {
        return Err(Error::Precondition("projection of the root does not have negative square".into()));
    }
    let orbit: Vec<ZVector> = group.elements.iter().map(|g| g.mul_vec(v)).collect();
    let r_span = Sublattice::span(dim, &orbit);
    let rs = RootSystem::of(n, &r_span)?;
    let witness = match is_admissible(n, &rs, &group.elements)? {
        Admissibility::NotAdmissible { root } => {
            if fixed.basis().iter().all(|f| n.dot(f, &root).is_zero()) {
                return Ok(Fold::Witness(root));
            }
            return Err(Error::Verification("non-admissible witness is not orthogonal to N^G".into()));
        }
        Admissibility::Admissible { witness } => witness,
    };
    let rs = rs.rechamber(n, &witness)?;
    let simple = rs.simple_roots();
    let mut a_roots = Vec::new();
    for c in rs.components() {
        match (c.letter, c.rank) {
            ('A', 1) => a_roots.push(simple[c.simple[0]].clone()),
            ('A', 2) => {
                let s: Vec<BigInt> = simple[c.simple[0]].iter().zip(&simple[c.simple[1]]).map(|(x, y)| x + y).collect();
                a_roots.push(s);
            }
            _ => return Err(Error::Verification(format!("orbit system has a {c} component"))),
        }
    }
    let mut m = ZMatrix::identity(dim);
    for a in &a_roots {
        m = &n.reflection(a)?.into_matrix() * &m;
    }
    let mut a_roots: Vec<ZVector> = a_roots.iter().map(|a| sign_normalized(a)).collect();
    a_roots.sort();
    Ok(Fold::Reflection { isometry: m, roots: a_roots })
}

/// Independent check of a folding outcome.
pub fn verify_fold(n: &Lattice, gens: &[ZMatrix], v: &[BigInt], fold: &Fold, bound: usize) -> Result<()> {
    let dim = n.rank();
    let fixed = fixed_sublattice(dim, gens);
    match fold {
        Fold::Witness(r) => {
            if n.norm(r) != BigInt::from(-2) {
                return Err(Error::Verification("witness is not a root".into()));
            }
            if !fixed.basis().iter().all(|f| n.dot(f, r).is_zero()) {
                return Err(Error::Verification("witness is not orthogonal to N^G".into()));
            }
        }
        Fold::Reflection { isometry, roots } => {
            if !n.is_isometry(isometry)? {
                return Err(Error::Verification("fold is not an isometry".into()));
            }
            for g in gens {
                if &(g * isometry) != &(isometry * g) {
                    return Err(Error::Verification("fold does not commute with the action".into()));
                }
            }
            for (i, a) in roots.iter().enumerate() {
                if n.norm(a) != BigInt::from(-2) {
                    return Err(Error::Verification("fold factor is not a root".into()));
                }
                if roots[i + 1..].iter().any(|b| !n.dot(a, b).is_zero()) {
                    return Err(Error::Verification("fold factors are not orthogonal".into()));
                }
            }
            let mut prod = ZMatrix::identity(dim);
            for a in roots {
                prod = &n.reflection(a)?.into_matrix() * &prod;
            }
            if &prod != isometry {
                return Err(Error::Verification("fold is not the product of its factors".into()));
            }
            let group = close(dim, gens, bound)?;
            let vg = invariant_projection(&group.elements, v);
            let vv = n.norm_q(&vg);
            for x in fixed.basis() {
                let xq = to_qvec(x);
                let f = BigRational::from_integer(BigInt::from(2)) * n.dot_q(&xq, &vg) / &vv;
                let expect: QVector = xq.iter().zip(&vg).map(|(a, b)| a - &f * b).collect();
                if isometry.mul_qvec(&xq) != expect {
                    return Err(Error::Verification("fold does not restrict to the reflection on N^G".into()));
                }
            }
        }
    }
    Ok(())
}

/// Adjacency-preserving permutations of a Dynkin graph given by a Cartan-type Gram.
pub fn diagram_automorphisms(gram: &ZMatrix) -> Vec<Vec<usize>> {
    let n = gram.rows();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(gram: &ZMatrix, perm: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let n = gram.rows();
        let i = perm.len();
        if i == n {
            out.push(perm.clone());
            return;
        }
        for j in 0..n {
            if used[j] {
                continue;
            }
            if (0..i).all(|k| gram.get(i, k) == gram.get(j, perm[k])) {
                used[j] = true;
                perm.push(j);
                rec(gram, perm, used, out);
                perm.pop();
                used[j] = false;
            }
        }
    }
    rec(gram, &mut perm, &mut used, &mut out);
    out
}

/// Matrix sending `e_i` to `e_{p[i]}`.
pub fn permutation_matrix(p: &[usize]) -> ZMatrix {
    let n = p.len();
    let mut m = ZMatrix::zeros(n, n);
    for (i, &j) in p.iter().enumerate() {
        m.set(j, i, BigInt::from(1));
    }
    m
}

/// Whether some root's orbit generates the whole lattice.
pub fn is_b_transitive(l: &Lattice, roots: &[ZVector], elements: &[ZMatrix]) -> bool {
    let full = l.full();
    roots.iter().any(|r| {
        let orbit: Vec<ZVector> = elements.iter().map(|g| g.mul_vec(r)).collect();
        Sublattice::span(l.rank(), &orbit) == full
    })
}

fn describe(order: usize) -> &'static str {
    match order {
        1 => "trivial",
        2 => "swap",
        3 => "Z3",
        6 => "S3",
        _ => "other",
    }
}

/// Irreducible ADE types of rank at most `max_rank`.
pub fn irreducible_types(max_rank: usize) -> Vec<(char, usize)> {
    let mut out: Vec<(char, usize)> = (1..=max_rank).map(|n| ('A', n)).collect();
    out.extend((4..=max_rank).map(|n| ('D', n)));
    out.extend((6..=max_rank.min(8)).map(|n| ('E', n)));
    out
}

/// Faithful admissible b-transitive actions on irreducible root systems of
/// rank at most `max_rank`, up to isomorphism. Admissible actions factor
/// through camera symmetries, so subgroups of diagram automorphisms are
/// exhaustive.
pub fn classify_admissible_b_transitive(max_rank: usize) -> Result<Vec<(String, String)>> {
    let mut found = BTreeSet::new();
    for (letter, rank) in irreducible_types(max_rank) {
        let gram = root_lattice_gram(letter, rank)?;
        let l = Lattice::new(gram.clone())?;
        let rs = RootSystem::of_lattice(&l)?;
        let auts = diagram_automorphisms(&gram);
        let mats: Vec<ZMatrix> = auts.iter().map(|p| permutation_matrix(p)).collect();
        let mut subgroups: BTreeSet<Vec<ZMatrixKey>> = BTreeSet::new();
        for i in 0..mats.len() {
            for j in i..mats.len() {
                let c = close(rank, &[mats[i].clone(), mats[j].clone()], 10_000)?;
                let mut key: Vec<ZMatrixKey> = c.elements.iter().map(ZMatrixKey::from).collect();
                key.sort();
                subgroups.insert(key);
            }
        }
        for sg in subgroups {
            let elements: Vec<ZMatrix> = sg.iter().map(|k| k.0.clone()).collect();
            if !is_admissible(&l, &rs, &elements)?.is_admissible() {
                continue;
            }
            if is_b_transitive(&l, rs.roots(), &elements) {
                found.insert((format!("{letter}{rank}"), describe(elements.len()).to_string()));
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Totally ordered wrapper used to deduplicate subgroups.
#[derive(Clone, PartialEq, Eq, Debug)]
struct ZMatrixKey(ZMatrix);

impl From<&ZMatrix> for ZMatrixKey {
    fn from(m: &ZMatrix) -> Self {
        ZMatrixKey(m.clone())
    }
}

impl PartialOrd for ZMatrixKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ZMatrixKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.to_rows().cmp(&other.0.to_rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::standard_lattice;
    use crate::matrix::zvec;

    #[test]
    fn a2_swap_folds_to_sum_reflection() {
        let a2 = standard_lattice("A2").unwrap();
        let swap = ZMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        let v = zvec(&[1, 0]);
        let f = fold_reflection(&a2, &[swap.clone()], &v, 64).unwrap();
        let expect = a2.reflection(&zvec(&[1, 1])).unwrap().into_matrix();
        assert_eq!(f, Fold::Reflection { isometry: expect, roots: vec![zvec(&[1, 1])] });
        verify_fold(&a2, &[swap], &v, &f, 64).unwrap();
    }

    #[test]
    fn a1_trivial_action() {
        let a1 = standard_lattice("A1").unwrap();
        let f = fold_reflection(&a1, &[], &zvec(&[1]), 64).unwrap();
        assert_eq!(f, Fold::Reflection { isometry: ZMatrix::from_i64(&[&[-1]]), roots: vec![zvec(&[1])] });
    }

    #[test]
    fn witness_branch() {
        // N = A1 ⊕ A1 ⊕ A1; G swaps the first two summands and negates the third.
        let n = standard_lattice("3A1").unwrap();
        let g = ZMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]]);
        let f = fold_reflection(&n, &[g.clone()], &zvec(&[1, 0, 0]), 64).unwrap();
        assert!(matches!(f, Fold::Reflection { .. }));
        // A root whose orbit is not admissible: the third summand is negated.
        assert!(fold_reflection(&n, &[g.clone()], &zvec(&[0, 0, 1]), 64).is_err());
        // On A2, minus the swap fixes u − w and is orthogonal to the root u + w.
        let a2 = standard_lattice("A2").unwrap();
        let h = ZMatrix::from_i64(&[&[0, -1], &[-1, 0]]);
        let v = zvec(&[1, 0]);
        let f = fold_reflection(&a2, &[h.clone()], &v, 64).unwrap();
        assert_eq!(f, Fold::Witness(zvec(&[1, 1])));
        verify_fold(&a2, &[h], &v, &f, 64).unwrap();
    }

    #[test]
    fn classification_up_to_rank_four() {
        let c = classify_admissible_b_transitive(4).unwrap();
        assert_eq!(c, vec![("A1".into(), "trivial".into()), ("A2".into(), "swap".into())]);
        let c = classify_admissible_b_transitive(1).unwrap();
        assert_eq!(c, vec![("A1".into(), "trivial".into())]);
    }

    #[test]
    fn d4_has_six_diagram_automorphisms() {
        let g = root_lattice_gram('D', 4).unwrap();
        assert_eq!(diagram_automorphisms(&g).len(), 6);
        let g = root_lattice_gram('E', 6).unwrap();
        assert_eq!(diagram_automorphisms(&g).len(), 2);
    }
}
