//! Root systems of negative definite lattices: positive systems, simple
//! roots, Dynkin types, cameras and the Weyl chamber walk.
//!
//! Positivity is decided by a lexicographic sequence of rational ambient
//! vectors: a root `r` is positive when the first nonzero `r·f_k` is
//! positive. No root may pair to zero with every `f_k`.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::enumerate::roots_in;
use crate::error::{Error, Result};
use crate::group::{close, Closure};
use crate::lattice::{Lattice, Sublattice};
use crate::matrix::{add_vec, neg_vec, rat, sub_vec, to_qvec, QMatrix, QVector, ZMatrix, ZVector};

/// An irreducible component of a root system.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Component {
    pub letter: char,
    pub rank: usize,
    /// Indices into the simple roots.
    pub simple: Vec<usize>,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter, self.rank)
    }
}

/// Formats a type list as `A2+A1`, or `0` when empty.
pub fn type_string(components: &[Component]) -> String {
    if components.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = components.iter().map(|c| c.to_string()).collect();
    parts.join("+")
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    dim: usize,
    roots: Vec<ZVector>,
    root_set: HashSet<ZVector>,
    positive: Vec<ZVector>,
    simple: Vec<ZVector>,
    components: Vec<Component>,
    functional: Vec<QVector>,
    span: Sublattice,
    reflections: Vec<ZMatrix>,
}

/// A Weyl chamber given by its walls and an interior point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Camera {
    pub simple_roots: Vec<ZVector>,
    /// Pairs to exactly 1 with every simple root.
    pub witness: QVector,
}

/// A product of simple reflections; `letters[0]` is applied first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeylWord {
    pub letters: Vec<usize>,
    pub matrix: ZMatrix,
}

impl WeylWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// `g = s · w` with `s` preserving the camera and `w` in the Weyl group.
#[derive(Clone, Debug)]
pub struct CameraDecomposition {
    pub s: ZMatrix,
    pub w: WeylWord,
    /// `s(simple[i]) = simple[permutation[i]]`.
    pub permutation: Vec<usize>,
}

fn dot_rq(l: &Lattice, r: &[BigInt], x: &[BigRational]) -> BigRational {
    l.dot_q(&to_qvec(r), x)
}

fn is_positive_wrt(l: &Lattice, functional: &[QVector], r: &[BigInt]) -> Option<bool> {
    functional.iter().find_map(|f| {
        let p = dot_rq(l, r, f);
        (!p.is_zero()).then(|| p.is_positive())
    })
}

impl RootSystem {
    /// Root system of a negative definite sublattice, with the default chamber.
    pub fn of(l: &Lattice, s: &Sublattice) -> Result<Self> {
        let roots = roots_in(l, s)?;
        Self::from_roots(l, s.ambient_rank(), roots, Vec::new())
    }

    pub fn of_lattice(l: &Lattice) -> Result<Self> {
        Self::of(l, &l.full())
    }

    /// Builds a system from a root list closed under negation and reflections.
    /// `functional` selects the chamber; the default generic functional of the
    /// root span is appended as a tie-breaker.
    pub fn from_roots(l: &Lattice, dim: usize, mut roots: Vec<ZVector>, mut functional: Vec<QVector>) -> Result<Self> {
        roots.sort();
        roots.dedup();
        let span = Sublattice::span(dim, &roots);
        // Root coordinates in the span basis are bounded by `maxc`; a base
        // above 2·maxc makes the functional nonzero on every root.
        let maxc =
            roots.iter().filter_map(|r| span.coordinates(r)).flatten().map(|x| x.abs()).max().unwrap_or_default();
        let mut base = BigInt::from(10).max(maxc * 2 + 1);
        loop {
            let mut f = functional.clone();
            f.push(functional_with_base(l, &span, &base));
            if roots.iter().all(|r| is_positive_wrt(l, &f, r).is_some()) {
                functional = f;
                break;
            }
            base *= 10;
            if base.bits() > 256 {
                return Err(Error::Verification("no generic functional found".into()));
            }
        }
        let positive: Vec<ZVector> =
            roots.iter().filter(|r| is_positive_wrt(l, &functional, r) == Some(true)).cloned().collect();
        let pos_set: HashSet<&ZVector> = positive.iter().collect();
        let mut simple: Vec<ZVector> =
            positive.iter().filter(|r| !positive.iter().any(|p| pos_set.contains(&sub_vec(r, p)))).cloned().collect();
        simple.sort();
        if simple.len() != span.rank() {
            return Err(Error::Verification(format!(
                "{} simple roots for a root span of rank {}",
                simple.len(),
                span.rank()
            )));
        }
        let components = dynkin_components(l, &simple)?;
        let reflections = simple.iter().map(|a| l.reflection(a).map(|r| r.into_matrix())).collect::<Result<_>>()?;
        let root_set = roots.iter().cloned().collect();
        Ok(RootSystem { dim, roots, root_set, positive, simple, components, functional, span, reflections })
    }

    /// The same roots with the chamber containing `x` (which must avoid all mirrors).
    pub fn rechamber(&self, l: &Lattice, x: &QVector) -> Result<Self> {
        if self.roots.iter().any(|r| dot_rq(l, r, x).is_zero()) {
            return Err(Error::Precondition("vector lies on a mirror".into()));
        }
        Self::from_roots(l, self.dim, self.roots.clone(), vec![x.clone()])
    }

    /// Same roots, chamber selected lexicographically by `functional`.
    pub fn with_functional(&self, l: &Lattice, functional: Vec<QVector>) -> Result<Self> {
        Self::from_roots(l, self.dim, self.roots.clone(), functional)
    }

    pub fn ambient_rank(&self) -> usize {
        self.dim
    }

    pub fn roots(&self) -> &[ZVector] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[ZVector] {
        &self.positive
    }

    pub fn simple_roots(&self) -> &[ZVector] {
        &self.simple
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// The lattice generated by the roots.
    pub fn span(&self) -> &Sublattice {
        &self.span
    }

    pub fn functional(&self) -> &[QVector] {
        &self.functional
    }

    pub fn is_root(&self, v: &[BigInt]) -> bool {
        self.root_set.contains(v)
    }

    pub fn simple_reflections(&self) -> &[ZMatrix] {
        &self.reflections
    }

    pub fn type_string(&self) -> String {
        type_string(&self.components)
    }

    /// Whether `g` maps the root set onto itself.
    pub fn is_preserved_by(&self, g: &ZMatrix) -> bool {
        self.roots.iter().all(|r| self.root_set.contains(&g.mul_vec(r)))
    }

    pub fn camera(&self, l: &Lattice) -> Camera {
        let k = self.simple.len();
        let mut witness = vec![BigRational::zero(); self.dim];
        if k > 0 {
            let g = l.gram_of(&self.simple).to_q();
            let ones = vec![BigRational::one(); k];
            let c = g.solve(&ones).expect("simple roots are independent");
            for (cj, a) in c.iter().zip(&self.simple) {
                for (w, x) in witness.iter_mut().zip(a) {
                    *w += cj * rat(x);
                }
            }
        }
        Camera { simple_roots: self.simple.clone(), witness }
    }

    /// Whether `x` lies strictly inside the chamber.
    pub fn in_chamber(&self, l: &Lattice, x: &[BigRational]) -> bool {
        self.simple.iter().all(|a| dot_rq(l, a, x).is_positive())
    }

    pub fn on_mirror(&self, l: &Lattice, x: &[BigRational]) -> Option<ZVector> {
        self.positive.iter().find(|r| dot_rq(l, r, x).is_zero()).cloned()
    }

    /// Word `w` with `w(x)` in the chamber; reflects in the lowest-index
    /// violated simple root at each step.
    pub fn to_fundamental_chamber(&self, l: &Lattice, x: &[BigRational]) -> Result<WeylWord> {
        if let Some(r) = self.on_mirror(l, x) {
            return Err(Error::Precondition(format!("target lies on the mirror of {}", crate::matrix::fmt_vec(&r))));
        }
        let mut x = x.to_vec();
        let mut letters = Vec::new();
        let mut matrix = ZMatrix::identity(self.dim);
        loop {
            let hit = self.simple.iter().enumerate().find_map(|(i, a)| {
                let p = dot_rq(l, a, &x);
                p.is_negative().then_some((i, p))
            });
            let Some((i, p)) = hit else { break };
            for (xk, ak) in x.iter_mut().zip(&self.simple[i]) {
                *xk += &p * rat(ak);
            }
            letters.push(i);
            matrix = &self.reflections[i] * &matrix;
            if letters.len() > self.positive.len() {
                return Err(Error::Verification("chamber walk exceeded the number of positive roots".into()));
            }
        }
        Ok(WeylWord { letters, matrix })
    }

    pub fn word_matrix(&self, letters: &[usize]) -> ZMatrix {
        letters.iter().fold(ZMatrix::identity(self.dim), |m, &i| &self.reflections[i] * &m)
    }

    /// `g = s · w` with `s` preserving the chamber.
    pub fn camera_decompose(&self, l: &Lattice, g: &ZMatrix) -> Result<CameraDecomposition> {
        if !self.is_preserved_by(g) {
            return Err(Error::Invariance("isometry does not preserve the root system".into()));
        }
        let witness = self.camera(l).witness;
        let ginv = g.inverse_unimodular().ok_or_else(|| Error::NotIsometry("not invertible".into()))?;
        let w = self.to_fundamental_chamber(l, &ginv.mul_qvec(&witness))?;
        let winv = w.matrix.inverse_unimodular().expect("Weyl elements are unimodular");
        let s = g * &winv;
        let permutation = self.simple_permutation(&s)?;
        Ok(CameraDecomposition { s, w, permutation })
    }

    /// Permutation of the simple roots induced by `s`, if `s` preserves the chamber.
    pub fn simple_permutation(&self, s: &ZMatrix) -> Result<Vec<usize>> {
        self.simple
            .iter()
            .map(|a| {
                let b = s.mul_vec(a);
                self.simple
                    .iter()
                    .position(|x| *x == b)
                    .ok_or_else(|| Error::Verification("map does not preserve the camera".into()))
            })
            .collect()
    }

    /// Weyl group as matrices on the root span (coordinates of `span()`).
    pub fn weyl_group_on_span(&self, bound: usize) -> Result<(Vec<ZMatrix>, Closure)> {
        let gens: Vec<ZMatrix> = self
            .reflections
            .iter()
            .map(|m| self.span.restrict_map(m).expect("reflections preserve the root span"))
            .collect();
        let c = close(self.span.rank(), &gens, bound)?;
        Ok((gens, c))
    }

    /// Index of the component containing a root.
    pub fn component_of(&self, l: &Lattice, r: &[BigInt]) -> Option<usize> {
        self.components.iter().position(|c| c.simple.iter().any(|&i| !l.dot(&self.simple[i], r).is_zero()))
    }

    /// Induced permutation of the irreducible components.
    pub fn component_permutation(&self, l: &Lattice, g: &ZMatrix) -> Option<Vec<usize>> {
        self.components.iter().map(|c| self.component_of(l, &g.mul_vec(&self.simple[c.simple[0]]))).collect()
    }
}

/// `Σ base^i d_i` over the dual basis `d_i` of `span ⊗ Q`.
fn functional_with_base(l: &Lattice, span: &Sublattice, base: &BigInt) -> QVector {
    let k = span.rank();
    let n = span.ambient_rank();
    if k == 0 {
        return vec![BigRational::zero(); n];
    }
    let inv = span.gram(l).to_q().inverse().expect("root span is definite");
    let b = rat(base);
    let mut p = BigRational::one();
    let mut f = vec![BigRational::zero(); n];
    for i in 0..k {
        for j in 0..k {
            let w = &p * inv.get(i, j);
            if w.is_zero() {
                continue;
            }
            for (fx, bx) in f.iter_mut().zip(&span.basis()[j]) {
                *fx += &w * rat(bx);
            }
        }
        p *= &b;
    }
    f
}

/// Splits simple roots into connected Dynkin components and names them.
fn dynkin_components(l: &Lattice, simple: &[ZVector]) -> Result<Vec<Component>> {
    let k = simple.len();
    let mut adj = vec![Vec::new(); k];
    for i in 0..k {
        for j in i + 1..k {
            let p = l.dot(&simple[i], &simple[j]);
            if p.is_zero() {
                continue;
            }
            if !p.is_one() {
                return Err(Error::Verification(format!("simple roots pair to {p}")));
            }
            adj[i].push(j);
            adj[j].push(i);
        }
    }
    let mut seen = vec![false; k];
    let mut out = Vec::new();
    for s in 0..k {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut head = 0;
        while head < comp.len() {
            for &j in &adj[comp[head]] {
                if !seen[j] {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            head += 1;
        }
        comp.sort();
        let (letter, rank) = classify_graph(&comp, &adj)?;
        out.push(Component { letter, rank, simple: comp });
    }
    out.sort();
    Ok(out)
}

fn classify_graph(nodes: &[usize], adj: &[Vec<usize>]) -> Result<(char, usize)> {
    let n = nodes.len();
    let edges: usize = nodes.iter().map(|&i| adj[i].len()).sum::<usize>() / 2;
    if edges != n - 1 {
        return Err(Error::Verification("Dynkin graph has a cycle".into()));
    }
    let branch: Vec<usize> = nodes.iter().copied().filter(|&i| adj[i].len() >= 3).collect();
    match branch.as_slice() {
        [] => {
            if nodes.iter().any(|&i| adj[i].len() > 2) {
                return Err(Error::Verification("malformed Dynkin graph".into()));
            }
            Ok(('A', n))
        }
        [b] if adj[*b].len() == 3 => {
            let mut arms: Vec<usize> = adj[*b]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (*b, start, 1);
                    loop {
                        let next: Vec<usize> = adj[cur].iter().copied().filter(|&x| x != prev).collect();
                        match next.as_slice() {
                            [] => break len,
                            [x] => {
                                prev = cur;
                                cur = *x;
                                len += 1;
                            }
                            _ => break usize::MAX,
                        }
                    }
                })
                .collect();
            arms.sort();
            match arms.as_slice() {
                [1, 1, k] if *k < usize::MAX => Ok(('D', k + 3)),
                [1, 2, 2] => Ok(('E', 6)),
                [1, 2, 3] => Ok(('E', 7)),
                [1, 2, 4] => Ok(('E', 8)),
                _ => Err(Error::Verification(format!("non-ADE branch arms {arms:?}"))),
            }
        }
        _ => Err(Error::Verification("non-ADE Dynkin graph".into())),
    }
}

/// Multiset of component types.
pub fn ade_decompose(r: &RootSystem) -> Vec<(char, usize)> {
    let mut v: Vec<(char, usize)> = r.components.iter().map(|c| (c.letter, c.rank)).collect();
    v.sort();
    v
}

/// Number of roots of an irreducible type.
pub fn root_count(letter: char, n: usize) -> usize {
    match letter {
        'A' => n * (n + 1),
        'D' => 2 * n * (n - 1),
        'E' => match n {
            6 => 72,
            7 => 126,
            _ => 240,
        },
        _ => 0,
    }
}

/// Order of the Weyl group of an irreducible type.
pub fn weyl_order(letter: char, n: usize) -> u128 {
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    match letter {
        'A' => fact(n + 1),
        'D' => (1u128 << (n - 1)) * fact(n),
        'E' => match n {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        _ => 0,
    }
}

/// Outcome of the admissibility test.
#[derive(Clone, Debug)]
pub enum Admissibility {
    /// A generic invariant vector; its chamber is preserved by the action.
    Admissible { witness: QVector },
    /// A root orthogonal to every invariant vector.
    NotAdmissible { root: ZVector },
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible { .. })
    }
}

/// Fixed vectors of the action inside the root span.
pub fn invariant_part(r: &RootSystem, action: &[ZMatrix]) -> Result<Vec<ZVector>> {
    let span = r.span();
    let k = span.rank();
    let mut rows = Vec::new();
    for g in action {
        let m =
            span.restrict_map(g).ok_or_else(|| Error::Invariance("action does not preserve the root span".into()))?;
        let d = &m - &ZMatrix::identity(k);
        rows.extend(d.to_rows());
    }
    let fixed = if rows.is_empty() {
        ZMatrix::identity(k).to_rows()
    } else {
        crate::normal_form::integer_kernel(&ZMatrix::from_rows(&rows).expect("rows"))
    };
    Ok(fixed.iter().map(|c| span.embed(c)).collect())
}

/// A vector in the span of `fixed` avoiding every mirror, if one exists.
pub fn generic_combination(l: &Lattice, roots: &[ZVector], fixed: &[ZVector]) -> Option<QVector> {
    if fixed.is_empty() {
        return if roots.is_empty() { Some(Vec::new()) } else { None };
    }
    let n = fixed[0].len();
    for t in 2i64..200 {
        let mut x = vec![BigInt::zero(); n];
        let mut p = BigInt::one();
        for f in fixed {
            x = add_vec(&x, &f.iter().map(|c| c * &p).collect::<Vec<_>>());
            p *= t;
        }
        if roots.iter().all(|r| !l.dot(r, &x).is_zero()) {
            return Some(to_qvec(&x));
        }
    }
    None
}

/// Lemma-level admissibility: no root is orthogonal to the invariant part.
pub fn is_admissible(l: &Lattice, r: &RootSystem, action: &[ZMatrix]) -> Result<Admissibility> {
    for g in action {
        if !r.is_preserved_by(g) {
            return Err(Error::Invariance("element does not preserve the root system".into()));
        }
    }
    let fixed = invariant_part(r, action)?;
    if let Some(root) = r.positive_roots().iter().find(|x| fixed.iter().all(|f| l.dot(x, f).is_zero())) {
        return Ok(Admissibility::NotAdmissible { root: root.clone() });
    }
    let witness = generic_combination(l, r.roots(), &fixed)
        .ok_or_else(|| Error::Verification("no generic invariant vector found".into()))?;
    let witness = if witness.is_empty() { vec![BigRational::zero(); r.ambient_rank()] } else { witness };
    Ok(Admissibility::Admissible { witness })
}

/// Reflection matrix of the ambient lattice in a root.
pub fn root_reflection(l: &Lattice, r: &[BigInt]) -> Result<ZMatrix> {
    Ok(l.reflection(r)?.into_matrix())
}

/// Checks that a root list is closed under negation.
pub fn closed_under_negation(roots: &[ZVector]) -> bool {
    let set: HashSet<&ZVector> = roots.iter().collect();
    roots.iter().all(|r| set.contains(&neg_vec(r)))
}

/// Rational coordinates of a vector in the simple roots.
pub fn simple_coordinates(r: &RootSystem, v: &[BigInt]) -> Option<QVector> {
    if r.simple.is_empty() {
        return None;
    }
    QMatrix::from_columns(r.dim, &r.simple.iter().map(|s| to_qvec(s)).collect::<Vec<_>>()).solve(&to_qvec(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::standard_lattice;
    use crate::matrix::zvec;

    #[test]
    fn a2_system() {
        let a2 = standard_lattice("A2").unwrap();
        let r = RootSystem::of_lattice(&a2).unwrap();
        assert_eq!(r.roots().len(), 6);
        assert_eq!(ade_decompose(&r), vec![('A', 2)]);
        assert!(closed_under_negation(r.roots()));
        let c = r.camera(&a2);
        assert!(r.in_chamber(&a2, &c.witness));
    }

    #[test]
    fn e8_and_empty() {
        let e8 = standard_lattice("E8").unwrap();
        let r = RootSystem::of_lattice(&e8).unwrap();
        assert_eq!(r.roots().len(), 240);
        assert_eq!(ade_decompose(&r), vec![('E', 8)]);
        let d = standard_lattice("diag(-4)").unwrap();
        let r = RootSystem::of_lattice(&d).unwrap();
        assert!(r.is_empty());
        assert!(ade_decompose(&r).is_empty());
    }

    #[test]
    fn block_sum_types() {
        let l = standard_lattice("A2+A1").unwrap();
        let r = RootSystem::of_lattice(&l).unwrap();
        assert_eq!(ade_decompose(&r), vec![('A', 1), ('A', 2)]);
        let l = standard_lattice("D4+E6+E7").unwrap();
        let r = RootSystem::of_lattice(&l).unwrap();
        assert_eq!(ade_decompose(&r), vec![('D', 4), ('E', 6), ('E', 7)]);
    }

    #[test]
    fn a2_minus_identity_decomposes_into_flip_and_longest_element() {
        let a2 = standard_lattice("A2").unwrap();
        let r = RootSystem::of_lattice(&a2).unwrap();
        let g = ZMatrix::scalar(2, &BigInt::from(-1));
        let d = r.camera_decompose(&a2, &g).unwrap();
        assert_eq!(d.w.len(), 3);
        assert_eq!(d.permutation, vec![1, 0]);
        assert_eq!(&d.s * &d.w.matrix, g);
    }

    #[test]
    fn a1_walk() {
        let a1 = standard_lattice("A1").unwrap();
        let r = RootSystem::of_lattice(&a1).unwrap();
        let c = r.camera(&a1);
        let neg: QVector = c.witness.iter().map(|x| -x).collect();
        assert_eq!(r.to_fundamental_chamber(&a1, &neg).unwrap().len(), 1);
        assert!(r.to_fundamental_chamber(&a1, &c.witness).unwrap().is_empty());
        assert!(r.to_fundamental_chamber(&a1, &[BigRational::zero()]).is_err());
    }

    #[test]
    fn admissibility_examples() {
        let a2 = standard_lattice("A2").unwrap();
        let r = RootSystem::of_lattice(&a2).unwrap();
        let swap = ZMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert!(is_admissible(&a2, &r, &[swap]).unwrap().is_admissible());
        let a1 = standard_lattice("A1").unwrap();
        let r = RootSystem::of_lattice(&a1).unwrap();
        match is_admissible(&a1, &r, &[ZMatrix::from_i64(&[&[-1]])]).unwrap() {
            Admissibility::NotAdmissible { root } => assert_eq!(root, zvec(&[1])),
            _ => panic!("expected a witness"),
        }
        assert!(is_admissible(&a1, &r, &[]).unwrap().is_admissible());
    }
}
