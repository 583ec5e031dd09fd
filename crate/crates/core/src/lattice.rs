//! Lattices, sublattices, rational subspaces and isometries.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{
    bilinear, bilinear_q, common_denominator, is_zero_vec, rat, to_qvec, QMatrix, QVector, ZMatrix, ZVector,
};
use crate::normal_form::{congruence_diagonal, hnf_basis, integer_kernel, saturate, saturation_index, smith};

/// A free module `Z^rank` with a symmetric integral Gram matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Lattice {
    gram: ZMatrix,
    even: bool,
    nondegenerate: bool,
}

/// Inertia indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
    pub null: usize,
}

impl Signature {
    pub fn rank(&self) -> usize {
        self.plus + self.minus + self.null
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.null == 0 {
            write!(f, "({},{})", self.plus, self.minus)
        } else {
            write!(f, "({},{},{})", self.plus, self.minus, self.null)
        }
    }
}

/// Inertia of a symmetric integer matrix.
pub fn signature_of(gram: &ZMatrix) -> Signature {
    let d = congruence_diagonal(gram);
    Signature {
        plus: d.iter().filter(|x| x.is_positive()).count(),
        minus: d.iter().filter(|x| x.is_negative()).count(),
        null: d.iter().filter(|x| x.is_zero()).count(),
    }
}

impl Lattice {
    pub fn new(gram: ZMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Dimension(format!("gram is {}x{}", gram.rows(), gram.cols())));
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let n = gram.rows();
        let even = (0..n).all(|i| gram.get(i, i).is_even());
        let nondegenerate = !gram.determinant().is_zero();
        Ok(Lattice { gram, even, nondegenerate })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(ZMatrix::from_i64(rows))
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &ZMatrix {
        &self.gram
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.nondegenerate
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.determinant()
    }

    pub fn dot(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        bilinear(&self.gram, x, y)
    }

    pub fn norm(&self, x: &[BigInt]) -> BigInt {
        bilinear(&self.gram, x, x)
    }

    pub fn dot_q(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        bilinear_q(&self.gram, x, y)
    }

    pub fn norm_q(&self, x: &[BigRational]) -> BigRational {
        bilinear_q(&self.gram, x, x)
    }

    pub fn signature(&self) -> Signature {
        signature_of(&self.gram)
    }

    /// Gram matrix of a family of vectors.
    pub fn gram_of(&self, basis: &[ZVector]) -> ZMatrix {
        let k = basis.len();
        let gb: Vec<ZVector> = basis.iter().map(|b| self.gram.mul_vec(b)).collect();
        let mut out = ZMatrix::zeros(k, k);
        for i in 0..k {
            for j in i..k {
                let v: BigInt = basis[i].iter().zip(&gb[j]).map(|(a, b)| a * b).sum();
                out.set(i, j, v.clone());
                out.set(j, i, v);
            }
        }
        out
    }

    /// The lattice spanned by `basis`, with its own coordinates.
    pub fn restrict(&self, basis: &[ZVector]) -> Lattice {
        Lattice::new(self.gram_of(basis)).expect("restricted gram is symmetric")
    }

    /// Direct sum.
    pub fn sum(parts: &[&Lattice]) -> Lattice {
        let grams: Vec<&ZMatrix> = parts.iter().map(|l| &l.gram).collect();
        Lattice::new(ZMatrix::block_diag(&grams)).expect("block sum is symmetric")
    }

    pub fn scaled(&self, k: &BigInt) -> Lattice {
        Lattice::new(self.gram.scale(k)).expect("scaled gram is symmetric")
    }

    /// The whole lattice as a sublattice of itself.
    pub fn full(&self) -> Sublattice {
        Sublattice::from_basis_unchecked(self.rank(), ZMatrix::identity(self.rank()).to_rows())
    }

    pub fn zero_sublattice(&self) -> Sublattice {
        Sublattice::from_basis_unchecked(self.rank(), Vec::new())
    }

    /// Reflection `x ↦ x − 2(x·v)/(v²)·v`; fails when it is not integral.
    pub fn reflection(&self, v: &[BigInt]) -> Result<Isometry> {
        let vv = self.norm(v);
        if vv.is_zero() {
            return Err(Error::Precondition("reflection in an isotropic vector".into()));
        }
        let gv = self.gram.mul_vec(v);
        let n = self.rank();
        let mut m = ZMatrix::identity(n);
        let two = BigInt::from(2);
        for j in 0..n {
            let num = &two * &gv[j];
            if !(&num % &vv).is_zero() {
                return Err(Error::NotIntegral(format!("reflection in vector of square {vv}")));
            }
            let f = num / &vv;
            for i in 0..n {
                if !v[i].is_zero() {
                    let x = m.get(i, j) - &f * &v[i];
                    m.set(i, j, x);
                }
            }
        }
        Ok(Isometry { matrix: m })
    }

    pub fn is_isometry(&self, m: &ZMatrix) -> Result<bool> {
        if m.rows() != self.rank() || m.cols() != self.rank() {
            return Err(Error::Dimension(format!("matrix is {}x{}, lattice rank {}", m.rows(), m.cols(), self.rank())));
        }
        Ok(m.congruence(&self.gram) == self.gram && m.determinant().abs().is_one())
    }
}

/// A sublattice of `Z^dim`, stored by a basis in Hermite normal form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Sublattice {
    dim: usize,
    basis: Vec<ZVector>,
    primitive: bool,
}

impl Sublattice {
    fn from_basis_unchecked(dim: usize, basis: Vec<ZVector>) -> Self {
        let primitive = saturation_index(&basis).is_one();
        Sublattice { dim, basis, primitive }
    }

    /// The sublattice generated by arbitrary vectors of `Z^dim`.
    pub fn span(dim: usize, gens: &[ZVector]) -> Self {
        let gens: Vec<ZVector> = gens.iter().filter(|g| !is_zero_vec(g)).cloned().collect();
        for g in &gens {
            assert_eq!(g.len(), dim, "generator length");
        }
        Self::from_basis_unchecked(dim, hnf_basis(&gens, dim))
    }

    /// `span_Q(gens) ∩ Z^dim`.
    pub fn saturated_span(dim: usize, gens: &[ZVector]) -> Self {
        Sublattice { dim, basis: saturate(gens, dim), primitive: true }
    }

    pub fn ambient_rank(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ZVector] {
        &self.basis
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// `dim × rank` matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> ZMatrix {
        ZMatrix::from_columns(self.dim, &self.basis)
    }

    pub fn gram(&self, l: &Lattice) -> ZMatrix {
        l.gram_of(&self.basis)
    }

    pub fn as_lattice(&self, l: &Lattice) -> Lattice {
        l.restrict(&self.basis)
    }

    pub fn signature(&self, l: &Lattice) -> Signature {
        signature_of(&self.gram(l))
    }

    pub fn subspace(&self) -> Subspace {
        Subspace::from_integer(self.dim, &self.basis)
    }

    /// Rational coordinates of `v` in the basis, if `v` lies in the rational span.
    pub fn rational_coordinates(&self, v: &[BigRational]) -> Option<QVector> {
        if self.basis.is_empty() {
            return if v.iter().all(Zero::is_zero) { Some(Vec::new()) } else { None };
        }
        self.basis_matrix().to_q().solve(v)
    }

    /// Integer coordinates of `v`, if `v` lies in the sublattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<ZVector> {
        let c = self.rational_coordinates(&to_qvec(v))?;
        c.iter().map(|x| if x.is_integer() { Some(x.to_integer()) } else { None }).collect()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_q(&self, v: &[BigRational]) -> bool {
        self.rational_coordinates(v).is_some()
    }

    pub fn contains_sublattice(&self, other: &Sublattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// Ambient vector with the given coordinates.
    pub fn embed(&self, coords: &[BigInt]) -> ZVector {
        let mut out = vec![BigInt::zero(); self.dim];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    }

    pub fn embed_q(&self, coords: &[BigRational]) -> QVector {
        let mut out = vec![BigRational::zero(); self.dim];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * rat(x);
            }
        }
        out
    }

    pub fn sum(&self, other: &Sublattice) -> Sublattice {
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Sublattice::span(self.dim, &gens)
    }

    /// Whether `m` maps the sublattice onto itself.
    pub fn is_invariant(&self, m: &ZMatrix) -> bool {
        self.basis.iter().all(|b| self.contains(&m.mul_vec(b)))
    }

    /// Matrix of `m` restricted to the sublattice, in its basis.
    pub fn restrict_map(&self, m: &ZMatrix) -> Option<ZMatrix> {
        let cols: Option<Vec<ZVector>> = self.basis.iter().map(|b| self.coordinates(&m.mul_vec(b))).collect();
        Some(ZMatrix::from_columns(self.rank(), &cols?))
    }
}

/// A rational subspace of `Q^dim` in reduced row echelon form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    dim: usize,
    basis: Vec<QVector>,
}

impl Subspace {
    pub fn new(dim: usize, gens: &[QVector]) -> Self {
        if gens.is_empty() {
            return Subspace { dim, basis: Vec::new() };
        }
        let m = QMatrix::from_rows(gens, dim);
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i)).collect();
        Subspace { dim, basis }
    }

    pub fn from_integer(dim: usize, gens: &[ZVector]) -> Self {
        let q: Vec<QVector> = gens.iter().map(|g| to_qvec(g)).collect();
        Self::new(dim, &q)
    }

    pub fn ambient_rank(&self) -> usize {
        self.dim
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[QVector] {
        &self.basis
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        let mut gens = self.basis.clone();
        gens.push(v.to_vec());
        Subspace::new(self.dim, &gens).dimension() == self.dimension()
    }

    /// Primitive integer vectors on the basis rays.
    pub fn integer_generators(&self) -> Vec<ZVector> {
        self.basis
            .iter()
            .map(|b| {
                let d = rat(&common_denominator(b));
                b.iter().map(|x| (x * &d).to_integer()).collect()
            })
            .collect()
    }

    /// `V ∩ Z^dim`.
    pub fn lattice_points(&self) -> Sublattice {
        Sublattice::saturated_span(self.dim, &self.integer_generators())
    }
}

/// Orthogonal complement of a family of vectors in `l`; always primitive.
pub fn orthogonal_complement(l: &Lattice, vectors: &[ZVector]) -> Sublattice {
    let n = l.rank();
    let rows: Vec<ZVector> = vectors.iter().filter(|v| !is_zero_vec(v)).map(|v| l.gram().mul_vec(v)).collect();
    if rows.is_empty() {
        return l.full();
    }
    let m = ZMatrix::from_rows(&rows).expect("row lengths");
    Sublattice { dim: n, basis: integer_kernel(&m), primitive: true }
}

pub fn complement_of(l: &Lattice, s: &Sublattice) -> Sublattice {
    orthogonal_complement(l, s.basis())
}

pub fn complement_of_subspace(l: &Lattice, s: &Subspace) -> Sublattice {
    orthogonal_complement(l, &s.integer_generators())
}

/// `{x : g x = x for every g}`; primitive.
pub fn fixed_sublattice(n: usize, mats: &[ZMatrix]) -> Sublattice {
    let mut rows = Vec::new();
    for g in mats {
        rows.extend((g - &ZMatrix::identity(n)).to_rows());
    }
    if rows.is_empty() {
        return Sublattice { dim: n, basis: ZMatrix::identity(n).to_rows(), primitive: true };
    }
    let m = ZMatrix::from_rows(&rows).expect("row lengths");
    Sublattice { dim: n, basis: integer_kernel(&m), primitive: true }
}

/// `{x : g x = -x}` for a single map; primitive.
pub fn anti_fixed_sublattice(n: usize, g: &ZMatrix) -> Sublattice {
    let m = g + &ZMatrix::identity(n);
    Sublattice { dim: n, basis: integer_kernel(&m), primitive: true }
}

/// `ker p(g)`; primitive.
pub fn kernel_sublattice(m: &ZMatrix) -> Sublattice {
    Sublattice { dim: m.cols(), basis: integer_kernel(m), primitive: true }
}

/// Pairwise orthogonal primitive vectors spanning `s ⊗ Q` modulo its radical,
/// each with its square. Isotropic pairs are repaired by `b_i += b_j`.
pub fn orthogonal_basis(l: &Lattice, s: &Sublattice) -> Vec<(ZVector, BigInt)> {
    let mut rest: Vec<QVector> = s.basis().iter().map(|b| to_qvec(b)).collect();
    let mut out = Vec::new();
    while !rest.is_empty() {
        let pick = match rest.iter().position(|v| !l.norm_q(v).is_zero()) {
            Some(i) => i,
            None => {
                let pair = (0..rest.len())
                    .flat_map(|i| (i + 1..rest.len()).map(move |j| (i, j)))
                    .find(|&(i, j)| !l.dot_q(&rest[i], &rest[j]).is_zero());
                match pair {
                    Some((i, j)) => {
                        let sum: QVector = rest[i].iter().zip(&rest[j]).map(|(a, b)| a + b).collect();
                        rest[i] = sum;
                        i
                    }
                    None => break,
                }
            }
        };
        let v = rest.swap_remove(pick);
        let vv = l.norm_q(&v);
        for w in rest.iter_mut() {
            let f = l.dot_q(w, &v) / &vv;
            if !f.is_zero() {
                for (a, b) in w.iter_mut().zip(&v) {
                    *a -= &f * b;
                }
            }
        }
        let z = crate::matrix::primitive_on_ray(&v);
        let n = l.norm(&z);
        out.push((z, n));
    }
    out
}

/// A vector of positive square in `s`, if one exists.
pub fn positive_vector(l: &Lattice, s: &Sublattice) -> Option<ZVector> {
    orthogonal_basis(l, s).into_iter().find(|(_, n)| n.is_positive()).map(|(v, _)| v)
}

/// Primitive hull of `s` and the index `[hull : s]`.
pub fn primitive_hull(s: &Sublattice) -> (Sublattice, BigInt) {
    let index = saturation_index(s.basis());
    (Sublattice::saturated_span(s.ambient_rank(), s.basis()), index)
}

/// An automorphism of a lattice, acting on column coordinate vectors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Isometry {
    matrix: ZMatrix,
}

impl Isometry {
    pub fn new(l: &Lattice, matrix: ZMatrix) -> Result<Self> {
        if !l.is_isometry(&matrix)? {
            return Err(Error::NotIsometry(format!("{matrix}")));
        }
        Ok(Isometry { matrix })
    }

    pub fn identity(n: usize) -> Self {
        Isometry { matrix: ZMatrix::identity(n) }
    }

    /// Wraps a matrix already known to be an isometry.
    pub fn trusted(matrix: ZMatrix) -> Self {
        Isometry { matrix }
    }

    pub fn matrix(&self) -> &ZMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ZMatrix {
        self.matrix
    }

    pub fn apply(&self, v: &[BigInt]) -> ZVector {
        self.matrix.mul_vec(v)
    }

    pub fn apply_q(&self, v: &[BigRational]) -> QVector {
        self.matrix.mul_qvec(v)
    }

    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry { matrix: &self.matrix * &other.matrix }
    }

    pub fn inverse(&self) -> Isometry {
        Isometry { matrix: self.matrix.inverse_unimodular().expect("isometries are unimodular") }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }
}

/// The finite quadratic form on `L^*/L`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiscriminantForm {
    /// Invariant factors greater than one, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
    /// Generators as rational vectors of `L ⊗ Q`, one per invariant factor.
    pub generators: Vec<QVector>,
    /// `q(x_i)` reduced into `[0, 2)`; present only for even lattices.
    pub q_values: Option<Vec<BigRational>>,
    /// `b(x_i, x_j)` reduced into `[0, 1)`.
    pub b_values: Vec<Vec<BigRational>>,
}

pub fn reduce_mod(x: &BigRational, m: i64) -> BigRational {
    let m = BigRational::from_integer(BigInt::from(m));
    let k = (x / &m).floor();
    x - k * m
}

impl DiscriminantForm {
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Coordinates of a dual vector in the generators, modulo the invariant factors.
    pub fn coordinates(&self, l: &Lattice, x: &[BigRational]) -> Option<ZVector> {
        let (_, dual, cols) = discriminant_data(l)?;
        let idx: Vec<usize> = cols;
        // x = V D^{-1} y for integer y; y_i mod d_i are the coordinates.
        let y = dual.mul_vec(x);
        let mut out = Vec::with_capacity(idx.len());
        for (k, &i) in idx.iter().enumerate() {
            let yi = &y[i];
            if !yi.is_integer() {
                return None;
            }
            out.push(yi.to_integer().mod_floor(&self.invariant_factors[k]));
        }
        Some(out)
    }
}

/// `(smith diagonal, (V D^{-1})^{-1}, indices of nontrivial factors)`.
fn discriminant_data(l: &Lattice) -> Option<(Vec<BigInt>, QMatrix, Vec<usize>)> {
    if !l.is_nondegenerate() {
        return None;
    }
    let s = smith(l.gram());
    let d = s.diagonal();
    let n = l.rank();
    let mut vd = s.v.to_q();
    for j in 0..n {
        let inv = BigRational::new(BigInt::one(), d[j].clone());
        for i in 0..n {
            let x = vd.get(i, j) * &inv;
            vd.set(i, j, x);
        }
    }
    let inv = vd.inverse()?;
    let idx = (0..n).filter(|&i| !d[i].is_one()).collect();
    Some((d, inv, idx))
}

pub fn discriminant_form(l: &Lattice) -> Result<DiscriminantForm> {
    if !l.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    let s = smith(l.gram());
    let d = s.diagonal();
    let n = l.rank();
    let mut factors = Vec::new();
    let mut gens = Vec::new();
    for i in 0..n {
        if d[i].is_one() {
            continue;
        }
        let col: QVector = s.v.column(i).iter().map(|x| BigRational::new(x.clone(), d[i].clone())).collect();
        factors.push(d[i].clone());
        gens.push(col);
    }
    let b_values: Vec<Vec<BigRational>> =
        gens.iter().map(|x| gens.iter().map(|y| reduce_mod(&l.dot_q(x, y), 1)).collect()).collect();
    let q_values = l.is_even().then(|| gens.iter().map(|x| reduce_mod(&l.norm_q(x), 2)).collect());
    Ok(DiscriminantForm { invariant_factors: factors, generators: gens, q_values, b_values })
}

/// Action of an isometry on the discriminant group, as images of generators
/// in generator coordinates.
pub fn discriminant_action(l: &Lattice, disc: &DiscriminantForm, g: &ZMatrix) -> Option<Vec<ZVector>> {
    disc.generators.iter().map(|x| disc.coordinates(l, &g.mul_qvec(x))).collect()
}

fn root_gram(n: usize, edges: &[(usize, usize)]) -> ZMatrix {
    let mut g = ZMatrix::scalar(n, &BigInt::from(-2));
    for &(a, b) in edges {
        g.set(a, b, BigInt::one());
        g.set(b, a, BigInt::one());
    }
    g
}

/// Negative definite Cartan-type Gram matrix of an ADE lattice.
pub fn root_lattice_gram(letter: char, n: usize) -> Result<ZMatrix> {
    let edges: Vec<(usize, usize)> = match (letter, n) {
        ('A', n) if n >= 1 => (0..n - 1).map(|i| (i, i + 1)).collect(),
        ('D', n) if n >= 4 => {
            let mut e: Vec<(usize, usize)> = (0..n - 2).map(|i| (i, i + 1)).collect();
            e.push((n - 3, n - 1));
            e
        }
        ('E', n @ 6..=8) => {
            // Bourbaki labelling: 1-3, 3-4, 4-5, ..., 2-4 (zero based here).
            let mut e = vec![(0, 2), (2, 3), (1, 3)];
            e.extend((3..n - 1).map(|i| (i, i + 1)));
            e
        }
        _ => return Err(Error::UnknownLattice(format!("{letter}{n}"))),
    };
    Ok(root_gram(n, &edges))
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.trim().parse::<BigInt>().map_err(|_| Error::UnknownLattice(format!("bad integer '{s}'")))
}

fn parse_term(term: &str) -> Result<ZMatrix> {
    let t = term.trim();
    if t.is_empty() {
        return Err(Error::UnknownLattice("empty summand".into()));
    }
    let digits = t.chars().take_while(|c| c.is_ascii_digit()).count();
    let (count, rest) = if digits > 0 && !t.starts_with("diag") {
        let c: usize = t[..digits].parse().map_err(|_| Error::UnknownLattice(t.into()))?;
        (c, t[digits..].trim())
    } else {
        (1, t)
    };
    // Split off a trailing scale "(k)", except the argument list of diag.
    let (body, scale) = if let Some(stripped) = rest.strip_suffix(')') {
        let open = stripped.rfind('(').ok_or_else(|| Error::UnknownLattice(t.into()))?;
        let head = &stripped[..open];
        if head.trim() == "diag" {
            (rest, None)
        } else {
            (head.trim(), Some(parse_int(&stripped[open + 1..])?))
        }
    } else {
        (rest, None)
    };
    let base = if body == "U" {
        ZMatrix::from_i64(&[&[0, 1], &[1, 0]])
    } else if let Some(args) = body.strip_prefix("diag(").and_then(|x| x.strip_suffix(')')) {
        let vals: Result<Vec<BigInt>> = args.split(',').map(parse_int).collect();
        let vals = vals?;
        let mut m = ZMatrix::zeros(vals.len(), vals.len());
        for (i, v) in vals.into_iter().enumerate() {
            m.set(i, i, v);
        }
        m
    } else {
        let mut chars = body.chars();
        let letter = chars.next().ok_or_else(|| Error::UnknownLattice(t.into()))?;
        let idx = chars.as_str().trim_start_matches('_');
        let n: usize = idx.parse().map_err(|_| Error::UnknownLattice(t.into()))?;
        root_lattice_gram(letter, n)?
    };
    let base = match scale {
        Some(k) if k.is_zero() => return Err(Error::UnknownLattice(format!("zero scale in '{t}'"))),
        Some(k) => base.scale(&k),
        None => base,
    };
    if count == 0 {
        return Err(Error::UnknownLattice(format!("zero multiplicity in '{t}'")));
    }
    let blocks: Vec<&ZMatrix> = std::iter::repeat_n(&base, count).collect();
    Ok(ZMatrix::block_diag(&blocks))
}

/// Parses expressions such as `3U+2E8`, `U(2)`, `A2(-1)`, `diag(2,-2)`, `D_4`.
pub fn standard_lattice(spec: &str) -> Result<Lattice> {
    let mut terms = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in spec.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                terms.push(&spec[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    terms.push(&spec[start..]);
    let blocks: Result<Vec<ZMatrix>> = terms.iter().map(|t| parse_term(t)).collect();
    let blocks = blocks?;
    let refs: Vec<&ZMatrix> = blocks.iter().collect();
    Lattice::new(ZMatrix::block_diag(&refs))
}
