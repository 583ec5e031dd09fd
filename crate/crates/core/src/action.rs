//! Finite group actions on lattices: closure with the augmentation κ, fixed
//! lattices, the fundamental representation ρ and its lattice data.
//!
//! Generator matrices are the twisted matrices `τg`, acting on column
//! coordinate vectors of the ambient lattice.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::binary::divisors;
use crate::enumerate::roots_in;
use crate::error::{Error, Result};
use crate::group::{close, Closure};
use crate::lattice::{
    kernel_sublattice, orthogonal_basis, orthogonal_complement, positive_vector, Isometry, Lattice, Signature,
    Sublattice,
};
use crate::matrix::{int, rat, sign_normalized, QMatrix, QVector, ZMatrix, ZVector};
use crate::normal_form::smith;
use crate::poly::{cyclotomic, eval_matrix};

pub const DEFAULT_BOUND: usize = 1024;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub isometry: Isometry,
    /// Declared augmentation, `+1` or `-1`.
    pub kappa: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeAction {
    ambient: Lattice,
    generators: Vec<Generator>,
}

impl LatticeAction {
    /// Every matrix must be an isometry of `ambient` and every κ must be ±1.
    pub fn new(ambient: Lattice, gens: Vec<(String, ZMatrix, i8)>) -> Result<Self> {
        let mut generators = Vec::with_capacity(gens.len());
        for (name, m, kappa) in gens {
            if kappa != 1 && kappa != -1 {
                return Err(Error::Parse(format!("generator {name}: kappa must be +1 or -1")));
            }
            if m.rows() != ambient.rank() || m.cols() != ambient.rank() {
                return Err(Error::Dimension(format!(
                    "generator {name} is {}x{}, lattice has rank {}",
                    m.rows(),
                    m.cols(),
                    ambient.rank()
                )));
            }
            let isometry = Isometry::new(&ambient, m).map_err(|_| Error::NotIsometry(name.clone()))?;
            generators.push(Generator { name, isometry, kappa });
        }
        Ok(LatticeAction { ambient, generators })
    }

    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.ambient.rank()
    }

    pub fn matrices(&self) -> Vec<ZMatrix> {
        self.generators.iter().map(|g| g.isometry.matrix().clone()).collect()
    }

    /// Whether every declared κ is `+1`.
    pub fn is_holomorphic(&self) -> bool {
        self.generators.iter().all(|g| g.kappa == 1)
    }

    /// Index of the first generator with κ = −1.
    pub fn first_antiholomorphic(&self) -> Option<usize> {
        self.generators.iter().position(|g| g.kappa == -1)
    }

    /// The same names and κ with new matrices.
    pub fn with_matrices(&self, mats: Vec<ZMatrix>) -> Result<Self> {
        if mats.len() != self.generators.len() {
            return Err(Error::Dimension("generator count changed".into()));
        }
        let gens = self.generators.iter().zip(mats).map(|(g, m)| (g.name.clone(), m, g.kappa)).collect();
        LatticeAction::new(self.ambient.clone(), gens)
    }

    /// The action `g ↦ h g h⁻¹` transported along the isometry `h`.
    pub fn conjugate(&self, h: &Isometry) -> LatticeAction {
        let hi = h.inverse();
        let generators = self
            .generators
            .iter()
            .map(|g| Generator { name: g.name.clone(), isometry: h.compose(&g.isometry).compose(&hi), kappa: g.kappa })
            .collect();
        LatticeAction { ambient: self.ambient.clone(), generators }
    }
}

/// The enumerated group with κ on every element.
#[derive(Clone, Debug)]
pub struct GroupElements {
    closure: Closure,
    kappa: Vec<i8>,
}

impl GroupElements {
    pub fn order(&self) -> usize {
        self.closure.order()
    }

    pub fn elements(&self) -> &[ZMatrix] {
        &self.closure.elements
    }

    pub fn matrix(&self, i: usize) -> &ZMatrix {
        &self.closure.elements[i]
    }

    pub fn kappa(&self, i: usize) -> i8 {
        self.kappa[i]
    }

    pub fn position(&self, m: &ZMatrix) -> Option<usize> {
        self.closure.position(m)
    }

    /// Generator indices of a word for element `i`, first applied first.
    pub fn word(&self, i: usize) -> Vec<usize> {
        self.closure.word(i)
    }

    /// Indices of `G⁰ = ker κ`.
    pub fn kernel_indices(&self) -> Vec<usize> {
        (0..self.order()).filter(|&i| self.kappa[i] == 1).collect()
    }

    pub fn kernel_matrices(&self) -> Vec<ZMatrix> {
        self.kernel_indices().into_iter().map(|i| self.matrix(i).clone()).collect()
    }

    pub fn product(&self, i: usize, j: usize) -> Option<usize> {
        self.position(&(self.matrix(i) * self.matrix(j)))
    }

    pub fn element_order(&self, i: usize) -> usize {
        let g = self.matrix(i);
        let mut p = g.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = &p * g;
            k += 1;
        }
        k
    }

    /// Closure under products and κ multiplicativity on the full table.
    pub fn check_multiplication_table(&self) -> bool {
        (0..self.order()).all(|i| {
            (0..self.order()).all(|j| match self.product(i, j) {
                Some(k) => self.kappa[k] == self.kappa[i] * self.kappa[j],
                None => false,
            })
        })
    }
}

/// Closes the generators and extends κ along the breadth-first tree. Every
/// Schreier edge `g · e` is then checked, which makes κ a homomorphism.
pub fn enumerate_group(a: &LatticeAction, bound: usize) -> Result<GroupElements> {
    let mats = a.matrices();
    let closure = close(a.rank(), &mats, bound)?;
    let mut kappa = vec![1i8; closure.order()];
    for i in 1..closure.order() {
        let (p, g) = closure.parent[i].expect("non-identity elements have a parent");
        kappa[i] = a.generators[g].kappa * kappa[p];
    }
    for (gi, g) in mats.iter().enumerate() {
        for (i, e) in closure.elements.iter().enumerate() {
            let k = closure.position(&(g * e)).expect("closure is closed");
            if kappa[k] != a.generators[gi].kappa * kappa[i] {
                return Err(Error::KappaInconsistent(format!(
                    "relation through generator {} and element {i} forces κ = {}",
                    a.generators[gi].name, kappa[k]
                )));
            }
        }
    }
    Ok(GroupElements { closure, kappa })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subgroup {
    All,
    /// `G⁰ = ker κ`.
    Kernel,
}

/// Primitive sublattice fixed by the chosen subgroup: the saturated image of
/// the averaging sum.
pub fn fixed_lattice(group: &GroupElements, which: Subgroup) -> Sublattice {
    let n = group.matrix(0).rows();
    let mut sum = ZMatrix::zeros(n, n);
    for i in 0..group.order() {
        if which == Subgroup::All || group.kappa(i) == 1 {
            sum = &sum + group.matrix(i);
        }
    }
    Sublattice::saturated_span(n, &sum.columns())
}

/// `{x ∈ s : m x = sign · x}` for a map preserving `s`.
pub fn eigen_sublattice(s: &Sublattice, m: &ZMatrix, sign: i64) -> Result<Sublattice> {
    let r = s.restrict_map(m).ok_or_else(|| Error::Invariance("map does not preserve the sublattice".into()))?;
    let k = &r - &ZMatrix::scalar(s.rank(), &int(sign));
    let coords = kernel_sublattice(&k);
    let vecs: Vec<ZVector> = coords.basis().iter().map(|c| s.embed(c)).collect();
    Ok(Sublattice::span(s.ambient_rank(), &vecs))
}

/// Order and flag of the fundamental representation.
///
/// `ell` is G-fixed and positive; `plane` is an orthogonal positive pair
/// spanning `𝔴₀ = ℓ^⊥ ∩ 𝔴`, on which `witness` rotates by `2π/order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalData {
    pub order: u32,
    pub real: bool,
    pub witness: usize,
    pub witness_matrix: ZMatrix,
    pub ell: ZVector,
    pub plane: Vec<ZVector>,
    pub kernel_fixed_signature: Signature,
    pub invariant_signature: Signature,
}

impl FundamentalData {
    /// Basis `(ℓ, 𝔴₀)` of the positive 3-space.
    pub fn flag_basis(&self) -> Vec<ZVector> {
        let mut b = vec![self.ell.clone()];
        b.extend(self.plane.iter().cloned());
        b
    }
}

/// `2 cos(2π/n)` for `n ∈ {3, 4, 6}`.
pub fn trace_coefficient(n: u32) -> Option<i64> {
    match n {
        3 => Some(-1),
        4 => Some(0),
        6 => Some(1),
        _ => None,
    }
}

fn positives(l: &Lattice, s: &Sublattice) -> Vec<ZVector> {
    orthogonal_basis(l, s).into_iter().filter(|(_, n)| n.is_positive()).map(|(v, _)| v).collect()
}

fn not_ag(msg: &str) -> Error {
    Error::NotAlmostGeometric(msg.into())
}

/// Decides almost-geometricity for actions whose ρ(G⁰) is cyclic and
/// constructs an invariant flag `ℓ ⊂ 𝔴`. The declared κ is then checked as
/// the orientation character of the flag.
pub fn fundamental_data(a: &LatticeAction, group: &GroupElements) -> Result<FundamentalData> {
    let l = a.ambient();
    let n = l.rank();
    if l.signature().plus != 3 {
        return Err(Error::Precondition(format!("ambient signature {} needs σ₊ = 3", l.signature())));
    }
    let f0 = fixed_lattice(group, Subgroup::Kernel);
    let fg = fixed_lattice(group, Subgroup::All);
    let f0_sig = f0.signature(l);
    let fg_sig = fg.signature(l);
    let c = a.first_antiholomorphic().map(|i| a.generators()[i].isometry.matrix().clone());

    let (order, witness, ell, plane) = if f0_sig.plus == 3 {
        match &c {
            None => {
                let p = positives(l, &fg);
                (1, 0, p[0].clone(), vec![p[1].clone(), p[2].clone()])
            }
            Some(c) => {
                let minus = eigen_sublattice(&f0, c, -1)?;
                if fg_sig.plus != 2 || minus.signature(l).plus != 1 {
                    return Err(not_ag("c cannot act on a positive 3-space with determinant −1 fixing a line"));
                }
                let p = positives(l, &fg);
                let q = positive_vector(l, &minus).expect("σ₊ = 1");
                (1, 0, p[0].clone(), vec![p[1].clone(), q])
            }
        }
    } else {
        let mut best: Option<(u32, usize, Sublattice)> = None;
        for i in group.kernel_indices() {
            let ord = group.element_order(i);
            for m in divisors(&BigInt::from(ord)) {
                let m: u32 = m.try_into().expect("small order");
                if m < 2 || best.as_ref().is_some_and(|(bm, _, _)| *bm >= m) {
                    continue;
                }
                let k = kernel_sublattice(&eval_matrix(&cyclotomic(m), group.matrix(i)));
                if k.signature(l).plus >= 2 {
                    best = Some((m, i, k));
                }
            }
        }
        let (m, wi, k) = best.ok_or_else(|| not_ag("G⁰ rotates no positive plane and fixes no positive 3-space"))?;
        if k.signature(l).plus != 2 {
            return Err(not_ag("the rotated positive space has dimension 3"));
        }
        if m > 2 && trace_coefficient(m).is_none() {
            return Err(Error::Unsupported(format!("rotation order {m} needs a Galois splitting of ker Φ_{m}")));
        }
        let g = group.matrix(wi);
        let gk = k.restrict_map(g).expect("g preserves its cyclotomic kernel");
        let powers: Vec<ZMatrix> = (0..group.element_order(wi) as u32).map(|e| gk.pow(e)).collect();
        for h in group.kernel_matrices() {
            match k.restrict_map(&h) {
                Some(hk) if powers.contains(&hk) => {}
                _ => return Err(Error::Unsupported("G⁰ does not act on L_ρ through the witness".into())),
            }
        }
        for gen in a.generators() {
            if !k.is_invariant(gen.isometry.matrix()) {
                return Err(Error::Unsupported(format!("generator {} does not preserve L_ρ", gen.name)));
            }
        }
        let ell = positive_vector(l, &fg).ok_or_else(|| not_ag("L^G has no positive vector"))?;
        let plane = if m == 2 {
            match &c {
                None => positives(l, &k),
                Some(c) => {
                    let kp = eigen_sublattice(&k, c, 1)?;
                    let km = eigen_sublattice(&k, c, -1)?;
                    match (positive_vector(l, &kp), positive_vector(l, &km)) {
                        (Some(x), Some(y)) => vec![x, y],
                        _ => return Err(not_ag("c does not reverse orientation of a positive plane in L_ρ")),
                    }
                }
            }
        } else {
            let t = trace_coefficient(m).expect("checked above");
            let j = &g.scale(&int(2)) - &ZMatrix::scalar(n, &int(t));
            let src = match &c {
                None => k.clone(),
                Some(c) => eigen_sublattice(&k, c, 1)?,
            };
            let x = positive_vector(l, &src).ok_or_else(|| not_ag("M⁺ has no positive vector"))?;
            let jx = j.mul_vec(&x);
            vec![x, jx]
        };
        (m, wi, ell, plane)
    };

    let fd = FundamentalData {
        order,
        real: order <= 2,
        witness,
        witness_matrix: group.matrix(witness).clone(),
        ell,
        plane,
        kernel_fixed_signature: f0_sig,
        invariant_signature: fg_sig,
    };
    check_flag(l, group, &fd)?;
    Ok(fd)
}

/// Each element fixes ℓ, preserves 𝔴 and has determinant κ on it.
fn check_flag(l: &Lattice, group: &GroupElements, fd: &FundamentalData) -> Result<()> {
    let basis = fd.flag_basis();
    let gram = l.gram_of(&basis);
    if crate::lattice::signature_of(&gram).plus != 3 {
        return Err(Error::Verification("flag space is not positive of rank 3".into()));
    }
    let w = QMatrix::from_columns(l.rank(), &basis.iter().map(|b| crate::matrix::to_qvec(b)).collect::<Vec<_>>());
    for i in 0..group.order() {
        let g = group.matrix(i);
        if g.mul_vec(&fd.ell) != fd.ell {
            return Err(Error::Verification(format!("element {i} moves ℓ")));
        }
        let mut cols = Vec::with_capacity(3);
        for b in &basis {
            let img = crate::matrix::to_qvec(&g.mul_vec(b));
            cols.push(w.solve(&img).ok_or_else(|| Error::Verification(format!("element {i} moves 𝔴")))?);
        }
        let det = det3(&cols);
        let sign = if det.is_positive() { 1 } else { -1 };
        if sign != group.kappa(i) {
            return Err(Error::KappaInconsistent(format!(
                "element {i} has determinant {det} on 𝔴, declared κ = {}",
                group.kappa(i)
            )));
        }
    }
    Ok(())
}

fn det3(c: &[QVector]) -> BigRational {
    let m = |i: usize, j: usize| &c[j][i];
    m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
}

/// `L_ρ(Z)`: the primitive lattice `ker Φ_n(τg) ∩ L` for the witness `g`,
/// or `L^{G⁰}` when `n = 1`. G-invariance is verified.
pub fn rho_lattice(a: &LatticeAction, group: &GroupElements, f: &FundamentalData) -> Result<Sublattice> {
    let s = if f.order == 1 {
        fixed_lattice(group, Subgroup::Kernel)
    } else {
        kernel_sublattice(&eval_matrix(&cyclotomic(f.order), &f.witness_matrix))
    };
    for g in a.generators() {
        if !s.is_invariant(g.isometry.matrix()) {
            return Err(Error::Invariance(format!("generator {} does not preserve L_ρ", g.name)));
        }
    }
    Ok(s)
}

/// `J = 2τg − t` on `L_ρ`, a dilation of the natural complex structure with
/// `J² = −m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilatedComplexStructure {
    /// Matrix on `L_ρ(Z)` basis coordinates.
    pub matrix: ZMatrix,
    /// The ambient formula `2τg − t`, valid on `L_ρ ⊗ Q`.
    pub ambient: ZMatrix,
    pub m: BigInt,
    pub t: i64,
}

impl DilatedComplexStructure {
    /// `J x` for `x ∈ L_ρ ⊗ Q` given in ambient coordinates.
    pub fn apply_q(&self, x: &[BigRational]) -> QVector {
        self.ambient.mul_qvec(x)
    }

    pub fn apply(&self, x: &[BigInt]) -> ZVector {
        self.ambient.mul_vec(x)
    }

    /// `J⁻¹ x = −J x / m`.
    pub fn apply_inverse_q(&self, x: &[BigRational]) -> QVector {
        let m = rat(&self.m);
        self.apply_q(x).into_iter().map(|y| -y / &m).collect()
    }
}

pub fn dilated_complex_structure(
    a: &LatticeAction,
    group: &GroupElements,
    f: &FundamentalData,
    rho: &Sublattice,
) -> Result<DilatedComplexStructure> {
    let t = trace_coefficient(f.order)
        .ok_or_else(|| Error::Unsupported(format!("no rational complex structure for order {}", f.order)))?;
    let n = a.rank();
    let ambient = &f.witness_matrix.scale(&int(2)) - &ZMatrix::scalar(n, &int(t));
    let matrix = rho.restrict_map(&ambient).ok_or_else(|| Error::Invariance("J does not preserve L_ρ".into()))?;
    let r = rho.rank();
    let m = int(4 - t * t);
    let j = DilatedComplexStructure { matrix, ambient, m, t };
    if &j.matrix * &j.matrix != ZMatrix::scalar(r, &-&j.m) {
        return Err(Error::Verification("J² ≠ −m".into()));
    }
    let g = rho.gram(a.ambient());
    let jt = j.matrix.transpose();
    if &(&jt * &g) + &(&g * &j.matrix) != ZMatrix::zeros(r, r) {
        return Err(Error::Verification("J is not anti-selfadjoint".into()));
    }
    for i in 0..group.order() {
        let h = rho.restrict_map(group.matrix(i)).ok_or_else(|| Error::Invariance(format!("element {i}")))?;
        let (hj, jh) = (&h * &j.matrix, &j.matrix * &h);
        let ok = if group.kappa(i) == 1 { hj == jh } else { hj == -&jh };
        if !ok {
            return Err(Error::Verification(format!("element {i} is not J-linear of the expected kind")));
        }
    }
    Ok(j)
}

/// Eigenlattices of the chosen anti-holomorphic generator `c` on `L_ρ(Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenData {
    pub c_index: usize,
    pub c: ZMatrix,
    pub rho: Sublattice,
    pub m_plus: Sublattice,
    pub m_minus: Sublattice,
    /// Exponent of `L_ρ(Z) / (M⁺ ⊕ M⁻)`.
    pub exponent: BigInt,
}

pub fn eigen_lattices(a: &LatticeAction, rho: &Sublattice) -> Result<EigenData> {
    let c_index = a.first_antiholomorphic().ok_or_else(|| Error::Precondition("every generator has κ = +1".into()))?;
    let c = a.generators()[c_index].isometry.matrix().clone();
    let m_plus = eigen_sublattice(rho, &c, 1)?;
    let m_minus = eigen_sublattice(rho, &c, -1)?;
    let mut rows: Vec<ZVector> = Vec::new();
    for b in m_plus.basis().iter().chain(m_minus.basis()) {
        rows.push(rho.coordinates(b).expect("eigenvectors lie in L_ρ"));
    }
    if rows.len() != rho.rank() {
        return Err(Error::Verification("M⁺ ⊕ M⁻ has smaller rank than L_ρ".into()));
    }
    let exponent = if rows.is_empty() {
        BigInt::one()
    } else {
        let d = smith(&ZMatrix::from_rows(&rows)?).elementary_divisors();
        d.into_iter().max().unwrap_or_else(BigInt::one)
    };
    Ok(EigenData { c_index, c, rho: rho.clone(), m_plus, m_minus, exponent })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricReport {
    /// `L• = (L^G + L_ρ(Z))^⊥`.
    pub ldot: Sublattice,
    /// Roots of `L•` up to sign.
    pub roots: Vec<ZVector>,
}

impl GeometricReport {
    pub fn is_geometric(&self) -> bool {
        self.roots.is_empty()
    }
}

pub fn is_geometric(a: &LatticeAction, group: &GroupElements, rho: &Sublattice) -> Result<GeometricReport> {
    let l = a.ambient();
    let mut gens = fixed_lattice(group, Subgroup::All).basis().to_vec();
    gens.extend(rho.basis().iter().cloned());
    let ldot = orthogonal_complement(l, &gens);
    let sig = ldot.signature(l);
    if sig.plus != 0 || sig.null != 0 {
        return Err(Error::Verification(format!("L• has signature {sig}, expected negative definite")));
    }
    let mut roots: Vec<ZVector> = roots_in(l, &ldot)?.iter().map(|r| sign_normalized(r)).collect();
    roots.sort();
    roots.dedup();
    Ok(GeometricReport { ldot, roots })
}

/// The extension `a ⊕ J⁻¹aJ` of an isometry of `M⁺` to `L_ρ ⊗ Q`, in
/// `L_ρ(Z)` coordinates, when it is integral.
pub fn extend_equivariantly(
    l: &Lattice,
    e: &EigenData,
    j: &DilatedComplexStructure,
    m_plus_map: &ZMatrix,
) -> Result<Option<ZMatrix>> {
    let p = e.m_plus.rank();
    if m_plus_map.rows() != p || m_plus_map.cols() != p {
        return Err(Error::Dimension(format!("map on M⁺ must be {p}x{p}")));
    }
    let gp = e.m_plus.gram(l);
    if m_plus_map.congruence(&gp) != gp {
        return Err(Error::Precondition("map is not an isometry of M⁺".into()));
    }
    let a = m_plus_map.to_q();
    let mut src: Vec<QVector> = Vec::new();
    let mut img: Vec<QVector> = Vec::new();
    for (i, b) in e.m_plus.basis().iter().enumerate() {
        src.push(crate::matrix::to_qvec(b));
        img.push(e.m_plus.embed_q(&a.column(i)));
    }
    for b in e.m_minus.basis() {
        let bq = crate::matrix::to_qvec(b);
        let y = j.apply_q(&bq);
        let yc = e
            .m_plus
            .rational_coordinates(&y)
            .ok_or_else(|| Error::Verification("J does not map M⁻ into M⁺ ⊗ Q".into()))?;
        let z = e.m_plus.embed_q(&a.mul_vec(&yc));
        src.push(bq);
        img.push(j.apply_inverse_q(&z));
    }
    let to_rho = |v: &QVector| e.rho.rational_coordinates(v).expect("vector of L_ρ ⊗ Q");
    let r = e.rho.rank();
    let s = QMatrix::from_columns(r, &src.iter().map(to_rho).collect::<Vec<_>>());
    let t = QMatrix::from_columns(r, &img.iter().map(to_rho).collect::<Vec<_>>());
    let inv = s.inverse().ok_or_else(|| Error::Verification("M⁺ ⊕ M⁻ does not span L_ρ ⊗ Q".into()))?;
    Ok(t.mul(&inv).to_integer())
}

/// Everything the group-action layer derives from an action.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub group: GroupElements,
    pub fundamental: FundamentalData,
    pub invariant: Sublattice,
    pub rho: Sublattice,
    pub complex_structure: Option<DilatedComplexStructure>,
    pub eigen: Option<EigenData>,
    pub geometric: GeometricReport,
}

pub fn analyze(a: &LatticeAction, bound: usize) -> Result<Analysis> {
    let group = enumerate_group(a, bound)?;
    let fundamental = fundamental_data(a, &group)?;
    let invariant = fixed_lattice(&group, Subgroup::All);
    let rho = rho_lattice(a, &group, &fundamental)?;
    let complex_structure =
        if fundamental.real { None } else { Some(dilated_complex_structure(a, &group, &fundamental, &rho)?) };
    let eigen = if a.is_holomorphic() { None } else { Some(eigen_lattices(a, &rho)?) };
    let geometric = is_geometric(a, &group, &rho)?;
    Ok(Analysis { group, fundamental, invariant, rho, complex_structure, eigen, geometric })
}
