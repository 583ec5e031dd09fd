//! Binary quadratic forms: reduction of definite forms and exact
//! representation counts for forms that split over the rationals.
//!
//! A Gram matrix `[[a, h], [h, c]]` encodes `Q(x, y) = a x² + 2h xy + c y²`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Lattice, Sublattice};
use crate::matrix::{ZMatrix, ZVector};

fn two() -> BigInt {
    BigInt::from(2)
}

fn gram2(a: BigInt, h: BigInt, c: BigInt) -> ZMatrix {
    ZMatrix::from_vec(2, 2, vec![a, h.clone(), h, c])
}

/// Reduced form of a positive definite binary form: `|2h| ≤ a ≤ c`, `h ≥ 0`.
fn reduce_positive(mut a: BigInt, mut h: BigInt, mut c: BigInt) -> (BigInt, BigInt, BigInt) {
    loop {
        // Shift x ↦ x − k y so that |2h| ≤ a.
        let two_a = &a * two();
        let k = (&h * two() + &a).div_floor(&two_a);
        if !k.is_zero() {
            c = &c - &k * &h * two() + &k * &k * &a;
            h -= &k * &a;
        }
        if c < a {
            std::mem::swap(&mut a, &mut c);
            h = -h;
            continue;
        }
        break;
    }
    (a, h.abs(), c)
}

/// Canonical Gram matrix of a lattice of rank at most two whose form is
/// definite or identically zero. Two such lattices are isomorphic iff their
/// canonical forms agree. The off-diagonal entry is always nonnegative.
pub fn rank2_isomorphism_class(l: &Lattice) -> Result<ZMatrix> {
    let g = l.gram();
    match l.rank() {
        0 => Ok(ZMatrix::zeros(0, 0)),
        1 => Ok(g.clone()),
        2 => {
            if g.is_zero() {
                return Ok(g.clone());
            }
            let (a, h, c) = (g.get(0, 0).clone(), g.get(0, 1).clone(), g.get(1, 1).clone());
            let det = &a * &c - &h * &h;
            if !det.is_positive() {
                return Err(Error::NotDefinite("rank-2 form is indefinite or degenerate".into()));
            }
            if a.is_positive() {
                let (a, h, c) = reduce_positive(a, h, c);
                Ok(gram2(a, h, c))
            } else {
                let (a, h, c) = reduce_positive(-a, -h, -c);
                Ok(gram2(-a, h, -c))
            }
        }
        r => Err(Error::Dimension(format!("rank {r} exceeds 2"))),
    }
}

/// Canonical Gram matrix `[[0, h], [h, c]]`, `h > 0`, `0 ≤ c < 2h`, of a
/// nondegenerate isotropic binary form: the least such matrix over the two
/// isotropic lines.
pub fn isotropic_class(g: &ZMatrix) -> Option<ZMatrix> {
    isotropic_discriminant(g)?;
    let mut best: Option<(BigInt, BigInt)> = None;
    for (p, q) in isotropic_lines(g) {
        let e = p.extended_gcd(&q);
        let (p, q, s, r) = if e.gcd.is_negative() { (-p, -q, -e.x, e.y) } else { (p, q, e.x, -e.y) };
        let b = ZMatrix::from_vec(2, 2, vec![p, r, q, s]);
        let h2 = b.congruence(g);
        let h = h2.get(0, 1).abs();
        let c = h2.get(1, 1).mod_floor(&(&h * two()));
        let cand = (h, c);
        if best.as_ref().is_none_or(|b| &cand < b) {
            best = Some(cand);
        }
    }
    let (h, c) = best?;
    Some(gram2(BigInt::zero(), h, c))
}

/// Primitive vectors on the two isotropic lines of a split form.
fn isotropic_lines(g: &ZMatrix) -> Vec<(BigInt, BigInt)> {
    let (a, h, c) = (g.get(0, 0).clone(), g.get(0, 1).clone(), g.get(1, 1).clone());
    let d = isotropic_discriminant(g).expect("split form");
    let prim = |x: BigInt, y: BigInt| {
        let k = x.gcd(&y);
        (x / &k, y / &k)
    };
    if a.is_zero() {
        vec![(BigInt::one(), BigInt::zero()), prim(c, -(&h * two()))]
    } else {
        vec![prim(-(&h - &d), a.clone()), prim(-(&h + &d), a)]
    }
}

/// Canonical form of a rank-2 lattice that is definite or isotropic.
pub fn rank2_class(l: &Lattice) -> Result<ZMatrix> {
    if l.rank() == 2 {
        if let Some(c) = isotropic_class(l.gram()) {
            return Ok(c);
        }
    }
    rank2_isomorphism_class(l)
}

/// `sqrt(h² − ac)` when it is a positive integer.
pub fn isotropic_discriminant(g: &ZMatrix) -> Option<BigInt> {
    if g.rows() != 2 || g.cols() != 2 {
        return None;
    }
    let (a, h, c) = (g.get(0, 0), g.get(0, 1), g.get(1, 1));
    let disc = h * h - a * c;
    if !disc.is_positive() {
        return None;
    }
    let d = disc.sqrt();
    (&d * &d == disc).then_some(d)
}

/// Positive divisors of a nonzero integer.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = BigInt::one();
    while &k * &k <= n {
        if (&n % &k).is_zero() {
            let q = &n / &k;
            if q != k {
                large.push(q);
            }
            small.push(k.clone());
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// All integer `(x, y)` with `Q(x, y) = m`, for a form with `h² − ac` a
/// nonzero square and `m ≠ 0`. The solution set is finite and the
/// enumeration is exhaustive.
pub fn represent_split(g: &ZMatrix, m: &BigInt) -> Result<Vec<(BigInt, BigInt)>> {
    let d = isotropic_discriminant(g).ok_or_else(|| Error::Precondition("binary form does not split over Q".into()))?;
    if m.is_zero() {
        return Err(Error::Precondition("zero has infinitely many representations".into()));
    }
    let (a, h, c) = (g.get(0, 0).clone(), g.get(0, 1).clone(), g.get(1, 1).clone());
    let mut out = Vec::new();
    if a.is_zero() {
        // Q = y (2h x + c y).
        for y0 in divisors(m) {
            for y in [y0.clone(), -y0] {
                let rest = m / &y - &c * &y;
                let two_h = &h * two();
                if (&rest % &two_h).is_zero() {
                    out.push((rest / two_h, y));
                }
            }
        }
    } else {
        // a Q = (a x + (h − d) y)(a x + (h + d) y).
        let am = &a * m;
        let two_d = &d * two();
        for p0 in divisors(&am) {
            for p1 in [p0.clone(), -p0] {
                let p2 = &am / &p1;
                let dy = &p2 - &p1;
                if !(&dy % &two_d).is_zero() {
                    continue;
                }
                let y = dy / &two_d;
                let ax = &p1 - (&h - &d) * &y;
                if (&ax % &a).is_zero() {
                    out.push((ax / &a, y));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    debug_assert!(out.iter().all(|(x, y)| &(&a * x * x + &h * x * y * two() + &c * y * y) == m));
    Ok(out)
}

/// Vectors of square `m ≠ 0` in a rank-2 sublattice whose form splits over Q.
pub fn split_sublattice_vectors(l: &Lattice, s: &Sublattice, m: &BigInt) -> Result<Vec<ZVector>> {
    if s.rank() != 2 {
        return Err(Error::Dimension(format!("expected rank 2, got {}", s.rank())));
    }
    let g = s.gram(l);
    let sols = represent_split(&g, m)?;
    let mut out: Vec<ZVector> = sols.into_iter().map(|(x, y)| s.embed(&[x, y])).collect();
    out.sort();
    Ok(out)
}
