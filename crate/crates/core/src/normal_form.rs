//! Hermite and Smith normal forms, integer kernels and saturation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::matrix::{rat, QMatrix, ZMatrix, ZVector};

fn swap_rows(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    m.swap(a, b);
}

/// Replaces rows `(a, b)` by `(p*a + q*b, r*a + s*b)`.
fn combine_rows(m: &mut [Vec<BigInt>], a: usize, b: usize, p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) {
    let n = m[a].len();
    for j in 0..n {
        let x = m[a][j].clone();
        let y = m[b][j].clone();
        m[a][j] = p * &x + q * &y;
        m[b][j] = r * &x + s * &y;
    }
}

fn axpy_row(m: &mut [Vec<BigInt>], dst: usize, src: usize, k: &BigInt) {
    if k.is_zero() {
        return;
    }
    let n = m[dst].len();
    for j in 0..n {
        let v = &m[src][j] * k;
        m[dst][j] -= v;
    }
}

/// Row Hermite normal form: returns `(h, u)` with `u * m = h`, `u` unimodular,
/// `h` in row echelon form with positive pivots and entries above each pivot
/// reduced into `[0, pivot)`. Zero rows come last.
pub fn hnf_with_transform(m: &ZMatrix) -> (ZMatrix, ZMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h: Vec<Vec<BigInt>> = m.to_rows();
    let mut u: Vec<Vec<BigInt>> = ZMatrix::identity(rows).to_rows();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if h[i][c].is_zero() {
                continue;
            }
            if h[r][c].is_zero() {
                swap_rows(&mut h, r, i);
                swap_rows(&mut u, r, i);
                continue;
            }
            let a = h[r][c].clone();
            let b = h[i][c].clone();
            let e = a.extended_gcd(&b);
            let (g, x, y) = (e.gcd, e.x, e.y);
            let p = &a / &g;
            let q = &b / &g;
            // [x y; -q p] has determinant x*p + y*q = 1.
            let mq = -q;
            combine_rows(&mut h, r, i, &x, &y, &mq, &p);
            combine_rows(&mut u, r, i, &x, &y, &mq, &p);
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            for x in h[r].iter_mut() {
                *x = -&*x;
            }
            for x in u[r].iter_mut() {
                *x = -&*x;
            }
        }
        let piv = h[r][c].clone();
        for i in 0..r {
            let k = h[i][c].div_floor(&piv);
            axpy_row(&mut h, i, r, &k);
            axpy_row(&mut u, i, r, &k);
        }
        r += 1;
    }
    let flat = |v: Vec<Vec<BigInt>>, c: usize| ZMatrix::from_vec(v.len(), c, v.into_iter().flatten().collect());
    (flat(h, cols), flat(u, rows))
}

/// Nonzero rows of the Hermite normal form: a canonical basis of the row lattice.
pub fn hnf_basis(rows: &[ZVector], n: usize) -> Vec<ZVector> {
    if rows.is_empty() {
        return Vec::new();
    }
    let m = ZMatrix::from_rows(rows).expect("consistent row lengths");
    debug_assert_eq!(m.cols(), n);
    let (h, _) = hnf_with_transform(&m);
    h.to_rows().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

/// Basis of `{x in Z^cols : m x = 0}` in Hermite normal form.
pub fn integer_kernel(m: &ZMatrix) -> Vec<ZVector> {
    let n = m.cols();
    if m.rows() == 0 {
        return ZMatrix::identity(n).to_rows();
    }
    let (h, u) = hnf_with_transform(&m.transpose());
    let rows: Vec<ZVector> = (0..n).filter(|&i| h.row_slice(i).iter().all(Zero::is_zero)).map(|i| u.row(i)).collect();
    hnf_basis(&rows, n)
}

/// Smith normal form `u * m * v = d` with `u`, `v` unimodular and the
/// diagonal of `d` nonnegative, each entry dividing the next.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: ZMatrix,
    pub v: ZMatrix,
    pub d: ZMatrix,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Nonzero diagonal entries.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }
}

pub fn smith(m: &ZMatrix) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = m.to_rows();
    let mut u: Vec<Vec<BigInt>> = ZMatrix::identity(rows).to_rows();
    // Column operations are tracked on v^T as row operations.
    let mut vt: Vec<Vec<BigInt>> = ZMatrix::identity(cols).to_rows();

    let transpose = |x: &Vec<Vec<BigInt>>, r: usize, c: usize| -> Vec<Vec<BigInt>> {
        (0..c).map(|j| (0..r).map(|i| x[i][j].clone()).collect()).collect()
    };

    let k_max = rows.min(cols);
    let mut t = 0;
    while t < k_max {
        // Pivot: smallest nonzero absolute value in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            vt.swap(t, pj);
        }
        loop {
            let mut done = true;
            // Clear column t below the pivot.
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                axpy_row(&mut a, i, t, &q);
                axpy_row(&mut u, i, t, &q);
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    u.swap(t, i);
                    done = false;
                }
            }
            // Clear row t to the right of the pivot.
            let mut at = transpose(&a, rows, cols);
            for j in t + 1..cols {
                if at[j][t].is_zero() {
                    continue;
                }
                let q = at[j][t].div_floor(&at[t][t]);
                axpy_row(&mut at, j, t, &q);
                axpy_row(&mut vt, j, t, &q);
                if !at[j][t].is_zero() {
                    at.swap(t, j);
                    vt.swap(t, j);
                    done = false;
                }
            }
            a = transpose(&at, cols, rows);
            if !done {
                continue;
            }
            // Divisibility: pivot must divide the trailing block.
            let piv = a[t][t].clone();
            let bad = (t + 1..rows).find_map(|i| (t + 1..cols).find(|&j| !(&a[i][j] % &piv).is_zero()).map(|j| (i, j)));
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    axpy_row(&mut a, t, i, &-one.clone());
                    axpy_row(&mut u, t, i, &-one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        t += 1;
    }
    let v: Vec<Vec<BigInt>> = transpose(&vt, cols, cols);
    let flat = |x: Vec<Vec<BigInt>>, r: usize, c: usize| ZMatrix::from_vec(r, c, x.into_iter().flatten().collect());
    Smith { u: flat(u, rows, rows), v: flat(v, cols, cols), d: flat(a, rows, cols) }
}

/// Product of the elementary divisors of the row span: the index of the span
/// in its saturation (1 for an empty or primitive system).
pub fn saturation_index(rows: &[ZVector]) -> BigInt {
    if rows.is_empty() {
        return BigInt::one();
    }
    let m = ZMatrix::from_rows(rows).expect("consistent row lengths");
    smith(&m).elementary_divisors().iter().product()
}

/// Basis of `span_Q(rows) ∩ Z^n`, in Hermite normal form.
pub fn saturate(rows: &[ZVector], n: usize) -> Vec<ZVector> {
    let rows: Vec<ZVector> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    if rows.is_empty() {
        return Vec::new();
    }
    let m = ZMatrix::from_rows(&rows).expect("consistent row lengths");
    let perp = integer_kernel(&m);
    if perp.is_empty() {
        return ZMatrix::identity(n).to_rows();
    }
    integer_kernel(&ZMatrix::from_rows(&perp).expect("kernel rows"))
}

/// Diagonal of a rational congruence diagonalization `p^T a p` of a symmetric
/// matrix. Zero pivots with a nonzero off-diagonal entry are repaired by
/// `e_i += e_j`, which turns the pair into an anisotropic vector.
pub fn congruence_diagonal(a: &ZMatrix) -> Vec<BigRational> {
    let n = a.rows();
    let mut m: Vec<Vec<BigRational>> = (0..n).map(|i| (0..n).map(|j| rat(a.get(i, j))).collect()).collect();
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        if m[i][i].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !m[j][j].is_zero()) {
                m.swap(i, j);
                for row in m.iter_mut() {
                    row.swap(i, j);
                }
            } else if let Some(j) = (i + 1..n).find(|&j| !m[i][j].is_zero()) {
                for k in 0..n {
                    let v = m[j][k].clone();
                    m[i][k] += v;
                }
                for k in 0..n {
                    let v = m[k][j].clone();
                    m[k][i] += v;
                }
            }
        }
        let p = m[i][i].clone();
        if !p.is_zero() {
            for r in i + 1..n {
                if m[r][i].is_zero() {
                    continue;
                }
                let f = &m[r][i] / &p;
                for k in i..n {
                    let v = &f * &m[i][k];
                    m[r][k] -= v;
                }
                for k in i..n {
                    let v = &f * &m[k][i];
                    m[k][r] -= v;
                }
            }
        }
        diag.push(p);
    }
    diag
}

/// Inverse of a nonsingular integer matrix over the rationals.
pub fn rational_inverse(m: &ZMatrix) -> Option<QMatrix> {
    m.to_q().inverse()
}
