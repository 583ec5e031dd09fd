//! Dense integer and rational matrices.
//!
//! Everything here is exact. Integer matrices use [`BigInt`] entries,
//! rational ones [`BigRational`]. Matrices act on column vectors.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type ZVector = Vec<BigInt>;
pub type QVector = Vec<BigRational>;

pub fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

pub fn zvec(xs: &[i64]) -> ZVector {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn to_qvec(v: &[BigInt]) -> QVector {
    v.iter().map(rat).collect()
}

/// Returns the vector if every entry is integral.
pub fn to_zvec(v: &[BigRational]) -> Option<ZVector> {
    v.iter().map(|x| if x.is_integer() { Some(x.to_integer()) } else { None }).collect()
}

/// Least common multiple of the denominators.
pub fn common_denominator(v: &[BigRational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales a rational vector to the primitive integer vector on the same ray.
pub fn primitive_on_ray(v: &[BigRational]) -> ZVector {
    let d = rat(&common_denominator(v));
    let scaled: ZVector = v.iter().map(|x| (x * &d).to_integer()).collect();
    make_primitive(&scaled)
}

pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

pub fn make_primitive(v: &[BigInt]) -> ZVector {
    let g = content(v);
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn neg_vec(v: &[BigInt]) -> ZVector {
    v.iter().map(|x| -x).collect()
}

pub fn add_vec(a: &[BigInt], b: &[BigInt]) -> ZVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[BigInt], b: &[BigInt]) -> ZVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(a: &[BigInt], k: &BigInt) -> ZVector {
    a.iter().map(|x| x * k).collect()
}

/// First nonzero coordinate positive.
pub fn sign_normalized(v: &[BigInt]) -> ZVector {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => neg_vec(v),
        _ => v.to_vec(),
    }
}

pub fn is_sign_normalized(v: &[BigInt]) -> bool {
    v.iter().find(|x| !x.is_zero()).is_none_or(|x| x.is_positive())
}

pub fn fmt_vec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

pub fn fmt_qvec(v: &[BigRational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ZMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl ZMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ZMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn scalar(n: usize, k: &BigInt) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = k.clone();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        ZMatrix { rows, cols, data }
    }

    /// Builds a matrix from `i64` rows. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        ZMatrix { rows: r, cols: c, data }
    }

    pub fn from_rows(rows: &[ZVector]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Dimension("ragged matrix rows".into()));
            }
            data.extend(row.iter().cloned());
        }
        Ok(ZMatrix { rows: r, cols: c, data })
    }

    /// Matrix whose columns are the given vectors; `n` is the column length
    /// used when the list is empty.
    pub fn from_columns(n: usize, cols: &[ZVector]) -> Self {
        let mut m = Self::zeros(n, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), n, "column length");
            for (i, x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> ZVector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn row_slice(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> ZVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<ZVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<ZVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> ZVector {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (a, b) in self.row_slice(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul_qvec(&self, v: &[BigRational]) -> QVector {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigRational::zero();
                for (a, b) in self.row_slice(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += rat(a) * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        ZMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::identity(self.rows);
        for _ in 0..e {
            result = &result * self;
        }
        result
    }

    /// `self^T * g * self`.
    pub fn congruence(&self, g: &ZMatrix) -> ZMatrix {
        &(&self.transpose() * g) * self
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    pub fn block_diag(blocks: &[&ZMatrix]) -> ZMatrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = ZMatrix::zeros(n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Rows `rs`, columns `cs`.
    pub fn submatrix(&self, rs: &[usize], cs: &[usize]) -> ZMatrix {
        let mut out = ZMatrix::zeros(rs.len(), cs.len());
        for (a, &i) in rs.iter().enumerate() {
            for (b, &j) in cs.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[ZMatrix], cols: usize) -> ZMatrix {
        let rows: usize = parts.iter().map(|p| p.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column mismatch");
            data.extend(p.data.iter().cloned());
        }
        ZMatrix { rows, cols, data }
    }

    pub fn to_q(&self) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(rat).collect() }
    }

    /// Exact inverse over the integers, if the determinant is a unit.
    pub fn inverse_unimodular(&self) -> Option<ZMatrix> {
        self.to_q().inverse()?.to_integer()
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}

impl Mul for &ZMatrix {
    type Output = ZMatrix;

    fn mul(self, rhs: &ZMatrix) -> ZMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shapes");
        let mut out = ZMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &ZMatrix {
    type Output = ZMatrix;

    fn add(self, rhs: &ZMatrix) -> ZMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shapes");
        ZMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ZMatrix {
    type Output = ZMatrix;

    fn sub(self, rhs: &ZMatrix) -> ZMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shapes");
        ZMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &ZMatrix {
    type Output = ZMatrix;

    fn neg(self) -> ZMatrix {
        ZMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl fmt::Display for ZMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows).map(|i| fmt_vec(self.row_slice(i))).collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn from_columns(n: usize, cols: &[QVector]) -> Self {
        let mut m = Self::zeros(n, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn from_rows(rows: &[QVector], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rational rows");
            data.extend(r.iter().cloned());
        }
        QMatrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigRational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> QVector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> QVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "rational product shapes");
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> QVector {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigRational::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..a.cols {
                    a.data.swap(p * a.cols + j, r * a.cols + j);
                }
            }
            let inv = a.get(r, c).recip();
            for j in 0..a.cols {
                let v = a.get(r, j) * &inv;
                a.set(r, j, v);
            }
            for i in 0..a.rows {
                if i == r || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in 0..a.cols {
                    let v = a.get(i, j) - &f * a.get(r, j);
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<QVector> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    /// Solves `self * x = b`; returns one solution if any exists.
    pub fn solve(&self, b: &[BigRational]) -> Option<QVector> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut aug = QMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, BigRational::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn to_integer(&self) -> Option<ZMatrix> {
        let data: Option<Vec<BigInt>> =
            self.data.iter().map(|x| if x.is_integer() { Some(x.to_integer()) } else { None }).collect();
        Some(ZMatrix { rows: self.rows, cols: self.cols, data: data? })
    }
}

/// `x^T g y` for integer vectors.
pub fn bilinear(g: &ZMatrix, x: &[BigInt], y: &[BigInt]) -> BigInt {
    let gy = g.mul_vec(y);
    x.iter().zip(&gy).map(|(a, b)| a * b).sum()
}

/// `x^T g y` for rational vectors.
pub fn bilinear_q(g: &ZMatrix, x: &[BigRational], y: &[BigRational]) -> BigRational {
    let gy = g.mul_qvec(y);
    x.iter().zip(&gy).fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = ZMatrix::from_i64(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(m.determinant(), int(4));
        let s = ZMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(s.determinant(), int(-1));
        let z = ZMatrix::from_i64(&[&[0, 0, 1], &[0, 0, 2], &[1, 1, 1]]);
        assert_eq!(z.determinant(), int(0));
    }

    #[test]
    fn rational_inverse_round_trips() {
        let m = ZMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse_unimodular().unwrap();
        assert!((&m * &inv).is_identity());
        let m2 = ZMatrix::from_i64(&[&[2, 0], &[0, 1]]);
        assert!(m2.inverse_unimodular().is_none());
    }

    #[test]
    fn kernel_and_solve() {
        let m = ZMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]).to_q();
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        let a = ZMatrix::from_i64(&[&[1, 0], &[0, 2], &[1, 1]]).to_q();
        let x = a.solve(&to_qvec(&zvec(&[1, 4, 3]))).unwrap();
        assert_eq!(x, to_qvec(&zvec(&[1, 2])));
        assert!(a.solve(&to_qvec(&zvec(&[1, 4, 4]))).is_none());
    }
}
