//! Dense complex matrices and vectors at the small sizes spinor work needs
//! (2, 4 and 2^N), with Kronecker products, null spaces and determinants.
//!
//! Storage is row-major. Every constructor rejects NaN/Inf entries, so any
//! value of these types is finite.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type ComplexScalar = Complex64;

/// Rank threshold used when the caller has no better idea.
pub const DEFAULT_TOL: f64 = 1e-10;

pub const ZERO: ComplexScalar = Complex64::new(0.0, 0.0);
pub const ONE: ComplexScalar = Complex64::new(1.0, 0.0);
pub const I: ComplexScalar = Complex64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> ComplexScalar {
    Complex64::new(re, im)
}

#[inline]
pub fn r(re: f64) -> ComplexScalar {
    Complex64::new(re, 0.0)
}

fn all_finite(entries: &[ComplexScalar]) -> bool {
    entries.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ComplexScalar>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<ComplexScalar>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EntryCount {
                expected: 1,
                got: 0,
            });
        }
        if data.len() != rows * cols {
            return Err(Error::EntryCount {
                expected: rows * cols,
                got: data.len(),
            });
        }
        if !all_finite(&data) {
            return Err(Error::NonFinite("matrix"));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds from literal rows. Panics on ragged input; meant for constants.
    pub fn from_rows<R: AsRef<[ComplexScalar]>>(rows: &[R]) -> Self {
        let n = rows.len();
        let m = rows[0].as_ref().len();
        let mut data = Vec::with_capacity(n * m);
        for row in rows {
            assert_eq!(row.as_ref().len(), m, "ragged matrix literal");
            data.extend_from_slice(row.as_ref());
        }
        Self::new(n, m, data).expect("matrix literal must be finite")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    pub fn diag(values: &[ComplexScalar]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m.data[i * n + i] = *v;
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[ComplexVector]) -> Result<Self> {
        let ncols = cols.len();
        let nrows = cols.first().map(|v| v.dim()).unwrap_or(0);
        let mut m = Self::zeros(nrows.max(1), ncols.max(1));
        for (j, v) in cols.iter().enumerate() {
            if v.dim() != nrows {
                return Err(Error::DimensionMismatch {
                    left: (nrows, 1),
                    right: (v.dim(), 1),
                });
            }
            for i in 0..nrows {
                m.data[i * ncols + j] = v[i];
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[ComplexScalar] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> ComplexScalar {
        self.data[i * self.cols + j]
    }

    /// Returns a copy with one entry replaced.
    pub fn with_entry(&self, i: usize, j: usize, value: ComplexScalar) -> Result<Self> {
        if i >= self.rows || j >= self.cols {
            return Err(Error::IndexOutOfRange {
                index: i.max(j),
                max: self.rows.max(self.cols) - 1,
            });
        }
        let mut data = self.data.clone();
        data[i * self.cols + j] = value;
        Self::new(self.rows, self.cols, data)
    }

    pub fn map(&self, f: impl Fn(ComplexScalar) -> ComplexScalar) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| f(*z)).collect(),
        }
    }

    pub fn scale(&self, s: ComplexScalar) -> Self {
        self.map(|z| z * s)
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn trace(&self) -> ComplexScalar {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dims(), other.dims(), "max_abs_diff dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn try_matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                left: self.dims(),
                right: other.dims(),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn matmul(&self, other: &Self) -> Self {
        self.try_matmul(other).expect("matmul dimension mismatch")
    }

    pub fn try_apply(&self, v: &ComplexVector) -> Result<ComplexVector> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dims(),
                right: (v.dim(), 1),
            });
        }
        let data = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect();
        Ok(ComplexVector { data })
    }

    pub fn apply(&self, v: &ComplexVector) -> ComplexVector {
        self.try_apply(v).expect("apply dimension mismatch")
    }

    fn try_zip(&self, other: &Self, f: impl Fn(ComplexScalar, ComplexScalar) -> ComplexScalar) -> Result<Self> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch {
                left: self.dims(),
                right: other.dims(),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.try_zip(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_zip(other, |a, b| a - b)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.get(i, j);
                write!(f, "{:>9.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = ComplexScalar;
    fn index(&self, (i, j): (usize, usize)) -> &ComplexScalar {
        &self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Mul<&ComplexVector> for &ComplexMatrix {
    type Output = ComplexVector;
    fn mul(self, rhs: &ComplexVector) -> ComplexVector {
        self.apply(rhs)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_add(rhs).expect("add dimension mismatch")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_sub(rhs).expect("sub dimension mismatch")
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.map(|z| -z)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 2]>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self.data.iter().map(|z| [z.re, z.im]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(d)?;
        let data = raw.entries.iter().map(|[re, im]| c(*re, *im)).collect();
        ComplexMatrix::new(raw.rows, raw.cols, data).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, PartialEq)]
pub struct ComplexVector {
    data: Vec<ComplexScalar>,
}

impl ComplexVector {
    pub fn new(data: Vec<ComplexScalar>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::EntryCount {
                expected: 1,
                got: 0,
            });
        }
        if !all_finite(&data) {
            return Err(Error::NonFinite("vector"));
        }
        Ok(Self { data })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            data: vec![ZERO; dim],
        }
    }

    /// Standard basis vector e_k (zero-based).
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.data[k] = ONE;
        v
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn entries(&self) -> &[ComplexScalar] {
        &self.data
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Hermitian inner product <self, other> (conjugate-linear in self).
    pub fn inner(&self, other: &Self) -> ComplexScalar {
        assert_eq!(self.dim(), other.dim(), "inner product dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scale(&self, s: ComplexScalar) -> Self {
        Self {
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        assert!(n > 0.0, "cannot normalize the zero vector");
        self.scale(r(1.0 / n))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "sub dimension mismatch");
        Self {
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "add dimension mismatch");
        Self {
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other).data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self { data }
    }

    pub fn kron(&self, other: &Self) -> Self {
        let mut data = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.data {
            for b in &other.data {
                data.push(a * b);
            }
        }
        Self { data }
    }

    /// Rescales by a unit phase so the first component with modulus above
    /// `1e-12 * norm` is real and positive.
    pub fn with_canonical_phase(&self) -> Self {
        let n = self.norm();
        match self.data.iter().find(|z| z.norm() > 1e-12 * n) {
            Some(z) => self.scale(z.conj() / z.norm()),
            None => self.clone(),
        }
    }
}

impl fmt::Debug for ComplexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexVector[")?;
        for z in &self.data {
            write!(f, " {:.6}{:+.6}i", z.re, z.im)?;
        }
        write!(f, " ]")
    }
}

impl Index<usize> for ComplexVector {
    type Output = ComplexScalar;
    fn index(&self, i: usize) -> &ComplexScalar {
        &self.data[i]
    }
}

#[derive(Serialize, Deserialize)]
struct VectorJson {
    dim: usize,
    entries: Vec<[f64; 2]>,
}

impl Serialize for ComplexVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        VectorJson {
            dim: self.dim(),
            entries: self.data.iter().map(|z| [z.re, z.im]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = VectorJson::deserialize(d)?;
        if raw.entries.len() != raw.dim {
            return Err(serde::de::Error::custom("dim does not match entry count"));
        }
        ComplexVector::new(raw.entries.iter().map(|[re, im]| c(*re, *im)).collect())
            .map_err(serde::de::Error::custom)
    }
}

/// Kronecker product: entry `[(i*rb + k), (j*cb + l)] = a[i,j] * b[k,l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ra, ca) = a.dims();
    let (rb, cb) = b.dims();
    let cols = ca * cb;
    let mut out = ComplexMatrix::zeros(ra * rb, cols);
    for i in 0..ra {
        for j in 0..ca {
            let aij = a.get(i, j);
            for k in 0..rb {
                for l in 0..cb {
                    out.data[(i * rb + k) * cols + (j * cb + l)] = aij * b.get(k, l);
                }
            }
        }
    }
    out
}

/// Kronecker product of a non-empty sequence, folded left to right.
pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a ComplexMatrix>) -> Option<ComplexMatrix> {
    let mut it = factors.into_iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, m| kron(&acc, m)))
}

fn require_square(a: &ComplexMatrix) -> Result<usize> {
    if a.is_square() {
        Ok(a.rows)
    } else {
        Err(Error::NonSquare {
            rows: a.rows,
            cols: a.cols,
        })
    }
}

fn require_same_square(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    require_square(a)?;
    require_square(b)?;
    if a.dims() != b.dims() {
        return Err(Error::DimensionMismatch {
            left: a.dims(),
            right: b.dims(),
        });
    }
    Ok(())
}

pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    require_same_square(a, b)?;
    Ok(&(a * b) + &(b * a))
}

pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    require_same_square(a, b)?;
    Ok(&(a * b) - &(b * a))
}

/// Determinant by LU decomposition with partial pivoting.
pub fn det(a: &ComplexMatrix) -> Result<ComplexScalar> {
    let n = require_square(a)?;
    let mut m = a.data.clone();
    let mut sign = ONE;
    let mut acc = ONE;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| m[x * n + col].norm().total_cmp(&m[y * n + col].norm()))
            .expect("non-empty pivot range");
        let p = m[pivot * n + col];
        if p == ZERO {
            return Ok(ZERO);
        }
        if pivot != col {
            for j in 0..n {
                m.swap(pivot * n + j, col * n + j);
            }
            sign = -sign;
        }
        acc *= p;
        for row in col + 1..n {
            let factor = m[row * n + col] / p;
            if factor == ZERO {
                continue;
            }
            for j in col..n {
                let v = m[col * n + j];
                m[row * n + j] -= factor * v;
            }
        }
    }
    Ok(sign * acc)
}

/// Orthonormal basis of the numerical kernel of a square matrix.
///
/// A right singular vector is kept when its singular value is at most
/// `tol * sigma_max`. A zero matrix has the whole space as its kernel.
/// Returned vectors carry the canonical phase of
/// [`ComplexVector::with_canonical_phase`].
pub fn nullspace(a: &ComplexMatrix, tol: f64) -> Result<Vec<ComplexVector>> {
    let n = require_square(a)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidTolerance(tol));
    }
    let m = nalgebra::DMatrix::from_row_slice(n, n, &a.data);
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("requested V^H");
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let threshold = tol * sigma_max;
    let mut basis = Vec::new();
    for (k, s) in svd.singular_values.iter().enumerate() {
        if *s <= threshold {
            // Row k of V^H conjugated is the k-th right singular vector.
            let data = (0..n).map(|j| v_t[(k, j)].conj()).collect();
            basis.push(ComplexVector { data }.with_canonical_phase());
        }
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma1() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[[ZERO, ONE], [ONE, ZERO]])
    }
    fn sigma2() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[[ZERO, -I], [I, ZERO]])
    }
    fn sigma3() -> ComplexMatrix {
        ComplexMatrix::diag(&[ONE, -ONE])
    }

    #[test]
    fn kron_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_diagonal() {
        assert_eq!(
            kron(&sigma3(), &sigma3()),
            ComplexMatrix::diag(&[ONE, -ONE, -ONE, ONE])
        );
    }

    #[test]
    fn kron_dims_rectangular() {
        let a = ComplexMatrix::new(1, 2, vec![ONE, r(2.0)]).unwrap();
        let b = ComplexMatrix::new(3, 1, vec![ONE, I, r(-1.0)]).unwrap();
        let k = kron(&a, &b);
        assert_eq!(k.dims(), (3, 2));
        assert_eq!(k.get(1, 1), r(2.0) * I);
    }

    #[test]
    fn rejects_non_finite() {
        assert!(ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]).is_err());
        assert!(ComplexVector::new(vec![c(0.0, f64::INFINITY)]).is_err());
        assert!(ComplexMatrix::new(2, 2, vec![ONE; 3]).is_err());
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace(&ComplexMatrix::zeros(2, 2), 1e-10).unwrap().len(), 2);
        assert!(nullspace(&ComplexMatrix::identity(4), 1e-10).unwrap().is_empty());
        let d = ComplexMatrix::diag(&[ZERO, ONE, ONE, ONE]);
        let ns = nullspace(&d, 1e-10).unwrap();
        assert_eq!(ns.len(), 1);
        assert!(ns[0].max_abs_diff(&ComplexVector::basis(4, 0)) < 1e-14);
    }

    #[test]
    fn nullspace_errors() {
        let a = ComplexMatrix::zeros(2, 3);
        assert!(matches!(nullspace(&a, 1e-10), Err(Error::NonSquare { .. })));
        assert!(matches!(
            nullspace(&ComplexMatrix::identity(2), 0.0),
            Err(Error::InvalidTolerance(_))
        ));
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&ComplexMatrix::identity(4)).unwrap(), ONE);
        let d = ComplexMatrix::diag(&[r(2.0), r(3.0), ONE, ONE]);
        assert!((det(&d).unwrap() - r(6.0)).norm() < 1e-15);
        assert!((det(&sigma2()).unwrap() - r(-1.0)).norm() < 1e-15);
        assert!(det(&ComplexMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn commutator_examples() {
        assert_eq!(
            anticommutator(&sigma1(), &sigma2()).unwrap(),
            ComplexMatrix::zeros(2, 2)
        );
        assert_eq!(
            anticommutator(&sigma1(), &sigma1()).unwrap(),
            ComplexMatrix::identity(2).scale(r(2.0))
        );
        // hand-multiplied: s1 s2 = i s3, s2 s1 = -i s3
        let s1s2 = ComplexMatrix::from_rows(&[[I, ZERO], [ZERO, -I]]);
        let expected = &s1s2 - &(-&s1s2);
        assert_eq!(commutator(&sigma1(), &sigma2()).unwrap(), expected);
        assert_eq!(expected, sigma3().scale(c(0.0, 2.0)));
    }

    #[test]
    fn commutator_dim_mismatch() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::identity(4);
        assert!(matches!(
            anticommutator(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn json_shape() {
        let m = ComplexMatrix::from_rows(&[[c(0.1, -2.0), ONE]]);
        let s = m.to_json();
        assert_eq!(s, r#"{"rows":1,"cols":2,"entries":[[0.1,-2.0],[1.0,0.0]]}"#);
        assert_eq!(ComplexMatrix::from_json(&s).unwrap(), m);
        assert!(ComplexMatrix::from_json(r#"{"rows":2,"cols":2,"entries":[[1,0]]}"#).is_err());
    }

    #[test]
    fn canonical_phase() {
        let v = ComplexVector::new(vec![ZERO, c(0.0, 2.0), ONE]).unwrap();
        let w = v.with_canonical_phase();
        assert!(w[0].norm() == 0.0);
        assert!((w[1] - r(2.0)).norm() < 1e-15);
        assert!((w[2] - c(0.0, -1.0)).norm() < 1e-15);
    }
}
