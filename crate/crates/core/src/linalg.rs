//! Dense row-major `f64` matrices and the symmetric kernels the rest of the
//! crate is built on: cyclic Jacobi eigendecomposition, Cholesky, and SPD
//! solves.
//!
//! General products go through `matrixmultiply::dgemm`; everything else is a
//! plain loop over the row-major buffer.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Symmetry tolerance accepted by [`sym_eig`].
pub const SYMMETRY_TOL: f64 = 1e-9;
/// Jacobi stops once the off-diagonal Frobenius norm drops below this
/// fraction of `‖A‖_F`.
pub const JACOBI_REL_TOL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;

#[derive(Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    /// Builds a matrix from a row-major buffer, rejecting empty shapes and
    /// non-finite entries.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!(
                "matrix shape must be at least 1x1, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!(
                "matrix entry ({}, {})",
                pos / cols,
                pos % cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix shape must be at least 1x1");
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in diag.iter().enumerate() {
            m.data[i * n + i] = v;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Self::new(rows.len(), cols, data)
    }

    /// Column vector.
    pub fn from_column(values: &[f64]) -> Result<Self> {
        Self::new(values.len(), 1, values.to_vec())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols + j])
            .collect()
    }

    pub fn set_column(&mut self, j: usize, values: &[f64]) {
        assert_eq!(values.len(), self.rows);
        for (i, &v) in values.iter().enumerate() {
            self.data[i * self.cols + j] = v;
        }
    }

    /// Gathers the given columns, in order, into a new matrix.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        assert!(!cols.is_empty());
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            let src = self.row(i);
            let dst = out.row_mut(i);
            for (k, &j) in cols.iter().enumerate() {
                dst[k] = src[j];
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        assert!(!rows.is_empty());
        let mut out = Self::zeros(rows.len(), self.cols);
        for (k, &i) in rows.iter().enumerate() {
            out.row_mut(k).copy_from_slice(self.row(i));
        }
        out
    }

    /// Leading `k` columns.
    pub fn leading_columns(&self, k: usize) -> Self {
        let idx: Vec<usize> = (0..k).collect();
        self.select_columns(&idx)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    /// `self · other`. Panics on a shape mismatch.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols,
            other.rows,
            "matmul shape mismatch: {:?} x {:?}",
            self.shape(),
            other.shape()
        );
        gemm(self, false, other, false)
    }

    /// `selfᵀ · other`.
    pub fn t_matmul(&self, other: &Self) -> Self {
        assert_eq!(
            self.rows,
            other.rows,
            "t_matmul shape mismatch: {:?}ᵀ x {:?}",
            self.shape(),
            other.shape()
        );
        gemm(self, true, other, false)
    }

    /// `self · otherᵀ`.
    pub fn matmul_t(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols,
            other.cols,
            "matmul_t shape mismatch: {:?} x {:?}ᵀ",
            self.shape(),
            other.shape()
        );
        gemm(self, false, other, true)
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_map(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_map(other, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|v| v * s)
    }

    pub fn map(&self, mut f: impl FnMut(f64) -> f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    fn zip_map(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        assert_eq!(self.shape(), other.shape(), "elementwise shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// `self + shift·I`.
    pub fn add_diagonal(&self, shift: f64) -> Self {
        assert!(self.is_square());
        let mut out = self.clone();
        for i in 0..self.rows {
            out.data[i * self.cols + i] += shift;
        }
        out
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.rows.min(self.cols))
            .map(|i| self.data[i * self.cols + i])
            .collect()
    }

    pub fn trace(&self) -> f64 {
        self.diagonal().iter().sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn frobenius_norm_sq(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.frobenius_norm_sq().sqrt()
    }

    pub fn max_asymmetry(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                worst = worst.max((self.data[i * n + j] - self.data[j * n + i]).abs());
            }
        }
        worst
    }

    /// `(A + Aᵀ)/2`.
    pub fn symmetrize(&self) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        let mut out = self.clone();
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = 0.5 * (self.data[i * n + j] + self.data[j * n + i]);
                out.data[i * n + j] = avg;
                out.data[j * n + i] = avg;
            }
        }
        out
    }

    /// Mean of each row (mean over items when columns are items).
    pub fn row_means(&self) -> Vec<f64> {
        (0..self.rows)
            .map(|i| self.row(i).iter().sum::<f64>() / self.cols as f64)
            .collect()
    }

    /// Mean of each column.
    pub fn column_means(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.cols];
        for i in 0..self.rows {
            for (o, v) in out.iter_mut().zip(self.row(i)) {
                *o += v;
            }
        }
        out.iter_mut().for_each(|o| *o /= self.rows as f64);
        out
    }

    /// Subtracts each row's mean, i.e. `X·H` for items stored as columns.
    pub fn center_rows(&self) -> Self {
        let means = self.row_means();
        let mut out = self.clone();
        for (i, m) in means.iter().enumerate() {
            out.row_mut(i).iter_mut().for_each(|v| *v -= m);
        }
        out
    }

    /// `max|A − B| / max(‖A‖_max, ‖B‖_max)`, or 0 when both are zero.
    pub fn relative_diff(&self, other: &Self) -> f64 {
        let scale = self.max_abs().max(other.max_abs());
        if scale == 0.0 {
            return 0.0;
        }
        self.sub(other).max_abs() / scale
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows.min(8) {
            writeln!(f, "  {:?}", &self.row(i)[..self.cols.min(8)])?;
        }
        write!(f, "]")
    }
}

// Serialized as a list of rows so model files stay human-readable.
impl Serialize for DenseMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for DenseMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<f64>> = Vec::deserialize(deserializer)?;
        DenseMatrix::from_rows(&rows).map_err(D::Error::custom)
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn gemm(a: &DenseMatrix, ta: bool, b: &DenseMatrix, tb: bool) -> DenseMatrix {
    let (m, k) = if ta {
        (a.cols, a.rows)
    } else {
        (a.rows, a.cols)
    };
    let n = if tb { b.rows } else { b.cols };
    let (rsa, csa) = if ta {
        (1, a.cols as isize)
    } else {
        (a.cols as isize, 1)
    };
    let (rsb, csb) = if tb {
        (1, b.cols as isize)
    } else {
        (b.cols as isize, 1)
    };
    let mut c = DenseMatrix::zeros(m, n);
    // SAFETY: strides describe the row-major buffers of `a`, `b` and `c`,
    // whose lengths match the (possibly transposed) shapes checked by callers.
    unsafe {
        matrixmultiply::dgemm(
            m,
            k,
            n,
            1.0,
            a.data.as_ptr(),
            rsa,
            csa,
            b.data.as_ptr(),
            rsb,
            csb,
            0.0,
            c.data.as_mut_ptr(),
            n as isize,
            1,
        );
    }
    c
}

/// Eigenpairs of a symmetric matrix, eigenvalues sorted descending.
#[derive(Debug, Clone)]
pub struct EigenResult {
    pub eigenvalues: Vec<f64>,
    /// Eigenvectors as columns, in the same order as `eigenvalues`.
    pub eigenvectors: DenseMatrix,
}

impl EigenResult {
    /// `V·diag(λ)·Vᵀ`.
    pub fn reconstruct(&self) -> DenseMatrix {
        let v = &self.eigenvectors;
        let mut scaled = v.clone();
        for i in 0..scaled.rows() {
            for (x, l) in scaled.row_mut(i).iter_mut().zip(&self.eigenvalues) {
                *x *= l;
            }
        }
        scaled.matmul_t(v)
    }
}

fn check_symmetric(a: &DenseMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "expected a square matrix, got {}x{}",
            a.rows, a.cols
        )));
    }
    let asym = a.max_asymmetry();
    if asym > SYMMETRY_TOL {
        return Err(Error::NotSymmetric {
            max_asymmetry: asym,
        });
    }
    Ok(())
}

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// Each eigenvector's first nonzero component is made positive so output is
/// fully determined by the input.
pub fn sym_eig(a: &DenseMatrix) -> Result<EigenResult> {
    check_symmetric(a)?;
    let n = a.rows;
    let mut m = a.symmetrize().data;
    // Rows of `vt` are the eigenvectors; row updates stay contiguous.
    let mut vt = DenseMatrix::identity(n).data;
    let tol = JACOBI_REL_TOL * a.frobenius_norm();

    let off_norm = |m: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += 2.0 * m[i * n + j] * m[i * n + j];
            }
        }
        s.sqrt()
    };

    let mut converged = false;
    let mut residual = off_norm(&m);
    for _ in 0..JACOBI_MAX_SWEEPS {
        if residual <= tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = m[p * n + k];
                    let akq = m[q * n + k];
                    let new_p = c * akp - s * akq;
                    let new_q = s * akp + c * akq;
                    m[p * n + k] = new_p;
                    m[k * n + p] = new_p;
                    m[q * n + k] = new_q;
                    m[k * n + q] = new_q;
                }
                m[p * n + p] = app - t * apq;
                m[q * n + q] = aqq + t * apq;
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;

                let (head, tail) = vt.split_at_mut(q * n);
                let vp = &mut head[p * n..(p + 1) * n];
                let vq = &mut tail[..n];
                for (x, y) in vp.iter_mut().zip(vq.iter_mut()) {
                    let (a, b) = (*x, *y);
                    *x = c * a - s * b;
                    *y = s * a + c * b;
                }
            }
        }
        residual = off_norm(&m);
    }
    if !converged && residual > tol {
        return Err(Error::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
            residual,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[j * n + j].total_cmp(&m[i * n + i]).then(i.cmp(&j)));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| m[i * n + i]).collect();
    let mut eigenvectors = DenseMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        let v = &mut vt[src * n..(src + 1) * n];
        if let Some(first) = v.iter().find(|x| x.abs() > 1e-12) {
            if *first < 0.0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
        }
        eigenvectors.set_column(col, v);
    }
    Ok(EigenResult {
        eigenvalues,
        eigenvectors,
    })
}

/// Lower-triangular `L` with `L·Lᵀ = A`.
pub fn cholesky(a: &DenseMatrix) -> Result<DenseMatrix> {
    check_symmetric(a)?;
    let n = a.rows;
    let mut l = DenseMatrix::zeros(n, n);
    for j in 0..n {
        let row_j = &l.data[j * n..j * n + j];
        let pivot = a.data[j * n + j] - dot(row_j, row_j);
        if !(pivot > 0.0) {
            return Err(Error::NotPositiveDefinite {
                pivot: j,
                value: pivot,
            });
        }
        let ljj = pivot.sqrt();
        l.data[j * n + j] = ljj;
        for i in (j + 1)..n {
            let s = dot(&l.data[i * n..i * n + j], &l.data[j * n..j * n + j]);
            l.data[i * n + j] = (a.data[i * n + j] - s) / ljj;
        }
    }
    Ok(l)
}

/// Solves `L·X = B` for lower-triangular `L`, in place on `B`.
pub fn forward_substitute(l: &DenseMatrix, b: &mut DenseMatrix) {
    let n = l.rows;
    assert_eq!(b.rows, n);
    let m = b.cols;
    for i in 0..n {
        for k in 0..i {
            let lik = l.data[i * n + k];
            if lik == 0.0 {
                continue;
            }
            let (done, rest) = b.data.split_at_mut(i * m);
            let src = &done[k * m..(k + 1) * m];
            for (x, s) in rest[..m].iter_mut().zip(src) {
                *x -= lik * s;
            }
        }
        let inv = 1.0 / l.data[i * n + i];
        b.data[i * m..(i + 1) * m]
            .iter_mut()
            .for_each(|x| *x *= inv);
    }
}

/// Solves `Lᵀ·X = B` for lower-triangular `L`, in place on `B`.
pub fn backward_substitute_transposed(l: &DenseMatrix, b: &mut DenseMatrix) {
    let n = l.rows;
    assert_eq!(b.rows, n);
    let m = b.cols;
    for i in (0..n).rev() {
        for k in (i + 1)..n {
            // (Lᵀ)_{ik} = L_{ki}
            let lki = l.data[k * n + i];
            if lki == 0.0 {
                continue;
            }
            let (head, tail) = b.data.split_at_mut(k * m);
            let src = &tail[..m];
            for (x, s) in head[i * m..(i + 1) * m].iter_mut().zip(src) {
                *x -= lki * s;
            }
        }
        let inv = 1.0 / l.data[i * n + i];
        b.data[i * m..(i + 1) * m]
            .iter_mut()
            .for_each(|x| *x *= inv);
    }
}

/// Solves `A·X = B` for symmetric positive-definite `A`.
pub fn solve_spd(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    if a.rows != b.rows {
        return Err(Error::Dimension(format!(
            "solve_spd: A has {} rows, B has {}",
            a.rows, b.rows
        )));
    }
    let l = cholesky(a)?;
    let mut x = b.clone();
    forward_substitute(&l, &mut x);
    backward_substitute_transposed(&l, &mut x);
    Ok(x)
}

/// `A^(-1/2)` for symmetric positive-definite `A`, via the eigendecomposition.
pub fn sym_inv_sqrt(a: &DenseMatrix) -> Result<DenseMatrix> {
    let eig = sym_eig(a)?;
    let scale = eig
        .eigenvalues
        .first()
        .copied()
        .unwrap_or(0.0)
        .abs()
        .max(1.0);
    let mut inv_sqrt = Vec::with_capacity(eig.eigenvalues.len());
    for (i, &l) in eig.eigenvalues.iter().enumerate() {
        if !(l > 1e-14 * scale) {
            return Err(Error::NotPositiveDefinite { pivot: i, value: l });
        }
        inv_sqrt.push(1.0 / l.sqrt());
    }
    Ok(EigenResult {
        eigenvalues: inv_sqrt,
        eigenvectors: eig.eigenvectors,
    }
    .reconstruct())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_spd(n: usize, rng: &mut ChaCha8Rng) -> DenseMatrix {
        let g = DenseMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
        g.matmul_t(&g).add_diagonal(0.5)
    }

    fn random_sym(n: usize, rng: &mut ChaCha8Rng) -> DenseMatrix {
        DenseMatrix::from_fn(n, n, |_, _| rng.random_range(-2.0..2.0)).symmetrize()
    }

    #[test]
    fn rejects_bad_shapes_and_nan() {
        assert!(DenseMatrix::new(0, 3, vec![]).is_err());
        assert!(DenseMatrix::new(2, 2, vec![1.0; 3]).is_err());
        assert!(matches!(
            DenseMatrix::new(1, 2, vec![1.0, f64::NAN]),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn products_agree_with_naive_loops() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = DenseMatrix::from_fn(4, 3, |_, _| rng.random_range(-1.0..1.0));
        let b = DenseMatrix::from_fn(3, 5, |_, _| rng.random_range(-1.0..1.0));
        let c = a.matmul(&b);
        for i in 0..4 {
            for j in 0..5 {
                let expect: f64 = (0..3).map(|k| a[(i, k)] * b[(k, j)]).sum();
                assert!((c[(i, j)] - expect).abs() < 1e-14);
            }
        }
        let at = a.transpose();
        assert_eq!(at.t_matmul(&b).as_slice(), c.as_slice());
        let bt = b.transpose();
        assert!(a.matmul_t(&bt).sub(&c).max_abs() < 1e-15);
    }

    #[test]
    fn eig_identity() {
        let r = sym_eig(&DenseMatrix::identity(3)).unwrap();
        assert_eq!(r.eigenvalues, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn eig_diagonal() {
        let r = sym_eig(&DenseMatrix::from_diag(&[1.0, 3.0])).unwrap();
        assert_eq!(r.eigenvalues, vec![3.0, 1.0]);
        assert_eq!(r.eigenvectors.column(0), vec![0.0, 1.0]);
        assert_eq!(r.eigenvectors.column(1), vec![1.0, 0.0]);
    }

    #[test]
    fn eig_two_by_two() {
        let a = DenseMatrix::from_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap();
        let r = sym_eig(&a).unwrap();
        assert!((r.eigenvalues[0] - 3.0).abs() < 1e-12);
        assert!((r.eigenvalues[1] - 1.0).abs() < 1e-12);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v0 = r.eigenvectors.column(0);
        let v1 = r.eigenvectors.column(1);
        assert!((v0[0] - h).abs() < 1e-12 && (v0[1] - h).abs() < 1e-12);
        assert!((v1[0] - h).abs() < 1e-12 && (v1[1] + h).abs() < 1e-12);
    }

    #[test]
    fn eig_errors() {
        let rect = DenseMatrix::zeros(2, 3);
        assert!(matches!(sym_eig(&rect), Err(Error::Dimension(_))));
        let asym = DenseMatrix::from_rows(&[[1.0, 2.0], [0.0, 1.0]]).unwrap();
        assert!(matches!(sym_eig(&asym), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn eig_random_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [1, 2, 5, 17, 40] {
            let a = random_sym(n, &mut rng);
            let r = sym_eig(&a).unwrap();
            let scale = a.max_abs();
            assert!(r.reconstruct().sub(&a).max_abs() <= 1e-8 * scale);
            let vtv = r.eigenvectors.t_matmul(&r.eigenvectors);
            assert!(vtv.sub(&DenseMatrix::identity(n)).max_abs() <= 1e-9);
            assert!(r.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
            let sum: f64 = r.eigenvalues.iter().sum();
            assert!((sum - a.trace()).abs() <= 1e-9 * a.trace().abs().max(1.0));
            for k in 0..n {
                let v = r.eigenvectors.column(k);
                let av = a.matvec(&v);
                for (x, y) in av.iter().zip(&v) {
                    assert!((x - r.eigenvalues[k] * y).abs() <= 1e-8 * scale);
                }
            }
            assert_eq!(sym_eig(&a).unwrap().eigenvectors, r.eigenvectors);
        }
    }

    #[test]
    fn eig_zero_matrix() {
        let r = sym_eig(&DenseMatrix::zeros(4, 4)).unwrap();
        assert_eq!(r.eigenvalues, vec![0.0; 4]);
    }

    #[test]
    fn cholesky_examples() {
        assert_eq!(
            cholesky(&DenseMatrix::identity(3)).unwrap(),
            DenseMatrix::identity(3)
        );
        let l = cholesky(&DenseMatrix::from_diag(&[4.0, 9.0])).unwrap();
        assert_eq!(l, DenseMatrix::from_diag(&[2.0, 3.0]));
        let a = DenseMatrix::from_rows(&[[4.0, 2.0], [2.0, 5.0]]).unwrap();
        let l = cholesky(&a).unwrap();
        assert_eq!(
            l,
            DenseMatrix::from_rows(&[[2.0, 0.0], [1.0, 2.0]]).unwrap()
        );
    }

    #[test]
    fn cholesky_names_failing_pivot() {
        let a =
            DenseMatrix::from_rows(&[[1.0, 0.0, 0.0], [0.0, 1.0, 1.0], [0.0, 1.0, 1.0]]).unwrap();
        match cholesky(&a) {
            Err(Error::NotPositiveDefinite { pivot, .. }) => assert_eq!(pivot, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cholesky_reconstructs_random_spd() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [1, 3, 12] {
            let a = random_spd(n, &mut rng);
            let l = cholesky(&a).unwrap();
            assert!(l.matmul_t(&l).sub(&a).max_abs() <= 1e-10 * a.max_abs());
        }
    }

    #[test]
    fn solve_examples() {
        let b = DenseMatrix::from_rows(&[[1.5, -2.0], [0.25, 7.0]]).unwrap();
        assert_eq!(solve_spd(&DenseMatrix::identity(2), &b).unwrap(), b);
        let x = solve_spd(
            &DenseMatrix::from_diag(&[2.0, 4.0]),
            &DenseMatrix::from_column(&[2.0, 4.0]).unwrap(),
        )
        .unwrap();
        assert!(x.relative_diff(&DenseMatrix::from_column(&[1.0, 1.0]).unwrap()) < 1e-15);
    }

    #[test]
    fn solve_recovers_known_solution() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random_spd(5, &mut rng);
        let x0 = DenseMatrix::from_fn(5, 3, |_, _| rng.random_range(-1.0..1.0));
        let b = a.matmul(&x0);
        let x = solve_spd(&a, &b).unwrap();
        assert!(x.sub(&x0).max_abs() <= 1e-9);
        assert!(a.matmul(&x).sub(&b).max_abs() <= 1e-9 * b.max_abs());
    }

    #[test]
    fn solve_rejects_row_mismatch_and_indefinite() {
        let a = DenseMatrix::identity(2);
        assert!(matches!(
            solve_spd(&a, &DenseMatrix::zeros(3, 1)),
            Err(Error::Dimension(_))
        ));
        let indefinite = DenseMatrix::from_diag(&[1.0, -1.0]);
        assert!(matches!(
            solve_spd(&indefinite, &DenseMatrix::zeros(2, 1)),
            Err(Error::NotPositiveDefinite { pivot: 1, .. })
        ));
    }

    #[test]
    fn inverse_square_root() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_spd(6, &mut rng);
        let s = sym_inv_sqrt(&a).unwrap();
        let should_be_identity = s.matmul(&a).matmul(&s);
        assert!(should_be_identity.sub(&DenseMatrix::identity(6)).max_abs() < 1e-10);
    }
}
