//! Dense and structured matrix helpers shared by the geometries and fields.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

pub type Mat = DMatrix<f64>;

/// Symmetric part `(W + Wᵀ) / 2` of a square matrix.
pub fn sym(w: &Mat) -> Mat {
    (w + w.transpose()) * 0.5
}

/// Copy of `w` with every off-diagonal entry set to zero.
pub fn ddiag(w: &Mat) -> Mat {
    let mut out = Mat::zeros(w.nrows(), w.ncols());
    for i in 0..w.nrows().min(w.ncols()) {
        out[(i, i)] = w[(i, i)];
    }
    out
}

/// `W - ddiag(W)`.
pub fn off(w: &Mat) -> Mat {
    let mut out = w.clone();
    for i in 0..w.nrows().min(w.ncols()) {
        out[(i, i)] = 0.0;
    }
    out
}

/// Thin QR factorization `W = QR` with `diag(R) > 0`.
///
/// The orthogonal factor of this normalized factorization is unique, which is
/// what the QR retraction on the Stiefel manifold needs. Columns of `Q` (and
/// rows of `R`) are flipped wherever the underlying Householder factorization
/// produced a negative diagonal entry.
pub fn qr_positive(w: &Mat) -> Result<(Mat, Mat)> {
    let (n, p) = w.shape();
    if p > n || p == 0 {
        return Err(Error::RankDeficient);
    }
    let scale = w.norm();
    let qr = w.clone().qr();
    let mut q = qr.q();
    let mut r = qr.r();
    for i in 0..p {
        let rii = r[(i, i)];
        if !(rii.abs() > 1e-12 * scale) {
            return Err(Error::RankDeficient);
        }
        if rii < 0.0 {
            q.column_mut(i).neg_mut();
            r.row_mut(i).neg_mut();
        }
    }
    Ok((q, r))
}

/// Orthogonal factor of [`qr_positive`].
pub fn qf(w: &Mat) -> Result<Mat> {
    qr_positive(w).map(|(q, _)| q)
}

/// `G^{-1/2}` for a symmetric positive definite `G`, through its spectral
/// decomposition. Eigenvalues below `1e-14 * λ_max` are treated as zero.
pub fn inv_sqrt_spd(g: &Mat) -> Result<Mat> {
    let p = g.nrows();
    let eig = SymmetricEigen::new(sym(g));
    let lmax = eig.eigenvalues.max();
    if !(lmax > 0.0) || !lmax.is_finite() {
        return Err(Error::SingularRetraction(
            "Gram matrix is not positive definite",
        ));
    }
    let mut scaled = eig.eigenvectors.clone();
    for j in 0..p {
        let lam = eig.eigenvalues[j];
        if lam < 1e-14 * lmax {
            return Err(Error::SingularRetraction(
                "Gram matrix is numerically singular",
            ));
        }
        let s = 1.0 / libm::sqrt(lam);
        scaled.column_mut(j).scale_mut(s);
    }
    Ok(scaled * eig.eigenvectors.transpose())
}

/// Orthogonal polar factor `W (WᵀW)^{-1/2}` of a tall matrix.
pub fn polar_factor(w: &Mat) -> Result<Mat> {
    let gram = w.tr_mul(w);
    Ok(w * inv_sqrt_spd(&gram)?)
}

/// Symmetric tridiagonal matrix with a precomputed `LDLᵀ` factorization.
#[derive(Debug, Clone)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    sub: Vec<f64>,
    // unit lower bidiagonal multipliers and pivots of LDLᵀ
    l: Vec<f64>,
    d: Vec<f64>,
}

impl SymTridiagonal {
    /// Builds and factorizes the matrix. Fails unless it is positive definite.
    pub fn new(diag: Vec<f64>, sub: Vec<f64>) -> Result<Self> {
        let n = diag.len();
        if n == 0 || sub.len() + 1 != n {
            return Err(Error::Domain("tridiagonal bands have inconsistent lengths"));
        }
        let mut l = vec![0.0; n.saturating_sub(1)];
        let mut d = vec![0.0; n];
        d[0] = diag[0];
        for i in 1..n {
            if !(d[i - 1] > 0.0) {
                return Err(Error::Domain("tridiagonal matrix is not positive definite"));
            }
            l[i - 1] = sub[i - 1] / d[i - 1];
            d[i] = diag[i] - l[i - 1] * sub[i - 1];
        }
        if !(d[n - 1] > 0.0) {
            return Err(Error::Domain("tridiagonal matrix is not positive definite"));
        }
        Ok(Self { diag, sub, l, d })
    }

    /// One-dimensional Dirichlet Laplacian `tridiag(-1, 2, -1)` of size `n`.
    pub fn laplacian_1d(n: usize) -> Result<Self> {
        Self::new(vec![2.0; n], vec![-1.0; n.saturating_sub(1)])
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn mul_mat(&self, x: &Mat) -> Mat {
        let n = self.dim();
        let mut out = Mat::zeros(n, x.ncols());
        for j in 0..x.ncols() {
            for i in 0..n {
                let mut v = self.diag[i] * x[(i, j)];
                if i > 0 {
                    v += self.sub[i - 1] * x[(i - 1, j)];
                }
                if i + 1 < n {
                    v += self.sub[i] * x[(i + 1, j)];
                }
                out[(i, j)] = v;
            }
        }
        out
    }

    pub fn solve(&self, b: &DVector<f64>) -> DVector<f64> {
        let n = self.dim();
        let mut y = b.clone();
        for i in 1..n {
            y[i] -= self.l[i - 1] * y[i - 1];
        }
        for i in 0..n {
            y[i] /= self.d[i];
        }
        for i in (0..n.saturating_sub(1)).rev() {
            y[i] -= self.l[i] * y[i + 1];
        }
        y
    }

    pub fn to_dense(&self) -> Mat {
        let n = self.dim();
        let mut a = Mat::zeros(n, n);
        for i in 0..n {
            a[(i, i)] = self.diag[i];
            if i + 1 < n {
                a[(i, i + 1)] = self.sub[i];
                a[(i + 1, i)] = self.sub[i];
            }
        }
        a
    }
}

/// Compressed sparse row matrix. Only the products needed by the fields are
/// provided.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    nrows: usize,
    ncols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl CsrMatrix {
    /// Assembles from zero-based `(row, col, value)` triplets. Duplicates are
    /// summed.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        triplets: &[(usize, usize, f64)],
    ) -> Result<Self> {
        let mut sorted: Vec<(usize, usize, f64)> = triplets.to_vec();
        for &(i, j, _) in &sorted {
            if i >= nrows || j >= ncols {
                return Err(Error::Dimension {
                    expected: (nrows, ncols),
                    found: (i + 1, j + 1),
                });
            }
        }
        sorted.sort_by_key(|e| (e.0, e.1));
        let mut row_ptr = vec![0usize; nrows + 1];
        let mut col_idx = Vec::with_capacity(sorted.len());
        let mut values: Vec<f64> = Vec::with_capacity(sorted.len());
        let mut last: Option<(usize, usize)> = None;
        for (i, j, v) in sorted {
            if last == Some((i, j)) {
                *values.last_mut().unwrap() += v;
                continue;
            }
            col_idx.push(j);
            values.push(v);
            row_ptr[i + 1] += 1;
            last = Some((i, j));
        }
        for i in 0..nrows {
            row_ptr[i + 1] += row_ptr[i];
        }
        Ok(Self {
            nrows,
            ncols,
            row_ptr,
            col_idx,
            values,
        })
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.values.iter().map(|v| v * v).sum())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let row = &self.col_idx[self.row_ptr[i]..self.row_ptr[i + 1]];
        match row.binary_search(&j) {
            Ok(pos) => self.values[self.row_ptr[i] + pos],
            Err(_) => 0.0,
        }
    }

    /// Iterates the stored entries as zero-based `(row, col, value)`.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.nrows).flat_map(move |i| {
            (self.row_ptr[i]..self.row_ptr[i + 1])
                .map(move |k| (i, self.col_idx[k], self.values[k]))
        })
    }

    pub fn mul_mat(&self, x: &Mat) -> Mat {
        let mut out = Mat::zeros(self.nrows, x.ncols());
        for j in 0..x.ncols() {
            let xc = x.column(j);
            for i in 0..self.nrows {
                let mut acc = 0.0;
                for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                    acc += self.values[k] * xc[self.col_idx[k]];
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn to_dense(&self) -> Mat {
        let mut a = Mat::zeros(self.nrows, self.ncols);
        for (i, j, v) in self.triplets() {
            a[(i, j)] = v;
        }
        a
    }
}

/// A symmetric linear operator stored densely or sparsely.
#[derive(Debug, Clone)]
pub enum SymOperator {
    Dense(Mat),
    Sparse(CsrMatrix),
}

impl SymOperator {
    pub fn dim(&self) -> usize {
        match self {
            SymOperator::Dense(a) => a.nrows(),
            SymOperator::Sparse(a) => a.shape().0,
        }
    }

    pub fn apply(&self, x: &Mat) -> Mat {
        match self {
            SymOperator::Dense(a) => a * x,
            SymOperator::Sparse(a) => a.mul_mat(x),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        match self {
            SymOperator::Dense(a) => a.norm(),
            SymOperator::Sparse(a) => a.frobenius_norm(),
        }
    }

    pub fn to_dense(&self) -> Mat {
        match self {
            SymOperator::Dense(a) => a.clone(),
            SymOperator::Sparse(a) => a.to_dense(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_ddiag_off_by_hand() {
        let w = Mat::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(sym(&w), Mat::from_row_slice(2, 2, &[1.0, 2.5, 2.5, 4.0]));
        assert_eq!(off(&w), Mat::from_row_slice(2, 2, &[0.0, 2.0, 3.0, 0.0]));
        assert_eq!(ddiag(&w) + off(&w), w);
        let i = Mat::identity(3, 3);
        assert_eq!(sym(&i), i);
        assert_eq!(ddiag(&i), i);
        assert_eq!(off(&i), Mat::zeros(3, 3));
    }

    #[test]
    fn qf_sign_convention() {
        let w = Mat::from_row_slice(2, 2, &[-2.0, 0.0, 0.0, 3.0]);
        let (q, r) = qr_positive(&w).unwrap();
        assert!((q - Mat::from_row_slice(2, 2, &[-1.0, 0.0, 0.0, 1.0])).norm() < 1e-15);
        assert!((r - Mat::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 3.0])).norm() < 1e-15);
        assert_eq!(qf(&Mat::identity(3, 3)).unwrap(), Mat::identity(3, 3));
    }

    #[test]
    fn qf_rejects_rank_deficiency() {
        let w = Mat::from_row_slice(3, 2, &[1.0, 2.0, 2.0, 4.0, 3.0, 6.0]);
        assert_eq!(qf(&w), Err(Error::RankDeficient));
        assert_eq!(qf(&Mat::zeros(2, 3)), Err(Error::RankDeficient));
    }

    #[test]
    fn inv_sqrt_of_diagonal() {
        let g = Mat::from_row_slice(2, 2, &[4.0, 0.0, 0.0, 9.0]);
        let s = inv_sqrt_spd(&g).unwrap();
        assert!((s - Mat::from_row_slice(2, 2, &[0.5, 0.0, 0.0, 1.0 / 3.0])).norm() < 1e-15);
        let singular = Mat::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        assert!(matches!(
            inv_sqrt_spd(&singular),
            Err(Error::SingularRetraction(_))
        ));
    }

    #[test]
    fn tridiagonal_solve_inverts_product() {
        let t = SymTridiagonal::laplacian_1d(7).unwrap();
        let b = DVector::from_fn(7, |i, _| (i as f64 * 0.7).sin() + 0.2);
        let x = t.solve(&b);
        let back = t.to_dense() * &x;
        assert!((back - b).norm() < 1e-13);
        let xm = Mat::from_fn(7, 2, |i, j| (i + 3 * j) as f64);
        assert!((t.mul_mat(&xm) - t.to_dense() * &xm).norm() < 1e-13);
    }

    #[test]
    fn csr_sums_duplicates_and_matches_dense() {
        let a = CsrMatrix::from_triplets(
            3,
            3,
            &[
                (0, 0, 1.0),
                (2, 1, 4.0),
                (0, 0, 1.0),
                (1, 2, -1.0),
                (1, 0, 0.5),
            ],
        )
        .unwrap();
        assert_eq!(a.nnz(), 4);
        assert_eq!(a.get(0, 0), 2.0);
        assert_eq!(a.get(2, 2), 0.0);
        let x = Mat::from_fn(3, 2, |i, j| (i * 2 + j) as f64 - 1.0);
        assert!((a.mul_mat(&x) - a.to_dense() * &x).norm() < 1e-15);
        assert!(CsrMatrix::from_triplets(2, 2, &[(2, 0, 1.0)]).is_err());
    }
}
