//! Small dense real matrices (at most 8×8) and the handful of kernels the
//! covariance-matrix code needs: a cyclic Jacobi eigensolver, SPD square
//! roots, the Moore–Penrose inverse of an x-projected block, congruence
//! transforms and direct sums.
//!
//! Storage is a fixed `[f64; 64]` buffer, so every matrix is `Copy` and no
//! kernel allocates.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported dimension (four optical modes).
pub const MAX_DIM: usize = 8;

const STRIDE: usize = MAX_DIM;

/// Iteration cap for the Jacobi solver.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Off-diagonal convergence threshold, relative to the max-norm of the input.
pub const JACOBI_REL_TOL: f64 = 1e-14;

/// Absolute floor under every relative tolerance.
pub const ABS_FLOOR: f64 = 1e-12;

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM || !dim.is_multiple_of(2) {
        return Err(Error::Dimension(dim));
    }
    Ok(())
}

/// A general square matrix, used for symplectic maps and eigenvector bases.
#[derive(Clone, Copy, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: [f64; MAX_DIM * MAX_DIM],
}

impl Matrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            data: [0.0; MAX_DIM * MAX_DIM],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        Ok(m)
    }

    pub fn diag(values: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(values.len())?;
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, v);
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        let mut m = Self::zeros(dim)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Dimension(row.len()));
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i < self.dim && j < self.dim);
        self.data[i * STRIDE + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        debug_assert!(i < self.dim && j < self.dim);
        self.data[i * STRIDE + j] = v;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = *self;
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.set(i, j, self.get(j, i));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.dim != other.dim {
            return Err(Error::Dimension(other.dim));
        }
        let n = self.dim;
        let mut out = Matrix::zeros(n)?;
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * STRIDE + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Largest absolute entry.
    pub fn max_norm(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                m = m.max(self.get(i, j).abs());
            }
        }
        m
    }

    /// Largest absolute entry of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        let mut m: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                m = m.max((self.get(i, j) - other.get(i, j)).abs());
            }
        }
        m
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matrix")
            .field("dim", &self.dim)
            .field("rows", &self.rows())
            .finish()
    }
}

/// Dense real symmetric matrix of even dimension `2n`.
///
/// Symmetry is exact: both triangles always hold the same bits.
#[derive(Clone, Copy, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: [f64; MAX_DIM * MAX_DIM],
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            data: [0.0; MAX_DIM * MAX_DIM],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.data[i * STRIDE + i] = 1.0;
        }
        Ok(m)
    }

    pub fn diag(values: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(values.len())?;
        for (i, &v) in values.iter().enumerate() {
            m.data[i * STRIDE + i] = v;
        }
        Ok(m)
    }

    /// Builds a matrix from its upper triangle: `f(i, j)` is called for `i <= j`.
    pub fn from_upper(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j);
                m.data[i * STRIDE + j] = v;
                m.data[j * STRIDE + i] = v;
            }
        }
        Ok(m)
    }

    /// Builds from full rows. Mirror entries may differ by at most
    /// `1e-9 * max(1, |A|_max)`; the stored value is their mean.
    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let m = Matrix::from_rows(rows)?;
        Self::from_matrix(&m, 1e-9)
    }

    /// Symmetrizes `m`, rejecting it if the asymmetry exceeds `rel_tol`.
    pub fn from_matrix(m: &Matrix, rel_tol: f64) -> Result<Self> {
        let scale = m.max_norm().max(1.0);
        let n = m.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                let gap = (m.get(i, j) - m.get(j, i)).abs();
                if gap > rel_tol * scale {
                    return Err(Error::NotSymmetric { i, j, gap });
                }
            }
        }
        Self::from_upper(n, |i, j| 0.5 * (m.get(i, j) + m.get(j, i)))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn n_modes(&self) -> usize {
        self.dim / 2
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i < self.dim && j < self.dim);
        self.data[i * STRIDE + j]
    }

    /// Sets `(i, j)` and `(j, i)` together.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        debug_assert!(i < self.dim && j < self.dim);
        self.data[i * STRIDE + j] = v;
        self.data[j * STRIDE + i] = v;
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix {
            dim: self.dim,
            data: self.data,
        }
    }

    pub fn max_norm(&self) -> f64 {
        self.to_matrix().max_norm()
    }

    pub fn max_abs_diff(&self, other: &SymMatrix) -> f64 {
        self.to_matrix().max_abs_diff(&other.to_matrix())
    }

    pub fn add(&self, other: &SymMatrix) -> Result<SymMatrix> {
        if self.dim != other.dim {
            return Err(Error::Dimension(other.dim));
        }
        Self::from_upper(self.dim, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn sub(&self, other: &SymMatrix) -> Result<SymMatrix> {
        if self.dim != other.dim {
            return Err(Error::Dimension(other.dim));
        }
        Self::from_upper(self.dim, |i, j| self.get(i, j) - other.get(i, j))
    }

    /// The 2×2 block of rows of mode `a` and columns of mode `b`, as a plain matrix.
    pub fn mode_block(&self, a: usize, b: usize) -> [[f64; 2]; 2] {
        [
            [self.get(2 * a, 2 * b), self.get(2 * a, 2 * b + 1)],
            [self.get(2 * a + 1, 2 * b), self.get(2 * a + 1, 2 * b + 1)],
        ]
    }

    /// Restriction to a list of modes, in the order given.
    pub fn submatrix_modes(&self, modes: &[usize]) -> Result<SymMatrix> {
        for &m in modes {
            if m >= self.n_modes() {
                return Err(Error::InvalidMode {
                    index: m,
                    n_modes: self.n_modes(),
                });
            }
        }
        let idx = |k: usize| 2 * modes[k / 2] + k % 2;
        Self::from_upper(2 * modes.len(), |i, j| self.get(idx(i), idx(j)))
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.to_matrix().rows()
    }
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymMatrix")
            .field("dim", &self.dim)
            .field("rows", &self.rows())
            .finish()
    }
}

/// Eigendecomposition `A = Q diag(λ) Qᵀ` with eigenvalues sorted descending.
#[derive(Debug, Clone, Copy)]
pub struct SymEigen {
    dim: usize,
    values: [f64; MAX_DIM],
    /// Column `k` is the eigenvector of `values()[k]`.
    pub vectors: Matrix,
}

impl SymEigen {
    pub fn values(&self) -> &[f64] {
        &self.values[..self.dim]
    }

    /// `Q f(Λ) Qᵀ` for a spectral function `f`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> SymMatrix {
        let n = self.dim;
        let mut fv = [0.0; MAX_DIM];
        for (slot, &v) in fv.iter_mut().zip(&self.values[..n]) {
            *slot = f(v);
        }
        let q = &self.vectors;
        SymMatrix::from_upper(n, |i, j| {
            (0..n).map(|k| q.get(i, k) * fv[k] * q.get(j, k)).sum()
        })
        .expect("dimension already validated")
    }
}

/// Cyclic Jacobi eigensolver for a symmetric matrix.
pub fn sym_eig(a: &SymMatrix) -> Result<SymEigen> {
    jacobi(a, true)
}

/// Eigenvalues only, descending; skips the eigenvector accumulation.
pub fn sym_eigvals(a: &SymMatrix) -> Result<Vec<f64>> {
    Ok(jacobi(a, false)?.values().to_vec())
}

fn jacobi(a: &SymMatrix, with_vectors: bool) -> Result<SymEigen> {
    let n = a.dim();
    let mut m = a.to_matrix();
    let mut q = Matrix::identity(n)?;
    let tol = JACOBI_REL_TOL * a.max_norm();

    let off_diag = |m: &Matrix| {
        let mut off: f64 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off = off.max(m.get(i, j).abs());
            }
        }
        off
    };

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diag(&m) <= tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for r in (p + 1)..n {
                let apr = m.get(p, r);
                // Entries already under the threshold cannot block convergence.
                if apr.abs() <= tol {
                    continue;
                }
                let theta = (m.get(r, r) - m.get(p, p)) / (2.0 * apr);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // A <- Pᵀ A P with P the plane rotation in (p, r); only rows
                // and columns p, r change and symmetry is kept explicitly.
                m.set(p, p, m.get(p, p) - t * apr);
                m.set(r, r, m.get(r, r) + t * apr);
                m.set(p, r, 0.0);
                m.set(r, p, 0.0);
                for k in 0..n {
                    if k == p || k == r {
                        continue;
                    }
                    let akp = m.get(k, p);
                    let akr = m.get(k, r);
                    let (new_p, new_r) = (c * akp - s * akr, s * akp + c * akr);
                    m.set(k, p, new_p);
                    m.set(p, k, new_p);
                    m.set(k, r, new_r);
                    m.set(r, k, new_r);
                }
                if !with_vectors {
                    continue;
                }
                for k in 0..n {
                    let qkp = q.get(k, p);
                    let qkr = q.get(k, r);
                    q.set(k, p, c * qkp - s * qkr);
                    q.set(k, r, s * qkp + c * qkr);
                }
            }
        }
    }
    if !converged {
        let off = off_diag(&m);
        if off > tol {
            return Err(Error::NoConvergence {
                sweeps: JACOBI_MAX_SWEEPS,
                off,
            });
        }
    }

    let mut order: [usize; MAX_DIM] = [0, 1, 2, 3, 4, 5, 6, 7];
    order[..n].sort_by(|&i, &j| m.get(j, j).total_cmp(&m.get(i, i)));
    let mut values = [0.0; MAX_DIM];
    let mut vectors = Matrix::zeros(n)?;
    for (dst, &src) in order[..n].iter().enumerate() {
        values[dst] = m.get(src, src);
        for k in 0..n {
            vectors.set(k, dst, q.get(k, src));
        }
    }
    Ok(SymEigen {
        dim: n,
        values,
        vectors,
    })
}

/// Symmetric positive-definite square root.
pub fn sqrt_spd(a: &SymMatrix) -> Result<SymMatrix> {
    let eig = sym_eig(a)?;
    let min = eig.values()[a.dim() - 1];
    if min <= ABS_FLOOR {
        return Err(Error::NotPositiveDefinite { eigenvalue: min });
    }
    Ok(eig.reconstruct_with(f64::sqrt))
}

/// Lower-triangular `L` with `L Lᵀ = a`.
pub fn cholesky(a: &SymMatrix) -> Result<Matrix> {
    let n = a.dim();
    let mut l = Matrix::zeros(n)?;
    for j in 0..n {
        let mut d = a.get(j, j);
        for k in 0..j {
            d -= l.get(j, k) * l.get(j, k);
        }
        if d <= ABS_FLOOR {
            return Err(Error::NotPositiveDefinite { eigenvalue: d });
        }
        let d = d.sqrt();
        l.set(j, j, d);
        for i in (j + 1)..n {
            let mut v = a.get(i, j);
            for k in 0..j {
                v -= l.get(i, k) * l.get(j, k);
            }
            l.set(i, j, v / d);
        }
    }
    Ok(l)
}

/// Moore–Penrose inverse of `X γ X`, where `X` keeps only the x quadrature of
/// `mode_index`. The result has a single nonzero entry `1/γ[2k][2k]`.
pub fn pinv_x_projected(gamma: &SymMatrix, mode_index: usize) -> Result<SymMatrix> {
    if mode_index >= gamma.n_modes() {
        return Err(Error::InvalidMode {
            index: mode_index,
            n_modes: gamma.n_modes(),
        });
    }
    let k = 2 * mode_index;
    let variance = gamma.get(k, k);
    if variance <= ABS_FLOOR {
        return Err(Error::DegenerateQuadrature { variance });
    }
    let mut p = SymMatrix::zeros(gamma.dim())?;
    p.set(k, k, 1.0 / variance);
    Ok(p)
}

/// `S γ Sᵀ`.
pub fn congruence(s: &Matrix, gamma: &SymMatrix) -> Result<SymMatrix> {
    if s.dim() != gamma.dim() {
        return Err(Error::Dimension(s.dim()));
    }
    let n = s.dim();
    // Symplectic maps here are sparse (beam splitters, Ω), so both products
    // run over the nonzeros of each row of S only.
    let mut nz = [[(0usize, 0.0f64); MAX_DIM]; MAX_DIM];
    let mut counts = [0usize; MAX_DIM];
    for i in 0..n {
        for k in 0..n {
            let v = s.get(i, k);
            if v != 0.0 {
                nz[i][counts[i]] = (k, v);
                counts[i] += 1;
            }
        }
    }
    let mut sg = Matrix::zeros(n)?;
    for i in 0..n {
        for &(l, v) in &nz[i][..counts[i]] {
            for k in 0..n {
                sg.data[i * STRIDE + k] += v * gamma.get(l, k);
            }
        }
    }
    SymMatrix::from_upper(n, |i, j| nz[j][..counts[j]].iter().map(|&(l, v)| sg.get(i, l) * v).sum())
}

/// Block-diagonal stacking `γ1 ⊕ γ2`.
pub fn direct_sum(a: &SymMatrix, b: &SymMatrix) -> Result<SymMatrix> {
    let (na, nb) = (a.dim(), b.dim());
    let mut out = SymMatrix::zeros(na + nb)?;
    for i in 0..na {
        for j in i..na {
            out.set(i, j, a.get(i, j));
        }
    }
    for i in 0..nb {
        for j in i..nb {
            out.set(na + i, na + j, b.get(i, j));
        }
    }
    Ok(out)
}
