//! Independent reference implementation on nalgebra: matrices are written
//! out entry by entry, symplectic eigenvalues come from the complex spectrum
//! of `Ω γ`, and conditioning is an explicit Schur complement.

#![allow(dead_code)]

use nalgebra::{Complex, DMatrix, SymmetricEigen};

pub struct Params {
    pub r: f64,
    pub v_mod: f64,
    pub t_x: f64,
    pub eps_x: f64,
    pub eta: f64,
    pub v_el: f64,
}

impl Params {
    pub fn from_lib(p: &udqkd::ProtocolParams) -> Self {
        Self {
            r: p.r(),
            v_mod: p.v_mod(),
            t_x: p.t_x(),
            eps_x: p.eps_x(),
            eta: p.eta(),
            v_el: p.v_el(),
        }
    }

    pub fn chi_linex(&self) -> f64 {
        (1.0 - self.t_x) / self.t_x + self.eps_x
    }
}

pub fn omega(n_modes: usize) -> DMatrix<f64> {
    let mut w = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for k in 0..n_modes {
        w[(2 * k, 2 * k + 1)] = 1.0;
        w[(2 * k + 1, 2 * k)] = -1.0;
    }
    w
}

pub fn gamma_ab1(p: &Params, v_y: f64, c_y: f64) -> DMatrix<f64> {
    let v = (1.0 + p.r * p.v_mod).sqrt();
    let cx = (p.t_x * p.v_mod).sqrt() * (1.0 + p.r * p.v_mod).powf(0.25);
    let bx = p.t_x * (p.v_mod + 1.0 / p.r + p.chi_linex());
    DMatrix::from_row_slice(
        4,
        4,
        &[
            v, 0.0, cx, 0.0, //
            0.0, v, 0.0, c_y, //
            cx, 0.0, bx, 0.0, //
            0.0, c_y, 0.0, v_y,
        ],
    )
}

/// `γ_AB1 ⊕ γ_R0H` mixed on `B1`, `R0` by a beam splitter of transmission `η`.
/// Output order `A, B, R, H`.
pub fn gamma_abrh(p: &Params, v_y: f64, c_y: f64) -> DMatrix<f64> {
    let vn = if p.eta == 1.0 { 1.0 } else { 1.0 + p.v_el / (1.0 - p.eta) };
    let z = (vn * vn - 1.0).sqrt();
    let mut g = DMatrix::zeros(8, 8);
    g.view_mut((0, 0), (4, 4)).copy_from(&gamma_ab1(p, v_y, c_y));
    let rh = DMatrix::from_row_slice(
        4,
        4,
        &[
            vn, 0.0, z, 0.0, //
            0.0, vn, 0.0, -z, //
            z, 0.0, vn, 0.0, //
            0.0, -z, 0.0, vn,
        ],
    );
    g.view_mut((4, 4), (4, 4)).copy_from(&rh);
    let (s, c) = (p.eta.sqrt(), (1.0 - p.eta).sqrt());
    let mut bs = DMatrix::identity(8, 8);
    for q in 0..2 {
        let (i, j) = (2 + q, 4 + q);
        bs[(i, i)] = s;
        bs[(i, j)] = c;
        bs[(j, i)] = -c;
        bs[(j, j)] = s;
    }
    &bs * g * bs.transpose()
}

/// Covariance of `A, R, H` after homodyning the x quadrature of `B`.
pub fn gamma_arh_given_xb(p: &Params, v_y: f64, c_y: f64) -> DMatrix<f64> {
    let g = gamma_abrh(p, v_y, c_y);
    let keep = [0usize, 1, 4, 5, 6, 7];
    let xb = 2usize;
    DMatrix::from_fn(6, 6, |i, j| {
        let (a, b) = (keep[i], keep[j]);
        g[(a, b)] - g[(a, xb)] * g[(b, xb)] / g[(xb, xb)]
    })
}

/// Moduli of the eigenvalues of `Ω γ`, which come in pairs `±iν`.
pub fn symplectic_eigenvalues(gamma: &DMatrix<f64>) -> Vec<f64> {
    let n = gamma.nrows() / 2;
    let eig = (omega(n) * gamma).complex_eigenvalues();
    let mut mags: Vec<f64> = eig.iter().map(|z| z.norm()).collect();
    mags.sort_by(|a, b| b.total_cmp(a));
    mags.chunks(2).map(|c| 0.5 * (c[0] + c[1])).collect()
}

pub fn g(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (x + 1.0) * (x + 1.0).log2() - x * x.log2()
    }
}

pub fn entropy(gamma: &DMatrix<f64>) -> f64 {
    symplectic_eigenvalues(gamma)
        .into_iter()
        .map(|nu| g((nu.max(1.0) - 1.0) / 2.0))
        .sum()
}

pub fn holevo(p: &Params, v_y: f64, c_y: f64) -> f64 {
    entropy(&gamma_ab1(p, v_y, c_y)) - entropy(&gamma_arh_given_xb(p, v_y, c_y))
}

/// `½ log₂(V_A / V_A|x_B)` from the detected two-mode matrix.
pub fn mutual_information(p: &Params) -> f64 {
    let g = gamma_abrh(p, 1.0, 0.0);
    let va = g[(0, 0)];
    let cond = va - g[(0, 2)] * g[(0, 2)] / g[(2, 2)];
    0.5 * (va / cond).log2()
}

/// Smallest eigenvalue of the Hermitian matrix `γ + iΩ`.
pub fn uncertainty_margin(gamma: &DMatrix<f64>) -> f64 {
    let n = gamma.nrows() / 2;
    let w = omega(n);
    let h = DMatrix::from_fn(gamma.nrows(), gamma.ncols(), |i, j| Complex::new(gamma[(i, j)], w[(i, j)]));
    SymmetricEigen::new(h).eigenvalues.min()
}
