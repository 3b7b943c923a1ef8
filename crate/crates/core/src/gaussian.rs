//! Gaussian states in shot-noise units.
//!
//! Quadratures are ordered `(x₁, y₁, x₂, y₂, …)` everywhere: mode `k` owns
//! rows and columns `2k` (x) and `2k + 1` (y).

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};
use crate::linalg::{cholesky, congruence, direct_sum, pinv_x_projected, sym_eigvals, Matrix, SymMatrix, MAX_DIM};

/// Symplectic eigenvalues in `[1 - SNAP_TOL, 1)` are treated as exactly 1.
pub const SNAP_TOL: f64 = 1e-9;
/// Symplectic eigenvalues below `1 - UNPHYSICAL_TOL` are a hard error.
pub const UNPHYSICAL_TOL: f64 = 1e-6;
/// Relative tolerance when matching the doubly degenerate eigenvalues.
pub const PAIRING_TOL: f64 = 1e-8;

static CLAMP_WARNINGS: AtomicUsize = AtomicUsize::new(0);

/// Number of times an entropy evaluation clamped a symplectic eigenvalue lying
/// between `1 - UNPHYSICAL_TOL` and `1 - SNAP_TOL`.
pub fn clamp_warning_count() -> usize {
    CLAMP_WARNINGS.load(Ordering::Relaxed)
}

/// The symplectic form `⊕ [[0, 1], [-1, 0]]` on `n_modes` modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OmegaForm {
    pub n_modes: usize,
}

impl OmegaForm {
    pub fn new(n_modes: usize) -> Self {
        Self { n_modes }
    }

    pub fn matrix(&self) -> Result<Matrix> {
        let mut m = Matrix::zeros(2 * self.n_modes)?;
        for k in 0..self.n_modes {
            m.set(2 * k, 2 * k + 1, 1.0);
            m.set(2 * k + 1, 2 * k, -1.0);
        }
        Ok(m)
    }
}

/// Mean vector plus covariance matrix of an `n`-mode Gaussian state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianState {
    n_modes: usize,
    mean: [f64; MAX_DIM],
    cov: SymMatrix,
}

impl GaussianState {
    /// Validates that `cov` is positive definite and satisfies the uncertainty
    /// principle (all symplectic eigenvalues ≥ 1 − 1e-9).
    pub fn new(mean: &[f64], cov: SymMatrix) -> Result<Self> {
        if mean.len() != cov.dim() {
            return Err(Error::Dimension(mean.len()));
        }
        let nu_min = min_symplectic_eigenvalue(&cov)?;
        if nu_min < 1.0 - SNAP_TOL {
            return Err(Error::Unphysical { nu: nu_min });
        }
        Ok(Self::from_parts(mean, cov))
    }

    /// Zero-mean state with the given covariance.
    pub fn centered(cov: SymMatrix) -> Result<Self> {
        let zeros = [0.0; MAX_DIM];
        Self::new(&zeros[..cov.dim()], cov)
    }

    /// Zero-mean state without the physicality check; used for hypothesis
    /// matrices whose physicality is decided elsewhere.
    pub(crate) fn centered_unchecked(cov: SymMatrix) -> Self {
        Self::from_parts(&[0.0; MAX_DIM][..cov.dim()], cov)
    }

    pub fn vacuum(n_modes: usize) -> Result<Self> {
        let cov = SymMatrix::identity(2 * n_modes)?;
        Ok(Self::from_parts(&[0.0; MAX_DIM][..2 * n_modes], cov))
    }

    fn from_parts(mean: &[f64], cov: SymMatrix) -> Self {
        let mut m = [0.0; MAX_DIM];
        m[..mean.len()].copy_from_slice(mean);
        Self {
            n_modes: cov.n_modes(),
            mean: m,
            cov,
        }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean[..2 * self.n_modes]
    }

    pub fn cov(&self) -> &SymMatrix {
        &self.cov
    }

    /// `self ⊗ other`: modes of `other` are appended after those of `self`.
    pub fn tensor(&self, other: &GaussianState) -> Result<GaussianState> {
        let cov = direct_sum(&self.cov, &other.cov)?;
        let mut mean = [0.0; MAX_DIM];
        let (a, b) = (self.mean(), other.mean());
        mean[..a.len()].copy_from_slice(a);
        mean[a.len()..a.len() + b.len()].copy_from_slice(b);
        Ok(Self::from_parts(&mean[..a.len() + b.len()], cov))
    }

    /// Applies the linear map `S` to both moments.
    pub fn transform(&self, s: &Matrix) -> Result<GaussianState> {
        let cov = congruence(s, &self.cov)?;
        let n = self.cov.dim();
        let mut mean = [0.0; MAX_DIM];
        for (i, slot) in mean.iter_mut().enumerate().take(n) {
            *slot = (0..n).map(|k| s.get(i, k) * self.mean[k]).sum();
        }
        Ok(Self::from_parts(&mean[..n], cov))
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.n_modes {
            return Err(Error::InvalidMode {
                index: mode,
                n_modes: self.n_modes,
            });
        }
        Ok(())
    }
}

/// Single-mode covariance `diag(1/r, r)`: `r < 1` is y-squeezed, `r > 1`
/// x-squeezed and `r = 1` the coherent state.
pub fn uniform_state_cov(r: f64) -> Result<SymMatrix> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter {
            field: "r",
            value: r,
            range: "r > 0",
        });
    }
    SymMatrix::diag(&[1.0 / r, r])
}

/// Two-mode squeezed vacuum with variance `v`.
pub fn epr_state(v: f64) -> Result<GaussianState> {
    if !(v >= 1.0) || !v.is_finite() {
        return Err(Error::InvalidParameter {
            field: "V",
            value: v,
            range: "V >= 1",
        });
    }
    let c = (v * v - 1.0).sqrt();
    let cov = SymMatrix::from_rows(&[
        &[v, 0.0, c, 0.0],
        &[0.0, v, 0.0, -c],
        &[c, 0.0, v, 0.0],
        &[0.0, -c, 0.0, v],
    ])?;
    Ok(GaussianState::from_parts(&[0.0; 4], cov))
}

/// Applies the squeezer `diag(√(V/r), 1/√(V/r))` to `mode`.
pub fn squeeze_mode(state: &GaussianState, mode: usize, v: f64, r: f64) -> Result<GaussianState> {
    state.check_mode(mode)?;
    let ratio = v / r;
    if !(ratio > 0.0) || !ratio.is_finite() {
        return Err(Error::InvalidParameter {
            field: "V/r",
            value: ratio,
            range: "V/r > 0",
        });
    }
    let g = ratio.sqrt();
    let mut s = Matrix::identity(state.cov.dim())?;
    s.set(2 * mode, 2 * mode, g);
    s.set(2 * mode + 1, 2 * mode + 1, 1.0 / g);
    state.transform(&s)
}

/// Symplectic matrix of a phase-insensitive beam splitter with transmission
/// `t` acting on modes `i` and `j`:
/// `i' = √t·i + √(1−t)·j`, `j' = −√(1−t)·i + √t·j` for both quadratures.
pub fn beam_splitter_matrix(n_modes: usize, i: usize, j: usize, t: f64) -> Result<Matrix> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidParameter {
            field: "T",
            value: t,
            range: "0 <= T <= 1",
        });
    }
    for m in [i, j] {
        if m >= n_modes {
            return Err(Error::InvalidMode { index: m, n_modes });
        }
    }
    if i == j {
        return Err(Error::InvalidMode { index: j, n_modes });
    }
    let (a, b) = (t.sqrt(), (1.0 - t).sqrt());
    let mut s = Matrix::identity(2 * n_modes)?;
    for q in 0..2 {
        let (pi, pj) = (2 * i + q, 2 * j + q);
        s.set(pi, pi, a);
        s.set(pi, pj, b);
        s.set(pj, pi, -b);
        s.set(pj, pj, a);
    }
    Ok(s)
}

pub fn beam_splitter(state: &GaussianState, mode_i: usize, mode_j: usize, t: f64) -> Result<GaussianState> {
    let s = beam_splitter_matrix(state.n_modes, mode_i, mode_j, t)?;
    state.transform(&s)
}

/// Result of an ideal x-homodyne measurement on one mode.
#[derive(Debug, Clone, PartialEq)]
pub struct HomodyneConditioning {
    /// Covariance of the remaining modes, in their original relative order.
    pub cov: SymMatrix,
    /// Conditional mean displacement per unit of measured (centered) outcome.
    pub gain: Vec<f64>,
}

/// Schur complement of `gamma` on the x quadrature of `measured_mode`.
pub fn condition_cov_on_x(gamma: &SymMatrix, measured_mode: usize) -> Result<HomodyneConditioning> {
    let n = gamma.n_modes();
    if measured_mode >= n {
        return Err(Error::InvalidMode {
            index: measured_mode,
            n_modes: n,
        });
    }
    if n < 2 {
        return Err(Error::Dimension(0));
    }
    // (XγX)^MP has the single entry 1/γ_xx, so the Schur complement is a
    // rank-one update with the x column of the measured mode.
    let p = pinv_x_projected(gamma, measured_mode)?;
    let kx = 2 * measured_mode;
    let inv = p.get(kx, kx);
    let dim = 2 * (n - 1);
    let idx = |k: usize| if k < kx { k } else { k + 2 };
    let cov = SymMatrix::from_upper(dim, |i, j| {
        gamma.get(idx(i), idx(j)) - gamma.get(idx(i), kx) * inv * gamma.get(idx(j), kx)
    })?;
    let gain = (0..dim).map(|i| gamma.get(idx(i), kx) * inv).collect();
    Ok(HomodyneConditioning { cov, gain })
}

/// State-level wrapper around [`condition_cov_on_x`].
pub fn condition_on_x_homodyne(state: &GaussianState, measured_mode: usize) -> Result<HomodyneConditioning> {
    state.check_mode(measured_mode)?;
    condition_cov_on_x(&state.cov, measured_mode)
}

/// Symplectic eigenvalues, descending.
///
/// Computed as square roots of the (doubly degenerate) eigenvalues of the
/// symmetric matrix `γ^{1/2} (Ω γ Ωᵀ) γ^{1/2}`, which equal `ν_k²`. A
/// Cholesky factor `γ = L Lᵀ` gives the similar matrix `Lᵀ Ω γ Ωᵀ L`, so only
/// one eigensolve is needed.
pub fn symplectic_eigenvalues(gamma: &SymMatrix) -> Result<Vec<f64>> {
    let l = cholesky(gamma)?;
    let omega = OmegaForm::new(gamma.n_modes()).matrix()?;
    let rotated = congruence(&omega, gamma)?;
    let m = l.transpose().mul(&rotated.to_matrix())?.mul(&l)?;
    let m = SymMatrix::from_upper(m.dim(), |i, j| 0.5 * (m.get(i, j) + m.get(j, i)))?;
    let values = sym_eigvals(&m)?;
    let mut out = Vec::with_capacity(gamma.n_modes());
    for pair in values.chunks_exact(2) {
        let (a, b) = (pair[0], pair[1]);
        if (a - b).abs() > PAIRING_TOL * a.abs().max(1.0) {
            return Err(Error::PairingFailure { a, b });
        }
        out.push((0.5 * (a + b)).max(0.0).sqrt());
    }
    Ok(out)
}

pub fn min_symplectic_eigenvalue(gamma: &SymMatrix) -> Result<f64> {
    let nus = symplectic_eigenvalues(gamma)?;
    Ok(nus.last().copied().unwrap_or(f64::INFINITY))
}

/// `G(x) = (x+1) log₂(x+1) − x log₂ x`, with `G(0) = 0`.
pub fn entropy_g(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    (x + 1.0) * (x + 1.0).log2() - x * x.log2()
}

/// Von Neumann entropy in bits, `Σ G((ν_k − 1)/2)`.
pub fn von_neumann_entropy(gamma: &SymMatrix) -> Result<f64> {
    let nus = symplectic_eigenvalues(gamma)?;
    let mut s = 0.0;
    for nu in nus {
        if nu < 1.0 - UNPHYSICAL_TOL {
            return Err(Error::Unphysical { nu });
        }
        if nu < 1.0 - SNAP_TOL {
            CLAMP_WARNINGS.fetch_add(1, Ordering::Relaxed);
            log::warn!("clamping symplectic eigenvalue {nu} to 1");
        }
        s += entropy_g((nu.max(1.0) - 1.0) / 2.0);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn uniform_state_examples() {
        assert_eq!(uniform_state_cov(1.0).unwrap(), SymMatrix::identity(2).unwrap());
        let g = uniform_state_cov(1.1).unwrap();
        assert_abs_diff_eq!(g.get(0, 0), 0.909091, epsilon = 1e-6);
        assert_abs_diff_eq!(g.get(1, 1), 1.1, epsilon = 1e-15);
        let s: f64 = 0.5;
        let g = uniform_state_cov((2.0 * s).exp()).unwrap();
        assert_abs_diff_eq!(g.get(0, 0), (-1.0f64).exp(), epsilon = 1e-15);
        assert_abs_diff_eq!(g.get(1, 1), 1.0f64.exp(), epsilon = 1e-15);
        assert!(uniform_state_cov(0.0).is_err());
        assert!(uniform_state_cov(-2.0).is_err());
    }

    #[test]
    fn epr_examples() {
        assert_eq!(*epr_state(1.0).unwrap().cov(), SymMatrix::identity(4).unwrap());
        let e = epr_state(2.0).unwrap();
        assert_abs_diff_eq!(e.cov().get(0, 2), 3f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(e.cov().get(1, 3), -(3f64.sqrt()), epsilon = 1e-15);
        let nus = symplectic_eigenvalues(epr_state(4.3f64.sqrt()).unwrap().cov()).unwrap();
        for nu in nus {
            assert_abs_diff_eq!(nu, 1.0, epsilon = 1e-9);
        }
        assert!(epr_state(0.99).is_err());
    }

    #[test]
    fn identity_squeezer_is_a_no_op() {
        let e = epr_state(2.0).unwrap();
        let s = squeeze_mode(&e, 1, 1.7, 1.7).unwrap();
        assert!(s.cov().max_abs_diff(e.cov()) < 1e-15);
        assert!(squeeze_mode(&e, 2, 1.0, 1.0).is_err());
    }

    #[test]
    fn squeezed_epr_matches_closed_form() {
        let (v, r) = (4.3f64.sqrt(), 1.1);
        let g = *squeeze_mode(&epr_state(v).unwrap(), 1, v, r).unwrap().cov();
        // Oracle values from a 40-digit evaluation of the closed form.
        assert_abs_diff_eq!(g.get(2, 2), 3.909090909090909, epsilon = 1e-12);
        assert_abs_diff_eq!(g.get(3, 3), 1.1, epsilon = 1e-12);
        assert_abs_diff_eq!(g.get(0, 2), 2.494179706035296, epsilon = 1e-12);
        // y correlation −√(r(V²−1)/V): agrees in sign with the printed matrix.
        let y_corr = -(r * (v * v - 1.0) / v).sqrt();
        assert_abs_diff_eq!(g.get(1, 3), y_corr, epsilon = 1e-12);
        assert!(g.get(1, 3) < 0.0);
    }

    #[test]
    fn beam_splitter_limits() {
        let e = epr_state(2.0).unwrap().tensor(&GaussianState::vacuum(1).unwrap()).unwrap();
        let same = beam_splitter(&e, 1, 2, 1.0).unwrap();
        assert!(same.cov().max_abs_diff(e.cov()) < 1e-15);

        let swapped = beam_splitter(&e, 0, 2, 0.0).unwrap();
        // mode 0 now holds the former vacuum, mode 2 the former EPR half (sign flipped)
        assert_abs_diff_eq!(swapped.cov().get(0, 0), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(swapped.cov().get(4, 4), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(swapped.cov().get(4, 2), -(3f64.sqrt()), epsilon = 1e-15);

        let vac = GaussianState::vacuum(2).unwrap();
        for t in [0.0, 0.3, 0.5, 0.9] {
            let out = beam_splitter(&vac, 0, 1, t).unwrap();
            assert!(out.cov().max_abs_diff(vac.cov()) < 1e-15);
        }
        assert!(beam_splitter(&vac, 0, 1, 1.2).is_err());
        assert!(beam_splitter(&vac, 1, 1, 0.5).is_err());
    }

    #[test]
    fn beam_splitter_is_symplectic() {
        let omega = OmegaForm::new(3).matrix().unwrap();
        for t in [0.0, 0.1, 0.5, 0.77, 1.0] {
            let s = beam_splitter_matrix(3, 0, 2, t).unwrap();
            let back = s.mul(&omega).unwrap().mul(&s.transpose()).unwrap();
            assert!(back.max_abs_diff(&omega) < 1e-12);
        }
    }

    #[test]
    fn eb_conditioning_reproduces_pm_state() {
        let (vm, r) = (3.0_f64, 1.1_f64);
        let v = (1.0 + r * vm).sqrt();
        let gas = squeeze_mode(&epr_state(v).unwrap(), 1, v, r).unwrap();
        let c = condition_on_x_homodyne(&gas, 0).unwrap();
        assert!(c.cov.max_abs_diff(&uniform_state_cov(r).unwrap()) < 1e-12);
        assert_abs_diff_eq!(c.gain[0], ((v * v - 1.0) / (r * v)).sqrt(), epsilon = 1e-12);
        assert_eq!(c.gain[1], 0.0);
    }

    #[test]
    fn product_state_conditioning_leaves_rest_unchanged() {
        let a = GaussianState::centered(SymMatrix::diag(&[2.0, 3.0]).unwrap()).unwrap();
        let b = GaussianState::centered(SymMatrix::diag(&[4.0, 0.5]).unwrap()).unwrap();
        let ab = a.tensor(&b).unwrap();
        let c = condition_on_x_homodyne(&ab, 0).unwrap();
        assert_eq!(c.cov, *b.cov());
        assert_eq!(c.gain, vec![0.0, 0.0]);
    }

    #[test]
    fn symplectic_eigenvalue_examples() {
        for n in 1..=4 {
            let nus = symplectic_eigenvalues(&SymMatrix::identity(2 * n).unwrap()).unwrap();
            assert_eq!(nus.len(), n);
            for nu in nus {
                assert_abs_diff_eq!(nu, 1.0, epsilon = 1e-12);
            }
        }
        let nus = symplectic_eigenvalues(&SymMatrix::diag(&[3.0, 3.0]).unwrap()).unwrap();
        assert_abs_diff_eq!(nus[0], 3.0, epsilon = 1e-12);
        let nus = symplectic_eigenvalues(epr_state(2.0).unwrap().cov()).unwrap();
        assert_abs_diff_eq!(nus[0], 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(nus[1], 1.0, epsilon = 1e-9);
        // diag(a, b): ν = √(ab)
        let nus = symplectic_eigenvalues(&SymMatrix::diag(&[2.0, 8.0, 1.0, 9.0]).unwrap()).unwrap();
        assert_abs_diff_eq!(nus[0], 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(nus[1], 3.0, epsilon = 1e-12);
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(von_neumann_entropy(&SymMatrix::identity(2).unwrap()).unwrap(), 0.0);
        assert_abs_diff_eq!(
            von_neumann_entropy(&SymMatrix::diag(&[3.0, 3.0]).unwrap()).unwrap(),
            2.0,
            epsilon = 1e-12
        );
        // 1.5·log₂1.5 + 0.5, evaluated at 40 digits
        assert_abs_diff_eq!(
            von_neumann_entropy(&SymMatrix::diag(&[2.0, 2.0]).unwrap()).unwrap(),
            1.377443751081734,
            epsilon = 1e-12
        );
        assert_eq!(entropy_g(0.0), 0.0);
    }

    #[test]
    fn entropy_rejects_unphysical_states() {
        let g = SymMatrix::diag(&[0.5, 0.5]).unwrap();
        assert!(matches!(von_neumann_entropy(&g), Err(Error::Unphysical { .. })));
        assert!(GaussianState::centered(g).is_err());
    }

    #[test]
    fn entropy_snaps_float_noise() {
        let before = clamp_warning_count();
        let g = SymMatrix::diag(&[1.0 - 1e-11, 1.0]).unwrap();
        assert_eq!(von_neumann_entropy(&g).unwrap(), 0.0);
        assert_eq!(clamp_warning_count(), before);
        let g = SymMatrix::diag(&[1.0 - 1e-7, 1.0]).unwrap();
        assert_eq!(von_neumann_entropy(&g).unwrap(), 0.0);
        assert!(clamp_warning_count() > before);
    }

    #[test]
    fn epr_states_are_pure() {
        for v in [1.0, 1.5, 2.0, 5.0] {
            let s = von_neumann_entropy(epr_state(v).unwrap().cov()).unwrap();
            assert_abs_diff_eq!(s, 0.0, epsilon = 1e-9);
        }
    }

    proptest! {
        #[test]
        fn pm_eb_equivalence_holds(vm in 0.0f64..20.0, r in 0.3f64..3.0) {
            let v = (1.0 + r * vm).sqrt();
            let gas = squeeze_mode(&epr_state(v).unwrap(), 1, v, r).unwrap();
            let c = condition_on_x_homodyne(&gas, 0).unwrap();
            prop_assert!(c.cov.max_abs_diff(&uniform_state_cov(r).unwrap()) < 1e-10 * (1.0 + vm));
            let modulation = c.gain[0] * c.gain[0] * gas.cov().get(0, 0);
            prop_assert!((modulation - vm).abs() < 1e-10 * (1.0 + vm));
            prop_assert!((gas.cov().get(2, 2) - (vm + 1.0 / r)).abs() < 1e-10 * (1.0 + vm));
        }

        #[test]
        fn passive_and_squeezing_maps_preserve_purity(
            v1 in 1.0f64..6.0, v2 in 1.0f64..6.0, t in 0.0f64..1.0, sq in 0.2f64..5.0,
        ) {
            let s = epr_state(v1).unwrap().tensor(&epr_state(v2).unwrap()).unwrap();
            let s = squeeze_mode(&s, 1, sq, 1.0).unwrap();
            let s = beam_splitter(&s, 1, 2, t).unwrap();
            for nu in symplectic_eigenvalues(s.cov()).unwrap() {
                prop_assert!((nu - 1.0).abs() < 1e-8);
            }
        }

        #[test]
        fn reduced_states_stay_physical(v in 1.0f64..8.0, t in 0.0f64..1.0, th in 1.0f64..4.0) {
            let s = epr_state(v).unwrap()
                .tensor(&GaussianState::centered(SymMatrix::diag(&[th, th]).unwrap()).unwrap()).unwrap();
            let s = beam_splitter(&s, 1, 2, t).unwrap();
            for modes in [vec![0usize, 1], vec![1], vec![0, 2]] {
                let sub = s.cov().submatrix_modes(&modes).unwrap();
                prop_assert!(min_symplectic_eigenvalue(&sub).unwrap() >= 1.0 - 1e-9);
            }
            let c = condition_on_x_homodyne(&s, 1).unwrap();
            prop_assert!(min_symplectic_eigenvalue(&c.cov).unwrap() >= 1.0 - 1e-9);
        }
    }
}
