//! Covariance matrices of the entanglement-based picture of the
//! unidimensional protocol, from scenario parameters and a hypothesis on the
//! unmeasured phase-quadrature correlation.
//!
//! Mode labels: `A` is Alice's retained EPR half, `B1` the mode arriving at
//! Bob's detector, `R0`/`H` the detector-noise EPR pair, `B` the mode after
//! the efficiency beam splitter and `R` its other output.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{beam_splitter, condition_cov_on_x, epr_state, GaussianState};
use crate::linalg::{direct_sum, SymMatrix};

/// Full scenario: state, modulation, channel and detector.
///
/// All variances are in shot-noise units. `eps_x` is referred to the channel
/// input.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProtocolParams {
    r: f64,
    v_mod: f64,
    t_x: f64,
    eps_x: f64,
    eta: f64,
    v_el: f64,
    beta: f64,
}

fn param(field: &'static str, value: f64, ok: bool, range: &'static str) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter { field, value, range })
    }
}

impl ProtocolParams {
    pub fn new(r: f64, v_mod: f64, t_x: f64, eps_x: f64, eta: f64, v_el: f64, beta: f64) -> Result<Self> {
        param("r", r, r > 0.0, "r > 0")?;
        param("v_mod", v_mod, v_mod >= 0.0, "v_mod >= 0")?;
        param("t_x", t_x, t_x > 0.0 && t_x <= 1.0, "0 < t_x <= 1")?;
        param("eps_x", eps_x, eps_x >= 0.0, "eps_x >= 0")?;
        param("eta", eta, eta > 0.0 && eta <= 1.0, "0 < eta <= 1")?;
        param("v_el", v_el, v_el >= 0.0, "v_el >= 0")?;
        param("beta", beta, (0.0..=1.0).contains(&beta), "0 <= beta <= 1")?;
        if eta == 1.0 && v_el != 0.0 {
            return Err(Error::InvalidParameter {
                field: "v_el",
                value: v_el,
                range: "v_el = 0 when eta = 1",
            });
        }
        Ok(Self {
            r,
            v_mod,
            t_x,
            eps_x,
            eta,
            v_el,
            beta,
        })
    }

    /// The 1-dB x-squeezed reference scenario: r = 1.1, V_M = 3, T_x = 0.1,
    /// ε_x = 0.01, η = 0.6, v_el = 0.1, β = 0.99.
    pub fn reference() -> Self {
        Self::new(1.1, 3.0, 0.1, 0.01, 0.6, 0.1, 0.99).expect("reference scenario is valid")
    }

    /// Lossless, noiseless channel with ideal detection.
    pub fn ideal(r: f64, v_mod: f64) -> Result<Self> {
        Self::new(r, v_mod, 1.0, 0.0, 1.0, 0.0, 1.0)
    }

    pub fn r(&self) -> f64 {
        self.r
    }
    pub fn v_mod(&self) -> f64 {
        self.v_mod
    }
    pub fn t_x(&self) -> f64 {
        self.t_x
    }
    pub fn eps_x(&self) -> f64 {
        self.eps_x
    }
    pub fn eta(&self) -> f64 {
        self.eta
    }
    pub fn v_el(&self) -> f64 {
        self.v_el
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn with_r(self, r: f64) -> Result<Self> {
        Self::new(r, self.v_mod, self.t_x, self.eps_x, self.eta, self.v_el, self.beta)
    }
    pub fn with_v_mod(self, v_mod: f64) -> Result<Self> {
        Self::new(self.r, v_mod, self.t_x, self.eps_x, self.eta, self.v_el, self.beta)
    }
    pub fn with_t_x(self, t_x: f64) -> Result<Self> {
        Self::new(self.r, self.v_mod, t_x, self.eps_x, self.eta, self.v_el, self.beta)
    }
    pub fn with_eps_x(self, eps_x: f64) -> Result<Self> {
        Self::new(self.r, self.v_mod, self.t_x, eps_x, self.eta, self.v_el, self.beta)
    }
    pub fn with_detector(self, eta: f64, v_el: f64) -> Result<Self> {
        Self::new(self.r, self.v_mod, self.t_x, self.eps_x, eta, v_el, self.beta)
    }
    pub fn with_beta(self, beta: f64) -> Result<Self> {
        Self::new(self.r, self.v_mod, self.t_x, self.eps_x, self.eta, self.v_el, beta)
    }
}

/// Hypothesis on Bob's phase-quadrature variance `V_y^B1` and the unknown
/// correlation `C_y^B1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseHypothesis {
    pub v_y_b1: f64,
    pub c_y_b1: f64,
}

impl PhaseHypothesis {
    pub fn new(v_y_b1: f64, c_y_b1: f64) -> Self {
        Self { v_y_b1, c_y_b1 }
    }
}

/// Added noise terms, referred to the channel input (`chi_linex`, `chi_totx`)
/// or to Bob's input (`chi_hom`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseBudget {
    pub chi_linex: f64,
    pub chi_hom: f64,
    pub chi_totx: f64,
}

pub fn noise_budget(p: &ProtocolParams) -> NoiseBudget {
    let chi_linex = (1.0 - p.t_x) / p.t_x + p.eps_x;
    let chi_hom = (1.0 + p.v_el) / p.eta - 1.0;
    NoiseBudget {
        chi_linex,
        chi_hom,
        chi_totx: chi_linex + chi_hom / p.t_x,
    }
}

/// EPR variance of the equivalent entanglement-based source, `√(1 + r V_M)`.
pub fn ebs_variance(p: &ProtocolParams) -> f64 {
    (1.0 + p.r * p.v_mod).sqrt()
}

/// Covariance of `A` and `B1` after the channel.
pub fn build_gamma_ab1(p: &ProtocolParams, h: &PhaseHypothesis) -> SymMatrix {
    let v = ebs_variance(p);
    let chi = noise_budget(p).chi_linex;
    let c_x = (p.t_x * p.v_mod).sqrt() * v.sqrt();
    let b_x = p.t_x * (p.v_mod + 1.0 / p.r + chi);
    SymMatrix::from_rows(&[
        &[v, 0.0, c_x, 0.0],
        &[0.0, v, 0.0, h.c_y_b1],
        &[c_x, 0.0, b_x, 0.0],
        &[0.0, h.c_y_b1, 0.0, h.v_y_b1],
    ])
    .expect("4x4 is a valid dimension")
}

/// EPR pair `R0`–`H` modelling electronic noise, with
/// `V_N = 1 + v_el / (1 − η)`. Two vacua for a perfect detector.
pub fn detector_ancilla(p: &ProtocolParams) -> Result<GaussianState> {
    if p.eta == 1.0 {
        if p.v_el != 0.0 {
            return Err(Error::InvalidParameter {
                field: "v_el",
                value: p.v_el,
                range: "v_el = 0 when eta = 1",
            });
        }
        return GaussianState::vacuum(2);
    }
    epr_state(1.0 + p.v_el / (1.0 - p.eta))
}

/// `(γ_AB1 ⊕ γ_R0H)` through the detector beam splitter on `B1`, `R0`.
/// Mode order of the result: `A, B, R, H`.
pub fn build_gamma_abrh(p: &ProtocolParams, h: &PhaseHypothesis) -> Result<SymMatrix> {
    let ab1 = build_gamma_ab1(p, h);
    let ancilla = detector_ancilla(p)?;
    let joint = GaussianState::centered_unchecked(direct_sum(&ab1, ancilla.cov())?);
    let out = beam_splitter(&joint, 1, 2, p.eta)?;
    Ok(*out.cov())
}

/// Reorders modes: output mode `i` is input mode `perm[i]`.
pub fn reorder_modes(gamma: &SymMatrix, perm: &[usize]) -> Result<SymMatrix> {
    let n = gamma.n_modes();
    let mut seen = [false; 4];
    let valid = perm.len() == n
        && perm.iter().all(|&m| {
            m < n && !std::mem::replace(&mut seen[m], true)
        });
    if !valid {
        return Err(Error::InvalidPermutation(perm.to_vec()));
    }
    gamma.submatrix_modes(perm)
}

/// Inverse of a mode permutation.
pub fn inverse_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &m) in perm.iter().enumerate() {
        inv[m] = i;
    }
    inv
}

/// `A, B, R, H` → `A, R, H, B`.
pub const ABRH_TO_ARHB: [usize; 4] = [0, 2, 3, 1];

/// `γ_ARH` conditioned on Bob's x-homodyne outcome.
pub fn conditional_gamma_arh(p: &ProtocolParams, h: &PhaseHypothesis) -> Result<SymMatrix> {
    let abrh = build_gamma_abrh(p, h)?;
    let arhb = reorder_modes(&abrh, &ABRH_TO_ARHB)?;
    Ok(condition_cov_on_x(&arhb, 3)?.cov)
}
