//! Shannon information of the symmetric (two-dimensional) protocols, used
//! to contrast squeezed and coherent states against the unidimensional case.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TdScenario {
    v: f64,
    chi_tot: f64,
}

impl TdScenario {
    pub fn new(v: f64, chi_tot: f64) -> Result<Self> {
        if !(v >= 1.0) || !v.is_finite() {
            return Err(Error::InvalidParameter {
                field: "v",
                value: v,
                range: "v >= 1",
            });
        }
        if !(chi_tot >= 0.0) || !chi_tot.is_finite() {
            return Err(Error::InvalidParameter {
                field: "chi_tot",
                value: chi_tot,
                range: "chi_tot >= 0",
            });
        }
        Ok(Self { v, chi_tot })
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn chi_tot(&self) -> f64 {
        self.chi_tot
    }
}

/// Squeezed-state protocol: `½ log₂((V + χ)/(1/V + χ))`.
pub fn td_mi_squeezed(s: &TdScenario) -> f64 {
    0.5 * ((s.v + s.chi_tot) / (1.0 / s.v + s.chi_tot)).log2()
}

/// Coherent-state protocol: `½ log₂((V + χ)/(1 + χ))`.
pub fn td_mi_coherent(s: &TdScenario) -> f64 {
    0.5 * ((s.v + s.chi_tot) / (1.0 + s.chi_tot)).log2()
}

/// Unidimensional mutual information in terms of the EPR variance:
/// `½ log₂((V²/r + χ)/(1/r + χ))`.
///
/// At fixed `V` this *decreases* with `r`; at fixed modulation variance
/// (`V² = 1 + r V_M`) it increases with `r`.
pub fn ud_mi_rewritten(v: f64, r: f64, chi_tot: f64) -> f64 {
    let inv_r = 1.0 / r;
    0.5 * ((v * v * inv_r + chi_tot) / (inv_r + chi_tot)).log2()
}
