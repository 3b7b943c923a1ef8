//! Secret key rate under collective attacks with reverse reconciliation.
//!
//! The phase-quadrature correlation `C_y^B1` cannot be measured, so for each
//! measured `V_y^B1` the key rate is minimized over every `C_y^B1` compatible
//! with the uncertainty principle. That compatible set is the inside of a
//! parabola in the `(V_y, C_y)` plane; the trajectory of minimizers is the
//! "safe line".
//!
//! Eve's Holevo information is computed from the purification identities
//! `S(E) = S(AB1)` and `S(E | x_B) = S(ARH | x_B)`, so her modes are never
//! constructed explicitly.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{condition_cov_on_x, von_neumann_entropy};
use crate::minimize::grid_then_golden;
use crate::protocol::{
    build_gamma_ab1, build_gamma_abrh, conditional_gamma_arh, ebs_variance, noise_budget, PhaseHypothesis,
    ProtocolParams,
};

/// Grid size of the coarse `C_y` scan.
pub const SCAN_GRID_POINTS: usize = 2001;
/// Golden-section stopping width in `C_y`.
pub const SCAN_TOL: f64 = 1e-9;
/// A minimizer closer than this to an interval end lies on the parabola.
pub const BOUNDARY_TOL: f64 = 1e-6;
/// Slack allowed when checking that a hypothesis is inside the parabola.
pub const HYPOTHESIS_TOL: f64 = 1e-9;
/// Standard single-mode fiber loss.
pub const DEFAULT_ATTEN_DB_PER_KM: f64 = 0.2;

/// Physical region `(C_y − c0)² ≤ k (V_y − v0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Parabola {
    pub c0: f64,
    pub v0: f64,
    pub k: f64,
}

impl Parabola {
    /// `(c − c0)² − k (v − v0)`; non-positive inside the region.
    pub fn excess(&self, v_y: f64, c_y: f64) -> f64 {
        (c_y - self.c0).powi(2) - self.k * (v_y - self.v0)
    }

    pub fn contains(&self, v_y: f64, c_y: f64) -> bool {
        v_y >= self.v0 && self.excess(v_y, c_y) <= 0.0
    }

    /// Closed `C_y` interval allowed at `v_y`.
    pub fn interval(&self, v_y: f64) -> Result<(f64, f64)> {
        if v_y < self.v0 {
            return Err(Error::BelowVertex { v_y, v0: self.v0 });
        }
        let half = (self.k * (v_y - self.v0)).sqrt();
        Ok((self.c0 - half, self.c0 + half))
    }
}

/// Where a hypothesis falls in the `(V_y, C_y)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionClass {
    Unphysical,
    Unsecure,
    Secure,
}

/// One evaluated point, in bits per pulse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KeyRatePoint {
    pub v_y: f64,
    pub i_ab: f64,
    pub chi_be: f64,
    /// `beta * i_ab - chi_be`.
    pub delta_i: f64,
    pub c_y_at_min: f64,
    pub on_boundary: bool,
}

/// Closed-form Shannon information between Alice's and Bob's x data.
pub fn mutual_information(p: &ProtocolParams) -> f64 {
    let chi = noise_budget(p).chi_totx;
    let inv_r = 1.0 / p.r();
    0.5 * ((inv_r + p.v_mod() + chi) / (inv_r + chi)).log2()
}

/// Same quantity via `½ log₂(V_A / V_{A|B})`, conditioning the detected
/// `A`–`B` covariance on Bob's x outcome.
pub fn mutual_information_conditioned(p: &ProtocolParams) -> Result<f64> {
    // x-quadrature entries do not depend on the phase hypothesis.
    let h = PhaseHypothesis::new(1.0, 0.0);
    let ab = build_gamma_abrh(p, &h)?.submatrix_modes(&[0, 1])?;
    let v_a = ab.get(0, 0);
    let v_a_given_b = condition_cov_on_x(&ab, 1)?.cov.get(0, 0);
    Ok(0.5 * (v_a / v_a_given_b).log2())
}

pub fn parabola(p: &ProtocolParams) -> Parabola {
    let v = ebs_variance(p);
    let chi = noise_budget(p).chi_linex;
    let inv_r = 1.0 / p.r();
    let c0 = -((v * v - 1.0) / p.r()).sqrt() / ((p.t_x() * v).sqrt() * (inv_r + chi));
    let v0 = 1.0 / (p.t_x() * (inv_r + chi));
    let k = (v * v - 1.0) / v * (chi / (inv_r + chi));
    Parabola { c0, v0, k }
}

/// Eve's Holevo information `S(AB1) − S(ARH | x_B)` in bits.
pub fn holevo_bound(p: &ProtocolParams, h: &PhaseHypothesis) -> Result<f64> {
    if parabola(p).excess(h.v_y_b1, h.c_y_b1) > HYPOTHESIS_TOL {
        return Err(Error::UnphysicalHypothesis {
            v_y: h.v_y_b1,
            c_y: h.c_y_b1,
        });
    }
    let s_ab1 = von_neumann_entropy(&build_gamma_ab1(p, h))?;
    let s_cond = von_neumann_entropy(&conditional_gamma_arh(p, h)?)?;
    Ok(s_ab1 - s_cond)
}

fn point(p: &ProtocolParams, i_ab: f64, v_y: f64, c_y: f64, chi_be: f64, on_boundary: bool) -> KeyRatePoint {
    KeyRatePoint {
        v_y,
        i_ab,
        chi_be,
        delta_i: p.beta() * i_ab - chi_be,
        c_y_at_min: c_y,
        on_boundary,
    }
}

pub fn key_rate(p: &ProtocolParams, h: &PhaseHypothesis) -> Result<KeyRatePoint> {
    let i_ab = mutual_information(p);
    let chi_be = holevo_bound(p, h)?;
    let on_boundary = match parabola(p).interval(h.v_y_b1) {
        Ok((lo, hi)) => (h.c_y_b1 - lo).abs() <= BOUNDARY_TOL || (h.c_y_b1 - hi).abs() <= BOUNDARY_TOL,
        Err(_) => false,
    };
    Ok(point(p, i_ab, h.v_y_b1, h.c_y_b1, chi_be, on_boundary))
}

pub fn classify(p: &ProtocolParams, h: &PhaseHypothesis) -> Result<RegionClass> {
    if !parabola(p).contains(h.v_y_b1, h.c_y_b1) {
        return Ok(RegionClass::Unphysical);
    }
    Ok(if key_rate(p, h)?.delta_i > 0.0 {
        RegionClass::Secure
    } else {
        RegionClass::Unsecure
    })
}

/// Minimum key rate over all physical `C_y` at fixed `v_y`.
pub fn min_key_rate_at_vy(p: &ProtocolParams, v_y: f64) -> Result<KeyRatePoint> {
    let (lo, hi) = parabola(p).interval(v_y)?;
    let i_ab = mutual_information(p);
    let beta = p.beta();
    let (c_min, _) = grid_then_golden(
        |c| Ok::<_, Error>(beta * i_ab - holevo_bound(p, &PhaseHypothesis::new(v_y, c))?),
        lo,
        hi,
        SCAN_GRID_POINTS,
        SCAN_TOL,
    )?;
    let chi_be = holevo_bound(p, &PhaseHypothesis::new(v_y, c_min))?;
    let on_boundary = (c_min - lo).abs() <= BOUNDARY_TOL || (c_min - hi).abs() <= BOUNDARY_TOL;
    Ok(point(p, i_ab, v_y, c_min, chi_be, on_boundary))
}

/// The safe line over a grid of `V_y` values, in grid order.
pub fn safe_line(p: &ProtocolParams, v_y_grid: &[f64]) -> Result<Vec<KeyRatePoint>> {
    v_y_grid.par_iter().map(|&v| min_key_rate_at_vy(p, v)).collect()
}

/// `V_y^B1` predicted when the phase quadrature sees the same channel,
/// `T_x (r + χ_line)`, with `χ_line` built from `ε_x`.
pub fn expected_vy(p: &ProtocolParams) -> f64 {
    expected_vy_with_eps(p, p.eps_x())
}

/// As [`expected_vy`] with an explicit phase-quadrature excess noise.
pub fn expected_vy_with_eps(p: &ProtocolParams, eps_y: f64) -> f64 {
    let chi_line = (1.0 - p.t_x()) / p.t_x() + eps_y;
    p.t_x() * (p.r() + chi_line)
}

pub fn min_key_rate_expected(p: &ProtocolParams) -> Result<KeyRatePoint> {
    min_key_rate_at_vy(p, expected_vy(p))
}

/// Fiber transmission `10^(−atten · L / 10)`.
pub fn distance_to_transmission(length_km: f64, atten_db_per_km: f64) -> f64 {
    10f64.powf(-atten_db_per_km * length_km / 10.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn reference() -> ProtocolParams {
        ProtocolParams::reference()
    }

    #[test]
    fn mutual_information_examples() {
        assert_eq!(mutual_information(&reference().with_v_mod(0.0).unwrap()), 0.0);
        // 40-digit evaluation
        assert_abs_diff_eq!(mutual_information(&reference()), 0.1097696627208813, epsilon = 1e-13);
        let lossless = ProtocolParams::ideal(1.0, 3.0).unwrap();
        assert_abs_diff_eq!(mutual_information(&lossless), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn mutual_information_routes_agree() {
        for p in [reference(), ProtocolParams::ideal(0.7, 2.0).unwrap()] {
            let a = mutual_information(&p);
            let b = mutual_information_conditioned(&p).unwrap();
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn parabola_reference_values() {
        let pb = parabola(&reference());
        assert_abs_diff_eq!(pb.c0, -0.3834613905739865, epsilon = 1e-13);
        assert_abs_diff_eq!(pb.v0, 1.008156905874805, epsilon = 1e-13);
        assert_abs_diff_eq!(pb.k, 1.445548383718463, epsilon = 1e-13);

        let flat = parabola(&reference().with_v_mod(0.0).unwrap());
        assert_eq!(flat.k, 0.0);
        assert_eq!(flat.c0, 0.0);
        let (lo, hi) = flat.interval(flat.v0 + 0.3).unwrap();
        assert_eq!((lo, hi), (0.0, 0.0));
    }

    #[test]
    fn classification() {
        let p = reference();
        let pb = parabola(&p);
        assert_ne!(classify(&p, &PhaseHypothesis::new(pb.v0, pb.c0)).unwrap(), RegionClass::Unphysical);
        assert_eq!(
            classify(&p, &PhaseHypothesis::new(pb.v0 - 1e-3, pb.c0)).unwrap(),
            RegionClass::Unphysical
        );
        let best = min_key_rate_expected(&p).unwrap();
        assert_eq!(
            classify(&p, &PhaseHypothesis::new(best.v_y, best.c_y_at_min)).unwrap(),
            RegionClass::Secure
        );
        // far up the parabola the key rate is negative
        let far = min_key_rate_at_vy(&p, 1.5).unwrap();
        assert_eq!(
            classify(&p, &PhaseHypothesis::new(far.v_y, far.c_y_at_min)).unwrap(),
            RegionClass::Unsecure
        );
    }

    #[test]
    fn holevo_vanishes_without_a_channel() {
        let (r, vm) = (1.3, 2.5);
        let p = ProtocolParams::ideal(r, vm).unwrap();
        let v = ebs_variance(&p);
        let h = PhaseHypothesis::new(r, -(r * (v * v - 1.0) / v).sqrt());
        assert_abs_diff_eq!(holevo_bound(&p, &h).unwrap(), 0.0, epsilon = 1e-7);
        let pb = parabola(&p);
        assert_abs_diff_eq!(pb.c0, h.c_y_b1, epsilon = 1e-12);
        assert_abs_diff_eq!(pb.v0, r, epsilon = 1e-12);
    }

    #[test]
    fn holevo_rejects_unphysical_hypothesis() {
        let p = reference();
        let pb = parabola(&p);
        let err = holevo_bound(&p, &PhaseHypothesis::new(1.011, pb.c0 + 1.0)).unwrap_err();
        assert!(matches!(err, Error::UnphysicalHypothesis { .. }));
    }

    #[test]
    fn key_rate_composition() {
        let p = reference();
        let pb = parabola(&p);
        let h = PhaseHypothesis::new(1.02, pb.c0);
        let kr = key_rate(&p, &h).unwrap();
        assert_eq!(kr.delta_i, 0.99 * kr.i_ab - kr.chi_be);
        assert!(!kr.on_boundary);
        let zero_beta = key_rate(&p.with_beta(0.0).unwrap(), &h).unwrap();
        assert_eq!(zero_beta.delta_i, -zero_beta.chi_be);
        assert!(zero_beta.delta_i <= 0.0);
    }

    #[test]
    fn vertex_and_degenerate_intervals() {
        let p = reference();
        let pb = parabola(&p);
        let at_vertex = min_key_rate_at_vy(&p, pb.v0).unwrap();
        assert_eq!(at_vertex.c_y_at_min, pb.c0);
        assert!(at_vertex.on_boundary);

        let flat = reference().with_v_mod(0.0).unwrap();
        let v0 = parabola(&flat).v0;
        for dv in [0.0, 0.01, 0.2] {
            let kp = min_key_rate_at_vy(&flat, v0 + dv).unwrap();
            assert_eq!(kp.c_y_at_min, 0.0);
            assert!(kp.delta_i <= 1e-12, "{kp:?}");
        }
        assert!(matches!(
            min_key_rate_at_vy(&p, pb.v0 - 0.01),
            Err(Error::BelowVertex { .. })
        ));
    }

    #[test]
    fn expected_line_examples() {
        let ideal = ProtocolParams::ideal(1.3, 3.0).unwrap();
        assert_abs_diff_eq!(expected_vy(&ideal), 1.3, epsilon = 1e-15);
        assert_abs_diff_eq!(expected_vy(&reference()), 1.011, epsilon = 1e-12);
        assert_abs_diff_eq!(expected_vy(&reference().with_r(1.0).unwrap()), 1.001, epsilon = 1e-12);
        assert_abs_diff_eq!(expected_vy_with_eps(&reference(), 0.0), 1.01, epsilon = 1e-12);
    }

    #[test]
    fn reference_minimum_is_positive_and_local() {
        let p = reference();
        let kp = min_key_rate_expected(&p).unwrap();
        assert!(kp.delta_i > 0.0, "{kp:?}");
        let (lo, hi) = parabola(&p).interval(kp.v_y).unwrap();
        for c in [kp.c_y_at_min - 1e-6, kp.c_y_at_min + 1e-6] {
            if c >= lo && c <= hi {
                let d = key_rate(&p, &PhaseHypothesis::new(kp.v_y, c)).unwrap().delta_i;
                assert!(d >= kp.delta_i - 1e-12);
            }
        }
        assert!(min_key_rate_expected(&p.with_v_mod(0.0).unwrap()).unwrap().delta_i <= 0.0);
    }

    #[test]
    fn safe_line_vertex_grid() {
        let p = reference();
        let pb = parabola(&p);
        let line = safe_line(&p, &[pb.v0]).unwrap();
        assert_eq!(line.len(), 1);
        assert_eq!(line[0].c_y_at_min, pb.c0);
    }

    #[test]
    fn transmission_from_distance() {
        assert_eq!(distance_to_transmission(0.0, 0.2), 1.0);
        assert_abs_diff_eq!(distance_to_transmission(50.0, 0.2), 0.1, epsilon = 1e-15);
        assert_abs_diff_eq!(distance_to_transmission(15.0, 0.2), 0.5011872336272722, epsilon = 1e-15);
    }
}
