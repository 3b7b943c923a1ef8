mod common;

use proptest::prelude::*;
use udqkd::protocol::{build_gamma_ab1, conditional_gamma_arh, PhaseHypothesis, ProtocolParams};
use udqkd::security::{holevo_bound, mutual_information, parabola};

fn params() -> impl Strategy<Value = ProtocolParams> {
    (0.3f64..3.0, 0.5f64..20.0, 0.02f64..0.99, 0.0f64..0.1, 0.3f64..0.95, 0.0f64..0.3)
        .prop_map(|(r, vm, t, e, eta, vel)| ProtocolParams::new(r, vm, t, e, eta, vel, 0.95).unwrap())
}

/// A point inside the physical region: `u` picks `V_y` above the vertex,
/// `s` the position across the allowed `C_y` interval.
fn inside(p: &ProtocolParams, u: f64, s: f64) -> PhaseHypothesis {
    let pb = parabola(p);
    let v_y = pb.v0 + u;
    let half = (pb.k * u).sqrt();
    PhaseHypothesis::new(v_y, pb.c0 + 0.999 * s * half)
}

fn max_abs(a: &udqkd::SymMatrix, b: &nalgebra::DMatrix<f64>) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            m = m.max((a.get(i, j) - b[(i, j)]).abs());
        }
    }
    m
}

#[test]
fn reference_scenario_matrices() {
    let p = ProtocolParams::reference();
    let o = common::Params::from_lib(&p);
    let h = inside(&p, 0.01, 0.3);
    assert!(max_abs(&build_gamma_ab1(&p, &h), &common::gamma_ab1(&o, h.v_y_b1, h.c_y_b1)) < 1e-14);
    let cond = conditional_gamma_arh(&p, &h).unwrap();
    assert!(max_abs(&cond, &common::gamma_arh_given_xb(&o, h.v_y_b1, h.c_y_b1)) < 1e-12);
}

#[test]
fn perfect_detector() {
    let p = ProtocolParams::new(1.0, 4.0, 0.5, 0.02, 1.0, 0.0, 1.0).unwrap();
    let o = common::Params::from_lib(&p);
    let h = inside(&p, 0.05, -0.5);
    let lib = holevo_bound(&p, &h).unwrap();
    let oracle = common::holevo(&o, h.v_y_b1, h.c_y_b1);
    assert!((lib - oracle).abs() < 1e-9, "{lib} vs {oracle}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn holevo_matches_oracle(p in params(), u in 1e-4f64..1.0, s in -1.0f64..1.0) {
        let h = inside(&p, u, s);
        let o = common::Params::from_lib(&p);
        let lib = holevo_bound(&p, &h).unwrap();
        let oracle = common::holevo(&o, h.v_y_b1, h.c_y_b1);
        prop_assert!((lib - oracle).abs() < 1e-9, "{} vs {}", lib, oracle);
    }

    #[test]
    fn mutual_information_matches_oracle(p in params()) {
        let o = common::Params::from_lib(&p);
        prop_assert!((mutual_information(&p) - common::mutual_information(&o)).abs() < 1e-12);
    }
}
