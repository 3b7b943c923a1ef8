//! The physical region in the (V_y, C_y) plane and the safe line: for each
//! phase variance, the correlation Eve would pick and the key rate it leaves.
//!
//! ```bash
//! cargo run --example constraint_region
//! ```

use udqkd::protocol::ProtocolParams;
use udqkd::security::{expected_vy, parabola, safe_line};

fn main() -> udqkd::Result<()> {
    let p = ProtocolParams::reference();
    let pb = parabola(&p);
    println!("(C_y - {:.6})^2 <= {:.6} (V_y - {:.6})", pb.c0, pb.k, pb.v0);
    println!("expected line at V_y = {:.6}", expected_vy(&p));
    println!();

    let grid: Vec<f64> = [0.0, 1e-5, 1e-4, 1e-3, 0.003, 0.01, 0.02, 0.05, 0.1, 0.2]
        .iter()
        .map(|d| pb.v0 + d)
        .collect();
    println!("{:>10} {:>10} {:>10} {:>10} {:>10}  where", "V_y", "C_lower", "C_upper", "C_y min", "dI min");
    for (vy, kp) in grid.iter().zip(safe_line(&p, &grid)?) {
        let (lo, hi) = pb.interval(*vy)?;
        let place = if kp.on_boundary { "on parabola" } else { "interior" };
        println!(
            "{vy:>10.6} {lo:>10.6} {hi:>10.6} {:>10.6} {:>10.6}  {place}",
            kp.c_y_at_min, kp.delta_i
        );
    }
    Ok(())
}
