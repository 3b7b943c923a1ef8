//! Homodyning Alice's half of the squeezed EPR pair prepares exactly the
//! displaced squeezed states of the prepare-and-measure scheme.
//!
//! ```bash
//! cargo run --example pm_eb_equivalence
//! ```

use udqkd::gaussian::{condition_on_x_homodyne, epr_state, squeeze_mode};

fn main() -> udqkd::Result<()> {
    println!("{:>5} {:>6} {:>12} {:>12} {:>14} {:>14}", "r", "V_M", "cond x var", "cond y var", "modulation", "(V^2-1)/r");
    for r in [0.5, 0.8, 1.0, 1.26, 2.0] {
        for v_mod in [1.0, 4.0] {
            let v = (1.0_f64 + r * v_mod).sqrt();
            let gas = squeeze_mode(&epr_state(v)?, 1, v, r)?;
            let c = condition_on_x_homodyne(&gas, 0)?;
            // Alice's outcome has variance V and displaces S by gain * x_A.
            let modulation = c.gain[0] * c.gain[0] * gas.cov().get(0, 0);
            println!(
                "{r:>5} {v_mod:>6} {:>12.9} {:>12.9} {modulation:>14.9} {:>14.9}",
                c.cov.get(0, 0),
                c.cov.get(1, 1),
                (v * v - 1.0) / r
            );
        }
    }
    Ok(())
}
