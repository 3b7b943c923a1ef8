//! Minimum key rate at the expected line for coherent and squeezed states.
//! Pass a channel transmission to change the operating point.
//!
//! ```bash
//! cargo run --example squeezing_comparison -- 0.3
//! ```

use udqkd::protocol::{ebs_variance, ProtocolParams};
use udqkd::security::min_key_rate_expected;

fn main() -> udqkd::Result<()> {
    let t_x: f64 = std::env::args().nth(1).map_or(0.1, |a| a.parse().expect("T_x must be a number"));
    let base = ProtocolParams::reference().with_t_x(t_x)?;
    println!("T_x = {t_x}");
    println!("{:>6} {:>10} {:>10} {:>10} {:>10}", "r", "dB", "V", "chi_BE", "dI min");
    for r in [0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2, 1.3, 1.4, 1.5] {
        let p = base.with_r(r)?;
        let kp = min_key_rate_expected(&p)?;
        println!(
            "{r:>6} {:>10.3} {:>10.5} {:>10.6} {:>10.6}",
            10.0 * r.log10(),
            ebs_variance(&p),
            kp.chi_be,
            kp.delta_i
        );
    }
    Ok(())
}
