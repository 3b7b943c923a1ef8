//! Shannon information of squeezed and coherent two-dimensional protocols
//! next to the unidimensional one, at the same total noise.
//!
//! ```bash
//! cargo run --example td_contrast
//! ```

use udqkd::protocol::{noise_budget, ProtocolParams};
use udqkd::td::{td_mi_coherent, td_mi_squeezed, ud_mi_rewritten, TdScenario};

fn main() -> udqkd::Result<()> {
    let chi = noise_budget(&ProtocolParams::reference()).chi_totx;
    println!("chi_tot = {chi:.4}");
    println!("{:>6} {:>10} {:>10} {:>10} {:>10}", "V", "TD sq", "TD coh", "UD r=0.8", "UD r=1.25");
    for v in [1.5, 2.0, 3.0, 5.0, 10.0, 20.0] {
        let s = TdScenario::new(v, chi)?;
        // Unidimensional rates at the same modulation variance V - 1.
        let ud = |r: f64| ud_mi_rewritten((1.0 + r * (v - 1.0)).sqrt(), r, chi);
        println!(
            "{v:>6} {:>10.5} {:>10.5} {:>10.5} {:>10.5}",
            td_mi_squeezed(&s),
            td_mi_coherent(&s),
            ud(0.8),
            ud(1.25)
        );
    }
    Ok(())
}
