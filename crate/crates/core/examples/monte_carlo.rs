//! Prepare-and-measure Monte Carlo: the empirical second moments against the
//! model, then the key rate recomputed from the estimated phase variance.
//!
//! ```bash
//! cargo run --example monte_carlo -- 2000000 7
//! ```

use udqkd::protocol::ProtocolParams;
use udqkd::security::min_key_rate_at_vy;
use udqkd::sim::{moment_checks, simulate, SimConfig};

fn main() -> udqkd::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: u64 = args.next().map_or(1_000_000, |a| a.parse().expect("pulse count"));
    let seed: u64 = args.next().map_or(1, |a| a.parse().expect("seed"));

    let cfg = SimConfig::symmetric(ProtocolParams::reference(), n, seed);
    let out = simulate(&cfg)?;
    println!("{n} pulses, seed {seed}: {} x-sifted, {} y-sifted", out.n_x_sifted, out.n_y_sifted);
    println!("{:>16} {:>12} {:>12} {:>8}", "moment", "empirical", "model", "z");
    for c in moment_checks(&cfg, &out)? {
        println!("{:>16} {:>12.6} {:>12.6} {:>8.2}", c.name, c.empirical, c.analytic, c.z());
    }

    let e = &out.estimates;
    println!();
    println!("T_x   = {:.5} +/- {:.5} (true {})", e.t_x_hat, e.t_x_se, cfg.params.t_x());
    println!("eps_x = {:.5} +/- {:.5} (true {})", e.eps_x_hat, e.eps_x_se, cfg.params.eps_x());
    println!("V_y   = {:.5} +/- {:.5} (true {:.5})", e.v_y_hat, e.v_y_se, cfg.true_v_y());

    let p = cfg.params.with_t_x(e.t_x_hat)?.with_eps_x(e.eps_x_hat.max(0.0))?;
    match min_key_rate_at_vy(&p, e.v_y_hat) {
        Ok(kp) => println!("key rate from estimates: {:.6} bits/pulse", kp.delta_i),
        Err(err) => println!("estimates fall outside the physical region: {err}"),
    }
    Ok(())
}
