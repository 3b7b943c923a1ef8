//! Key rate of the 1 dB x-squeezed reference scenario, with every
//! intermediate quantity.
//!
//! ```bash
//! cargo run --example reference_keyrate
//! ```

use udqkd::protocol::{ebs_variance, noise_budget, ProtocolParams};
use udqkd::security::{expected_vy, min_key_rate_at_vy, mutual_information, parabola};

fn main() -> udqkd::Result<()> {
    let p = ProtocolParams::reference();
    let nb = noise_budget(&p);
    let pb = parabola(&p);
    let vy = expected_vy(&p);
    let kp = min_key_rate_at_vy(&p, vy)?;

    println!("r = {}, V_M = {}, T_x = {}, eps_x = {}", p.r(), p.v_mod(), p.t_x(), p.eps_x());
    println!("eta = {}, v_el = {}, beta = {}", p.eta(), p.v_el(), p.beta());
    println!();
    println!("EPR variance V        {:.6}", ebs_variance(&p));
    println!("chi_line,x            {:.6}", nb.chi_linex);
    println!("chi_hom               {:.6}", nb.chi_hom);
    println!("chi_tot,x             {:.6}", nb.chi_totx);
    println!("I_AB                  {:.6} bits", mutual_information(&p));
    println!("parabola vertex       V0 = {:.6}, C0 = {:.6}, k = {:.6}", pb.v0, pb.c0, pb.k);
    println!("expected V_y          {vy:.6}");
    println!("worst-case C_y        {:.6}", kp.c_y_at_min);
    println!("Holevo bound          {:.6} bits", kp.chi_be);
    println!("min key rate          {:.6} bits/pulse", kp.delta_i);
    Ok(())
}
