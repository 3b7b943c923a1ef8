//! The Gaussian toolkit on its own: build states, mix them on a beam
//! splitter, measure one mode and read off symplectic spectra and entropies.
//!
//! ```bash
//! cargo run --example symplectic_toolkit
//! ```

use udqkd::gaussian::{
    beam_splitter, condition_on_x_homodyne, epr_state, symplectic_eigenvalues, von_neumann_entropy, GaussianState,
};
use udqkd::SymMatrix;

fn main() -> udqkd::Result<()> {
    let epr = epr_state(3.0)?;
    println!("EPR(3): nu = {:?}, S = {:.3e}", symplectic_eigenvalues(epr.cov())?, von_neumann_entropy(epr.cov())?);
    let half = epr.cov().submatrix_modes(&[0])?;
    println!("one half: S = {:.6} bits (thermal V = 3 gives 2)", von_neumann_entropy(&half)?);

    // Send mode 1 through a 50 % beam splitter against a thermal mode.
    let thermal = GaussianState::centered(SymMatrix::diag(&[2.0, 2.0])?)?;
    let mixed = beam_splitter(&epr.tensor(&thermal)?, 1, 2, 0.5)?;
    println!("after mixing: nu = {:?}", symplectic_eigenvalues(mixed.cov())?);
    println!("              S = {:.6} bits", von_neumann_entropy(mixed.cov())?);

    // Homodyne the x quadrature of the transmitted mode.
    let c = condition_on_x_homodyne(&mixed, 1)?;
    println!("conditioned on x_1: nu = {:?}", symplectic_eigenvalues(&c.cov)?);
    println!("                    S = {:.6} bits, gain = {:?}", von_neumann_entropy(&c.cov)?, c.gain);
    Ok(())
}
