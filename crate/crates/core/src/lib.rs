//! Secret key rates for unidimensional continuous-variable QKD with coherent
//! or squeezed states, under collective attacks and realistic homodyne
//! detection.
//!
//! A signal state has covariance `diag(1/r, r)` in shot-noise units: `r = 1`
//! is a coherent state, `r > 1` an x-squeezed and `r < 1` a y-squeezed state.
//! Alice modulates only the x quadrature with variance `V_M`.
//!
//! Layers, bottom up:
//!
//! - [`linalg`]: small dense symmetric matrices and a Jacobi eigensolver.
//! - [`gaussian`]: Gaussian states, symplectic maps, homodyne conditioning,
//!   symplectic eigenvalues and entropies.
//! - [`protocol`]: the covariance matrices of the entanglement-based picture.
//! - [`security`]: mutual information, Holevo bound, the physical-region
//!   parabola and the minimization over the unknown phase correlation.
//! - [`td`]: two-dimensional protocol formulas for comparison.
//! - [`sim`]: seeded Monte Carlo of the prepare-and-measure scheme.
//! - [`runner`]: scenario files and the figure-data commands.
//!
//! ```
//! use udqkd::protocol::ProtocolParams;
//! use udqkd::security::min_key_rate_expected;
//!
//! let p = ProtocolParams::reference();
//! let kp = min_key_rate_expected(&p).unwrap();
//! assert!(kp.delta_i > 0.0);
//! ```

// Range checks are written `!(x > lo)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod gaussian;
pub mod linalg;
pub mod minimize;
pub mod protocol;
pub mod runner;
pub mod security;
pub mod sim;
pub mod td;

pub use error::{Error, Result};
pub use linalg::SymMatrix;
pub use protocol::{PhaseHypothesis, ProtocolParams};
pub use security::KeyRatePoint;
