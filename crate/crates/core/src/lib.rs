//! Exact inversion of the Kontsevich integral on the two-strand braid group.
//!
//! Everything here works over arbitrary-precision rationals. The braid
//! group B₂ is infinite cyclic, so its group algebra is the ring of Laurent
//! polynomials in the half twist `q = σ₁` (with `p = q⁻¹`), and the
//! Kontsevich integral sends `qⁿ` to `e^{nt/2}`.
//!
//! The main pieces:
//!
//! - [`braid_ring`]: formal rational sums of braids and the Vassiliev
//!   filtration order.
//! - [`power_series`]: truncated power series, composition and reversion.
//! - [`kontsevich`]: the integral `Z`, its graded parts and residues.
//! - [`inverse_engine`]: weak and strong inverses, the strengthening
//!   iteration, and expansions in the pairs `⟨n⟩ = qⁿ − pⁿ`.
//! - [`regularization`]: Abel values of the divergent alternating sums
//!   (Dirichlet beta at non-positive integers) and Leibniz partial sums.
//! - [`basis_solver`]: moment matrices for basis sequences and their exact
//!   inverses.
//! - [`convergence`]: finite-window biconvergence diagnostics.
//! - [`cli`]: the `braid-inverse` command line tool.

pub mod basis_solver;
pub mod braid_ring;
pub mod cli;
pub mod convergence;
pub mod error;
pub mod inverse_engine;
pub mod kontsevich;
pub mod power_series;
pub mod precision;
pub mod regularization;
pub mod scalar;

pub use braid_ring::{BraidSum, FiltrationOrder};
pub use error::{Error, Result};
pub use power_series::Series;
pub use scalar::Rational;
