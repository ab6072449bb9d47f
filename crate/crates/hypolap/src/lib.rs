//! Algebraic, analytic, and stochastic machinery around Kostant Dirac
//! operators and the hypoelliptic Laplacian on small reductive Lie algebras.
//!
//! The crate is organized around a handful of cooperating layers:
//!
//! * [`lie`] — reductive Lie-algebra data (structure constants, invariant
//!   form, Cartan split, Casimirs, centralizers) plus the built-in presets;
//! * [`clifford`] — matrix realizations of the Clifford algebras
//!   `c(g)`, `ĉ(g)` on the exterior algebra, the spin representation of
//!   `c(p̄)`, the SO(2) rotation `R̂_θ`, and graded traces;
//! * [`algebra`] — an exact normal-ordering engine for
//!   `U(g) ⊗ c(g) ⊗ ĉ(g) ⊗ c(p̄) ⊗ Weyl(Y)` with `dθ`/`db` exterior grades,
//!   used to verify operator-square identities symbolically;
//! * [`dirac`] — concrete operator bundles `D^g`, `D̂^g`, `𝔇_b`, `𝔇_{b,θ}`
//!   and their conjugation/scaling relations;
//! * [`compression`] — Bargmann projection onto the Gaussian ground state
//!   and the Wick-calculus compression identities;
//! * [`kernels`] — Mehler and hypoelliptic heat kernels in closed form;
//! * [`diffusion`] — seeded Monte-Carlo simulation of the associated
//!   diffusions and transport ODEs;
//! * [`eta`] — finite-dimensional eta-transgression functions and
//!   half-power convolutions;
//! * [`orbital`] — the explicit orbital-integral right-hand sides.

pub mod algebra;
pub mod clifford;
pub mod compression;
pub mod diffusion;
pub mod dirac;
pub mod eta;
pub mod kernels;
pub mod lie;
pub mod linalg;
pub mod orbital;
pub mod quad;
pub mod report;
pub mod tol;

mod error;

pub use error::HypolapError;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, HypolapError>;
