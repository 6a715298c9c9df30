//! Exact combinatorics and Monte Carlo statistics for SO(3) quantum
//! invariants of random 3-manifolds.
//!
//! The crate is organized in four layers:
//!
//! - [`tqft`]: integer/double-double combinatorics attached to a level `r`
//!   and genus `g` (label sets, spines, admissible labelings, dimensions,
//!   twist spectra, determinant exponents).
//! - [`rmt`]: Haar sampling on `U(d)`/`SU(d)` and seeded random walks in
//!   fixed generator sets, recording (1,1)-entries or traces of the products.
//! - [`stats`]: the analytic reference laws (entry modulus of a Haar
//!   unitary, standard Rayleigh), empirical distributions, and
//!   Kolmogorov-Smirnov gates.
//! - [`predictor`]: closed-form probability predictions (sharp genus-bound
//!   probabilities, the homology-rank comparison column, surface-bundle
//!   sharpness certificates) carried in log space to survive extreme
//!   underflow.

mod dd;
pub mod predictor;
pub mod rmt;
pub mod stats;
pub mod tqft;
