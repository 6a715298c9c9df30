//! Analytic reference laws, empirical distributions, and goodness-of-fit
//! gates.

mod convergence;
mod empirical;
mod ks;
mod laws;

pub use convergence::{convergence_of_entry_law, scaled_entry_tail, ConvergenceRow};
pub use empirical::EmpiricalDistribution;
pub use ks::{ks_critical_value, ks_distance_two_sample, ks_test, KsReport};
pub use laws::{entry_law_cdf, rayleigh_tail, AnalyticLaw};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("need at least {minimum} samples, got {got}")]
    TooFewSamples { minimum: usize, got: usize },
    #[error("samples must be finite, got {0}")]
    NonFiniteSample(f64),
    #[error("empty sample set")]
    Empty,
}
