//! One-sample Kolmogorov-Smirnov test against an analytic law.

use serde::{Deserialize, Serialize};

use super::{AnalyticLaw, EmpiricalDistribution, StatsError};

const MIN_SAMPLES: usize = 50;

/// Result of a one-sample KS test. `passed` holds exactly when the statistic
/// is below the asymptotic critical value `c(alpha) / sqrt(n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KsReport {
    pub law: String,
    pub statistic: f64,
    pub n: usize,
    pub alpha: f64,
    pub critical_value: f64,
    pub passed: bool,
}

/// Asymptotic critical value of the KS statistic: `c(alpha)/sqrt(n)` with
/// `c(alpha) = sqrt(-ln(alpha/2)/2)`, giving c(0.05) = 1.358 and
/// c(0.01) = 1.628. All gates in this crate run at n >= 1e4, where the
/// asymptotic constants are accurate; exact small-n tables are not needed.
pub fn ks_critical_value(alpha: f64, n: usize) -> f64 {
    assert!(alpha > 0.0 && alpha < 1.0, "alpha must be in (0, 1)");
    let c = (-(alpha / 2.0).ln() / 2.0).sqrt();
    c / (n as f64).sqrt()
}

/// Exact sup distance between the empirical step CDF and `law`, checking
/// both sides of each step, then a pass/fail verdict at level `alpha`.
pub fn ks_test(
    emp: &EmpiricalDistribution,
    law: &AnalyticLaw,
    alpha: f64,
) -> Result<KsReport, StatsError> {
    if emp.n() < MIN_SAMPLES {
        return Err(StatsError::TooFewSamples {
            minimum: MIN_SAMPLES,
            got: emp.n(),
        });
    }
    let n = emp.n() as f64;
    let mut statistic = 0.0f64;
    for (i, &x) in emp.samples().iter().enumerate() {
        let f = law.cdf(x);
        let below = (f - i as f64 / n).abs();
        let above = ((i + 1) as f64 / n - f).abs();
        statistic = statistic.max(below).max(above);
    }
    let critical_value = ks_critical_value(alpha, emp.n());
    Ok(KsReport {
        law: law.name(),
        statistic,
        n: emp.n(),
        alpha,
        critical_value,
        passed: statistic < critical_value,
    })
}

/// Two-sample sup-CDF distance (no verdict), used for invariance checks
/// where both sides are empirical.
pub fn ks_distance_two_sample(a: &EmpiricalDistribution, b: &EmpiricalDistribution) -> f64 {
    let mut sup = 0.0f64;
    for &x in a.samples().iter().chain(b.samples()) {
        sup = sup.max((a.cdf(x) - b.cdf(x)).abs());
    }
    sup
}
