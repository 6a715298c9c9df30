//! The analytic laws this crate tests against.

use serde::{Deserialize, Serialize};

/// Modulus laws on the half line.
///
/// `EntryModulus { dim }` is the law of `|X_d|`, the modulus of one entry of
/// a Haar-distributed `d x d` unitary, with tail `(1 - x^2)^(d-1)` on
/// `[0, 1]`. `Rayleigh` is the standard Rayleigh law with tail `e^(-x^2)`
/// and mean `sqrt(pi)/2` — exactly the modulus of a standard complex
/// Gaussian, which `ComplexGaussianModulus` aliases for callers that want
/// the trace-statistic reading. (Conventions differ in the literature; here
/// "standard Rayleigh" always means the mean-`sqrt(pi)/2` normalization.)
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum AnalyticLaw {
    EntryModulus { dim: u64 },
    Rayleigh,
    ComplexGaussianModulus,
}

impl AnalyticLaw {
    pub fn cdf(&self, x: f64) -> f64 {
        1.0 - self.tail(x)
    }

    pub fn tail(&self, x: f64) -> f64 {
        match *self {
            AnalyticLaw::EntryModulus { dim } => {
                let x = x.clamp(0.0, 1.0);
                ((dim as f64 - 1.0) * (-x * x).ln_1p()).exp()
            }
            AnalyticLaw::Rayleigh | AnalyticLaw::ComplexGaussianModulus => {
                let x = x.max(0.0);
                (-x * x).exp()
            }
        }
    }

    /// Base-10 logarithm of the tail; stays finite far past f64 underflow.
    pub fn log10_tail(&self, x: f64) -> f64 {
        match *self {
            AnalyticLaw::EntryModulus { dim } => {
                let x = x.clamp(0.0, 1.0);
                (dim as f64 - 1.0) * (-x * x).ln_1p() / std::f64::consts::LN_10
            }
            AnalyticLaw::Rayleigh | AnalyticLaw::ComplexGaussianModulus => {
                let x = x.max(0.0);
                -x * x / std::f64::consts::LN_10
            }
        }
    }

    pub fn density(&self, x: f64) -> f64 {
        match *self {
            AnalyticLaw::EntryModulus { dim } => {
                if !(0.0..=1.0).contains(&x) {
                    return 0.0;
                }
                let d = dim as f64;
                (d - 1.0) * 2.0 * x * ((d - 2.0) * (-x * x).ln_1p()).exp()
            }
            AnalyticLaw::Rayleigh | AnalyticLaw::ComplexGaussianModulus => {
                if x < 0.0 {
                    return 0.0;
                }
                2.0 * x * (-x * x).exp()
            }
        }
    }

    pub fn mean(&self) -> f64 {
        match *self {
            AnalyticLaw::EntryModulus { dim } => {
                // int_0^1 (1 - x^2)^(d-1) dx, the Wallis integral.
                let d = dim as f64 - 1.0;
                0.5 * std::f64::consts::PI.sqrt() * (ln_gamma(d + 1.0) - ln_gamma(d + 1.5)).exp()
            }
            AnalyticLaw::Rayleigh | AnalyticLaw::ComplexGaussianModulus => {
                std::f64::consts::PI.sqrt() / 2.0
            }
        }
    }

    /// Quantile function; `u` clamped to `[0, 1)`.
    pub fn inverse_cdf(&self, u: f64) -> f64 {
        let u = u.clamp(0.0, 1.0 - f64::EPSILON);
        match *self {
            AnalyticLaw::EntryModulus { dim } => {
                let t = ((-u).ln_1p() / (dim as f64 - 1.0)).exp();
                (1.0 - t).max(0.0).sqrt()
            }
            AnalyticLaw::Rayleigh | AnalyticLaw::ComplexGaussianModulus => {
                (-(-u).ln_1p()).sqrt()
            }
        }
    }

    pub fn name(&self) -> String {
        match *self {
            AnalyticLaw::EntryModulus { dim } => format!("entry-modulus(d={dim})"),
            AnalyticLaw::Rayleigh => "standard Rayleigh".to_string(),
            AnalyticLaw::ComplexGaussianModulus => "complex-Gaussian modulus".to_string(),
        }
    }
}

/// CDF of `|X_d|`: `1 - (1 - x^2)^(d-1)`, with `x` clamped to `[0, 1]`.
pub fn entry_law_cdf(dim: u64, x: f64) -> f64 {
    AnalyticLaw::EntryModulus { dim }.cdf(x)
}

/// Tail of the standard Rayleigh law, `e^(-x^2)`.
pub fn rayleigh_tail(x: f64) -> f64 {
    AnalyticLaw::Rayleigh.tail(x)
}

/// Lanczos log-gamma, good to ~1e-13 relative on the positive axis.
fn ln_gamma(x: f64) -> f64 {
    const G: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return (std::f64::consts::PI / (std::f64::consts::PI * x).sin()).ln()
            - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = G[0];
    let t = x + 7.5;
    for (i, &g) in G.iter().enumerate().skip(1) {
        a += g / (x + i as f64);
    }
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}
