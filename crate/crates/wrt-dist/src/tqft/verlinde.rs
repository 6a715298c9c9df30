//! Hilbert-space dimensions: the trigonometric dimension formula and the
//! ratio `d_g / mu^(2-2g)`.

use crate::dd::Dd;

use super::{Level, TqftError};

/// The dimension formula is exact-integer-valued but trigonometric, so the
/// sum is accumulated in double-double precision and must land within this
/// distance of an integer; a larger residue means a precision bug and is
/// reported as an error rather than rounded over.
const INTEGRALITY_TOL: f64 = 1e-6;

impl Level {
    /// Dimension of the Hilbert space at this level for a genus-`g` surface:
    /// `(1/2^g) (r/2)^(g-1) * sum_{j=1}^{r-1} sin(pi j / r)^(2-2g)`,
    /// rounded to the nearest integer after a double-double evaluation.
    pub fn verlinde_dimension(&self, genus: u32) -> Result<u64, TqftError> {
        if genus == 0 {
            return Err(TqftError::InvalidGenus(0));
        }
        let r = self.r();
        let rf = f64::from(r);
        let neg_exp = 2 * genus - 2; // sin exponent is 2 - 2g <= 0
        // Terms come in equal pairs j <-> r-j (r is odd), so sum one half
        // and double; the doubling is exact.
        let mut half = Dd::ZERO;
        for j in 1..=(r - 1) / 2 {
            half = half.add(crate::dd::sin_pi_ratio(j, r).powi(neg_exp).recip());
        }
        let sum = half.mul(Dd::from_f64(2.0));
        // (r/2)^(g-1) / 2^g; r/2 is exactly representable for odd r.
        let prefactor = Dd::from_f64(rf / 2.0)
            .powi(genus - 1)
            .mul(Dd::from_f64(0.5).powi(genus));
        let dim = prefactor.mul(sum);
        let value = dim.to_f64();
        let rounded = value.round();
        let distance = dim.sub(Dd::from_f64(rounded)).to_f64().abs();
        if !(distance <= INTEGRALITY_TOL) || rounded < 1.0 {
            return Err(TqftError::NonIntegerVerlinde {
                value,
                distance,
                tolerance: INTEGRALITY_TOL,
            });
        }
        Ok(rounded as u64)
    }

    /// `d_g / mu^(2-2g)` evaluated through its closed series
    /// `(1/2) (2 + sum_{j=2}^{r-2} a_j^(2g-2))` with
    /// `a_j = sin(pi/r) / sin(pi j/r)`. Exceeds 1 for every genus and
    /// converges to 1 exponentially fast as `g` grows.
    pub fn dim_mu_ratio(&self, genus: u32) -> Result<f64, TqftError> {
        if genus == 0 {
            return Err(TqftError::InvalidGenus(0));
        }
        let r = self.r();
        let rf = f64::from(r);
        let s1 = (std::f64::consts::PI / rf).sin();
        let exponent = (2 * genus - 2) as i32;
        let sum: f64 = (2..=(r - 2))
            .map(|j| (s1 / (std::f64::consts::PI * f64::from(j) / rf).sin()).powi(exponent))
            .sum();
        Ok(0.5 * (2.0 + sum))
    }
}
