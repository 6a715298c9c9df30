//! Sorted sample containers with CDF queries.

use super::StatsError;

/// An empirical distribution: samples held sorted ascending, with the
/// right-continuous step CDF `F(x) = #{ i : x_i <= x } / n`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDistribution {
    sorted: Vec<f64>,
}

impl EmpiricalDistribution {
    pub fn from_values(mut values: Vec<f64>) -> Result<Self, StatsError> {
        if values.is_empty() {
            return Err(StatsError::Empty);
        }
        if let Some(&bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(StatsError::NonFiniteSample(bad));
        }
        values.sort_unstable_by(f64::total_cmp);
        Ok(EmpiricalDistribution { sorted: values })
    }

    pub fn n(&self) -> usize {
        self.sorted.len()
    }

    /// Sorted samples, ascending.
    pub fn samples(&self) -> &[f64] {
        &self.sorted
    }

    pub fn cdf(&self, x: f64) -> f64 {
        self.sorted.partition_point(|&s| s <= x) as f64 / self.sorted.len() as f64
    }

    pub fn mean(&self) -> f64 {
        self.sorted.iter().sum::<f64>() / self.sorted.len() as f64
    }

    /// Fraction of samples strictly greater than `x`.
    pub fn tail_fraction(&self, x: f64) -> f64 {
        1.0 - self.cdf(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cdf_is_a_right_continuous_step_function() {
        let emp = EmpiricalDistribution::from_values(vec![2.0, 1.0, 1.0, 3.0]).unwrap();
        assert_eq!(emp.samples(), &[1.0, 1.0, 2.0, 3.0]);
        assert_eq!(emp.cdf(0.5), 0.0);
        assert_eq!(emp.cdf(1.0), 0.5); // right-continuous: counts both 1.0s
        assert_eq!(emp.cdf(1.5), 0.5);
        assert_eq!(emp.cdf(2.0), 0.75);
        assert_eq!(emp.cdf(10.0), 1.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(
            EmpiricalDistribution::from_values(vec![]),
            Err(StatsError::Empty)
        );
        assert!(matches!(
            EmpiricalDistribution::from_values(vec![1.0, f64::NAN]),
            Err(StatsError::NonFiniteSample(_))
        ));
    }

    #[test]
    fn mean_and_tail() {
        let emp = EmpiricalDistribution::from_values(vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        assert_eq!(emp.mean(), 1.5);
        assert_eq!(emp.tail_fraction(1.0), 0.5);
    }
}
