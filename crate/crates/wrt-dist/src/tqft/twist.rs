//! Dehn-twist eigenvalue exponents and determinant exponents of the twist
//! action.

use serde::{Deserialize, Serialize};

use super::{enumerate_admissible, Level, TqftError, TrivalentSpine};

/// Determinant exponent of a non-separating Dehn twist. For genus 1 and 2
/// the exponent sum `e` is computed both by brute force over the eigenvalue
/// spectrum and by closed form (the two must agree exactly); the determinant
/// is 1 precisely when `4r` divides `e`. From genus 3 on the determinant is
/// identically 1 and no exponent applies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetExponentReport {
    pub r: u32,
    pub genus: u32,
    pub e: Option<u64>,
    pub divisible_by_4r: Option<bool>,
    pub det_is_one: bool,
}

impl Level {
    /// Exponent of the twist eigenvalue `A^(a^2 + 2a)` on a basis vector
    /// whose dual edge carries label `a`. Exact integer arithmetic; always
    /// divisible by 4 since `a` is even.
    pub fn twist_exponent(&self, a: u16) -> Result<u64, TqftError> {
        if !self.labels().contains(a) {
            return Err(TqftError::LabelOutOfRange {
                r: self.r(),
                label: a,
            });
        }
        let a = u64::from(a);
        Ok(a * a + 2 * a)
    }

    /// Number of ordered admissible theta-graph triples whose first
    /// coordinate is `a`: `(a+1)(r-1-a)/2`.
    pub fn admissible_triples_containing(&self, a: u16) -> Result<u64, TqftError> {
        if !self.labels().contains(a) {
            return Err(TqftError::LabelOutOfRange {
                r: self.r(),
                label: a,
            });
        }
        let a = u64::from(a);
        let r = u64::from(self.r());
        Ok((a + 1) * (r - 1 - a) / 2)
    }

    /// Determinant exponent report for the twist action at the given genus.
    pub fn det_exponent(&self, genus: u32) -> Result<DetExponentReport, TqftError> {
        let r = u64::from(self.r());
        match genus {
            0 => Err(TqftError::InvalidGenus(0)),
            1 => {
                let brute: u64 = self
                    .labels()
                    .iter()
                    .map(|a| self.twist_exponent(a).expect("label from own set"))
                    .sum();
                let closed = (r - 3) * (r - 1) * (r + 1) / 6;
                assert_eq!(brute, closed, "genus-1 exponent sum disagrees");
                Ok(self.report(genus, brute))
            }
            2 => {
                let theta = TrivalentSpine::canonical(2).expect("theta graph");
                let brute: u64 = enumerate_admissible(self, &theta)
                    .iter()
                    .map(|labeling| {
                        self.twist_exponent(labeling.labels()[0])
                            .expect("admissible label")
                    })
                    .sum();
                let k = (r - 3) / 2;
                let closed = r * k * (k + 1) * (k + 2) * (k + 3) / 5;
                assert_eq!(brute, closed, "genus-2 exponent sum disagrees");
                Ok(self.report(genus, brute))
            }
            g => Ok(DetExponentReport {
                r: self.r(),
                genus: g,
                e: None,
                divisible_by_4r: None,
                det_is_one: true,
            }),
        }
    }

    fn report(&self, genus: u32, e: u64) -> DetExponentReport {
        let divisible = e % self.root_order() == 0;
        DetExponentReport {
            r: self.r(),
            genus,
            e: Some(e),
            divisible_by_4r: Some(divisible),
            det_is_one: divisible,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn level(r: u32) -> Level {
        Level::new(r).unwrap()
    }

    #[test]
    fn twist_exponent_values() {
        let lv = level(7);
        assert_eq!(lv.twist_exponent(0).unwrap(), 0);
        assert_eq!(lv.twist_exponent(2).unwrap(), 8);
        assert_eq!(lv.twist_exponent(4).unwrap(), 24);
        assert_eq!(
            lv.twist_exponent(6),
            Err(TqftError::LabelOutOfRange { r: 7, label: 6 })
        );
        assert_eq!(
            lv.twist_exponent(3),
            Err(TqftError::LabelOutOfRange { r: 7, label: 3 })
        );
    }

    #[test]
    fn twist_exponents_are_multiples_of_four() {
        let lv = level(31);
        for a in lv.labels().iter() {
            assert_eq!(lv.twist_exponent(a).unwrap() % 4, 0);
        }
    }

    #[test]
    fn triples_containing_matches_enumeration() {
        for r in [5, 7, 9, 11, 13] {
            let lv = level(r);
            let theta = TrivalentSpine::canonical(2).unwrap();
            let all = enumerate_admissible(&lv, &theta);
            for a in lv.labels().iter() {
                let by_enumeration = all
                    .iter()
                    .filter(|labeling| labeling.labels()[0] == a)
                    .count() as u64;
                assert_eq!(
                    lv.admissible_triples_containing(a).unwrap(),
                    by_enumeration,
                    "r = {r}, a = {a}"
                );
            }
        }
    }

    #[test]
    fn triples_containing_known_values() {
        assert_eq!(level(5).admissible_triples_containing(0).unwrap(), 2);
        assert_eq!(level(5).admissible_triples_containing(2).unwrap(), 3);
        assert_eq!(level(7).admissible_triples_containing(4).unwrap(), 5);
    }

    #[test]
    fn per_label_counts_sum_to_genus_two_dimension() {
        // Each ordered triple is counted once by its first coordinate.
        for r in [5, 7, 9, 11, 13] {
            let lv = level(r);
            let total: u64 = lv
                .labels()
                .iter()
                .map(|a| lv.admissible_triples_containing(a).unwrap())
                .sum();
            assert_eq!(total, lv.verlinde_dimension(2).unwrap(), "r = {r}");
        }
    }

    #[test]
    fn det_exponent_genus_one_r5() {
        let report = level(5).det_exponent(1).unwrap();
        assert_eq!(report.e, Some(8));
        assert_eq!(report.divisible_by_4r, Some(false));
        assert!(!report.det_is_one);
    }

    #[test]
    fn det_exponent_genus_two_values() {
        let report = level(5).det_exponent(2).unwrap();
        assert_eq!(report.e, Some(24));
        assert!(!report.det_is_one); // exceptional case r = 0 mod 5

        let report = level(7).det_exponent(2).unwrap();
        assert_eq!(report.e, Some(168));
        assert_eq!(report.divisible_by_4r, Some(true));
        assert!(report.det_is_one);
    }

    #[test]
    fn det_exponent_high_genus_is_constant_true() {
        let report = level(11).det_exponent(3).unwrap();
        assert_eq!(report.e, None);
        assert_eq!(report.divisible_by_4r, None);
        assert!(report.det_is_one);
        assert!(level(11).det_exponent(7).unwrap().det_is_one);
    }

    #[test]
    fn genus_zero_is_rejected() {
        assert_eq!(level(5).det_exponent(0), Err(TqftError::InvalidGenus(0)));
    }

    #[test]
    fn divisibility_pattern_over_odd_levels() {
        for r in (5u32..=31).step_by(2) {
            let lv = level(r);
            let g1 = lv.det_exponent(1).unwrap();
            assert_eq!(g1.e.unwrap() % 4, 0, "genus-1 exponent lands in <A^4>");
            let g2 = lv.det_exponent(2).unwrap();
            if r % 5 == 0 {
                assert_eq!(g2.e.unwrap() % 4, 0, "exceptional case lands in <A^4>");
                assert!(!g2.det_is_one, "r = {r}");
            } else {
                assert!(g2.det_is_one, "4r must divide e when 5 does not divide r = {r}");
            }
        }
    }
}
