//! Exact combinatorics attached to a level `r` and a genus `g`: even label
//! sets, trivalent handlebody spines, admissible labelings, Hilbert-space
//! dimensions, Dehn-twist spectra and determinant exponents.
//!
//! Everything in this module is integer or double-double arithmetic; no
//! complex floating point. Roots of unity are carried as integer exponents
//! modulo `4r` against the primitive root `zeta = exp(2*pi*i/4r)`.

mod labeling;
mod spine;
mod twist;
mod verlinde;

pub use labeling::{
    count_admissible, count_admissible_canonical, enumerate_admissible, AdmissibleLabeling,
};
pub use spine::{SpineEdge, TrivalentSpine};
pub use twist::DetExponentReport;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum TqftError {
    #[error("level must be an odd integer >= 5, got {0}")]
    InvalidLevel(u32),
    #[error("genus must be >= 1, got {0}")]
    InvalidGenus(u32),
    #[error("label {label} is not an even label of level {r} (valid: 0, 2, .., {})", r - 3)]
    LabelOutOfRange { r: u32, label: u16 },
    #[error(
        "Verlinde sum {value} is {distance:.3e} from the nearest integer \
         (tolerance {tolerance:.0e}); this signals a precision bug"
    )]
    NonIntegerVerlinde {
        value: f64,
        distance: f64,
        tolerance: f64,
    },
    #[error("not a valid genus-{genus} trivalent spine: {reason}")]
    InvalidSpine { genus: u32, reason: String },
}

/// A TQFT level: an odd integer `r >= 5` together with its derived
/// constants. The twist eigenvalue base `A = i * exp(2*pi*i/4r)` is kept as
/// the exact exponent `r + 1` of the primitive `4r`-th root of unity, and
/// `mu = (2/sqrt(r)) * sin(pi/r)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    r: u32,
    is_prime: bool,
    mu: f64,
}

impl Level {
    pub fn new(r: u32) -> Result<Self, TqftError> {
        if r < 5 || r % 2 == 0 {
            return Err(TqftError::InvalidLevel(r));
        }
        let rf = f64::from(r);
        let mu = 2.0 / rf.sqrt() * (std::f64::consts::PI / rf).sin();
        Ok(Level {
            r,
            is_prime: is_prime(r),
            mu,
        })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `mu = (2/sqrt(r)) sin(pi/r)`; satisfies `0 < mu < 1` for all `r >= 5`.
    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn is_prime(&self) -> bool {
        self.is_prime
    }

    /// Exponent of `A` itself against `zeta = exp(2*pi*i/4r)`:
    /// `A = i * zeta = zeta^(r+1)`.
    pub fn a_exponent_base(&self) -> u64 {
        (u64::from(self.r) + 1) % self.root_order()
    }

    /// Order of the ambient root-of-unity group, `4r`.
    pub fn root_order(&self) -> u64 {
        4 * u64::from(self.r)
    }

    /// Exponent of `A^k` against `zeta`, reduced mod `4r`. Exact integer
    /// arithmetic; `a_power(4r) == 0` encodes `A^(4r) = 1`.
    pub fn a_power(&self, k: u64) -> u64 {
        let m = self.root_order();
        (self.a_exponent_base() % m) * (k % m) % m
    }

    pub fn labels(&self) -> LabelSet {
        LabelSet { r: self.r }
    }

    /// Vertex admissibility for a label triple `(a, b, c)` counted with
    /// multiplicity for loops: the three triangle inequalities plus the sum
    /// bound `a + b + c <= 2(r - 2)`.
    pub fn admissible_triple(&self, a: u16, b: u16, c: u16) -> bool {
        let (a, b, c) = (u32::from(a), u32::from(b), u32::from(c));
        a + b + c <= 2 * (self.r - 2) && b + c >= a && a + c >= b && a + b >= c
    }
}

/// The even labels `{0, 2, 4, .., r-3}` of a level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabelSet {
    r: u32,
}

impl LabelSet {
    /// Number of labels, `(r-1)/2`.
    pub fn len(&self) -> usize {
        ((self.r - 1) / 2) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn max_label(&self) -> u16 {
        (self.r - 3) as u16
    }

    pub fn contains(&self, a: u16) -> bool {
        a % 2 == 0 && a <= self.max_label()
    }

    pub fn iter(&self) -> impl Iterator<Item = u16> {
        (0..=self.max_label()).step_by(2)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
