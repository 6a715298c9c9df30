//! Double-double arithmetic: an unevaluated sum of two `f64`s giving a
//! ~106-bit significand. Used where a plain `f64` accumulation could round
//! an exact-integer-valued trigonometric sum past its integrality check.

/// A value represented as `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

/// Error-free sum of two arbitrary floats (Knuth two-sum).
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// Error-free sum assuming `|a| >= |b|`.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

/// Error-free product via fused multiply-add.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    pub fn sub(self, other: Dd) -> Dd {
        self.add(Dd {
            hi: -other.hi,
            lo: -other.lo,
        })
    }

    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul(Dd::from_f64(q1)));
        let q2 = r.hi / other.hi;
        let r = r.sub(other.mul(Dd::from_f64(q2)));
        let q3 = r.hi / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from_f64(q3))
    }

    pub fn recip(self) -> Dd {
        Dd::ONE.div(self)
    }

    /// Nonnegative integer power by binary exponentiation.
    pub fn powi(self, mut n: u32) -> Dd {
        let mut base = self;
        let mut acc = Dd::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            n >>= 1;
        }
        acc
    }
}

/// Pi to double-double precision.
pub const PI: Dd = Dd {
    hi: std::f64::consts::PI,
    lo: 1.224_646_799_147_353_2e-16,
};

/// `sin(pi * j / r)` to double-double precision, for `0 < j < r`. A plain
/// `f64` sine is only good to ~1e-16 relative, which is not enough once the
/// dimension sums reach 1e9 while still having to round to an exact integer.
pub fn sin_pi_ratio(j: u32, r: u32) -> Dd {
    assert!(0 < j && j < r, "argument must lie strictly inside (0, pi)");
    // Reflect into (0, pi/2]: sin(pi - x) = sin(x). Keeps the Taylor series
    // short and free of cancellation.
    let j = j.min(r - j);
    let x = PI.mul(Dd::from_f64(f64::from(j))).div(Dd::from_f64(f64::from(r)));
    let x2 = x.mul(x);
    let mut term = x;
    let mut sum = x;
    let mut k = 1u32;
    loop {
        // term_k = -term_{k-1} * x^2 / ((2k)(2k+1)); the divisor is an exact
        // small integer, so the only rounding is the double-double ops.
        term = term.mul(x2).div(Dd::from_f64(f64::from(2 * k) * f64::from(2 * k + 1)));
        term = Dd {
            hi: -term.hi,
            lo: -term.lo,
        };
        sum = sum.add(term);
        if term.hi.abs() < 1e-35 || k > 30 {
            return sum;
        }
        k += 1;
    }
}
