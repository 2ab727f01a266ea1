//! Exact rational scalars, square roots of rationals, and frequency
//! intervals with exact endpoints.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Arbitrary-precision rational number.
pub type Rat = BigRational;

/// `p/q` as a [`Rat`].
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Integer `n` as a [`Rat`].
pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Nearest double to a rational. Large numerators/denominators round
/// through `BigInt::to_f64`, which never panics.
pub fn rat_to_f64(r: &Rat) -> f64 {
    let n = r.numer().to_f64().unwrap_or(f64::NAN);
    let d = r.denom().to_f64().unwrap_or(f64::NAN);
    if d.is_finite() && n.is_finite() {
        n / d
    } else {
        // Fall back to a shifted division when either side overflows f64.
        let shift = (r.numer().bits().max(r.denom().bits()) as i64 - 900).max(0) as u64;
        let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    }
}

/// The non-negative square root of a non-negative rational, kept exact.
///
/// Comparisons go through the radicand, so endpoint tests like
/// `sqrt(97/33) < sqrt(71/23)` never touch floating point.
#[derive(Clone, PartialEq, Eq)]
pub struct SqrtRat {
    radicand: Rat,
}

impl SqrtRat {
    /// `sqrt(r)`; panics if `r < 0`.
    pub fn new(radicand: Rat) -> Self {
        assert!(
            !radicand.is_negative(),
            "SqrtRat of a negative rational: {radicand}"
        );
        SqrtRat { radicand }
    }

    pub fn from_parts(p: i64, q: i64) -> Self {
        SqrtRat::new(rat(p, q))
    }

    /// The rational under the root.
    pub fn radicand(&self) -> &Rat {
        &self.radicand
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.radicand).sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.radicand.is_zero()
    }
}

impl PartialOrd for SqrtRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SqrtRat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.radicand.cmp(&other.radicand)
    }
}

impl fmt::Debug for SqrtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sqrt({})", self.radicand)
    }
}

impl fmt::Display for SqrtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sqrt({})", self.radicand)
    }
}

/// An open frequency interval `(lo, hi)` with exact endpoints; `hi = None`
/// means unbounded above. Stored in Ω (not Ω²) via [`SqrtRat`].
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaInterval {
    pub lo: SqrtRat,
    pub hi: Option<SqrtRat>,
}

impl OmegaInterval {
    pub fn new(lo: SqrtRat, hi: Option<SqrtRat>) -> Self {
        OmegaInterval { lo, hi }
    }

    /// Empty when the endpoints are out of order or coincide.
    pub fn is_empty(&self) -> bool {
        match &self.hi {
            Some(hi) => self.lo >= *hi,
            None => false,
        }
    }

    pub fn contains_f64(&self, omega: f64) -> bool {
        let lo = self.lo.to_f64();
        match &self.hi {
            Some(hi) => omega > lo && omega < hi.to_f64(),
            None => omega > lo,
        }
    }

    /// Intersection with `(0, omega_max]`, exact. `omega_max` must be a
    /// finite positive double (it converts to a rational exactly).
    pub fn clip_upper(&self, omega_max: f64) -> OmegaInterval {
        if omega_max.is_infinite() {
            return self.clone();
        }
        let max_sq = Rat::from_float(omega_max * omega_max)
            .expect("finite omega_max")
            .max(Rat::zero());
        let cap = SqrtRat::new(max_sq);
        let hi = match &self.hi {
            Some(hi) => Some(hi.clone().min(cap)),
            None => Some(cap),
        };
        OmegaInterval { lo: self.lo.clone(), hi }
    }

    /// Interior sample frequencies, evenly spaced in Ω, for floating checks.
    pub fn sample(&self, count: usize, fallback_hi: f64) -> Vec<f64> {
        let lo = self.lo.to_f64();
        let hi = self.hi.as_ref().map(|h| h.to_f64()).unwrap_or(fallback_hi);
        if !(hi > lo) || count == 0 {
            return Vec::new();
        }
        (1..=count)
            .map(|i| lo + (hi - lo) * i as f64 / (count + 1) as f64)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_compare_is_exact() {
        let a = SqrtRat::from_parts(97, 33);
        let b = SqrtRat::from_parts(71, 23);
        assert!(a < b);
        assert_eq!(a, SqrtRat::from_parts(194, 66));
    }

    #[test]
    fn interval_clipping() {
        let iv = OmegaInterval::new(SqrtRat::from_parts(1, 1), None);
        let clipped = iv.clip_upper(6.0);
        assert_eq!(clipped.hi.unwrap().radicand(), &rat(36, 1));
        assert!(!iv.is_empty());
        let empty = OmegaInterval::new(SqrtRat::from_parts(4, 1), Some(SqrtRat::from_parts(4, 1)));
        assert!(empty.is_empty());
    }

    #[test]
    #[should_panic]
    fn negative_radicand_rejected() {
        SqrtRat::from_parts(-1, 3);
    }
}
