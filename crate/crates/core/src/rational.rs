//! Exact rational invariant values.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact fraction, always reduced, denominator always positive.
///
/// Printed as `p/q` with `q ≥ 1` even for integers, so that machine output
/// round-trips unambiguously.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numerator: BigInt, denominator: BigInt) -> ExactRational {
        assert!(!denominator.is_zero(), "denominator must be nonzero");
        ExactRational(BigRational::new(numerator, denominator))
    }

    pub fn from_integer(n: u64) -> ExactRational {
        ExactRational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `count / base^exponent`, exactly reduced.
    pub fn normalized(count: &BigUint, base: usize, exponent: usize) -> ExactRational {
        let den = BigUint::from(base).pow(exponent as u32);
        ExactRational(BigRational::new(BigInt::from(count.clone()), BigInt::from(den)))
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn mul(&self, other: &ExactRational) -> ExactRational {
        ExactRational(&self.0 * &other.0)
    }

    pub fn pow(&self, k: i32) -> ExactRational {
        ExactRational(self.0.pow(k))
    }

    pub fn is_integer(&self) -> bool {
        self.0.denom().is_one()
    }

    /// Parses `p/q` or a bare integer.
    pub fn parse(text: &str) -> Option<ExactRational> {
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
            None => (text.trim().parse::<BigInt>().ok()?, BigInt::one()),
        };
        if den.is_zero() || den.is_negative() {
            return None;
        }
        Some(ExactRational::new(num, den))
    }
}

impl std::fmt::Display for ExactRational {
    fn fmt(&self, w: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(w, "{}/{}", self.0.numer(), self.0.denom())
    }
}
