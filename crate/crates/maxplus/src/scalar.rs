//! Scalars of the max-plus semiring (R ∪ {-inf}, ⊕ = max, ⊗ = +).
//!
//! The semiring zero is -inf and the unit is 0. NaN and +inf are rejected
//! at construction, so comparisons are total and arithmetic never produces
//! platform surprises: -inf ⊗ x = -inf is enforced by an explicit branch
//! rather than by IEEE infinity rules.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{MpError, Result};

/// One element of the max-plus semiring: a finite real or -inf.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MpScalar(f64);

/// Default tolerance for the equality tests the analysis layer performs
/// between computed path weights (criticality detection, argmax sets).
/// Plain arithmetic is always exact.
pub const DEFAULT_EPS: f64 = 1e-9;

impl MpScalar {
    /// The semiring zero, -inf. Annihilates ⊗ and is neutral for ⊕.
    pub const ZERO: MpScalar = MpScalar(f64::NEG_INFINITY);

    /// The semiring unit, 0.
    pub const UNIT: MpScalar = MpScalar(0.0);

    /// Wraps a finite value or -inf; rejects NaN and +inf.
    pub fn new(value: f64) -> Result<MpScalar> {
        if value.is_nan() || value == f64::INFINITY {
            Err(MpError::InvalidScalar(value))
        } else {
            Ok(MpScalar(value))
        }
    }

    /// Wraps a value that is known to be finite.
    ///
    /// Panics on NaN or +inf; used for literals and for arithmetic whose
    /// operands were already validated.
    pub fn finite(value: f64) -> MpScalar {
        assert!(
            value.is_finite(),
            "MpScalar::finite called with {value}"
        );
        MpScalar(value)
    }

    /// The underlying extended real.
    pub fn value(self) -> f64 {
        self.0
    }

    /// True for the semiring zero -inf.
    pub fn is_zero(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    /// The finite value, or None for -inf.
    pub fn as_finite(self) -> Option<f64> {
        if self.is_zero() {
            None
        } else {
            Some(self.0)
        }
    }

    /// Semiring addition: a ⊕ b = max(a, b).
    pub fn oplus(self, rhs: MpScalar) -> MpScalar {
        if self.0 >= rhs.0 {
            self
        } else {
            rhs
        }
    }

    /// Semiring multiplication: a ⊗ b = a + b, with -inf annihilating.
    pub fn otimes(self, rhs: MpScalar) -> MpScalar {
        if self.is_zero() || rhs.is_zero() {
            MpScalar::ZERO
        } else {
            MpScalar(self.0 + rhs.0)
        }
    }

    /// Scales by a finite offset: a ⊗ c for finite c, keeping -inf fixed.
    pub fn shift(self, offset: f64) -> MpScalar {
        debug_assert!(offset.is_finite());
        if self.is_zero() {
            self
        } else {
            MpScalar(self.0 + offset)
        }
    }

    /// |a - b| <= eps, with -inf equal only to itself.
    pub fn approx_eq(self, rhs: MpScalar, eps: f64) -> bool {
        match (self.is_zero(), rhs.is_zero()) {
            (true, true) => true,
            (false, false) => (self.0 - rhs.0).abs() <= eps,
            _ => false,
        }
    }

    /// Image under the exp isomorphism onto the max-times semiring.
    pub fn to_maxtimes(self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            self.0.exp()
        }
    }

    /// Preimage of a nonnegative max-times value under exp (i.e. ln),
    /// mapping 0 to -inf.
    pub fn from_maxtimes(value: f64) -> Result<MpScalar> {
        if value.is_nan() || value == f64::INFINITY {
            return Err(MpError::InvalidScalar(value));
        }
        if value < 0.0 {
            return Err(MpError::NegativeEntry(value));
        }
        if value == 0.0 {
            Ok(MpScalar::ZERO)
        } else {
            Ok(MpScalar(value.ln()))
        }
    }
}

impl Eq for MpScalar {}

impl Ord for MpScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        // NaN is unrepresentable, so total_cmp agrees with the usual order.
        self.0.total_cmp(&other.0)
    }
}

impl PartialOrd for MpScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "-inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_annihilates_and_is_neutral() {
        let x = MpScalar::finite(-3.5);
        assert_eq!(MpScalar::ZERO.otimes(x), MpScalar::ZERO);
        assert_eq!(x.otimes(MpScalar::ZERO), MpScalar::ZERO);
        assert_eq!(MpScalar::ZERO.oplus(x), x);
        assert_eq!(x.oplus(MpScalar::ZERO), x);
        assert_eq!(MpScalar::ZERO.otimes(MpScalar::ZERO), MpScalar::ZERO);
    }

    #[test]
    fn unit_is_neutral_for_otimes() {
        let x = MpScalar::finite(2.0);
        assert_eq!(MpScalar::UNIT.otimes(x), x);
        assert_eq!(x.otimes(MpScalar::UNIT), x);
    }

    #[test]
    fn nan_and_pos_inf_rejected() {
        assert!(MpScalar::new(f64::NAN).is_err());
        assert!(MpScalar::new(f64::INFINITY).is_err());
        assert!(MpScalar::new(f64::NEG_INFINITY).is_ok());
    }

    #[test]
    fn maxtimes_units_correspond() {
        // max-times 1 <-> max-plus 0, max-times 0 <-> max-plus -inf
        assert_eq!(MpScalar::from_maxtimes(1.0).unwrap(), MpScalar::UNIT);
        assert_eq!(MpScalar::from_maxtimes(0.0).unwrap(), MpScalar::ZERO);
        assert_eq!(MpScalar::UNIT.to_maxtimes(), 1.0);
        assert_eq!(MpScalar::ZERO.to_maxtimes(), 0.0);
    }

    #[test]
    fn maxtimes_ln_of_e_squared() {
        let e2 = std::f64::consts::E * std::f64::consts::E;
        let got = MpScalar::from_maxtimes(e2).unwrap();
        assert!((got.value() - 2.0).abs() <= 1e-12);
    }

    #[test]
    fn negative_maxtimes_rejected() {
        assert_eq!(
            MpScalar::from_maxtimes(-0.5),
            Err(MpError::NegativeEntry(-0.5))
        );
    }
}
