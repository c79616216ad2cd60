//! Scalar abstractions: the float trait bound used by generic kernels, the
//! exact rational type used by polyhedral decision procedures, and the
//! conversions between them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, One, Signed, ToPrimitive, Zero};
use std::fmt::{Debug, Display};

use crate::error::{Error, Result};

/// Floating-point scalar for the generic geometry and evaluation kernels.
///
/// Implemented for `f32` and `f64`. Everything exactness-critical goes through
/// [`Rat`] instead; this bound only needs ordinary IEEE arithmetic.
pub trait Real: Float + FromPrimitive + ToPrimitive + Debug + Display + Copy + 'static {}

impl Real for f32 {}
impl Real for f64 {}

/// Arbitrary-precision rational.
pub type Rat = BigRational;

/// Exact conversion of a finite float. Every finite `f64` is a dyadic
/// rational, so no rounding occurs.
pub fn rat_from_f64(x: f64) -> Result<Rat> {
    BigRational::from_float(x).ok_or_else(|| Error::invalid(format!("non-finite value {x}")))
}

pub fn rat_from_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Enclosure `lo <= e <= hi` of Euler's number from the partial sums of
/// `sum 1/k!`. The remainder after `terms` terms is below `2/terms!`, which
/// the upper endpoint absorbs.
pub fn e_interval(terms: usize) -> (Rat, Rat) {
    assert!(terms >= 3);
    let mut sum = Rat::zero();
    let mut factorial = BigInt::one();
    for k in 0..=terms {
        if k > 0 {
            factorial *= BigInt::from(k);
        }
        sum += Rat::new(BigInt::one(), factorial.clone());
    }
    let remainder = Rat::new(BigInt::from(2), factorial);
    (sum.clone(), sum + remainder)
}

/// Shortest round-trip decimal rendering of a float. `parse_f64` inverts it
/// bit-for-bit, which the text formats rely on.
pub fn format_f64(x: f64) -> String {
    format!("{x}")
}

pub fn parse_f64(s: &str) -> Result<f64> {
    let t = s.trim();
    let v: f64 = t
        .parse()
        .map_err(|_| Error::invalid(format!("bad decimal value {t:?}")))?;
    if !v.is_finite() {
        return Err(Error::invalid(format!("non-finite value {t:?}")));
    }
    Ok(v)
}

/// Signum as -1/0/+1 without float edge cases.
pub fn rat_sign(x: &Rat) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}
