use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational.
pub type Rational = BigRational;

/// Coefficient type of every ℓ¹ vector.
///
/// Exact rationals are the intended instantiation. `f64`/`f32` also satisfy
/// the bound, which is useful for timing but not for equality checks.
pub trait Scalar: Num + Signed + FromPrimitive + Clone + PartialOrd + Debug + Send + Sync {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        let n = Self::from_i64(numer).expect("integer fits scalar");
        let d = Self::from_i64(denom).expect("integer fits scalar");
        n / d
    }

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count fits scalar")
    }
}

impl<T> Scalar for T where T: Num + Signed + FromPrimitive + Clone + PartialOrd + Debug + Send + Sync {}

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let r = Rational::from_str(s).map_err(|_| Error::Rational(s.to_string()))?;
    Ok(r)
}

/// Always `"p/q"`, including `"0/1"` and `"3/1"`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}
