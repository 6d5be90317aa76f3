//! `"p/q"` text form of exact rationals used by the file formats.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn to_text(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let den: BigInt = den.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(num, den))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `2^-e` as an exact rational.
pub fn inverse_power_of_two(e: u64) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << e)
}
