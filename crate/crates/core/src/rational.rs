//! Exact rational scalars.
//!
//! [`Rat`] is `num_rational::BigRational`, which keeps every value reduced
//! with a positive denominator, so structural equality is value equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = num_rational::BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"n"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Rat::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Formats as `"n"` for integers and `"p/q"` otherwise.
pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sign as `-1`, `0` or `1`.
pub fn sign(r: &Rat) -> i64 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Fractional part `{x}` in `[0, 1)`.
pub fn fract(x: &Rat) -> Rat {
    x - x.floor()
}

/// Converts an integral rational to `i64`, if it fits.
pub fn to_i64(r: &Rat) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    i64::try_from(r.numer()).ok()
}

/// Residue of an integral rational modulo `n` in `[0, n)`.
pub fn residue(r: &Rat, n: u32) -> Option<u32> {
    if !r.denom().is_one() {
        return None;
    }
    let m = r.numer().mod_floor(&BigInt::from(n));
    u32::try_from(&m).ok()
}
