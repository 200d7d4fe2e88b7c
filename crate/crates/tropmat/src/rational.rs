//! Parsing and formatting of exact rationals ("p/q" or decimal strings).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Parse `"-3"`, `"3/4"`, `"-0.25"` and the like into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let err = || Error::BadRational(s.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| err())?;
        let den: BigInt = den.trim().parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = int_part.starts_with('-');
        let int_part = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            BigInt::zero()
        } else {
            int_part.parse().map_err(|_| err())?
        };
        let scale = BigInt::from(10u8).pow(frac_part.len() as u32);
        let frac: BigInt = frac_part.parse().map_err(|_| err())?;
        let magnitude = int_part.magnitude() * scale.magnitude() + frac.magnitude();
        let mut value = BigRational::new(BigInt::from(magnitude), scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    let int: BigInt = s.parse().map_err(|_| err())?;
    Ok(BigRational::from_integer(int))
}

/// Canonical string form: integer when the denominator is one, else "p/q".
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
