//! Exact rational scalars.
//!
//! Everything sign-critical in this crate is computed over `Q`. `Rat` is an
//! arbitrary-precision rational; helpers here convert between `Rat`, floats,
//! and the string forms used in configs and serialized functions
//! (`"p/q"`, integers, and finite decimals like `"0.125"`).

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact value of an `f64` (every finite float is a dyadic rational).
pub fn rat_from_f64(x: f64) -> Result<Rat> {
    Rat::from_float(x).ok_or_else(|| Error::domain(format!("{x} is not a finite number")))
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"p/q"`, `"-3"`, or a finite decimal such as `"0.6180339887"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::schema(format!("bad rational numerator in `{s}`")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::schema(format!("bad rational denominator in `{s}`")))?;
        if d.is_zero() {
            return Err(Error::schema(format!("zero denominator in `{s}`")));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let sign = if int_part.trim_start().starts_with('-') { -1 } else { 1 };
        let int: BigInt = if int_part.is_empty() || int_part == "-" {
            BigInt::zero()
        } else {
            int_part
                .parse()
                .map_err(|_| Error::schema(format!("bad decimal `{s}`")))?
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::schema(format!("bad decimal `{s}`")));
        }
        let frac: BigInt = frac_part
            .parse()
            .map_err(|_| Error::schema(format!("bad decimal `{s}`")))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac_rat = Rat::new(frac * sign, scale);
        return Ok(Rat::from_integer(int) + frac_rat);
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::schema(format!("bad rational `{s}`")))?;
    Ok(Rat::from_integer(n))
}

/// Renders a rational as a finite decimal when the denominator is of the form
/// `2^a 5^b`, otherwise as `"p/q"`. The output round-trips through
/// [`parse_rat`] exactly.
pub fn format_rat(x: &Rat) -> String {
    let denom = x.denom().to_biguint().expect("reduced denominator is positive");
    let (mut twos, mut rest) = (0u32, denom.clone());
    let two = BigUint::from(2u32);
    let five = BigUint::from(5u32);
    while (&rest % &two).is_zero() {
        rest /= &two;
        twos += 1;
    }
    let mut fives = 0u32;
    while (&rest % &five).is_zero() {
        rest /= &five;
        fives += 1;
    }
    if !rest.is_one() {
        return format!("{}/{}", x.numer(), x.denom());
    }
    // denominator = 2^a 5^b: scale numerator so the denominator becomes 10^k.
    let k = twos.max(fives);
    let scale = two.pow(k - twos) * five.pow(k - fives);
    let scaled = (x.numer() * BigInt::from(scale)).abs().to_biguint().unwrap();
    let digits = scaled.to_string();
    let sign = if x.is_negative() { "-" } else { "" };
    if k == 0 {
        return format!("{sign}{digits}");
    }
    let k = k as usize;
    let (int_part, frac_part) = if digits.len() > k {
        let (a, b) = digits.split_at(digits.len() - k);
        (a.to_string(), b.to_string())
    } else {
        ("0".to_string(), format!("{:0>width$}", digits, width = k))
    };
    let frac_part = frac_part.trim_end_matches('0');
    if frac_part.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}
