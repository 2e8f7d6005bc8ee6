use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

use super::{Field, FieldDescriptor};
use crate::error::{Error, Result};

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Grammar `[-]digits[/digits]` with a nonzero, unsigned denominator.
pub(crate) fn parse_rational(token: &str) -> Option<BigRational> {
    match token.split_once('/') {
        None => parse_integer(token).map(BigRational::from_integer),
        Some((num, den)) => {
            if den.starts_with('-') {
                return None;
            }
            let num = parse_integer(num)?;
            let den = parse_integer(den)?;
            if den.is_zero() {
                return None;
            }
            Some(BigRational::new(num, den))
        }
    }
}

impl Field for BigRational {
    fn descriptor() -> FieldDescriptor {
        FieldDescriptor::RATIONAL
    }

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn parse_token(token: &str) -> Result<Self> {
        parse_rational(token).ok_or_else(|| Error::Parse {
            what: "rational",
            token: token.to_string(),
        })
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let num: i64 = rng.random_range(-12..=12);
        let den: i64 = rng.random_range(1..=5);
        BigRational::new(num.into(), den.into())
    }
}

pub(crate) fn sign(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
