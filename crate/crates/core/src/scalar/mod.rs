//! Exact scalar fields.
//!
//! Every algorithm in the crate is generic over [`Field`]. Three families are
//! provided: the rationals ([`BigRational`]), the Gaussian rationals
//! ([`GaussianRational`]) and prime fields ([`Fp`]). The rationals stand in for
//! the reals (real-root questions are answered over the real closure through
//! Sturm sequences), the Gaussian rationals for the complex numbers.

mod gaussian;
mod prime;
pub(crate) mod rational;

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use gaussian::GaussianRational;
pub use prime::{is_prime, Fp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    GaussianRational,
    PrimeField,
}

/// Runtime description of a scalar field; serialized as the tags `q`, `qi`
/// and `gf:<p>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct FieldDescriptor {
    kind: FieldKind,
    characteristic: u64,
}

impl FieldDescriptor {
    pub const RATIONAL: Self = Self {
        kind: FieldKind::Rational,
        characteristic: 0,
    };
    pub const GAUSSIAN_RATIONAL: Self = Self {
        kind: FieldKind::GaussianRational,
        characteristic: 0,
    };

    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Parse {
                what: "prime modulus",
                token: p.to_string(),
            });
        }
        Ok(Self {
            kind: FieldKind::PrimeField,
            characteristic: p,
        })
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    /// Number of elements, `None` for the infinite fields.
    pub fn order(&self) -> Option<u64> {
        match self.kind {
            FieldKind::PrimeField => Some(self.characteristic),
            _ => None,
        }
    }

    /// True only for the rationals, where real-root reasoning through Sturm
    /// sequences is meaningful.
    pub fn is_real_closed_compatible(&self) -> bool {
        self.kind == FieldKind::Rational
    }

    pub fn tag(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Rational => f.write_str("q"),
            FieldKind::GaussianRational => f.write_str("qi"),
            FieldKind::PrimeField => write!(f, "gf:{}", self.characteristic),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            what: "field tag",
            token: s.to_string(),
        };
        match s {
            "q" => Ok(Self::RATIONAL),
            "qi" => Ok(Self::GAUSSIAN_RATIONAL),
            _ => {
                let digits = s.strip_prefix("gf:").ok_or_else(bad)?;
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                let p: u64 = digits.parse().map_err(|_| bad())?;
                Self::prime(p).map_err(|_| bad())
            }
        }
    }
}

impl From<FieldDescriptor> for String {
    fn from(d: FieldDescriptor) -> String {
        d.to_string()
    }
}

impl TryFrom<String> for FieldDescriptor {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// An exact, computable field.
///
/// The operator impls follow the usual conventions; `Div` panics on a zero
/// divisor. Use [`Field::checked_div`] and [`Field::inv`] where the divisor is
/// not known to be nonzero.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn descriptor() -> FieldDescriptor;

    /// Image of an integer under the canonical map from the integers.
    fn from_bigint(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    fn inv(&self) -> Result<Self>;

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * rhs.inv()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        Ok(pow_unsigned(&base, k.unsigned_abs()))
    }

    /// Parse a scalar token (see [`Field::to_token`] for the canonical form).
    fn parse_token(token: &str) -> Result<Self>;

    fn to_token(&self) -> String {
        self.to_string()
    }

    /// All elements in a fixed order, for finite fields only.
    fn elements() -> Option<Vec<Self>> {
        None
    }

    /// The value as a rational number, for the rational field only.
    fn to_rational(&self) -> Option<BigRational> {
        None
    }

    /// A random element; small numerators and denominators for the infinite
    /// fields, uniform for prime fields.
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn sample_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let x = Self::sample(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }
}

pub(crate) fn pow_unsigned<F: Field>(base: &F, mut k: u64) -> F {
    let mut acc = F::one();
    let mut sq = base.clone();
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * sq.clone();
        }
        k >>= 1;
        if k > 0 {
            sq = sq.clone() * sq;
        }
    }
    acc
}

/// `x^k` for a nonnegative exponent.
pub fn powu<F: Field>(x: &F, k: usize) -> F {
    pow_unsigned(x, k as u64)
}

/// Binomial coefficient computed in the integers and mapped into the field.
pub fn binomial<F: Field>(n: usize, k: usize) -> F {
    F::from_bigint(&binomial_int(n, k))
}

pub fn binomial_int(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Check that a document's field tag names the field `F`.
pub fn expect_descriptor<F: Field>(found: FieldDescriptor) -> Result<()> {
    if found == F::descriptor() {
        Ok(())
    } else {
        Err(Error::FieldMismatch {
            expected: F::descriptor(),
            found,
        })
    }
}
