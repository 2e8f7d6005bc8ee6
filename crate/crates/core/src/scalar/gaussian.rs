use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::rational::parse_rational;
use super::{Field, FieldDescriptor};
use crate::error::{Error, Result};

/// Element `re + im·i` of the Gaussian rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational(pub Complex<BigRational>);

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self(Complex::new(re, im))
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn re(&self) -> &BigRational {
        &self.0.re
    }

    pub fn im(&self) -> &BigRational {
        &self.0.im
    }

    pub fn conj(&self) -> Self {
        Self(self.0.conj())
    }
}

impl From<BigRational> for GaussianRational {
    fn from(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for GaussianRational {
            type Output = Self;
            fn $m(self, rhs: Self) -> Self {
                Self(self.0.$m(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for GaussianRational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        Self(self.0 / rhs.0)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self(Complex::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self(Complex::one())
    }
}

/// Canonical form: `a` when the imaginary part vanishes, otherwise `a+bi` or
/// `a-bi`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (&self.0.re, &self.0.im);
        if im.is_zero() {
            write!(f, "{re}")
        } else if im.is_negative() {
            write!(f, "{re}-{}i", -im)
        } else {
            write!(f, "{re}+{im}i")
        }
    }
}

impl Field for GaussianRational {
    fn descriptor() -> FieldDescriptor {
        FieldDescriptor::GAUSSIAN_RATIONAL
    }

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone()).into()
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(Self(self.0.inv()))
        }
    }

    fn parse_token(token: &str) -> Result<Self> {
        let bad = || Error::Parse {
            what: "Gaussian rational",
            token: token.to_string(),
        };
        let Some(body) = token.strip_suffix('i') else {
            return parse_rational(token).map(Into::into).ok_or_else(bad);
        };
        // the separator is the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(bad)?;
        let (re, rest) = body.split_at(split);
        let (sign, im) = rest.split_at(1);
        if im.starts_with('-') {
            return Err(bad());
        }
        let re = parse_rational(re).ok_or_else(bad)?;
        let mut im = parse_rational(im).ok_or_else(bad)?;
        if sign == "-" {
            im = -im;
        }
        Ok(Self::new(re, im))
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::new(BigRational::sample(rng), BigRational::sample(rng))
    }
}
