//! Dense univariate polynomials over a [`Field`].
//!
//! Besides ring arithmetic this module answers the root questions the
//! classifier needs: distinct real roots of a rational polynomial (Sturm
//! sequence on the square-free part), roots in a prime field (exhaustion),
//! and recognition of perfect powers `c·(x + a)^d`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::rational::sign;
use crate::scalar::{binomial, powu, Field, FieldKind};

/// Coefficients in ascending degree; trailing zeros are trimmed so the zero
/// polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Polynomial<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![F::zero(), F::one()])
    }

    /// `c·x^k`
    pub fn monomial(c: F, k: usize) -> Self {
        let mut coeffs = vec![F::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `x + a`
    pub fn linear(a: F) -> Self {
        Self::new(vec![a, F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, a| acc * x.clone() + a.clone())
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a.clone() * F::from_i64(k as i64))
                .collect(),
        )
    }

    /// Divide by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.inv().expect("leading coefficient is nonzero")),
        }
    }

    /// Euclidean division `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let d = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lc_inv = divisor.coeffs[d].inv()?;
        let mut rem = self.coeffs.clone();
        let Some(n) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if n < d {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); n - d + 1];
        for k in (d..=n).rev() {
            let c = rem[k].clone() * lc_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k - d + j] = rem[k - d + j].clone() - c.clone() * b.clone();
            }
            quot[k - d] = c;
        }
        rem.truncate(d);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// `p / gcd(p, p')`, monic; the zero polynomial is rejected.
    pub fn square_free_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = gcd(self, &self.derivative())?;
        Ok(self.div_rem(&g)?.0.monic())
    }
}

impl<F: fmt::Debug> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Polynomial").field(&self.coeffs).finish()
    }
}

/// Terms in ascending degree, e.g. `1 + (2)x^2`.
impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{k}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl<'a, F: Field> Add<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a, F: Field> Sub<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a, F: Field> Mul<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::new(self.coeffs.iter().cloned().map(Neg::neg).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $m(self, rhs: Polynomial<F>) -> Polynomial<F> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Monic greatest common divisor.
pub fn gcd<F: Field>(p: &Polynomial<F>, q: &Polynomial<F>) -> Result<Polynomial<F>> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut a, mut b) = (p.clone(), q.clone());
    while !b.is_zero() {
        let r = a.rem(&b)?;
        a = b;
        b = r;
    }
    Ok(a.monic())
}

fn require_nonzero<F: Field>(p: &Polynomial<F>) -> Result<()> {
    if p.is_zero() {
        Err(Error::ZeroPolynomial)
    } else {
        Ok(())
    }
}

fn to_rational_poly<F: Field>(p: &Polynomial<F>) -> Result<Polynomial<BigRational>> {
    let coeffs: Option<Vec<BigRational>> = p.coeffs.iter().map(Field::to_rational).collect();
    coeffs.map(Polynomial::new).ok_or(Error::WrongField {
        expected: "rational",
        found: F::descriptor(),
    })
}

fn sign_changes(signs: impl Iterator<Item = i32>) -> usize {
    let nonzero: Vec<i32> = signs.filter(|&s| s != 0).collect();
    nonzero.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of a nonzero rational polynomial, via the
/// Sturm sequence of its square-free part.
pub fn real_root_count<F: Field>(p: &Polynomial<F>) -> Result<usize> {
    let p = to_rational_poly(p)?;
    require_nonzero(&p)?;
    let sf = p.square_free_part()?;
    if sf.degree() == Some(0) {
        return Ok(0);
    }
    let mut chain = vec![sf.clone(), sf.derivative()];
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1])?;
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    let at_pos_inf = sign_changes(chain.iter().map(|s| sign(s.leading_coeff().unwrap())));
    let at_neg_inf = sign_changes(chain.iter().map(|s| {
        let lc = sign(s.leading_coeff().unwrap());
        if s.degree().unwrap() % 2 == 1 {
            -lc
        } else {
            lc
        }
    }));
    Ok(at_neg_inf - at_pos_inf)
}

/// All roots in a prime field, by exhaustive evaluation.
pub fn finite_field_roots<F: Field>(p: &Polynomial<F>) -> Result<Vec<F>> {
    let elements = F::elements().ok_or(Error::WrongField {
        expected: "prime",
        found: F::descriptor(),
    })?;
    require_nonzero(p)?;
    Ok(elements.into_iter().filter(|x| p.eval(x).is_zero()).collect())
}

/// Rational roots by the rational root theorem. Returns `None` when the
/// cleared integer coefficients are too large to enumerate divisors.
pub fn rational_roots<F: Field>(p: &Polynomial<F>) -> Result<Option<Vec<BigRational>>> {
    const DIVISOR_LIMIT: u64 = 1_000_000_000_000;
    let p = to_rational_poly(p)?;
    require_nonzero(&p)?;
    let denom_lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(denom_lcm.clone())).to_integer())
        .collect();
    let mut roots = Vec::new();
    let shift = ints.iter().position(|c| !c.is_zero()).unwrap();
    if shift > 0 {
        roots.push(BigRational::zero());
    }
    let ints = &ints[shift..];
    if ints.len() == 1 {
        return Ok(Some(roots));
    }
    let (Some(a0), Some(ad)) = (
        ints[0].abs().to_u64().filter(|&v| v <= DIVISOR_LIMIT),
        ints[ints.len() - 1].abs().to_u64().filter(|&v| v <= DIVISOR_LIMIT),
    ) else {
        return Ok(None);
    };
    let reduced = Polynomial::new(ints.iter().cloned().map(BigRational::from_integer).collect());
    let mut candidates = Vec::new();
    for num in divisors(a0) {
        for den in divisors(ad) {
            let c = BigRational::new(num.into(), den.into());
            candidates.push(c.clone());
            candidates.push(-c);
        }
    }
    candidates.sort();
    candidates.dedup();
    roots.extend(candidates.into_iter().filter(|c| reduced.eval(c).is_zero()));
    Ok(Some(roots))
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Whether a nonzero polynomial vanishes somewhere in the field's working
/// closure: the real closure for the rationals, the algebraic closure for the
/// Gaussian rationals, the field itself for prime fields.
pub fn has_root<F: Field>(p: &Polynomial<F>) -> Result<bool> {
    require_nonzero(p)?;
    match F::descriptor().kind() {
        FieldKind::Rational => Ok(real_root_count(p)? > 0),
        FieldKind::GaussianRational => Ok(p.degree() > Some(0)),
        FieldKind::PrimeField => Ok(!finite_field_roots(p)?.is_empty()),
    }
}

/// `scale·(x + root_shift)^exponent`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearPowerForm<F> {
    pub scale: F,
    pub root_shift: F,
    pub exponent: usize,
}

impl<F: Field> LinearPowerForm<F> {
    pub fn expand(&self) -> Polynomial<F> {
        let d = self.exponent;
        Polynomial::new(
            (0..=d)
                .map(|k| {
                    self.scale.clone()
                        * binomial::<F>(d, k)
                        * powu(&self.root_shift, d - k)
                })
                .collect(),
        )
    }
}

/// Recognize `p = c·(x + a)^d`. The shift is read off the two leading
/// coefficients, `a = p_{d-1} / (c·d)`, and certified by re-expansion.
pub fn extract_linear_power<F: Field>(p: &Polynomial<F>) -> Result<Option<LinearPowerForm<F>>> {
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    let scale = p.coeffs[d].clone();
    if d == 0 {
        return Ok(Some(LinearPowerForm {
            scale,
            root_shift: F::zero(),
            exponent: 0,
        }));
    }
    let characteristic = F::descriptor().characteristic();
    if characteristic != 0 && characteristic <= d as u64 {
        return Err(Error::CharacteristicTooSmall {
            characteristic,
            degree: d,
        });
    }
    let root_shift = p.coeffs[d - 1].checked_div(&(scale.clone() * F::from_i64(d as i64)))?;
    let form = LinearPowerForm {
        scale,
        root_shift,
        exponent: d,
    };
    Ok((form.expand() == *p).then_some(form))
}

/// Perfect-power recognition over a prime field by root search; works for any
/// characteristic.
pub fn extract_linear_power_by_search<F: Field>(
    p: &Polynomial<F>,
) -> Result<Option<LinearPowerForm<F>>> {
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    let scale = p.coeffs[d].clone();
    if d == 0 {
        return Ok(Some(LinearPowerForm {
            scale,
            root_shift: F::zero(),
            exponent: 0,
        }));
    }
    for root in finite_field_roots(p)? {
        let form = LinearPowerForm {
            scale: scale.clone(),
            root_shift: -root,
            exponent: d,
        };
        if form.expand() == *p {
            return Ok(Some(form));
        }
    }
    Ok(None)
}

/// [`extract_linear_power`], falling back to root search when the
/// characteristic is too small for the coefficient formula.
pub fn recover_linear_power<F: Field>(p: &Polynomial<F>) -> Result<Option<LinearPowerForm<F>>> {
    match extract_linear_power(p) {
        Err(Error::CharacteristicTooSmall { .. }) => extract_linear_power_by_search(p),
        other => other,
    }
}
