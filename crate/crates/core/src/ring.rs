//! Integral domains with exact arithmetic.
//!
//! [`Domain`] is the element contract every other module is generic over.
//! Two concrete domains are provided: [`Int`] (ℤ) and [`IntPoly`] (ℤ[t]).
//! Neither is a field, and ℤ[t] is not a ring of rational scalars, so the
//! whole toolkit runs without ever forming fractions.
//!
//! Elements of different domains are different Rust types, so mixing
//! operands from two domains is rejected at compile time.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::parse::{parse_expr, Interpreter, ParseError};

/// An element of a commutative ring with identity and no zero divisors.
///
/// Equality must be canonical: two values are `==` iff they denote the same
/// ring element, whatever operations produced them.
pub trait Domain:
    Clone + Eq + Hash + fmt::Debug + fmt::Display + FromStr<Err = ParseError> + Send + Sync + 'static
{
    /// Short selector used on the command line and in structured output.
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_integer(value: &BigInt) -> Self;
    fn is_zero(&self) -> bool;

    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;

    /// Resolves a named generator of the domain (`t` for ℤ[t]).
    fn generator(name: &str) -> Option<Self>;

    /// `Some((negative, magnitude))` when the element prints as a signed
    /// atom; `None` when it needs parentheses inside a larger expression.
    fn signed_atom(&self) -> Option<(bool, String)>;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    fn from_i64(value: i64) -> Self {
        Self::from_integer(&BigInt::from(value))
    }
}

/// Optional capability: exact division.
///
/// Only fraction-free elimination needs it; the cofactor machinery never
/// divides.
pub trait ExactDiv: Domain {
    /// Returns the unique `q` with `q * divisor == self`.
    fn exact_div(&self, divisor: &Self) -> Result<Self>;
}

/// Interprets parsed expressions inside a domain, with the domain's own
/// generators as the only variables.
pub(crate) struct ElementInterpreter<D>(std::marker::PhantomData<D>);

impl<D> ElementInterpreter<D> {
    pub(crate) fn new() -> Self {
        Self(std::marker::PhantomData)
    }
}

impl<D: Domain> Interpreter for ElementInterpreter<D> {
    type Value = D;

    fn constant(&self, value: &BigInt) -> D {
        D::from_integer(value)
    }

    fn variable(&self, name: &str, position: usize) -> Result<D, ParseError> {
        D::generator(name).ok_or_else(|| {
            ParseError::new(position, format!("unknown symbol `{name}` in domain {}", D::NAME))
        })
    }

    fn add(&self, a: D, b: D) -> D {
        Domain::add(&a, &b)
    }

    fn neg(&self, a: D) -> D {
        Domain::neg(&a)
    }

    fn mul(&self, a: D, b: D) -> D {
        Domain::mul(&a, &b)
    }

    fn pow(&self, a: D, exp: u32) -> D {
        Domain::pow(&a, exp)
    }
}

fn parse_element<D: Domain>(text: &str) -> Result<D, ParseError> {
    parse_expr(text)?.interpret(&ElementInterpreter::<D>::new())
}

/// Arbitrary-precision integer.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Int(pub BigInt);

impl Int {
    pub fn value(&self) -> &BigInt {
        &self.0
    }
}

impl From<i64> for Int {
    fn from(value: i64) -> Self {
        Int(BigInt::from(value))
    }
}

impl From<BigInt> for Int {
    fn from(value: BigInt) -> Self {
        Int(value)
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Int {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_element(s)
    }
}

impl Domain for Int {
    const NAME: &'static str = "int";

    fn zero() -> Self {
        Int(BigInt::zero())
    }

    fn one() -> Self {
        Int(BigInt::one())
    }

    fn from_integer(value: &BigInt) -> Self {
        Int(value.clone())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        Int(&self.0 + &other.0)
    }

    fn neg(&self) -> Self {
        Int(-&self.0)
    }

    fn mul(&self, other: &Self) -> Self {
        Int(&self.0 * &other.0)
    }

    fn sub(&self, other: &Self) -> Self {
        Int(&self.0 - &other.0)
    }

    fn generator(_name: &str) -> Option<Self> {
        None
    }

    fn signed_atom(&self) -> Option<(bool, String)> {
        Some((self.0.is_negative(), self.0.abs().to_string()))
    }
}

impl ExactDiv for Int {
    fn exact_div(&self, divisor: &Self) -> Result<Self> {
        if divisor.0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = self.0.div_rem(&divisor.0);
        if !r.is_zero() {
            return Err(Error::NotDivisible {
                dividend: self.to_string(),
                divisor: divisor.to_string(),
            });
        }
        Ok(Int(q))
    }
}

/// Univariate polynomial over ℤ in the indeterminate `t`.
///
/// Coefficients are stored lowest degree first, with no trailing zeros; the
/// zero polynomial is the empty list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn from_coeffs<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut p = IntPoly {
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        };
        p.trim();
        p
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        IntPoly::from_coeffs([0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    fn constant_value(&self) -> Option<BigInt> {
        match self.coeffs.len() {
            0 => Some(BigInt::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if c.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            match deg {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !magnitude.is_one() {
                        write!(f, "{magnitude}*")?;
                    }
                    if deg == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{deg}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for IntPoly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_element(s)
    }
}

impl Domain for IntPoly {
    const NAME: &'static str = "intpoly";

    fn zero() -> Self {
        IntPoly::default()
    }

    fn one() -> Self {
        IntPoly::from_coeffs([1])
    }

    fn from_integer(value: &BigInt) -> Self {
        IntPoly::from_coeffs([value.clone()])
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        IntPoly::from_coeffs(coeffs)
    }

    fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }

    fn generator(name: &str) -> Option<Self> {
        (name == "t").then(IntPoly::t)
    }

    fn signed_atom(&self) -> Option<(bool, String)> {
        self.constant_value()
            .map(|c| (c.is_negative(), c.abs().to_string()))
    }
}

impl ExactDiv for IntPoly {
    /// Long division over ℤ; every step must divide the leading coefficient
    /// exactly, otherwise the quotient does not lie in ℤ[t].
    fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let Some(divisor_degree) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let not_divisible = || Error::NotDivisible {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
        };
        let Some(dividend_degree) = self.degree() else {
            return Ok(IntPoly::zero());
        };
        if dividend_degree < divisor_degree {
            return Err(not_divisible());
        }
        let lead = &divisor.coeffs[divisor_degree];
        let mut remainder = self.coeffs.clone();
        let mut quotient = vec![BigInt::zero(); dividend_degree - divisor_degree + 1];
        for shift in (0..quotient.len()).rev() {
            let top = &remainder[shift + divisor_degree];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(not_divisible());
            }
            for (k, d) in divisor.coeffs.iter().enumerate() {
                remainder[shift + k] -= &q * d;
            }
            quotient[shift] = q;
        }
        if remainder.iter().any(|c| !c.is_zero()) {
            return Err(not_divisible());
        }
        Ok(IntPoly::from_coeffs(quotient))
    }
}
