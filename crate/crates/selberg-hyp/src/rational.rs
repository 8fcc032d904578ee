//! Exact arbitrary-precision rational arithmetic and the combinatorial
//! primitives every other module consumes.
//!
//! Provides:
//! - [`Rational`]: arbitrary-precision rational, always in lowest terms with a
//!   positive denominator (structural equality is value equality)
//! - [`pochhammer`]: the rising factorial `(x)_m = x(x+1)...(x+m-1)`
//! - [`binomial`], [`factorial`]: exact combinatorial coefficients
//! - parsing from `"p/q"`, integer, and decimal literals (decimals are
//!   converted exactly, never through binary floating point)
//! - rendering as canonical `"p/q"` and as a rounded decimal string

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// An exact rational number backed by arbitrary-precision integers.
///
/// The value is kept canonical at all times: the denominator is positive and
/// `gcd(|numerator|, denominator) = 1`, so `==` compares mathematical values.
/// All four arithmetic operators are exact; dividing by zero panics rather
/// than producing any wrapped or sentinel value.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Build `numer/denom` from machine integers. Panics if `denom == 0`.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "Rational::new with zero denominator");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    /// The integer `n` as a rational.
    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// A big integer as a rational.
    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    /// Build `numer/denom` from big integers. Panics if `denom == 0`.
    pub fn from_ratio(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "Rational::from_ratio with zero denominator");
        Rational(BigRational::new(numer, denom))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The value as a big integer, if the denominator is 1.
    pub fn to_bigint(&self) -> Option<BigInt> {
        self.0.is_integer().then(|| self.0.numer().clone())
    }

    /// If the value is an integer `<= 0`, its absolute value.
    ///
    /// This is the quantity that decides termination of a hypergeometric
    /// series: an upper parameter `-n` terminates the sum after `n` steps.
    pub fn as_nonpositive_integer(&self) -> Option<u32> {
        if self.0.is_integer() && !self.0.is_positive() {
            (-self.0.numer()).to_u32()
        } else {
            None
        }
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    /// Exact nonnegative integer power, with the convention `0^0 = 1`.
    pub fn pow(&self, exp: u32) -> Rational {
        if exp == 0 {
            return Rational::one();
        }
        Rational(Pow::pow(&self.0, exp as i32))
    }

    /// Division that reports a zero divisor instead of panicking.
    pub fn checked_div(&self, rhs: &Rational) -> Option<Rational> {
        if rhs.is_zero() {
            None
        } else {
            Some(Rational(&self.0 / &rhs.0))
        }
    }

    /// Nearest `f64`; `None` if the conversion overflows to infinity.
    pub fn to_f64(&self) -> Option<f64> {
        self.0.to_f64().filter(|v| v.is_finite())
    }

    /// Decimal rendering with exactly `digits` fractional digits, rounding
    /// half away from zero. `1/3` with 4 digits renders as `0.3333`.
    pub fn to_decimal(&self, digits: u32) -> String {
        let sign = if self.is_negative() { "-" } else { "" };
        let scale = BigInt::from(10u32).pow(digits);
        // round(|v| * 10^digits) half away from zero
        let num = self.numer().abs() * &scale;
        let den = self.denom();
        let rounded = (num * 2u32 + den) / (den * 2u32);
        let int_part = &rounded / &scale;
        let frac_part = &rounded % &scale;
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part:0>width$}", width = digits as usize)
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(&self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<i64> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: i64) -> Rational {
                $trait::$method(self, Rational::from_int(rhs))
            }
        }
        impl $trait<i64> for Rational {
            type Output = Rational;
            fn $method(self, rhs: i64) -> Rational {
                $trait::$method(self, Rational::from_int(rhs))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}
impl Div<&Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        &self / rhs
    }
}
impl Div<Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        self / &rhs
    }
}
impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "Rational division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}
impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl serde::Serialize for Rational {
    /// Serializes as the canonical `"p/q"` string.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Display for Rational {
    /// Canonical form: `p/q`, or just `p` when the denominator is 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error raised when a string is not a valid rational literal.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal {input:?}: {reason}")]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `"p"`, `"p/q"` (q nonzero) and decimal literals `"d.ddd"`,
    /// each with an optional leading sign. Decimals convert exactly:
    /// `"0.25"` parses to `1/4`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason| ParseRationalError { input: s.to_string(), reason };
        let t = s.trim();
        if t.is_empty() {
            return Err(err("empty string"));
        }
        if let Some((num, den)) = t.split_once('/') {
            let n: BigInt = num.trim().parse().map_err(|_| err("bad numerator"))?;
            let d: BigInt = den.trim().parse().map_err(|_| err("bad denominator"))?;
            if d.is_zero() {
                return Err(err("zero denominator"));
            }
            return Ok(Rational(BigRational::new(n, d)));
        }
        if let Some((int, frac)) = t.split_once('.') {
            let (sign, int_digits) = match int.as_bytes().first() {
                Some(b'-') => (-1, &int[1..]),
                Some(b'+') => (1, &int[1..]),
                _ => (1, int),
            };
            if !int_digits.bytes().all(|b| b.is_ascii_digit())
                || frac.is_empty()
                || !frac.bytes().all(|b| b.is_ascii_digit())
            {
                return Err(err("bad decimal literal"));
            }
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let whole: BigInt = if int_digits.is_empty() {
                BigInt::zero()
            } else {
                int_digits.parse().map_err(|_| err("bad decimal literal"))?
            };
            let frac_val: BigInt = frac.parse().map_err(|_| err("bad decimal literal"))?;
            let numer = (whole * &scale + frac_val) * sign;
            return Ok(Rational(BigRational::new(numer, scale)));
        }
        let n: BigInt = t.parse().map_err(|_| err("bad integer literal"))?;
        Ok(Rational::from_bigint(n))
    }
}

/// The Pochhammer symbol (rising factorial) `(x)_m = x(x+1)...(x+m-1)`,
/// with `(x)_0 = 1`.
///
/// Returns exact 0 when a factor vanishes (e.g. `(-2)_4 = 0`); downstream
/// code relies on such terms dropping out of sums.
pub fn pochhammer(x: &Rational, m: u32) -> Rational {
    let mut product = Rational::one();
    for i in 0..m {
        let factor = x + i64::from(i);
        if factor.is_zero() {
            return Rational::zero();
        }
        product = product * factor;
    }
    product
}

/// Exact factorial `m!`.
pub fn factorial(m: u32) -> Rational {
    pochhammer(&Rational::one(), m)
}

/// Binomial coefficient `C(n, j)` for integer `n` and `j`, as a rational.
///
/// Zero when `j < 0` or `j > n >= 0`; negative `n` follows the Pochhammer
/// extension `C(n, j) = (n-j+1)_j / j!`, which covers every case uniformly.
pub fn binomial(n: i64, j: i64) -> Rational {
    if j < 0 {
        return Rational::zero();
    }
    let j = u32::try_from(j).expect("binomial index out of range");
    pochhammer(&Rational::from_int(n - i64::from(j) + 1), j) / factorial(j)
}
