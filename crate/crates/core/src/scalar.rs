//! Exact scalars: arbitrary-precision rationals and Gaussian rationals `a + bi`.
//!
//! Text grammar (no whitespace inside a scalar):
//!
//! ```text
//! rational := ["-"] digits ["/" digits]
//! gaussian := rational | [rational ("+"|"-")] rational "i" | rational "i"
//! ```
//!
//! The parser additionally accepts the shorthands `i`, `-i` and `a+i`; the
//! formatter always emits the strict grammar (`1i`, `-1i`).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// An element of Q(i).
///
/// `Ord` is lexicographic on `(re, im)`. It is a presentation order used to
/// make every output deterministic, not a field order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Gaussian {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Gaussian::real(Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Gaussian::real(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn i() -> Self {
        Gaussian {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Gaussian {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `re² + im²`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Gaussian {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Gaussian::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl Zero for Gaussian {
    fn zero() -> Self {
        Gaussian::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Gaussian {
    fn one() -> Self {
        Gaussian::real(Rational::one())
    }
}

impl From<i64> for Gaussian {
    fn from(v: i64) -> Self {
        Gaussian::from_int(v)
    }
}

impl From<Rational> for Gaussian {
    fn from(v: Rational) -> Self {
        Gaussian::real(v)
    }
}

impl<'a> Add<&'a Gaussian> for &'a Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: &Gaussian) -> Gaussian {
        Gaussian {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a Gaussian> for &'a Gaussian {
    type Output = Gaussian;
    fn sub(self, rhs: &Gaussian) -> Gaussian {
        Gaussian {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a Gaussian> for &'a Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: &Gaussian) -> Gaussian {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Gaussian::real(&self.re * &rhs.re);
        }
        Gaussian {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl<'a> Div<&'a Gaussian> for &'a Gaussian {
    type Output = Gaussian;
    /// Panics on division by zero, like the integer types.
    fn div(self, rhs: &Gaussian) -> Gaussian {
        if rhs.im.is_zero() {
            return Gaussian {
                re: &self.re / &rhs.re,
                im: &self.im / &rhs.re,
            };
        }
        let inv = rhs.inv().expect("division by zero Gaussian rational");
        self * &inv
    }
}

impl Neg for &Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian {
            re: -self.re,
            im: -self.im,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Gaussian> for Gaussian {
            type Output = Gaussian;
            fn $m(self, rhs: Gaussian) -> Gaussian { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Gaussian> for Gaussian {
            type Output = Gaussian;
            fn $m(self, rhs: &Gaussian) -> Gaussian { (&self).$m(rhs) }
        }
        impl<'a> $tr<Gaussian> for &'a Gaussian {
            type Output = Gaussian;
            fn $m(self, rhs: Gaussian) -> Gaussian { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Gaussian> for Gaussian {
    fn add_assign(&mut self, rhs: &Gaussian) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Gaussian> for Gaussian {
    fn sub_assign(&mut self, rhs: &Gaussian) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text form in the scalar grammar.
pub fn format_scalar(z: &Gaussian) -> String {
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => fmt_rational(&z.re),
        (true, false) => format!("{}i", fmt_rational(&z.im)),
        (false, false) => {
            let sign = if z.im.is_negative() { '-' } else { '+' };
            format!(
                "{}{}{}i",
                fmt_rational(&z.re),
                sign,
                fmt_rational(&z.im.abs())
            )
        }
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&format_scalar(self))
    }
}

impl fmt::Debug for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_scalar(self))
    }
}

fn parse_digits(s: &str, whole: &str) -> Result<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("malformed scalar `{whole}`")));
    }
    s.parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("malformed scalar `{whole}`")))
}

fn parse_rational(s: &str, whole: &str) -> Result<Rational> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let r = match body.split_once('/') {
        None => Rational::from_integer(parse_digits(body, whole)?),
        Some((n, d)) => {
            let n = parse_digits(n, whole)?;
            let d = parse_digits(d, whole)?;
            if d.is_zero() {
                return Err(Error::ZeroDenominator(whole.to_string()));
            }
            Rational::new(n, d)
        }
    };
    Ok(if neg { -r } else { r })
}

/// Coefficient in front of `i`; empty means an implicit 1.
fn parse_imag_coeff(s: &str, whole: &str) -> Result<Rational> {
    match s {
        "" | "+" => Ok(Rational::one()),
        "-" => Ok(-Rational::one()),
        _ => parse_rational(s.strip_prefix('+').unwrap_or(s), whole),
    }
}

pub fn parse_scalar(text: &str) -> Result<Gaussian> {
    if text.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    let Some(body) = text.strip_suffix('i') else {
        return Ok(Gaussian::real(parse_rational(text, text)?));
    };
    // first sign after position 0 separates the real and imaginary parts
    let split = body
        .char_indices()
        .skip(1)
        .find(|&(_, c)| c == '+' || c == '-')
        .map(|(k, _)| k);
    match split {
        None => Ok(Gaussian::new(
            Rational::zero(),
            parse_imag_coeff(body, text)?,
        )),
        Some(k) => {
            let re = parse_rational(&body[..k], text)?;
            let im_text = &body[k..];
            let im = match im_text.strip_prefix('+') {
                Some(rest) if rest.starts_with('-') => parse_rational(rest, text)?,
                _ => parse_imag_coeff(im_text, text)?,
            };
            Ok(Gaussian::new(re, im))
        }
    }
}

impl FromStr for Gaussian {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_scalar(s)
    }
}

fn int_sqrt_exact(v: &BigInt) -> Option<BigInt> {
    if v.sign() == Sign::Minus {
        return None;
    }
    let r = v.sqrt();
    (&r * &r == *v).then_some(r)
}

/// Exact non-negative square root of a rational, if it is rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    let n = int_sqrt_exact(q.numer())?;
    let d = int_sqrt_exact(q.denom())?;
    Some(Rational::new(n, d))
}

/// Square root in Q(i) with the principal branch: `re > 0`, or `re = 0` and
/// `im >= 0`. `None` when `z` is not a square in Q(i).
pub fn gaussian_sqrt(z: &Gaussian) -> Option<Gaussian> {
    if z.im.is_zero() {
        return if z.re.is_negative() {
            rational_sqrt(&-&z.re).map(|y| Gaussian::new(Rational::zero(), y))
        } else {
            rational_sqrt(&z.re).map(Gaussian::real)
        };
    }
    // x² - y² = a, 2xy = b, x² + y² = |z|
    let modulus = rational_sqrt(&z.norm_sqr())?;
    let two = Rational::from_integer(BigInt::from(2));
    let x = rational_sqrt(&((&modulus + &z.re) / &two))?;
    // b != 0 forces x != 0
    let y = &z.im / (&two * &x);
    Some(Gaussian::new(x, y))
}
