//! Gaussian rationals `a + b·i` with `a, b ∈ Q`, the coefficient field for subspaces.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_int(v: i64) -> Self {
        GaussRat::real(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat { re, im: BigRational::zero() }
    }

    pub fn complex(re: i64, im: i64) -> Self {
        GaussRat { re: BigRational::from_integer(re.into()), im: BigRational::from_integer(im.into()) }
    }

    pub fn zero() -> Self {
        GaussRat::default()
    }

    pub fn one() -> Self {
        GaussRat::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -self.im.clone() }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(GaussRat::real(self.re.recip()));
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(GaussRat { re: &self.re / &norm, im: -(&self.im / &norm) })
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(GaussRat::one(), |acc, _| &acc * self)
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRat::real(&self.re * &rhs.re);
        }
        GaussRat { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re.clone(), im: -self.im.clone() }
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let imag = if self.im.abs().is_one() { "i".to_string() } else { format!("{}*i", fmt_rational(&self.im.abs())) };
        let sign = if self.im.is_negative() { "-" } else { "+" };
        if self.re.is_zero() {
            let sign = if self.im.is_negative() { "-" } else { "" };
            write!(f, "{sign}{imag}")
        } else {
            write!(f, "{}{sign}{imag}", fmt_rational(&self.re))
        }
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Input(format!("malformed rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num.strip_prefix('+').unwrap_or(num)).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Input(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

/// Accepts `"3"`, `"-1/2"`, `"i"`, `"-2*i"`, `"1/2+3/4*i"`, `"1-i"`.
impl FromStr for GaussRat {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Input("empty number".into()));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(GaussRat::real(parse_rational(&s)?));
        };
        // split off the imaginary term at the last sign that is not leading
        let split = body
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-') && !body[..i].ends_with('/'))
            .map(|(i, _)| i)
            .next_back();
        let (re_part, im_part) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("", body),
        };
        let im_part = im_part.strip_suffix('*').unwrap_or(im_part);
        let im = match im_part {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other)?,
        };
        let re = if re_part.is_empty() { BigRational::zero() } else { parse_rational(re_part)? };
        Ok(GaussRat { re, im })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussRat {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        for s in ["3", "-1/2", "i", "-i", "2*i", "1/2+3/4*i", "1-i", "-3/5-7*i", "0"] {
            assert_eq!(g(s).to_string(), s, "{s}");
        }
        assert_eq!(g("2/4"), g("1/2"));
        assert_eq!(g("+1+1*i").to_string(), "1+i");
        assert!("1/0".parse::<GaussRat>().is_err());
        assert!("abc".parse::<GaussRat>().is_err());
    }

    #[test]
    fn field_ops() {
        let a = g("1+2*i");
        let b = g("3-i");
        assert_eq!(&a * &b, g("5+5*i"));
        assert_eq!(&a * &a.inv().unwrap(), GaussRat::one());
        assert_eq!(a.conj().conj(), a);
        assert_eq!(g("i").pow(2), g("-1"));
        assert!(GaussRat::zero().inv().is_none());
    }
}
