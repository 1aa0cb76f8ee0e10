//! Gaussian rationals `a + b·i` with arbitrary-precision rational parts.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An element of Q(i). Both parts are kept as reduced fractions, so structural
/// equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_int(v: i64) -> Self {
        Self::new(BigRational::from_integer(v.into()), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(
            BigRational::new(num.into(), den.into()),
            BigRational::zero(),
        )
    }

    /// `re_num/re_den + (im_num/im_den)·i`.
    pub fn gaussian(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Self::new(
            BigRational::new(re_num.into(), re_den.into()),
            BigRational::new(im_num.into(), im_den.into()),
        )
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `re² + im²`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -&self.im / &n))
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Self::new(v, BigRational::zero())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-&self.re, -&self.im)
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar::new(&self.re * &rhs.re, BigRational::zero());
        }
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero, like the rational types it wraps.
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero Scalar");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self -= &rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

fn fmt_ratio(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// `p/q`, `r/si`, `p/q+r/si`, `p/q-r/si`; a unit imaginary coefficient is
    /// written as a bare `i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_body = |m: &BigRational| -> String {
            if m.is_one() {
                "i".to_string()
            } else {
                format!("{}i", fmt_ratio(m))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_ratio(&self.re)),
            (true, false) => {
                if self.im.is_negative() {
                    write!(f, "-{}", im_body(&-self.im.clone()))
                } else {
                    write!(f, "{}", im_body(&self.im))
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(
                    f,
                    "{}{}{}",
                    fmt_ratio(&self.re),
                    sign,
                    im_body(&self.im.abs())
                )
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

/// Parses an unsigned `p` or `p/q` (digits only).
fn parse_unsigned_ratio(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || !digits(den) {
        return None;
    }
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num.parse().ok()?, den))
}

/// Parses one signed term, either real (`p/q`) or imaginary (`p/qi`, `i`).
fn parse_term(sign: bool, body: &str) -> Option<(bool, BigRational)> {
    let (imag, mag) = match body.strip_suffix('i') {
        Some("") => (true, BigRational::one()),
        Some(rest) => (true, parse_unsigned_ratio(rest)?),
        None => (false, parse_unsigned_ratio(body)?),
    };
    Some((imag, if sign { -mag } else { mag }))
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self, Error> {
        let err = || Error::ScalarParse(input.to_string());
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err());
        }
        // Split into at most two signed terms at a sign not in leading position.
        let bytes = s.as_bytes();
        let split = (1..bytes.len()).find(|&p| bytes[p] == b'+' || bytes[p] == b'-');
        let pieces: Vec<&str> = match split {
            Some(p) => vec![&s[..p], &s[p..]],
            None => vec![&s[..]],
        };
        let mut re = None;
        let mut im = None;
        for (pos, &piece) in pieces.iter().enumerate() {
            let (neg, body) = match piece.as_bytes()[0] {
                b'-' => (true, &piece[1..]),
                b'+' => (false, &piece[1..]),
                _ => (false, piece),
            };
            let (imag, value) = parse_term(neg, body).ok_or_else(err)?;
            // "a+bi" must be ordered real part first.
            if split.is_some() && imag != (pos == 1) {
                return Err(err());
            }
            let slot = if imag { &mut im } else { &mut re };
            if slot.is_some() {
                return Err(err());
            }
            *slot = Some(value);
        }
        Ok(Scalar::new(
            re.unwrap_or_else(BigRational::zero),
            im.unwrap_or_else(BigRational::zero),
        ))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn parses_grammar_forms() {
        assert_eq!(s("3"), Scalar::from_int(3));
        assert_eq!(s("2i"), Scalar::gaussian(0, 1, 2, 1));
        assert_eq!(s("1-i"), Scalar::gaussian(1, 1, -1, 1));
        assert_eq!(s("-1/2+3/4i"), Scalar::gaussian(-1, 2, 3, 4));
        assert_eq!(s("5/10"), Scalar::from_ratio(1, 2));
        assert_eq!(s("i"), Scalar::i());
        assert_eq!(s("-i"), -Scalar::i());
        assert_eq!(s("-2/3i"), Scalar::gaussian(0, 1, -2, 3));
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "", "1/0", "abc", "1+2", "i+1", "1+i+i", "--1", "1//2", "2ii",
        ] {
            assert!(bad.parse::<Scalar>().is_err(), "{bad} should not parse");
        }
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(Scalar::gaussian(1, 1, -1, 1).to_string(), "1-i");
        assert_eq!(Scalar::gaussian(-1, 2, 3, 4).to_string(), "-1/2+3/4i");
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!((-Scalar::i()).to_string(), "-i");
        assert_eq!(Scalar::gaussian(0, 1, 6, 4).to_string(), "3/2i");
    }

    #[test]
    fn field_operations() {
        let a = s("1+2i");
        let b = s("3-i");
        assert_eq!(&a * &b, s("5+5i"));
        assert_eq!(&(&a / &b) * &b, a);
        assert_eq!(a.inv().unwrap() * &a, Scalar::one());
        assert!(Scalar::zero().inv().is_none());
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
    }
}
