//! Exact scalars: arbitrary-precision rationals and elements of Q(sqrt m).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Exact field used by the generic linear algebra and exterior algebra code.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Sub<Output = Self>
    + Neg<Output = Self>
{
    fn inv(&self) -> Option<Self>;
    fn from_rational(r: Rational) -> Self;
    /// Exact sign: -1, 0 or 1.
    fn signum_exact(&self) -> i32;

    fn from_int(v: i64) -> Self {
        Self::from_rational(int(v))
    }
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if let Some((_, d)) = t.split_once('/') {
        if d.trim()
            .parse::<BigInt>()
            .map(|d| d.is_zero())
            .unwrap_or(false)
        {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
    }
    Rational::from_str(t).map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn signum_exact(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
}

/// `a + b sqrt(m)`. `m == 0` marks an element with no radical attached yet.
#[derive(Clone, Debug)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    m: u32,
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, m: u32) -> Self {
        if b.is_zero() || m == 0 {
            return QuadExt {
                a,
                b: Rational::zero(),
                m,
            };
        }
        let s = m.sqrt();
        if s * s == m {
            return QuadExt {
                a: a + b * int(s as i64),
                b: Rational::zero(),
                m,
            };
        }
        QuadExt { a, b, m }
    }

    pub fn rational(a: Rational) -> Self {
        QuadExt {
            a,
            b: Rational::zero(),
            m: 0,
        }
    }

    /// sqrt(m) itself.
    pub fn sqrt(m: u32) -> Self {
        QuadExt::new(Rational::zero(), Rational::one(), m)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }
    pub fn b(&self) -> &Rational {
        &self.b
    }
    pub fn radicand(&self) -> u32 {
        self.m
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.b.is_zero().then_some(&self.a)
    }

    fn joint_radicand(&self, o: &Self) -> Result<u32> {
        match (self.b.is_zero(), o.b.is_zero()) {
            (false, false) if self.m != o.m => Err(Error::RadicandMismatch(self.m, o.m)),
            (false, _) => Ok(self.m),
            (true, false) => Ok(o.m),
            (true, true) => Ok(self.m.max(o.m)),
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        let m = self.joint_radicand(o)?;
        Ok(QuadExt::new(&self.a + &o.a, &self.b + &o.b, m))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        let m = self.joint_radicand(o)?;
        let a = &self.a * &o.a + &self.b * &o.b * int(m as i64);
        let b = &self.a * &o.b + &self.b * &o.a;
        Ok(QuadExt::new(a, b, m))
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.b == o.b && (self.b.is_zero() || self.m == o.m)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.m)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.m)
        }
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, o: Self) -> Self {
        self.try_add(&o).expect("QuadExt addition")
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, o: Self) -> Self {
        self.try_add(&-o).expect("QuadExt subtraction")
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, o: Self) -> Self {
        self.try_mul(&o).expect("QuadExt multiplication")
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> Self {
        QuadExt {
            a: -self.a,
            b: -self.b,
            m: self.m,
        }
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt::rational(Rational::one())
    }
}

impl Field for QuadExt {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.a * &self.a - &self.b * &self.b * int(self.m as i64);
        Some(QuadExt::new(&self.a / &norm, -(&self.b / &norm), self.m))
    }

    fn from_rational(r: Rational) -> Self {
        QuadExt::rational(r)
    }

    fn signum_exact(&self) -> i32 {
        let sa = self.a.signum_exact();
        let sb = self.b.signum_exact();
        if sb == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        if sa == 0 {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2m = &self.b * &self.b * int(self.m as i64);
        if a2 > b2m {
            sa
        } else {
            sb
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, m: u32) -> QuadExt {
        QuadExt::new(int(a), int(b), m)
    }

    #[test]
    fn sqrt3_squared_is_three() {
        assert_eq!(q(0, 1, 3) * q(0, 1, 3), q(3, 0, 0));
    }

    #[test]
    fn one_is_identity() {
        let x = QuadExt::new(frac(2, 3), frac(-5, 7), 3);
        assert_eq!(QuadExt::one() * x.clone(), x);
    }

    #[test]
    fn conjugate_product() {
        assert_eq!(q(1, 1, 3) * q(1, -1, 3), q(-2, 0, 0));
    }

    #[test]
    fn perfect_square_radicand_is_rational() {
        let x = QuadExt::new(int(1), int(3), 4);
        assert_eq!(x.as_rational(), Some(&int(7)));
    }

    #[test]
    fn mismatched_radicands_error() {
        assert_eq!(
            q(0, 1, 2).try_mul(&q(0, 1, 3)),
            Err(Error::RadicandMismatch(2, 3))
        );
        assert!(q(1, 0, 2).try_mul(&q(0, 1, 3)).is_ok());
    }

    #[test]
    fn inverse_and_sign() {
        let x = q(1, -1, 3);
        assert_eq!(x.clone() * x.inv().unwrap(), QuadExt::one());
        assert_eq!(x.signum_exact(), -1);
        assert_eq!(q(2, -1, 3).signum_exact(), 1);
        assert_eq!(q(-2, 1, 5).signum_exact(), 1);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-3/6").unwrap(), frac(-1, 2));
        assert_eq!(parse_rational("4").unwrap(), int(4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
