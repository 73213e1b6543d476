//! Small exact number types shared by the carrier-space modules.
//!
//! Normalization constants such as `1/sqrt(8)` are irrational, so Gram
//! entries are carried as [`Surd`]s (a sign and a rational square) and
//! never touch floating point.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign as BigSign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// A `+1` / `-1` factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^count`.
    pub fn from_parity(count: usize) -> Self {
        if count.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.to_i8())
    }

    pub fn to_rational(self) -> BigRational {
        BigRational::from_integer(self.to_bigint())
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.to_i8()
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;

    fn try_from(v: i8) -> Result<Self, Self::Error> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(format!("sign must be 1 or -1, got {other}")),
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A real number of the form `±sqrt(q)` with `q` a nonnegative rational.
///
/// Closed under multiplication, which is all the Gram computations need.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    negative: bool,
    square: BigRational,
}

impl Surd {
    pub fn zero() -> Self {
        Surd {
            negative: false,
            square: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        Surd::from_rational(&BigRational::one())
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Surd {
            negative: q.is_negative(),
            square: q * q,
        }
    }

    /// The nonnegative square root of `q`.
    ///
    /// # Panics
    /// If `q` is negative.
    pub fn sqrt(q: BigRational) -> Self {
        assert!(!q.is_negative(), "square root of a negative rational");
        Surd {
            negative: false,
            square: q,
        }
    }

    pub fn square(&self) -> &BigRational {
        &self.square
    }

    pub fn is_zero(&self) -> bool {
        self.square.is_zero()
    }

    pub fn is_one(&self) -> bool {
        !self.negative && self.square.is_one()
    }

    /// The exact rational value, if the square is a perfect rational square.
    pub fn to_rational(&self) -> Option<BigRational> {
        let num = exact_sqrt(self.square.numer())?;
        let den = exact_sqrt(self.square.denom())?;
        let r = BigRational::new(num, den);
        Some(if self.negative { -r } else { r })
    }
}

fn exact_sqrt(x: &BigInt) -> Option<BigInt> {
    if x.sign() == BigSign::Minus {
        return None;
    }
    let r = x.sqrt();
    (&r * &r == *x).then_some(r)
}

impl Mul for &Surd {
    type Output = Surd;

    fn mul(self, rhs: &Surd) -> Surd {
        let square = &self.square * &rhs.square;
        Surd {
            negative: !square.is_zero() && (self.negative != rhs.negative),
            square,
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        if self.negative {
            f.write_str("-")?;
        }
        write!(f, "sqrt({})", self.square)
    }
}

/// `re + i·im` with rational components.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComplexRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl ComplexRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        ComplexRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        ComplexRational {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn zero() -> Self {
        ComplexRational::real(BigRational::zero())
    }

    pub fn one() -> Self {
        ComplexRational::real(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexRational {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        ComplexRational {
            re: &self.re * q,
            im: &self.im * q,
        }
    }
}

impl Add for &ComplexRational {
    type Output = ComplexRational;

    fn add(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &ComplexRational {
    type Output = ComplexRational;

    fn sub(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &ComplexRational {
    type Output = ComplexRational;

    fn mul(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &ComplexRational {
    type Output = ComplexRational;

    fn neg(self) -> ComplexRational {
        ComplexRational {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl fmt::Display for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Positions where a Gram matrix differs from the identity.
pub fn identity_defects(gram: &[Vec<Surd>]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, row) in gram.iter().enumerate() {
        if row.len() != gram.len() {
            out.push((i, row.len()));
            continue;
        }
        for (j, v) in row.iter().enumerate() {
            let ok = if i == j { v.is_one() } else { v.is_zero() };
            if !ok {
                out.push((i, j));
            }
        }
    }
    out
}

#[cfg(test)]
pub(crate) fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
