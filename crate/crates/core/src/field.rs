//! Ground fields: exact rationals and prime fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The field all scalars of a computation live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Field {
    #[default]
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p < 2 || !is_prime(p) {
            return Err(Error::Parse(format!("{p} is not a prime")));
        }
        if p > u32::MAX as u64 {
            return Err(Error::Parse(format!("prime {p} is too large")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        match *self {
            Field::Rational => Scalar::R(Rational64::zero()),
            Field::Prime(p) => Scalar::Fp(0, p),
        }
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::R(Rational64::from_integer(n)),
            Field::Prime(p) => Scalar::Fp(n.rem_euclid(p as i64) as u64, p),
        }
    }

    /// Builds `num / den`; fails when `den` vanishes in the field.
    pub fn ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        match *self {
            Field::Rational => {
                if den.is_zero() {
                    return Err(Error::Parse("zero denominator".into()));
                }
                Ok(Scalar::from_big(BigRational::new(num.clone(), den.clone())))
            }
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let n = num.mod_floor(&pb).to_u64().unwrap_or(0);
                let d = den.mod_floor(&pb).to_u64().unwrap_or(0);
                if d == 0 {
                    return Err(Error::Parse(format!("denominator vanishes mod {p}")));
                }
                Ok(Scalar::Fp(n, p) * Scalar::Fp(d, p).inv().expect("nonzero"))
            }
        }
    }

    /// Parses an integer or a fraction such as `-3/2`.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad coefficient `{s}`"));
        let (n, d) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let n = BigInt::from_str(n).map_err(|_| bad())?;
        let d = BigInt::from_str(d).map_err(|_| bad())?;
        self.ratio(&n, &d)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F {p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let t: Vec<&str> = s.split_whitespace().collect();
        match t.as_slice() {
            ["Q"] | ["q"] | ["QQ"] => Ok(Field::Rational),
            ["F", p] | ["F_p", p] => Field::prime(p.parse().map_err(|_| Error::Parse(format!("bad prime `{p}`")))?),
            [f] if f.starts_with('F') || f.starts_with('p') => {
                let digits = f.trim_start_matches(|c: char| !c.is_ascii_digit());
                Field::prime(digits.parse().map_err(|_| Error::Parse(format!("bad field `{s}`")))?)
            }
            _ => Err(Error::Parse(format!("unknown field `{s}`"))),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. Operations between elements of different fields panic.
///
/// Rationals that fit in 64-bit numerator and denominator are always stored as `R`,
/// larger ones as `Q`, so the derived equality and hash are those of the value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    R(Rational64),
    Q(BigRational),
    Fp(u64, u64),
}

fn big(r: &Rational64) -> BigRational {
    BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

impl Scalar {
    fn from_big(q: BigRational) -> Scalar {
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN => Scalar::R(Rational64::new_raw(n, d)),
            _ => Scalar::Q(q),
        }
    }

    fn from_small(r: Option<Rational64>) -> Option<Scalar> {
        r.filter(|r| *r.numer() != i64::MIN).map(Scalar::R)
    }

    fn as_big(&self) -> BigRational {
        match self {
            Scalar::R(r) => big(r),
            Scalar::Q(q) => q.clone(),
            Scalar::Fp(..) => unreachable!("prime field element used as a rational"),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::R(_) | Scalar::Q(_) => Field::Rational,
            Scalar::Fp(_, p) => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::R(r) => r.is_zero(),
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::R(r) => r.is_one(),
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp(v, _) => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::R(r) => Scalar::R(r.recip()),
            Scalar::Q(q) => Scalar::from_big(q.recip()),
            Scalar::Fp(v, p) => Scalar::Fp(pow_mod(*v, p - 2, *p), *p),
        })
    }

    /// Bit size of numerator plus denominator; zero for prime field elements.
    pub fn height(&self) -> u64 {
        match self {
            Scalar::R(r) => (64 - r.numer().unsigned_abs().leading_zeros() + 64 - r.denom().unsigned_abs().leading_zeros()) as u64,
            Scalar::Q(q) => q.numer().bits() + q.denom().bits(),
            Scalar::Fp(..) => 0,
        }
    }

    /// Image in `F_p`, or `None` when a denominator vanishes mod `p` or the element
    /// lives in a different prime field.
    pub fn residue(&self, p: u64) -> Option<u64> {
        let frac = |n: &BigInt, d: &BigInt| {
            let pb = BigInt::from(p);
            let d = d.mod_floor(&pb).to_u64()?;
            (d != 0).then(|| n.mod_floor(&pb).to_u64().expect("reduced") * pow_mod(d, p - 2, p) % p)
        };
        match self {
            Scalar::R(r) => frac(&BigInt::from(*r.numer()), &BigInt::from(*r.denom())),
            Scalar::Q(q) => frac(q.numer(), q.denom()),
            Scalar::Fp(v, q) => (*q == p).then_some(*v),
        }
    }

    /// Checked addition that reports a field mismatch instead of panicking.
    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field(), other.field()));
        }
        Ok(self + other)
    }

    /// Checked multiplication that reports a field mismatch instead of panicking.
    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field(), other.field()));
        }
        Ok(self * other)
    }
}

pub(crate) fn inv_mod(v: u64, p: u64) -> u64 {
    pow_mod(v, p - 2, p)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("mixed fields: {} and {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) if p == q => Scalar::Fp((a + b) % p, *p),
            (Scalar::Fp(..), _) | (_, Scalar::Fp(..)) => mismatch(self, rhs),
            (Scalar::R(a), Scalar::R(b)) => Scalar::from_small(a.checked_add(b)).unwrap_or_else(|| Scalar::from_big(big(a) + big(b))),
            _ => Scalar::from_big(self.as_big() + rhs.as_big()),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) if p == q => Scalar::Fp((a + p - b) % p, *p),
            (Scalar::Fp(..), _) | (_, Scalar::Fp(..)) => mismatch(self, rhs),
            (Scalar::R(a), Scalar::R(b)) => Scalar::from_small(a.checked_sub(b)).unwrap_or_else(|| Scalar::from_big(big(a) - big(b))),
            _ => Scalar::from_big(self.as_big() - rhs.as_big()),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) if p == q => Scalar::Fp(a * b % p, *p),
            (Scalar::Fp(..), _) | (_, Scalar::Fp(..)) => mismatch(self, rhs),
            (Scalar::R(a), Scalar::R(b)) => Scalar::from_small(a.checked_mul(b)).unwrap_or_else(|| Scalar::from_big(big(a) * big(b))),
            _ => Scalar::from_big(self.as_big() * rhs.as_big()),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::R(a) => Scalar::R(-a),
            Scalar::Q(a) => Scalar::from_big(-a),
            Scalar::Fp(a, p) => Scalar::Fp((p - a) % p, *p),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::R(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Fp(v, p) => {
                // print the balanced representative so small negatives stay readable
                if *v > p / 2 {
                    write!(f, "-{}", p - v)
                } else {
                    write!(f, "{v}")
                }
            }
        }
    }
}

impl Scalar {
    /// True for a negative rational; prime field elements are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::R(r) => r.is_negative(),
            Scalar::Q(q) => q.is_negative(),
            Scalar::Fp(..) => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic() {
        let q = Field::Rational;
        let a = q.parse("3/4").unwrap();
        let b = q.parse("-1/4").unwrap();
        assert_eq!(&a + &b, q.parse("1/2").unwrap());
        assert_eq!(a.inv().unwrap(), q.parse("4/3").unwrap());
        assert!(q.zero().inv().is_none());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let q = Field::Rational;
        let big = q.int(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq, Scalar::Q(_)));
        let back = &sq * &big.inv().unwrap();
        assert_eq!(back, big);
        assert!(matches!(back, Scalar::R(_)));
        assert_eq!(&q.int(i64::MIN + 1) - &q.one(), q.parse("-9223372036854775808").unwrap());
        assert_eq!(-&q.parse("-9223372036854775808").unwrap(), q.parse("9223372036854775808").unwrap());
        assert_eq!(q.parse("6/4").unwrap(), q.parse("3/2").unwrap());
    }

    #[test]
    fn prime_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.int(3);
        assert_eq!(&a * &a.inv().unwrap(), f.one());
        assert_eq!(f.int(-1), f.int(6));
        assert_eq!(f.parse("1/2").unwrap(), f.int(4));
        assert_eq!(f.int(6).to_string(), "-1");
    }

    #[test]
    fn field_names() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("F 5".parse::<Field>().unwrap(), Field::Prime(5));
        assert!("F 6".parse::<Field>().is_err());
    }

    #[test]
    fn mixing_is_reported() {
        let a = Field::Rational.one();
        let b = Field::Prime(3).one();
        assert!(a.try_add(&b).is_err());
        assert!(a.try_mul(&b).is_err());
    }
}
