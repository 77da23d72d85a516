//! Exact scalars: arbitrary-precision rationals and prime fields `F_p`.
//!
//! The field is a runtime descriptor ([`Field`]) so that callers can switch
//! characteristic per computation. Every [`FieldElement`] carries its field,
//! and mixed-field arithmetic is rejected by the checked operations.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("field mismatch: {0} vs {1}")]
    Mismatch(Field, Field),
    #[error("division by zero")]
    DivisionByZero,
    /// Raised when an integer that vanishes in the prime field must be
    /// inverted, e.g. the `1/m` coefficients of a truncated logarithm.
    #[error("characteristic obstruction: {integer} is divisible by p = {p}")]
    CharacteristicObstruction { integer: i64, p: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("malformed scalar `{0}`")]
    Parse(String),
}

/// Base field descriptor: `Q` or `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// `F_p`, checking primality by trial division.
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if is_prime(p) && p < (1 << 31) {
            Ok(Field::Prime(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    /// `0` selects the rationals, anything else must be a prime.
    pub fn from_characteristic(c: u64) -> Result<Field, FieldError> {
        if c == 0 {
            Ok(Field::Rational)
        } else {
            Field::prime(c)
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> FieldElement {
        self.from_int(0)
    }

    pub fn one(self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(self, n: i64) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => FieldElement::Modular { value: n.rem_euclid(p as i64) as u64, modulus: p },
        }
    }

    pub fn from_ratio(self, num: i64, den: i64) -> Result<FieldElement, FieldError> {
        if den == 0 {
            return Err(FieldError::DivisionByZero);
        }
        match self {
            Field::Rational => Ok(FieldElement::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))),
            Field::Prime(_) => Ok(self.from_int(num).mul(&self.inverse_of_integer(den)?)),
        }
    }

    /// `1/m` for an integer `m`. In characteristic `p`, `p | m` yields
    /// [`FieldError::CharacteristicObstruction`] rather than a plain
    /// division by zero.
    pub fn inverse_of_integer(self, m: i64) -> Result<FieldElement, FieldError> {
        if m == 0 {
            return Err(FieldError::DivisionByZero);
        }
        if let Field::Prime(p) = self {
            if m.rem_euclid(p as i64) == 0 {
                return Err(FieldError::CharacteristicObstruction { integer: m, p });
            }
        }
        field_inv(&self.from_int(m))
    }

    /// Parses `a/b` or a (signed) decimal integer.
    pub fn parse_scalar(self, s: &str) -> Result<FieldElement, FieldError> {
        let s = s.trim();
        let bad = || FieldError::Parse(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match self {
            Field::Rational => Ok(FieldElement::Rational(BigRational::new(num, den))),
            Field::Prime(p) => {
                let reduce = |n: &BigInt| {
                    let r = n % BigInt::from(p);
                    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
                    r.to_u64().expect("residue fits in u64")
                };
                let n = FieldElement::Modular { value: reduce(&num), modulus: p };
                let d = FieldElement::Modular { value: reduce(&den), modulus: p };
                Ok(n.mul(&field_inv(&d)?))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// An exact scalar. Rationals are kept in lowest terms with positive
/// denominator; residues lie in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rational,
            FieldElement::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Modular { value, .. } => *value == 1,
        }
    }

    /// True when the printed form needs a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_negative(),
            FieldElement::Modular { .. } => false,
        }
    }

    fn expect_same(&self, other: &Self) {
        debug_assert_eq!(self.field(), other.field(), "mixed-field arithmetic");
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        match self {
            FieldElement::Rational(r) => FieldElement::Rational(num_traits::pow(r.clone(), e as usize)),
            FieldElement::Modular { value, modulus } => {
                FieldElement::Modular { value: mod_pow(*value, e, *modulus), modulus: *modulus }
            }
        }
    }

    /// Inverse; panics on zero. Use [`field_inv`] for a checked version.
    pub fn inv(&self) -> FieldElement {
        field_inv(self).expect("inverse of zero")
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.expect_same(rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (FieldElement::Modular { value: a, modulus }, FieldElement::Modular { value: b, .. }) => {
                FieldElement::Modular { value: (a + b) % modulus, modulus: *modulus }
            }
            _ => panic!("mixed-field arithmetic"),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + &(-rhs)
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.expect_same(rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (FieldElement::Modular { value: a, modulus }, FieldElement::Modular { value: b, .. }) => {
                FieldElement::Modular { value: a * b % modulus, modulus: *modulus }
            }
            _ => panic!("mixed-field arithmetic"),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Modular { value, modulus } => {
                FieldElement::Modular { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }
}

impl FieldElement {
    pub fn mul(&self, rhs: &FieldElement) -> FieldElement {
        self * rhs
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElement::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

fn check(a: &FieldElement, b: &FieldElement) -> Result<(), FieldError> {
    if a.field() == b.field() {
        Ok(())
    } else {
        Err(FieldError::Mismatch(a.field(), b.field()))
    }
}

pub fn field_add(a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
    check(a, b)?;
    Ok(a + b)
}

pub fn field_mul(a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
    check(a, b)?;
    Ok(a * b)
}

pub fn field_inv(a: &FieldElement) -> Result<FieldElement, FieldError> {
    if a.is_zero() {
        return Err(FieldError::DivisionByZero);
    }
    Ok(match a {
        FieldElement::Rational(r) => FieldElement::Rational(r.recip()),
        FieldElement::Modular { value, modulus } => {
            FieldElement::Modular { value: mod_pow(*value, modulus - 2, *modulus), modulus: *modulus }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> FieldElement {
        Field::Rational.from_ratio(n, d).unwrap()
    }

    #[test]
    fn rational_examples() {
        assert_eq!(field_add(&q(1, 2), &q(1, 3)).unwrap(), q(5, 6));
        assert_eq!(field_mul(&q(2, 3), &q(3, 2)).unwrap(), q(1, 1));
        assert_eq!(field_inv(&q(1, 3)).unwrap(), q(3, 1));
        assert_eq!(field_add(&q(7, 9), &Field::Rational.zero()).unwrap(), q(7, 9));
        assert_eq!(field_mul(&q(7, 9), &Field::Rational.one()).unwrap(), q(7, 9));
    }

    #[test]
    fn lowest_terms_positive_denominator() {
        let x = q(4, -6);
        match &x {
            FieldElement::Rational(r) => {
                assert_eq!(*r.numer(), BigInt::from(-2));
                assert_eq!(*r.denom(), BigInt::from(3));
            }
            _ => unreachable!(),
        }
        assert_eq!(x.to_string(), "-2/3");
    }

    #[test]
    fn prime_field_examples() {
        let f5 = Field::prime(5).unwrap();
        let f7 = Field::prime(7).unwrap();
        assert_eq!(field_add(&f5.from_int(3), &f5.from_int(4)).unwrap(), f5.from_int(2));
        assert_eq!(field_mul(&f7.from_int(2), &f7.from_int(4)).unwrap(), f7.one());
        assert_eq!(field_inv(&f5.from_int(2)).unwrap(), f5.from_int(3));
        assert_eq!(f5.from_int(-1), f5.from_int(4));
    }

    #[test]
    fn characteristic_obstruction_is_distinct() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(f2.inverse_of_integer(4), Err(FieldError::CharacteristicObstruction { integer: 4, p: 2 }));
        assert_eq!(field_inv(&f2.zero()), Err(FieldError::DivisionByZero));
        assert_eq!(field_inv(&Field::Rational.zero()), Err(FieldError::DivisionByZero));
        assert!(f2.inverse_of_integer(3).is_ok());
    }

    #[test]
    fn integer_inverses_up_to_t() {
        for t in 2..12i64 {
            for m in 1..t {
                assert!(Field::Rational.inverse_of_integer(m).is_ok());
                for p in [2u64, 3, 5, 7] {
                    let ok = Field::prime(p).unwrap().inverse_of_integer(m).is_ok();
                    assert_eq!(ok, m % p as i64 != 0);
                }
            }
        }
    }

    #[test]
    fn rejects_composites_and_mismatch() {
        assert_eq!(Field::prime(9), Err(FieldError::NotPrime(9)));
        assert_eq!(Field::prime(1), Err(FieldError::NotPrime(1)));
        let f3 = Field::prime(3).unwrap();
        assert!(matches!(field_add(&f3.one(), &q(1, 1)), Err(FieldError::Mismatch(..))));
    }

    #[test]
    fn parses_scalars() {
        assert_eq!(Field::Rational.parse_scalar("-3/6").unwrap(), q(-1, 2));
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.parse_scalar("7").unwrap(), f5.from_int(2));
        assert_eq!(f5.parse_scalar("1/2").unwrap(), f5.from_int(3));
        assert!(Field::Rational.parse_scalar("x").is_err());
    }
}
