//! Laurent fractions `polynomial / monomial` and a small expression language
//! for writing them: `(x/u)^(q-m) (alpha^m - 1)`, `-L(D3/uy)`, `(vz - wy) / (vz)^2`.
//!
//! Grammar, loosely: sums of products of powers. Juxtaposition multiplies,
//! `/` divides by anything that evaluates to a single term, `^` takes an
//! integer exponent which may be a parenthesized integer expression in the
//! context's integer symbols. Each letter `u..z` is one variable, as in the
//! polynomial syntax, so `uy^2` means `u·y²`. `L(e)` is the truncated series
//! `Σ_{k=1}^{n} e^k / k` for the context's series length `n`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::field::{Field, FieldElement, FieldError};
use crate::monomial::{Monomial, Var};
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("parse error in `{input}` at byte {pos}: {msg}")]
    Parse { input: String, pos: usize, msg: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("cannot divide by `{0}`: not a single nonzero term")]
    NotInvertible(String),
    #[error("exponent {0} out of range")]
    Exponent(i64),
    #[error("L(..) used but no series length is set")]
    NoSeriesLength,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `num / den` with `num` a polynomial and `den` a monomial, kept with no
/// common monomial factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fraction {
    num: Polynomial,
    den: Monomial,
}

impl Fraction {
    pub fn new(num: Polynomial, den: Monomial) -> Self {
        let mut f = Fraction { num, den };
        f.reduce();
        f
    }

    pub fn from_poly(num: Polynomial) -> Self {
        Fraction { num, den: Monomial::ONE }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Monomial::ONE;
            return;
        }
        let common = self.num.terms().iter().fold(self.den, |g, (m, _)| g.gcd(m));
        if !common.is_one() {
            self.num = self.num.div_monomial(&common).expect("gcd divides every term");
            self.den = common.quotient(&self.den).expect("gcd divides the denominator");
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Monomial {
        &self.den
    }

    pub fn field(&self) -> Field {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Fraction) -> Fraction {
        let l = self.den.lcm(&other.den);
        let a = self.num.mul_monomial(&self.den.quotient(&l).unwrap());
        let b = other.num.mul_monomial(&other.den.quotient(&l).unwrap());
        Fraction::new(&a + &b, l)
    }

    pub fn neg(&self) -> Fraction {
        Fraction { num: -&self.num, den: self.den }
    }

    pub fn sub(&self, other: &Fraction) -> Fraction {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Fraction) -> Fraction {
        Fraction::new(&self.num * &other.num, self.den * other.den)
    }

    pub fn scale(&self, c: &FieldElement) -> Fraction {
        Fraction::new(self.num.scale(c), self.den)
    }

    /// Inverse of a single-term fraction.
    pub fn inv(&self) -> Result<Fraction, ExprError> {
        match self.num.terms() {
            [(m, c)] => {
                let c_inv = c.inv();
                Ok(Fraction::new(Polynomial::term(self.den, c_inv), *m))
            }
            _ => Err(ExprError::NotInvertible(self.to_string())),
        }
    }

    pub fn pow(&self, e: i64) -> Result<Fraction, ExprError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = u16::try_from(e.unsigned_abs()).map_err(|_| ExprError::Exponent(e))?;
        Ok(Fraction::new(base.num.pow(k as u32), base.den.pow(k)))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.num.len() > 1 {
            write!(f, "({}) / {}", self.num, self.den)
        } else {
            write!(f, "{} / {}", self.num, self.den)
        }
    }
}

/// Named values and integer parameters available to an expression.
#[derive(Debug, Clone)]
pub struct ExprContext {
    field: Field,
    values: BTreeMap<String, Fraction>,
    integers: BTreeMap<String, i64>,
    series_len: Option<u32>,
}

impl ExprContext {
    pub fn new(field: Field) -> Self {
        ExprContext { field, values: BTreeMap::new(), integers: BTreeMap::new(), series_len: None }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn with_value(mut self, name: &str, value: Fraction) -> Self {
        self.values.insert(name.to_string(), value);
        self
    }

    pub fn with_integer(mut self, name: &str, value: i64) -> Self {
        self.integers.insert(name.to_string(), value);
        self
    }

    /// Number of terms of `L(..)`.
    pub fn with_series_len(mut self, n: u32) -> Self {
        self.series_len = Some(n);
        self
    }

    /// Evaluates an integer expression in the context's integer symbols.
    pub fn eval_integer(&self, input: &str) -> Result<i64, ExprError> {
        let mut p = Parser { ctx: self, input, bytes: input.as_bytes(), pos: 0 };
        let v = p.int_sum()?;
        if p.peek().is_some() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(v)
    }

    pub fn eval(&self, input: &str) -> Result<Fraction, ExprError> {
        let mut p = Parser { ctx: self, input, bytes: input.as_bytes(), pos: 0 };
        let v = p.sum()?;
        if p.peek().is_some() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(v)
    }
}

struct Parser<'a> {
    ctx: &'a ExprContext,
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

fn is_var(c: u8) -> bool {
    Var::from_char(c as char).is_some()
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ExprError {
        ExprError::Parse { input: self.input.to_string(), pos: self.pos, msg: msg.to_string() }
    }

    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn sum(&mut self) -> Result<Fraction, ExprError> {
        let mut acc = self.product()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.product()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.product()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Fraction, ExprError> {
        let mut acc = self.group()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.group()?);
            } else if self.eat(b'/') {
                acc = acc.mul(&self.group()?.inv()?);
            } else {
                return Ok(acc);
            }
        }
    }

    /// Juxtaposed factors bind tighter than `*` and `/`, so `vx/uy` is `(vx)/(uy)`.
    fn group(&mut self) -> Result<Fraction, ExprError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            if c != b'(' && !c.is_ascii_alphanumeric() {
                break;
            }
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Fraction, ExprError> {
        if self.eat(b'-') {
            Ok(self.unary()?.neg())
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Fraction, ExprError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.int_exponent()?;
            base.pow(e)
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Fraction, ExprError> {
        let field = self.ctx.field;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.sum()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?;
                // `1/2` directly followed by digits is a rational literal
                let save = self.pos;
                if self.bytes.get(self.pos) == Some(&b'/')
                    && self.bytes.get(self.pos + 1).is_some_and(|c| c.is_ascii_digit())
                {
                    self.pos += 1;
                    let d = self.digits()?;
                    return Ok(Fraction::constant(field.parse_scalar(&format!("{n}/{d}"))?));
                }
                self.pos = save;
                Ok(Fraction::constant(field.parse_scalar(n)?))
            }
            Some(c) if is_var(c) => {
                self.pos += 1;
                let v = Var::from_char(c as char).unwrap();
                Ok(Fraction::from_poly(Polynomial::var(field, v)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.ident();
                if name == "L" {
                    self.expect(b'(')?;
                    let arg = self.sum()?;
                    self.expect(b')')?;
                    return self.series(&arg);
                }
                if let Some(v) = self.ctx.values.get(name) {
                    return Ok(v.clone());
                }
                if let Some(&n) = self.ctx.integers.get(name) {
                    return Ok(Fraction::constant(field.from_int(n)));
                }
                Err(ExprError::UnknownSymbol(name.to_string()))
            }
            _ => Err(self.err("expected a term")),
        }
    }

    fn series(&self, arg: &Fraction) -> Result<Fraction, ExprError> {
        let n = self.ctx.series_len.ok_or(ExprError::NoSeriesLength)?;
        let mut acc = Fraction::from_poly(Polynomial::zero(self.ctx.field));
        let mut power = Fraction::from_poly(Polynomial::one(self.ctx.field));
        for k in 1..=n {
            power = power.mul(arg);
            acc = acc.add(&power.scale(&self.ctx.field.inverse_of_integer(k as i64)?));
        }
        Ok(acc)
    }

    fn digits(&mut self) -> Result<&'a str, ExprError> {
        self.peek();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected digits"));
        }
        Ok(&self.input[start..self.pos])
    }

    /// A name that does not start with a variable letter.
    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        &self.input[start..self.pos]
    }

    fn int_exponent(&mut self) -> Result<i64, ExprError> {
        if self.eat(b'-') {
            return Ok(-self.int_exponent()?);
        }
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.int_sum()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => self.digits()?.parse().map_err(|_| self.err("exponent too large")),
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.ident();
                self.ctx.integers.get(name).copied().ok_or_else(|| ExprError::UnknownSymbol(name.to_string()))
            }
            _ => Err(self.err("expected an exponent")),
        }
    }

    fn int_sum(&mut self) -> Result<i64, ExprError> {
        let mut acc = self.int_product()?;
        loop {
            if self.eat(b'+') {
                acc += self.int_product()?;
            } else if self.eat(b'-') {
                acc -= self.int_product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn int_product(&mut self) -> Result<i64, ExprError> {
        let mut acc = self.int_exponent()?;
        while self.eat(b'*') {
            acc *= self.int_exponent()?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> ExprContext {
        ExprContext::new(Field::Rational)
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(Field::Rational, s).unwrap()
    }

    #[test]
    fn polynomials_agree_with_polynomial_syntax() {
        for s in ["3uv^2z - 1/2wy", "vz - wy", "u^2y^3 + 7", "uy^2"] {
            let f = q().eval(s).unwrap();
            assert_eq!(f.numerator(), &p(s), "{s}");
            assert!(f.denominator().is_one());
        }
    }

    #[test]
    fn fractions_reduce() {
        let f = q().eval("(uy - vx) / (uy)").unwrap();
        assert_eq!(f.to_string(), "(-vx + uy) / uy");
        let f = q().eval("1 - vx/uy").unwrap();
        assert_eq!(f, q().eval("(uy - vx)/uy").unwrap());
        let f = q().eval("u^2y / (uy)").unwrap();
        assert_eq!(f.numerator(), &p("u"));
        assert!(f.denominator().is_one());
        assert_eq!(q().eval("(x/u)^-2").unwrap(), q().eval("u^2/x^2").unwrap());
        assert!(matches!(q().eval("1/(u + v)"), Err(ExprError::NotInvertible(_))));
        assert_eq!(q().eval("vx/uy").unwrap(), q().eval("(vx)/(uy)").unwrap());
        assert_eq!(q().eval("1/2wy").unwrap(), q().eval("(1/2)wy").unwrap());
    }

    #[test]
    fn symbols_and_exponents() {
        let alpha = q().eval("vx/uy").unwrap();
        let ctx = q().with_value("alpha", alpha).with_integer("q", 3).with_integer("m", 1);
        let a = ctx.eval("(x/u)^(q-m)(alpha^m - 1)").unwrap();
        let b = ctx.eval("x^2/u^2 * (vx - uy)/(uy)").unwrap();
        assert_eq!(a, b);
        assert_eq!(ctx.eval("(1/alpha)^m").unwrap(), ctx.eval("uy/vx").unwrap());
        assert!(matches!(ctx.eval("beta"), Err(ExprError::UnknownSymbol(_))));
        assert_eq!(ctx.eval_integer("q-m"), Ok(2));
        assert_eq!(ctx.eval_integer("-(q-m)*2"), Ok(-4));
    }

    #[test]
    fn truncated_series() {
        let d3 = q().eval("uy - vx").unwrap();
        let ctx = q().with_value("D3", d3).with_series_len(2);
        let s = ctx.eval("-L(D3/uy)").unwrap();
        let expected = q().eval("-(uy - vx)/uy - 1/2 (uy - vx)^2/(u^2y^2)").unwrap();
        assert_eq!(s, expected);
        let f2 = Field::prime(2).unwrap();
        let ctx2 = ExprContext::new(f2).with_series_len(2);
        assert!(matches!(ctx2.eval("L(u)"), Err(ExprError::Field(FieldError::CharacteristicObstruction { .. }))));
        assert_eq!(q().eval("L(u)"), Err(ExprError::NoSeriesLength));
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "u +", "(u", "u^", "u)"] {
            assert!(q().eval(bad).is_err(), "{bad}");
        }
    }
}
