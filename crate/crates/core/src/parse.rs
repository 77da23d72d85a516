//! Text syntax for polynomials: `3uv^2z - 1/2wy`, with optional `*`.

use num_bigint::BigInt;

use crate::field::{Field, FieldElement};
use crate::monomial::{Monomial, MonomialOrder, Var};
use crate::poly::{PolyError, Polynomial};

struct Cursor<'a> {
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(input: &'a str) -> Self {
        Cursor { input, bytes: input.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Parse { input: self.input.to_string(), pos: self.pos, msg: msg.into() }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.input[start..self.pos])
    }
}

fn scalar(field: Field, num: &str, den: Option<&str>) -> Result<FieldElement, PolyError> {
    let text = match den {
        Some(d) => format!("{num}/{d}"),
        None => num.to_string(),
    };
    // validate digits before handing to the field parser
    let _: BigInt = num.parse().map_err(|_| crate::field::FieldError::Parse(text.clone()))?;
    Ok(field.parse_scalar(&text)?)
}

pub fn parse_polynomial(field: Field, s: &str) -> Result<Polynomial, PolyError> {
    let mut cur = Cursor::new(s);
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let mut negative = false;
        match cur.peek() {
            None if first => return Err(cur.err("empty input")),
            None => break,
            Some(b'+') => cur.pos += 1,
            Some(b'-') => {
                negative = true;
                cur.pos += 1;
            }
            Some(_) if first => {}
            Some(c) => return Err(cur.err(format!("expected `+` or `-`, found `{}`", c as char))),
        }
        first = false;

        let mut coef = match cur.digits() {
            Some(num) => {
                let den = if cur.peek() == Some(b'/') {
                    cur.pos += 1;
                    Some(cur.digits().ok_or_else(|| cur.err("expected denominator"))?)
                } else {
                    None
                };
                Some(scalar(field, num, den)?)
            }
            None => None,
        };
        let mut mono = Monomial::ONE;
        let mut any_var = false;
        loop {
            match cur.peek() {
                Some(b'*') => {
                    cur.pos += 1;
                    if let Some(num) = cur.digits() {
                        let c = scalar(field, num, None)?;
                        coef = Some(match coef {
                            Some(a) => &a * &c,
                            None => c,
                        });
                    }
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let v = Var::from_char(c as char)
                        .ok_or_else(|| cur.err(format!("unknown variable `{}`", c as char)))?;
                    cur.pos += 1;
                    let mut e = 1u16;
                    if cur.peek() == Some(b'^') {
                        cur.pos += 1;
                        e = cur
                            .digits()
                            .ok_or_else(|| cur.err("expected exponent"))?
                            .parse()
                            .map_err(|_| cur.err("exponent too large"))?;
                    }
                    mono = mono * Monomial::var_pow(v, e);
                    any_var = true;
                }
                _ => break,
            }
        }
        if coef.is_none() && !any_var {
            return Err(cur.err("expected a term"));
        }
        let mut c = coef.unwrap_or_else(|| field.one());
        if negative {
            c = -&c;
        }
        terms.push((mono, c));
    }
    Ok(Polynomial::from_terms(field, MonomialOrder::default(), terms))
}

/// Parses a monomial written as a product of variables (`uvx^2`) or `1`.
pub fn parse_monomial(s: &str) -> Result<Monomial, PolyError> {
    let p = parse_polynomial(Field::Rational, s)?;
    match p.terms() {
        [(m, c)] if c.is_one() => Ok(*m),
        _ => Err(PolyError::Parse { input: s.to_string(), pos: 0, msg: "expected a monomial".into() }),
    }
}
