//! Sparse polynomials over a runtime field in `u, v, w, x, y, z`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::field::{Field, FieldElement, FieldError};
use crate::monomial::{Monomial, MonomialOrder, Multidegree, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("zero polynomial has no multidegree")]
    ZeroPolynomial,
    #[error("inhomogeneous: {first} has degree {first_degree} but {second} has degree {second_degree}")]
    Inhomogeneous { first: String, first_degree: Multidegree, second: String, second_degree: Multidegree },
    #[error("parse error at byte {pos} in `{input}`: {msg}")]
    Parse { input: String, pos: usize, msg: String },
}

/// A polynomial with terms sorted in decreasing `order`; zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    order: MonomialOrder,
    terms: Vec<(Monomial, FieldElement)>,
}

impl Polynomial {
    pub fn zero(field: Field) -> Self {
        Polynomial { field, order: MonomialOrder::default(), terms: Vec::new() }
    }

    pub fn one(field: Field) -> Self {
        Self::monomial(field, Monomial::ONE)
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn monomial(field: Field, m: Monomial) -> Self {
        Self::term(m, field.one())
    }

    pub fn var(field: Field, v: Var) -> Self {
        Self::monomial(field, Monomial::var(v))
    }

    pub fn term(m: Monomial, c: FieldElement) -> Self {
        let field = c.field();
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { field, order: MonomialOrder::default(), terms }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(
        field: Field,
        order: MonomialOrder,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> Self {
        let mut acc: HashMap<Monomial, FieldElement> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(c.field(), field);
            match acc.get_mut(&m) {
                Some(e) => *e = &*e + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp_in(&a.0, order));
        Polynomial { field, order, terms }
    }

    /// Takes terms already sorted strictly decreasing with nonzero coefficients.
    pub(crate) fn from_sorted(field: Field, order: MonomialOrder, terms: Vec<(Monomial, FieldElement)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0.cmp_in(&w[1].0, order).is_gt()));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { field, order, terms }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn with_order(mut self, order: MonomialOrder) -> Self {
        if self.order != order {
            self.order = order;
            self.terms.sort_by(|a, b| b.0.cmp_in(&a.0, order));
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, FieldElement)> {
        self.terms
    }

    pub fn leading(&self) -> Option<&(Monomial, FieldElement)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| c.clone()).unwrap_or_else(|| self.field.zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.field).with_order(self.order);
        }
        Polynomial {
            field: self.field,
            order: self.order,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            field: self.field,
            order: self.order,
            terms: self.terms.iter().map(|(t, a)| (*t * *m, a.clone())).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.field).with_order(self.order);
        }
        Polynomial {
            field: self.field,
            order: self.order,
            terms: self.terms.iter().map(|(t, a)| (*t * *m, a * c)).collect(),
        }
    }

    /// Leading coefficient normalized to one.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inv()),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.field).with_order(self.order);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient by a monomial, or `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        let terms =
            self.terms.iter().map(|(t, c)| m.quotient(t).map(|q| (q, c.clone()))).collect::<Option<Vec<_>>>()?;
        Some(Polynomial { field: self.field, order: self.order, terms })
    }

    /// Exact quotient `self / g`, or `None` if `g` does not divide `self`.
    pub fn div_exact(&self, g: &Polynomial) -> Option<Polynomial> {
        let g = g.clone().with_order(self.order);
        let (glm, glc) = g.leading()?.clone();
        let ginv = glc.inv();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((lm, lc)) = rem.leading().cloned() {
            let q = glm.quotient(&lm)?;
            let c = &lc * &ginv;
            rem = &rem - &g.mul_term(&q, &c);
            quot.push((q, c));
        }
        Some(Polynomial::from_terms(self.field, self.order, quot))
    }

    /// Common multidegree of all terms.
    pub fn multidegree(&self) -> Result<Multidegree, PolyError> {
        let (m0, c0) = self.terms.first().ok_or(PolyError::ZeroPolynomial)?;
        let d0 = m0.multidegree();
        for (m, c) in &self.terms[1..] {
            let d = m.multidegree();
            if d != d0 {
                return Err(PolyError::Inhomogeneous {
                    first: Polynomial::term(*m0, c0.clone()).to_string(),
                    first_degree: d0,
                    second: Polynomial::term(*m, c.clone()).to_string(),
                    second_degree: d,
                });
            }
        }
        Ok(d0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.multidegree().is_ok()
    }

    /// True when no term involves the auxiliary elimination variable.
    pub(crate) fn is_free_of_aux(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.aux_exponent() == 0)
    }

    pub fn parse(field: Field, s: &str) -> Result<Polynomial, PolyError> {
        crate::parse::parse_polynomial(field, s)
    }

    fn check(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::Mismatch(self.field, other.field).into())
        }
    }
}

fn merge(a: &Polynomial, b: &Polynomial, negate_b: bool) -> Polynomial {
    debug_assert_eq!(a.field, b.field, "mixed-field arithmetic");
    let order = a.order;
    let b_sorted;
    let b = if b.order == order {
        b
    } else {
        b_sorted = b.clone().with_order(order);
        &b_sorted
    };
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() && j < b.terms.len() {
        let (ma, ca) = &a.terms[i];
        let (mb, cb) = &b.terms[j];
        match ma.cmp_in(mb, order) {
            std::cmp::Ordering::Greater => {
                out.push((*ma, ca.clone()));
                i += 1;
            }
            std::cmp::Ordering::Less => {
                out.push((*mb, if negate_b { -cb } else { cb.clone() }));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b { ca - cb } else { ca + cb };
                if !c.is_zero() {
                    out.push((*ma, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a.terms[i..].iter().cloned());
    out.extend(b.terms[j..].iter().map(|(m, c)| (*m, if negate_b { -c } else { c.clone() })));
    Polynomial { field: a.field, order, terms: out }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        merge(self, rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        merge(self, rhs, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { field: self.field, order: self.order, terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.field, rhs.field, "mixed-field arithmetic");
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.field).with_order(self.order);
        }
        if rhs.terms.len() == 1 {
            let (m, c) = &rhs.terms[0];
            return self.mul_term(m, c);
        }
        let products =
            self.terms.iter().flat_map(|(ma, ca)| rhs.terms.iter().map(move |(mb, cb)| (*ma * *mb, ca * cb)));
        Polynomial::from_terms(self.field, self.order, products)
    }
}

pub fn poly_add(f: &Polynomial, g: &Polynomial) -> Result<Polynomial, PolyError> {
    f.check(g)?;
    Ok(f + g)
}

pub fn poly_mul(f: &Polynomial, g: &Polynomial) -> Result<Polynomial, PolyError> {
    f.check(g)?;
    Ok(f * g)
}

pub fn multidegree_of(f: &Polynomial) -> Result<Multidegree, PolyError> {
    f.multidegree()
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [{}]", self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(Field::Rational, s).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(&p("vz - wy") + &p("wy"), p("vz"));
        assert_eq!(&p("uy - vx") + &Polynomial::zero(Field::Rational), p("uy - vx"));
        assert!((&p("uy - vx") + &p("-uy + vx")).is_zero());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p("uy - vx") * &p("1"), p("uy - vx"));
        assert_eq!(&p("x - y") * &p("x + y"), p("x^2 - y^2"));
        assert_eq!(&p("u") * &p("v"), p("uv"));
    }

    #[test]
    fn multidegree_examples() {
        assert_eq!(p("uy - vx").multidegree().unwrap(), Multidegree::new(1, 1, 0, 1));
        assert_eq!(p("vz - wy").multidegree().unwrap(), Multidegree::new(0, 1, 1, 1));
        assert!(matches!(p("u + x").multidegree(), Err(PolyError::Inhomogeneous { .. })));
        assert_eq!(Polynomial::zero(Field::Rational).multidegree(), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn field_mismatch_rejected() {
        let f2 = Field::prime(2).unwrap();
        let a = Polynomial::parse(f2, "u").unwrap();
        assert!(poly_add(&a, &p("u")).is_err());
        assert!(poly_mul(&a, &p("u")).is_err());
    }

    #[test]
    fn exact_division() {
        let f = p("u^2y^2 - v^2x^2");
        assert_eq!(f.div_exact(&p("uy - vx")).unwrap(), p("uy + vx"));
        assert!(p("u + v").div_exact(&p("u")).is_none());
        assert_eq!(p("u^2v + uw").div_monomial(&Monomial::var(Var::U)).unwrap(), p("uv + w"));
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(p("-1/2wy + 3uv^2z").to_string(), "3uv^2z - 1/2wy");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("2 - u").to_string(), "-u + 2");
    }

    #[test]
    fn pow_matches_repeated_product() {
        let d = p("uy - vx");
        assert_eq!(d.pow(3), &(&d * &d) * &d);
        assert_eq!(d.pow(0), p("1"));
    }
}
