//! Ideals of `F[u,v,w,x,y,z]`: presentations, powers, membership, colon
//! ideals, monomial saturation and a brute-force graded membership oracle.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::field::Field;
use crate::groebner::{buchberger, groebner_of, GroebnerBasis};
use crate::linalg::ExactMatrix;
use crate::monomial::{monomials_of_multidegree, Monomial, MonomialOrder, Multidegree};
use crate::poly::{PolyError, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("ideal generators must be nonzero")]
    ZeroGenerator,
    #[error("ideal power exponent must be at least 1")]
    ZeroPower,
    #[error("cannot take the colon by the zero polynomial")]
    ZeroColon,
    #[error("graded oracle needs homogeneous input: {0}")]
    Inhomogeneous(PolyError),
    #[error("field mismatch between {0} and {1}")]
    FieldMismatch(Field, Field),
}

/// A finite generating set of an ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealPresentation {
    field: Field,
    generators: Vec<Polynomial>,
    homogeneous: bool,
}

impl IdealPresentation {
    pub fn new(field: Field, generators: Vec<Polynomial>) -> Result<Self, IdealError> {
        if generators.iter().any(|g| g.is_zero()) {
            return Err(IdealError::ZeroGenerator);
        }
        if let Some(g) = generators.iter().find(|g| g.field() != field) {
            return Err(IdealError::FieldMismatch(field, g.field()));
        }
        Ok(Self::from_parts(field, generators))
    }

    pub(crate) fn from_parts(field: Field, generators: Vec<Polynomial>) -> Self {
        let homogeneous = generators.iter().all(|g| g.multidegree().is_ok());
        IdealPresentation { field, generators, homogeneous }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Whether every generator is multigraded-homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn groebner(&self) -> GroebnerBasis {
        buchberger(self, MonomialOrder::default())
    }
}

/// All products of `t` generators, taken as multisets and deduplicated.
pub fn ideal_power(ideal: &IdealPresentation, t: u32) -> Result<IdealPresentation, IdealError> {
    if t == 0 {
        return Err(IdealError::ZeroPower);
    }
    let n = ideal.generators.len();
    let mut out: Vec<Polynomial> = Vec::new();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    // nondecreasing index sequences of length t
    let mut idx = vec![0usize; t as usize];
    if n == 0 {
        return Ok(IdealPresentation::from_parts(ideal.field, out));
    }
    loop {
        let mut prod = Polynomial::one(ideal.field);
        for &i in &idx {
            prod = &prod * &ideal.generators[i];
        }
        if !prod.is_zero() && seen.insert(prod.to_string()) {
            out.push(prod);
        }
        // advance
        let mut k = idx.len();
        loop {
            if k == 0 {
                return Ok(IdealPresentation::from_parts(ideal.field, out));
            }
            k -= 1;
            if idx[k] + 1 < n {
                let v = idx[k] + 1;
                for slot in &mut idx[k..] {
                    *slot = v;
                }
                break;
            }
        }
    }
}

pub fn membership(f: &Polynomial, gb: &GroebnerBasis) -> bool {
    f.is_zero() || gb.contains(f)
}

/// `(J : g)` via `J ∩ <g>`, computed by eliminating an auxiliary variable
/// `s` from `<s·J, (1 - s)·g>` and dividing the result by `g`.
pub fn colon(gb: &GroebnerBasis, g: &Polynomial) -> Result<GroebnerBasis, IdealError> {
    if g.is_zero() {
        return Err(IdealError::ZeroColon);
    }
    let field = gb.field();
    let order = gb.order();
    if g.leading_monomial() == Some(Monomial::ONE) && g.len() == 1 {
        return Ok(gb.clone());
    }
    let s = Monomial::aux(1);
    let mut gens: Vec<Polynomial> = gb.elements().iter().map(|f| f.mul_monomial(&s)).collect();
    let g_ord = g.clone().with_order(order);
    gens.push(&g_ord - &g_ord.mul_monomial(&s));
    let elim = groebner_of(field, &gens, order);
    let quotients: Vec<Polynomial> = elim
        .into_iter()
        .filter(|h| h.is_free_of_aux())
        .map(|h| h.div_exact(&g_ord).expect("intersection element divisible by g"))
        .collect();
    let elements = groebner_of(field, &quotients, order);
    Ok(GroebnerBasis::from_reduced(field, order, elements.clone(), IdealPresentation::from_parts(field, elements)))
}

/// The chain `J ⊆ (J : m) ⊆ (J : m²) ⊆ …` up to the first repeated basis.
/// The last entry is `(J : m^∞)`.
pub fn saturation_chain(gb: &GroebnerBasis, m: &Monomial) -> Vec<GroebnerBasis> {
    let mut chain = vec![gb.clone()];
    if m.is_one() {
        return chain;
    }
    let g = Polynomial::monomial(gb.field(), *m);
    loop {
        let next = colon(chain.last().unwrap(), &g).expect("monomial is nonzero");
        if &next == chain.last().unwrap() {
            return chain;
        }
        chain.push(next);
    }
}

pub fn saturate(gb: &GroebnerBasis, m: &Monomial) -> GroebnerBasis {
    saturation_chain(gb, m).pop().unwrap()
}

/// Decides `f ∈ ideal` by linear algebra in the multidegree of `f`: `f`
/// must lie in the span of all `monomial · generator` of that degree.
pub fn graded_membership_oracle(f: &Polynomial, ideal: &IdealPresentation) -> Result<bool, IdealError> {
    if f.is_zero() {
        return Ok(true);
    }
    let d = f.multidegree().map_err(IdealError::Inhomogeneous)?;
    let mut products: Vec<Polynomial> = Vec::new();
    for g in ideal.generators() {
        let dg = g.multidegree().map_err(IdealError::Inhomogeneous)?;
        for mono in monomials_of_multidegree(d - dg) {
            products.push(g.mul_monomial(&mono));
        }
    }
    Ok(in_span(f, &products, d))
}

fn in_span(f: &Polynomial, spanning: &[Polynomial], d: Multidegree) -> bool {
    let field = f.field();
    let basis = monomials_of_multidegree(d);
    let coords = |p: &Polynomial| -> Vec<_> { basis.iter().map(|m| p.coefficient(m)).collect() };
    let columns: Vec<_> = spanning.iter().map(coords).collect();
    let m = ExactMatrix::from_columns(field, basis.len(), &columns);
    m.column_space_contains(&coords(f))
}
