//! Buchberger's algorithm with the Gebauer-Möller pair criteria and the
//! normal selection strategy, producing reduced Gröbner bases.

use std::fmt;

use crate::field::Field;
use crate::ideal::IdealPresentation;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;

/// A reduced Gröbner basis: monic elements, sorted by increasing leading
/// monomial, no term of any element divisible by another leading monomial.
#[derive(Clone)]
pub struct GroebnerBasis {
    field: Field,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
    source: IdealPresentation,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.order == other.order && self.elements == other.elements
    }
}

impl Eq for GroebnerBasis {}

impl GroebnerBasis {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn source(&self) -> &IdealPresentation {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True for the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g.leading_monomial() == Some(Monomial::ONE))
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.elements.iter().filter_map(|g| g.leading_monomial())
    }

    /// Whether `m` is a standard monomial (divisible by no leading monomial).
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.leading_monomials().any(|lm| lm.divides(m))
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, self)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        normal_form(f, self).is_zero()
    }

    /// Basis view as a presentation, e.g. to feed into another computation.
    pub fn to_presentation(&self) -> IdealPresentation {
        IdealPresentation::from_parts(self.field, self.elements.clone())
    }

    pub(crate) fn from_reduced(
        field: Field,
        order: MonomialOrder,
        elements: Vec<Polynomial>,
        source: IdealPresentation,
    ) -> Self {
        GroebnerBasis { field, order, elements, source }
    }
}

impl fmt::Display for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.elements {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.elements.iter().map(|g| g.to_string())).finish()
    }
}

/// Full reduction of `f` by `divisors` (each monic, sorted in `order`).
pub(crate) fn reduce(f: &Polynomial, divisors: &[&Polynomial], order: MonomialOrder) -> Polynomial {
    let field = f.field();
    let mut p = f.clone().with_order(order);
    let mut rest: Vec<(Monomial, crate::field::FieldElement)> = Vec::new();
    let leads: Vec<Monomial> = divisors.iter().map(|g| g.leading_monomial().unwrap()).collect();
    while let Some((lm, lc)) = p.leading().cloned() {
        let reducer = leads.iter().position(|l| l.divides(&lm));
        match reducer {
            Some(i) => {
                let q = leads[i].quotient(&lm).unwrap();
                p = &p - &divisors[i].mul_term(&q, &lc);
            }
            None => {
                rest.push((lm, lc));
                let terms = p.into_terms();
                p = Polynomial::from_sorted(field, order, terms[1..].to_vec());
            }
        }
    }
    Polynomial::from_sorted(field, order, rest)
}

pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    let divs: Vec<&Polynomial> = gb.elements.iter().collect();
    reduce(f, &divs, gb.order)
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Gebauer-Möller update: inserts `h = polys[new]` into the active set `g`
/// and the pair list `pairs`.
fn update(polys: &[Polynomial], g: &mut Vec<usize>, pairs: &mut Vec<Pair>, new: usize) {
    let lh = polys[new].leading_monomial().unwrap();
    let lm = |k: usize| polys[k].leading_monomial().unwrap();

    let mut c: Vec<Pair> = g.iter().map(|&k| Pair { i: k, j: new, lcm: lm(k).lcm(&lh) }).collect();
    let mut d: Vec<Pair> = Vec::new();
    while !c.is_empty() {
        let p = c.remove(0);
        let coprime = lm(p.i).is_coprime(&lh);
        if coprime || !c.iter().chain(d.iter()).any(|q| q.lcm.divides(&p.lcm)) {
            d.push(p);
        }
    }
    // product criterion
    d.retain(|p| !lm(p.i).is_coprime(&lh));

    // old pairs made redundant by the new leading monomial
    pairs.retain(|p| !(lh.divides(&p.lcm) && lm(p.i).lcm(&lh) != p.lcm && lm(p.j).lcm(&lh) != p.lcm));
    pairs.extend(d);

    g.retain(|&k| !lh.divides(&lm(k)));
    g.push(new);
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, lcm: &Monomial) -> Polynomial {
    let (lf, cf) = f.leading().unwrap();
    let (lg, cg) = g.leading().unwrap();
    let a = f.mul_term(&lf.quotient(lcm).unwrap(), &cf.inv());
    let b = g.mul_term(&lg.quotient(lcm).unwrap(), &cg.inv());
    &a - &b
}

/// Reduced Gröbner basis of the ideal generated by `generators`.
pub(crate) fn groebner_of(field: Field, generators: &[Polynomial], order: MonomialOrder) -> Vec<Polynomial> {
    let mut polys: Vec<Polynomial> = Vec::new();
    let mut g: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut initial: Vec<Polynomial> =
        generators.iter().filter(|p| !p.is_zero()).map(|p| p.clone().with_order(order).monic()).collect();
    initial.sort_by(|a, b| a.leading_monomial().unwrap().cmp_in(&b.leading_monomial().unwrap(), order));
    for f in initial {
        let active: Vec<&Polynomial> = g.iter().map(|&k| &polys[k]).collect();
        let h = reduce(&f, &active, order);
        if h.is_zero() {
            continue;
        }
        polys.push(h.monic());
        update(&polys, &mut g, &mut pairs, polys.len() - 1);
    }

    while !pairs.is_empty() {
        // normal selection: smallest lcm first
        let (best, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.lcm.cmp_in(&b.lcm, order).then((a.i, a.j).cmp(&(b.i, b.j))))
            .unwrap();
        let pair = pairs.swap_remove(best);
        let s = s_polynomial(&polys[pair.i], &polys[pair.j], &pair.lcm);
        let active: Vec<&Polynomial> = g.iter().map(|&k| &polys[k]).collect();
        let h = reduce(&s, &active, order);
        if h.is_zero() {
            continue;
        }
        if h.leading_monomial() == Some(Monomial::ONE) {
            return vec![Polynomial::one(field).with_order(order)];
        }
        polys.push(h.monic());
        update(&polys, &mut g, &mut pairs, polys.len() - 1);
    }

    interreduce(g.iter().map(|&k| polys[k].clone()).collect(), order)
}

/// Turns a Gröbner basis into the reduced one.
fn interreduce(mut basis: Vec<Polynomial>, order: MonomialOrder) -> Vec<Polynomial> {
    basis.sort_by(|a, b| a.leading_monomial().unwrap().cmp_in(&b.leading_monomial().unwrap(), order));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for f in basis {
        let lf = f.leading_monomial().unwrap();
        if !minimal.iter().any(|g| g.leading_monomial().unwrap().divides(&lf)) {
            minimal.push(f);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&Polynomial> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g).collect();
        let (lm, lc) = minimal[i].leading().unwrap().clone();
        let tail = Polynomial::from_sorted(minimal[i].field(), order, minimal[i].terms()[1..].to_vec());
        let tail = reduce(&tail, &others, order);
        let head = Polynomial::term(lm, lc).with_order(order);
        reduced.push((&head + &tail).monic());
    }
    reduced.sort_by(|a, b| a.leading_monomial().unwrap().cmp_in(&b.leading_monomial().unwrap(), order));
    reduced
}

pub fn buchberger(ideal: &IdealPresentation, order: MonomialOrder) -> GroebnerBasis {
    let elements = groebner_of(ideal.field(), ideal.generators(), order);
    GroebnerBasis::from_reduced(ideal.field(), order, elements, ideal.clone())
}

/// Checks the Buchberger criterion directly: every S-polynomial reduces to 0.
pub fn is_groebner(elements: &[Polynomial], order: MonomialOrder) -> bool {
    let divs: Vec<&Polynomial> = elements.iter().collect();
    for i in 0..elements.len() {
        for j in i + 1..elements.len() {
            let lcm = elements[i].leading_monomial().unwrap().lcm(&elements[j].leading_monomial().unwrap());
            let s = s_polynomial(&elements[i], &elements[j], &lcm);
            if !reduce(&s, &divs, order).is_zero() {
                return false;
            }
        }
    }
    true
}
