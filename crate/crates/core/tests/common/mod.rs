#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use proptest::prelude::*;
use thickening::monomial::monomials_of_multidegree;
use thickening::*;

/// One thickening per (characteristic, t), shared across tests so that the
/// saturated bases are computed once.
type Cache = Mutex<HashMap<(u64, u32), Arc<Thickening>>>;

pub fn thickening(field: Field, t: u32) -> Arc<Thickening> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (field.characteristic(), t);
    if let Some(th) = cache.lock().unwrap().get(&key) {
        return th.clone();
    }
    let th = Arc::new(build_determinantal(field).thickening(t).unwrap());
    cache.lock().unwrap().entry(key).or_insert(th).clone()
}

pub fn monomial(max_exp: u16) -> impl Strategy<Value = Monomial> {
    proptest::array::uniform6(0..=max_exp).prop_map(Monomial::new)
}

pub fn scalar(field: Field) -> impl Strategy<Value = FieldElement> {
    (-6i64..=6, 1i64..=4).prop_map(move |(n, d)| match field {
        Field::Rational => field.from_ratio(n, d).unwrap(),
        Field::Prime(_) => field.from_int(n),
    })
}

pub fn polynomial(field: Field, max_terms: usize, max_exp: u16) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((monomial(max_exp), scalar(field)), 0..=max_terms)
        .prop_map(move |terms| Polynomial::from_terms(field, MonomialOrder::default(), terms))
}

/// A cochain with up to three nonzero components at random `k`-subsets,
/// each a small polynomial over a random power of the site's product.
pub fn sparse_cochain(field: Field, t: u32, k: usize) -> impl Strategy<Value = Cochain> {
    let sites = VarSet::of_size(k);
    let n = sites.len();
    proptest::collection::vec((0..n, polynomial(field, 3, 2), 0u32..=2), 0..=3).prop_map(move |parts| {
        let th = thickening(field, t);
        let mut c = Cochain::zero(&th, k).unwrap();
        for (i, num, e) in parts {
            let s = sites[i];
            if c.component(s).is_none() {
                c.add_component(th.element(s, num, e)).unwrap();
            }
        }
        c
    })
}

/// A homogeneous cochain of multidegree `d`: each chosen site gets a
/// monomial numerator of degree `d + e·deg(∏S)`, if one exists.
pub fn homogeneous_cochain(th: &Thickening, k: usize, d: Multidegree, picks: &[(usize, u32, usize, i64)]) -> Cochain {
    let sites = VarSet::of_size(k);
    let field = th.field();
    let mut c = Cochain::zero(th, k).unwrap();
    for &(i, e, j, coeff) in picks {
        let s = sites[i % sites.len()];
        if c.component(s).is_some() {
            continue;
        }
        let monos = monomials_of_multidegree(d + s.degree().scale(e as i32));
        if monos.is_empty() || coeff == 0 {
            continue;
        }
        let num = Polynomial::term(monos[j % monos.len()], field.from_int(coeff));
        c.add_component(th.element(s, num, e)).unwrap();
    }
    c
}

pub fn both_fields() -> [Field; 2] {
    [Field::Rational, Field::prime(2).unwrap()]
}
