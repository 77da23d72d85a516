//! The generic 2x3 matrix `[[u, v, w], [x, y, z]]`, its 2x2 minors, the
//! characteristic-p parameters of the Frobenius-power families and a few
//! closed-form counts.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::Field;
use rayon::prelude::*;

use crate::ideal::{graded_membership_oracle, ideal_power, membership, IdealPresentation};
use crate::localize::{LocalizeError, Thickening};
use crate::monomial::{Monomial, Multidegree, Var, VAR_DEGREES};
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("characteristic-p parameters need a prime field, got {0}")]
    NeedsPrimeField(Field),
    #[error("thickening exponent t = {0} is too small (need t >= 2)")]
    SmallThickening(u32),
    #[error("m = {m} is not admissible: need 0 < m <= q = {q} and q2 = {q2} | m")]
    BadM { m: u64, q: u64, q2: u64 },
    #[error("phi needs zeta >= 1")]
    ZeroZeta,
    #[error(transparent)]
    Field(#[from] crate::field::FieldError),
    #[error(transparent)]
    Localize(#[from] LocalizeError),
    #[error("characteristic {0} cannot divide by every integer below t")]
    CharacteristicObstruction(u64),
    #[error("fixture error: {0}")]
    Fixture(String),
    #[error(transparent)]
    Expr(#[from] crate::expr::ExprError),
    #[error(transparent)]
    Cech(#[from] crate::cech::CechError),
    #[error(transparent)]
    Ideal(#[from] crate::ideal::IdealError),
}

/// The minors `Δ1 = vz - wy`, `Δ2 = wx - uz`, `Δ3 = uy - vx` over a field.
#[derive(Debug, Clone)]
pub struct DeterminantalData {
    pub field: Field,
    pub minors: [Polynomial; 3],
    pub grading: [[i32; 4]; 6],
}

impl DeterminantalData {
    pub fn ideal(&self) -> IdealPresentation {
        IdealPresentation::new(self.field, self.minors.to_vec()).expect("minors are nonzero")
    }

    pub fn thickening(&self, t: u32) -> Result<Thickening, LocalizeError> {
        Thickening::new(&self.ideal(), t)
    }

    /// `Δ1, Δ2, Δ3` by 1-based index.
    pub fn minor(&self, i: usize) -> &Polynomial {
        &self.minors[i - 1]
    }
}

fn binomial(a: &Polynomial, b: &Polynomial) -> Polynomial {
    a - b
}

fn mono(field: Field, vars: &[Var]) -> Polynomial {
    Polynomial::monomial(field, vars.iter().fold(Monomial::ONE, |m, v| m * Monomial::var(*v)))
}

pub fn build_determinantal(field: Field) -> DeterminantalData {
    use Var::*;
    let m = |a: &[Var], b: &[Var]| binomial(&mono(field, a), &mono(field, b));
    DeterminantalData {
        field,
        minors: [m(&[V, Z], &[W, Y]), m(&[W, X], &[U, Z]), m(&[U, Y], &[V, X])],
        grading: VAR_DEGREES,
    }
}

/// Parameters of the characteristic-p families for `(p, t)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharPParams {
    pub p: u64,
    pub t: u32,
    /// Largest power of `p` with `q <= t - 1`.
    pub q: u64,
    /// Smallest power of `p` with `q + q2 >= t`.
    pub q2: u64,
    /// `{m : 0 < m <= q, q2 | m}`.
    pub m_list: Vec<u64>,
    /// `2·⌊q/q2⌋ - 1`.
    pub bound: u64,
}

pub fn charp_params(p: u64, t: u32) -> Result<CharPParams, ScenarioError> {
    Field::prime(p)?;
    if t < 2 {
        return Err(ScenarioError::SmallThickening(t));
    }
    let t64 = t as u64;
    let mut q = 1;
    while q * p < t64 {
        q *= p;
    }
    let mut q2 = 1;
    while q + q2 < t64 {
        q2 *= p;
    }
    let m_list: Vec<u64> = (1..=q).filter(|m| m % q2 == 0).collect();
    let bound = 2 * (q / q2) - 1;
    Ok(CharPParams { p, t, q, q2, m_list, bound })
}

pub fn rank_lower_bound(p: u64, t: u32) -> Result<u64, ScenarioError> {
    Ok(charp_params(p, t)?.bound)
}

/// `φ_ζ(a, b) = Σ_{i<ζ} a^i b^(ζ-1-i)`, so that `φ_ζ(a,b)(a - b) = a^ζ - b^ζ`.
pub fn phi(zeta: u32, a: &Polynomial, b: &Polynomial) -> Result<Polynomial, ScenarioError> {
    if zeta == 0 {
        return Err(ScenarioError::ZeroZeta);
    }
    let mut acc = Polynomial::zero(a.field());
    for i in 0..zeta {
        acc = &acc + &(&a.pow(i) * &b.pow(zeta - 1 - i));
    }
    Ok(acc)
}

/// Rank of the degree-`j` piece of the top local cohomology of the
/// six-variable polynomial ring: monomials `u^-a … z^-f`, all exponents
/// at least 1, total degree `j`. Equals `C(-j-1, 5)`.
pub fn h6_graded_rank(j: i64) -> u64 {
    if j > -6 {
        return 0;
    }
    let n = (-j - 1) as u64;
    (0..5).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Result of comparing Gröbner membership with the linear-algebra oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub t: u32,
    pub characteristic: u64,
    pub max_degree: u32,
    pub checked: usize,
    pub members: usize,
    /// Elements on which the two answers differ, as text.
    pub disagreements: Vec<String>,
}

fn monomials_up_to(max_degree: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::ONE];
    let mut frontier = vec![Monomial::ONE];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for m in &frontier {
            // extend only by variables at or after the last one used, so each
            // monomial appears once
            let last = (0..6).rev().find(|&i| m.exponents()[i] > 0).unwrap_or(0);
            for i in last..6 {
                next.push(*m * Monomial::var(Var::from_index(i)));
            }
        }
        out.extend(next.iter().copied());
        frontier = next;
    }
    out
}

/// Every product `monomial · Δ1^a Δ2^b Δ3^c` of total degree at most
/// `max_degree`, plus the difference of each pair of consecutive products
/// sharing a multidegree.
pub fn sweep_elements(data: &DeterminantalData, max_degree: u32) -> Vec<Polynomial> {
    let mut products = Vec::new();
    for e in 0..=max_degree / 2 {
        for a in 0..=e {
            for b in 0..=e - a {
                let c = e - a - b;
                let minors = &(&data.minors[0].pow(a) * &data.minors[1].pow(b)) * &data.minors[2].pow(c);
                for m in monomials_up_to(max_degree - 2 * e) {
                    products.push(minors.mul_monomial(&m));
                }
            }
        }
    }
    let mut by_degree: std::collections::BTreeMap<Multidegree, Vec<&Polynomial>> = Default::default();
    for f in &products {
        by_degree.entry(f.multidegree().expect("products of homogeneous factors")).or_default().push(f);
    }
    let mut out = products.clone();
    for group in by_degree.values() {
        for w in group.windows(2) {
            let diff = w[0] - w[1];
            if !diff.is_zero() {
                out.push(diff);
            }
        }
    }
    out
}

/// Checks Gröbner membership in `I^t` against [`graded_membership_oracle`]
/// on every element of [`sweep_elements`].
pub fn oracle_sweep(field: Field, t: u32, max_degree: u32) -> Result<SweepReport, ScenarioError> {
    let data = build_determinantal(field);
    let power = ideal_power(&data.ideal(), t)?;
    let gb = power.groebner();
    let elements = sweep_elements(&data, max_degree);
    let results: Vec<(bool, bool)> = elements
        .par_iter()
        .map(|f| {
            let oracle = graded_membership_oracle(f, &power).expect("homogeneous input");
            (membership(f, &gb), oracle)
        })
        .collect();
    let disagreements =
        elements.iter().zip(&results).filter(|(_, (a, b))| a != b).map(|(f, _)| f.to_string()).collect();
    Ok(SweepReport {
        t,
        characteristic: field.characteristic(),
        max_degree,
        checked: elements.len(),
        members: results.iter().filter(|(a, _)| *a).count(),
        disagreements,
    })
}

/// Rank of `H^k` in one multidegree, after escalating the cutoff.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowEntry {
    pub multidegree: Multidegree,
    pub rank: usize,
    pub stable: bool,
    pub cutoff: u32,
}

/// The standard-degree-0 part of `H^k` restricted to the multidegrees
/// `(0,0,0,s)` with `|s| <= q`, together with a ring of neighbouring
/// multidegrees that should contribute nothing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowReport {
    pub k: usize,
    pub t: u32,
    pub characteristic: u64,
    pub q: u64,
    pub window: Vec<WindowEntry>,
    pub neighbours: Vec<WindowEntry>,
    pub rank: usize,
    pub stable: bool,
}

impl WindowReport {
    pub fn neighbours_vanish(&self) -> bool {
        self.neighbours.iter().all(|e| e.rank == 0)
    }
}

fn window_entry(th: &Thickening, k: usize, d: Multidegree, start: u32, max: u32) -> Result<WindowEntry, ScenarioError> {
    let r = crate::cech::escalate(start, max, |c| crate::cech::cohomology_rank(th, k, d, c), |r| r.stable)?;
    Ok(WindowEntry { multidegree: d, rank: r.rank, stable: r.stable, cutoff: r.cutoff })
}

pub fn degree_zero_window(
    th: &Thickening,
    k: usize,
    start_cutoff: u32,
    max_cutoff: u32,
) -> Result<WindowReport, ScenarioError> {
    let p = match th.field() {
        Field::Prime(p) => p,
        f => return Err(ScenarioError::NeedsPrimeField(f)),
    };
    let q = charp_params(p, th.t())?.q as i32;
    let window_degrees: Vec<Multidegree> = (-q..=q).map(|s| Multidegree::new(0, 0, 0, s)).collect();
    let mut neighbour_degrees = vec![Multidegree::new(0, 0, 0, -q - 1), Multidegree::new(0, 0, 0, q + 1)];
    for (a, b, c) in [(1, -1, 0), (-1, 1, 0), (1, 0, -1), (-1, 0, 1), (0, 1, -1), (0, -1, 1)] {
        for s in [-1, 0, 1] {
            neighbour_degrees.push(Multidegree::new(a, b, c, s));
        }
    }
    let run = |ds: &[Multidegree]| -> Result<Vec<WindowEntry>, ScenarioError> {
        ds.par_iter().map(|&d| window_entry(th, k, d, start_cutoff, max_cutoff)).collect()
    };
    let window = run(&window_degrees)?;
    let neighbours = run(&neighbour_degrees)?;
    let stable = window.iter().chain(&neighbours).all(|e| e.stable);
    Ok(WindowReport {
        k,
        t: th.t(),
        characteristic: p,
        q: q as u64,
        rank: window.iter().map(|e| e.rank).sum(),
        window,
        neighbours,
        stable,
    })
}
