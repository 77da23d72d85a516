//! Monomials in the six variables `u, v, w, x, y, z`, their `Z^4`
//! multidegree and the monomial orders used by the Gröbner engine.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Number of ring variables.
pub const NVARS: usize = 6;
/// Exponent slots; the last slot holds an auxiliary elimination variable
/// that is only ever nonzero inside colon computations.
pub(crate) const SLOTS: usize = NVARS + 1;
pub(crate) const AUX: usize = NVARS;

pub const VAR_NAMES: [char; NVARS] = ['u', 'v', 'w', 'x', 'y', 'z'];

/// Multidegree of each variable:
/// `u=(1,0,0,0) v=(0,1,0,0) w=(0,0,1,0) x=(1,0,0,1) y=(0,1,0,1) z=(0,0,1,1)`.
pub const VAR_DEGREES: [[i32; 4]; NVARS] =
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1]];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    U = 0,
    V = 1,
    W = 2,
    X = 3,
    Y = 4,
    Z = 5,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::U, Var::V, Var::W, Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Var {
        Var::ALL[i]
    }

    pub fn from_char(c: char) -> Option<Var> {
        VAR_NAMES.iter().position(|&n| n == c).map(Var::from_index)
    }

    pub fn name(self) -> char {
        VAR_NAMES[self.index()]
    }
}

/// A `Z^4` multidegree; coordinates may be negative in localizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Multidegree(pub [i32; 4]);

impl Multidegree {
    pub const ZERO: Multidegree = Multidegree([0; 4]);

    pub fn new(a: i32, b: i32, c: i32, d: i32) -> Self {
        Multidegree([a, b, c, d])
    }

    pub fn scale(self, k: i32) -> Self {
        Multidegree(self.0.map(|c| c * k))
    }

    /// Standard (total) degree: the sum of the first three coordinates.
    pub fn total(self) -> i32 {
        self.0[0] + self.0[1] + self.0[2]
    }
}

impl Add for Multidegree {
    type Output = Multidegree;
    fn add(self, o: Multidegree) -> Multidegree {
        Multidegree(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for Multidegree {
    type Output = Multidegree;
    fn sub(self, o: Multidegree) -> Multidegree {
        Multidegree(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for Multidegree {
    type Output = Multidegree;
    fn neg(self) -> Multidegree {
        self.scale(-1)
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

impl std::str::FromStr for Multidegree {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<i32> = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .map(|p| p.trim().parse::<i32>().map_err(|e| format!("bad multidegree `{s}`: {e}")))
            .collect::<Result<_, _>>()?;
        let arr: [i32; 4] = parts.try_into().map_err(|_| format!("multidegree `{s}` needs four coordinates"))?;
        Ok(Multidegree(arr))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub(crate) exps: [u16; SLOTS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; SLOTS] };

    pub fn new(exps: [u16; NVARS]) -> Self {
        let mut m = Monomial::ONE;
        m.exps[..NVARS].copy_from_slice(&exps);
        m
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u16) -> Self {
        let mut m = Monomial::ONE;
        m.exps[v.index()] = e;
        m
    }

    /// Product of the given variables, each to the first power.
    pub fn squarefree(vars: &[Var]) -> Self {
        let mut m = Monomial::ONE;
        for v in vars {
            m.exps[v.index()] = 1;
        }
        m
    }

    pub(crate) fn aux(e: u16) -> Self {
        let mut m = Monomial::ONE;
        m.exps[AUX] = e;
        m
    }

    pub fn exponent(&self, v: Var) -> u16 {
        self.exps[v.index()]
    }

    pub fn exponents(&self) -> [u16; NVARS] {
        std::array::from_fn(|i| self.exps[i])
    }

    pub(crate) fn aux_exponent(&self) -> u16 {
        self.exps[AUX]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn multidegree(&self) -> Multidegree {
        let mut d = [0i32; 4];
        for (i, vd) in VAR_DEGREES.iter().enumerate() {
            let e = self.exps[i] as i32;
            for k in 0..4 {
                d[k] += e * vd[k];
            }
        }
        Multidegree(d)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial { exps: std::array::from_fn(|i| other.exps[i] - self.exps[i]) })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial { exps: std::array::from_fn(|i| self.exps[i].max(other.exps[i])) }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial { exps: std::array::from_fn(|i| self.exps[i].min(other.exps[i])) }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn pow(&self, k: u16) -> Monomial {
        Monomial { exps: self.exps.map(|e| e * k) }
    }

    /// Variables with nonzero exponent.
    pub fn support(&self) -> Vec<Var> {
        Var::ALL.iter().copied().filter(|v| self.exponent(*v) > 0).collect()
    }

    /// Compares under `order`. The auxiliary slot is compared first, which
    /// makes every order an elimination order for it.
    pub fn cmp_in(&self, other: &Monomial, order: MonomialOrder) -> Ordering {
        let aux = self.exps[AUX].cmp(&other.exps[AUX]);
        if aux != Ordering::Equal {
            return aux;
        }
        match order {
            MonomialOrder::Lex => self.exps[..NVARS].cmp(&other.exps[..NVARS]),
            MonomialOrder::DegRevLex => {
                let (da, db) = (self.total_degree(), other.total_degree());
                if da != db {
                    return da.cmp(&db);
                }
                for i in (0..NVARS).rev() {
                    let c = self.exps[i].cmp(&other.exps[i]);
                    if c != Ordering::Equal {
                        return c.reverse();
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// All monomials of multidegree `d`, in increasing lex order of `(x, y)`.
///
/// The grading fixes `u+x`, `v+y`, `w+z` and `x+y+z`, so choosing the
/// exponents of `x` and `y` determines the monomial.
pub fn monomials_of_multidegree(d: Multidegree) -> Vec<Monomial> {
    let [a, b, c, e] = d.0;
    let mut out = Vec::new();
    if a < 0 || b < 0 || c < 0 || e < 0 {
        return out;
    }
    for x in 0..=a {
        for y in 0..=b {
            let z = e - x - y;
            if z < 0 || z > c {
                continue;
            }
            out.push(Monomial::new([(a - x) as u16, (b - y) as u16, (c - z) as u16, x as u16, y as u16, z as u16]));
        }
    }
    out
}

pub fn monomial_order_cmp(a: &Monomial, b: &Monomial, order: MonomialOrder) -> Ordering {
    a.cmp_in(b, order)
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, o: Monomial) -> Monomial {
        Monomial { exps: std::array::from_fn(|i| self.exps[i] + o.exps[i]) }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (i, &e) in self.exps.iter().enumerate() {
            let name = if i == AUX { 's' } else { VAR_NAMES[i] };
            match e {
                0 => {}
                1 => write!(f, "{name}")?,
                _ => write!(f, "{name}^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: [u16; 6]) -> Monomial {
        Monomial::new(e)
    }

    #[test]
    fn order_examples() {
        let u = Monomial::var(Var::U);
        let v = Monomial::var(Var::V);
        assert_eq!(u.cmp_in(&v, MonomialOrder::Lex), Ordering::Greater);
        assert_eq!((u * u).cmp_in(&(u * v), MonomialOrder::DegRevLex), Ordering::Greater);
        assert_eq!(u.cmp_in(&u, MonomialOrder::DegRevLex), Ordering::Equal);
        // degrevlex: uz < vw? both degree 2, last variable z present in uz only
        let uz = m([1, 0, 0, 0, 0, 1]);
        let vw = m([0, 1, 1, 0, 0, 0]);
        assert_eq!(uz.cmp_in(&vw, MonomialOrder::DegRevLex), Ordering::Less);
        assert_eq!(uz.cmp_in(&vw, MonomialOrder::Lex), Ordering::Greater);
    }

    #[test]
    fn aux_slot_dominates() {
        let s = Monomial::aux(1);
        let big = m([9, 9, 9, 9, 9, 9]);
        for order in [MonomialOrder::DegRevLex, MonomialOrder::Lex] {
            assert_eq!(s.cmp_in(&big, order), Ordering::Greater);
        }
    }

    #[test]
    fn multidegrees_of_variables() {
        assert_eq!(Monomial::var(Var::Z).multidegree(), Multidegree::new(0, 0, 1, 1));
        let uy = m([1, 0, 0, 0, 1, 0]);
        let vx = m([0, 1, 0, 1, 0, 0]);
        assert_eq!(uy.multidegree(), Multidegree::new(1, 1, 0, 1));
        assert_eq!(uy.multidegree(), vx.multidegree());
        let mono = m([2, 0, 1, 3, 0, 4]);
        assert_eq!(mono.multidegree().total() as u32, mono.total_degree());
    }

    #[test]
    fn parse_multidegree() {
        assert_eq!("0,0,0,-1".parse::<Multidegree>().unwrap(), Multidegree::new(0, 0, 0, -1));
        assert_eq!("(1,2,3,4)".parse::<Multidegree>().unwrap(), Multidegree::new(1, 2, 3, 4));
        assert!("1,2".parse::<Multidegree>().is_err());
    }

    #[test]
    fn enumerates_graded_monomials() {
        let d = Multidegree::new(1, 1, 0, 1);
        let ms = monomials_of_multidegree(d);
        assert_eq!(ms.len(), 2); // uy and vx
        assert!(ms.iter().all(|m| m.multidegree() == d));
        assert!(monomials_of_multidegree(Multidegree::new(-1, 0, 0, 0)).is_empty());
        // brute force over a box
        let d = Multidegree::new(2, 1, 2, 3);
        let mut count = 0;
        for e in 0..(3u32.pow(6)) {
            let ex: [u16; 6] = std::array::from_fn(|i| ((e / 3u32.pow(i as u32)) % 3) as u16);
            if Monomial::new(ex).multidegree() == d {
                count += 1;
            }
        }
        assert_eq!(monomials_of_multidegree(d).len(), count);
    }

    #[test]
    fn divisibility() {
        let a = m([1, 2, 0, 0, 0, 0]);
        let b = m([1, 3, 0, 1, 0, 0]);
        assert!(a.divides(&b));
        assert_eq!(a.quotient(&b), Some(m([0, 1, 0, 1, 0, 0])));
        assert_eq!(b.quotient(&a), None);
        assert_eq!(a.lcm(&m([2, 0, 0, 0, 0, 1])), m([2, 2, 0, 0, 0, 1]));
    }
}
