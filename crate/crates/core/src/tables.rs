//! The explicit degree-3 cochains, read from fixture files.
//!
//! A fixture lists one entry per nonzero site in the fraction syntax of
//! [`crate::expr`], with the symbols `D1 D2 D3` (the minors), `alpha = vx/uy`,
//! `beta = wy/vz`, `gamma = uz/wx`, integer parameters `q`, `m`, `t`, and
//! `L(e)` for the series `Σ_{k<t} e^k/k`. Each entry carries a sign fixed
//! by the cocycle condition under this crate's orientation; some entries also
//! keep a `literal` or `alternative` transcription for comparison.

use std::path::Path;

use serde::Deserialize;

use crate::cech::Cochain;
use crate::determinantal::{build_determinantal, charp_params, phi, ScenarioError};
use crate::expr::{ExprContext, Fraction};
use crate::field::Field;
use crate::localize::{LocalizedElement, Thickening, VarSet};
use crate::monomial::Multidegree;
use crate::poly::Polynomial;

const BUILTIN: [(&str, &str); 4] = [
    ("eta_char0", include_str!("../fixtures/eta_char0.toml")),
    ("eta1", include_str!("../fixtures/eta1.toml")),
    ("eta2", include_str!("../fixtures/eta2.toml")),
    ("frobenius", include_str!("../fixtures/frobenius.toml")),
];

#[derive(Debug, Clone, Deserialize)]
pub struct TableEntry {
    pub site: String,
    pub entry: String,
    #[serde(default = "plus_one")]
    pub sign: i64,
    /// The entry exactly as printed, when it differs from `entry`.
    pub literal: Option<String>,
    /// A competing reading of the entry.
    pub alternative: Option<String>,
}

fn plus_one() -> i64 {
    1
}

#[derive(Debug, Clone, Deserialize)]
pub struct TableFixture {
    pub name: String,
    pub cochain_degree: usize,
    pub multidegree: String,
    #[serde(rename = "component")]
    pub components: Vec<TableEntry>,
}

/// Which reading of each entry to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transcription {
    Corrected,
    Literal,
    Alternative,
    /// Every sign taken as `+1`.
    Unsigned,
}

impl TableFixture {
    pub fn parse(text: &str) -> Result<Self, ScenarioError> {
        toml::from_str(text).map_err(|e| ScenarioError::Fixture(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, ScenarioError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| ScenarioError::Fixture(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn builtin(name: &str) -> Result<Self, ScenarioError> {
        let (_, text) = BUILTIN
            .iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| ScenarioError::Fixture(format!("no fixture named `{name}`")))?;
        Self::parse(text)
    }

    pub fn entry(&self, site: &str) -> Option<&TableEntry> {
        self.components.iter().find(|c| c.site == site)
    }

    pub fn declared_multidegree(&self, ctx: &ExprContext) -> Result<Multidegree, ScenarioError> {
        let parts: Vec<i64> =
            self.multidegree.split(',').map(|p| ctx.eval_integer(p.trim())).collect::<Result<_, _>>()?;
        match parts[..] {
            [a, b, c, d] => Ok(Multidegree::new(a as i32, b as i32, c as i32, d as i32)),
            _ => Err(ScenarioError::Fixture(format!("bad multidegree `{}`", self.multidegree))),
        }
    }

    /// One entry as a plain fraction, sign included, with no reduction modulo
    /// the ideal.
    pub fn fraction(
        &self,
        site: &str,
        ctx: &ExprContext,
        which: Transcription,
    ) -> Result<Option<Fraction>, ScenarioError> {
        let Some(c) = self.entry(site) else { return Ok(None) };
        let text = match which {
            Transcription::Literal => c.literal.as_ref().unwrap_or(&c.entry),
            Transcription::Alternative => c.alternative.as_ref().unwrap_or(&c.entry),
            _ => &c.entry,
        };
        let sign = if which == Transcription::Unsigned { 1 } else { c.sign };
        Ok(Some(ctx.eval(text)?.scale(&ctx.field().from_int(sign))))
    }

    /// Evaluates every entry and assembles the cochain.
    pub fn build(&self, th: &Thickening, ctx: &ExprContext, which: Transcription) -> Result<Cochain, ScenarioError> {
        let mut parts: Vec<LocalizedElement> = Vec::new();
        for c in &self.components {
            let value = self.fraction(&c.site, ctx, which)?.expect("listed site");
            let site = VarSet::parse(&c.site)?;
            if site.len() != self.cochain_degree {
                return Err(ScenarioError::Fixture(format!(
                    "site `{}` in a degree-{} table",
                    c.site, self.cochain_degree
                )));
            }
            parts.push(th.from_expr(site, &value)?);
        }
        Ok(Cochain::from_components(th, self.cochain_degree, parts)?)
    }
}

/// Minors, `alpha`, `beta`, `gamma` and `t` over `field`.
pub fn scenario_context(field: Field, t: u32) -> ExprContext {
    let base = ExprContext::new(field);
    let data = build_determinantal(field);
    let frac = |s: &str| base.eval(s).expect("static expression");
    base.clone()
        .with_value("D1", Fraction::from_poly(data.minor(1).clone()))
        .with_value("D2", Fraction::from_poly(data.minor(2).clone()))
        .with_value("D3", Fraction::from_poly(data.minor(3).clone()))
        .with_value("alpha", frac("vx/uy"))
        .with_value("beta", frac("wy/vz"))
        .with_value("gamma", frac("uz/wx"))
        .with_integer("t", t as i64)
        .with_series_len(t.saturating_sub(1))
}

fn require_char0(th: &Thickening) -> Result<(), ScenarioError> {
    match th.field() {
        Field::Rational => Ok(()),
        Field::Prime(p) => Err(ScenarioError::CharacteristicObstruction(p)),
    }
}

/// The characteristic-zero cochain at the thickening's own `t`.
pub fn eta_char0(th: &Thickening) -> Result<Cochain, ScenarioError> {
    eta_char0_with(th, Transcription::Corrected)
}

pub fn eta_char0_with(th: &Thickening, which: Transcription) -> Result<Cochain, ScenarioError> {
    require_char0(th)?;
    if th.t() < 2 {
        return Err(ScenarioError::SmallThickening(th.t()));
    }
    let ctx = scenario_context(th.field(), th.t());
    TableFixture::builtin("eta_char0")?.build(th, &ctx, which)
}

/// `Σ_{m<t} (1/m)[(Δ1/vz)^m + (Δ2/wx)^m + (Δ3/uy)^m]` at the site of all six
/// variables of `th`; `t` may differ from the thickening's exponent.
pub fn truncated_log_sum(th: &Thickening, t: u32) -> Result<LocalizedElement, ScenarioError> {
    require_char0(th)?;
    if t < 2 {
        return Err(ScenarioError::SmallThickening(t));
    }
    let ctx = scenario_context(th.field(), t);
    let f = ctx.eval("L(D1/vz) + L(D2/wx) + L(D3/uy)")?;
    Ok(th.from_expr(VarSet::ALL, &f)?)
}

pub fn charp_context(th: &Thickening, m: u64) -> Result<ExprContext, ScenarioError> {
    let p = match th.field() {
        Field::Prime(p) => p,
        f => return Err(ScenarioError::NeedsPrimeField(f)),
    };
    let params = charp_params(p, th.t())?;
    if !params.m_list.contains(&m) {
        return Err(ScenarioError::BadM { m, q: params.q, q2: params.q2 });
    }
    Ok(scenario_context(th.field(), th.t()).with_integer("q", params.q as i64).with_integer("m", m as i64))
}

fn family(th: &Thickening, name: &str, m: u64, which: Transcription) -> Result<Cochain, ScenarioError> {
    let ctx = charp_context(th, m)?;
    let fixture = TableFixture::builtin(name)?;
    let c = fixture.build(th, &ctx, which)?;
    let declared = fixture.declared_multidegree(&ctx)?;
    match c.multidegree()? {
        Some(d) if d != declared => {
            Err(ScenarioError::Fixture(format!("{name}: built multidegree {d} differs from declared {declared}")))
        }
        _ => Ok(c),
    }
}

/// First family in characteristic `p = char(th)`, multidegree `(0,0,0,q-m)`.
pub fn eta1(th: &Thickening, m: u64) -> Result<Cochain, ScenarioError> {
    family(th, "eta1", m, Transcription::Corrected)
}

/// Second family, multidegree `(0,0,0,m-q)`.
pub fn eta2(th: &Thickening, m: u64) -> Result<Cochain, ScenarioError> {
    family(th, "eta2", m, Transcription::Corrected)
}

pub fn eta1_with(th: &Thickening, m: u64, which: Transcription) -> Result<Cochain, ScenarioError> {
    family(th, "eta1", m, which)
}

pub fn eta2_with(th: &Thickening, m: u64, which: Transcription) -> Result<Cochain, ScenarioError> {
    family(th, "eta2", m, which)
}

/// The `m = q` element written with `q`-th powers of `Δi/monomial`.
pub fn frobenius_element(th: &Thickening) -> Result<Cochain, ScenarioError> {
    let p = th.field().characteristic();
    let q = charp_params(p, th.t())?.q;
    family(th, "frobenius", q, Transcription::Corrected)
}

/// The classes whose independence gives the lower bound: `eta1(m)` for
/// every admissible `m`, and `eta2(m)` for `m < q`.
pub fn charp_family(th: &Thickening) -> Result<Vec<(String, Cochain)>, ScenarioError> {
    let p = th.field().characteristic();
    let params = charp_params(p, th.t())?;
    let mut out = Vec::new();
    for &m in &params.m_list {
        out.push((format!("eta1(m={m})"), eta1(th, m)?));
    }
    for &m in params.m_list.iter().filter(|&&m| m < params.q) {
        out.push((format!("eta2(m={m})"), eta2(th, m)?));
    }
    Ok(out)
}

/// Outcome of comparing two components of `d(eta1(m))`, computed as plain
/// fractions, with their factored forms. Each flag allows either sign.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ClosedFormCheck {
    pub m: u64,
    pub zeta: u64,
    /// `uwxy` against `Δ1^q Δ3^q2 φ^q2 / (u^q w^q x^m y^m)`.
    pub uwxy_with_d1: bool,
    /// The same with `Δ2^q` in place of `Δ1^q`.
    pub uwxy_with_d2: bool,
    /// `uvxy` against `Δ3^(q+q2) φ^q2 / ((uv)^(q-m) (uyvx)^m)`.
    pub uvxy: bool,
    /// `q + q2 >= t`, so both numerators lie in `I^t`.
    pub in_power: bool,
}

pub fn closed_forms(th: &Thickening, m: u64) -> Result<ClosedFormCheck, ScenarioError> {
    let ctx = charp_context(th, m)?;
    let params = charp_params(th.field().characteristic(), th.t())?;
    let (q, q2) = (params.q, params.q2);
    let zeta = m / q2;
    let fixture = TableFixture::builtin("eta1")?;
    let entry = |s: &str| -> Result<Fraction, ScenarioError> {
        Ok(fixture
            .fraction(s, &ctx, Transcription::Corrected)?
            .unwrap_or_else(|| Fraction::from_poly(Polynomial::zero(th.field()))))
    };
    // orientation: (dc)_{uwxy} = c_wxy - c_uxy, (dc)_{uvxy} = c_vxy - c_uxy
    let uwxy = entry("wxy")?.sub(&entry("uxy")?);
    let uvxy = entry("vxy")?.sub(&entry("uxy")?);
    let e = |s: &str| ctx.eval(s);
    let phi_part = phi(zeta as u32, e("uy")?.numerator(), e("vx")?.numerator())?;
    let common = Fraction::from_poly(phi_part).pow(q2 as i64)?.mul(&e("D3")?.pow(q2 as i64)?);
    let den1 = e(&format!("1/(u^{q} w^{q} x^{m} y^{m})"))?;
    let den2 = e(&format!("1/((uv)^({q}-{m}) (uyvx)^{m})"))?;
    let either = |a: &Fraction, b: &Fraction| a == b || *a == b.neg();
    let with = |minor: &str, den: &Fraction| -> Result<Fraction, ScenarioError> {
        Ok(e(minor)?.pow(q as i64)?.mul(&common).mul(den))
    };
    Ok(ClosedFormCheck {
        m,
        zeta,
        uwxy_with_d1: either(&uwxy, &with("D1", &den1)?),
        uwxy_with_d2: either(&uwxy, &with("D2", &den1)?),
        uvxy: either(&uvxy, &with("D3", &den2)?),
        in_power: q + q2 >= th.t() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cech::is_cocycle;
    use crate::localize::loc_is_zero;

    fn th(field: Field, t: u32) -> Thickening {
        build_determinantal(field).thickening(t).unwrap()
    }

    fn same(a: &LocalizedElement, b: &LocalizedElement) -> bool {
        loc_is_zero(&a.sub(b).unwrap())
    }

    #[test]
    fn builtin_fixtures_parse() {
        for (name, _) in BUILTIN {
            let f = TableFixture::builtin(name).unwrap();
            assert_eq!(f.name, name);
            assert_eq!(f.cochain_degree, 3);
            assert_eq!(f.components.len(), 9);
        }
        assert!(TableFixture::builtin("nope").is_err());
        assert!(TableFixture::parse("name = 3").is_err());
    }

    #[test]
    fn char0_entries() {
        let t2 = th(Field::Rational, 2);
        let e = eta_char0(&t2).unwrap();
        assert!(e.component(VarSet::parse("uvw").unwrap()).is_none());
        let wyz = VarSet::parse("wyz").unwrap();
        assert!(same(e.component(wyz).unwrap(), &t2.parse_element(wyz, "-(vz - wy)/(wy)").unwrap()));
        let t3 = th(Field::Rational, 3);
        let e = eta_char0(&t3).unwrap();
        let vyz = VarSet::parse("vyz").unwrap();
        let want = t3.parse_element(vyz, "-(vz - wy)/(vz) - 1/2 ((vz - wy)/(vz))^2").unwrap();
        assert!(same(e.component(vyz).unwrap(), &want));
        assert!(matches!(
            eta_char0(&th(Field::prime(3).unwrap(), 2)),
            Err(ScenarioError::CharacteristicObstruction(3))
        ));
        assert!(matches!(eta_char0(&th(Field::Rational, 1)), Err(ScenarioError::SmallThickening(1))));
    }

    #[test]
    fn char0_literal_fails_with_witness() {
        let t3 = th(Field::Rational, 3);
        let c = eta_char0_with(&t3, Transcription::Literal).unwrap();
        let check = is_cocycle(&t3, &c).unwrap();
        assert!(!check.holds);
        assert!(check.witness.is_some());
    }

    #[test]
    fn log_sum_truncation() {
        for t in [2, 3] {
            let here = th(Field::Rational, t);
            assert!(loc_is_zero(&truncated_log_sum(&here, t).unwrap()));
            let next = th(Field::Rational, t + 1);
            assert!(!loc_is_zero(&truncated_log_sum(&next, t).unwrap()));
        }
    }

    #[test]
    fn log_sum_t2_numerator() {
        let t2 = th(Field::Rational, 2);
        let s = truncated_log_sum(&t2, 2).unwrap();
        let want =
            t2.parse_element(VarSet::ALL, "((vz - wy) wxuy + (wx - uz) vzuy + (uy - vx) vzwx) / (uvwxyz)").unwrap();
        assert!(same(&s, &want));
    }

    #[test]
    fn eta1_spec_entries() {
        let f2 = Field::prime(2).unwrap();
        let t = th(f2, 3);
        let e = eta1(&t, 1).unwrap();
        let wxz = VarSet::parse("wxz").unwrap();
        assert!(same(e.component(wxz).unwrap(), &t.parse_element(wxz, "(z/w) (wx - uz)/(wx)").unwrap()));
        let e2 = eta2(&t, 1).unwrap();
        assert!(e2.component(VarSet::parse("uxy").unwrap()).is_none());
        assert_eq!(e2.multidegree().unwrap(), Some(Multidegree::new(0, 0, 0, -1)));
        let f3 = Field::prime(3).unwrap();
        let t = th(f3, 4);
        let e = eta1(&t, 3).unwrap();
        let uxy = VarSet::parse("uxy").unwrap();
        assert!(same(e.component(uxy).unwrap(), &t.parse_element(uxy, "-((uy - vx)/(uy))^3").unwrap()));
    }

    #[test]
    fn charp_transcriptions() {
        let f3 = Field::prime(3).unwrap();
        let t = th(f3, 4);
        for m in [1, 2, 3] {
            assert!(is_cocycle(&t, &eta1(&t, m).unwrap()).unwrap().holds);
            assert!(is_cocycle(&t, &eta2(&t, m).unwrap()).unwrap().holds);
            let lit = eta1_with(&t, m, Transcription::Literal).unwrap();
            assert!(is_cocycle(&t, &lit).unwrap().witness.is_some());
            // the printed uwz entry inverts x, which that site does not
            assert!(matches!(
                eta2_with(&t, m, Transcription::Literal),
                Err(ScenarioError::Localize(crate::localize::LocalizeError::DenominatorOutsideSite { .. }))
            ));
        }
        assert!(matches!(eta1(&t, 4), Err(ScenarioError::BadM { .. })));
        assert!(matches!(eta1(&th(Field::Rational, 3), 1), Err(ScenarioError::NeedsPrimeField(_))));
    }

    #[test]
    fn frobenius_matches_top_member() {
        for (p, t) in [(2, 3), (3, 4)] {
            let f = Field::prime(p).unwrap();
            let th = th(f, t);
            let q = charp_params(p, t).unwrap().q;
            let a = frobenius_element(&th).unwrap();
            let b = eta1(&th, q).unwrap();
            assert!(a.add(&b.neg()).unwrap().is_zero());
        }
    }

    #[test]
    fn family_sizes() {
        let t = th(Field::prime(2).unwrap(), 3);
        let names: Vec<String> = charp_family(&t).unwrap().into_iter().map(|(n, _)| n).collect();
        assert_eq!(names, ["eta1(m=1)", "eta1(m=2)", "eta2(m=1)"]);
    }

    #[test]
    fn closed_form_identities() {
        for (p, t) in [(2, 3), (3, 4), (2, 5), (3, 5)] {
            let th = th(Field::prime(p).unwrap(), t);
            for m in charp_params(p, t).unwrap().m_list {
                let c = closed_forms(&th, m).unwrap();
                assert!(c.uvxy && c.uwxy_with_d2 && c.in_power, "p={p} t={t} m={m}: {c:?}");
                if p != 2 {
                    assert!(!c.uwxy_with_d1, "p={p} t={t} m={m}");
                }
            }
        }
    }
}
