//! The Čech complex of `R/I^t` on the six variables: cochains, the
//! differential, cocycle and coboundary tests, and graded cohomology ranks.
//!
//! Orientation: for a `(k+1)`-subset `T`, `(dc)_T = Σ_{s∈T} (-1)^{pos(s,T)} c_{T∖s}`
//! with `pos` the 0-based index of `s` in `T` sorted `u<v<w<x<y<z`.
//!
//! Graded computations work at a denominator level `N`: the degree-`d` piece
//! of `(R/I^t)_S` is approximated by fractions `f/(∏S)^N`, and a piece is
//! certified when the maps from levels `N-2` and `N-1` are isomorphisms.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Field, FieldElement};
use crate::linalg::ExactMatrix;
use crate::localize::{
    certified_piece, coordinates, graded_piece, GradedPiece, LocalizeError, LocalizedElement, StabilizationReport,
    Thickening, VarSet,
};
use crate::monomial::{Monomial, Multidegree};
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CechError {
    #[error("cohomological degree {0} out of range")]
    DegreeOutOfRange(usize),
    #[error("component at `{site}` does not belong in a {k}-cochain")]
    WrongSite { site: String, k: usize },
    #[error("cochain lives on a different thickening (t={found}, expected t={expected})")]
    ThickeningMismatch { expected: u32, found: u32 },
    #[error("cochains of different degrees {0} and {1}")]
    DegreeMismatch(usize, usize),
    #[error("cochain is not homogeneous: component at `{site}` has degree {found:?}, expected {expected}")]
    Inhomogeneous { site: String, expected: Multidegree, found: Option<Multidegree> },
    #[error("not a cocycle: component `{site}` of the differential is {component}")]
    NotCocycle { site: String, component: String },
    #[error("cutoff {0} is too small (need at least 2)")]
    SmallCutoff(u32),
    #[error(transparent)]
    Localize(#[from] LocalizeError),
}

/// An element of `Č^k`, stored as its nonzero components.
#[derive(Debug, Clone)]
pub struct Cochain {
    k: usize,
    t: u32,
    field: Field,
    components: BTreeMap<VarSet, LocalizedElement>,
}

impl Cochain {
    pub fn zero(th: &Thickening, k: usize) -> Result<Self, CechError> {
        if k > 6 {
            return Err(CechError::DegreeOutOfRange(k));
        }
        Ok(Cochain { k, t: th.t(), field: th.field(), components: BTreeMap::new() })
    }

    /// Builds a cochain from `(site, element)` pairs; later entries for the
    /// same site are added to earlier ones.
    pub fn from_components(
        th: &Thickening,
        k: usize,
        parts: impl IntoIterator<Item = LocalizedElement>,
    ) -> Result<Self, CechError> {
        let mut c = Cochain::zero(th, k)?;
        for e in parts {
            c.add_component(e)?;
        }
        Ok(c)
    }

    pub fn add_component(&mut self, e: LocalizedElement) -> Result<(), CechError> {
        let site = e.vars();
        if site.len() != self.k {
            return Err(CechError::WrongSite { site: site.name(), k: self.k });
        }
        if e.site().t() != self.t {
            return Err(CechError::ThickeningMismatch { expected: self.t, found: e.site().t() });
        }
        let sum = match self.components.remove(&site) {
            Some(old) => old.add(&e)?,
            None => e,
        };
        if !sum.is_zero() {
            self.components.insert(site, sum);
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn component(&self, site: VarSet) -> Option<&LocalizedElement> {
        self.components.get(&site)
    }

    /// Nonzero components in lexicographic site order.
    pub fn components(&self) -> impl Iterator<Item = (&VarSet, &LocalizedElement)> {
        let mut v: Vec<_> = self.components.iter().collect();
        v.sort_by_key(|(s, _)| s.vars());
        v.into_iter()
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain, CechError> {
        if self.k != other.k {
            return Err(CechError::DegreeMismatch(self.k, other.k));
        }
        let mut out = self.clone();
        for e in other.components.values() {
            out.add_component(e.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElement) -> Cochain {
        let mut out = Cochain { components: BTreeMap::new(), ..self.clone() };
        for (s, e) in &self.components {
            let e = e.scale(c);
            if !e.is_zero() {
                out.components.insert(*s, e);
            }
        }
        out
    }

    pub fn neg(&self) -> Cochain {
        self.scale(&self.field.from_int(-1))
    }

    /// The common multidegree of the components, `None` for the zero cochain.
    pub fn multidegree(&self) -> Result<Option<Multidegree>, CechError> {
        let mut found: Option<Multidegree> = None;
        for (s, e) in self.components() {
            let d = e.multidegree();
            match (found, d) {
                (_, None) => {
                    return Err(CechError::Inhomogeneous {
                        site: s.name(),
                        expected: found.unwrap_or_default(),
                        found: None,
                    })
                }
                (None, Some(d)) => found = Some(d),
                (Some(f), Some(d)) if f != d => {
                    return Err(CechError::Inhomogeneous { site: s.name(), expected: f, found: Some(d) })
                }
                _ => {}
            }
        }
        Ok(found)
    }

    pub fn max_denom_exp(&self) -> u32 {
        self.components.values().map(|e| e.denom_exp()).max().unwrap_or(0)
    }

    /// Site name to fraction text, for reports.
    pub fn to_text(&self) -> BTreeMap<String, String> {
        self.components().map(|(s, e)| (s.name(), e.to_string())).collect()
    }
}

fn sign(field: Field, pos: usize) -> FieldElement {
    field.from_int(if pos.is_multiple_of(2) { 1 } else { -1 })
}

fn check_thickening(th: &Thickening, c: &Cochain) -> Result<(), CechError> {
    if th.t() != c.t {
        return Err(CechError::ThickeningMismatch { expected: th.t(), found: c.t });
    }
    Ok(())
}

/// `d: Č^k → Č^{k+1}`.
pub fn differential(th: &Thickening, c: &Cochain) -> Result<Cochain, CechError> {
    check_thickening(th, c)?;
    if c.k >= 6 {
        return Err(CechError::DegreeOutOfRange(c.k + 1));
    }
    let targets = VarSet::of_size(c.k + 1);
    let parts: Vec<Option<LocalizedElement>> = targets
        .par_iter()
        .map(|&tset| -> Result<Option<LocalizedElement>, CechError> {
            let site = th.site(tset);
            let mut acc = th.zero(tset);
            for (pos, v) in tset.vars().into_iter().enumerate() {
                if let Some(e) = c.component(tset.without(v)) {
                    acc = acc.add(&e.restrict(&site)?.scale(&sign(c.field, pos)))?;
                }
            }
            Ok((!acc.is_zero()).then_some(acc))
        })
        .collect::<Result<_, _>>()?;
    Cochain::from_components(th, c.k + 1, parts.into_iter().flatten())
}

/// Outcome of a cocycle test, with the first nonzero component of `dc` on failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleCheck {
    pub holds: bool,
    pub witness: Option<(String, String)>,
}

pub fn is_cocycle(th: &Thickening, c: &Cochain) -> Result<CocycleCheck, CechError> {
    if c.k >= 6 {
        return Ok(CocycleCheck { holds: true, witness: None });
    }
    let dc = differential(th, c)?;
    let witness = dc.components().next().map(|(s, e)| (s.name(), e.to_string()));
    Ok(CocycleCheck { holds: witness.is_none(), witness })
}

/// A three-valued answer: certified yes, certified no, or not decidable at
/// this cutoff because some graded piece did not stabilize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Inconclusive,
}

/// The degree-`d` pieces of every component of `Č^k` at one level.
#[derive(Debug, Clone)]
pub struct DegreeSlice {
    pub k: usize,
    pub degree: Multidegree,
    pub level: u32,
    pub pieces: Vec<(VarSet, GradedPiece)>,
    /// Present when the pieces were certified.
    pub flags: Vec<StabilizationReport>,
    offsets: Vec<usize>,
}

impl DegreeSlice {
    pub fn build(th: &Thickening, k: usize, d: Multidegree, level: u32, certify: bool) -> DegreeSlice {
        let subsets = VarSet::of_size(k);
        let built: Vec<(VarSet, GradedPiece, Option<StabilizationReport>)> = subsets
            .par_iter()
            .map(|&s| {
                let site = th.site(s);
                if certify {
                    let (piece, report) = certified_piece(&site, d, level);
                    (s, piece, Some(report))
                } else {
                    (s, graded_piece(&site, d, level), None)
                }
            })
            .collect();
        let mut pieces = Vec::with_capacity(built.len());
        let mut flags = Vec::new();
        let mut offsets = Vec::with_capacity(built.len() + 1);
        let mut total = 0;
        for (s, piece, report) in built {
            offsets.push(total);
            total += piece.rank();
            pieces.push((s, piece));
            flags.extend(report);
        }
        offsets.push(total);
        DegreeSlice { k, degree: d, level, pieces, flags, offsets }
    }

    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn is_stable(&self) -> bool {
        self.flags.iter().all(|f| f.stable)
    }

    pub fn unstable_sites(&self) -> Vec<String> {
        self.flags.iter().filter(|f| !f.stable).map(|f| f.site.clone()).collect()
    }

    fn index_of(&self, s: VarSet) -> usize {
        self.pieces.iter().position(|(p, _)| *p == s).expect("every k-subset has a piece")
    }

    /// Coordinates of a homogeneous cochain of this degree at this level.
    pub fn vector(&self, th: &Thickening, c: &Cochain) -> Vec<FieldElement> {
        assert!(c.max_denom_exp() <= self.level);
        let mut v = vec![th.field().zero(); self.dim()];
        for (s, e) in c.components() {
            let i = self.index_of(*s);
            let piece = &self.pieces[i].1;
            let num = e.numerator_at(self.level).unwrap();
            let coords = coordinates(e.site(), &piece.basis, &num);
            for (j, x) in coords.into_iter().enumerate() {
                v[self.offsets[i] + j] = x;
            }
        }
        v
    }

    /// The cochain with the given coordinates.
    pub fn cochain(&self, th: &Thickening, v: &[FieldElement]) -> Result<Cochain, CechError> {
        let field = th.field();
        let mut parts = Vec::new();
        for (i, (s, piece)) in self.pieces.iter().enumerate() {
            let terms = piece
                .basis
                .iter()
                .enumerate()
                .map(|(j, m)| (*m, v[self.offsets[i] + j].clone()))
                .filter(|(_, c)| !c.is_zero());
            let num = Polynomial::from_terms(field, Default::default(), terms);
            if !num.is_zero() {
                parts.push(th.element(*s, num, self.level));
            }
        }
        Cochain::from_components(th, self.k, parts)
    }
}

/// Matrix of `d` from `source` (degree `k`) to `target` (degree `k+1`), both
/// at the same level.
pub fn differential_matrix(th: &Thickening, source: &DegreeSlice, target: &DegreeSlice) -> ExactMatrix {
    assert_eq!(source.k + 1, target.k);
    assert_eq!(source.level, target.level);
    let field = th.field();
    let level = source.level;
    let columns: Vec<(VarSet, Monomial)> =
        source.pieces.iter().flat_map(|(s, piece)| piece.basis.iter().map(move |m| (*s, *m))).collect();
    let cols: Vec<Vec<FieldElement>> = columns
        .par_iter()
        .map(|&(s, m)| {
            let mut col = vec![field.zero(); target.dim()];
            for v in s.complement_vars() {
                let tset = s.with(v);
                let pos = tset.position(v).unwrap();
                let i = target.index_of(tset);
                let site = th.site(tset);
                let image = Polynomial::monomial(field, m * Monomial::var_pow(v, level as u16));
                let coords = coordinates(&site, &target.pieces[i].1.basis, &image);
                let sg = sign(field, pos);
                for (j, x) in coords.into_iter().enumerate() {
                    if !x.is_zero() {
                        col[target.offsets[i] + j] = &x * &sg;
                    }
                }
            }
            col
        })
        .collect();
    ExactMatrix::from_columns(field, target.dim(), &cols)
}

/// The degree-`d` slice of `im(d_{k-1}) ⊆ Č^k` at level `max(cutoff, 2)`.
#[derive(Debug, Clone)]
pub struct CoboundaryImage {
    pub matrix: ExactMatrix,
    pub source: DegreeSlice,
    pub target: DegreeSlice,
}

impl CoboundaryImage {
    pub fn flags(&self) -> Vec<StabilizationReport> {
        self.source.flags.iter().chain(&self.target.flags).cloned().collect()
    }

    pub fn is_stable(&self) -> bool {
        self.source.is_stable() && self.target.is_stable()
    }

    pub fn unstable_sites(&self) -> Vec<String> {
        let mut v = self.source.unstable_sites();
        v.extend(self.target.unstable_sites());
        v
    }
}

pub fn coboundary_image(th: &Thickening, k: usize, d: Multidegree, level: u32) -> Result<CoboundaryImage, CechError> {
    if k == 0 || k > 6 {
        return Err(CechError::DegreeOutOfRange(k));
    }
    if level < 2 {
        return Err(CechError::SmallCutoff(level));
    }
    let source = DegreeSlice::build(th, k - 1, d, level, true);
    let target = DegreeSlice::build(th, k, d, level, true);
    let matrix = differential_matrix(th, &source, &target);
    Ok(CoboundaryImage { matrix, source, target })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoboundaryReport {
    pub verdict: Verdict,
    pub multidegree: Option<Multidegree>,
    pub cutoff: u32,
    pub level: u32,
    pub stable: bool,
    pub unstable_pieces: Vec<String>,
}

/// Whether a homogeneous cochain is `d` of something. A positive answer is
/// always certain; a negative one needs every involved piece certified.
pub fn is_coboundary(th: &Thickening, c: &Cochain, cutoff: u32) -> Result<CoboundaryReport, CechError> {
    check_thickening(th, c)?;
    if cutoff < 2 {
        return Err(CechError::SmallCutoff(cutoff));
    }
    let Some(d) = c.multidegree()? else {
        return Ok(CoboundaryReport {
            verdict: Verdict::True,
            multidegree: None,
            cutoff,
            level: cutoff,
            stable: true,
            unstable_pieces: vec![],
        });
    };
    if c.k == 0 {
        return Ok(CoboundaryReport {
            verdict: Verdict::False,
            multidegree: Some(d),
            cutoff,
            level: cutoff,
            stable: true,
            unstable_pieces: vec![],
        });
    }
    let level = cutoff.max(c.max_denom_exp());
    let image = coboundary_image(th, c.k, d, level)?;
    let v = image.target.vector(th, c);
    let contained = image.matrix.column_space_contains(&v);
    let stable = image.is_stable();
    let verdict = match (contained, stable) {
        (true, _) => Verdict::True,
        (false, true) => Verdict::False,
        (false, false) => Verdict::Inconclusive,
    };
    Ok(CoboundaryReport {
        verdict,
        multidegree: Some(d),
        cutoff,
        level,
        stable,
        unstable_pieces: image.unstable_sites(),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub k: usize,
    pub t: u32,
    pub characteristic: u64,
    pub multidegree: Multidegree,
    pub cutoff: u32,
    pub level: u32,
    pub rank: usize,
    pub stable: bool,
    pub unstable_pieces: Vec<String>,
    /// One representative cocycle per class, as site → fraction text.
    pub generators: Vec<BTreeMap<String, String>>,
    #[serde(skip)]
    pub classes: Vec<Cochain>,
}

/// `dim H^k` in multidegree `d`: nullity of `d_k` minus rank of `d_{k-1}`,
/// both on the level-`cutoff` slices.
pub fn cohomology_rank(th: &Thickening, k: usize, d: Multidegree, cutoff: u32) -> Result<CohomologyReport, CechError> {
    if k > 6 {
        return Err(CechError::DegreeOutOfRange(k));
    }
    if cutoff < 2 {
        return Err(CechError::SmallCutoff(cutoff));
    }
    let level = cutoff;
    let (middle, image) = if k == 0 {
        (DegreeSlice::build(th, 0, d, level, true), None)
    } else {
        let img = coboundary_image(th, k, d, level)?;
        (img.target.clone(), Some(img))
    };
    // injectivity of the level maps makes the next slice exact without certification
    let kernel = if k < 6 {
        let next = DegreeSlice::build(th, k + 1, d, level, false);
        differential_matrix(th, &middle, &next).kernel()
    } else {
        ExactMatrix::zeros(th.field(), 0, middle.dim()).kernel()
    };
    let field = th.field();
    let boundary = match &image {
        Some(img) => img.matrix.clone(),
        None => ExactMatrix::zeros(field, middle.dim(), 0),
    };
    let b_rank = boundary.rank();
    let kmat = ExactMatrix::from_columns(field, middle.dim(), &kernel);
    let combined = boundary.hstack(&kmat).rref();
    let reps: Vec<usize> =
        combined.pivots.iter().filter(|&&p| p >= boundary.cols()).map(|p| p - boundary.cols()).collect();
    let rank = kernel.len() - b_rank;
    debug_assert_eq!(rank, reps.len());
    let classes: Vec<Cochain> = reps.iter().map(|&i| middle.cochain(th, &kernel[i])).collect::<Result<_, _>>()?;
    let mut unstable = match &image {
        Some(img) => img.unstable_sites(),
        None => middle.unstable_sites(),
    };
    unstable.sort();
    unstable.dedup();
    Ok(CohomologyReport {
        k,
        t: th.t(),
        characteristic: field.characteristic(),
        multidegree: d,
        cutoff,
        level,
        rank,
        stable: unstable.is_empty(),
        unstable_pieces: unstable,
        generators: classes.iter().map(|c| c.to_text()).collect(),
        classes,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DegreeGroup {
    pub multidegree: Multidegree,
    pub members: usize,
    pub independent_classes: usize,
    pub stable: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IndependenceReport {
    pub verdict: Verdict,
    pub cutoff: u32,
    /// Dimension of the span of the classes in cohomology.
    pub classes: usize,
    pub groups: Vec<DegreeGroup>,
    pub unstable_pieces: Vec<String>,
}

/// Whether the classes of the given cocycles are linearly independent.
/// Classes of different multidegrees are checked separately.
pub fn classes_independent(th: &Thickening, cs: &[Cochain], cutoff: u32) -> Result<IndependenceReport, CechError> {
    if cutoff < 2 {
        return Err(CechError::SmallCutoff(cutoff));
    }
    let mut zero_seen = false;
    let mut by_degree: BTreeMap<Multidegree, Vec<&Cochain>> = BTreeMap::new();
    for c in cs {
        check_thickening(th, c)?;
        if c.k != cs[0].k {
            return Err(CechError::DegreeMismatch(cs[0].k, c.k));
        }
        let check = is_cocycle(th, c)?;
        if let Some((site, component)) = check.witness {
            return Err(CechError::NotCocycle { site, component });
        }
        match c.multidegree()? {
            Some(d) => by_degree.entry(d).or_default().push(c),
            None => zero_seen = true,
        }
    }
    let mut groups = Vec::new();
    let mut unstable = Vec::new();
    let mut classes = 0;
    let mut all_independent = !zero_seen;
    let mut all_stable = true;
    for (d, members) in by_degree {
        let k = members[0].k;
        let level = members.iter().map(|c| c.max_denom_exp()).max().unwrap().max(cutoff);
        let (boundary, slice, stable, bad) = if k == 0 {
            let slice = DegreeSlice::build(th, 0, d, level, true);
            let b = ExactMatrix::zeros(th.field(), slice.dim(), 0);
            let (st, bad) = (slice.is_stable(), slice.unstable_sites());
            (b, slice, st, bad)
        } else {
            let img = coboundary_image(th, k, d, level)?;
            let (st, bad) = (img.is_stable(), img.unstable_sites());
            (img.matrix, img.target, st, bad)
        };
        let vectors: Vec<Vec<FieldElement>> = members.iter().map(|c| slice.vector(th, c)).collect();
        let vmat = ExactMatrix::from_columns(th.field(), slice.dim(), &vectors);
        let gained = boundary.hstack(&vmat).rank() - boundary.rank();
        classes += gained;
        all_independent &= gained == members.len();
        all_stable &= stable;
        unstable.extend(bad);
        groups.push(DegreeGroup { multidegree: d, members: members.len(), independent_classes: gained, stable });
    }
    unstable.sort();
    unstable.dedup();
    let verdict = match (all_independent, all_stable) {
        (false, _) => Verdict::False,
        (true, true) => Verdict::True,
        (true, false) => Verdict::Inconclusive,
    };
    Ok(IndependenceReport { verdict, cutoff, classes, groups, unstable_pieces: unstable })
}

/// Reruns `run` at cutoffs `start, start + 1, ..., max` and returns the first
/// result that `settled` accepts, or the one at `max`. Reports carry the
/// cutoff they were computed at.
pub fn escalate<T>(
    start: u32,
    max: u32,
    mut run: impl FnMut(u32) -> Result<T, CechError>,
    settled: impl Fn(&T) -> bool,
) -> Result<T, CechError> {
    let mut cutoff = start;
    loop {
        let out = run(cutoff)?;
        if settled(&out) || cutoff >= max {
            return Ok(out);
        }
        cutoff += 1;
    }
}
