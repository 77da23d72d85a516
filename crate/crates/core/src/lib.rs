//! Exact local cohomology of thickenings `R/I^t` of the ring of 2x2 minors
//! of a generic 2x3 matrix, computed through the Čech complex on the six
//! variables.

pub mod cech;
pub mod determinantal;
pub mod expr;
pub mod field;
pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod localize;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod tables;

pub use cech::{
    classes_independent, coboundary_image, cohomology_rank, differential, escalate, is_coboundary, is_cocycle,
    CechError, CoboundaryReport, Cochain, CocycleCheck, CohomologyReport, IndependenceReport, Verdict,
};
pub use determinantal::{
    build_determinantal, charp_params, degree_zero_window, h6_graded_rank, oracle_sweep, phi, rank_lower_bound,
    sweep_elements, CharPParams, DeterminantalData, ScenarioError, SweepReport, WindowEntry, WindowReport,
};
pub use expr::{ExprContext, ExprError, Fraction};
pub use field::{Field, FieldElement, FieldError};
pub use groebner::{buchberger, normal_form, GroebnerBasis};
pub use ideal::{colon, graded_membership_oracle, ideal_power, membership, saturate, IdealPresentation};
pub use linalg::ExactMatrix;
pub use localize::{
    certified_piece, graded_piece, loc_is_zero, stabilization_report, GradedPiece, LocalizationSite, LocalizedElement,
    StabilizationReport, Thickening, VarSet,
};
pub use monomial::{Monomial, MonomialOrder, Multidegree, Var};
pub use poly::Polynomial;
pub use tables::{
    charp_family, closed_forms, eta1, eta2, eta_char0, frobenius_element, scenario_context, truncated_log_sum,
    ClosedFormCheck, TableFixture, Transcription,
};
