//! Exact verification of monomial Rota-Baxter operators of nonzero weight
//! on the polynomial algebra F[x, y].
//!
//! The crate provides:
//! * exact scalars: arbitrary-precision rationals and quadratic extensions
//!   Q(sqrt(D)) ([`field`]);
//! * sparse polynomials over those scalars and monomial operator rules
//!   ([`poly`]);
//! * homomorphic averaging operators and their classification through
//!   idempotent exponent matrices ([`averaging`]);
//! * the monomial direct-sum decompositions of F[x, y] and the splitting
//!   operators they induce ([`decomp`]);
//! * the coefficient recurrences, closed forms and s-transform behind the
//!   `y^(n+m)`-image families ([`coeffs`]);
//! * every closed-form operator family plus exhaustive brute-force checkers
//!   for the Rota-Baxter and averaging identities ([`rbo`], [`exhaust`]).
//!
//! All arithmetic is exact; every check is an exhaustive pass over the
//! monomials (or monomial pairs) of a finite degree window. With the
//! default `parallel` feature, pair checks fan out over a worker pool and
//! merge deterministically.

pub mod averaging;
pub mod coeffs;
pub mod decomp;
pub mod error;
pub mod exhaust;
pub mod field;
pub mod json;
pub mod poly;
pub mod rbo;
pub mod report;

pub use averaging::{
    build_averaging, check_averaging, conjugate_swap, enumerate_idempotents, matrix_to_averaging,
    AveragingCase, AveragingSpec, ExponentMatrix,
};
pub use coeffs::{
    alpha_sum_formula, fibonacci, r1_alpha_row, r1_extend, s_closed_form, s_identities_check,
    s_recurrence, s_transform, SSequence,
};
pub use decomp::{
    check_decomposition, classify_monomial, empirical_slopes, splitting_rbo, DecompCase,
    DecompositionSpec, Membership,
};
pub use error::Error;
pub use exhaust::{monomial_pairs_up_to, monomials_up_to, run_check};
pub use field::{rat, rational_root, FieldElement, QuadExt, Rational};
pub use poly::{Monomial, OperatorRule, SparsePoly, Term, Window};
pub use rbo::{
    build_rbo, negate_rule, rb_check, splitting_criterion_check, vieillard_baron, RBFamily, Theta,
};
pub use report::{VerificationReport, Violation};
