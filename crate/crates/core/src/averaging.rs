//! Monomial homomorphic averaging operators on F[x,y]: the five-case
//! classification, the idempotent exponent-matrix correspondence, and the
//! exhaustive averaging-law checker.

use std::fmt;

use crate::error::Error;
use crate::exhaust::{monomial_pairs_up_to, run_check};
use crate::field::FieldElement;
use crate::poly::{Monomial, OperatorRule, SparsePoly, Term, Window};
use crate::report::{VerificationReport, Violation};

#[derive(Clone, Debug, PartialEq)]
pub enum AveragingCase {
    /// T(x^n y^m) = x^{r m} y^m
    Case1 { r: u32 },
    /// T(x^n y^m) = alpha^n y^{m + r n}, alpha != 0
    Case2 { r: u32, alpha: FieldElement },
    /// identity
    Case3,
    /// T(x^n y^m) = 0 for n > 0, y^m for n = 0
    Case4,
    /// T(x^n y^m) = alpha^n beta^m for n+m > 0, 1 at the unit
    Case5 { alpha: FieldElement, beta: FieldElement },
}

#[derive(Clone, Debug, PartialEq)]
pub struct AveragingSpec {
    pub case: AveragingCase,
    pub swapped: bool,
}

impl AveragingSpec {
    pub fn new(case: AveragingCase, swapped: bool) -> Result<Self, Error> {
        if let AveragingCase::Case2 { alpha, .. } = &case {
            if alpha.is_zero() {
                return Err(Error::InvalidFamilyParams(
                    "Case2 needs a nonzero alpha".into(),
                ));
            }
        }
        Ok(AveragingSpec { case, swapped })
    }
}

impl fmt::Display for AveragingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.case {
            AveragingCase::Case1 { r } => write!(f, "Case1(r={r})")?,
            AveragingCase::Case2 { r, alpha } => write!(f, "Case2(r={r}, alpha={alpha})")?,
            AveragingCase::Case3 => write!(f, "Case3")?,
            AveragingCase::Case4 => write!(f, "Case4")?,
            AveragingCase::Case5 { alpha, beta } => {
                write!(f, "Case5(alpha={alpha}, beta={beta})")?
            }
        }
        if self.swapped {
            write!(f, " swapped")?;
        }
        Ok(())
    }
}

/// The operator rule computing T per the classified case; T(1) = 1 always,
/// and averaging operators carry no weight.
pub fn build_averaging(spec: &AveragingSpec) -> OperatorRule {
    let case = spec.case.clone();
    let base = OperatorRule::new(spec.to_string(), None, move |mono| {
        let (n, m) = (mono.n, mono.m);
        match &case {
            AveragingCase::Case1 { r } => Some(Term::new(
                FieldElement::one(),
                Monomial::new(*r as i64 * m, m),
            )),
            AveragingCase::Case2 { r, alpha } => {
                let coeff = alpha.pow_i(n).expect("nonzero alpha");
                Some(Term::new(coeff, Monomial::new(0, m + *r as i64 * n)))
            }
            AveragingCase::Case3 => Some(Term::new(FieldElement::one(), mono)),
            AveragingCase::Case4 => {
                if n > 0 {
                    None
                } else {
                    Some(Term::new(FieldElement::one(), Monomial::new(0, m)))
                }
            }
            AveragingCase::Case5 { alpha, beta } => {
                if n == 0 && m == 0 {
                    return Some(Term::new(FieldElement::one(), Monomial::ONE));
                }
                // 0^0 = 1 is honored by pow: alpha^0 = 1 even for alpha = 0
                let coeff = alpha.pow_i(n).ok()? * beta.pow_i(m).ok()?;
                if coeff.is_zero() {
                    None
                } else {
                    Some(Term::new(coeff, Monomial::ONE))
                }
            }
        }
    });
    if spec.swapped {
        base.swapped()
    } else {
        base
    }
}

/// Conjugation by the x<->y swap automorphism.
pub fn conjugate_swap(rule: &OperatorRule) -> OperatorRule {
    rule.swapped()
}

/// Checks T(a)T(b) = T(T(a)b) = T(aT(b)) and T(ab) = T(a)T(b) over every
/// monomial pair with combined degree <= max_deg. All four equalities are
/// verified independently so a near-miss names the law it broke.
pub fn check_averaging(
    rule: &OperatorRule,
    max_deg: i64,
    workers: usize,
) -> Result<VerificationReport, Error> {
    let pairs = monomial_pairs_up_to(Window::Poly, max_deg);
    let violations = run_check(&pairs, workers, |&(a, b)| {
        let pa = SparsePoly::from_mono(a);
        let pb = SparsePoly::from_mono(b);
        let ta = rule.apply(&pa);
        let tb = rule.apply(&pb);
        let lhs = ta.mul(&tb);
        let mut out = Vec::new();
        let mut push = |law: &str, rhs: SparsePoly| {
            if rhs != lhs {
                out.push(Violation {
                    a,
                    b,
                    law: law.into(),
                    lhs: lhs.clone(),
                    rhs,
                });
            }
        };
        push("T(a)T(b) = T(T(a)b)", rule.apply(&ta.mul(&pb)));
        push("T(a)T(b) = T(aT(b))", rule.apply(&pa.mul(&tb)));
        push("T(a)T(b) = T(ab)", rule.apply(&pa.mul(&pb)));
        Ok(out)
    })?;
    Ok(VerificationReport {
        checked_pairs: pairs.len() as u64,
        violations,
    })
}

/// A 2x2 matrix of natural exponents; idempotency is a checked property.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExponentMatrix {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl ExponentMatrix {
    pub fn is_idempotent(&self) -> bool {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        a * a + b * c == a && a * b + b * d == b && c * a + d * c == c && c * b + d * d == d
    }
}

/// All matrices with entries in `[0, bound]` satisfying A^2 = A, sorted
/// lexicographically by (a, b, c, d).
pub fn enumerate_idempotents(bound: u64) -> Vec<ExponentMatrix> {
    let mut out = Vec::new();
    for a in 0..=bound {
        for b in 0..=bound {
            for c in 0..=bound {
                for d in 0..=bound {
                    let mat = ExponentMatrix { a, b, c, d };
                    if mat.is_idempotent() {
                        out.push(mat);
                    }
                }
            }
        }
    }
    out
}

/// The averaging spec whose exponent matrix is `mat`, for the caller-chosen
/// scalar pair `(alpha, beta)` attached to T(x) and T(y). Absent when the
/// matrix is not idempotent (or the case forces a scalar the pair cannot
/// provide, e.g. Case2 with a zero scalar degenerates to Case4).
pub fn matrix_to_averaging(
    mat: &ExponentMatrix,
    scalars: (&FieldElement, &FieldElement),
) -> Option<AveragingSpec> {
    if !mat.is_idempotent() {
        return None;
    }
    let (alpha, beta) = scalars;
    let case_of = |r: u64, scalar: &FieldElement| {
        if scalar.is_zero() {
            // alpha = 0 collapses alpha^n y^{m+rn} to the n = 0 projection
            AveragingCase::Case4
        } else {
            AveragingCase::Case2 {
                r: r as u32,
                alpha: scalar.clone(),
            }
        }
    };
    let (case, swapped) = match (mat.a, mat.b, mat.c, mat.d) {
        (0, 0, 0, 0) => (
            AveragingCase::Case5 {
                alpha: alpha.clone(),
                beta: beta.clone(),
            },
            false,
        ),
        (1, 0, 0, 1) => (AveragingCase::Case3, false),
        (0, b, 0, 1) if b > 0 => (AveragingCase::Case1 { r: b as u32 }, false),
        (1, 0, c, 0) if c > 0 => (AveragingCase::Case1 { r: c as u32 }, true),
        (0, 0, c, 1) => (case_of(c, alpha), false),
        (1, b, 0, 0) => (case_of(b, beta), true),
        _ => return None,
    };
    Some(AveragingSpec { case, swapped })
}
