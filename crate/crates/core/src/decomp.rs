//! Direct-sum decompositions of F[x,y] into two monomial-spanned
//! subalgebras: membership tests with exact slope comparison, closure
//! verification, empirical slope estimates, and the splitting operator
//! `R = -lambda * (projection onto the second summand)`.

use std::fmt;

use num::{Signed, Zero};

use crate::error::Error;
use crate::exhaust::{monomial_pairs_up_to, monomials_up_to, run_check};
use crate::field::{FieldElement, Rational};
use crate::poly::{Monomial, OperatorRule, SparsePoly, Term, Window};
use crate::report::{VerificationReport, Violation};

#[derive(Clone, Debug, PartialEq)]
pub enum DecompCase {
    /// monomials != 1, plus the span of 1
    I,
    /// multiples of x, plus F[y]
    II,
    /// multiples of x together with 1, plus pure powers of y
    III,
    /// boundary line in the second part: A gets `slope*k > l`
    IV { slope: Rational },
    /// boundary line in the first part: A gets `slope*k >= l`
    V { slope: Rational },
    /// irrational slope, the line meets no lattice point
    VI { slope: FieldElement },
    /// the shifted half plane `k - l + shift > 0`; not a valid
    /// decomposition for shift > 0, kept as a negative control
    HalfPlane { shift: i64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionSpec {
    pub case: DecompCase,
    pub swapped: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    PartA,
    PartB,
}

impl DecompositionSpec {
    pub fn new(case: DecompCase, swapped: bool) -> Result<Self, Error> {
        match &case {
            DecompCase::IV { slope } | DecompCase::V { slope } => {
                if !slope.is_positive() {
                    return Err(Error::InvalidFamilyParams(
                        "boundary slope must be positive".into(),
                    ));
                }
            }
            DecompCase::VI { slope } => match slope {
                FieldElement::Rat(_) => {
                    return Err(Error::InvalidFamilyParams(
                        "case VI needs an irrational slope".into(),
                    ))
                }
                FieldElement::Quad(q) => {
                    if !q.d.is_positive() || slope.real_sign()? <= 0 {
                        return Err(Error::InvalidFamilyParams(
                            "case VI slope must be a positive quadratic irrational".into(),
                        ));
                    }
                }
            },
            _ => {}
        }
        Ok(DecompositionSpec { case, swapped })
    }
}

impl fmt::Display for DecompositionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.case {
            DecompCase::I => write!(f, "I")?,
            DecompCase::II => write!(f, "II")?,
            DecompCase::III => write!(f, "III")?,
            DecompCase::IV { slope } => write!(f, "IV(slope={slope})")?,
            DecompCase::V { slope } => write!(f, "V(slope={slope})")?,
            DecompCase::VI { slope } => write!(f, "VI(slope={slope})")?,
            DecompCase::HalfPlane { shift } => write!(f, "HalfPlane(shift={shift})")?,
        }
        if self.swapped {
            write!(f, " swapped")?;
        }
        Ok(())
    }
}

/// Sign of `slope*k - l`, decided exactly for rational and quadratic slopes.
fn line_sign(slope: &FieldElement, k: i64, l: i64) -> Result<i32, Error> {
    let kf = FieldElement::from_int(k);
    let lf = FieldElement::from_int(l);
    slope.try_mul(&kf)?.try_sub(&lf)?.real_sign()
}

/// Which summand a monomial belongs to. Pure powers complete the k,l >= 1
/// span definitions: x^k joins the part below the boundary line, y^l the
/// part above it, and the unit joins the part its F1 summand sits in.
pub fn classify_monomial(spec: &DecompositionSpec, mono: &Monomial) -> Result<Membership, Error> {
    let mono = if spec.swapped { mono.swap() } else { *mono };
    if mono.n < 0 || mono.m < 0 {
        return Err(Error::UnclassifiedMonomial(mono.to_string()));
    }
    let (k, l) = (mono.n, mono.m);
    Ok(match &spec.case {
        DecompCase::I => {
            if mono.is_one() {
                Membership::PartB
            } else {
                Membership::PartA
            }
        }
        DecompCase::II => {
            if k >= 1 {
                Membership::PartA
            } else {
                Membership::PartB
            }
        }
        DecompCase::III => {
            if k >= 1 || mono.is_one() {
                Membership::PartA
            } else {
                Membership::PartB
            }
        }
        DecompCase::IV { slope } => {
            let s = line_sign(&FieldElement::Rat(slope.clone()), k, l)?;
            if mono.is_one() || (k >= 1 && s > 0) {
                Membership::PartA
            } else {
                Membership::PartB
            }
        }
        DecompCase::V { slope } => {
            let s = line_sign(&FieldElement::Rat(slope.clone()), k, l)?;
            if mono.is_one() || (k >= 1 && s >= 0) {
                Membership::PartA
            } else {
                Membership::PartB
            }
        }
        DecompCase::VI { slope } => {
            let s = line_sign(slope, k, l)?;
            if mono.is_one() || (k >= 1 && s > 0) {
                Membership::PartA
            } else {
                Membership::PartB
            }
        }
        DecompCase::HalfPlane { shift } => {
            if k - l + shift > 0 {
                Membership::PartA
            } else {
                Membership::PartB
            }
        }
    })
}

/// Verifies over all monomials of degree <= max_deg that each part is
/// multiplicatively closed (the unit's membership is already total and
/// disjoint because classification is a function).
pub fn check_decomposition(
    spec: &DecompositionSpec,
    max_deg: i64,
    workers: usize,
) -> Result<VerificationReport, Error> {
    let pairs = monomial_pairs_up_to(Window::Poly, max_deg);
    let violations = run_check(&pairs, workers, |&(a, b)| {
        let pa = classify_monomial(spec, &a)?;
        let pb = classify_monomial(spec, &b)?;
        if pa != pb {
            return Ok(Vec::new());
        }
        let prod = a.mul(&b);
        if classify_monomial(spec, &prod)? == pa {
            return Ok(Vec::new());
        }
        let part = if pa == Membership::PartA { "A" } else { "B" };
        Ok(vec![Violation {
            a,
            b,
            law: format!("closure of part {part}"),
            lhs: SparsePoly::from_mono(prod),
            rhs: SparsePoly::zero(),
        }])
    })?;
    Ok(VerificationReport {
        checked_pairs: pairs.len() as u64,
        violations,
    })
}

/// Maxima of l/k over part A and k/l over part B (k,l >= 1, degree bound);
/// finite-window approximations of the boundary slopes.
pub fn empirical_slopes(
    spec: &DecompositionSpec,
    max_deg: i64,
) -> Result<(Rational, Rational), Error> {
    match spec.case {
        DecompCase::IV { .. } | DecompCase::V { .. } | DecompCase::VI { .. } => {}
        _ => {
            return Err(Error::InvalidFamilyParams(
                "slope estimates only apply to the boundary-line cases".into(),
            ))
        }
    }
    let mut alpha_hat = Rational::zero();
    let mut beta_hat = Rational::zero();
    for mono in monomials_up_to(Window::Poly, max_deg) {
        if mono.n < 1 || mono.m < 1 {
            continue;
        }
        match classify_monomial(spec, &mono)? {
            Membership::PartA => {
                let ratio = Rational::new(mono.m.into(), mono.n.into());
                alpha_hat = alpha_hat.max(ratio);
            }
            Membership::PartB => {
                let ratio = Rational::new(mono.n.into(), mono.m.into());
                beta_hat = beta_hat.max(ratio);
            }
        }
    }
    Ok((alpha_hat, beta_hat))
}

/// The splitting operator of the decomposition: part A is the kernel and
/// part B maps to `-lambda` times itself; an RB-operator of weight lambda.
pub fn splitting_rbo(
    spec: &DecompositionSpec,
    lambda: &FieldElement,
) -> Result<OperatorRule, Error> {
    if lambda.is_zero() {
        return Err(Error::InvalidFamilyParams(
            "splitting operator needs a nonzero weight".into(),
        ));
    }
    let spec = spec.clone();
    let neg_lambda = -lambda;
    let label = format!("splitting({spec}, lambda={lambda})");
    Ok(OperatorRule::new(label, Some(lambda.clone()), move |mono| {
        match classify_monomial(&spec, &mono) {
            Ok(Membership::PartA) => None,
            Ok(Membership::PartB) => Some(Term::new(neg_lambda.clone(), mono)),
            Err(_) => None,
        }
    }))
}
