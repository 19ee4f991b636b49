//! Monomial Rota-Baxter operators on F[x, y] and F[x^-1, x, y^-1, y]:
//! every closed-form family, the operators induced by homomorphic averaging
//! operators and by subalgebra splittings, and the exhaustive identity
//! checkers.

use std::collections::BTreeMap;
use std::sync::Mutex;

use crate::averaging::{build_averaging, AveragingSpec};
use crate::coeffs::{fibonacci, r1_alpha_row};
use crate::decomp::{splitting_rbo, DecompositionSpec};
use crate::error::Error;
use crate::exhaust::{monomial_pairs_up_to, monomials_up_to, run_check};
use crate::field::{FieldElement, Rational};
use crate::poly::{Monomial, OperatorRule, SparsePoly, Term, Window};
use crate::report::{VerificationReport, Violation};

/// Value at the unit monomial for the families where it is free: the
/// Rota-Baxter identity at (1, 1) forces it into {0, -1} (at weight 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theta {
    Zero,
    NegOne,
}

impl Theta {
    pub fn value(self) -> FieldElement {
        match self {
            Theta::Zero => FieldElement::zero(),
            Theta::NegOne => FieldElement::from_int(-1),
        }
    }
}

/// Every implemented family of monomial Rota-Baxter operators.
///
/// All weight-1 families below send x^n y^m into the span of a single
/// monomial; the image exponents and coefficients are the closed forms
/// carried by each variant. `Splitting` has the weight of its parameter,
/// `Custom` carries an explicit finite table.
#[derive(Clone, Debug)]
pub enum RBFamily {
    /// R = -T for a homomorphic averaging operator T; weight 1.
    FromAveraging(AveragingSpec),
    /// R vanishes on one part of a subalgebra decomposition and is
    /// -lambda * id on the other.
    Splitting {
        decomp: DecompositionSpec,
        lambda: FieldElement,
    },
    /// R(x^n y^m) = -beta^n y^m for m > 0, R(x^n) = theta * gamma^n.
    Case1R0 {
        beta: FieldElement,
        gamma: FieldElement,
        theta: Theta,
    },
    /// Image monomial x^{rm} y^m with r >= 1; rho is any fixed r-th root
    /// of -1/alpha_{0,1}, so alpha_{n,m} = -(rho^{-r})^m rho^n ... stored
    /// via rho directly: coefficient -(-alpha01)^m rho^n.
    Case1 {
        r: u32,
        rho: FieldElement,
        alpha10: FieldElement,
        theta: Theta,
    },
    /// Constant image: R(x^n y^m) = -alpha^n beta^m for n + m > 0.
    Case5Const {
        alpha: FieldElement,
        beta: FieldElement,
        theta: Theta,
    },
    /// The generic y^{n+m}-image family driven by the first-row seeds
    /// q0, q1, q2 (pairwise distinct, 2 q1 != q0 + q2).
    R1General {
        q0: FieldElement,
        q1: FieldElement,
        q2: FieldElement,
        theta: Theta,
    },
    /// Degenerate seeds q0 = q1: alpha_{n,m} = (-1)^{n+1} q0^n.
    R1Q0EqQ1 { q0: FieldElement },
    /// Seeds constant q0 up to a single exception alpha_{1,n} = qn.
    R1Q0Run {
        q0: FieldElement,
        qn: FieldElement,
        n: u32,
        theta: Theta,
    },
    /// Degenerate seeds q0 = q2 != q1.
    R1Q0EqQ2 { q0: FieldElement, q1: FieldElement },
    /// Degenerate seeds q1 = q2 != q0: alpha_{1,0} = q0, everything else
    /// is -(-q1)^n.
    R1Q1EqQ2 {
        q0: FieldElement,
        q1: FieldElement,
        theta: Theta,
    },
    /// R(x^k y^m) = (-1)^{k-1}/f_{m+k} * sum_s C(k,s) a^{k-s} b^s f_{m-k+s}
    /// * y^{m+k}, with the signed Fibonacci numbers f.
    Fibonacci { a: FieldElement, b: FieldElement },
    /// Explicit finite table; everything outside the table maps to zero.
    Custom {
        weight: FieldElement,
        entries: BTreeMap<Monomial, Term>,
    },
}

fn nonzero_term(coeff: FieldElement, mono: Monomial) -> Option<Term> {
    if coeff.is_zero() {
        None
    } else {
        Some(Term { coeff, mono })
    }
}

/// Shared lazily-extended first row for the generic family.
struct R1Coeffs {
    q0: FieldElement,
    q1: FieldElement,
    q2: FieldElement,
    row: Mutex<Vec<FieldElement>>,
}

impl R1Coeffs {
    fn alpha(&self, n: i64, m: i64) -> Result<FieldElement, Error> {
        let (n, m) = (n as usize, m as usize);
        let needed = n + m;
        let mut row = self.row.lock().unwrap();
        if row.len() < needed {
            *row = r1_alpha_row(&self.q0, &self.q1, &self.q2, needed.max(2))?;
        }
        // fold the row down: alpha_{k+1,i} = alpha_{k,i}(q0 - alpha_{1,k+i})
        // - q0 alpha_{k,i+1}, keeping only the slice that is still needed
        let mut cur: Vec<FieldElement> = row[m..n + m].to_vec();
        for k in 1..n {
            let mut next = Vec::with_capacity(cur.len() - 1);
            for i in 0..cur.len() - 1 {
                let factor = self.q0.try_sub(&row[k + m + i])?;
                next.push(cur[i].try_mul(&factor)?.try_sub(&self.q0.try_mul(&cur[i + 1])?)?);
            }
            cur = next;
        }
        Ok(cur.into_iter().next().expect("n >= 1"))
    }
}

/// Builds the linear rule of a family, validating its parameters.
pub fn build_rbo(family: &RBFamily) -> Result<OperatorRule, Error> {
    let one = FieldElement::one();
    match family {
        RBFamily::FromAveraging(spec) => {
            let t = build_averaging(spec);
            Ok(OperatorRule::new(
                format!("-({})", t.label()),
                Some(one),
                move |mono| {
                    t.image_of(mono).map(|term| Term {
                        coeff: -term.coeff,
                        mono: term.mono,
                    })
                },
            ))
        }
        RBFamily::Splitting { decomp, lambda } => splitting_rbo(decomp, lambda),
        RBFamily::Case1R0 { beta, gamma, theta } => {
            let (beta, gamma, theta) = (beta.clone(), gamma.clone(), theta.value());
            Ok(OperatorRule::new(
                "case-1 projection onto F[y], r = 0",
                Some(one),
                move |mono| {
                    if mono.m > 0 {
                        nonzero_term(-beta.pow(mono.n as u64), Monomial::new(0, mono.m))
                    } else {
                        nonzero_term(
                            theta.try_mul(&gamma.pow(mono.n as u64)).ok()?,
                            Monomial::ONE,
                        )
                    }
                },
            ))
        }
        RBFamily::Case1 {
            r,
            rho,
            alpha10,
            theta,
        } => {
            if *r == 0 {
                return Err(Error::InvalidFamilyParams("r must be >= 1".into()));
            }
            if rho.is_zero() {
                return Err(Error::InvalidFamilyParams("rho must be nonzero".into()));
            }
            let r = *r as i64;
            // alpha_{0,1} = -rho^{-r}
            let alpha01 = -rho.pow(r as u64).inv()?;
            let (rho, alpha10, theta) = (rho.clone(), alpha10.clone(), theta.value());
            Ok(OperatorRule::new(
                format!("case-1 family onto span(x^({r}m) y^m)"),
                Some(one),
                move |mono| {
                    if mono.m > 0 {
                        let coeff = -(-alpha01.clone())
                            .pow(mono.m as u64)
                            .try_mul(&rho.pow(mono.n as u64))
                            .ok()?;
                        nonzero_term(coeff, Monomial::new(r * mono.m, mono.m))
                    } else {
                        nonzero_term(
                            theta.try_mul(&alpha10.pow(mono.n as u64)).ok()?,
                            Monomial::ONE,
                        )
                    }
                },
            ))
        }
        RBFamily::Case5Const { alpha, beta, theta } => {
            // the identity at (1, x) and (1, y) forces (theta+1)alpha =
            // (theta+1)beta = 0: a nonzero constant-image operator sends 1
            // to -1
            if *theta == Theta::Zero && !(alpha.is_zero() && beta.is_zero()) {
                return Err(Error::InvalidFamilyParams(
                    "a nonzero constant-image operator requires theta = -1".into(),
                ));
            }
            let (alpha, beta, theta) = (alpha.clone(), beta.clone(), theta.value());
            Ok(OperatorRule::new(
                "constant-image family",
                Some(one),
                move |mono| {
                    if mono == Monomial::ONE {
                        nonzero_term(theta.clone(), Monomial::ONE)
                    } else {
                        let coeff = -alpha
                            .pow(mono.n as u64)
                            .try_mul(&beta.pow(mono.m as u64))
                            .ok()?;
                        nonzero_term(coeff, Monomial::ONE)
                    }
                },
            ))
        }
        RBFamily::R1General { q0, q1, q2, theta } => {
            if q0 == q1 || q1 == q2 || q0 == q2 {
                return Err(Error::InvalidFamilyParams(
                    "q0, q1, q2 must be pairwise distinct".into(),
                ));
            }
            if q1.try_add(q1)? == q0.try_add(q2)? {
                return Err(Error::InvalidFamilyParams(
                    "2*q1 = q0 + q2 is excluded".into(),
                ));
            }
            let coeffs = R1Coeffs {
                q0: q0.clone(),
                q1: q1.clone(),
                q2: q2.clone(),
                row: Mutex::new(r1_alpha_row(q0, q1, q2, 2)?),
            };
            let theta = theta.value();
            Ok(OperatorRule::new(
                format!("row-seeded y^(n+m) family ({q0}, {q1}, {q2})"),
                Some(one),
                move |mono| {
                    let coeff = if mono.n == 0 {
                        if mono.m == 0 {
                            theta.clone()
                        } else {
                            FieldElement::from_int(-1)
                        }
                    } else {
                        coeffs
                            .alpha(mono.n, mono.m)
                            .expect("recurrence degenerated on validated seeds")
                    };
                    nonzero_term(coeff, Monomial::new(0, mono.n + mono.m))
                },
            ))
        }
        RBFamily::R1Q0EqQ1 { q0 } => {
            let q0 = q0.clone();
            Ok(OperatorRule::new(
                format!("constant-row y^(n+m) family (q0 = {q0})"),
                Some(one),
                move |mono| {
                    let coeff = if mono.n == 0 {
                        FieldElement::from_int(-1)
                    } else {
                        let v = q0.pow(mono.n as u64);
                        if mono.n % 2 == 0 {
                            -v
                        } else {
                            v
                        }
                    };
                    nonzero_term(coeff, Monomial::new(0, mono.n + mono.m))
                },
            ))
        }
        RBFamily::R1Q0Run { q0, qn, n, theta } => {
            if *n == 0 {
                return Err(Error::InvalidFamilyParams("n must be >= 1".into()));
            }
            if q0 == qn {
                return Err(Error::InvalidFamilyParams(
                    "qn = q0 collapses onto the constant-row family".into(),
                ));
            }
            let (q0, qn, n, theta) = (q0.clone(), qn.clone(), *n as i64, theta.value());
            Ok(OperatorRule::new(
                format!("single-exception row family (q0 = {q0}, q_{n} = {qn})"),
                Some(one),
                move |mono| {
                    let (k, m) = (mono.n, mono.m);
                    let coeff = if k == 0 {
                        if m == 0 {
                            theta.clone()
                        } else {
                            FieldElement::from_int(-1)
                        }
                    } else {
                        let head = (-q0.clone()).pow(k as u64);
                        let mut coeff = -head;
                        if (k + m) % (n + 1) == 0 {
                            let scale = FieldElement::from_rat(k * (n + 1), m + k);
                            let tail = (-q0.clone())
                                .pow((k - 1) as u64)
                                .try_mul(&scale)
                                .ok()?
                                .try_mul(&q0.try_sub(&qn).ok()?)
                                .ok()?;
                            coeff = coeff.try_sub(&tail).ok()?;
                        }
                        coeff
                    };
                    nonzero_term(coeff, Monomial::new(0, k + m))
                },
            ))
        }
        RBFamily::R1Q0EqQ2 { q0, q1 } => {
            if q0 == q1 {
                return Err(Error::InvalidFamilyParams(
                    "q1 = q0 collapses onto the constant-row family".into(),
                ));
            }
            let (q0, q1) = (q0.clone(), q1.clone());
            Ok(OperatorRule::new(
                format!("alternating-row family (q0 = {q0}, q1 = {q1})"),
                Some(one),
                move |mono| {
                    let (k, m) = (mono.n, mono.m);
                    let coeff = if k == 0 {
                        FieldElement::from_int(-1)
                    } else {
                        let e = (m - k - 1).rem_euclid(2);
                        let mut c = q0.pow((k - e) as u64);
                        if e == 1 {
                            let mid = FieldElement::from_int(m - k)
                                .try_mul(&q0)
                                .ok()?
                                .try_add(
                                    &FieldElement::from_int(2 * k).try_mul(&q1).ok()?,
                                )
                                .ok()?
                                .try_div(&FieldElement::from_int(m + k))
                                .ok()?;
                            c = c.try_mul(&mid).ok()?;
                        }
                        if k % 2 == 0 {
                            c = -c;
                        }
                        c
                    };
                    nonzero_term(coeff, Monomial::new(0, k + m))
                },
            ))
        }
        RBFamily::R1Q1EqQ2 { q0, q1, theta } => {
            if q0 == q1 {
                return Err(Error::InvalidFamilyParams(
                    "q0 = q1 collapses onto the constant-row family".into(),
                ));
            }
            let (q0, q1, theta) = (q0.clone(), q1.clone(), theta.value());
            // the m = 0 column is forced by the pair (x, x) and the fold
            // recurrence: alpha_{n,0} = (q0 - q1)^n - (-q1)^n
            let gap = q0.try_sub(&q1)?;
            Ok(OperatorRule::new(
                format!("eventually-constant row family (q0 = {q0}, q1 = {q1})"),
                Some(one),
                move |mono| {
                    let (n, m) = (mono.n, mono.m);
                    let coeff = if n == 0 {
                        if m == 0 {
                            theta.clone()
                        } else {
                            FieldElement::from_int(-1)
                        }
                    } else if m == 0 {
                        gap.pow(n as u64)
                            .try_sub(&(-q1.clone()).pow(n as u64))
                            .ok()?
                    } else {
                        -(-q1.clone()).pow(n as u64)
                    };
                    nonzero_term(coeff, Monomial::new(0, n + m))
                },
            ))
        }
        RBFamily::Fibonacci { a, b } => {
            if a == b {
                return Err(Error::InvalidFamilyParams(
                    "a = b collapses onto the constant-row family".into(),
                ));
            }
            let (a, b) = (a.clone(), b.clone());
            Ok(OperatorRule::new(
                format!("Fibonacci-quotient family (a = {a}, b = {b})"),
                Some(one),
                move |mono| {
                    let (k, m) = (mono.n, mono.m);
                    if k + m == 0 {
                        return nonzero_term(FieldElement::from_int(-1), Monomial::ONE);
                    }
                    let mut sum = FieldElement::zero();
                    for s in 0..=k {
                        let c = crate::coeffs::binomial(k as u64, s as u64);
                        let f = fibonacci(m - k + s);
                        let weight = FieldElement::Rat(Rational::from(c * f));
                        let term = a
                            .pow((k - s) as u64)
                            .try_mul(&b.pow(s as u64))
                            .ok()?
                            .try_mul(&weight)
                            .ok()?;
                        sum = sum.try_add(&term).ok()?;
                    }
                    let denom = FieldElement::Rat(Rational::from(fibonacci(m + k)));
                    let mut coeff = sum.try_div(&denom).ok()?;
                    if k % 2 == 0 {
                        coeff = -coeff;
                    }
                    nonzero_term(coeff, Monomial::new(0, k + m))
                },
            ))
        }
        RBFamily::Custom { weight, entries } => {
            if weight.is_zero() {
                return Err(Error::InvalidFamilyParams(
                    "the weight must be nonzero".into(),
                ));
            }
            let entries = entries.clone();
            Ok(OperatorRule::new(
                "explicit table",
                Some(weight.clone()),
                move |mono| entries.get(&mono).cloned(),
            ))
        }
    }
}

/// The averaging-born operator R(x^n y^m) = m/(n+m) y^{n+m} (and 1 at the
/// unit), a Rota-Baxter operator of weight -1 first noted by
/// Vieillard-Baron.
pub fn vieillard_baron() -> OperatorRule {
    OperatorRule::new(
        "Vieillard-Baron operator",
        Some(FieldElement::from_int(-1)),
        |mono| {
            if mono == Monomial::ONE {
                return Some(Term {
                    coeff: FieldElement::one(),
                    mono: Monomial::ONE,
                });
            }
            if mono.m == 0 {
                return None;
            }
            Some(Term {
                coeff: FieldElement::from_rat(mono.m, mono.n + mono.m),
                mono: Monomial::new(0, mono.n + mono.m),
            })
        },
    )
}

pub fn negate_rule(rule: &OperatorRule) -> OperatorRule {
    rule.negated()
}

/// Exhaustively checks R(a)R(b) = R(R(a)b + a R(b) + lambda ab) over all
/// ordered monomial pairs of total degree <= max_deg in the window.
pub fn rb_check(
    rule: &OperatorRule,
    lambda: &FieldElement,
    window: Window,
    max_deg: i64,
    workers: usize,
) -> Result<VerificationReport, Error> {
    let pairs = monomial_pairs_up_to(window, max_deg);
    let checked = pairs.len() as u64;
    let violations = run_check(&pairs, workers, |&(a, b)| {
        let ra = rule.image_of(a);
        let rb = rule.image_of(b);
        let mut lhs = SparsePoly::zero();
        if let (Some(ta), Some(tb)) = (&ra, &rb) {
            let mono = ta.mono.mul(&tb.mono);
            window.ensure(&mono)?;
            lhs.add_term(&ta.coeff.try_mul(&tb.coeff)?, mono);
        }
        let mut arg = SparsePoly::zero();
        if let Some(ta) = &ra {
            arg.add_term(&ta.coeff, ta.mono.mul(&b));
        }
        if let Some(tb) = &rb {
            arg.add_term(&tb.coeff, a.mul(&tb.mono));
        }
        arg.add_term(lambda, a.mul(&b));
        arg.ensure_in(window)?;
        let rhs = rule.apply(&arg);
        rhs.ensure_in(window)?;
        if lhs == rhs {
            Ok(Vec::new())
        } else {
            Ok(vec![Violation {
                a,
                b,
                law: format!("R(a)R(b) = R(R(a)b + aR(b) + ({lambda})ab)"),
                lhs,
                rhs,
            }])
        }
    })?;
    Ok(VerificationReport {
        checked_pairs: checked,
        violations,
    })
}

/// Checks R(R(u) + lambda u) = 0 for every monomial u of total degree
/// <= max_deg: the splitting criterion characterizing the operators that
/// arise from a subalgebra decomposition.
pub fn splitting_criterion_check(
    rule: &OperatorRule,
    lambda: &FieldElement,
    max_deg: i64,
    workers: usize,
) -> Result<VerificationReport, Error> {
    let monos = monomials_up_to(Window::Poly, max_deg);
    let checked = monos.len() as u64;
    let violations = run_check(&monos, workers, |&u| {
        let mut arg = SparsePoly::from_mono(u);
        arg = arg.scale(lambda);
        if let Some(t) = rule.image_of(u) {
            arg.add_term(&t.coeff, t.mono);
        }
        let image = rule.apply(&arg);
        if image.is_zero() {
            Ok(Vec::new())
        } else {
            Ok(vec![Violation {
                a: u,
                b: Monomial::ONE,
                law: format!("R(R(u) + ({lambda})u) = 0"),
                lhs: image,
                rhs: SparsePoly::zero(),
            }])
        }
    })?;
    Ok(VerificationReport {
        checked_pairs: checked,
        violations,
    })
}
