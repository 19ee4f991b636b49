//! Monomials, terms and sparse polynomials in two variables, plus monomial
//! linear operators given by an image rule.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::Signed;

use crate::error::Error;
use crate::field::FieldElement;

/// `x^n * y^m`. Exponents are signed so the same type serves the Laurent
/// window; polynomial-mode code only ever produces nonnegative exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub n: i64,
    pub m: i64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { n: 0, m: 0 };

    pub fn new(n: i64, m: i64) -> Self {
        Monomial { n, m }
    }

    pub fn total_deg(&self) -> i64 {
        self.n.abs() + self.m.abs()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            n: self.n + other.n,
            m: self.m + other.m,
        }
    }

    pub fn swap(&self) -> Monomial {
        Monomial {
            n: self.m,
            m: self.n,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Monomial::ONE
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        match self.n {
            0 => {}
            1 => parts.push("x".to_string()),
            n => parts.push(format!("x^{n}")),
        }
        match self.m {
            0 => {}
            1 => parts.push("y".to_string()),
            m => parts.push(format!("y^{m}")),
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// A nonzero scalar multiple of a monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coeff: FieldElement,
    pub mono: Monomial,
}

impl Term {
    pub fn new(coeff: FieldElement, mono: Monomial) -> Self {
        debug_assert!(!coeff.is_zero());
        Term { coeff, mono }
    }
}

/// The exponent domain an exhaustive check runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Window {
    /// Nonnegative exponents, unbounded.
    Poly,
    /// Exponents in `[-w, w]^2`; anything escaping is an error, never clipped.
    Laurent(i64),
}

impl Window {
    pub fn contains(&self, mono: &Monomial) -> bool {
        match self {
            Window::Poly => mono.n >= 0 && mono.m >= 0,
            Window::Laurent(w) => mono.n.abs() <= *w && mono.m.abs() <= *w,
        }
    }

    pub fn ensure(&self, mono: &Monomial) -> Result<(), Error> {
        if self.contains(mono) {
            Ok(())
        } else {
            Err(Error::ExponentOutOfWindow(mono.to_string()))
        }
    }
}

/// Finite monomial -> coefficient map; no stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SparsePoly {
    terms: BTreeMap<Monomial, FieldElement>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        SparsePoly::default()
    }

    pub fn from_term(term: Term) -> Self {
        let mut p = SparsePoly::zero();
        p.add_term(&term.coeff, term.mono);
        p
    }

    pub fn from_mono(mono: Monomial) -> Self {
        SparsePoly::from_term(Term::new(FieldElement::one(), mono))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Monomial) -> FieldElement {
        self.terms.get(mono).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn add_term(&mut self, coeff: &FieldElement, mono: Monomial) {
        if coeff.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(mono)
            .or_insert_with(FieldElement::zero);
        *entry = &*entry + coeff;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (mono, c) in other.terms() {
            out.add_term(c, *mono);
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> SparsePoly {
        let mut out = SparsePoly::zero();
        if c.is_zero() {
            return out;
        }
        for (mono, k) in self.terms() {
            out.add_term(&(k * c), *mono);
        }
        out
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        self.add(&other.scale(&-FieldElement::one()))
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                out.add_term(&(ca * cb), ma.mul(mb));
            }
        }
        out
    }

    /// Largest total degree among the terms; `None` for the zero polynomial.
    pub fn total_deg(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.total_deg()).max()
    }

    pub fn ensure_in(&self, window: Window) -> Result<(), Error> {
        for (mono, _) in self.terms() {
            window.ensure(mono)?;
        }
        Ok(())
    }
}

/// Exact linear combination `c1*p + c2*q`.
pub fn poly_combine(
    p: &SparsePoly,
    q: &SparsePoly,
    scalars: (&FieldElement, &FieldElement),
) -> SparsePoly {
    p.scale(scalars.0).add(&q.scale(scalars.1))
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in self.terms() {
            let (sign, mag) = match coeff {
                FieldElement::Rat(r) if r.is_negative() => ("-", -coeff),
                _ => ("+", coeff.clone()),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let coeff_str = match &mag {
                FieldElement::Rat(_) => mag.to_string(),
                FieldElement::Quad(_) => format!("({mag})"),
            };
            if mono.is_one() {
                write!(f, "{coeff_str}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{coeff_str}*{mono}")?;
            }
        }
        Ok(())
    }
}

type ImageFn = Arc<dyn Fn(Monomial) -> Option<Term> + Send + Sync>;

/// A monomial linear operator: each monomial maps to a scalar multiple of a
/// monomial or to zero (`None`). Linearity to polynomials is implied.
#[derive(Clone)]
pub struct OperatorRule {
    weight: Option<FieldElement>,
    label: String,
    image: ImageFn,
}

impl OperatorRule {
    pub fn new<F>(label: impl Into<String>, weight: Option<FieldElement>, image: F) -> Self
    where
        F: Fn(Monomial) -> Option<Term> + Send + Sync + 'static,
    {
        OperatorRule {
            weight,
            label: label.into(),
            image: Arc::new(image),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn weight(&self) -> Option<&FieldElement> {
        self.weight.as_ref()
    }

    pub fn image_of(&self, mono: Monomial) -> Option<Term> {
        (self.image)(mono)
    }

    /// Scalar in front of the image monomial, zero when the monomial is killed.
    pub fn coeff_of(&self, mono: Monomial) -> FieldElement {
        self.image_of(mono)
            .map(|t| t.coeff)
            .unwrap_or_else(FieldElement::zero)
    }

    /// Linear extension to polynomials.
    pub fn apply(&self, p: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (mono, c) in p.terms() {
            if let Some(t) = self.image_of(*mono) {
                out.add_term(&(c * &t.coeff), t.mono);
            }
        }
        out
    }

    /// Pointwise negation; the declared weight flips sign.
    pub fn negated(&self) -> OperatorRule {
        let inner = self.image.clone();
        OperatorRule {
            weight: self.weight.clone().map(|w| -w),
            label: format!("negate({})", self.label),
            image: Arc::new(move |mono| {
                inner(mono).map(|t| Term::new(-t.coeff, t.mono))
            }),
        }
    }

    /// Conjugation by the x<->y swap automorphism.
    pub fn swapped(&self) -> OperatorRule {
        let inner = self.image.clone();
        OperatorRule {
            weight: self.weight.clone(),
            label: format!("swap({})", self.label),
            image: Arc::new(move |mono| {
                inner(mono.swap()).map(|t| Term::new(t.coeff, t.mono.swap()))
            }),
        }
    }
}

impl fmt::Debug for OperatorRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OperatorRule")
            .field("label", &self.label)
            .field("weight", &self.weight)
            .finish()
    }
}

/// Alias for the linear extension, matching the operation vocabulary.
pub fn apply_rule(rule: &OperatorRule, p: &SparsePoly) -> SparsePoly {
    rule.apply(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn mono(n: i64, m: i64) -> Monomial {
        Monomial::new(n, m)
    }

    #[test]
    fn mono_mul_examples() {
        assert_eq!(mono(2, 1).mul(&mono(1, 3)), mono(3, 4));
        assert_eq!(Monomial::ONE.mul(&Monomial::ONE), Monomial::ONE);
        assert_eq!(mono(-1, 1).mul(&mono(1, 1)), mono(0, 2));
    }

    #[test]
    fn combine_collects_and_purges() {
        let x = SparsePoly::from_mono(mono(1, 0));
        let y = SparsePoly::from_mono(mono(0, 1));
        let p = x.add(&y);
        let q = x.sub(&y);
        let two_x = poly_combine(&p, &q, (&FieldElement::one(), &FieldElement::one()));
        assert_eq!(two_x.to_string(), "2*x");
        let zero = poly_combine(&p, &p, (&FieldElement::one(), &(-FieldElement::one())));
        assert!(zero.is_zero());
        let same = poly_combine(&p, &SparsePoly::zero(), (&FieldElement::one(), &FieldElement::one()));
        assert_eq!(same, p);
    }

    #[test]
    fn products() {
        let x = SparsePoly::from_mono(mono(1, 0));
        let y = SparsePoly::from_mono(mono(0, 1));
        let sum = x.add(&y);
        let sq = sum.mul(&sum);
        assert_eq!(sq.to_string(), "y^2 + 2*x*y + x^2");
        assert!(sum.mul(&SparsePoly::zero()).is_zero());
        let diff = x.sub(&y);
        assert_eq!(diff.mul(&sum).to_string(), "-y^2 + x^2");
    }

    #[test]
    fn apply_rule_drops_kernel() {
        // R(x) absent, R(y) = -y
        let r = OperatorRule::new("test", None, |mono| {
            if mono == Monomial::new(0, 1) {
                Some(Term::new(-FieldElement::one(), mono))
            } else {
                None
            }
        });
        let mut p = SparsePoly::zero();
        p.add_term(&FieldElement::from_int(3), mono(1, 0));
        p.add_term(&FieldElement::one(), mono(0, 1));
        assert_eq!(r.apply(&p).to_string(), "-y");
    }

    #[test]
    fn negated_identity() {
        let neg_id = OperatorRule::new("neg-id", Some(FieldElement::one()), |mono| {
            Some(Term::new(-FieldElement::one(), mono))
        });
        let p = SparsePoly::from_mono(mono(2, 1));
        assert_eq!(neg_id.apply(&p).to_string(), "-x^2*y");
        let id = neg_id.negated();
        assert_eq!(id.apply(&p), p);
        assert_eq!(id.weight(), Some(&FieldElement::from_int(-1)));
    }

    #[test]
    fn canonical_string_sorted() {
        let mut p = SparsePoly::zero();
        p.add_term(&rat(-1, 2).into(), mono(0, 3));
        p.add_term(&FieldElement::one(), mono(2, 1));
        assert_eq!(p.to_string(), "-1/2*y^3 + x^2*y");
    }

    #[test]
    fn window_checks() {
        let w = Window::Laurent(2);
        assert!(w.contains(&mono(-2, 1)));
        assert!(w.ensure(&mono(3, 0)).is_err());
        assert!(Window::Poly.ensure(&mono(-1, 0)).is_err());
    }
}
