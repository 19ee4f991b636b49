//! Exact scalars: arbitrary-precision rationals and elements of a
//! quadratic extension Q(sqrt(D)).
//!
//! Every value is kept in canonical form: rationals are gcd-reduced with a
//! positive denominator (the backing `BigRational` maintains that), and an
//! extension element `a + b*sqrt(D)` with `b = 0` or with `D` a rational
//! square is demoted to a plain rational at construction.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::Error;

pub type Rational = BigRational;

/// `a + b*sqrt(d)` with `b != 0` and `d` not a rational square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadExt {
    pub a: Rational,
    pub b: Rational,
    pub d: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldElement {
    Rat(Rational),
    Quad(QuadExt),
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// The unique rational `rho` with `rho^r = x`, if one exists.
/// For even `r` the nonnegative root is returned.
pub fn rational_root(x: &Rational, r: u32) -> Option<Rational> {
    assert!(r >= 1);
    if r == 1 {
        return Some(x.clone());
    }
    if x.is_zero() {
        return Some(Rational::zero());
    }
    let negative = x.is_negative();
    if negative && r % 2 == 0 {
        return None;
    }
    let num = x.numer().abs();
    let den = x.denom().clone();
    let rn = num.nth_root(r);
    let rd = den.nth_root(r);
    if num::pow(rn.clone(), r as usize) != num || num::pow(rd.clone(), r as usize) != den {
        return None;
    }
    let root = Rational::new(if negative { -rn } else { rn }, rd);
    Some(root)
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement::Rat(Rational::zero())
    }

    pub fn one() -> Self {
        FieldElement::Rat(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        FieldElement::Rat(Rational::from(BigInt::from(n)))
    }

    pub fn from_rat(p: i64, q: i64) -> Self {
        FieldElement::Rat(rat(p, q))
    }

    /// Builds `a + b*sqrt(d)`, demoting to a rational when possible.
    pub fn quad(a: Rational, b: Rational, d: Rational) -> Self {
        if b.is_zero() {
            return FieldElement::Rat(a);
        }
        if let Some(s) = rational_root(&d, 2) {
            return FieldElement::Rat(a + b * s);
        }
        FieldElement::Quad(QuadExt { a, b, d })
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, FieldElement::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, FieldElement::Rat(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            FieldElement::Rat(r) => Some(r),
            FieldElement::Quad(_) => None,
        }
    }

    fn promote(&self, d: &Rational) -> (Rational, Rational) {
        match self {
            FieldElement::Rat(r) => (r.clone(), Rational::zero()),
            FieldElement::Quad(q) => {
                debug_assert_eq!(&q.d, d);
                (q.a.clone(), q.b.clone())
            }
        }
    }

    fn common_disc<'a>(&'a self, rhs: &'a FieldElement) -> Result<Option<&'a Rational>, Error> {
        match (self, rhs) {
            (FieldElement::Rat(_), FieldElement::Rat(_)) => Ok(None),
            (FieldElement::Quad(q), FieldElement::Rat(_)) => Ok(Some(&q.d)),
            (FieldElement::Rat(_), FieldElement::Quad(q)) => Ok(Some(&q.d)),
            (FieldElement::Quad(p), FieldElement::Quad(q)) => {
                if p.d == q.d {
                    Ok(Some(&p.d))
                } else {
                    Err(Error::DiscriminantMismatch(p.d.to_string(), q.d.to_string()))
                }
            }
        }
    }

    pub fn try_add(&self, rhs: &FieldElement) -> Result<FieldElement, Error> {
        match self.common_disc(rhs)? {
            None => {
                let (FieldElement::Rat(x), FieldElement::Rat(y)) = (self, rhs) else {
                    unreachable!()
                };
                Ok(FieldElement::Rat(x + y))
            }
            Some(d) => {
                let d = d.clone();
                let (a1, b1) = self.promote(&d);
                let (a2, b2) = rhs.promote(&d);
                Ok(FieldElement::quad(a1 + a2, b1 + b2, d))
            }
        }
    }

    pub fn try_sub(&self, rhs: &FieldElement) -> Result<FieldElement, Error> {
        self.try_add(&rhs.clone().neg())
    }

    pub fn try_mul(&self, rhs: &FieldElement) -> Result<FieldElement, Error> {
        match self.common_disc(rhs)? {
            None => {
                let (FieldElement::Rat(x), FieldElement::Rat(y)) = (self, rhs) else {
                    unreachable!()
                };
                Ok(FieldElement::Rat(x * y))
            }
            Some(d) => {
                let d = d.clone();
                let (a1, b1) = self.promote(&d);
                let (a2, b2) = rhs.promote(&d);
                let a = &a1 * &a2 + &b1 * &b2 * &d;
                let b = &a1 * &b2 + &b1 * &a2;
                Ok(FieldElement::quad(a, b, d))
            }
        }
    }

    pub fn inv(&self) -> Result<FieldElement, Error> {
        match self {
            FieldElement::Rat(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(FieldElement::Rat(r.recip()))
                }
            }
            FieldElement::Quad(q) => {
                // norm = a^2 - b^2 d; nonzero since b != 0 and d is not a square
                let norm = &q.a * &q.a - &q.b * &q.b * &q.d;
                debug_assert!(!norm.is_zero());
                Ok(FieldElement::quad(&q.a / &norm, -(&q.b / &norm), q.d.clone()))
            }
        }
    }

    pub fn try_div(&self, rhs: &FieldElement) -> Result<FieldElement, Error> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.try_mul(&rhs.inv()?)
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        let mut acc = FieldElement::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn pow_i(&self, e: i64) -> Result<FieldElement, Error> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Sign of the real embedding taking `sqrt(d) > 0`. Requires `d > 0`.
    pub fn real_sign(&self) -> Result<i32, Error> {
        match self {
            FieldElement::Rat(r) => Ok(rational_sign(r)),
            FieldElement::Quad(q) => {
                if !q.d.is_positive() {
                    return Err(Error::InvalidFamilyParams(format!(
                        "sign of a + b*sqrt({}) is undefined for nonpositive discriminant",
                        q.d
                    )));
                }
                let sa = rational_sign(&q.a);
                let sb = rational_sign(&q.b);
                if sa == sb || sa == 0 {
                    return Ok(sb);
                }
                if sb == 0 {
                    return Ok(sa);
                }
                // opposite signs: compare a^2 with b^2 d
                let lhs = &q.a * &q.a;
                let rhs = &q.b * &q.b * &q.d;
                Ok(match lhs.cmp(&rhs) {
                    std::cmp::Ordering::Greater => sa,
                    std::cmp::Ordering::Less => sb,
                    std::cmp::Ordering::Equal => 0,
                })
            }
        }
    }
}

fn rational_sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// One entry point for the four field operations, with explicit errors.
pub fn field_arith(lhs: &FieldElement, op: char, rhs: &FieldElement) -> Result<FieldElement, Error> {
    match op {
        '+' => lhs.try_add(rhs),
        '-' => lhs.try_sub(rhs),
        '*' => lhs.try_mul(rhs),
        '/' => lhs.try_div(rhs),
        _ => Err(Error::Parse(format!("unknown operation {op:?}"))),
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $delegate:ident) => {
        impl $trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$delegate(rhs)
                    .expect("operands from different quadratic extensions")
            }
        }
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rat(r) => FieldElement::Rat(-r),
            FieldElement::Quad(q) => FieldElement::Quad(QuadExt {
                a: -q.a,
                b: -q.b,
                d: q.d,
            }),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.clone().neg()
    }
}

impl From<Rational> for FieldElement {
    fn from(r: Rational) -> Self {
        FieldElement::Rat(r)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rat(r) => write!(f, "{r}"),
            FieldElement::Quad(q) => {
                if q.b.is_negative() {
                    write!(f, "{}-{}*sqrt({})", q.a, -q.b.clone(), q.d)
                } else {
                    write!(f, "{}+{}*sqrt({})", q.a, q.b, q.d)
                }
            }
        }
    }
}

impl FromStr for FieldElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if let Some(idx) = s.find("*sqrt(") {
            let close = s
                .rfind(')')
                .ok_or_else(|| Error::Parse(format!("unterminated sqrt in {s:?}")))?;
            let d: Rational = s[idx + 6..close]
                .parse()
                .map_err(|_| Error::Parse(format!("bad discriminant in {s:?}")))?;
            let head = &s[..idx];
            // split "A+B" / "A-B" / "B" at the last sign that is not leading
            let mut split = None;
            for (i, ch) in head.char_indices().skip(1) {
                if (ch == '+' || ch == '-') && !head[..i].ends_with('/') {
                    split = Some(i);
                }
            }
            let (a, b) = match split {
                Some(i) => {
                    let a: Rational = head[..i]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad rational part in {s:?}")))?;
                    let sign = if head[i..].starts_with('-') { -1 } else { 1 };
                    let b: Rational = head[i + 1..]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad radical coefficient in {s:?}")))?;
                    (a, b * Rational::from(BigInt::from(sign)))
                }
                None => {
                    let b: Rational = head
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad radical coefficient in {s:?}")))?;
                    (Rational::zero(), b)
                }
            };
            Ok(FieldElement::quad(a, b, d))
        } else {
            let r: Rational = s
                .parse()
                .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
            Ok(FieldElement::Rat(r))
        }
    }
}
