//! Coefficient machinery for the operators of the form
//! `R(x^n y^m) = alpha_{n,m} y^{n+m}`: the first-row recurrence, the
//! row-extension recurrence, the double binomial sum, the s-transform with
//! its rational recurrence and closed form, and the signed Fibonacci
//! sequence used by the worked example.

use num::bigint::BigInt;
use num::{One, Zero};

use crate::error::Error;
use crate::field::{rat, FieldElement, Rational};
use crate::poly::{Monomial, SparsePoly};
use crate::report::{VerificationReport, Violation};

/// Fibonacci numbers over all of Z: f_0 = 0, f_1 = f_2 = 1,
/// f_{-m} = (-1)^{m+1} f_m.
pub fn fibonacci(m: i64) -> BigInt {
    let k = m.unsigned_abs();
    let mut a = BigInt::zero();
    let mut b = BigInt::one();
    for _ in 0..k {
        let next = &a + &b;
        a = b;
        b = next;
    }
    if m >= 0 || k % 2 == 1 {
        a
    } else {
        -a
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn fe(r: Rational) -> FieldElement {
    FieldElement::Rat(r)
}

/// First coefficient row `alpha_{1,m}`, m = 0..=max_m, determined by the
/// three seeds. Repeated seeds route to the matching degenerate family;
/// pairwise-distinct seeds iterate the two-step quotient recurrence, falling
/// back to the general (k, t) quotient whenever a denominator vanishes.
pub fn r1_alpha_row(
    q0: &FieldElement,
    q1: &FieldElement,
    q2: &FieldElement,
    max_m: usize,
) -> Result<Vec<FieldElement>, Error> {
    let mut row = Vec::with_capacity(max_m + 1);
    if q0 == q1 && q1 == q2 {
        for _ in 0..=max_m {
            row.push(q0.clone());
        }
        return Ok(row);
    }
    if q0 == q1 {
        // seeds alpha_{1,0} = alpha_{1,1} != alpha_{1,2}: the run family with
        // run length 2, nonconstant exactly when 3 | m+1
        let gap = q0.try_sub(q2)?;
        for m in 0..=max_m as i64 {
            let value = if (m + 1) % 3 == 0 {
                q0.try_sub(&FieldElement::from_rat(3, m + 1).try_mul(&gap)?)?
            } else {
                q0.clone()
            };
            row.push(value);
        }
        return Ok(row);
    }
    if q0 == q2 {
        // alpha_{1,2n} = q0, alpha_{1,2n+1} = (n q0 + q1) / (n + 1)
        for m in 0..=max_m as i64 {
            let value = if m % 2 == 0 {
                q0.clone()
            } else {
                let n = (m - 1) / 2;
                FieldElement::from_int(n)
                    .try_mul(q0)?
                    .try_add(q1)?
                    .try_div(&FieldElement::from_int(n + 1))?
            };
            row.push(value);
        }
        return Ok(row);
    }
    if q1 == q2 {
        row.push(q0.clone());
        for _ in 1..=max_m {
            row.push(q1.clone());
        }
        return Ok(row);
    }
    // pairwise distinct
    let twice_q1 = q1.try_add(q1)?;
    if twice_q1 == q0.try_add(q2)? {
        return Err(Error::InvalidFamilyParams(
            "2*q1 = q0 + q2 is excluded for pairwise distinct seeds".into(),
        ));
    }
    row.push(q0.clone());
    if max_m >= 1 {
        row.push(q1.clone());
    }
    if max_m >= 2 {
        row.push(q2.clone());
    }
    for m in 3..=max_m {
        let value = next_alpha1(&row, m)?;
        row.push(value);
    }
    Ok(row)
}

/// `alpha_{1,m}` from the already known prefix, by the quotient
/// `(a_k a_{m-k-1} - a_t a_{m-t-1}) / (a_k + a_{m-k-1} - a_t - a_{m-t-1})`,
/// preferring (k, t) = (0, 1) and scanning the other pairs on degeneracy.
fn next_alpha1(row: &[FieldElement], m: usize) -> Result<FieldElement, Error> {
    let mut pairs = vec![(0usize, 1usize)];
    for k in 0..m {
        for t in 0..k {
            if (k, t) != (0, 1) {
                pairs.push((k, t));
            }
        }
    }
    for (k, t) in pairs {
        let ak = &row[k];
        let akk = &row[m - k - 1];
        let at = &row[t];
        let att = &row[m - t - 1];
        let denom = ak.try_add(akk)?.try_sub(at)?.try_sub(att)?;
        if denom.is_zero() {
            continue;
        }
        let numer = ak.try_mul(akk)?.try_sub(&at.try_mul(att)?)?;
        return numer.try_div(&denom);
    }
    Err(Error::DegenerateDenominator(format!(
        "every quotient for alpha_1_{m} has a vanishing denominator"
    )))
}

/// Rows `alpha_{k,m}` for 1 <= k <= max_k, 0 <= m <= max_m, extended from
/// the first row by `alpha_{k+1,m} = alpha_{k,m}(q0 - alpha_{1,k+m}) -
/// q0 * alpha_{k,m+1}`. The input row must cover index max_k + max_m - 1.
pub fn r1_extend(
    row: &[FieldElement],
    q0: &FieldElement,
    max_k: usize,
    max_m: usize,
) -> Result<Vec<Vec<FieldElement>>, Error> {
    if max_k == 0 {
        return Ok(Vec::new());
    }
    if row.len() < max_k + max_m {
        return Err(Error::InvalidFamilyParams(format!(
            "row of length {} cannot fill a {}x{} table",
            row.len(),
            max_k,
            max_m + 1
        )));
    }
    let mut table: Vec<Vec<FieldElement>> = Vec::with_capacity(max_k);
    table.push(row[..max_k + max_m].to_vec());
    for k in 1..max_k {
        let prev = &table[k - 1];
        let width = max_k + max_m - k;
        let mut next = Vec::with_capacity(width);
        for m in 0..width {
            let factor = q0.try_sub(&row[k + m])?;
            let value = prev[m]
                .try_mul(&factor)?
                .try_sub(&q0.try_mul(&prev[m + 1])?)?;
            next.push(value);
        }
        table.push(next);
    }
    for (k, r) in table.iter_mut().enumerate() {
        r.truncate(max_m + 1);
        debug_assert!(r.len() == max_m + 1 || k + 1 == max_k && r.len() >= max_m);
    }
    Ok(table)
}

/// All strictly increasing index tuples of the given size drawn from 0..=max.
fn combinations(size: usize, max: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    if size > max + 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut indices: Vec<usize> = (0..size).collect();
    loop {
        out.push(indices.clone());
        // advance the rightmost index that still has room
        let mut pos = size;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if indices[pos] < max - (size - 1 - pos) {
                indices[pos] += 1;
                for j in pos + 1..size {
                    indices[j] = indices[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// `alpha_{k+1,m}` as the double binomial sum over the first row:
/// sum over s of (-q0)^{k-s} applied to the signed products of s+1 row
/// entries with offsets in m..=m+k, weighted by C(k, first offset).
pub fn alpha_sum_formula(row: &[FieldElement], k: usize, m: usize) -> FieldElement {
    let q0 = &row[0];
    let mut total = FieldElement::zero();
    for s in 0..=k {
        let mut inner = FieldElement::zero();
        for indices in combinations(s + 1, k) {
            let mut prod = fe(Rational::from(binomial(k as u64, indices[0] as u64)));
            if indices[0] % 2 == 1 {
                prod = -prod;
            }
            for &i in &indices {
                prod = prod * row[m + i].clone();
            }
            inner = inner + prod;
        }
        let mut term = q0.pow((k - s) as u64) * inner;
        if s % 2 == 1 {
            term = -term;
        }
        total = total + term;
    }
    total
}

/// The affine change `s_i = alpha - beta * alpha_{1,i}` and its data.
#[derive(Clone, Debug)]
pub struct SSequence {
    pub s2: FieldElement,
    pub values: Vec<FieldElement>,
    pub alpha: FieldElement,
    pub beta: FieldElement,
}

pub fn s_transform(
    q0: &FieldElement,
    q1: &FieldElement,
    row: &[FieldElement],
) -> Result<SSequence, Error> {
    let diff = q0.try_sub(q1)?;
    if diff.is_zero() {
        return Err(Error::InvalidFamilyParams(
            "the s-transform needs q0 != q1".into(),
        ));
    }
    let alpha = q1.try_div(&diff)?;
    let beta = FieldElement::one().try_div(&diff)?;
    let values: Vec<FieldElement> = row
        .iter()
        .map(|a| alpha.try_sub(&beta.try_mul(a)?))
        .collect::<Result<_, _>>()?;
    debug_assert!(values.is_empty() || values[0] == FieldElement::from_int(-1));
    debug_assert!(values.len() < 2 || values[1].is_zero());
    let s2 = values
        .get(2)
        .cloned()
        .ok_or_else(|| Error::InvalidFamilyParams("row too short for s2".into()))?;
    Ok(SSequence {
        s2,
        values,
        alpha,
        beta,
    })
}

fn check_s2(s2: &FieldElement, closed_form: bool) -> Result<(), Error> {
    let excluded: &[FieldElement] = &[
        FieldElement::zero(),
        FieldElement::from_int(-1),
        FieldElement::one(),
    ];
    if excluded.contains(s2) || (closed_form && *s2 == fe(rat(-1, 3))) {
        return Err(Error::InvalidFamilyParams(format!(
            "s2 = {s2} is excluded"
        )));
    }
    Ok(())
}

/// `s_0..s_max_m` by the first-order rational recurrence
/// `s_{m+1} = (s_m + 1) / (1/s2 - s_m)`.
pub fn s_recurrence(s2: &FieldElement, max_m: usize) -> Result<Vec<FieldElement>, Error> {
    check_s2(s2, false)?;
    let inv_s2 = s2.inv()?;
    let mut values = vec![FieldElement::from_int(-1), FieldElement::zero()];
    while values.len() <= max_m {
        let sm = values.last().unwrap().clone();
        if sm == inv_s2 {
            return Err(Error::DegenerateDenominator(format!(
                "s_{} hit 1/s2",
                values.len() - 1
            )));
        }
        let denom = inv_s2.try_sub(&sm)?;
        let next = sm.try_add(&FieldElement::one())?.try_div(&denom)?;
        // the equivalent product form of the step
        debug_assert_eq!(
            next.try_mul(&denom).unwrap(),
            sm.try_add(&FieldElement::one()).unwrap()
        );
        values.push(next);
    }
    values.truncate(max_m + 1);
    Ok(values)
}

/// `s_0..s_max_m` through the characteristic roots of
/// `s2 l^2 + (1+s2)(l+1)`, evaluated exactly in Q(sqrt(1-2 s2-3 s2^2)).
/// Every returned value is demoted to a rational.
pub fn s_closed_form(s2: &FieldElement, max_m: usize) -> Result<Vec<FieldElement>, Error> {
    check_s2(s2, true)?;
    let one = FieldElement::one();
    let two = FieldElement::from_int(2);
    let inv_s2 = s2.inv()?;
    let mut values = vec![FieldElement::from_int(-1), FieldElement::zero()];
    if max_m < 2 {
        values.truncate(max_m + 1);
        return Ok(values);
    }
    let s2_sq = s2.try_mul(s2)?;
    let disc = one
        .try_sub(&two.try_mul(s2)?)?
        .try_sub(&FieldElement::from_int(3).try_mul(&s2_sq)?)?;
    if disc.is_zero() {
        // repeated characteristic root: the basis solution is (1 + e(m-2)) l^(m-2)
        let lam = -(one.try_add(s2)?.try_div(&two.try_mul(s2)?)?);
        let e = s2.try_sub(&inv_s2)?.try_div(&lam)?.try_sub(&one)?;
        for m in 2..=max_m as i64 {
            let denom = one.try_add(&FieldElement::from_int(m - 2).try_mul(&e)?)?;
            if denom.is_zero() {
                return Err(Error::DivisionByZero);
            }
            let numer = one.try_add(&FieldElement::from_int(m - 1).try_mul(&e)?)?;
            let sm = inv_s2.try_add(&lam.try_mul(&numer.try_div(&denom)?)?)?;
            values.push(sm);
        }
        values.truncate(max_m + 1);
        return Ok(values);
    }
    let d = match &disc {
        FieldElement::Rat(r) => r.clone(),
        FieldElement::Quad(_) => unreachable!("s2 is rational"),
    };
    let sqrt_d = FieldElement::quad(Rational::zero(), Rational::one(), d);
    let base = -(one.try_add(s2)?);
    let mu_plus = base.try_add(&sqrt_d)?;
    let mu_minus = base.try_sub(&sqrt_d)?;
    // the characteristic roots are mu/(2 s2); both must annihilate the polynomial
    for mu in [&mu_plus, &mu_minus] {
        let lam = mu.try_div(&two.try_mul(s2)?)?;
        let char_val = s2
            .try_mul(&lam.try_mul(&lam)?)?
            .try_add(&one.try_add(s2)?.try_mul(&lam.try_add(&one)?)?)?;
        debug_assert!(char_val.is_zero());
    }
    let coeff_a = s2
        .try_sub(&one)?
        .try_add(&two.try_mul(&s2_sq)?)?
        .try_add(&sqrt_d)?;
    let coeff_b = one
        .try_sub(s2)?
        .try_sub(&two.try_mul(&s2_sq)?)?
        .try_add(&sqrt_d)?;
    let half = FieldElement::from_rat(1, 2);
    for m in 2..=max_m as u64 {
        let denom = coeff_a
            .try_mul(&mu_plus.pow(m - 2))?
            .try_add(&coeff_b.try_mul(&mu_minus.pow(m - 2))?)?;
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let numer = coeff_a
            .try_mul(&mu_plus.pow(m - 1))?
            .try_add(&coeff_b.try_mul(&mu_minus.pow(m - 1))?)?;
        let sm = inv_s2.try_mul(&one.try_add(&half.try_mul(&numer.try_div(&denom)?)?)?)?;
        debug_assert!(matches!(sm, FieldElement::Rat(_)));
        values.push(sm);
    }
    values.truncate(max_m + 1);
    Ok(values)
}

/// Exhaustively checks the product identities of the s-sequence:
/// `s_k s_{m-k-1} - 1 = s_m (s_k + s_{m-k-1} + 1 - 1/s2)` and the two-index
/// variant equating the (k, t) quotients.
pub fn s_identities_check(seq: &SSequence, max_m: usize) -> Result<VerificationReport, Error> {
    let s = &seq.values;
    assert!(s.len() > max_m, "sequence holds too few values");
    let inv_s2 = seq.s2.inv()?;
    let one = FieldElement::one();
    let mut violations = Vec::new();
    let mut checked = 0u64;
    let constant = |v: &FieldElement| SparsePoly::from_term_or_zero(v);
    for m in 1..=max_m {
        for k in 0..m {
            checked += 1;
            let lhs = s[k].try_mul(&s[m - k - 1])?.try_sub(&one)?;
            let rhs = s[m].try_mul(
                &s[k]
                    .try_add(&s[m - k - 1])?
                    .try_add(&one)?
                    .try_sub(&inv_s2)?,
            )?;
            if lhs != rhs {
                violations.push(Violation {
                    a: Monomial::new(m as i64, k as i64),
                    b: Monomial::new(m as i64, k as i64),
                    law: format!("s_k s_(m-k-1) - 1 = s_m(...) at m={m}, k={k}"),
                    lhs: constant(&lhs),
                    rhs: constant(&rhs),
                });
            }
            for t in 0..=k {
                checked += 1;
                let lhs2 = s[k]
                    .try_add(&s[m - k - 1])?
                    .try_sub(&s[t])?
                    .try_sub(&s[m - t - 1])?
                    .try_mul(&s[m])?;
                let rhs2 = s[k]
                    .try_mul(&s[m - k - 1])?
                    .try_sub(&s[t].try_mul(&s[m - t - 1])?)?;
                if lhs2 != rhs2 {
                    violations.push(Violation {
                        a: Monomial::new(m as i64, k as i64),
                        b: Monomial::new(m as i64, t as i64),
                        law: format!("two-index s identity at m={m}, k={k}, t={t}"),
                        lhs: constant(&lhs2),
                        rhs: constant(&rhs2),
                    });
                }
            }
        }
    }
    Ok(VerificationReport {
        checked_pairs: checked,
        violations,
    })
}

impl SparsePoly {
    fn from_term_or_zero(v: &FieldElement) -> SparsePoly {
        let mut p = SparsePoly::zero();
        p.add_term(v, Monomial::ONE);
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> FieldElement {
        FieldElement::from_rat(p, d)
    }

    #[test]
    fn fibonacci_examples() {
        assert_eq!(fibonacci(7), BigInt::from(13));
        assert_eq!(fibonacci(-3), BigInt::from(2));
        for i in -10..=10i64 {
            assert_eq!(fibonacci(i + 2) - fibonacci(i + 1) - fibonacci(i), BigInt::zero());
        }
    }

    #[test]
    fn row_from_distinct_seeds() {
        // seeds of the m/(n+m) operator, negated
        let row = r1_alpha_row(&q(0, 1), &q(-1, 2), &q(-2, 3), 3).unwrap();
        assert_eq!(row[3], q(-3, 4));
    }

    #[test]
    fn row_fibonacci_quotients() {
        // q2 = (q0 + q1)/2 gives alpha_{1,m} = (f_{m-1} a + f_m b)/f_{m+1}
        let row = r1_alpha_row(&q(0, 1), &q(1, 1), &q(1, 2), 4).unwrap();
        assert_eq!(row[4], q(3, 5));
        for (m, v) in row.iter().enumerate() {
            let expect = FieldElement::Rat(Rational::from(fibonacci(m as i64 - 1)))
                .try_mul(&q(0, 1))
                .unwrap()
                .try_add(
                    &FieldElement::Rat(Rational::from(fibonacci(m as i64)))
                        .try_mul(&q(1, 1))
                        .unwrap(),
                )
                .unwrap()
                .try_div(&FieldElement::Rat(Rational::from(fibonacci(m as i64 + 1))))
                .unwrap();
            assert_eq!(*v, expect, "m = {m}");
        }
    }

    #[test]
    fn constant_row() {
        let row = r1_alpha_row(&q(5, 1), &q(5, 1), &q(5, 1), 6).unwrap();
        assert!(row.iter().all(|v| *v == q(5, 1)));
    }

    #[test]
    fn excluded_midpoint_errors() {
        let err = r1_alpha_row(&q(0, 1), &q(1, 1), &q(2, 1), 5).unwrap_err();
        assert!(matches!(err, Error::InvalidFamilyParams(_)));
    }

    #[test]
    fn extend_constant_row_squares() {
        let row = r1_alpha_row(&q(5, 1), &q(5, 1), &q(5, 1), 10).unwrap();
        let table = r1_extend(&row, &q(5, 1), 3, 6).unwrap();
        for v in &table[1] {
            assert_eq!(*v, q(-25, 1));
        }
        for v in &table[2] {
            assert_eq!(*v, q(125, 1));
        }
    }

    #[test]
    fn extend_fibonacci_entry() {
        let row = r1_alpha_row(&q(0, 1), &q(1, 1), &q(1, 2), 10).unwrap();
        let table = r1_extend(&row, &q(0, 1), 2, 6).unwrap();
        assert_eq!(table[1][1], q(-1, 2));
    }

    #[test]
    fn sum_formula_matches_extension() {
        let row = r1_alpha_row(&q(0, 1), &q(1, 1), &q(1, 2), 20).unwrap();
        let table = r1_extend(&row, &q(0, 1), 4, 8).unwrap();
        for k in 0..4 {
            for m in 0..=6 {
                assert_eq!(
                    alpha_sum_formula(&row, k, m),
                    if k == 0 { row[m].clone() } else { table[k][m].clone() },
                    "k={k} m={m}"
                );
            }
        }
    }

    #[test]
    fn sum_formula_k1_closed_form() {
        // k = 1 expands to q0 q_m - q0 q_{m+1} - q_m q_{m+1}
        let row = vec![q(1, 1), q(2, 1), q(4, 1), q(7, 1), q(3, 1)];
        for m in 0..3 {
            let expect = row[0].try_mul(&row[m]).unwrap()
                - row[0].try_mul(&row[m + 1]).unwrap()
                - row[m].try_mul(&row[m + 1]).unwrap();
            assert_eq!(alpha_sum_formula(&row, 1, m), expect);
        }
    }

    #[test]
    fn s_transform_fibonacci() {
        let row = r1_alpha_row(&q(0, 1), &q(1, 1), &q(1, 2), 10).unwrap();
        let seq = s_transform(&q(0, 1), &q(1, 1), &row).unwrap();
        assert_eq!(seq.s2, q(-1, 2));
        // invert the affine map and recover the row
        for (i, s) in seq.values.iter().enumerate() {
            let back = seq
                .alpha
                .try_sub(s)
                .unwrap()
                .try_div(&seq.beta)
                .unwrap();
            assert_eq!(back, row[i]);
        }
    }

    #[test]
    fn recurrence_small_values() {
        let s = s_recurrence(&q(-1, 2), 4).unwrap();
        assert_eq!(s[3], q(-1, 3));
        assert_eq!(s[4], q(-2, 5));
        let t = s_recurrence(&q(1, 3), 3).unwrap();
        assert_eq!(t[3], q(1, 2));
    }

    #[test]
    fn closed_form_matches_recurrence() {
        for s2 in [q(-1, 2), q(1, 3), q(2, 1), q(5, 1), q(-3, 1)] {
            let rec = s_recurrence(&s2, 30).unwrap();
            let cf = s_closed_form(&s2, 30).unwrap();
            assert_eq!(rec, cf, "s2 = {s2}");
        }
    }

    #[test]
    fn excluded_s2_values() {
        for s2 in [q(0, 1), q(-1, 1), q(1, 1), q(-1, 3)] {
            assert!(s_closed_form(&s2, 5).is_err(), "s2 = {s2}");
        }
        for s2 in [q(0, 1), q(-1, 1), q(1, 1)] {
            assert!(s_recurrence(&s2, 5).is_err(), "s2 = {s2}");
        }
    }

    #[test]
    fn first_row_never_returns_to_its_start() {
        // For admissible seeds with pairwise-distinct values the row's later
        // entries never equal the m = 0 entry again; a repeat would collapse
        // the recurrence denominators further down the row.
        for (q0, q1, q2) in [
            (q(1, 1), q(2, 1), q(4, 1)),
            (q(0, 1), q(-1, 2), q(-2, 3)),
            (q(3, 1), q(1, 1), q(-4, 1)),
            (q(-1, 1), q(5, 2), q(7, 1)),
        ] {
            let row = r1_alpha_row(&q0, &q1, &q2, 30).unwrap();
            for (i, a) in row.iter().enumerate().skip(1) {
                assert_ne!(*a, row[0], "row ({q0},{q1},{q2}) repeats at {i}");
            }
        }
    }

    #[test]
    fn identities_hold() {
        for s2 in [q(-1, 2), q(1, 3)] {
            let values = s_recurrence(&s2, 20).unwrap();
            let seq = SSequence {
                s2: s2.clone(),
                values,
                alpha: FieldElement::zero(),
                beta: FieldElement::one(),
            };
            assert!(s_identities_check(&seq, 20).unwrap().passed());
        }
    }
}
