//! Sparse multivariate polynomials over the rationals.
//!
//! These stand in for formal power series in the deformation parameters:
//! every product inside the deformation engine is followed by
//! [`Polynomial::truncate`] at the working order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{bigint_gcd, bigint_lcm, Coeff, Rational};

/// Exponent vector, ordered graded-lexicographically: lower total degree
/// first; within a degree, `t1` sorts before `t2` (so `t1 + t2` prints in
/// that order and the leading monomial is the last one).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn lifted(&self, nvars: usize) -> Monomial {
        let mut e = self.0.clone();
        e.resize(nvars, 0);
        Monomial(e)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

/// Polynomial in named variables. A polynomial with an empty variable list
/// is a constant and combines with any other polynomial.
#[derive(Clone)]
pub struct Polynomial {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial {
            vars: Arc::from(Vec::<String>::new()),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Polynomial::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![]), c);
        }
        p
    }

    /// The `i`-th variable (0-based) of the ring with variables `vars`.
    pub fn var(vars: &Arc<[String]>, i: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(vars.len(), i), Rational::one());
        Polynomial {
            vars: vars.clone(),
            terms,
        }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; zero
    /// coefficients are dropped and repeated monomials summed.
    pub fn from_terms(
        vars: &Arc<[String]>,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self> {
        let mut p = Polynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(Error::Shape {
                    expected_rows: 1,
                    expected_cols: vars.len(),
                });
            }
            p.add_term(Monomial(e), &c);
        }
        Ok(p)
    }

    /// Standard variable names `t1..tm`.
    pub fn standard_vars(m: usize) -> Arc<[String]> {
        (1..=m).map(|i| format!("t{i}")).collect::<Vec<_>>().into()
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m.degree() == 0)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Returns the rational value if the polynomial is constant.
    pub fn to_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Re-expresses a constant polynomial (or one already over `vars`)
    /// over the variable list `vars`.
    pub fn lift_to(&self, vars: &Arc<[String]>) -> Result<Self> {
        if *self.vars == **vars {
            return Ok(self.clone());
        }
        if !self.vars.is_empty() {
            return Err(Error::VariableMismatch(self.vars.to_vec(), vars.to_vec()));
        }
        Ok(Polynomial {
            vars: vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.lifted(vars.len()), c.clone()))
                .collect(),
        })
    }

    fn aligned(a: &Polynomial, b: &Polynomial) -> (Polynomial, Polynomial) {
        if a.vars == b.vars || *a.vars == *b.vars {
            return (a.clone(), b.clone());
        }
        if a.vars.is_empty() {
            return (a.lift_to(&b.vars).unwrap(), b.clone());
        }
        if b.vars.is_empty() {
            return (a.clone(), b.lift_to(&a.vars).unwrap());
        }
        panic!(
            "polynomials over different variables: {:?} vs {:?}",
            a.vars, b.vars
        );
    }

    fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let (mut a, b) = Polynomial::aligned(self, other);
        for (m, c) in b.terms {
            a.add_term(m, &c);
        }
        a
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.mul_truncated(other, None)
    }

    /// Product with all terms above `max_degree` discarded.
    pub fn mul_truncated(&self, other: &Polynomial, max_degree: Option<u32>) -> Polynomial {
        let (a, b) = Polynomial::aligned(self, other);
        let mut out = Polynomial {
            vars: a.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                if let Some(k) = max_degree {
                    if ma.degree() + mb.degree() > k {
                        continue;
                    }
                }
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Polynomial {
        if r.is_zero() {
            return Polynomial {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::constant(Rational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Drops every term of total degree above `max_total_degree`.
    pub fn truncate(&self, max_total_degree: u32) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= max_total_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, degree: u32) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Evaluates at a full assignment of the variables.
    pub fn evaluate(&self, assignment: &BTreeMap<String, Rational>) -> Result<Rational> {
        let mut values = Vec::with_capacity(self.vars.len());
        for v in self.vars.iter() {
            values.push(
                assignment
                    .get(v)
                    .cloned()
                    .ok_or_else(|| Error::MissingVariable(v.clone()))?,
            );
        }
        Ok(self.evaluate_at(&values))
    }

    /// Evaluates with positional values, one per variable.
    pub fn evaluate_at(&self, values: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in values.iter().zip(m.exps()) {
                for _ in 0..e {
                    t = &t * x;
                }
            }
            acc += &t;
        }
        acc
    }

    /// Substitutes a polynomial for every variable. The images must share
    /// one variable list (or be constants).
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.vars.len(), "one image per variable");
        let mut acc = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone());
            for (img, &e) in images.iter().zip(m.exps()) {
                if e > 0 {
                    t = t.mul(&img.pow(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Scales to integer coefficients with content 1 and a positive
    /// leading coefficient (leading in graded-lex order).
    pub fn normalized(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = bigint_lcm(&den, c.denom());
        }
        let mut content = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&den / c.denom());
            content = bigint_gcd(&content, &n);
        }
        let lead_negative = self
            .leading()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false);
        let sign = if lead_negative {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let factor = Rational::new(den * sign, content.abs()).expect("nonzero content");
        self.scale(&factor)
    }

    /// Whether `self = c * other` for some nonzero rational `c`.
    pub fn is_associate(&self, other: &Polynomial) -> bool {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => true,
            (false, false) => {
                let (a, b) = Polynomial::aligned(self, other);
                a.normalized() == b.normalized()
            }
            _ => false,
        }
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if *self.vars == *other.vars {
            return self.terms == other.terms;
        }
        if self.vars.is_empty() || other.vars.is_empty() {
            let (a, b) = Polynomial::aligned(self, other);
            return a.terms == b.terms;
        }
        false
    }
}

impl Eq for Polynomial {}

impl Coeff for Polynomial {
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        if self.vars == other.vars || *self.vars == *other.vars {
            for (m, c) in &other.terms {
                self.add_term(m.clone(), c);
            }
        } else {
            *self = Polynomial::add(self, other);
        }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        Polynomial::mul(self, other)
    }
    fn neg_ref(&self) -> Self {
        Polynomial::neg(self)
    }
    fn scale(&self, r: &Rational) -> Self {
        Polynomial::scale(self, r)
    }
    fn from_rational(r: Rational) -> Self {
        Polynomial::constant(r)
    }
    fn as_rational(&self) -> Option<Rational> {
        self.to_constant()
    }
}

impl fmt::Display for Polynomial {
    /// Terms in increasing graded-lex order, e.g. `3*t1^2 - 2*t1^2*t2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", a, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vars2() -> Arc<[String]> {
        Polynomial::standard_vars(2)
    }

    fn p(vars: &Arc<[String]>, terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_terms(
            vars,
            terms.iter().map(|(e, c)| (e.to_vec(), Rational::from(*c))),
        )
        .unwrap()
    }

    #[test]
    fn truncate_examples() {
        let v = vars2();
        let a = p(&v, &[(&[0, 0], 1), (&[1, 0], 1), (&[1, 1], 1)]);
        assert_eq!(a.truncate(1), p(&v, &[(&[0, 0], 1), (&[1, 0], 1)]));
        let b = p(&v, &[(&[2, 1], 1)]);
        assert_eq!(b.truncate(3), b);
        assert!(Polynomial::zero().truncate(0).is_zero());
    }

    #[test]
    fn evaluate_examples() {
        let v = vars2();
        let a = p(&v, &[(&[2, 0], 1), (&[0, 1], -1)]);
        let asg: BTreeMap<_, _> = [("t1".to_string(), 2.into()), ("t2".to_string(), 1.into())]
            .into_iter()
            .collect();
        assert_eq!(a.evaluate(&asg).unwrap(), Rational::from(3));
        assert_eq!(
            Polynomial::constant(5.into())
                .evaluate(&BTreeMap::new())
                .unwrap(),
            Rational::from(5)
        );
        let v4 = Polynomial::standard_vars(4);
        let rel = p(&v4, &[(&[1, 0, 0, 1], 1), (&[0, 1, 1, 0], -1)]);
        let asg: BTreeMap<_, _> = [("t1", 0), ("t2", 0), ("t3", 1), ("t4", 1)]
            .into_iter()
            .map(|(k, x)| (k.to_string(), Rational::from(x)))
            .collect();
        assert_eq!(rel.evaluate(&asg).unwrap(), Rational::zero());
    }

    #[test]
    fn missing_variable_is_named() {
        let v = vars2();
        let a = p(&v, &[(&[0, 1], 1)]);
        let asg: BTreeMap<_, _> = [("t1".to_string(), Rational::one())].into_iter().collect();
        assert_eq!(a.evaluate(&asg), Err(Error::MissingVariable("t2".into())));
    }

    #[test]
    fn display_and_normalize() {
        let v = vars2();
        let a = p(&v, &[(&[2, 0], 3), (&[2, 1], -2), (&[2, 2], -1)]);
        assert_eq!(a.to_string(), "3*t1^2 - 2*t1^2*t2 - t1^2*t2^2");
        let n = a.scale(&Rational::new(-3, 8).unwrap()).normalized();
        assert_eq!(n.to_string(), "-3*t1^2 + 2*t1^2*t2 + t1^2*t2^2");
        assert!(a.is_associate(&n));
    }

    #[test]
    fn constants_combine_with_any_ring() {
        let v = vars2();
        let x = Polynomial::var(&v, 0);
        let s = x.add(&Polynomial::constant(2.into()));
        assert_eq!(s.to_string(), "2 + t1");
        assert_eq!(
            s.mul(&Polynomial::constant(Rational::zero())).num_terms(),
            0
        );
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(((0u32..3, 0u32..3), -5i64..5), 0..5).prop_map(|ts| {
            Polynomial::from_terms(
                &Polynomial::standard_vars(2),
                ts.into_iter()
                    .map(|((a, b), c)| (vec![a, b], Rational::from(c))),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(Polynomial::constant(Rational::one()).mul(&a), a.clone());
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in arb_poly(), b in arb_poly(), x in -4i64..4, y in -4i64..4) {
            let pt = [Rational::from(x), Rational::from(y)];
            prop_assert_eq!(a.mul(&b).evaluate_at(&pt), &a.evaluate_at(&pt) * &b.evaluate_at(&pt));
            prop_assert_eq!(a.add(&b).evaluate_at(&pt), &a.evaluate_at(&pt) + &b.evaluate_at(&pt));
        }

        #[test]
        fn truncation_below_degree_is_identity(a in arb_poly(), k in 0u32..6) {
            if a.total_degree().unwrap_or(0) <= k {
                prop_assert_eq!(a.truncate(k), a);
            } else {
                prop_assert!(a.truncate(k).total_degree().unwrap_or(0) <= k);
            }
        }
    }
}
