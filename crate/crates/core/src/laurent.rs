//! Sparse Laurent polynomials in one variable `q` with arbitrary-precision
//! integer coefficients, i.e. elements of Z[q, q^-1].
//!
//! Values are kept in canonical form: a sorted map from exponent to a
//! nonzero coefficient. Two polynomials are equal iff their maps are equal.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^exp`.
    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs. Repeated
    /// exponents are summed and zero coefficients dropped.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c.into());
        }
        out
    }

    /// Builds `c_0 + c_1 q + c_2 q^2 + ...` shifted by `q^low`.
    pub fn from_coeffs(low: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (low + i as i64, c)))
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Lowest exponent, `None` for zero.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Highest exponent, `None` for zero.
    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Top exponent minus bottom exponent; `None` for zero.
    pub fn span(&self) -> Option<u64> {
        Some(self.max_exp()?.abs_diff(self.min_exp()?))
    }

    /// Coefficient of the highest power of `q`.
    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    /// Coefficient of the lowest power of `q`.
    pub fn trailing_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next()
    }

    /// Units of Z[q, q^-1] are exactly `±q^k`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The involution `q -> q^-1`.
    pub fn star(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Multiplies by `c * q^k`.
    pub fn scale(&self, c: &BigInt, k: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (e + k, x * c)).collect(),
        }
    }

    /// Value at `q = 1`, the sum of all coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Value of `d/dq` at `q = 1`, i.e. `sum k c_k`.
    pub fn derivative_at_one(&self) -> BigInt {
        self.terms.iter().map(|(e, c)| c * BigInt::from(*e)).sum()
    }

    /// Largest `k` with `(1 - q)^k` dividing `self`; `None` stands for
    /// infinity (the zero polynomial).
    pub fn vanishing_order_at_one(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let one_minus_q = Self::from_coeffs(0, &[1, -1]);
        let mut order = 0;
        let mut rest = self.clone();
        while rest.eval_at_one().is_zero() {
            rest = rest
                .exact_div(&one_minus_q)
                .expect("a root at q = 1 gives a factor 1 - q");
            order += 1;
        }
        Some(order)
    }

    /// gcd of the coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides every coefficient by the integer `d`, which must divide them all.
    pub fn div_integer(&self, d: &BigInt) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let (quo, rem) = c.div_rem(d);
            if !rem.is_zero() {
                return Err(Error::InexactDivision {
                    dividend: self.to_string(),
                    divisor: d.to_string(),
                });
            }
            terms.insert(*e, quo);
        }
        Ok(Self { terms })
    }

    /// Exact quotient `self / divisor` in Z[q, q^-1]. Fails unless the
    /// division leaves no remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (&top_exp, top_coeff) = divisor
            .terms
            .iter()
            .next_back()
            .ok_or(Error::DivisionByZero)?;
        if divisor.is_monomial() {
            let top_coeff = top_coeff.clone();
            return self.div_integer(&top_coeff).map(|p| p.shift(-top_exp));
        }
        let inexact = || Error::InexactDivision {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
        };
        let divisor_span = divisor.span().unwrap_or(0);
        let mut rem = self.clone();
        let mut quotient = Self::zero();
        // Each step cancels the top term of `rem`; its bottom exponent never drops.
        while let Some((e, c)) = rem.terms.iter().next_back().map(|(e, c)| (*e, c.clone())) {
            if rem.span().unwrap_or(0) < divisor_span {
                return Err(inexact());
            }
            let (quo, r) = c.div_rem(top_coeff);
            if !r.is_zero() {
                return Err(inexact());
            }
            let k = e - top_exp;
            rem -= &divisor.scale(&quo, k);
            quotient.add_term(k, quo);
        }
        Ok(quotient)
    }

    /// Greatest common divisor in Z[q, q^-1], normalized to have lowest
    /// exponent 0 and positive leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Self::zero(),
            (true, false) => return other.unit_normalized(),
            (false, true) => return self.unit_normalized(),
            _ => {}
        }
        let a = DensePoly::from_laurent(self);
        let b = DensePoly::from_laurent(other);
        a.gcd(&b).to_laurent().unit_normalized()
    }

    /// The associate `±q^k * self` with lowest exponent 0 and positive
    /// leading coefficient.
    pub fn unit_normalized(&self) -> Self {
        let Some(low) = self.min_exp() else {
            return Self::zero();
        };
        let shifted = self.shift(-low);
        if shifted.leading_coeff().is_some_and(|c| c.is_negative()) {
            -shifted
        } else {
            shifted
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

/// Dense polynomial in Z[q] used by the gcd; index = exponent.
#[derive(Clone, Debug)]
struct DensePoly(Vec<BigInt>);

impl DensePoly {
    /// Drops the power of `q` dividing `p`, so the constant term is nonzero.
    fn from_laurent(p: &LaurentPoly) -> Self {
        let low = p.min_exp().unwrap_or(0);
        let high = p.max_exp().unwrap_or(0);
        let mut v = vec![BigInt::zero(); (high - low) as usize + 1];
        for (e, c) in p.terms() {
            v[(e - low) as usize] = c.clone();
        }
        Self(v).trimmed()
    }

    fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.0
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64, c.clone())),
        )
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    fn primitive(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        Self(self.0.iter().map(|x| x / &c).collect())
    }

    /// Pseudo-remainder of `self` by `d`.
    fn prem(&self, d: &Self) -> Self {
        let lead = d.0.last().expect("nonzero divisor").clone();
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= d.degree() {
            let shift = r.degree() - d.degree();
            let top = r.0.last().unwrap().clone();
            for x in r.0.iter_mut() {
                *x *= &lead;
            }
            for (i, x) in d.0.iter().enumerate() {
                r.0[i + shift] -= &top * x;
            }
            r = r.trimmed();
        }
        r
    }

    /// Primitive Euclidean algorithm over Z[q].
    fn gcd(&self, other: &Self) -> Self {
        let content = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem(&b);
            a = b;
            b = r.primitive();
        }
        Self(a.0.into_iter().map(|x| x * &content).collect())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if e == 0 || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary total order (lexicographic on the term list), used only to
/// make sorted outputs deterministic.
impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms.iter().cmp(other.terms.iter())
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}
