//! Sparse exact polynomials.
//!
//! [`SparsePoly`] stores a map from exponent vectors to nonzero coefficients.
//! With `u32` exponents it is an ordinary polynomial ring `R[y_1..y_n]`, with
//! `i64` exponents the Laurent ring `R[x_1^±1..x_n^±1]`. Iteration order is
//! lexicographic on exponent vectors, which is also the serialization order.

mod univariate;

pub use univariate::UniPoly;

use std::collections::BTreeMap;
use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::scalar::{DecimalCoeff, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("arity mismatch: {0} vs {1} variables")]
    Arity(usize, usize),
    #[error("divisor must have constant term 1")]
    DivisorNotMonic,
    #[error("inexact division: remainder term {coef}*y^{exp:?} survives")]
    Remainder { exp: Vec<i64>, coef: String },
    #[error("malformed term list: {0}")]
    Malformed(String),
}

/// Exponent types usable as keys of a sparse polynomial.
pub trait Exponent: Copy + Ord + Hash + Debug + Display + Zero + Add<Output = Self> + Into<i64> {
    fn try_from_i64(v: i64) -> Option<Self>;
}

impl Exponent for u32 {
    fn try_from_i64(v: i64) -> Option<Self> {
        u32::try_from(v).ok()
    }
}

impl Exponent for i64 {
    fn try_from_i64(v: i64) -> Option<Self> {
        Some(v)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly<E, C> {
    nvars: usize,
    terms: BTreeMap<Vec<E>, C>,
}

/// Polynomial in `n` commuting variables.
pub type Polynomial<C> = SparsePoly<u32, C>;
/// Laurent polynomial in `n` commuting variables.
pub type Laurent<C> = SparsePoly<i64, C>;

impl<E: Exponent, C: Ring> SparsePoly<E, C> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(vec![E::zero(); nvars], c)
    }

    pub fn monomial(exp: Vec<E>, c: C) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    /// The variable with the given index, as a monomial with coefficient 1.
    pub fn var(nvars: usize, i: usize) -> Self
    where
        E: One,
    {
        let mut exp = vec![E::zero(); nvars];
        exp[i] = E::one();
        Self::monomial(exp, C::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<E>, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<E>, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[E]) -> C {
        self.terms.get(exp).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&vec![E::zero(); self.nvars])
    }

    /// Adds `c · x^exp` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, exp: Vec<E>, c: C) {
        debug_assert_eq!(exp.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| total(e)).max()
    }

    fn check_arity(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(PolyError::Arity(self.nvars, other.nvars))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(&a, &b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    /// Product of all terms whose exponents stay componentwise below `bound`.
    pub fn mul_truncated(&self, other: &Self, bound: &[E]) -> Self {
        assert_eq!(self.nvars, other.nvars, "arity mismatch");
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in self.terms.iter().filter(|(e, _)| le(e, bound)) {
            for (eb, cb) in &other.terms {
                let e: Vec<E> = ea.iter().zip(eb).map(|(&a, &b)| a + b).collect();
                if le(&e, bound) {
                    out.add_term(e, ca.clone() * cb.clone());
                }
            }
        }
        out
    }

    pub fn scale(&self, k: &C) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), c.clone() * k.clone())))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.nvars), |acc, _| &acc * self)
    }

    /// Evaluates at the given point (Laurent exponents need invertible values).
    pub fn evaluate(&self, point: &[C]) -> C
    where
        E: Into<i64>,
    {
        assert_eq!(point.len(), self.nvars, "arity mismatch");
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                let k: i64 = k.into();
                assert!(k >= 0, "evaluate() needs non-negative exponents");
                for _ in 0..k {
                    term = term * x.clone();
                }
            }
            acc = acc + term;
        }
        acc
    }
}

fn total<E: Exponent>(e: &[E]) -> i64 {
    e.iter().map(|&x| x.into()).sum()
}

fn le<E: Exponent>(a: &[E], b: &[E]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl<C: Ring> Polynomial<C> {
    /// Exact division by a polynomial with constant term 1.
    ///
    /// Terms of the running remainder are eliminated in increasing total
    /// degree (lexicographic within a degree). A term whose degree exceeds
    /// `deg(num) − deg(den)` cannot belong to the quotient, so reaching one
    /// means the division is not exact.
    pub fn exact_divide(&self, den: &Self) -> Result<Self, PolyError>
    where
        C: Display,
    {
        self.check_arity(den)?;
        if !den.constant_term().is_one() {
            return Err(PolyError::DivisorNotMonic);
        }
        let n = self.nvars;
        let mut quotient = Self::zero(n);
        if self.is_zero() {
            return Ok(quotient);
        }
        let max_q = self.total_degree().unwrap_or(0) - den.total_degree().unwrap_or(0);
        let key = |e: &Vec<u32>| (total(e), e.clone());
        let mut rem: BTreeMap<(i64, Vec<u32>), C> = self.terms.iter().map(|(e, c)| (key(e), c.clone())).collect();
        while let Some(((deg, exp), coef)) = rem.pop_first() {
            if deg > max_q {
                return Err(PolyError::Remainder {
                    exp: exp.iter().map(|&x| x as i64).collect(),
                    coef: coef.to_string(),
                });
            }
            for (de, dc) in &den.terms {
                let e: Vec<u32> = exp.iter().zip(de).map(|(a, b)| a + b).collect();
                if e == exp {
                    continue;
                }
                let k = key(&e);
                let update = -(coef.clone() * dc.clone());
                let entry = rem.entry(k).or_insert_with(C::zero);
                *entry = entry.clone() + update;
                if entry.is_zero() {
                    rem.remove(&(total(&e), e));
                }
            }
            quotient.add_term(exp, coef);
        }
        Ok(quotient)
    }

    /// Substitutes `y_i ↦ x^{monomials[i]}` and multiplies by `x^{shift}`.
    pub fn laurent_substitute(&self, monomials: &[Vec<i64>], shift: &[i64]) -> Result<Laurent<C>, PolyError> {
        if monomials.len() != self.nvars {
            return Err(PolyError::Arity(self.nvars, monomials.len()));
        }
        let m = shift.len();
        if let Some(bad) = monomials.iter().find(|mono| mono.len() != m) {
            return Err(PolyError::Arity(m, bad.len()));
        }
        let mut out = Laurent::zero(m);
        for (e, c) in &self.terms {
            let mut exp = shift.to_vec();
            for (&k, mono) in e.iter().zip(monomials) {
                for (slot, &x) in exp.iter_mut().zip(mono) {
                    *slot += k as i64 * x;
                }
            }
            out.add_term(exp, c.clone());
        }
        Ok(out)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<E: Exponent, C: Ring> $tr<&SparsePoly<E, C>> for &SparsePoly<E, C> {
            type Output = SparsePoly<E, C>;
            fn $method(self, rhs: &SparsePoly<E, C>) -> SparsePoly<E, C> {
                self.$checked(rhs).expect("polynomial arity mismatch")
            }
        }
        impl<E: Exponent, C: Ring> $tr for SparsePoly<E, C> {
            type Output = SparsePoly<E, C>;
            fn $method(self, rhs: SparsePoly<E, C>) -> SparsePoly<E, C> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl<E: Exponent, C: Ring> Neg for SparsePoly<E, C> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_terms(self.nvars, self.terms.into_iter().map(|(e, c)| (e, -c)))
    }
}

impl<E: Exponent, C: Ring + Display> SparsePoly<E, C> {
    /// Human-readable form with variables `{var}1 .. {var}n`, e.g. `1 + y1 + y1*y2^2`.
    pub fn display_with(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| !x.is_zero())
                .map(|(i, &x)| {
                    let x: i64 = x.into();
                    if x == 1 {
                        format!("{var}{}", i + 1)
                    } else {
                        format!("{var}{}^{}", i + 1, x)
                    }
                })
                .collect();
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, cs),
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&mag);
            } else {
                if mag != "1" {
                    out.push_str(&mag);
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl<E: Exponent, C: Ring + Display> Debug for SparsePoly<E, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("x"))
    }
}

/// One entry of the JSON term list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRepr {
    pub exp: Vec<i64>,
    pub coef: String,
}

impl<E: Exponent, C: DecimalCoeff> SparsePoly<E, C> {
    pub fn to_term_list(&self) -> Vec<TermRepr> {
        self.terms
            .iter()
            .map(|(e, c)| TermRepr { exp: e.iter().map(|&x| x.into()).collect(), coef: c.to_string() })
            .collect()
    }

    pub fn from_term_list(nvars: usize, list: &[TermRepr]) -> Result<Self, PolyError> {
        let mut out = Self::zero(nvars);
        for t in list {
            if t.exp.len() != nvars {
                return Err(PolyError::Arity(nvars, t.exp.len()));
            }
            let exp = t
                .exp
                .iter()
                .map(|&x| E::try_from_i64(x).ok_or_else(|| PolyError::Malformed(format!("exponent {x}"))))
                .collect::<Result<Vec<E>, _>>()?;
            let coef: C = t.coef.parse().map_err(|_| PolyError::Malformed(format!("coefficient `{}`", t.coef)))?;
            if coef.is_zero() {
                return Err(PolyError::Malformed("zero coefficient".into()));
            }
            if out.terms.insert(exp, coef).is_some() {
                return Err(PolyError::Malformed("repeated exponent".into()));
            }
        }
        Ok(out)
    }
}

impl<E: Exponent, C: DecimalCoeff> Serialize for SparsePoly<E, C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for t in self.to_term_list() {
            seq.serialize_element(&t)?;
        }
        seq.end()
    }
}
