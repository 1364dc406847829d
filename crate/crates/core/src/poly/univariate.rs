use std::collections::BTreeMap;
use std::fmt::{self, Display};
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::{PolyError, TermRepr};
use crate::scalar::{DecimalCoeff, Field, OrderedRing, Ring};

/// Sparse Laurent polynomial in one variable `q`.
///
/// Poincaré polynomials live here; intermediate values of the recursion may
/// carry negative exponents, so the type does not forbid them.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly<C> {
    terms: BTreeMap<i64, C>,
}

impl<C: Ring> UniPoly<C> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, C::one())
    }

    /// `c · q^k`.
    pub fn monomial(k: i64, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c);
        p
    }

    /// Coefficients listed from degree 0 upwards.
    pub fn from_coeffs(coeffs: impl IntoIterator<Item = C>) -> Self {
        let mut p = Self::zero();
        for (k, c) in coeffs.into_iter().enumerate() {
            p.add_term(k as i64, c);
        }
        p
    }

    pub fn add_term(&mut self, k: i64, c: C) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&k) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(k, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, k: i64) -> C {
        self.terms.get(&k).cloned().unwrap_or_else(C::zero)
    }

    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn low_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// `q^k · self`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    /// `q^d · self(1/q)`.
    pub fn reflect(&self, d: i64) -> Self {
        Self { terms: self.terms.iter().map(|(&e, c)| (d - e, c.clone())).collect() }
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = Self::zero();
        for (&e, c) in &self.terms {
            out.add_term(e, c.clone() * k.clone());
        }
        out
    }

    /// Sum of the coefficients, i.e. the value at `q = 1`.
    pub fn value_at_one(&self) -> C {
        self.terms.values().cloned().fold(C::zero(), |a, b| a + b)
    }

    pub fn evaluate(&self, x: &C) -> C {
        let mut acc = C::zero();
        for (&e, c) in &self.terms {
            assert!(e >= 0, "evaluate() needs non-negative exponents");
            let mut t = c.clone();
            for _ in 0..e {
                t = t * x.clone();
            }
            acc = acc + t;
        }
        acc
    }

    pub fn is_polynomial(&self) -> bool {
        self.low_degree().is_none_or(|k| k >= 0)
    }

    pub fn has_only_even_exponents(&self) -> bool {
        self.terms.keys().all(|k| k % 2 == 0)
    }

    /// Substitutes `q ↦ q^{1/2}`; requires only even exponents.
    pub fn halve_exponents(&self) -> Option<Self> {
        if !self.has_only_even_exponents() {
            return None;
        }
        Some(Self { terms: self.terms.iter().map(|(&e, c)| (e / 2, c.clone())).collect() })
    }

    /// Substitutes `q ↦ q^2`.
    pub fn double_exponents(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&e, c)| (2 * e, c.clone())).collect() }
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> UniPoly<D> {
        let mut out = UniPoly::zero();
        for (&e, c) in &self.terms {
            out.add_term(e, f(c));
        }
        out
    }
}

impl<C: OrderedRing> UniPoly<C> {
    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

impl<C: Field> UniPoly<C> {
    /// The interpolating polynomial of degree `< points.len()` (Lagrange form).
    pub fn interpolate(points: &[(C, C)]) -> Self {
        let mut out = Self::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = Self::one();
            let mut denom = C::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    basis = &basis * &Self::from_coeffs([-xj.clone(), C::one()]);
                    denom = denom * (xi.clone() - xj.clone());
                }
            }
            out = &out + &basis.scale(&(yi.clone() / denom));
        }
        out
    }
}

impl<C: Ring> Add for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn add(self, rhs: &UniPoly<C>) -> UniPoly<C> {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl<C: Ring> Sub for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn sub(self, rhs: &UniPoly<C>) -> UniPoly<C> {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl<C: Ring> Mul for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn mul(self, rhs: &UniPoly<C>) -> UniPoly<C> {
        let mut out = UniPoly::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &rhs.terms {
                out.add_term(a + b, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Ring> Neg for UniPoly<C> {
    type Output = UniPoly<C>;
    fn neg(self) -> UniPoly<C> {
        UniPoly { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl<C: Ring + Display> UniPoly<C> {
    /// Human-readable form in ascending degree, e.g. `1 + 4*q^2 + q^4`.
    pub fn display_with(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (&e, c)) in self.terms.iter().enumerate() {
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
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            match (mono.is_empty(), mag == "1") {
                (true, _) => out.push_str(&mag),
                (false, true) => out.push_str(&mono),
                (false, false) => out.push_str(&format!("{mag}*{mono}")),
            }
        }
        out
    }
}

impl<C: Ring + Display> Display for UniPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("q"))
    }
}

impl<C: Ring + Display> fmt::Debug for UniPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("q"))
    }
}

impl<C: DecimalCoeff> UniPoly<C> {
    pub fn to_term_list(&self) -> Vec<TermRepr> {
        self.terms.iter().map(|(&e, c)| TermRepr { exp: vec![e], coef: c.to_string() }).collect()
    }

    pub fn from_term_list(list: &[TermRepr]) -> Result<Self, PolyError> {
        let mut out = Self::zero();
        for t in list {
            let [e] = t.exp.as_slice() else {
                return Err(PolyError::Arity(1, t.exp.len()));
            };
            let c: C = t.coef.parse().map_err(|_| PolyError::Malformed(format!("coefficient `{}`", t.coef)))?;
            out.add_term(*e, c);
        }
        Ok(out)
    }
}

impl<C: DecimalCoeff> Serialize for UniPoly<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for t in self.to_term_list() {
            seq.serialize_element(&t)?;
        }
        seq.end()
    }
}
