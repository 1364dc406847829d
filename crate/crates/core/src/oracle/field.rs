use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::scalar::Rational;

/// Arithmetic of a field whose elements need the field itself (e.g. a modulus).
pub trait LinearField {
    type Elem: Clone + PartialEq + Debug;

    fn from_i64(&self, x: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn zero(&self) -> Self::Elem {
        self.from_i64(0)
    }

    fn one(&self) -> Self::Elem {
        self.from_i64(1)
    }
}

/// `F_p` with elements in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// `None` unless `p` is prime and small enough for `u64` products.
    pub fn new(p: u64) -> Option<Self> {
        (is_prime(p) && p < 1 << 31).then_some(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Every element, in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl LinearField for PrimeField {
    type Elem = u64;

    fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // a^{p-2}
        let (mut base, mut exp, mut acc) = (*a, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        Some(acc)
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

/// The rationals, exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RationalField;

impl LinearField for RationalField {
    type Elem = Rational;

    fn from_i64(&self, x: i64) -> Rational {
        Rational::from_integer(BigInt::from(x))
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn inv(&self, a: &Rational) -> Option<Rational> {
        (!a.is_zero()).then(|| Rational::one() / a)
    }

    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
}

/// Row-reduces in place and returns the pivot column of each nonzero row.
pub fn row_reduce<F: LinearField>(field: &F, rows: &mut Vec<Vec<F::Elem>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(found) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else { continue };
        rows.swap(r, found);
        let inv = field.inv(&rows[r][c]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        for i in 0..rows.len() {
            if i != r && !field.is_zero(&rows[i][c]) {
                let factor = rows[i][c].clone();
                for j in 0..ncols {
                    let delta = field.mul(&factor, &rows[r][j]);
                    rows[i][j] = field.sub(&rows[i][j], &delta);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank<F: LinearField>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut rows = rows.to_vec();
    row_reduce(field, &mut rows).len()
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse<F: LinearField>(field: &F, m: &[Vec<F::Elem>]) -> Option<Vec<Vec<F::Elem>>> {
    let n = m.len();
    let mut aug: Vec<Vec<F::Elem>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    let pivots = row_reduce(field, &mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul<F: LinearField>(field: &F, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>], inner: usize, cols: usize) -> Vec<Vec<F::Elem>> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(field.zero(), |acc, k| field.add(&acc, &field.mul(&row[k], &b[k][j]))))
                .collect()
        })
        .collect()
}
