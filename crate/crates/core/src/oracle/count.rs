use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};

use super::field::{LinearField, PrimeField};
use super::{ExplicitRep, FieldSpec, OracleError};
use crate::poly::UniPoly;
use crate::quiver::DimVector;
use crate::scalar::{Integer, Rational};

/// Default cap on the number of subspace tuples a count may visit.
pub const DEFAULT_BUDGET: u128 = 50_000_000;

/// Number of `k`-dimensional subspaces of `F_p^n`, saturating.
pub fn gaussian_binomial(n: u32, k: u32, p: u64) -> u128 {
    if k > n {
        return 0;
    }
    let p = p as u128;
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..k {
        let a = p.saturating_pow(n - i).saturating_sub(1);
        let b = p.saturating_pow(i + 1) - 1;
        num = num.saturating_mul(a);
        den = den.saturating_mul(b);
        let g = num.gcd(&den);
        num /= g;
        den /= g;
    }
    num / den
}

/// A subspace in reduced row echelon form.
struct Subspace {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn contains(&self, f: &PrimeField, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if w[c] != 0 {
                let k = w[c];
                for (x, r) in w.iter_mut().zip(row) {
                    *x = f.sub(x, &f.mul(&k, r));
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }
}

/// All `k`-dimensional subspaces of `F_p^n`, one per reduced echelon form.
fn subspaces(f: &PrimeField, n: usize, k: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(k);
    choose_pivots(f, n, k, 0, &mut pivots, &mut out);
    out
}

fn choose_pivots(f: &PrimeField, n: usize, k: usize, start: usize, pivots: &mut Vec<usize>, out: &mut Vec<Subspace>) {
    if pivots.len() == k {
        // free slots: row r, column c > pivot r, c not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| ((pivots[r] + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let p = f.modulus();
        let total = p.pow(free.len() as u32);
        for mut code in 0..total {
            let mut rows = vec![vec![0u64; n]; k];
            for (r, &c) in pivots.iter().enumerate() {
                rows[r][c] = 1;
            }
            for &(r, c) in &free {
                rows[r][c] = code % p;
                code /= p;
            }
            out.push(Subspace { rows, pivots: pivots.clone() });
        }
        return;
    }
    for c in start..n {
        if n - c < k - pivots.len() {
            break;
        }
        pivots.push(c);
        choose_pivots(f, n, k, c + 1, pivots, out);
        pivots.pop();
    }
}

/// Number of subrepresentations of dimension `e` of a representation over
/// `F_p`: tuples of subspaces `N_i` with `M_α(N_s) ⊆ N_t` for every arrow.
///
/// Vertices are filled in order, and each arrow is checked as soon as both
/// of its ends are fixed. Refuses when the number of candidate tuples
/// exceeds `budget`.
pub fn count_subreps(rep: &ExplicitRep, e: &DimVector, budget: u128) -> Result<u64, OracleError> {
    let FieldSpec::Prime(p) = rep.field else { return Err(OracleError::NeedsPrime) };
    let f = PrimeField::new(p).ok_or(OracleError::NotPrime(p))?;
    rep.quiver.check_len(e)?;
    let d = &rep.dims;
    if !e.is_nonnegative() || !e.le(d) {
        return Err(OracleError::Range { e: e.clone(), d: d.clone() });
    }
    let n = d.len();
    let estimate = (0..n).fold(1u128, |acc, i| acc.saturating_mul(gaussian_binomial(d[i] as u32, e[i] as u32, p)));
    if estimate > budget {
        return Err(OracleError::OverBudget { estimate, budget });
    }
    let candidates: Vec<Vec<Subspace>> = (0..n).map(|i| subspaces(&f, d[i] as usize, e[i] as usize)).collect();
    let maps: Vec<Vec<Vec<u64>>> =
        rep.maps.iter().map(|m| m.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect()).collect();
    // arrows to test once vertex i is fixed
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, a) in rep.quiver.arrows().iter().enumerate() {
        checks[a.source.max(a.target)].push(k);
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    Ok(search(&f, rep, &candidates, &maps, &checks, &mut chosen))
}

fn search(
    f: &PrimeField,
    rep: &ExplicitRep,
    candidates: &[Vec<Subspace>],
    maps: &[Vec<Vec<u64>>],
    checks: &[Vec<usize>],
    chosen: &mut Vec<usize>,
) -> u64 {
    let i = chosen.len();
    if i == candidates.len() {
        return 1;
    }
    let mut total = 0;
    for c in 0..candidates[i].len() {
        chosen.push(c);
        let closed = checks[i].iter().all(|&k| {
            let a = rep.quiver.arrows()[k];
            let source = &candidates[a.source][chosen[a.source]];
            let target = &candidates[a.target][chosen[a.target]];
            source.rows.iter().all(|v| {
                let image: Vec<u64> = maps[k]
                    .iter()
                    .map(|row| row.iter().zip(v).fold(0, |acc, (m, x)| f.add(&acc, &f.mul(m, x))))
                    .collect();
                target.contains(f, &image)
            })
        });
        if closed {
            total += search(f, rep, candidates, maps, checks, chosen);
        }
        chosen.pop();
    }
    total
}

/// The polynomial `P(t)` of degree ≤ `degree_bound` with `P(p) = count` at
/// every sample, with integer coefficients.
pub fn interpolate_count(counts: &[(u64, BigInt)], degree_bound: usize) -> Result<UniPoly<Integer>, OracleError> {
    let mut xs: Vec<u64> = counts.iter().map(|c| c.0).collect();
    xs.sort_unstable();
    xs.dedup();
    if xs.len() < degree_bound + 1 || xs.len() != counts.len() {
        return Err(OracleError::TooFewPoints { needed: degree_bound + 1, got: xs.len() });
    }
    let points: Vec<(Rational, Rational)> = counts
        .iter()
        .map(|(p, c)| (Rational::from_integer(BigInt::from(*p)), Rational::from_integer(c.clone())))
        .collect();
    let interp = UniPoly::interpolate(&points);
    let integral = interp.terms().all(|(_, c)| c.is_integer());
    if !integral || interp.degree().is_some_and(|k| k > degree_bound as i64) {
        return Err(OracleError::NotPolynomial { bound: degree_bound, interpolant: interp.display_with("t") });
    }
    Ok(interp.map_coeffs(|c| c.to_integer()))
}

/// The interpolant at `t = 1`, the Euler characteristic when counts are pure.
pub fn euler_estimate(poly: &UniPoly<Integer>) -> Integer {
    if poly.is_zero() {
        Integer::zero()
    } else {
        poly.evaluate(&Integer::one())
    }
}
