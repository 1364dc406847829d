//! Brute-force cross-checks on explicit matrix representations: Hom spaces as
//! kernels of linear maps, and subrepresentation counts over finite fields.

mod count;
pub mod field;

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use count::{count_subreps, euler_estimate, gaussian_binomial, interpolate_count, DEFAULT_BUDGET};
use field::{inverse, mat_mul, rank, LinearField, PrimeField, RationalField};

use crate::quiver::{DimVector, DynkinKind, Quiver, QuiverError};

/// The subspace-configuration representations `E` and `F` of the subspace D4
/// quiver with dimension vector `(2,2,2,3)`.
pub const D4_BLOWUP_E: &str = include_str!("../../fixtures/d4_blowup_e.json");
pub const D4_BLOWUP_F: &str = include_str!("../../fixtures/d4_blowup_f.json");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("malformed representation: {0}")]
    Malformed(String),
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("representations live on different quivers or fields")]
    Mismatch,
    #[error("counting needs a finite field")]
    NeedsPrime,
    #[error("no interval from {0} to {1} in a type-A component")]
    BadInterval(usize, usize),
    #[error("expected 0 ≤ {e} ≤ {d}")]
    Range { e: DimVector, d: DimVector },
    #[error("search space of about {estimate} subspace tuples exceeds the budget of {budget}")]
    OverBudget { estimate: u128, budget: u128 },
    #[error("need at least {needed} distinct primes, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("counts are not a polynomial of degree ≤ {bound} with integer coefficients (interpolant {interpolant})")]
    NotPolynomial { bound: usize, interpolant: String },
}

/// Coefficient field of an explicit representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Prime(u64),
    Rational,
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, OracleError> {
        PrimeField::new(p).map(|_| Self::Prime(p)).ok_or(OracleError::NotPrime(p))
    }
}

/// A point of the representation space: one integer matrix per arrow, of
/// shape `d_target × d_source`, read in the chosen field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitRep {
    quiver: Quiver,
    field: FieldSpec,
    dims: DimVector,
    maps: Vec<Vec<Vec<i64>>>,
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    #[serde(rename = "type")]
    ty: String,
    arrows: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct RepJson {
    quiver: QuiverJson,
    #[serde(default)]
    prime: Option<u64>,
    dims: Vec<i64>,
    #[serde(default)]
    maps: BTreeMap<String, Vec<Vec<i64>>>,
}

fn arrow_key(s: usize, t: usize) -> String {
    format!("{}->{}", s + 1, t + 1)
}

impl ExplicitRep {
    /// Validates shapes; `maps` follows the order of `quiver.arrows()`.
    pub fn new(quiver: Quiver, field: FieldSpec, dims: DimVector, maps: Vec<Vec<Vec<i64>>>) -> Result<Self, OracleError> {
        quiver.check_len(&dims)?;
        if !dims.is_nonnegative() {
            return Err(OracleError::Malformed(format!("negative dimension in {dims}")));
        }
        if let FieldSpec::Prime(p) = field {
            FieldSpec::prime(p)?;
        }
        if maps.len() != quiver.arrows().len() {
            return Err(OracleError::Malformed(format!("{} maps for {} arrows", maps.len(), quiver.arrows().len())));
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            let (rows, cols) = (dims[a.target] as usize, dims[a.source] as usize);
            if m.len() != rows || m.iter().any(|r| r.len() != cols) {
                return Err(OracleError::Malformed(format!(
                    "map {} must be {rows}×{cols}",
                    arrow_key(a.source, a.target)
                )));
            }
        }
        Ok(Self { quiver, field, dims, maps })
    }

    /// Reads the JSON fixture format
    /// `{"quiver": {"type", "arrows"}, "prime", "dims", "maps": {"s->t": rows}}`.
    /// Without `prime` the entries are rationals. Maps between zero spaces may
    /// be omitted.
    pub fn from_json(text: &str) -> Result<Self, OracleError> {
        let raw: RepJson = serde_json::from_str(text).map_err(|e| OracleError::Malformed(e.to_string()))?;
        let quiver = Quiver::parse(&format!("type: {}\narrows: {}\n", raw.quiver.ty, raw.quiver.arrows.join(", ")))?;
        let dims = DimVector::new(raw.dims);
        quiver.check_len(&dims)?;
        let mut given = raw.maps;
        let mut maps = Vec::new();
        for a in quiver.arrows() {
            let key = arrow_key(a.source, a.target);
            let (rows, cols) = (dims[a.target].max(0) as usize, dims[a.source].max(0) as usize);
            match given.remove(&key) {
                Some(m) => maps.push(m),
                None if rows == 0 || cols == 0 => maps.push(vec![vec![0; cols]; rows]),
                None => return Err(OracleError::Malformed(format!("missing map for {key}"))),
            }
        }
        if let Some(extra) = given.keys().next() {
            return Err(OracleError::Malformed(format!("map for unknown arrow {extra}")));
        }
        let field = raw.prime.map_or(Ok(FieldSpec::Rational), FieldSpec::prime)?;
        Self::new(quiver, field, dims, maps)
    }

    pub fn to_json(&self) -> String {
        let raw = RepJson {
            quiver: QuiverJson {
                ty: self.quiver.type_label(),
                arrows: self.quiver.arrows().iter().map(|a| arrow_key(a.source, a.target)).collect(),
            },
            prime: match self.field {
                FieldSpec::Prime(p) => Some(p),
                FieldSpec::Rational => None,
            },
            dims: self.dims.entries().to_vec(),
            maps: self
                .quiver
                .arrows()
                .iter()
                .zip(&self.maps)
                .map(|(a, m)| (arrow_key(a.source, a.target), m.clone()))
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("serializable")
    }

    /// The module with dimension 1 on `support` and identity maps inside it.
    pub fn thin(quiver: &Quiver, field: FieldSpec, support: &[usize]) -> Result<Self, OracleError> {
        let n = quiver.vertex_count();
        let mut dims = DimVector::zeros(n);
        for &i in support {
            if i >= n {
                return Err(OracleError::Malformed(format!("vertex {} out of range", i + 1)));
            }
            dims[i] = 1;
        }
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| {
                let (rows, cols) = (dims[a.target] as usize, dims[a.source] as usize);
                vec![vec![1; cols]; rows]
            })
            .collect();
        Self::new(quiver.clone(), field, dims, maps)
    }

    /// The interval module on the path from `a` to `b` (0-based) inside a
    /// type-A component.
    pub fn interval(quiver: &Quiver, field: FieldSpec, a: usize, b: usize) -> Result<Self, OracleError> {
        let bad = || OracleError::BadInterval(a + 1, b + 1);
        let comp = quiver.components().iter().find(|c| c.vertices().contains(&a)).ok_or_else(bad)?;
        if comp.ty.kind != DynkinKind::A || !comp.vertices().contains(&b) {
            return Err(bad());
        }
        let path = tree_path(quiver, a, b).ok_or_else(bad)?;
        Self::thin(quiver, field, &path)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, OracleError> {
        if self.quiver != other.quiver || self.field != other.field {
            return Err(OracleError::Mismatch);
        }
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let (c1, c2) = (self.dims[a.source] as usize, other.dims[a.source] as usize);
                let top = self.maps[k].iter().map(|r| r.iter().copied().chain(std::iter::repeat_n(0, c2)).collect());
                let bottom = other.maps[k].iter().map(|r| std::iter::repeat_n(0, c1).chain(r.iter().copied()).collect());
                top.chain(bottom).collect()
            })
            .collect();
        Self::new(self.quiver.clone(), self.field, &self.dims + &other.dims, maps)
    }

    /// The same matrices read over `F_p`.
    pub fn over_prime(&self, p: u64) -> Result<Self, OracleError> {
        Ok(Self { field: FieldSpec::prime(p)?, ..self.clone() })
    }

    /// `M'_α = g_t M_α g_s^{-1}` for invertible `g_i` over `F_p`; `None` if some
    /// `g_i` is singular.
    pub fn change_basis(&self, g: &[Vec<Vec<i64>>]) -> Result<Option<Self>, OracleError> {
        let FieldSpec::Prime(p) = self.field else { return Err(OracleError::NeedsPrime) };
        let f = PrimeField::new(p).ok_or(OracleError::NotPrime(p))?;
        let lift = |m: &[Vec<i64>]| -> Vec<Vec<u64>> { m.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect() };
        let mut inverses = Vec::new();
        for (i, gi) in g.iter().enumerate() {
            let d = self.dims[i] as usize;
            if gi.len() != d || gi.iter().any(|r| r.len() != d) {
                return Err(OracleError::Malformed(format!("basis change at vertex {} must be {d}×{d}", i + 1)));
            }
            match if d == 0 { Some(Vec::new()) } else { inverse(&f, &lift(gi)) } {
                Some(inv) => inverses.push(inv),
                None => return Ok(None),
            }
        }
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| {
                let (ds, dt) = (self.dims[a.source] as usize, self.dims[a.target] as usize);
                let left = mat_mul(&f, &lift(&g[a.target]), &lift(m), dt, ds);
                let out = mat_mul(&f, &left, &inverses[a.source], ds, ds);
                out.into_iter().map(|r| r.into_iter().map(|x| x as i64).collect()).collect()
            })
            .collect();
        Self::new(self.quiver.clone(), self.field, self.dims.clone(), maps).map(Some)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    /// The matrix of each arrow, in the order of `quiver().arrows()`.
    pub fn maps(&self) -> &[Vec<Vec<i64>>] {
        &self.maps
    }
}

fn tree_path(q: &Quiver, a: usize, b: usize) -> Option<Vec<usize>> {
    let n = q.vertex_count();
    let mut parent = vec![usize::MAX; n];
    parent[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        for w in q.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    if parent[b] == usize::MAX {
        return None;
    }
    let mut path = vec![b];
    while *path.last().expect("non-empty") != a {
        path.push(parent[*path.last().expect("non-empty")]);
    }
    Some(path)
}

/// The linear map `Φ: (f_i) ↦ (M_α f_{s(α)} − f_{t(α)} N_α)` from
/// `⊕ Hom(N_i, M_i)` to `⊕_α Hom(N_{s(α)}, M_{t(α)})`, one row per target
/// coordinate.
fn phi_matrix(n: &ExplicitRep, m: &ExplicitRep) -> (Vec<Vec<i64>>, usize) {
    let (e, d) = (&n.dims, &m.dims);
    let size = |i: usize| (d[i] * e[i]) as usize;
    let offsets: Vec<usize> = (0..e.len()).scan(0, |acc, i| {
        let o = *acc;
        *acc += size(i);
        Some(o)
    }).collect();
    let unknowns: usize = (0..e.len()).map(size).sum();
    // f_i[r][c] ↦ column offsets[i] + r * e_i + c
    let var = |i: usize, r: usize, c: usize| offsets[i] + r * e[i] as usize + c;
    let mut rows = Vec::new();
    for (k, a) in m.quiver.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        for r in 0..d[t] as usize {
            for c in 0..e[s] as usize {
                let mut row = vec![0i64; unknowns];
                for j in 0..d[s] as usize {
                    row[var(s, j, c)] += m.maps[k][r][j];
                }
                for j in 0..e[t] as usize {
                    row[var(t, r, j)] -= n.maps[k][j][c];
                }
                rows.push(row);
            }
        }
    }
    (rows, unknowns)
}

fn phi_rank(n: &ExplicitRep, m: &ExplicitRep) -> Result<(usize, usize, usize), OracleError> {
    if n.quiver != m.quiver || n.field != m.field {
        return Err(OracleError::Mismatch);
    }
    let (rows, unknowns) = phi_matrix(n, m);
    let r = match n.field {
        FieldSpec::Prime(p) => {
            let f = PrimeField::new(p).ok_or(OracleError::NotPrime(p))?;
            rank(&f, &rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect::<Vec<_>>())
        }
        FieldSpec::Rational => {
            let f = RationalField;
            rank(&f, &rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect::<Vec<_>>())
        }
    };
    Ok((unknowns, rows.len(), r))
}

/// `dim Hom(N, M)`, the nullity of `Φ`.
pub fn hom_space_dim(n: &ExplicitRep, m: &ExplicitRep) -> Result<usize, OracleError> {
    let (unknowns, _, r) = phi_rank(n, m)?;
    Ok(unknowns - r)
}

/// `dim Ext^1(N, M)`, the corank of `Φ`.
pub fn ext_space_dim(n: &ExplicitRep, m: &ExplicitRep) -> Result<usize, OracleError> {
    let (_, equations, r) = phi_rank(n, m)?;
    Ok(equations - r)
}

/// Counts as `(prime, count)` pairs, ready for [`interpolate_count`].
pub fn counts_over(rep: &ExplicitRep, e: &DimVector, primes: &[u64], budget: u128) -> Result<Vec<(u64, BigInt)>, OracleError> {
    primes
        .iter()
        .map(|&p| Ok((p, BigInt::from(count_subreps(&rep.over_prime(p)?, e, budget)?))))
        .collect()
}
