//! Hom and Ext dimensions, degenerations and generic decompositions.
//!
//! `[M, X] = dim Hom(M, X)` is knitted along the AR order: projectives give
//! `[P_j, X] = (dim X)_j`, and each mesh `0 → τM → E → M → 0` gives
//! `[M, X] = [E, X] − [τM, X] + δ(X ≅ τM)`. Ext then follows from the Euler form.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::ar::{ArError, ArQuiver, VertexId};
use crate::quiver::{DimVector, QuiverError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomalgError {
    #[error("dimension vectors differ: {0} vs {1}")]
    DimMismatch(DimVector, DimVector),
    #[error("expected 0 ≤ {e} ≤ {d}")]
    Range { e: DimVector, d: DimVector },
    #[error("dimension vector {0} has a negative entry")]
    Negative(DimVector),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// A direct sum of indecomposables with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ModuleExpr {
    summands: BTreeMap<VertexId, u32>,
}

impl ModuleExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn indecomposable(v: VertexId) -> Self {
        Self::zero().plus(v, 1)
    }

    pub fn from_vertices(vs: impl IntoIterator<Item = VertexId>) -> Self {
        vs.into_iter().fold(Self::zero(), |m, v| m.plus(v, 1))
    }

    /// Adds `mult` copies of `v`.
    pub fn plus(mut self, v: VertexId, mult: u32) -> Self {
        if mult > 0 {
            *self.summands.entry(v).or_insert(0) += mult;
        }
        self
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        other.summands.iter().fold(self.clone(), |m, (&v, &k)| m.plus(v, k))
    }

    pub fn summands(&self) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        self.summands.iter().map(|(&v, &k)| (v, k))
    }

    /// Each summand repeated by its multiplicity.
    pub fn expanded(&self) -> Vec<VertexId> {
        self.summands.iter().flat_map(|(&v, &k)| std::iter::repeat_n(v, k as usize)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn summand_count(&self) -> u32 {
        self.summands.values().sum()
    }

    pub fn dim(&self, ar: &ArQuiver) -> DimVector {
        self.summands
            .iter()
            .fold(DimVector::zeros(ar.quiver().vertex_count()), |acc, (&v, &k)| &acc + &ar.dim(v).scaled(k as i64))
    }

    pub fn display(&self, ar: &ArQuiver) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.summands
            .iter()
            .map(|(&v, &k)| if k == 1 { ar.vertex(v).label() } else { format!("{}^{k}", ar.vertex(v).label()) })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for ModuleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.summands.iter().map(|(v, k)| format!("#{}^{k}", v.0)).collect();
        write!(f, "[{}]", parts.join(" + "))
    }
}

pub(crate) fn tables(ar: &ArQuiver) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>), ArError> {
    let count = ar.len();
    let mut hom = vec![vec![0i64; count]; count];
    for m in ar.ids() {
        let v = ar.vertex(m);
        let row: Vec<i64> = if v.is_projective {
            ar.ids().map(|x| ar.dim(x)[v.orbit]).collect()
        } else {
            let mesh = ar.mesh_of(m)?;
            ar.ids()
                .map(|x| {
                    let e: i64 = mesh.middle.iter().map(|mid| hom[mid.0][x.0]).sum();
                    e - hom[mesh.tail.0][x.0] + i64::from(x == mesh.tail)
                })
                .collect()
        };
        hom[m.0] = row;
    }
    let q = ar.quiver();
    let mut ext = vec![vec![0i64; count]; count];
    for x in ar.ids() {
        for y in ar.ids() {
            let value = hom[x.0][y.0] - q.euler_form_unchecked(ar.dim(x), ar.dim(y));
            if value < 0 || hom[x.0][y.0] < 0 {
                return Err(ArError::NegativeExt(ar.vertex(x).label(), ar.vertex(y).label()));
            }
            ext[x.0][y.0] = value;
        }
    }
    Ok((hom, ext))
}

impl ArQuiver {
    /// `dim Hom(X, Y)` for indecomposables.
    pub fn hom_ind(&self, x: VertexId, y: VertexId) -> i64 {
        self.hom[x.0][y.0]
    }

    /// `dim Ext^1(X, Y)` for indecomposables.
    pub fn ext_ind(&self, x: VertexId, y: VertexId) -> i64 {
        self.ext[x.0][y.0]
    }

    pub fn hom_dim(&self, x: &ModuleExpr, y: &ModuleExpr) -> i64 {
        bilinear(&self.hom, x, y)
    }

    pub fn ext_dim(&self, x: &ModuleExpr, y: &ModuleExpr) -> i64 {
        bilinear(&self.ext, x, y)
    }

    pub fn is_rigid(&self, m: &ModuleExpr) -> bool {
        self.ext_dim(m, m) == 0
    }

    /// `m ≤_deg n`: `[X, m] ≤ [X, n]` for every indecomposable `X`.
    pub fn degeneration_leq(&self, m: &ModuleExpr, n: &ModuleExpr) -> Result<bool, HomalgError> {
        let (dm, dn) = (m.dim(self), n.dim(self));
        if dm != dn {
            return Err(HomalgError::DimMismatch(dm, dn));
        }
        Ok(self.ids().all(|x| {
            let x = ModuleExpr::indecomposable(x);
            self.hom_dim(&x, m) <= self.hom_dim(&x, n)
        }))
    }

    /// The dual test `[m, X] ≤ [n, X]` for every indecomposable `X`.
    pub fn degeneration_leq_dual(&self, m: &ModuleExpr, n: &ModuleExpr) -> Result<bool, HomalgError> {
        let (dm, dn) = (m.dim(self), n.dim(self));
        if dm != dn {
            return Err(HomalgError::DimMismatch(dm, dn));
        }
        Ok(self.ids().all(|x| {
            let x = ModuleExpr::indecomposable(x);
            self.hom_dim(m, &x) <= self.hom_dim(n, &x)
        }))
    }

    /// The rigid module `M̃_d`: the unique decomposition of `d` into positive
    /// roots whose summands are pairwise Ext-orthogonal.
    ///
    /// Depth-first search over roots in decreasing AR order, deciding one
    /// multiplicity per root. The set of roots still compatible with all
    /// chosen summands is carried as a bitmask, and dead `(index, remaining,
    /// mask)` states are memoized.
    pub fn generic_decomposition(&self, d: &DimVector) -> Result<ModuleExpr, HomalgError> {
        self.quiver().check_len(d)?;
        if !d.is_nonnegative() {
            return Err(HomalgError::Negative(d.clone()));
        }
        let roots: Vec<VertexId> = self.ids().rev().collect();
        let words = roots.len().div_ceil(64);
        let compat: Vec<Vec<u64>> = roots
            .iter()
            .map(|&a| {
                let mut mask = vec![0u64; words];
                for (j, &b) in roots.iter().enumerate() {
                    if self.ext_ind(a, b) == 0 && self.ext_ind(b, a) == 0 {
                        mask[j / 64] |= 1 << (j % 64);
                    }
                }
                mask
            })
            .collect();
        let mut search = Search { ar: self, roots: &roots, compat: &compat, dead: HashSet::new() };
        let all = vec![u64::MAX; words];
        let mut chosen = Vec::new();
        let found = search.run(0, d.clone(), &all, &mut chosen);
        assert!(found, "every dimension vector of a Dynkin quiver has a rigid decomposition");
        Ok(chosen.into_iter().fold(ModuleExpr::zero(), |m, (v, k)| m.plus(v, k)))
    }

    fn range_check(&self, e: &DimVector, d: &DimVector) -> Result<(), HomalgError> {
        self.quiver().check_len(e)?;
        self.quiver().check_len(d)?;
        if e.is_nonnegative() && e.le(d) {
            Ok(())
        } else {
            Err(HomalgError::Range { e: e.clone(), d: d.clone() })
        }
    }

    /// `Gr_e(M̃_d) ≠ ∅` iff `Ext^1(M̃_e, M̃_{d−e}) = 0`.
    pub fn grassmannian_nonempty(&self, e: &DimVector, d: &DimVector) -> Result<bool, HomalgError> {
        self.range_check(e, d)?;
        let sub = self.generic_decomposition(e)?;
        let quot = self.generic_decomposition(&(d - e))?;
        Ok(self.ext_dim(&sub, &quot) == 0)
    }

    /// `⟨e, d − e⟩` when `Gr_e(M̃_d)` is non-empty, `None` when it is empty.
    pub fn generic_min_dimension(&self, e: &DimVector, d: &DimVector) -> Result<Option<i64>, HomalgError> {
        if self.grassmannian_nonempty(e, d)? {
            Ok(Some(self.quiver().euler_form_unchecked(e, &(d - e))))
        } else {
            Ok(None)
        }
    }

    /// `[N, M] − [N, N]`, the dimension of the stratum of subrepresentations
    /// of `M` isomorphic to `N`.
    pub fn stratum_dimension(&self, n: &ModuleExpr, m: &ModuleExpr) -> Result<i64, HomalgError> {
        let (dn, dm) = (n.dim(self), m.dim(self));
        if !dn.le(&dm) {
            return Err(HomalgError::Range { e: dn, d: dm });
        }
        Ok(self.hom_dim(n, m) - self.hom_dim(n, n))
    }
}

fn bilinear(table: &[Vec<i64>], x: &ModuleExpr, y: &ModuleExpr) -> i64 {
    x.summands()
        .flat_map(|(a, ka)| y.summands().map(move |(b, kb)| (a, ka, b, kb)))
        .map(|(a, ka, b, kb)| i64::from(ka) * i64::from(kb) * table[a.0][b.0])
        .sum()
}

struct Search<'a> {
    ar: &'a ArQuiver,
    roots: &'a [VertexId],
    compat: &'a [Vec<u64>],
    dead: HashSet<(usize, DimVector, Vec<u64>)>,
}

impl Search<'_> {
    fn run(&mut self, idx: usize, remaining: DimVector, allowed: &[u64], chosen: &mut Vec<(VertexId, u32)>) -> bool {
        if remaining.is_zero() {
            return true;
        }
        if idx == self.roots.len() {
            return false;
        }
        let key = (idx, remaining.clone(), allowed.to_vec());
        if self.dead.contains(&key) {
            return false;
        }
        let root = self.roots[idx];
        if allowed[idx / 64] >> (idx % 64) & 1 == 1 {
            let dim = self.ar.dim(root);
            let mut max = 0u32;
            while (&remaining - &dim.scaled(max as i64 + 1)).is_nonnegative() {
                max += 1;
            }
            if max > 0 {
                let narrowed: Vec<u64> = allowed.iter().zip(&self.compat[idx]).map(|(a, b)| a & b).collect();
                for k in (1..=max).rev() {
                    chosen.push((root, k));
                    if self.run(idx + 1, &remaining - &dim.scaled(k as i64), &narrowed, chosen) {
                        return true;
                    }
                    chosen.pop();
                }
            }
        }
        if self.run(idx + 1, remaining, allowed, chosen) {
            return true;
        }
        self.dead.insert(key);
        false
    }
}
