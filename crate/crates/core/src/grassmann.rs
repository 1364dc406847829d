//! F-polynomials, Euler characteristics and Poincaré polynomials of quiver
//! Grassmannians of Dynkin representations.
//!
//! Both tables are filled along the AR order. Projectives are thin, so their
//! Grassmannians are points or empty. Every other indecomposable `M` sits in a
//! mesh `0 → τM → E → M → 0`, and its values are solved from those of `E` and
//! `τM`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::ar::{ArError, ArQuiver, VertexId};
use crate::homalg::{HomalgError, ModuleExpr};
use crate::poly::{PolyError, Polynomial};
use crate::quiver::{DimVector, Quiver};
use crate::scalar::Integer;
use crate::{IntPolynomial, OneVarPolynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrassmannError {
    #[error("{0} is not projective")]
    NotProjective(String),
    #[error("{0} has self-extensions; the product formula needs a rigid module")]
    NotRigid(String),
    #[error("expected 0 ≤ {e} ≤ {d}")]
    Range { e: DimVector, d: DimVector },
    #[error("the split route excludes e = dim M = {0}")]
    TopDegree(DimVector),
    #[error("F-polynomial of {label}: {source}")]
    Division { label: String, source: PolyError },
    #[error("negative Euler characteristic {value} for {label}, e = {e}")]
    NegativeEuler { label: String, e: DimVector, value: Integer },
    #[error("Poincaré polynomial of Gr_{e}({label}) is {poly}, not an even polynomial with non-negative coefficients")]
    NotPoincare { label: String, e: DimVector, poly: String },
    #[error(transparent)]
    Ar(#[from] ArError),
    #[error(transparent)]
    Homalg(#[from] HomalgError),
}

type Result<T> = std::result::Result<T, GrassmannError>;

fn exponent(d: &DimVector) -> Vec<u32> {
    d.entries().iter().map(|&x| u32::try_from(x).expect("non-negative dimension vector")).collect()
}

/// `F` of a projective: one term `y^e` per successor-closed subset of its
/// support.
pub fn f_poly_projective(ar: &ArQuiver, v: VertexId) -> Result<IntPolynomial> {
    let vertex = ar.vertex(v);
    if !vertex.is_projective {
        return Err(GrassmannError::NotProjective(vertex.label()));
    }
    let q = ar.quiver();
    let n = q.vertex_count();
    let support: u64 = (0..n).filter(|&i| vertex.dim[i] > 0).fold(0, |m, i| m | 1 << i);
    let closed = |s: u64| (0..n).filter(|&j| s >> j & 1 == 1).all(|j| q.successors(j).all(|k| s >> k & 1 == 1));
    let mut f = Polynomial::zero(n);
    let mut s = support;
    loop {
        if closed(s) {
            f.add_term((0..n).map(|i| (s >> i & 1) as u32).collect(), Integer::one());
        }
        if s == 0 {
            break;
        }
        s = (s - 1) & support;
    }
    Ok(f)
}

/// The F-polynomial of every indecomposable, indexed by [`VertexId`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FTable {
    nvars: usize,
    polys: Vec<IntPolynomial>,
}

impl FTable {
    /// Fills the table along the AR order, using `F_M = (F_E + y^{dim M}) / F_{τM}`.
    pub fn build(ar: &ArQuiver) -> Result<Self> {
        let n = ar.quiver().vertex_count();
        let mut polys: Vec<IntPolynomial> = Vec::with_capacity(ar.len());
        for v in ar.ids() {
            let f = if ar.vertex(v).is_projective {
                f_poly_projective(ar, v)?
            } else {
                let mesh = ar.mesh_of(v)?;
                let mut num = mesh.middle.iter().fold(Polynomial::one(n), |acc, m| &acc * &polys[m.0]);
                num.add_term(exponent(ar.dim(v)), Integer::one());
                num.exact_divide(&polys[mesh.tail.0])
                    .map_err(|source| GrassmannError::Division { label: ar.vertex(v).label(), source })?
            };
            polys.push(f);
        }
        Ok(Self { nvars: n, polys })
    }

    pub fn get(&self, v: VertexId) -> &IntPolynomial {
        &self.polys[v.0]
    }

    /// `F` of a direct sum, the product over its summands.
    pub fn of(&self, m: &ModuleExpr) -> IntPolynomial {
        m.summands().fold(Polynomial::one(self.nvars), |acc, (v, k)| &acc * &self.polys[v.0].pow(k))
    }

    /// `χ(Gr_e(m))`, the coefficient of `y^e` in `F_m`.
    pub fn euler_char(&self, ar: &ArQuiver, m: &ModuleExpr, e: &DimVector) -> Result<Integer> {
        ar.quiver().check_len(e).map_err(HomalgError::from)?;
        if !e.is_nonnegative() {
            return Ok(Integer::zero());
        }
        let bound = exponent(e);
        let product = m.expanded().iter().fold(Polynomial::one(self.nvars), |acc, v| {
            acc.mul_truncated(&self.polys[v.0], &bound)
        });
        let value = product.coeff(&bound);
        if value.is_negative() {
            return Err(GrassmannError::NegativeEuler { label: m.display(ar), e: e.clone(), value });
        }
        Ok(value)
    }
}

/// Poincaré polynomials `P_{Gr_e(X)}(q)` keyed by `e`; absent keys are empty
/// Grassmannians.
pub type PoincareMap = BTreeMap<DimVector, OneVarPolynomial>;

/// Poincaré polynomials of `Gr_e(N1 ⊕ N2)` from those of the summands:
/// `Σ_{f+g=e} q^{2⟨f, dim N2 − g⟩} P_f(N1) P_g(N2)`, keeping `e ≤ bound`.
pub fn combine(
    q: &Quiver,
    first: &PoincareMap,
    second: &PoincareMap,
    second_dim: &DimVector,
    bound: Option<&DimVector>,
) -> PoincareMap {
    let mut out = PoincareMap::new();
    for (f, pf) in first {
        if bound.is_some_and(|b| !f.le(b)) {
            continue;
        }
        for (g, pg) in second {
            let e = f + g;
            if bound.is_some_and(|b| !e.le(b)) {
                continue;
            }
            let shift = 2 * q.euler_form_unchecked(f, &(second_dim - g));
            let term = (pf * pg).shift(shift);
            let slot = out.entry(e).or_insert_with(OneVarPolynomial::zero);
            *slot = &*slot + &term;
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

fn check_poincare(label: impl FnOnce() -> String, e: &DimVector, p: &OneVarPolynomial) -> Result<()> {
    if p.is_polynomial() && p.has_only_even_exponents() && p.has_nonnegative_coeffs() {
        Ok(())
    } else {
        Err(GrassmannError::NotPoincare { label: label(), e: e.clone(), poly: p.to_string() })
    }
}

/// Poincaré polynomials of all Grassmannians of every indecomposable.
#[derive(Debug, Clone)]
pub struct PoincareTable {
    maps: Vec<PoincareMap>,
}

impl PoincareTable {
    /// Per indecomposable `M` in AR order, solves
    /// `P_e(E) = Σ_{f+g=e} q^{2⟨f, dim τM − g⟩} P_f(M) P_g(τM)` for `P_e(M)`,
    /// with `e` running over the box below `dim M` by total degree.
    pub fn build(ar: &ArQuiver) -> Result<Self> {
        let q = ar.quiver();
        let mut maps: Vec<PoincareMap> = Vec::with_capacity(ar.len());
        for v in ar.ids() {
            let dim = ar.dim(v);
            let label = || ar.vertex(v).label();
            let map = if ar.vertex(v).is_projective {
                let f = f_poly_projective(ar, v)?;
                f.terms()
                    .map(|(e, _)| (DimVector::new(e.iter().map(|&x| i64::from(x)).collect()), OneVarPolynomial::one()))
                    .collect()
            } else {
                let mesh = ar.mesh_of(v)?;
                let tau = &maps[mesh.tail.0];
                let tau_dim = ar.dim(mesh.tail);
                let middle = mesh.middle.iter().fold((point_map(q.vertex_count()), DimVector::zeros(q.vertex_count())), |(acc, d), m| {
                    (combine(q, &acc, &maps[m.0], ar.dim(*m), None), &d + ar.dim(*m))
                });
                let middle = middle.0;
                let mut own = PoincareMap::new();
                for e in dim.box_below() {
                    let p = if e.is_zero() || &e == dim {
                        OneVarPolynomial::one()
                    } else {
                        let mut rest = middle.get(&e).cloned().unwrap_or_else(OneVarPolynomial::zero);
                        for (g, pg) in tau {
                            if g.is_zero() || !g.le(&e) {
                                continue;
                            }
                            let f = &e - g;
                            if let Some(pf) = own.get(&f) {
                                let shift = 2 * q.euler_form_unchecked(&f, &(tau_dim - g));
                                rest = &rest - &(pf * pg).shift(shift);
                            }
                        }
                        rest.shift(-2 * q.euler_form_unchecked(&e, tau_dim))
                    };
                    check_poincare(label, &e, &p)?;
                    if !p.is_zero() {
                        own.insert(e, p);
                    }
                }
                own
            };
            maps.push(map);
        }
        Ok(Self { maps })
    }

    pub fn map(&self, v: VertexId) -> &PoincareMap {
        &self.maps[v.0]
    }

    /// `P_{Gr_e(M)}` for an indecomposable; zero when empty.
    pub fn get(&self, v: VertexId, e: &DimVector) -> OneVarPolynomial {
        self.maps[v.0].get(e).cloned().unwrap_or_else(OneVarPolynomial::zero)
    }

    /// `P_{Gr_e(m)}` for a rigid direct sum `m`.
    pub fn poincare(&self, ar: &ArQuiver, m: &ModuleExpr, e: &DimVector) -> Result<OneVarPolynomial> {
        ar.quiver().check_len(e).map_err(HomalgError::from)?;
        let d = m.dim(ar);
        if !e.is_nonnegative() || !e.le(&d) {
            return Err(GrassmannError::Range { e: e.clone(), d });
        }
        if !ar.is_rigid(m) {
            return Err(GrassmannError::NotRigid(m.display(ar)));
        }
        let p = self.sum_map(ar, m.expanded(), Some(e)).remove(e).unwrap_or_else(OneVarPolynomial::zero);
        check_poincare(|| m.display(ar), e, &p)?;
        Ok(p)
    }

    /// `P_{Gr_e(M ⊕ τM)}` for the end term `M` of a mesh and `e ≠ dim M`.
    pub fn poincare_split(&self, ar: &ArQuiver, head: VertexId, e: &DimVector) -> Result<OneVarPolynomial> {
        ar.quiver().check_len(e).map_err(HomalgError::from)?;
        let tail = ar.tau(head).ok_or_else(|| ArError::Projective(ar.vertex(head).label()))?;
        let d = ar.dim(head) + ar.dim(tail);
        if !e.is_nonnegative() || !e.le(&d) {
            return Err(GrassmannError::Range { e: e.clone(), d });
        }
        if e == ar.dim(head) {
            return Err(GrassmannError::TopDegree(e.clone()));
        }
        let p = self.sum_map(ar, vec![head, tail], Some(e)).remove(e).unwrap_or_else(OneVarPolynomial::zero);
        check_poincare(|| format!("{} + {}", ar.vertex(head).label(), ar.vertex(tail).label()), e, &p)?;
        Ok(p)
    }

    fn sum_map(&self, ar: &ArQuiver, summands: Vec<VertexId>, bound: Option<&DimVector>) -> PoincareMap {
        let n = ar.quiver().vertex_count();
        summands.into_iter().fold(point_map(n), |acc, v| combine(ar.quiver(), &acc, &self.maps[v.0], ar.dim(v), bound))
    }
}

fn point_map(n: usize) -> PoincareMap {
    PoincareMap::from([(DimVector::zeros(n), OneVarPolynomial::one())])
}

/// `χ(Gr_e(M)) = χ(Gr_{d−e}(DM))`, with `DM` the module over the opposite
/// quiver whose summands have the same dimension vectors.
pub fn check_duality(
    ar: &ArQuiver,
    ft: &FTable,
    ar_op: &ArQuiver,
    ft_op: &FTable,
    m: &ModuleExpr,
    e: &DimVector,
) -> Result<bool> {
    let d = m.dim(ar);
    let dual = m
        .summands()
        .try_fold(ModuleExpr::zero(), |acc, (v, k)| ar_op.vertex_by_dim(ar.dim(v)).map(|w| acc.plus(w, k)))?;
    Ok(ft.euler_char(ar, m, e)? == ft_op.euler_char(ar_op, &dual, &(&d - e))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::DynkinType;

    fn knit(ty: DynkinType, arrows: &[(usize, usize)]) -> ArQuiver {
        ArQuiver::knit(&Quiver::dynkin(ty, arrows).unwrap()).unwrap()
    }

    fn ind(ar: &ArQuiver, d: &[i64]) -> VertexId {
        ar.vertex_by_dim(&d.to_vec().into()).unwrap()
    }

    fn y(n: usize, terms: &[&[u32]]) -> IntPolynomial {
        Polynomial::from_terms(n, terms.iter().map(|e| (e.to_vec(), Integer::one())))
    }

    fn qpoly(coeffs: &[i64]) -> OneVarPolynomial {
        OneVarPolynomial::from_coeffs(coeffs.iter().map(|&c| Integer::from(c)))
    }

    #[test]
    fn projective_f_polynomials() {
        let a2 = knit(DynkinType::a(2), &[(1, 2)]);
        assert_eq!(f_poly_projective(&a2, a2.projective(1)).unwrap(), y(2, &[&[0, 0], &[0, 1]]));
        assert_eq!(f_poly_projective(&a2, a2.projective(0)).unwrap(), y(2, &[&[0, 0], &[0, 1], &[1, 1]]));
        let a3 = knit(DynkinType::a(3), &[(1, 2), (2, 3)]);
        assert_eq!(
            f_poly_projective(&a3, a3.projective(0)).unwrap(),
            y(3, &[&[0, 0, 0], &[0, 0, 1], &[0, 1, 1], &[1, 1, 1]])
        );
        assert!(f_poly_projective(&a2, ind(&a2, &[1, 0])).is_err());
    }

    #[test]
    fn a2_table() {
        let ar = knit(DynkinType::a(2), &[(1, 2)]);
        let ft = FTable::build(&ar).unwrap();
        assert_eq!(ft.get(ind(&ar, &[1, 0])), &y(2, &[&[0, 0], &[1, 0]]));
        let p1 = ModuleExpr::indecomposable(ind(&ar, &[1, 1]));
        assert_eq!(ft.euler_char(&ar, &p1, &[0, 1].into()).unwrap(), Integer::one());
        assert_eq!(ft.euler_char(&ar, &p1, &[1, 0].into()).unwrap(), Integer::zero());
        assert_eq!(ft.euler_char(&ar, &p1, &[0, 0].into()).unwrap(), Integer::one());
    }

    #[test]
    fn a1_projective_line() {
        let ar = knit(DynkinType::a(1), &[]);
        let pt = PoincareTable::build(&ar).unwrap();
        let s = ar.simple(0);
        let ss = ModuleExpr::zero().plus(s, 2);
        // S ⊕ S is rigid over A1
        assert_eq!(pt.poincare(&ar, &ss, &[1].into()).unwrap(), qpoly(&[1, 0, 1]));
        assert_eq!(pt.poincare(&ar, &ss, &[2].into()).unwrap(), OneVarPolynomial::one());
    }

    #[test]
    fn d4_blow_up() {
        let ar = knit(DynkinType::d(4), &[(1, 4), (2, 4), (3, 4)]);
        let ft = FTable::build(&ar).unwrap();
        let pt = PoincareTable::build(&ar).unwrap();
        let e = DimVector::from([1, 1, 1, 2]);
        let middle = ModuleExpr::from_vertices([ind(&ar, &[1, 1, 0, 1]), ind(&ar, &[1, 0, 1, 1]), ind(&ar, &[0, 1, 1, 1])]);
        let blow_up = qpoly(&[1, 0, 4, 0, 1]);
        assert_eq!(ft.euler_char(&ar, &middle, &e).unwrap(), Integer::from(6));
        assert_eq!(pt.poincare(&ar, &middle, &e).unwrap(), blow_up);
        assert_eq!(pt.poincare_split(&ar, ind(&ar, &[1, 1, 1, 1]), &e).unwrap(), blow_up);
        let top = ind(&ar, &[1, 1, 1, 2]);
        // 1 (e4 = 0) + 8 (e4 = 2) + χ(P^1) + 3 lines (e4 = 1)
        assert_eq!(ft.get(top).evaluate(&vec![Integer::one(); 4]), Integer::from(14));
        let split = ModuleExpr::from_vertices([top, ind(&ar, &[1, 1, 1, 1])]);
        assert!(matches!(pt.poincare(&ar, &split, &e), Err(GrassmannError::NotRigid(_))));
    }

    #[test]
    fn poincare_agrees_with_f_on_a3() {
        let ar = knit(DynkinType::a(3), &[(2, 1), (2, 3)]);
        let ft = FTable::build(&ar).unwrap();
        let pt = PoincareTable::build(&ar).unwrap();
        for v in ar.ids() {
            for e in ar.dim(v).box_below() {
                let chi = ft.euler_char(&ar, &ModuleExpr::indecomposable(v), &e).unwrap();
                assert_eq!(pt.get(v, &e).value_at_one(), chi);
            }
        }
    }

    #[test]
    fn duality_on_a2() {
        let q = Quiver::dynkin(DynkinType::a(2), &[(1, 2)]).unwrap();
        let (ar, ar_op) = (ArQuiver::knit(&q).unwrap(), ArQuiver::knit(&q.opposite()).unwrap());
        let (ft, ft_op) = (FTable::build(&ar).unwrap(), FTable::build(&ar_op).unwrap());
        let p1 = ModuleExpr::indecomposable(ind(&ar, &[1, 1]));
        for e in DimVector::from([1, 1]).box_below() {
            assert!(check_duality(&ar, &ft, &ar_op, &ft_op, &p1, &e).unwrap());
        }
    }
}
