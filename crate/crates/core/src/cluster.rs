//! g-vectors and the cluster character `CC(M) = Σ_e χ(Gr_e(M)) x^{Be + g_M}`.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::ar::{ArQuiver, VertexId};
use crate::grassmann::FTable;
use crate::homalg::ModuleExpr;
use crate::poly::Laurent;
use crate::quiver::{DimVector, QuiverMatrices};
use crate::scalar::Integer;
use crate::LaurentPolynomial;

/// Coordinates of `−[M]` in the basis of injectives.
pub type GVector = DimVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClusterError {
    #[error("{0} and {1} have the same cluster character")]
    Duplicate(String, String),
}

/// `g_M = −H · dim M`.
pub fn g_vector(mats: &QuiverMatrices, d: &DimVector) -> GVector {
    -mats.euler.apply(d)
}

/// `g^M = −H^t · dim M`.
pub fn coindex(mats: &QuiverMatrices, d: &DimVector) -> GVector {
    -mats.euler.transpose().apply(d)
}

/// The initial cluster variable `x_i`.
pub fn initial_variable(n: usize, i: usize) -> LaurentPolynomial {
    Laurent::var(n, i)
}

/// `CC(m)`, obtained from `F_m` by `y_i ↦ x^{B e_i}` times `x^{g_m}`.
pub fn cc(ar: &ArQuiver, ft: &FTable, m: &ModuleExpr) -> LaurentPolynomial {
    let mats = ar.matrices();
    let n = ar.quiver().vertex_count();
    let columns: Vec<Vec<i64>> = (0..n).map(|i| mats.exchange.column(i).entries().to_vec()).collect();
    let g = g_vector(mats, &m.dim(ar));
    ft.of(m).laurent_substitute(&columns, g.entries()).expect("arity matches the quiver")
}

/// The initial variables followed by `CC(M)` for every indecomposable in AR order.
pub fn cluster_variables(ar: &ArQuiver, ft: &FTable) -> Result<Vec<LaurentPolynomial>, ClusterError> {
    let n = ar.quiver().vertex_count();
    let mut labels: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let mut vars: Vec<LaurentPolynomial> = (0..n).map(|i| initial_variable(n, i)).collect();
    for v in ar.ids() {
        labels.push(ar.vertex(v).label());
        vars.push(cc(ar, ft, &ModuleExpr::indecomposable(v)));
    }
    let mut seen = HashSet::new();
    for (i, x) in vars.iter().enumerate() {
        if !seen.insert(x) {
            let j = vars.iter().position(|y| y == x).expect("seen earlier");
            return Err(ClusterError::Duplicate(labels[j].clone(), labels[i].clone()));
        }
    }
    Ok(vars)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    /// `CC(τM)·CC(M) = CC(E) + 1`.
    Mesh,
    /// `CC(I_k)·x_k = Π_{k→i} x_i · Π_{j→k} CC(I_j) + 1`.
    Injective,
    /// `g_M + g_{τM} + B·dim M = 0`.
    GVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub kind: RelationKind,
    pub subject: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExchangeReport {
    pub quiver: String,
    pub checks: Vec<RelationCheck>,
    /// 1-based vertices of rank-one components, where `B = 0` and the
    /// character of the simple is `2/x_i`.
    pub rank_one_vertices: Vec<usize>,
}

impl ExchangeReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn count(&self, kind: RelationKind) -> usize {
        self.checks.iter().filter(|c| c.kind == kind).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Checks every mesh relation, every injective relation and the g-vector
/// identity of every non-projective indecomposable, exactly.
pub fn verify_exchange(ar: &ArQuiver, ft: &FTable) -> ExchangeReport {
    let q = ar.quiver();
    let n = q.vertex_count();
    let mats = ar.matrices();
    let chars: Vec<LaurentPolynomial> = ar.ids().map(|v| cc(ar, ft, &ModuleExpr::indecomposable(v))).collect();
    let one = Laurent::<Integer>::one(n);
    let mut checks = Vec::new();

    for mesh in ar.meshes() {
        let middle = mesh.middle.iter().fold(one.clone(), |acc, m| &acc * &chars[m.0]);
        let lhs = &chars[mesh.tail.0] * &chars[mesh.head.0];
        checks.push(RelationCheck {
            kind: RelationKind::Mesh,
            subject: ar.vertex(mesh.head).label(),
            passed: lhs == &middle + &one,
        });
    }

    for k in 0..n {
        let ik = ar.injective(k);
        let lhs = &chars[ik.0] * &initial_variable(n, k);
        let out_vars = q.successors(k).fold(one.clone(), |acc, i| &acc * &initial_variable(n, i));
        let in_chars = q.predecessors(k).fold(one.clone(), |acc, j| &acc * &chars[ar.injective(j).0]);
        checks.push(RelationCheck {
            kind: RelationKind::Injective,
            subject: format!("I_{}", k + 1),
            passed: lhs == &(&out_vars * &in_chars) + &one,
        });
    }

    for v in ar.ids() {
        let Some(t) = ar.tau(v) else { continue };
        let d = ar.dim(v);
        let sum = &(&g_vector(mats, d) + &g_vector(mats, ar.dim(t))) + &mats.exchange.apply(d);
        checks.push(RelationCheck { kind: RelationKind::GVector, subject: ar.vertex(v).label(), passed: sum.is_zero() });
    }

    let rank_one_vertices = q.components().iter().filter(|c| c.ty.rank == 1).map(|c| c.offset + 1).collect();
    ExchangeReport { quiver: q.type_label(), checks, rank_one_vertices }
}

/// `g_{τM}` predicted by the Coxeter transformation on g-vectors, `−C^{-1} C^t g_M`,
/// where `C^{-1} = H^t`.
pub fn tau_g_vector(mats: &QuiverMatrices, g: &GVector) -> GVector {
    -mats.euler.transpose().mul(&mats.cartan.transpose()).apply(g)
}

/// `CC` of an indecomposable, for callers holding a [`VertexId`].
pub fn cc_of(ar: &ArQuiver, ft: &FTable, v: VertexId) -> LaurentPolynomial {
    cc(ar, ft, &ModuleExpr::indecomposable(v))
}
