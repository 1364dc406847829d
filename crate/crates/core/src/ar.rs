//! Knitting the Auslander–Reiten quiver of a Dynkin quiver.
//!
//! Vertices `(i;k)` are the indecomposables `τ^{-k} P_i`. Slice `k + 1` is
//! computed from slice `k` through the mesh relation
//!
//! ```text
//! dim M(i;k+1) = Σ_{j→i} dim M(j;k) + Σ_{i→j} dim M(j;k+1) − dim M(i;k)
//! ```
//!
//! processing each slice sinks-first so that the `M(j;k+1)` terms are known.
//! An orbit stops when the candidate vector is not a nonzero non-negative
//! vector; the last vertex of the orbit of `P_i` must then be `I_i`.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::homalg;
use crate::quiver::{DimVector, Quiver, QuiverMatrices};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArError {
    #[error("knitting produced {dim} at {label}, which is not a positive root")]
    NotARoot { label: String, dim: DimVector },
    #[error("orbit of P_{orbit} ends at {dim}, which is not an injective")]
    BadOrbitEnd { orbit: usize, dim: DimVector },
    #[error("dimension vector {0} produced twice")]
    Duplicate(DimVector),
    #[error("knitted {got} indecomposables, expected {expected}")]
    Count { got: usize, expected: usize },
    #[error("negative Ext dimension between {0} and {1}")]
    NegativeExt(String, String),
    #[error("{0} is projective and has no almost split sequence ending in it")]
    Projective(String),
    #[error("{0} is not a positive root of this quiver")]
    NotARootQuery(DimVector),
}

/// Index of an indecomposable in the AR order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArVertex {
    pub id: VertexId,
    /// Quiver vertex `i` of the τ-orbit of `P_i`.
    pub orbit: usize,
    /// `k` in `M(i;k) = τ^{-k} P_i`.
    pub slice: usize,
    pub dim: DimVector,
    pub is_projective: bool,
    pub is_injective: bool,
}

impl ArVertex {
    pub fn label(&self) -> String {
        format!("M({};{})", self.orbit + 1, self.slice)
    }
}

/// An almost split sequence `0 → tail → ⊕ middle → head → 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mesh {
    pub tail: VertexId,
    pub middle: Vec<VertexId>,
    pub head: VertexId,
}

#[derive(Debug, Clone)]
pub struct ArQuiver {
    quiver: Quiver,
    matrices: QuiverMatrices,
    vertices: Vec<ArVertex>,
    meshes: Vec<Option<Mesh>>,
    by_position: HashMap<(usize, usize), VertexId>,
    by_dim: HashMap<DimVector, VertexId>,
    pub(crate) hom: Vec<Vec<i64>>,
    pub(crate) ext: Vec<Vec<i64>>,
}

impl ArQuiver {
    pub fn knit(quiver: &Quiver) -> Result<Self, ArError> {
        let n = quiver.vertex_count();
        let matrices = QuiverMatrices::new(quiver);
        let order = quiver.sink_first_order();

        // dims[i][k] = dim M(i;k)
        let mut dims: Vec<Vec<DimVector>> = (0..n).map(|i| vec![matrices.projective_dim(i)]).collect();
        let mut alive = vec![true; n];
        let mut injective_hit = vec![false; n];
        let mut k = 0;
        while alive.iter().any(|&a| a) {
            for &i in &order {
                if !alive[i] {
                    continue;
                }
                let mut cand = -dims[i][k].clone();
                for j in quiver.predecessors(i) {
                    if let Some(d) = dims[j].get(k) {
                        cand = &cand + d;
                    }
                }
                for j in quiver.successors(i) {
                    if let Some(d) = dims[j].get(k + 1) {
                        cand = &cand + d;
                    }
                }
                if cand.is_nonnegative() && !cand.is_zero() {
                    dims[i].push(cand);
                } else {
                    alive[i] = false;
                    let Some(j) = (0..n).find(|&j| matrices.injective_dim(j) == dims[i][k]) else {
                        return Err(ArError::BadOrbitEnd { orbit: i + 1, dim: dims[i][k].clone() });
                    };
                    if std::mem::replace(&mut injective_hit[j], true) {
                        return Err(ArError::Duplicate(dims[i][k].clone()));
                    }
                }
            }
            k += 1;
        }

        let mut vertices = Vec::new();
        let mut by_position = HashMap::new();
        let mut by_dim = HashMap::new();
        let slices = dims.iter().map(Vec::len).max().unwrap_or(0);
        for k in 0..slices {
            for &i in &order {
                let Some(d) = dims[i].get(k) else { continue };
                let id = VertexId(vertices.len());
                let v = ArVertex {
                    id,
                    orbit: i,
                    slice: k,
                    dim: d.clone(),
                    is_projective: k == 0,
                    is_injective: k + 1 == dims[i].len(),
                };
                if quiver.euler_form_unchecked(d, d) != 1 {
                    return Err(ArError::NotARoot { label: v.label(), dim: d.clone() });
                }
                if by_dim.insert(d.clone(), id).is_some() {
                    return Err(ArError::Duplicate(d.clone()));
                }
                by_position.insert((i, k), id);
                vertices.push(v);
            }
        }
        let expected: usize = quiver.components().iter().map(|c| c.ty.positive_root_count()).sum();
        if vertices.len() != expected {
            return Err(ArError::Count { got: vertices.len(), expected });
        }

        let meshes = vertices
            .iter()
            .map(|v| {
                if v.is_projective {
                    return None;
                }
                let (i, k) = (v.orbit, v.slice - 1);
                let mut middle: Vec<VertexId> =
                    quiver.predecessors(i).filter_map(|j| by_position.get(&(j, k)).copied()).collect();
                middle.extend(quiver.successors(i).filter_map(|j| by_position.get(&(j, k + 1)).copied()));
                middle.sort();
                Some(Mesh { tail: by_position[&(i, k)], middle, head: v.id })
            })
            .collect();

        let mut ar = Self {
            quiver: quiver.clone(),
            matrices,
            vertices,
            meshes,
            by_position,
            by_dim,
            hom: Vec::new(),
            ext: Vec::new(),
        };
        for mesh in ar.meshes.iter().flatten() {
            let mid = mesh.middle.iter().fold(DimVector::zeros(n), |acc, &m| &acc + &ar.vertices[m.0].dim);
            let ends = &ar.vertices[mesh.tail.0].dim + &ar.vertices[mesh.head.0].dim;
            assert_eq!(mid, ends, "mesh additivity");
        }
        let (hom, ext) = homalg::tables(&ar)?;
        ar.hom = hom;
        ar.ext = ext;
        Ok(ar)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn matrices(&self) -> &QuiverMatrices {
        &self.matrices
    }

    /// All indecomposables, in the AR total order.
    pub fn vertices(&self) -> &[ArVertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, id: VertexId) -> &ArVertex {
        &self.vertices[id.0]
    }

    pub fn dim(&self, id: VertexId) -> &DimVector {
        &self.vertices[id.0].dim
    }

    pub fn ids(&self) -> impl DoubleEndedIterator<Item = VertexId> + ExactSizeIterator {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn at(&self, orbit: usize, slice: usize) -> Option<VertexId> {
        self.by_position.get(&(orbit, slice)).copied()
    }

    /// All almost split sequences, in the order of their heads.
    pub fn meshes(&self) -> impl Iterator<Item = &Mesh> {
        self.meshes.iter().flatten()
    }

    pub fn mesh_of(&self, head: VertexId) -> Result<&Mesh, ArError> {
        self.meshes[head.0].as_ref().ok_or_else(|| ArError::Projective(self.vertex(head).label()))
    }

    pub fn vertex_by_dim(&self, d: &DimVector) -> Result<VertexId, ArError> {
        self.by_dim.get(d).copied().ok_or_else(|| ArError::NotARootQuery(d.clone()))
    }

    /// `τ v`, or `None` when `v` is projective.
    pub fn tau(&self, v: VertexId) -> Option<VertexId> {
        let x = self.vertex(v);
        x.slice.checked_sub(1).and_then(|k| self.at(x.orbit, k))
    }

    /// `τ^{-1} v`, or `None` when `v` is injective.
    pub fn tau_inverse(&self, v: VertexId) -> Option<VertexId> {
        let x = self.vertex(v);
        self.at(x.orbit, x.slice + 1)
    }

    pub fn projective(&self, i: usize) -> VertexId {
        self.at(i, 0).expect("every vertex has a projective")
    }

    /// `I_k`, located by its dimension vector (row `k` of the Cartan matrix).
    pub fn injective(&self, k: usize) -> VertexId {
        self.by_dim[&self.matrices.injective_dim(k)]
    }

    pub fn simple(&self, i: usize) -> VertexId {
        self.by_dim[&DimVector::unit(self.quiver.vertex_count(), i)]
    }

    /// Graphviz rendering: one node per indecomposable, irreducible maps as
    /// solid edges and τ as dashed edges.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph ar_quiver {\n  rankdir=LR;\n  node [shape=box];\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  v{} [label=\"{} dim={}\"];", v.id.0, v.label(), v.dim);
        }
        let mut arrows = std::collections::BTreeSet::new();
        for mesh in self.meshes() {
            for &m in &mesh.middle {
                arrows.insert((mesh.tail, m));
                arrows.insert((m, mesh.head));
            }
        }
        for (a, b) in &arrows {
            let _ = writeln!(out, "  v{} -> v{};", a.0, b.0);
        }
        for mesh in self.meshes() {
            let _ = writeln!(out, "  v{} -> v{} [style=dashed, arrowhead=none];", mesh.head.0, mesh.tail.0);
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> ArQuiverJson {
        let label = |id: VertexId| self.vertex(id).label();
        ArQuiverJson {
            quiver: self.quiver.type_label(),
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexJson {
                    label: v.label(),
                    orbit: v.orbit + 1,
                    slice: v.slice,
                    dim: v.dim.clone(),
                    projective: v.is_projective,
                    injective: v.is_injective,
                })
                .collect(),
            meshes: self
                .meshes()
                .map(|m| MeshJson {
                    tail: label(m.tail),
                    middle: m.middle.iter().map(|&x| label(x)).collect(),
                    head: label(m.head),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VertexJson {
    pub label: String,
    pub orbit: usize,
    pub slice: usize,
    pub dim: DimVector,
    pub projective: bool,
    pub injective: bool,
}

#[derive(Debug, Serialize)]
pub struct MeshJson {
    pub tail: String,
    pub middle: Vec<String>,
    pub head: String,
}

#[derive(Debug, Serialize)]
pub struct ArQuiverJson {
    pub quiver: String,
    pub vertices: Vec<VertexJson>,
    pub meshes: Vec<MeshJson>,
}
