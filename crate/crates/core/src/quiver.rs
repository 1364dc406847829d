//! Dynkin quivers, dimension vectors, the Euler form and the derived integer
//! matrices (Euler, Cartan, exchange, Coxeter).
//!
//! Vertices are `0..n` internally. Text formats and labels are 1-based.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("unknown Dynkin type `{0}`")]
    UnknownType(String),
    #[error("vertex {0} is outside every component")]
    VertexOutOfRange(usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("edge {0}-{1} appears more than once")]
    MultipleEdge(usize, usize),
    #[error("edge {0}-{1} joins two different components")]
    CrossingEdge(usize, usize),
    #[error("{ty}: unexpected edge {a}-{b}")]
    ExtraEdge { ty: DynkinType, a: usize, b: usize },
    #[error("{ty}: missing edge {a}-{b}")]
    MissingEdge { ty: DynkinType, a: usize, b: usize },
    #[error("{ty}: graph is not of this type (wrong branch structure)")]
    WrongShape { ty: DynkinType },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("expected a vector of length {expected}, got {got}")]
    Length { expected: usize, got: usize },
    #[error("vertex index {0} out of range")]
    BadVertex(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DynkinKind {
    A,
    D,
    E,
}

/// A simply-laced Dynkin diagram: `A_n` (n ≥ 1), `D_n` (n ≥ 4), `E_6`, `E_7`, `E_8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynkinType {
    pub kind: DynkinKind,
    pub rank: usize,
}

impl DynkinType {
    pub fn new(kind: DynkinKind, rank: usize) -> Result<Self, QuiverError> {
        let ok = match kind {
            DynkinKind::A => rank >= 1,
            DynkinKind::D => rank >= 4,
            DynkinKind::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(Self { kind, rank })
        } else {
            Err(QuiverError::UnknownType(format!("{:?}{}", kind, rank)))
        }
    }

    pub fn a(rank: usize) -> Self {
        Self::new(DynkinKind::A, rank).expect("A_n needs n >= 1")
    }

    pub fn d(rank: usize) -> Self {
        Self::new(DynkinKind::D, rank).expect("D_n needs n >= 4")
    }

    pub fn e(rank: usize) -> Self {
        Self::new(DynkinKind::E, rank).expect("E_n needs 6 <= n <= 8")
    }

    /// Number of positive roots.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.kind {
            DynkinKind::A => n * (n + 1) / 2,
            DynkinKind::D => n * (n - 1),
            DynkinKind::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
        }
    }

    /// Edges of the diagram in the standard numbering (0-based, `a < b`).
    ///
    /// `A_n`: a path. `D_n`: a path `1..n-2` with `n-1` and `n` attached to
    /// `n-2`. `E_n`: the path `1-2-4-5-...-n` with `3` attached to `4`.
    pub fn standard_edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.kind {
            DynkinKind::A => (0..n - 1).map(|i| (i, i + 1)).collect(),
            DynkinKind::D => {
                let mut edges: Vec<_> = (0..n - 3).map(|i| (i, i + 1)).collect();
                edges.push((n - 3, n - 2));
                edges.push((n - 3, n - 1));
                edges
            }
            DynkinKind::E => {
                let mut edges = vec![(0, 1), (1, 3), (2, 3)];
                edges.extend((3..n - 1).map(|i| (i, i + 1)));
                edges
            }
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = QuiverError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || QuiverError::UnknownType(s.to_string());
        let mut chars = s.chars();
        let kind = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => DynkinKind::A,
            Some('D') => DynkinKind::D,
            Some('E') => DynkinKind::E,
            _ => return Err(bad()),
        };
        let rest = chars.as_str().trim_start_matches('_');
        let rank: usize = rest.parse().map_err(|_| bad())?;
        Self::new(kind, rank).map_err(|_| bad())
    }
}

/// One connected Dynkin component occupying vertices `offset..offset + rank`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Component {
    pub ty: DynkinType,
    pub offset: usize,
}

impl Component {
    pub fn vertices(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.ty.rank
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
}

/// A validated Dynkin quiver, possibly a disjoint union of components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    components: Vec<Component>,
    arrows: Vec<Arrow>,
    n: usize,
}

impl Quiver {
    /// Builds a quiver from component types and 1-based arrows `(s, t)`.
    ///
    /// Components take consecutive vertex blocks in the order given. Each
    /// component's underlying graph must be the named diagram; a relabelling
    /// of the standard numbering is accepted.
    pub fn new(types: &[DynkinType], arrows: &[(usize, usize)]) -> Result<Self, QuiverError> {
        let mut components = Vec::with_capacity(types.len());
        let mut offset = 0;
        for &ty in types {
            components.push(Component { ty, offset });
            offset += ty.rank;
        }
        let n = offset;
        let component_of = |v: usize| components.iter().position(|c| c.vertices().contains(&v));

        let mut seen = BTreeSet::new();
        let mut parsed = Vec::with_capacity(arrows.len());
        for &(s, t) in arrows {
            if s == 0 || s > n {
                return Err(QuiverError::VertexOutOfRange(s));
            }
            if t == 0 || t > n {
                return Err(QuiverError::VertexOutOfRange(t));
            }
            if s == t {
                return Err(QuiverError::Loop(s));
            }
            if !seen.insert((s.min(t), s.max(t))) {
                return Err(QuiverError::MultipleEdge(s, t));
            }
            if component_of(s - 1) != component_of(t - 1) {
                return Err(QuiverError::CrossingEdge(s, t));
            }
            parsed.push(Arrow { source: s - 1, target: t - 1 });
        }

        for c in &components {
            let local: Vec<(usize, usize)> = parsed
                .iter()
                .filter(|a| c.vertices().contains(&a.source))
                .map(|a| {
                    let (x, y) = (a.source - c.offset, a.target - c.offset);
                    (x.min(y), x.max(y))
                })
                .collect();
            check_component(c, &local)?;
        }

        Ok(Self { components, arrows: parsed, n })
    }

    /// A quiver with a single component.
    pub fn dynkin(ty: DynkinType, arrows: &[(usize, usize)]) -> Result<Self, QuiverError> {
        Self::new(&[ty], arrows)
    }

    /// The standard diagram with every edge oriented from the smaller label
    /// to the larger one.
    pub fn linear(ty: DynkinType) -> Self {
        let arrows: Vec<_> = ty.standard_edges().into_iter().map(|(a, b)| (a + 1, b + 1)).collect();
        Self::dynkin(ty, &arrows).expect("standard diagram is valid")
    }

    /// Standard diagram with orientation chosen by bit `k` of `mask` for the
    /// `k`-th standard edge (set = reversed).
    pub fn with_orientation(ty: DynkinType, mask: u64) -> Self {
        let arrows: Vec<_> = ty
            .standard_edges()
            .into_iter()
            .enumerate()
            .map(|(k, (a, b))| if mask >> k & 1 == 1 { (b + 1, a + 1) } else { (a + 1, b + 1) })
            .collect();
        Self::dynkin(ty, &arrows).expect("standard diagram is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    /// The same diagram with every arrow reversed.
    pub fn opposite(&self) -> Self {
        Self {
            components: self.components.clone(),
            arrows: self.arrows.iter().map(|a| Arrow { source: a.target, target: a.source }).collect(),
            n: self.n,
        }
    }

    pub fn successors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().filter(move |a| a.source == v).map(|a| a.target)
    }

    pub fn predecessors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().filter(move |a| a.target == v).map(|a| a.source)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.successors(v).chain(self.predecessors(v))
    }

    pub fn has_arrow(&self, s: usize, t: usize) -> bool {
        self.arrows.iter().any(|a| a.source == s && a.target == t)
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.successors(v).next().is_none()).collect()
    }

    /// Vertices ordered so that the target of every arrow precedes its source
    /// (sinks first). Ties are broken by the smallest index.
    pub fn sink_first_order(&self) -> Vec<usize> {
        let mut placed = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        while order.len() < self.n {
            let next = (0..self.n)
                .find(|&v| !placed[v] && self.successors(v).all(|w| placed[w]))
                .expect("Dynkin quivers are acyclic");
            placed[next] = true;
            order.push(next);
        }
        order
    }

    /// Number of paths from `from` to `to` (0 or 1 on a tree, 1 when equal).
    pub fn path_count(&self, from: usize, to: usize) -> i64 {
        if from == to {
            return 1;
        }
        self.successors(from).map(|w| self.path_count(w, to)).sum()
    }

    pub fn type_label(&self) -> String {
        self.components.iter().map(|c| c.ty.to_string()).collect::<Vec<_>>().join(" + ")
    }

    pub fn check_len(&self, d: &DimVector) -> Result<(), QuiverError> {
        if d.len() == self.n {
            Ok(())
        } else {
            Err(QuiverError::Length { expected: self.n, got: d.len() })
        }
    }

    /// `⟨e, d⟩ = Σ e_i d_i − Σ_α e_{s(α)} d_{t(α)}`.
    pub fn euler_form(&self, e: &DimVector, d: &DimVector) -> Result<i64, QuiverError> {
        self.check_len(e)?;
        self.check_len(d)?;
        Ok(self.euler_form_unchecked(e, d))
    }

    pub(crate) fn euler_form_unchecked(&self, e: &DimVector, d: &DimVector) -> i64 {
        let diag: i64 = (0..self.n).map(|i| e[i] * d[i]).sum();
        let arrows: i64 = self.arrows.iter().map(|a| e[a.source] * d[a.target]).sum();
        diag - arrows
    }

    /// Simple reflection `s_i`.
    pub fn reflect(&self, i: usize, d: &DimVector) -> Result<DimVector, QuiverError> {
        if i >= self.n {
            return Err(QuiverError::BadVertex(i));
        }
        self.check_len(d)?;
        let mut out = d.clone();
        out[i] = -d[i] + self.neighbors(i).map(|k| d[k]).sum::<i64>();
        Ok(out)
    }

    /// `c_Q^{-1}` as a composition of simple reflections: reflect at the sinks
    /// first, then recurse on the quiver with the sinks removed.
    pub fn coxeter_by_reflections(&self, d: &DimVector) -> Result<DimVector, QuiverError> {
        self.check_len(d)?;
        let mut removed = vec![false; self.n];
        let mut out = d.clone();
        let mut remaining = self.n;
        while remaining > 0 {
            let sinks: Vec<usize> = (0..self.n)
                .filter(|&v| !removed[v] && self.successors(v).all(|w| removed[w]))
                .collect();
            for &s in &sinks {
                out = self.reflect(s, &out)?;
                removed[s] = true;
            }
            remaining -= sinks.len();
        }
        Ok(out)
    }

    /// `Φ · d`.
    pub fn coxeter_apply(&self, d: &DimVector) -> Result<DimVector, QuiverError> {
        self.check_len(d)?;
        Ok(QuiverMatrices::new(self).coxeter.apply(d))
    }

    /// `Φ^{-1} · d = −(H^t)^{-1} H d = −C H d`.
    pub fn coxeter_inverse_apply(&self, d: &DimVector) -> Result<DimVector, QuiverError> {
        self.check_len(d)?;
        let m = QuiverMatrices::new(self);
        Ok(-m.cartan.apply(&m.euler.apply(d)))
    }

    /// Parses the line-oriented quiver description format.
    pub fn parse(text: &str) -> Result<Self, QuiverError> {
        let mut types: Option<Vec<DynkinType>> = None;
        let mut arrows = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| QuiverError::Parse { line: lineno + 1, msg };
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| err(format!("expected `key: value`, got `{line}`")))?;
            match key.trim().to_ascii_lowercase().as_str() {
                "type" => {
                    if types.is_some() {
                        return Err(err("duplicate `type` line".into()));
                    }
                    let parsed = value
                        .split('+')
                        .map(|t| t.parse::<DynkinType>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| err(e.to_string()))?;
                    types = Some(parsed);
                }
                "arrows" => {
                    for item in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                        let (s, t) = item
                            .split_once("->")
                            .ok_or_else(|| err(format!("bad arrow `{item}`")))?;
                        let s: usize = s.trim().parse().map_err(|_| err(format!("bad vertex in `{item}`")))?;
                        let t: usize = t.trim().parse().map_err(|_| err(format!("bad vertex in `{item}`")))?;
                        arrows.push((s, t));
                    }
                }
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        let types = types.ok_or(QuiverError::Parse { line: 0, msg: "missing `type` line".into() })?;
        Self::new(&types, &arrows)
    }

    /// Inverse of [`Quiver::parse`].
    pub fn to_text(&self) -> String {
        let arrows: Vec<String> =
            self.arrows.iter().map(|a| format!("{}->{}", a.source + 1, a.target + 1)).collect();
        format!("type: {}\narrows: {}\n", self.type_label(), arrows.join(", "))
    }
}

fn check_component(c: &Component, local: &[(usize, usize)]) -> Result<(), QuiverError> {
    let ty = c.ty;
    let standard: BTreeSet<(usize, usize)> = ty.standard_edges().into_iter().collect();
    let given: BTreeSet<(usize, usize)> = local.iter().copied().collect();
    if standard == given {
        return Ok(());
    }
    if classify_tree(ty.rank, &given) == Some(ty) {
        return Ok(());
    }
    let label = |v: usize| v + c.offset + 1;
    if given.len() < standard.len() {
        if let Some(&(a, b)) = standard.difference(&given).next() {
            return Err(QuiverError::MissingEdge { ty, a: label(a), b: label(b) });
        }
    }
    match given.difference(&standard).next() {
        Some(&(a, b)) => Err(QuiverError::ExtraEdge { ty, a: label(a), b: label(b) }),
        None => Err(QuiverError::WrongShape { ty }),
    }
}

/// Identifies a tree on `0..n` as a Dynkin diagram by its branch structure.
fn classify_tree(n: usize, edges: &BTreeSet<(usize, usize)>) -> Option<DynkinType> {
    if edges.len() + 1 != n {
        return None;
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return None;
    }
    let branch_points: Vec<usize> = (0..n).filter(|&v| adj[v].len() > 2).collect();
    match branch_points.as_slice() {
        [] => DynkinType::new(DynkinKind::A, n).ok(),
        [center] if adj[*center].len() == 3 => {
            let mut arms: Vec<usize> = adj[*center]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (*center, start, 1);
                    while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            match (arms[0], arms[1]) {
                (1, 1) => DynkinType::new(DynkinKind::D, n).ok(),
                (1, 2) if (2..=4).contains(&arms[2]) => DynkinType::new(DynkinKind::E, n).ok(),
                _ => None,
            }
        }
        _ => None,
    }
}

/// An integer vector indexed by the vertices of a quiver.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(Vec<i64>);

impl DimVector {
    pub fn new(entries: Vec<i64>) -> Self {
        Self(entries)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// The simple root `α_i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self(self.0.iter().map(|x| x * k).collect())
    }

    /// All vectors `f` with `0 ≤ f ≤ self`, ordered by total then lexicographically.
    pub fn box_below(&self) -> Vec<DimVector> {
        let mut out = vec![Vec::with_capacity(self.len())];
        for &bound in &self.0 {
            let bound = bound.max(0);
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=bound).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        let mut out: Vec<DimVector> = out.into_iter().map(DimVector).collect();
        out.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| a.cmp(b)));
        out
    }

    /// Parses comma-separated integers, e.g. `1,0,2`.
    pub fn parse_csv(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| format!("bad integer `{}` in `{s}`", x.trim())))
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
    }
}

impl From<Vec<i64>> for DimVector {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl<const N: usize> From<[i64; N]> for DimVector {
    fn from(v: [i64; N]) -> Self {
        Self(v.to_vec())
    }
}

impl Index<usize> for DimVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for DimVector {
    fn index_mut(&mut self, i: usize) -> &mut i64 {
        &mut self.0[i]
    }
}

impl Add for &DimVector {
    type Output = DimVector;
    fn add(self, rhs: &DimVector) -> DimVector {
        assert_eq!(self.len(), rhs.len(), "dimension vector length mismatch");
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DimVector {
    type Output = DimVector;
    fn sub(self, rhs: &DimVector) -> DimVector {
        assert_eq!(self.len(), rhs.len(), "dimension vector length mismatch");
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for DimVector {
    type Output = DimVector;
    fn add(self, rhs: DimVector) -> DimVector {
        &self + &rhs
    }
}

impl Sub for DimVector {
    type Output = DimVector;
    fn sub(self, rhs: DimVector) -> DimVector {
        &self - &rhs
    }
}

impl Neg for DimVector {
    type Output = DimVector;
    fn neg(self) -> DimVector {
        DimVector(self.0.into_iter().map(|x| -x).collect())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Dense square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntMatrix(Vec<Vec<i64>>);

impl IntMatrix {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        Self((0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| (i == j) as i64)
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.0
    }

    pub fn row(&self, i: usize) -> DimVector {
        DimVector(self.0[i].clone())
    }

    pub fn column(&self, j: usize) -> DimVector {
        DimVector(self.0.iter().map(|r| r[j]).collect())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.size(), |i, j| self.0[j][i])
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.size();
        Self::from_fn(n, |i, j| (0..n).map(|k| self.0[i][k] * other.0[k][j]).sum())
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.size(), |i, j| -self.0[i][j])
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(self.size(), |i, j| self.0[i][j] - other.0[i][j])
    }

    pub fn apply(&self, d: &DimVector) -> DimVector {
        DimVector(self.0.iter().map(|r| r.iter().zip(d.entries()).map(|(a, b)| a * b).sum()).collect())
    }
}

/// The integer matrices attached to a quiver, all in the basis of simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuiverMatrices {
    /// `H`: `⟨e, d⟩ = e^t H d`.
    pub euler: IntMatrix,
    /// `C`: `c_ij` = number of paths `j → i`; column `j` is `dim P_j`.
    pub cartan: IntMatrix,
    /// `B = H − H^t`.
    pub exchange: IntMatrix,
    /// `Φ = −H^{-1} H^t`.
    pub coxeter: IntMatrix,
}

impl QuiverMatrices {
    pub fn new(q: &Quiver) -> Self {
        let n = q.vertex_count();
        let euler = IntMatrix::from_fn(n, |i, j| {
            if i == j {
                1
            } else if q.has_arrow(i, j) {
                -1
            } else {
                0
            }
        });
        let cartan = IntMatrix::from_fn(n, |i, j| q.path_count(j, i));
        // C^t H = 1, so H^{-1} = C^t.
        assert_eq!(cartan.transpose().mul(&euler), IntMatrix::identity(n), "C^t H must be the identity");
        let exchange = euler.sub(&euler.transpose());
        let coxeter = cartan.transpose().mul(&euler.transpose()).neg();
        Self { euler, cartan, exchange, coxeter }
    }

    /// `dim P_j`.
    pub fn projective_dim(&self, j: usize) -> DimVector {
        self.cartan.column(j)
    }

    /// `dim I_k`.
    pub fn injective_dim(&self, k: usize) -> DimVector {
        self.cartan.row(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Quiver {
        Quiver::dynkin(DynkinType::a(2), &[(1, 2)]).unwrap()
    }

    fn d4_subspace() -> Quiver {
        Quiver::dynkin(DynkinType::d(4), &[(1, 4), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn builds_small_quivers() {
        assert_eq!(a2().arrows().len(), 1);
        let a3 = Quiver::dynkin(DynkinType::a(3), &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(a3.sinks(), vec![2]);
        assert_eq!(d4_subspace().vertex_count(), 4);
    }

    #[test]
    fn rejects_wrong_diagrams() {
        let err = Quiver::dynkin(DynkinType::a(3), &[(1, 2), (2, 3), (1, 3)]).unwrap_err();
        assert!(matches!(err, QuiverError::ExtraEdge { a: 1, b: 3, .. }), "{err}");
        let err = Quiver::dynkin(DynkinType::a(3), &[(1, 2)]).unwrap_err();
        assert!(matches!(err, QuiverError::MissingEdge { a: 2, b: 3, .. }), "{err}");
        // a D4 star is not A4
        let err = Quiver::dynkin(DynkinType::a(4), &[(1, 4), (2, 4), (3, 4)]).unwrap_err();
        assert!(matches!(err, QuiverError::ExtraEdge { .. } | QuiverError::MissingEdge { .. }));
        assert!(matches!(
            Quiver::dynkin(DynkinType::a(2), &[(1, 1)]).unwrap_err(),
            QuiverError::Loop(1)
        ));
        assert!(matches!(
            Quiver::dynkin(DynkinType::a(2), &[(1, 2), (2, 1)]).unwrap_err(),
            QuiverError::MultipleEdge(2, 1)
        ));
        assert!(matches!(
            Quiver::dynkin(DynkinType::a(2), &[(1, 3)]).unwrap_err(),
            QuiverError::VertexOutOfRange(3)
        ));
        assert!(Quiver::new(&[DynkinType::a(1), DynkinType::a(1)], &[(1, 2)]).is_err());
    }

    #[test]
    fn relabelled_diagrams_are_accepted() {
        // E6 with the branch vertex labelled 1
        let q = Quiver::dynkin(DynkinType::e(6), &[(1, 2), (2, 3), (1, 4), (4, 5), (1, 6)]).unwrap();
        assert_eq!(q.vertex_count(), 6);
        assert!(Quiver::dynkin(DynkinType::e(7), &[(1, 2), (1, 3), (3, 4), (1, 5), (5, 6), (6, 7)]).is_ok());
        // arms (2,2,2) is affine E6
        assert!(Quiver::dynkin(DynkinType::e(7), &[(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)]).is_err());
        assert!(Quiver::dynkin(DynkinType::d(7), &[(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)]).is_err());
    }

    #[test]
    fn euler_form_values() {
        let q = a2();
        assert_eq!(q.euler_form(&[1, 0].into(), &[0, 1].into()).unwrap(), -1);
        assert_eq!(q.euler_form(&[1, 1].into(), &[1, 1].into()).unwrap(), 1);
        assert_eq!(q.euler_form(&[3, 5].into(), &[0, 0].into()).unwrap(), 0);
        assert!(q.euler_form(&[1].into(), &[0, 1].into()).is_err());
    }

    #[test]
    fn a2_matrices() {
        let m = QuiverMatrices::new(&a2());
        assert_eq!(m.euler.rows(), &[vec![1, -1], vec![0, 1]]);
        assert_eq!(m.cartan.rows(), &[vec![1, 0], vec![1, 1]]);
        assert_eq!(m.exchange.rows(), &[vec![0, -1], vec![1, 0]]);
        assert_eq!(m.coxeter.rows(), &[vec![0, -1], vec![1, -1]]);
    }

    #[test]
    fn a1_matrices() {
        let m = QuiverMatrices::new(&Quiver::linear(DynkinType::a(1)));
        assert_eq!(m.euler.rows(), &[vec![1]]);
        assert_eq!(m.cartan.rows(), &[vec![1]]);
        assert_eq!(m.exchange.rows(), &[vec![0]]);
        assert_eq!(m.coxeter.rows(), &[vec![-1]]);
    }

    #[test]
    fn d4_projective_at_sink() {
        let m = QuiverMatrices::new(&d4_subspace());
        assert_eq!(m.projective_dim(3), DimVector::from([0, 0, 0, 1]));
        assert_eq!(m.projective_dim(0), DimVector::from([1, 0, 0, 1]));
        assert_eq!(m.injective_dim(3), DimVector::from([1, 1, 1, 1]));
    }

    #[test]
    fn reflections() {
        let q = a2();
        assert_eq!(q.reflect(0, &[1, 0].into()).unwrap(), DimVector::from([-1, 0]));
        assert_eq!(q.reflect(1, &[1, 0].into()).unwrap(), DimVector::from([1, 1]));
        assert!(q.reflect(2, &[1, 0].into()).is_err());
        let d = DimVector::from([3, -2]);
        for i in 0..2 {
            assert_eq!(q.reflect(i, &q.reflect(i, &d).unwrap()).unwrap(), d);
        }
    }

    #[test]
    fn coxeter_examples() {
        let q = a2();
        assert_eq!(q.coxeter_apply(&[1, 0].into()).unwrap(), DimVector::from([0, 1]));
        assert_eq!(q.coxeter_apply(&[1, 1].into()).unwrap(), DimVector::from([-1, 0]));
        assert_eq!(
            Quiver::linear(DynkinType::a(1)).coxeter_apply(&[1].into()).unwrap(),
            DimVector::from([-1])
        );
        assert_eq!(q.coxeter_by_reflections(&[1, 0].into()).unwrap(), DimVector::from([0, 1]));
        let d = DimVector::from([2, 7]);
        assert_eq!(q.coxeter_inverse_apply(&q.coxeter_apply(&d).unwrap()).unwrap(), d);
    }

    #[test]
    fn parses_quiver_files() {
        let q = Quiver::parse("# the subspace quiver\ntype: D4\narrows: 1->4, 2 -> 4,3->4  # star\n").unwrap();
        assert_eq!(q, d4_subspace());
        assert_eq!(Quiver::parse(&q.to_text()).unwrap(), q);
        let u = Quiver::parse("type: A2 + A1\narrows: 2->1").unwrap();
        assert_eq!(u.components().len(), 2);
        assert!(Quiver::parse("arrows: 1->2").is_err());
        assert!(matches!(Quiver::parse("type: X9").unwrap_err(), QuiverError::Parse { line: 1, .. }));
        assert!(matches!(Quiver::parse("type: A2\narrows: 1=>2").unwrap_err(), QuiverError::Parse { line: 2, .. }));
    }

    #[test]
    fn box_is_graded() {
        let b = DimVector::from([1, 2]).box_below();
        assert_eq!(b.len(), 6);
        assert!(b.windows(2).all(|w| w[0].total() <= w[1].total()));
        assert_eq!(b[0], DimVector::zeros(2));
    }
}
