//! Representations of Dynkin quivers: Auslander–Reiten theory, quiver
//! Grassmannians, F-polynomials and cluster characters.

pub mod ar;
pub mod cluster;
pub mod grassmann;
pub mod homalg;
pub mod oracle;
pub mod poly;
pub mod quiver;
pub mod scalar;

pub use ar::{ArError, ArQuiver, ArVertex, Mesh, VertexId};
pub use cluster::{ClusterError, ExchangeReport, GVector};
pub use grassmann::{FTable, GrassmannError, PoincareMap, PoincareTable};
pub use homalg::{HomalgError, ModuleExpr};
pub use oracle::{ExplicitRep, FieldSpec, OracleError};
pub use poly::UniPoly;
pub use poly::{Laurent, PolyError, Polynomial, SparsePoly, TermRepr};
pub use quiver::{DimVector, DynkinKind, DynkinType, IntMatrix, Quiver, QuiverError, QuiverMatrices};
pub use scalar::{Integer, Rational};

/// Polynomials in `y_1, …, y_n` with integer coefficients.
pub type IntPolynomial = Polynomial<Integer>;
/// Laurent polynomials in `x_1, …, x_n` with integer coefficients.
pub type LaurentPolynomial = Laurent<Integer>;
/// Polynomials in one variable `q` with integer coefficients.
pub type OneVarPolynomial = UniPoly<Integer>;
