//! Exact symbolic engine for equivariant Thom class representatives.
//!
//! The crate builds, over an exact differential ring of radial functions of
//! `t = |v|^2`, the graded-commutative algebra generated by the fiber
//! coordinates `v^i`, the odd generators `Psi^i`, the curvature generators
//! `Om^{ij}` and (for the Fourier construction) the auxiliary pairs
//! `(varpi_k, b_k)`.  On top of that algebra it runs the full pipeline from an
//! SO(n)-invariant metric `ds^2 = e^phi((dv)^2 + sigma (v.dv)^2)` to the
//! equivariant curvature, the Euler/Thom forms, the `Det M = 0` analysis and
//! the Mathai-Quillen and Harvey-Lawson representatives, together with the
//! numeric normalization checks.
//!
//! Every value is immutable after construction and all operations are pure,
//! so everything here is safe to share between threads.

pub mod expr;
pub mod geometry;
pub mod pfaffian;
pub mod scalar;
pub mod superalgebra;
pub mod thomforms;

pub use expr::{Expr, MetricSpec};
pub use scalar::{Atom, GaussRat, Poly, RadialScalar, ScalarError, Var, ZeroGuard};
pub use superalgebra::{
    Form, FormMatrix, FormMonomial, GrassmannNumber, LieScope, SoNElement, VPoly,
};
pub use geometry::{Christoffel, GeometryError, MMatrix, MetricContext, NMatrix};
