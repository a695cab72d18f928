//! Exact symbolic differential geometry of parametric surfaces.
//!
//! The crate is organized in layers:
//!
//! * [`algebra`] — the exact arithmetic kernel: arbitrary-precision
//!   rationals, sparse multivariate polynomials, normalized rational
//!   functions, derivation rules and quadratic square-root extensions.
//! * [`geometry`] — charts, fundamental forms, curvatures and second
//!   Beltrami operators, plus operator application and iteration.
//! * [`ruled`] / [`quadric`] — the two surface families with their
//!   specialized operator expansions, iterate ledgers and leading-term
//!   laws.
//! * [`finite_type`] — iterate computation, exact minimal-relation
//!   detection and verdict assembly.
//! * [`catalog`] — named surface constructors addressable from the CLI.
//!
//! All values are immutable after construction and all operations are
//! pure; everything is safe to share across threads.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod finite_type;
pub mod geometry;
pub mod quadric;
pub mod report;
pub mod ruled;

pub use algebra::expr::Expr;
pub use algebra::derivation::DerivationEnv;
pub use algebra::extension::SqrtExtension;
pub use algebra::poly::{Degree, MultiPoly};
pub use algebra::scalar::ExactScalar;
pub use algebra::symbol::{IndetKind, Indeterminate};
pub use error::{CoreError, Result};
