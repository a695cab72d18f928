//! Exact arithmetic kernel.
//!
//! The ground field is the arbitrary-precision rationals
//! ([`scalar::ExactScalar`]). On top of it sit sparse multivariate
//! polynomials in named indeterminates ([`poly::MultiPoly`]), normalized
//! rational functions ([`expr::Expr`]), symbolic differentiation driven by
//! derivation rules ([`derivation::DerivationEnv`]) and quadratic
//! square-root extensions ([`extension::SqrtExtension`]).

pub mod derivation;
pub mod expr;
pub mod extension;
pub mod gcd;
pub mod linalg;
pub mod parser;
pub mod poly;
pub mod printer;
pub mod scalar;
pub mod symbol;
