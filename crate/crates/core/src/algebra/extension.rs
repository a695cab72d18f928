//! Quadratic square-root extension, exposed as elements `p + q W`.
//!
//! The root itself lives inside the polynomial layer (squares rewrite to
//! the radicand), so extension elements are ordinary [`Expr`]s. This type
//! pins down one registered root and provides the element-level operations
//! with the mismatch checks.

use std::sync::Arc;

use crate::algebra::derivation::DerivationEnv;
use crate::algebra::expr::Expr;
use crate::algebra::symbol::Indeterminate;
use crate::error::{CoreError, Result};

pub struct SqrtExtension {
    root: Indeterminate,
    radicand: Expr,
}

impl SqrtExtension {
    /// Registers (or reuses) the root with `W^2 = radicand` in the
    /// environment.
    pub fn register(env: &Arc<DerivationEnv>, radicand: Expr) -> Result<SqrtExtension> {
        let w = env.register_sqrt(&radicand)?;
        // The registered square root may carry extracted square factors;
        // the designated root symbol is the remaining root indeterminate.
        let root = w
            .vars()
            .into_iter()
            .find(|v| v.is_root())
            .ok_or_else(|| {
                CoreError::ExtensionMismatch("radicand is a perfect square".to_string())
            })?;
        Ok(SqrtExtension { root, radicand })
    }

    pub fn root(&self) -> &Indeterminate {
        &self.root
    }

    pub fn root_expr(&self) -> Expr {
        Expr::var(&self.root)
    }

    pub fn radicand(&self) -> &Expr {
        &self.radicand
    }

    /// Builds `p + q W`.
    pub fn element(&self, p: &Expr, q: &Expr) -> Expr {
        p + q * self.root_expr()
    }

    /// Splits an element into its rational and root parts, rejecting
    /// elements that involve a different root.
    pub fn parts(&self, e: &Expr) -> Result<(Expr, Expr)> {
        for v in e.vars() {
            if v.is_root() && v != self.root {
                return Err(CoreError::ExtensionMismatch(format!(
                    "element involves `{}`, not `{}`",
                    v.display_name(),
                    self.root.display_name()
                )));
            }
        }
        let p = e.coeff_of_power(&self.root, 0)?;
        let q = e.coeff_of_power(&self.root, 1)?;
        Ok((p, q))
    }

    pub fn is_rational(&self, e: &Expr) -> Result<bool> {
        let (_, q) = self.parts(e)?;
        Ok(q.is_zero())
    }

    /// `(p + qW)(r + sW) = (pr + qs g) + (ps + qr) W`.
    pub fn ext_mul(&self, x: &Expr, y: &Expr) -> Result<Expr> {
        self.parts(x)?;
        self.parts(y)?;
        Ok(x * y)
    }

    pub fn conjugate(&self, e: &Expr) -> Result<Expr> {
        let (p, q) = self.parts(e)?;
        Ok(p - q * self.root_expr())
    }

    /// Division by conjugation, defined whenever the norm `p^2 - q^2 g` is
    /// nonzero.
    pub fn ext_div(&self, x: &Expr, y: &Expr) -> Result<Expr> {
        self.parts(x)?;
        self.parts(y)?;
        x.checked_div(y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_relation() {
        let env = DerivationEnv::new();
        let t = env.chart_var("t").unwrap();
        let g = Expr::var(&t).pow(2).unwrap() + Expr::int(1);
        let ext = SqrtExtension::register(&env, g.clone()).unwrap();
        let w = ext.root_expr();
        assert_eq!(ext.ext_mul(&w, &w).unwrap(), g);
    }

    #[test]
    fn conjugate_product_is_norm() {
        let env = DerivationEnv::new();
        let t = env.chart_var("t").unwrap();
        let g = Expr::var(&t).pow(2).unwrap() + Expr::int(1);
        let ext = SqrtExtension::register(&env, g.clone()).unwrap();
        let one_plus = Expr::one() + ext.root_expr();
        let one_minus = ext.conjugate(&one_plus).unwrap();
        assert_eq!(ext.ext_mul(&one_plus, &one_minus).unwrap(), Expr::one() - g);
    }

    #[test]
    fn rationalization() {
        // (m/W) * (1/W) = m/g
        let env = DerivationEnv::new();
        let t = env.chart_var("t").unwrap();
        let m = env.param("m").unwrap();
        let g = Expr::var(&t).pow(2).unwrap() + Expr::int(1);
        let ext = SqrtExtension::register(&env, g.clone()).unwrap();
        let w = ext.root_expr();
        let lhs = ext
            .ext_mul(
                &Expr::var(&m).checked_div(&w).unwrap(),
                &Expr::one().checked_div(&w).unwrap(),
            )
            .unwrap();
        assert_eq!(lhs, Expr::var(&m) / g);
        assert!(ext.is_rational(&lhs).unwrap());
    }

    #[test]
    fn mismatch_detected() {
        let env = DerivationEnv::new();
        let t = env.chart_var("t").unwrap();
        let g1 = Expr::var(&t).pow(2).unwrap() + Expr::int(1);
        let g2 = Expr::var(&t).pow(2).unwrap() + Expr::int(2);
        let e1 = SqrtExtension::register(&env, g1).unwrap();
        let e2 = SqrtExtension::register(&env, g2).unwrap();
        let w2 = e2.root_expr();
        assert!(matches!(
            e1.ext_mul(&w2, &w2),
            Err(CoreError::ExtensionMismatch(_))
        ));
    }
}
