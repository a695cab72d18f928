//! Normalized rational functions.
//!
//! An [`Expr`] is a quotient of two [`MultiPoly`]s kept in canonical form:
//! the denominator is free of algebraic indeterminates (roots are removed
//! by conjugation), the fraction is reduced by the polynomial gcd, and the
//! denominator has primitive integer coefficients with positive leading
//! sign. Structural equality of canonical forms therefore coincides with
//! mathematical equality, and `eq` by cross-multiplication is provided as
//! the defining check.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::algebra::gcd::{exact_div, poly_gcd};
use crate::algebra::poly::{Degree, MultiPoly};
use crate::algebra::scalar::ExactScalar;
use crate::algebra::symbol::{IndetKind, Indeterminate};
use crate::error::{CoreError, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Expr {
    num: MultiPoly,
    den: MultiPoly,
}

impl Expr {
    /// Builds `num/den` in canonical form.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Expr> {
        if den.is_zero() {
            return Err(CoreError::ZeroDenominator);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: MultiPoly, den: MultiPoly) -> Expr {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Expr { num, den: MultiPoly::one() };
        }
        let (mut num, mut den) = rationalize(num, den);
        if !den.is_constant() {
            let g = poly_gcd(&num, &den);
            if !g.is_one() {
                num = exact_div(&num, &g).expect("gcd divides numerator");
                den = exact_div(&den, &g).expect("gcd divides denominator");
            }
        }
        // Scale so the denominator is integer-primitive with positive
        // leading coefficient.
        let mut k = den.content();
        if den.leading_sign() < 0 {
            k = -k;
        }
        let k = k.recip().expect("nonzero denominator content");
        Expr { num: num.scale(&k), den: den.scale(&k) }
    }

    pub fn zero() -> Expr {
        Expr { num: MultiPoly::zero(), den: MultiPoly::one() }
    }

    pub fn one() -> Expr {
        Expr { num: MultiPoly::one(), den: MultiPoly::one() }
    }

    pub fn int(n: i64) -> Expr {
        Expr { num: MultiPoly::int(n), den: MultiPoly::one() }
    }

    pub fn scalar(c: ExactScalar) -> Expr {
        Expr { num: MultiPoly::constant(c), den: MultiPoly::one() }
    }

    pub fn var(x: &Indeterminate) -> Expr {
        Expr { num: MultiPoly::var(x), den: MultiPoly::one() }
    }

    pub fn from_poly(p: MultiPoly) -> Expr {
        Expr { num: p.reduced(), den: MultiPoly::one() }
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<ExactScalar> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    /// Equality by cross-multiplication: `p/q = r/s  iff  p·s - r·q = 0`.
    pub fn eq_expr(&self, other: &Expr) -> bool {
        (&self.num * &other.den - &other.num * &self.den).is_zero()
    }

    pub fn recip(&self) -> Result<Expr> {
        if self.is_zero() {
            return Err(CoreError::ZeroDenominator);
        }
        Ok(Expr::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Expr) -> Result<Expr> {
        if other.is_zero() {
            return Err(CoreError::ZeroDenominator);
        }
        Ok(self * &other.recip()?)
    }

    /// Integer power; negative exponents invert (error on zero base).
    pub fn pow(&self, e: i32) -> Result<Expr> {
        if e < 0 {
            return self.recip()?.pow(-e);
        }
        Ok(Expr::canonical(self.num.pow(e as u32), self.den.pow(e as u32)))
    }

    pub fn degree_in(&self, x: &Indeterminate) -> Degree {
        if self.is_zero() {
            return Degree::NegInf;
        }
        if self.den.contains_var(x) {
            return Degree::Infinite;
        }
        self.num.degree_in(x)
    }

    /// Total degree in the given indeterminates, `+inf` when any of them
    /// occurs in the denominator.
    pub fn degree_in_set(&self, vars: &[Indeterminate]) -> Degree {
        if self.is_zero() {
            return Degree::NegInf;
        }
        if vars.iter().any(|x| self.den.contains_var(x)) {
            return Degree::Infinite;
        }
        self.num.degree_in_set(vars)
    }

    /// Coefficient of `x^k`; requires the denominator to be free of `x`.
    pub fn coeff_of_power(&self, x: &Indeterminate, k: u32) -> Result<Expr> {
        if self.den.contains_var(x) {
            return Err(CoreError::NonPolynomial(x.display_name()));
        }
        Expr::new(self.num.coeff_of_power(x, k), self.den.clone())
    }

    /// All `x`-degree slices, highest first; denominator must be free of `x`.
    pub fn collect_in(&self, x: &Indeterminate) -> Result<Vec<(u32, Expr)>> {
        if self.den.contains_var(x) {
            return Err(CoreError::NonPolynomial(x.display_name()));
        }
        let mut out: Vec<(u32, Expr)> = self
            .num
            .by_powers_of(x)
            .into_iter()
            .map(|(k, p)| (k, Expr::canonical(p, self.den.clone())))
            .collect();
        out.reverse();
        Ok(out)
    }

    pub fn contains_var(&self, x: &Indeterminate) -> bool {
        self.num.contains_var(x) || self.den.contains_var(x)
    }

    pub fn contains_kind(&self, pred: impl Fn(&IndetKind) -> bool + Copy) -> bool {
        self.num.contains_kind(pred) || self.den.contains_kind(pred)
    }

    /// True when no extension root occurs.
    pub fn is_root_free(&self) -> bool {
        !self.contains_kind(|k| matches!(k, IndetKind::Root { .. }))
    }

    /// True when the expression involves no function of the chart, i.e.
    /// only parameters and numbers.
    pub fn is_constant_like(&self) -> bool {
        !self.contains_kind(|k| !matches!(k, IndetKind::Param))
    }

    pub fn vars(&self) -> Vec<Indeterminate> {
        let mut vs = self.num.vars();
        for v in self.den.vars() {
            if !vs.contains(&v) {
                vs.push(v);
            }
        }
        vs.sort();
        vs
    }

    /// Simultaneous substitution. Unbound indeterminates are left alone;
    /// a zero denominator after substitution is an evaluation pole.
    pub fn substitute(&self, bindings: &BTreeMap<Indeterminate, Expr>) -> Result<Expr> {
        let num = substitute_poly(&self.num, bindings)?;
        let den = substitute_poly(&self.den, bindings)?;
        if den.is_zero() {
            return Err(CoreError::EvaluationPole(self.to_string()));
        }
        num.checked_div(&den)
    }

    /// Substitutes zero for every derivative order of the named
    /// differential symbol.
    pub fn kill_differential(&self, base_name: &str) -> Result<Expr> {
        let mut bindings = BTreeMap::new();
        for v in self.vars() {
            if matches!(v.kind(), IndetKind::Differential { .. }) && v.name() == base_name {
                bindings.insert(v, Expr::zero());
            }
        }
        self.substitute(&bindings)
    }

    /// Splits into (terms free of chart-dependent indeterminates, rest).
    pub fn constant_part(&self) -> (Expr, Expr) {
        if !self.den.is_constant() {
            return (Expr::zero(), self.clone());
        }
        let mut con = MultiPoly::zero();
        let mut rest = MultiPoly::zero();
        for (m, c) in self.num.terms() {
            let functional = m.factors().iter().any(|(v, _)| v.is_function_like());
            if functional {
                rest.add_term(m.clone(), c.clone());
            } else {
                con.add_term(m.clone(), c.clone());
            }
        }
        (
            Expr::canonical(con, self.den.clone()),
            Expr::canonical(rest, self.den.clone()),
        )
    }
}

fn substitute_poly(p: &MultiPoly, bindings: &BTreeMap<Indeterminate, Expr>) -> Result<Expr> {
    let mut acc = Expr::zero();
    for (m, c) in p.terms() {
        let mut term = Expr::scalar(c.clone());
        for (v, e) in m.factors() {
            let base = match bindings.get(v) {
                Some(b) => b.clone(),
                None => Expr::var(v),
            };
            term = &term * &base.pow(*e as i32)?;
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

/// Clears algebraic indeterminates out of the denominator by repeated
/// conjugation. Sine symbols cannot be conjugated away; in this engine
/// they never reach a denominator.
fn rationalize(mut num: MultiPoly, mut den: MultiPoly) -> (MultiPoly, MultiPoly) {
    loop {
        let Some(x) = den.vars().into_iter().find(|v| {
            matches!(v.kind(), IndetKind::Root { .. } | IndetKind::Cos { .. })
        }) else {
            return (num, den);
        };
        // den = d0 + d1*x with x-degree <= 1 in reduced form.
        let d0 = den.coeff_of_power(&x, 0);
        let d1 = den.coeff_of_power(&x, 1);
        let conj = &d0 - &(MultiPoly::var(&x) * &d1);
        num = &num * &conj;
        den = &den * &conj;
        debug_assert!(!den.contains_var(&x));
        debug_assert!(!den.is_zero(), "conjugate norm vanished");
    }
}

impl Add for &Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        if self.den == rhs.den {
            return Expr::canonical(&self.num + &rhs.num, self.den.clone());
        }
        Expr::canonical(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        if self.den == rhs.den {
            return Expr::canonical(&self.num - &rhs.num, self.den.clone());
        }
        Expr::canonical(
            &self.num * &rhs.den - &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        Expr::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Division panics on a zero divisor; use [`Expr::checked_div`] where the
/// divisor is not known to be nonzero.
impl Div for &Expr {
    type Output = Expr;
    fn div(self, rhs: &Expr) -> Expr {
        self.checked_div(rhs).expect("division by zero expression")
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_expr_owned {
    ($Op:ident, $method:ident) => {
        impl $Op for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                (&self).$method(&rhs)
            }
        }
        impl $Op<&Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                (&self).$method(rhs)
            }
        }
        impl $Op<Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                self.$method(&rhs)
            }
        }
    };
}

forward_expr_owned!(Add, add);
forward_expr_owned!(Sub, sub);
forward_expr_owned!(Mul, mul);
forward_expr_owned!(Div, div);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Expr {
        Expr::int(n)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::algebra::printer::expr_to_text(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn ch(name: &str) -> Indeterminate {
        Indeterminate::chart(name)
    }

    #[test]
    fn factor_cancellation() {
        // (u^2 - v^2)/(u - v) -> u + v
        let u = Expr::var(&ch("u"));
        let v = Expr::var(&ch("v"));
        let num = &u * &u - &v * &v;
        let den = &u - &v;
        let e = num / den;
        assert_eq!(e, &u + &v);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            Expr::new(MultiPoly::one(), MultiPoly::zero()),
            Err(CoreError::ZeroDenominator)
        );
    }

    #[test]
    fn cross_multiplication_eq() {
        let u = Expr::var(&ch("u"));
        let a = Expr::var(&Indeterminate::param("a"));
        let c = Expr::var(&Indeterminate::param("c"));
        // (a+1)^2 u^5 / c^2 built two ways
        let lhs = (&a + Expr::one()).pow(2).unwrap() * u.pow(5).unwrap() / c.pow(2).unwrap();
        let rhs = u.pow(5).unwrap() * (&a + Expr::one()).pow(2).unwrap() / (&c * &c);
        assert!(lhs.eq_expr(&rhs));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn denominator_rationalized() {
        let u = ch("u");
        let rad = MultiPoly::var(&u) + MultiPoly::int(1);
        let w = Indeterminate::root("W", Arc::new(rad));
        let we = Expr::var(&w);
        // 1/W = W/(u+1)
        let inv = we.recip().unwrap();
        assert!(inv.denominator().vars().iter().all(|v| !v.is_root()));
        assert!((&inv * &we).is_one());
    }

    #[test]
    fn substitution_homomorphic() {
        let t = ch("t");
        let eta = Indeterminate::differential("eta");
        let zeta = Indeterminate::differential("zeta");
        // n = t^2 + 2 eta t + zeta at t := 0 gives zeta
        let n = Expr::var(&t).pow(2).unwrap()
            + Expr::int(2) * Expr::var(&eta) * Expr::var(&t)
            + Expr::var(&zeta);
        let mut b = BTreeMap::new();
        b.insert(t, Expr::zero());
        assert_eq!(n.substitute(&b).unwrap(), Expr::var(&zeta));
    }

    #[test]
    fn pole_detected() {
        let u = ch("u");
        let e = Expr::one() / Expr::var(&u);
        let mut b = BTreeMap::new();
        b.insert(u, Expr::zero());
        assert!(matches!(e.substitute(&b), Err(CoreError::EvaluationPole(_))));
    }

    #[test]
    fn degrees() {
        let u = ch("u");
        let e = Expr::var(&u).pow(3).unwrap() + Expr::int(1);
        assert_eq!(e.degree_in(&u), Degree::Finite(3));
        assert_eq!(Expr::zero().degree_in(&u), Degree::NegInf);
        let r = Expr::one() / Expr::var(&u);
        assert_eq!(r.degree_in(&u), Degree::Infinite);
    }
}
