//! Derivation environments: symbol declarations, differentiation rules and
//! square-root registration.
//!
//! Default rules by kind: a chart variable differentiates to 1 in its own
//! direction and 0 otherwise; a parameter to 0; a differential symbol of
//! order k to the same symbol at order k+1 in the prime direction and 0 in
//! the others; a root `W` with `W^2 = g` to `d(g)/(2W)`. Circle pairs get
//! explicit rules (`C' = -S`, `S' = C`) when declared.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::algebra::expr::Expr;
use crate::algebra::gcd::exact_div;
use crate::algebra::poly::{Monomial, MultiPoly};
use crate::algebra::scalar::ExactScalar;
use crate::algebra::symbol::{IndetKind, Indeterminate};
use crate::error::{CoreError, Result};

#[derive(Default)]
struct EnvInner {
    symbols: BTreeMap<String, Indeterminate>,
    rules: BTreeMap<(Indeterminate, Indeterminate), Expr>,
    prime: Option<Indeterminate>,
    roots: Vec<Indeterminate>,
}

/// A shared, thread-safe derivation environment. Symbol names are unique
/// within an environment.
#[derive(Default)]
pub struct DerivationEnv {
    inner: Mutex<EnvInner>,
}

impl DerivationEnv {
    pub fn new() -> Arc<DerivationEnv> {
        Arc::new(DerivationEnv::default())
    }

    fn declare(&self, x: Indeterminate) -> Result<Indeterminate> {
        let mut inner = self.inner.lock().unwrap();
        if inner.symbols.contains_key(x.name()) {
            return Err(CoreError::DuplicateSymbol(x.name().to_string()));
        }
        inner.symbols.insert(x.name().to_string(), x.clone());
        Ok(x)
    }

    pub fn chart_var(&self, name: &str) -> Result<Indeterminate> {
        self.declare(Indeterminate::chart(name))
    }

    pub fn param(&self, name: &str) -> Result<Indeterminate> {
        self.declare(Indeterminate::param(name))
    }

    /// Declares a differential symbol (a generic function of the prime
    /// direction, or reuses it if already declared with the same kind).
    pub fn differential(&self, name: &str) -> Result<Indeterminate> {
        {
            let inner = self.inner.lock().unwrap();
            if let Some(existing) = inner.symbols.get(name) {
                return if matches!(existing.kind(), IndetKind::Differential { .. }) {
                    Ok(existing.clone())
                } else {
                    Err(CoreError::DuplicateSymbol(name.to_string()))
                };
            }
        }
        self.declare(Indeterminate::differential(name))
    }

    /// Declares a unit-circle pair with `d(cos) = -sin`, `d(sin) = cos` in
    /// the given direction.
    pub fn circle_pair(
        &self,
        cos_name: &str,
        sin_name: &str,
        dir: &Indeterminate,
    ) -> Result<(Indeterminate, Indeterminate)> {
        let (c, s) = Indeterminate::circle_pair(cos_name, sin_name);
        self.declare(c.clone())?;
        self.declare(s.clone())?;
        let mut inner = self.inner.lock().unwrap();
        inner
            .rules
            .insert((c.clone(), dir.clone()), -Expr::var(&s));
        inner.rules.insert((s.clone(), dir.clone()), Expr::var(&c));
        Ok((c, s))
    }

    /// Marks the direction in which differential symbols gain a prime.
    pub fn set_prime_direction(&self, dir: &Indeterminate) {
        self.inner.lock().unwrap().prime = Some(dir.clone());
    }

    /// Installs an explicit rule overriding the kind default.
    pub fn set_rule(&self, x: &Indeterminate, dir: &Indeterminate, value: Expr) {
        self.inner
            .lock()
            .unwrap()
            .rules
            .insert((x.clone(), dir.clone()), value);
    }

    pub fn lookup(&self, name: &str) -> Option<Indeterminate> {
        self.inner.lock().unwrap().symbols.get(name).cloned()
    }

    pub fn roots(&self) -> Vec<Indeterminate> {
        self.inner.lock().unwrap().roots.clone()
    }

    fn is_declared(&self, x: &Indeterminate) -> bool {
        let inner = self.inner.lock().unwrap();
        match inner.symbols.get(x.name()) {
            Some(d) => {
                d == x
                    || matches!(
                        (d.kind(), x.kind()),
                        (IndetKind::Differential { .. }, IndetKind::Differential { .. })
                    )
            }
            None => inner.roots.iter().any(|r| r == x),
        }
    }

    /// The derivative of a single indeterminate in the given direction.
    fn rule_for(&self, x: &Indeterminate, dir: &Indeterminate) -> Result<Expr> {
        if !self.is_declared(x) {
            return Err(CoreError::UnboundSymbol(x.display_name()));
        }
        match x.kind() {
            IndetKind::Chart => Ok(if x == dir { Expr::one() } else { Expr::zero() }),
            IndetKind::Param => Ok(Expr::zero()),
            IndetKind::Differential { .. } => {
                let (custom, prime) = {
                    let inner = self.inner.lock().unwrap();
                    (
                        inner.rules.get(&(x.clone(), dir.clone())).cloned(),
                        inner.prime.clone(),
                    )
                };
                if let Some(r) = custom {
                    return Ok(r);
                }
                if prime.as_ref() == Some(dir) {
                    Ok(Expr::var(&x.bump_order().expect("differential symbol")))
                } else {
                    Ok(Expr::zero())
                }
            }
            IndetKind::Cos { .. } | IndetKind::Sin { .. } => {
                let custom = {
                    let inner = self.inner.lock().unwrap();
                    inner.rules.get(&(x.clone(), dir.clone())).cloned()
                };
                Ok(custom.unwrap_or_else(Expr::zero))
            }
            IndetKind::Root { radicand } => {
                // d(W) = d(g) / (2 W) = d(g) W / (2 g)
                let g = Expr::from_poly((**radicand).clone());
                let dg = self.differentiate(&g, dir)?;
                let two_g = Expr::int(2) * &g;
                Ok(dg * Expr::var(x) / two_g)
            }
        }
    }

    fn differentiate_poly(&self, p: &MultiPoly, dir: &Indeterminate) -> Result<Expr> {
        let mut acc = Expr::zero();
        for (m, c) in p.terms() {
            for (v, e) in m.factors() {
                let dv = self.rule_for(v, dir)?;
                if dv.is_zero() {
                    continue;
                }
                let mut shifted = m.without(v);
                if *e > 1 {
                    shifted = shifted.mul(&Monomial::var(v.clone(), e - 1));
                }
                let coeff = c * &ExactScalar::from_int(*e as i64);
                let term = Expr::from_poly(MultiPoly::from_term(shifted, coeff));
                acc = acc + term * dv;
            }
        }
        Ok(acc)
    }

    /// Linear differentiation satisfying the product and quotient rules.
    pub fn differentiate(&self, e: &Expr, dir: &Indeterminate) -> Result<Expr> {
        let dn = self.differentiate_poly(e.numerator(), dir)?;
        if e.is_polynomial() {
            let den = Expr::from_poly(e.denominator().clone());
            return Ok(dn / den);
        }
        let dd = self.differentiate_poly(e.denominator(), dir)?;
        let num = Expr::from_poly(e.numerator().clone());
        let den = Expr::from_poly(e.denominator().clone());
        // (n/d)' = (n' d - n d') / d^2
        Ok((dn * &den - num * dd) / (&den * &den))
    }

    pub fn differentiate_n(&self, e: &Expr, dir: &Indeterminate, n: u32) -> Result<Expr> {
        let mut acc = e.clone();
        for _ in 0..n {
            acc = self.differentiate(&acc, dir)?;
        }
        Ok(acc)
    }

    /// Returns an expression for the positive square root of `g`,
    /// registering a fresh root indeterminate when needed. Square scalar
    /// and monomial factors are extracted, and the radicand is reduced by
    /// the radicands of previously registered roots, so equal radicands
    /// always share one root symbol.
    pub fn register_sqrt(&self, g: &Expr) -> Result<Expr> {
        if g.is_zero() {
            return Ok(Expr::zero());
        }
        if g.contains_kind(|k| {
            matches!(
                k,
                IndetKind::Root { .. } | IndetKind::Cos { .. } | IndetKind::Sin { .. }
            )
        }) {
            return Err(CoreError::ExtensionMismatch(
                "radicand must be free of roots and circle pairs".to_string(),
            ));
        }

        // sqrt(n/d) = sqrt(n*d)/d
        let mut mult = Expr::one() / Expr::from_poly(g.denominator().clone());
        let mut rest = g.numerator() * g.denominator();

        // Rational square content: sqrt(p/q) = sqrt(p*q)/q.
        let content = rest.content();
        rest = rest.scale(&content.recip().expect("nonzero content"));
        let k = content.numerator() * content.denominator();
        let (sq, mut leftover) = square_split(k);
        mult = mult
            * Expr::scalar(
                ExactScalar::from_bigints(sq, content.denominator().clone())
                    .expect("positive denominator"),
            );

        // Monomial square part.
        let mc = rest.monomial_content();
        let mut even = Vec::new();
        let mut strip = Vec::new();
        for (v, e) in mc.factors() {
            if *e >= 2 {
                even.push((v.clone(), e / 2));
                strip.push((v.clone(), (e / 2) * 2));
            }
        }
        if !even.is_empty() {
            let half = Monomial::from_factors(even);
            let full = Monomial::from_factors(strip);
            rest = exact_div(&rest, &MultiPoly::from_term(full, ExactScalar::one()))
                .expect("even monomial part divides");
            mult = mult * Expr::from_poly(MultiPoly::from_term(half, ExactScalar::one()));
        }

        // Divide out registered radicands.
        let roots = self.roots();
        let mut changed = true;
        while changed && !rest.is_constant() {
            changed = false;
            for r in &roots {
                let rad = r.radicand().expect("root has radicand");
                if let Some(q) = exact_div(&rest, rad) {
                    rest = q;
                    mult = mult * Expr::var(r);
                    changed = true;
                }
            }
        }

        if let Some(c) = rest.as_constant() {
            // Fold constants together and take exact square roots when
            // possible.
            let c_num = c.numerator() * &leftover;
            let (sq2, rem) = square_split(c_num);
            let denom_part = c.denominator().clone();
            let (sq3, rem3) = square_split(&rem * &denom_part);
            mult = mult
                * Expr::scalar(
                    ExactScalar::from_bigints(&sq2 * &sq3, denom_part).expect("positive"),
                );
            if rem3 == 1.into() {
                return Ok(mult);
            }
            let const_rad =
                MultiPoly::constant(ExactScalar::from_bigints(rem3, 1.into()).unwrap());
            let root = self.find_or_register_root(const_rad);
            return Ok(mult * Expr::var(&root));
        }

        if leftover != 1.into() {
            rest = rest.scale(&ExactScalar::from_bigints(leftover.clone(), 1.into()).unwrap());
            leftover = 1.into();
        }
        let _ = leftover;
        let root = self.find_or_register_root(rest);
        Ok(mult * Expr::var(&root))
    }

    fn find_or_register_root(&self, radicand: MultiPoly) -> Indeterminate {
        let mut inner = self.inner.lock().unwrap();
        for r in &inner.roots {
            if r.radicand().map(|p| **p == radicand).unwrap_or(false) {
                return r.clone();
            }
        }
        let name = if inner.roots.is_empty() {
            "W".to_string()
        } else {
            format!("W{}", inner.roots.len() + 1)
        };
        let root = Indeterminate::root(&name, Arc::new(radicand));
        inner.roots.push(root.clone());
        root
    }
}

/// Splits `n` as `s^2 * f` with `f` free of small square factors. Signs
/// stay in `f`.
fn square_split(n: num_bigint::BigInt) -> (num_bigint::BigInt, num_bigint::BigInt) {
    use num_bigint::BigInt;
    use num_traits::{Signed, Zero};
    if n.is_zero() {
        return (BigInt::from(1), n);
    }
    let negative = n.is_negative();
    let mut rest = n.abs();
    let mut sq = BigInt::from(1);
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let p = BigInt::from(p);
        let p2 = &p * &p;
        while (&rest % &p2).is_zero() {
            rest /= &p2;
            sq *= &p;
        }
    }
    // The remainder may itself be a perfect square.
    let r = rest.sqrt();
    if &r * &r == rest {
        sq *= &r;
        rest = BigInt::from(1);
    }
    if negative {
        rest = -rest;
    }
    (sq, rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Arc<DerivationEnv>, Indeterminate, Indeterminate) {
        let env = DerivationEnv::new();
        let s = env.chart_var("s").unwrap();
        let t = env.chart_var("t").unwrap();
        env.set_prime_direction(&s);
        (env, s, t)
    }

    #[test]
    fn polynomial_rule() {
        let env = DerivationEnv::new();
        let u = env.chart_var("u").unwrap();
        let v = env.chart_var("v").unwrap();
        let a = env.param("a").unwrap();
        let b = env.param("b").unwrap();
        let c = env.param("c").unwrap();
        // d/du (c + a u^2 + b v^2) = 2 a u
        let e = Expr::var(&c)
            + Expr::var(&a) * Expr::var(&u).pow(2).unwrap()
            + Expr::var(&b) * Expr::var(&v).pow(2).unwrap();
        let d = env.differentiate(&e, &u).unwrap();
        assert_eq!(d, Expr::int(2) * Expr::var(&a) * Expr::var(&u));
    }

    #[test]
    fn differential_symbols_gain_primes() {
        let (env, s, t) = setup();
        let zeta = env.differential("zeta").unwrap();
        let eta = env.differential("eta").unwrap();
        let n = Expr::var(&t).pow(2).unwrap()
            + Expr::int(2) * Expr::var(&eta) * Expr::var(&t)
            + Expr::var(&zeta);
        // d/dt n = 2t + 2 eta
        let nt = env.differentiate(&n, &t).unwrap();
        assert_eq!(nt, Expr::int(2) * Expr::var(&t) + Expr::int(2) * Expr::var(&eta));
        // d/ds zeta = zeta'
        let dz = env.differentiate(&Expr::var(&zeta), &s).unwrap();
        assert_eq!(dz, Expr::var(&Indeterminate::differential_order("zeta", 1)));
    }

    #[test]
    fn unbound_symbol_rejected() {
        let (env, s, _) = setup();
        let stray = Indeterminate::differential("stray");
        assert!(matches!(
            env.differentiate(&Expr::var(&stray), &s),
            Err(CoreError::UnboundSymbol(_))
        ));
    }

    #[test]
    fn root_rule() {
        let env = DerivationEnv::new();
        let u = env.chart_var("u").unwrap();
        // W^2 = 1 - u^2; dW/du = -u/W = -uW/(1-u^2)
        let rad = Expr::int(1) - Expr::var(&u).pow(2).unwrap();
        let w = env.register_sqrt(&rad).unwrap();
        let dw = env.differentiate(&w, &u).unwrap();
        let expected = -(Expr::var(&u) * &w) / rad;
        assert_eq!(dw, expected);
        // and W * W reduces to the radicand
        assert_eq!(&w * &w, Expr::int(1) - Expr::var(&u).pow(2).unwrap());
    }

    #[test]
    fn sqrt_extraction_and_dedup() {
        let env = DerivationEnv::new();
        let u = env.chart_var("u").unwrap();
        let omega = Expr::int(4) - Expr::var(&u).pow(2).unwrap();
        let w1 = env.register_sqrt(&omega).unwrap();
        // sqrt(4 * omega) = 2 sqrt(omega)
        let w2 = env.register_sqrt(&(Expr::int(4) * &omega)).unwrap();
        assert_eq!(w2, Expr::int(2) * &w1);
        // sqrt(omega^2) is rational
        let w3 = env.register_sqrt(&(&omega * &omega)).unwrap();
        assert_eq!(w3, omega);
        assert_eq!(env.roots().len(), 1);
    }

    #[test]
    fn circle_pair_derivatives() {
        let (env, s, _) = setup();
        let (c, si) = env.circle_pair("C", "S", &s).unwrap();
        let dc = env.differentiate(&Expr::var(&c), &s).unwrap();
        assert_eq!(dc, -Expr::var(&si));
        // d/ds (C^2 + S^2) = 0
        let unit = Expr::var(&c).pow(2).unwrap() + Expr::var(&si).pow(2).unwrap();
        assert!(unit.is_one());
    }

    #[test]
    fn mixed_partials_commute() {
        let env = DerivationEnv::new();
        let u = env.chart_var("u").unwrap();
        let v = env.chart_var("v").unwrap();
        let rad = Expr::int(1) - Expr::var(&u).pow(2).unwrap() - Expr::var(&v).pow(2).unwrap();
        let w = env.register_sqrt(&rad).unwrap();
        let duv = env
            .differentiate(&env.differentiate(&w, &u).unwrap(), &v)
            .unwrap();
        let dvu = env
            .differentiate(&env.differentiate(&w, &v).unwrap(), &u)
            .unwrap();
        assert_eq!(duv, dvu);
    }
}
