//! Multivariate polynomial gcd and exact division.
//!
//! The gcd is computed on raw representatives (no algebraic rewrites) by a
//! primitive pseudo-remainder sequence, recursing on the coefficient ring.
//! That is valid for the reduced representatives stored in [`MultiPoly`]:
//! a common factor of two reduced polynomials is a genuine common factor in
//! the quotient ring as well, and quotients of reduced polynomials stay
//! reduced because exponents only decrease.

use crate::algebra::poly::{Degree, Monomial, MultiPoly};
use crate::algebra::scalar::ExactScalar;
use crate::algebra::symbol::Indeterminate;

/// Exact division in the raw polynomial ring; `None` when not divisible.
pub fn exact_div(f: &MultiPoly, g: &MultiPoly) -> Option<MultiPoly> {
    assert!(!g.is_zero(), "division by the zero polynomial");
    if f.is_zero() {
        return Some(MultiPoly::zero());
    }
    if let Some(c) = g.as_constant() {
        return Some(f.scale(&c.recip().expect("nonzero constant")));
    }
    let (gm, gc) = g.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
    let mut rem = f.clone();
    let mut quot = MultiPoly::zero();
    while !rem.is_zero() {
        let (rm, rc) = rem.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let qm = rm.try_div(&gm)?;
        let qc = &rc / &gc;
        quot.add_term(qm.clone(), qc.clone());
        let piece = g.monomial_mul_for_div(&qm, &qc);
        rem -= &piece;
    }
    Some(quot)
}

impl MultiPoly {
    /// Raw monomial multiple used by division (no rewrites).
    fn monomial_mul_for_div(&self, m: &Monomial, c: &ExactScalar) -> MultiPoly {
        MultiPoly::from_raw_terms(
            self.terms()
                .map(|(k, v)| (k.mul(m), v * c))
                .collect::<Vec<_>>(),
        )
    }

    fn from_raw_terms(terms: Vec<(Monomial, ExactScalar)>) -> MultiPoly {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }
}

/// Canonical normalization: primitive integer coefficients with positive
/// leading sign.
fn make_primitive(p: &MultiPoly) -> MultiPoly {
    if p.is_zero() {
        return MultiPoly::zero();
    }
    let mut c = p.content();
    if p.leading_sign() < 0 {
        c = -c;
    }
    p.scale(&c.recip().expect("nonzero content"))
}

/// Gcd of two polynomials, normalized to primitive form with positive
/// leading coefficient. `gcd(0, 0) = 0`.
pub fn poly_gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if f.is_zero() {
        return make_primitive(g);
    }
    if g.is_zero() {
        return make_primitive(f);
    }
    if f.is_constant() || g.is_constant() {
        return MultiPoly::one();
    }

    // Split off the monomial content first; it is both cheap and the
    // common case for denominators.
    let mf = f.monomial_content();
    let mg = g.monomial_content();
    let mc = mf.gcd(&mg);
    let f1 = strip_monomial(f, &mf);
    let g1 = strip_monomial(g, &mg);

    let core = if f1.is_constant() || g1.is_constant() {
        MultiPoly::one()
    } else {
        gcd_primitive(&make_primitive(&f1), &make_primitive(&g1))
    };
    make_primitive(&core.monomial_mul_for_div(&mc, &ExactScalar::one()))
}

fn strip_monomial(p: &MultiPoly, m: &Monomial) -> MultiPoly {
    if m.is_one() {
        return p.clone();
    }
    MultiPoly::from_raw_terms(
        p.terms()
            .map(|(k, c)| (k.try_div(m).expect("monomial content divides"), c.clone()))
            .collect(),
    )
}

/// Chooses the main variable: one occurring in both, with the smallest
/// maximum degree, to keep remainder sequences short.
fn pick_main_var(f: &MultiPoly, g: &MultiPoly) -> Option<Indeterminate> {
    let fv = f.vars();
    let gv = g.vars();
    let mut best: Option<(i64, Indeterminate)> = None;
    for v in fv {
        if !gv.contains(&v) {
            continue;
        }
        let df = f.degree_in(&v).finite().unwrap_or(0);
        let dg = g.degree_in(&v).finite().unwrap_or(0);
        let score = df.max(dg);
        if best.as_ref().map(|(s, _)| score < *s).unwrap_or(true) {
            best = Some((score, v));
        }
    }
    best.map(|(_, v)| v)
}

fn gcd_primitive(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if f == g {
        return f.clone();
    }
    let Some(x) = pick_main_var(f, g) else {
        // No shared variables: coefficients are a field, so the gcd is 1.
        return MultiPoly::one();
    };

    let (cf, pf) = content_in(f, &x);
    let (cg, pg) = content_in(g, &x);
    let cont = gcd_via(&cf, &cg);

    let mut a = pf;
    let mut b = pg;
    if degree(&a, &x) < degree(&b, &x) {
        std::mem::swap(&mut a, &mut b);
    }
    // Primitive PRS in x.
    loop {
        if b.is_zero() {
            break;
        }
        if degree(&b, &x) == 0 {
            // b is a nonzero coefficient: the x-primitive parts are coprime.
            a = MultiPoly::one();
            break;
        }
        let r = pseudo_rem(&a, &b, &x);
        a = b;
        b = if r.is_zero() {
            MultiPoly::zero()
        } else {
            content_in(&r, &x).1
        };
    }
    let pp = if a.is_constant() { MultiPoly::one() } else { make_primitive(&a) };
    make_primitive(&cont.mul_raw(&pp))
}

fn gcd_via(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if f.is_one() || g.is_one() {
        return MultiPoly::one();
    }
    poly_gcd(f, g)
}

fn degree(p: &MultiPoly, x: &Indeterminate) -> i64 {
    match p.degree_in(x) {
        Degree::Finite(d) => d,
        Degree::NegInf => -1,
        Degree::Infinite => unreachable!(),
    }
}

/// Content and primitive part with respect to `x`: the gcd of the
/// univariate coefficients and the quotient by it.
fn content_in(p: &MultiPoly, x: &Indeterminate) -> (MultiPoly, MultiPoly) {
    let slices = p.by_powers_of(x);
    let mut cont = MultiPoly::zero();
    for c in slices.values() {
        cont = gcd_via(&cont, c);
        if cont.is_one() {
            break;
        }
    }
    if cont.is_zero() {
        return (MultiPoly::zero(), MultiPoly::zero());
    }
    let pp = exact_div(p, &cont).expect("content divides");
    (cont, pp)
}

/// Pseudo-remainder of `a` by `b` in the variable `x`:
/// `lc(b)^(da-db+1) * a = q*b + rem`.
fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, x: &Indeterminate) -> MultiPoly {
    let db = degree(b, x);
    let lb = b.coeff_of_power(x, db as u32);
    let mut r = a.clone();
    loop {
        let dr = degree(&r, x);
        if r.is_zero() || dr < db {
            return r;
        }
        let lr = r.coeff_of_power(x, dr as u32);
        // r := lb*r - lr * x^(dr-db) * b
        let shift = Monomial::var(x.clone(), (dr - db) as u32);
        let t = b
            .mul_raw(&lr)
            .monomial_mul_for_div(&shift, &ExactScalar::one());
        r = r.mul_raw(&lb);
        r -= &t;
    }
}

/// Least common multiple, normalized like [`poly_gcd`].
pub fn poly_lcm(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if f.is_zero() || g.is_zero() {
        return MultiPoly::zero();
    }
    let d = poly_gcd(f, g);
    let q = exact_div(f, &d).expect("gcd divides");
    make_primitive(&q.mul_raw(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> MultiPoly {
        MultiPoly::var(&Indeterminate::chart(name))
    }

    #[test]
    fn exact_division() {
        let u = v("u");
        let w = v("v");
        let f = (&u + &w) * (&u - &w);
        let q = exact_div(&f, &(&u - &w)).unwrap();
        assert_eq!(q, &u + &w);
        assert!(exact_div(&f, &(&u + MultiPoly::int(3))).is_none());
    }

    #[test]
    fn gcd_univariate() {
        let u = v("u");
        let f = (&u + MultiPoly::int(1)).pow(2) * (&u - MultiPoly::int(2));
        let g = (&u + MultiPoly::int(1)) * (&u + MultiPoly::int(3));
        assert_eq!(poly_gcd(&f, &g), &u + MultiPoly::int(1));
    }

    #[test]
    fn gcd_multivariate() {
        let u = v("u");
        let w = v("v");
        let common = &u * &w + MultiPoly::int(1);
        let f = (&common) * (&u + &w);
        let g = (&common) * (&u - &w);
        assert_eq!(poly_gcd(&f, &g), common);
    }

    #[test]
    fn gcd_coprime() {
        let u = v("u");
        let w = v("v");
        assert!(poly_gcd(&u, &w).is_one());
        assert!(poly_gcd(&(&u + MultiPoly::int(1)), &(&u + MultiPoly::int(2))).is_one());
    }

    #[test]
    fn gcd_monomial_fast_path() {
        let u = v("u");
        let w = v("v");
        let f = u.pow(3) * w.pow(2);
        let g = u.pow(2) * w.pow(4).scale(&ExactScalar::from_int(6));
        assert_eq!(poly_gcd(&f, &g), u.pow(2) * w.pow(2));
    }

    #[test]
    fn lcm_product_law() {
        let u = v("u");
        let f = &u * (&u + MultiPoly::int(1));
        let g = (&u + MultiPoly::int(1)) * (&u + MultiPoly::int(2));
        let l = poly_lcm(&f, &g);
        assert_eq!(
            l,
            &u * (&u + MultiPoly::int(1)) * (&u + MultiPoly::int(2))
        );
    }
}
