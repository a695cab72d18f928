//! Sparse multivariate polynomials over the exact rationals.
//!
//! Terms are kept in a map from monomials to nonzero coefficients, with
//! monomials compared in graded lexicographic order over the fixed global
//! indeterminate order. Multiplication rewrites squares of algebraic
//! indeterminates (`W^2 -> radicand`, `C^2 -> 1 - S^2`), so stored
//! polynomials are always reduced representatives.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::algebra::scalar::ExactScalar;
use crate::algebra::symbol::{IndetKind, Indeterminate};

/// Degree of an expression in one indeterminate: `-inf` for zero, a finite
/// value for polynomials, `+inf` as the nonpolynomial sentinel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInf,
    Finite(i64),
    Infinite,
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::Finite(d) => Some(d),
            _ => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
            Degree::Infinite => write!(f, "+inf"),
        }
    }
}

/// A power product of indeterminates with positive exponents, kept sorted
/// by the global indeterminate order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial {
    factors: Box<[(Indeterminate, u32)]>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { factors: Box::new([]) }
    }

    pub fn var(x: Indeterminate, exp: u32) -> Self {
        if exp == 0 {
            return Monomial::one();
        }
        Monomial { factors: Box::new([(x, exp)]) }
    }

    pub fn from_factors(mut factors: Vec<(Indeterminate, u32)>) -> Self {
        factors.retain(|(_, e)| *e > 0);
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        debug_assert!(factors.windows(2).all(|w| w[0].0 != w[1].0));
        Monomial { factors: factors.into_boxed_slice() }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(Indeterminate, u32)] {
        &self.factors
    }

    pub fn total_degree(&self) -> u64 {
        self.factors.iter().map(|(_, e)| *e as u64).sum()
    }

    pub fn degree_of(&self, x: &Indeterminate) -> u32 {
        self.factors
            .iter()
            .find(|(v, _)| v == x)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn contains(&self, x: &Indeterminate) -> bool {
        self.degree_of(x) > 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            match self.factors[i].0.cmp(&other.factors[j].0) {
                Ordering::Less => {
                    out.push(self.factors[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.factors[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.factors[i].0.clone(), self.factors[i].1 + other.factors[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        out.extend_from_slice(&other.factors[j..]);
        Monomial { factors: out.into_boxed_slice() }
    }

    /// Componentwise division; `None` when not divisible.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut i = 0;
        for (v, e) in other.factors.iter() {
            loop {
                if i >= self.factors.len() {
                    return None;
                }
                match self.factors[i].0.cmp(v) {
                    Ordering::Less => {
                        out.push(self.factors[i].clone());
                        i += 1;
                    }
                    Ordering::Equal => {
                        if self.factors[i].1 < *e {
                            return None;
                        }
                        if self.factors[i].1 > *e {
                            out.push((v.clone(), self.factors[i].1 - e));
                        }
                        i += 1;
                        break;
                    }
                    Ordering::Greater => return None,
                }
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        Some(Monomial { factors: out.into_boxed_slice() })
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            match self.factors[i].0.cmp(&other.factors[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push((
                        self.factors[i].0.clone(),
                        self.factors[i].1.min(other.factors[j].1),
                    ));
                    i += 1;
                    j += 1;
                }
            }
        }
        Monomial { factors: out.into_boxed_slice() }
    }

    pub fn without(&self, x: &Indeterminate) -> Monomial {
        Monomial {
            factors: self
                .factors
                .iter()
                .filter(|(v, _)| v != x)
                .cloned()
                .collect(),
        }
    }

    fn first_reducible(&self) -> Option<(Indeterminate, u32)> {
        self.factors.iter().find_map(|(v, e)| match v.kind() {
            IndetKind::Root { .. } | IndetKind::Cos { .. } if *e >= 2 => Some((v.clone(), *e)),
            _ => None,
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then a higher exponent on
    /// the earliest indeterminate wins.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.factors.get(i), other.factors.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        match ea.cmp(eb) {
                            Ordering::Equal => {}
                            ord => return ord,
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

/// A sparse multivariate polynomial. The zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, ExactScalar>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        MultiPoly::constant(ExactScalar::one())
    }

    pub fn constant(c: ExactScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MultiPoly { terms }
    }

    pub fn int(n: i64) -> Self {
        MultiPoly::constant(ExactScalar::from_int(n))
    }

    pub fn var(x: &Indeterminate) -> Self {
        MultiPoly::from_term(Monomial::var(x.clone(), 1), ExactScalar::one())
    }

    pub fn from_term(m: Monomial, c: ExactScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }.reduced()
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, ExactScalar)>>(iter: I) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p.reduced()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn as_constant(&self) -> Option<ExactScalar> {
        if self.terms.is_empty() {
            return Some(ExactScalar::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    /// The single term `(monomial, coefficient)` when the polynomial is a
    /// monomial, otherwise `None`.
    pub fn as_monomial(&self) -> Option<(Monomial, ExactScalar)> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            Some((m.clone(), c.clone()))
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ExactScalar)> {
        self.terms.iter()
    }

    /// Highest term in the monomial order.
    pub fn leading(&self) -> Option<(&Monomial, &ExactScalar)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn monomial_mul(&self, m: &Monomial, c: &ExactScalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v * c))
                .collect(),
        }
        .reduced()
    }

    /// Plain polynomial product, without the algebraic rewrites. Used by
    /// gcd/division internals which work on raw representatives.
    pub fn mul_raw(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero();
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = MultiPoly::zero();
        for (m, c) in small.terms.iter() {
            for (n, d) in large.terms.iter() {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }

    pub fn pow_raw(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..e {
            acc = acc.mul_raw(self);
        }
        acc
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn needs_reduction(&self) -> bool {
        self.terms.keys().any(|m| m.first_reducible().is_some())
    }

    /// Rewrites `W^2 -> radicand` and `C^2 -> 1 - S^2` until no square of
    /// an algebraic indeterminate remains.
    pub fn reduced(self) -> MultiPoly {
        if !self.needs_reduction() {
            return self;
        }
        let mut out = MultiPoly::zero();
        for (m, c) in self.terms {
            reduce_term_into(&mut out, m, c);
        }
        out
    }

    pub fn degree_in(&self, x: &Indeterminate) -> Degree {
        if self.is_zero() {
            return Degree::NegInf;
        }
        Degree::Finite(
            self.terms
                .keys()
                .map(|m| m.degree_of(x) as i64)
                .max()
                .unwrap(),
        )
    }

    pub fn total_degree(&self) -> Degree {
        if self.is_zero() {
            return Degree::NegInf;
        }
        Degree::Finite(self.terms.keys().map(|m| m.total_degree() as i64).max().unwrap())
    }

    /// Total degree counting only the given indeterminates.
    pub fn degree_in_set(&self, vars: &[Indeterminate]) -> Degree {
        if self.is_zero() {
            return Degree::NegInf;
        }
        Degree::Finite(
            self.terms
                .keys()
                .map(|m| vars.iter().map(|x| m.degree_of(x) as i64).sum::<i64>())
                .max()
                .unwrap(),
        )
    }

    /// The coefficient of `x^k` as a polynomial in the other indeterminates.
    pub fn coeff_of_power(&self, x: &Indeterminate, k: u32) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in self.terms.iter() {
            if m.degree_of(x) == k {
                out.add_term(m.without(x), c.clone());
            }
        }
        out
    }

    /// Splits into `x`-degree slices.
    pub fn by_powers_of(&self, x: &Indeterminate) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in self.terms.iter() {
            out.entry(m.degree_of(x))
                .or_default()
                .add_term(m.without(x), c.clone());
        }
        out
    }

    pub fn contains_var(&self, x: &Indeterminate) -> bool {
        self.terms.keys().any(|m| m.contains(x))
    }

    pub fn vars(&self) -> Vec<Indeterminate> {
        let mut set = std::collections::BTreeSet::new();
        for m in self.terms.keys() {
            for (v, _) in m.factors() {
                set.insert(v.clone());
            }
        }
        set.into_iter().collect()
    }

    pub fn contains_kind(&self, pred: impl Fn(&IndetKind) -> bool) -> bool {
        self.terms
            .keys()
            .any(|m| m.factors().iter().any(|(v, _)| pred(v.kind())))
    }

    /// Positive gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for c in self.terms.values() {
            acc = acc.content_gcd(c);
            if acc.is_one() {
                break;
            }
        }
        acc
    }

    /// Componentwise gcd of all monomials.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        let mut acc = first.clone();
        for m in it {
            if acc.is_one() {
                break;
            }
            acc = acc.gcd(m);
        }
        acc
    }

    /// Sign of the leading coefficient; 0 for the zero polynomial.
    pub fn leading_sign(&self) -> i32 {
        self.leading().map(|(_, c)| c.signum()).unwrap_or(0)
    }

    /// Keeps only terms free of `x` (i.e. substitutes `x := 0`).
    pub fn kill_var(&self, x: &Indeterminate) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.contains(x))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

fn reduce_term_into(out: &mut MultiPoly, m: Monomial, c: ExactScalar) {
    let Some((x, e)) = m.first_reducible() else {
        out.add_term(m, c);
        return;
    };
    let half = e / 2;
    let rest = m.without(&x).mul(&Monomial::var(x.clone(), e % 2));
    let base = match x.kind() {
        IndetKind::Root { radicand } => (**radicand).clone(),
        IndetKind::Cos { sin } => {
            // 1 - S^2
            let (_, s) = Indeterminate::circle_pair(x.name(), sin);
            let mut p = MultiPoly::one();
            p.add_term(Monomial::var(s, 2), ExactScalar::from_int(-1));
            p
        }
        _ => unreachable!(),
    };
    let expanded = base.pow_raw(half).monomial_mul_raw(&rest, &c);
    for (m2, c2) in expanded.terms {
        reduce_term_into(out, m2, c2);
    }
}

impl MultiPoly {
    fn monomial_mul_raw(&self, m: &Monomial, c: &ExactScalar) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v * c))
                .collect(),
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.mul_raw(rhs).reduced()
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($Op:ident, $method:ident) => {
        impl $Op for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $Op<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl $Op<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in rhs.terms.iter() {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in rhs.terms.iter() {
            self.add_term(m.clone(), -c);
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::algebra::printer::poly_to_text(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Indeterminate {
        Indeterminate::chart("x")
    }

    fn y() -> Indeterminate {
        Indeterminate::chart("y")
    }

    #[test]
    fn add_cancels() {
        let p = MultiPoly::var(&x());
        let q = -&p;
        assert!((&p + &q).is_zero());
    }

    #[test]
    fn graded_lex_order() {
        let p = MultiPoly::var(&x()).pow(2) + MultiPoly::var(&x()) * MultiPoly::var(&y());
        let (lead, _) = p.leading().unwrap();
        assert_eq!(lead.degree_of(&x()), 2);
    }

    #[test]
    fn product_degree_adds() {
        let p = MultiPoly::var(&x()) + MultiPoly::int(1);
        let q = MultiPoly::var(&x()).pow(3) - MultiPoly::int(2);
        assert_eq!((&p * &q).degree_in(&x()), Degree::Finite(4));
    }

    #[test]
    fn root_square_rewrites() {
        let rad = MultiPoly::var(&x()) + MultiPoly::int(1);
        let w = Indeterminate::root("W", std::sync::Arc::new(rad.clone()));
        let wp = MultiPoly::var(&w);
        assert_eq!(&wp * &wp, rad);
        // W^3 -> (x+1) W
        let w3 = wp.pow(3);
        assert_eq!(w3.degree_in(&w), Degree::Finite(1));
    }

    #[test]
    fn circle_pair_rewrites() {
        let (c, s) = Indeterminate::circle_pair("C", "S");
        let cp = MultiPoly::var(&c);
        let sp = MultiPoly::var(&s);
        let unit = &cp * &cp + &sp * &sp;
        assert!(unit.is_one());
    }

    #[test]
    fn coeff_extraction() {
        let t = x();
        let p = MultiPoly::var(&t).pow(2).scale(&ExactScalar::from_int(3))
            + MultiPoly::var(&y()) * MultiPoly::var(&t);
        assert_eq!(p.coeff_of_power(&t, 2), MultiPoly::int(3));
        assert_eq!(p.coeff_of_power(&t, 1), MultiPoly::var(&y()));
    }
}
