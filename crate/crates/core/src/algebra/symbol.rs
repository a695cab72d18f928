//! Named indeterminates and their classification.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::algebra::poly::MultiPoly;

/// What an indeterminate stands for. The kind determines its derivation
/// defaults, its place in the global monomial order and, for the algebraic
/// kinds, the rewrite applied during polynomial normalization.
#[derive(Clone, Debug)]
pub enum IndetKind {
    /// A chart variable (`u`, `v`, `s`, `t`).
    Chart,
    /// A constant parameter (`a`, `b`, `c`, `h`); every derivative is zero.
    Param,
    /// A generic function of the arclength variable, indexed by derivative
    /// order. Order 1 prints as a prime.
    Differential { order: u32 },
    /// Cosine half of a unit-circle pair: `C^2` rewrites to `1 - S^2`.
    Cos { sin: Arc<str> },
    /// Sine half of a unit-circle pair; inert in arithmetic.
    Sin { cos: Arc<str> },
    /// An adjoined square root `W` with `W^2 = radicand`. The radicand is
    /// a polynomial free of `Cos` and `Root` indeterminates, which keeps
    /// the rewrite confluent.
    Root { radicand: Arc<MultiPoly> },
}

impl IndetKind {
    fn rank(&self) -> u8 {
        match self {
            IndetKind::Chart => 0,
            IndetKind::Param => 1,
            IndetKind::Differential { .. } => 2,
            IndetKind::Cos { .. } | IndetKind::Sin { .. } => 3,
            IndetKind::Root { .. } => 4,
        }
    }
}

#[derive(Debug)]
struct IndetData {
    name: Arc<str>,
    kind: IndetKind,
}

/// A named indeterminate. Cheap to clone; ordered by the fixed global
/// order: chart variables < parameters < differential symbols (by name,
/// then derivative order) < circle pairs < extension roots.
#[derive(Clone, Debug)]
pub struct Indeterminate(Arc<IndetData>);

impl Indeterminate {
    pub fn chart(name: &str) -> Self {
        Self::new(name, IndetKind::Chart)
    }

    pub fn param(name: &str) -> Self {
        Self::new(name, IndetKind::Param)
    }

    pub fn differential(name: &str) -> Self {
        Self::new(name, IndetKind::Differential { order: 0 })
    }

    pub fn differential_order(name: &str, order: u32) -> Self {
        Self::new(name, IndetKind::Differential { order })
    }

    pub fn root(name: &str, radicand: Arc<MultiPoly>) -> Self {
        Self::new(name, IndetKind::Root { radicand })
    }

    pub fn circle_pair(cos_name: &str, sin_name: &str) -> (Self, Self) {
        let cos = Self::new(cos_name, IndetKind::Cos { sin: sin_name.into() });
        let sin = Self::new(sin_name, IndetKind::Sin { cos: cos_name.into() });
        (cos, sin)
    }

    fn new(name: &str, kind: IndetKind) -> Self {
        Indeterminate(Arc::new(IndetData { name: name.into(), kind }))
    }

    /// Base name without prime marks.
    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn kind(&self) -> &IndetKind {
        &self.0.kind
    }

    pub fn order(&self) -> u32 {
        match &self.0.kind {
            IndetKind::Differential { order } => *order,
            _ => 0,
        }
    }

    /// The same differential symbol one derivative order up.
    pub fn bump_order(&self) -> Option<Self> {
        match &self.0.kind {
            IndetKind::Differential { order } => Some(Self::new(
                self.name(),
                IndetKind::Differential { order: order + 1 },
            )),
            _ => None,
        }
    }

    pub fn is_chart(&self) -> bool {
        matches!(self.0.kind, IndetKind::Chart)
    }

    pub fn is_param(&self) -> bool {
        matches!(self.0.kind, IndetKind::Param)
    }

    pub fn is_root(&self) -> bool {
        matches!(self.0.kind, IndetKind::Root { .. })
    }

    /// True for kinds that represent functions of the chart (everything
    /// except parameters). Used to decide what counts as a constant.
    pub fn is_function_like(&self) -> bool {
        !self.is_param()
    }

    pub fn radicand(&self) -> Option<&Arc<MultiPoly>> {
        match &self.0.kind {
            IndetKind::Root { radicand } => Some(radicand),
            _ => None,
        }
    }

    /// Display name: the base name with one `'` per derivative order.
    pub fn display_name(&self) -> String {
        let mut s = self.0.name.to_string();
        for _ in 0..self.order() {
            s.push('\'');
        }
        s
    }

    fn key(&self) -> (u8, &str, u32) {
        (self.0.kind.rank(), self.name(), self.order())
    }
}

impl PartialEq for Indeterminate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Indeterminate {}

impl PartialOrd for Indeterminate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Indeterminate {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.key().cmp(&other.key()).then_with(|| {
            // Same rank/name/order. Distinguish roots by radicand so two
            // extensions can never be confused; other kinds are equal.
            match (&self.0.kind, &other.0.kind) {
                (IndetKind::Root { radicand: a }, IndetKind::Root { radicand: b }) => {
                    if Arc::ptr_eq(a, b) {
                        Ordering::Equal
                    } else {
                        a.cmp(b)
                    }
                }
                _ => Ordering::Equal,
            }
        })
    }
}

impl fmt::Display for Indeterminate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn global_order() {
        let t = Indeterminate::chart("t");
        let a = Indeterminate::param("a");
        let zeta = Indeterminate::differential("zeta");
        let zeta1 = zeta.bump_order().unwrap();
        let w = Indeterminate::root("W", Arc::new(MultiPoly::one()));
        assert!(t < a && a < zeta && zeta < zeta1 && zeta1 < w);
    }

    #[test]
    fn primes_display() {
        let zeta = Indeterminate::differential_order("zeta", 2);
        assert_eq!(zeta.display_name(), "zeta''");
    }

    #[test]
    fn roots_distinguished_by_radicand() {
        let p = Arc::new(MultiPoly::one());
        let q = Arc::new(MultiPoly::zero());
        let w1 = Indeterminate::root("W", p.clone());
        let w2 = Indeterminate::root("W", p);
        let w3 = Indeterminate::root("W", q);
        assert_eq!(w1, w2);
        assert_ne!(w1, w3);
    }
}
