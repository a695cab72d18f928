//! Deterministic canonical text and LaTeX emission.
//!
//! Terms are printed leading-first in the graded lexicographic order, so
//! equal expressions always print identically. The text form round-trips
//! through [`crate::algebra::parser`].

use crate::algebra::expr::Expr;
use crate::algebra::poly::MultiPoly;
use crate::algebra::scalar::ExactScalar;
use crate::algebra::symbol::{IndetKind, Indeterminate};

/// Display order inside a monomial: parameters and differential symbols
/// first, then chart variables, circle pairs and roots last.
fn display_factors(m: &crate::algebra::poly::Monomial) -> Vec<(Indeterminate, u32)> {
    let mut fs: Vec<(Indeterminate, u32)> = m.factors().to_vec();
    let rank = |k: &IndetKind| match k {
        IndetKind::Param => 0u8,
        IndetKind::Differential { .. } => 1,
        IndetKind::Chart => 2,
        IndetKind::Cos { .. } | IndetKind::Sin { .. } => 3,
        IndetKind::Root { .. } => 4,
    };
    fs.sort_by(|a, b| {
        rank(a.0.kind())
            .cmp(&rank(b.0.kind()))
            .then_with(|| a.0.cmp(&b.0))
    });
    fs
}

pub fn poly_to_text(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut pieces: Vec<String> = Vec::new();
        if !mag.is_one() || m.is_one() {
            pieces.push(mag.to_string());
        }
        for (v, e) in display_factors(m) {
            if e == 1 {
                pieces.push(v.display_name());
            } else {
                pieces.push(format!("{}^{}", v.display_name(), e));
            }
        }
        out.push_str(&pieces.join("*"));
    }
    out
}

pub fn expr_to_text(e: &Expr) -> String {
    if e.denominator().is_one() {
        return poly_to_text(e.numerator());
    }
    format!(
        "({})/({})",
        poly_to_text(e.numerator()),
        poly_to_text(e.denominator())
    )
}

/// Greek letters and a few names get their LaTeX commands; a trailing
/// digit run becomes a subscript.
fn latex_name(x: &Indeterminate) -> String {
    const GREEK: &[&str] = &[
        "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "iota", "kappa",
        "lambda", "mu", "nu", "xi", "pi", "rho", "sigma", "tau", "phi", "chi", "psi", "omega",
    ];
    let name = x.name();
    let split = name.len() - name.chars().rev().take_while(|c| c.is_ascii_digit()).count();
    let (stem, digits) = name.split_at(split);
    let mut out = if GREEK.contains(&stem) {
        format!("\\{stem}")
    } else {
        stem.to_string()
    };
    if !digits.is_empty() {
        out = format!("{out}_{{{digits}}}");
    }
    for _ in 0..x.order() {
        out.push('\'');
    }
    out
}

fn scalar_to_latex(c: &ExactScalar) -> String {
    if c.is_integer() {
        format!("{}", c.numerator())
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numerator(), c.denominator())
    }
}

pub fn poly_to_latex(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut pieces: Vec<String> = Vec::new();
        if !mag.is_one() || m.is_one() {
            pieces.push(scalar_to_latex(&mag));
        }
        for (v, e) in display_factors(m) {
            if e == 1 {
                pieces.push(latex_name(&v));
            } else {
                pieces.push(format!("{}^{{{}}}", latex_name(&v), e));
            }
        }
        out.push_str(&pieces.join(" \\, "));
    }
    out
}

pub fn expr_to_latex(e: &Expr) -> String {
    if e.denominator().is_one() {
        return poly_to_latex(e.numerator());
    }
    format!(
        "\\frac{{{}}}{{{}}}",
        poly_to_latex(e.numerator()),
        poly_to_latex(e.denominator())
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::symbol::Indeterminate;

    #[test]
    fn canonical_text() {
        let t = Indeterminate::chart("t");
        let eta = Indeterminate::differential("eta");
        let zeta = Indeterminate::differential("zeta");
        let n = Expr::var(&t).pow(2).unwrap()
            + Expr::int(2) * Expr::var(&eta) * Expr::var(&t)
            + Expr::var(&zeta);
        assert_eq!(expr_to_text(&n), "t^2 + 2*eta*t + zeta");
    }

    #[test]
    fn latex_greek_and_primes() {
        let zeta1 = Indeterminate::differential_order("zeta", 1);
        let e = Expr::var(&zeta1);
        assert_eq!(expr_to_latex(&e), "\\zeta'");
        let g0 = Indeterminate::differential("g0");
        assert_eq!(expr_to_latex(&Expr::var(&g0)), "g_{0}");
    }

    #[test]
    fn fraction_layout() {
        let u = Indeterminate::chart("u");
        let e = Expr::int(1) / (Expr::var(&u) + Expr::int(1));
        assert_eq!(expr_to_text(&e), "(1)/(u + 1)");
        assert_eq!(expr_to_latex(&e), "\\frac{1}{u + 1}");
    }
}
