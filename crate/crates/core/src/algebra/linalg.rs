//! Exact linear algebra over the rationals and linear-dependence detection
//! for vectors of expressions.

use std::collections::BTreeMap;

use crate::algebra::expr::Expr;
use crate::algebra::gcd::{exact_div, poly_lcm};
use crate::algebra::poly::{Monomial, MultiPoly};
use crate::algebra::scalar::ExactScalar;
use crate::error::{CoreError, Result};

/// Reduced row echelon form in place; returns the pivot column of each row.
fn rref(m: &mut Vec<Vec<ExactScalar>>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip().expect("pivot nonzero");
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// One nontrivial kernel vector of the column system `M x = 0`, if any.
pub fn nullspace_vector(mut m: Vec<Vec<ExactScalar>>) -> Option<Vec<ExactScalar>> {
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    if cols == 0 {
        return None;
    }
    let pivots = rref(&mut m);
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut x = vec![ExactScalar::zero(); cols];
    x[free] = ExactScalar::one();
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = -&m[row][free];
    }
    Some(x)
}

/// Solves `M x = b` exactly; `None` when inconsistent.
pub fn solve(m: &[Vec<ExactScalar>], b: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
    let rows = m.len();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut aug: Vec<Vec<ExactScalar>> = m
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    // Inconsistent when a pivot lands in the rhs column.
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![ExactScalar::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols].clone();
    }
    // Verify (free variables set to zero must still satisfy every row).
    for i in 0..rows {
        let mut acc = ExactScalar::zero();
        for j in 0..cols {
            let t = &m[i][j] * &x[j];
            acc += &t;
        }
        if acc != b[i] {
            return None;
        }
    }
    Some(x)
}

/// Brings each coordinate of the given vectors over a common denominator
/// and equates monomial coefficients, yielding one row per (coordinate,
/// monomial) and one column per vector.
fn coefficient_matrix(vectors: &[Vec<Expr>]) -> Result<Vec<Vec<ExactScalar>>> {
    let n = vectors.len();
    let dim = vectors[0].len();
    if vectors.iter().any(|v| v.len() != dim) {
        return Err(CoreError::Usage(
            "vectors must have equal dimension".to_string(),
        ));
    }
    let mut rows: BTreeMap<(usize, Monomial), Vec<ExactScalar>> = BTreeMap::new();
    for coord in 0..dim {
        let mut common = MultiPoly::one();
        for v in vectors {
            common = poly_lcm(&common, v[coord].denominator());
        }
        for (i, v) in vectors.iter().enumerate() {
            let scale = exact_div(&common, v[coord].denominator()).expect("lcm divisible");
            let scaled = v[coord].numerator() * &scale;
            for (m, c) in scaled.terms() {
                rows.entry((coord, m.clone()))
                    .or_insert_with(|| vec![ExactScalar::zero(); n])[i] = c.clone();
            }
        }
    }
    Ok(rows.into_values().collect())
}

/// Finds constants `c_i`, not all zero, with `sum c_i v_i = 0`, by exact
/// elimination on the monomial-coefficient system. Returns `None` exactly
/// when the vectors are linearly independent over the rationals.
///
/// The constants are sought over the rational field. For rational input
/// data this loses nothing: the coefficient system is rational, so a real
/// solution exists only if a rational one does.
pub fn linear_dependence(vectors: &[Vec<Expr>]) -> Result<Option<Vec<ExactScalar>>> {
    if vectors.is_empty() {
        return Err(CoreError::Usage(
            "linear dependence needs at least one vector".to_string(),
        ));
    }
    // A zero vector gives an immediate relation.
    if let Some(i) = vectors.iter().position(|v| v.iter().all(Expr::is_zero)) {
        let mut c = vec![ExactScalar::zero(); vectors.len()];
        c[i] = ExactScalar::one();
        return Ok(Some(c));
    }
    let matrix = coefficient_matrix(vectors)?;
    Ok(nullspace_vector(matrix))
}

/// Expresses `target` as `sum x_i v_i` with rational `x_i`, if possible.
pub fn express_in_span(target: &[Expr], vectors: &[Vec<Expr>]) -> Result<Option<Vec<ExactScalar>>> {
    if vectors.is_empty() {
        return Err(CoreError::Usage("empty span".to_string()));
    }
    let mut all: Vec<Vec<Expr>> = vectors.to_vec();
    all.push(target.to_vec());
    let matrix = coefficient_matrix(&all)?;
    let n = vectors.len();
    let rows: Vec<Vec<ExactScalar>> = matrix.iter().map(|r| r[..n].to_vec()).collect();
    let rhs: Vec<ExactScalar> = matrix.iter().map(|r| r[n].clone()).collect();
    Ok(solve(&rows, &rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::symbol::Indeterminate;

    fn x() -> Expr {
        Expr::var(&Indeterminate::chart("x"))
    }

    #[test]
    fn scalar_multiple_detected() {
        // [x, 2x] -> (2, -1) up to scale
        let v1 = vec![x()];
        let v2 = vec![Expr::int(2) * x()];
        let c = linear_dependence(&[v1, v2]).unwrap().unwrap();
        assert!((Expr::scalar(c[0].clone()) * x()
            + Expr::scalar(c[1].clone()) * Expr::int(2) * x())
        .is_zero());
        assert_eq!(&c[0] / &c[1], ExactScalar::from_int(-2));
    }

    #[test]
    fn distinct_monomials_independent() {
        let v1 = vec![x().pow(5).unwrap()];
        let v2 = vec![x().pow(3).unwrap()];
        assert!(linear_dependence(&[v1, v2]).unwrap().is_none());
    }

    #[test]
    fn empty_input_is_usage_error() {
        assert!(matches!(
            linear_dependence(&[]),
            Err(CoreError::Usage(_))
        ));
    }

    #[test]
    fn express_in_span_works() {
        let target = vec![Expr::int(3) * x() + Expr::int(2) * x().pow(2).unwrap()];
        let v1 = vec![x()];
        let v2 = vec![x().pow(2).unwrap()];
        let sol = express_in_span(&target, &[v1, v2]).unwrap().unwrap();
        assert_eq!(sol[0], ExactScalar::from_int(3));
        assert_eq!(sol[1], ExactScalar::from_int(2));
        let bad = vec![x().pow(4).unwrap()];
        assert!(express_in_span(&bad, &[vec![x()]]).unwrap().is_none());
    }

    #[test]
    fn rational_fractions_handled() {
        // vectors with denominators: [1/(x+1), 2/(x+1)] are dependent
        let d = x() + Expr::int(1);
        let v1 = vec![Expr::one() / &d];
        let v2 = vec![Expr::int(2) / &d];
        assert!(linear_dependence(&[v1, v2]).unwrap().is_some());
    }
}
