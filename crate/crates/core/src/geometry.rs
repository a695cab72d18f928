//! Charts, fundamental forms, curvatures and second Beltrami operators.
//!
//! A chart is three expressions in two chart variables together with a
//! derivation environment. The analysis computes
//!
//! * the first form `g_ij = <x_i, x_j>`,
//! * the unit normal `n = (x_1 × x_2)/W` with `W^2 = det g` (positive
//!   root branch),
//! * the second form `h_ij = <x_ij, n>`,
//! * `K = det h / det g`, `H = g^ij h_ij / 2`,
//! * the third form `e_ij = <n_i, n_j>`, which is always free of the
//!   extension roots.
//!
//! The second Beltrami operator of a form `e` is
//! `-(1/sqrt e) d_j(sqrt e e^ij d_i f)`, expanded here to the root-free
//! coefficient form `-(e^ij d2_ij + [d_j e^ij + e^ij e_j/(2e)] d_i)`.

use std::sync::Arc;

use crate::algebra::derivation::DerivationEnv;
use crate::algebra::expr::Expr;
use crate::algebra::symbol::Indeterminate;
use crate::error::{CoreError, Result};

pub fn dot3(a: &[Expr; 3], b: &[Expr; 3]) -> Expr {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

pub fn cross3(a: &[Expr; 3], b: &[Expr; 3]) -> [Expr; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Scalar triple product `(a, b, c) = <a, b × c>` (the determinant with
/// rows `a`, `b`, `c`).
pub fn triple3(a: &[Expr; 3], b: &[Expr; 3], c: &[Expr; 3]) -> Expr {
    dot3(a, &cross3(b, c))
}

pub fn scale3(v: &[Expr; 3], s: &Expr) -> [Expr; 3] {
    [&v[0] * s, &v[1] * s, &v[2] * s]
}

pub fn add3(a: &[Expr; 3], b: &[Expr; 3]) -> [Expr; 3] {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
}

pub fn sub3(a: &[Expr; 3], b: &[Expr; 3]) -> [Expr; 3] {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

pub fn is_zero3(v: &[Expr; 3]) -> bool {
    v.iter().all(Expr::is_zero)
}

/// A parametric surface patch: three components in two chart variables,
/// differentiable to any order through its environment.
#[derive(Clone)]
pub struct SurfaceChart {
    name: String,
    components: [Expr; 3],
    vars: (Indeterminate, Indeterminate),
    env: Arc<DerivationEnv>,
}

impl SurfaceChart {
    pub fn new(
        name: impl Into<String>,
        components: [Expr; 3],
        vars: (Indeterminate, Indeterminate),
        env: Arc<DerivationEnv>,
    ) -> SurfaceChart {
        SurfaceChart { name: name.into(), components, vars, env }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn components(&self) -> &[Expr; 3] {
        &self.components
    }

    pub fn vars(&self) -> (&Indeterminate, &Indeterminate) {
        (&self.vars.0, &self.vars.1)
    }

    pub fn env(&self) -> &Arc<DerivationEnv> {
        &self.env
    }

    /// The chart moved by a constant offset.
    pub fn translated(&self, offset: &[Expr; 3]) -> SurfaceChart {
        SurfaceChart {
            name: format!("{}+offset", self.name),
            components: add3(&self.components, offset),
            vars: self.vars.clone(),
            env: self.env.clone(),
        }
    }

    fn deriv3(&self, v: &[Expr; 3], dir: &Indeterminate) -> Result<[Expr; 3]> {
        Ok([
            self.env.differentiate(&v[0], dir)?,
            self.env.differentiate(&v[1], dir)?,
            self.env.differentiate(&v[2], dir)?,
        ])
    }

    pub fn first_form(&self) -> Result<FundamentalForm> {
        let x1 = self.deriv3(&self.components, &self.vars.0)?;
        let x2 = self.deriv3(&self.components, &self.vars.1)?;
        Ok(FundamentalForm::new(
            FormLabel::First,
            self.vars.clone(),
            dot3(&x1, &x1),
            dot3(&x1, &x2),
            dot3(&x2, &x2),
        ))
    }

    pub fn second_form(&self) -> Result<FundamentalForm> {
        Ok(self.analyze()?.second)
    }

    pub fn third_form(&self) -> Result<FundamentalForm> {
        self.analyze()?.third.ok_or(CoreError::FlatChart)
    }

    pub fn gauss_curvature(&self) -> Result<Expr> {
        Ok(self.analyze()?.gauss)
    }

    pub fn mean_curvature(&self) -> Result<Expr> {
        Ok(self.analyze()?.mean)
    }

    /// Full geometric analysis of the chart.
    pub fn analyze(&self) -> Result<ChartGeometry> {
        let x = &self.components;
        let (u1, u2) = (&self.vars.0, &self.vars.1);
        let x1 = self.deriv3(x, u1)?;
        let x2 = self.deriv3(x, u2)?;
        let x11 = self.deriv3(&x1, u1)?;
        let x12 = self.deriv3(&x1, u2)?;
        let x22 = self.deriv3(&x2, u2)?;

        let first = FundamentalForm::new(
            FormLabel::First,
            self.vars.clone(),
            dot3(&x1, &x1),
            dot3(&x1, &x2),
            dot3(&x2, &x2),
        );
        let det_g = first.det();
        if det_g.is_zero() {
            return Err(CoreError::DegenerateMetric);
        }
        let sqrt_det_g = self.env.register_sqrt(&det_g)?;
        let big_n = cross3(&x1, &x2);
        let inv_root = sqrt_det_g.recip()?;
        let normal = scale3(&big_n, &inv_root);

        let second = FundamentalForm::new(
            FormLabel::Second,
            self.vars.clone(),
            dot3(&x11, &normal),
            dot3(&x12, &normal),
            dot3(&x22, &normal),
        );

        let gauss = second.det().checked_div(&det_g)?;
        let ginv = first.inverse()?;
        let mean = (&ginv[0] * second.e11()
            + Expr::int(2) * &ginv[1] * second.e12()
            + &ginv[2] * second.e22())
            / Expr::int(2);

        let third = if gauss.is_zero() {
            None
        } else {
            let n1 = self.deriv3(&normal, u1)?;
            let n2 = self.deriv3(&normal, u2)?;
            let form = FundamentalForm::new(
                FormLabel::Third,
                self.vars.clone(),
                dot3(&n1, &n1),
                dot3(&n1, &n2),
                dot3(&n2, &n2),
            );
            form.ensure_root_free()?;
            Some(form)
        };

        Ok(ChartGeometry {
            chart: self.clone(),
            first,
            second,
            third,
            gauss,
            mean,
            normal,
            sqrt_det_g,
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FormLabel {
    First,
    Second,
    Third,
}

impl std::fmt::Display for FormLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FormLabel::First => write!(f, "I"),
            FormLabel::Second => write!(f, "II"),
            FormLabel::Third => write!(f, "III"),
        }
    }
}

/// A symmetric quadratic form `e11 du^2 + 2 e12 du dv + e22 dv^2` on the
/// chart variables.
#[derive(Clone, Debug)]
pub struct FundamentalForm {
    label: FormLabel,
    vars: (Indeterminate, Indeterminate),
    e11: Expr,
    e12: Expr,
    e22: Expr,
}

impl FundamentalForm {
    pub fn new(
        label: FormLabel,
        vars: (Indeterminate, Indeterminate),
        e11: Expr,
        e12: Expr,
        e22: Expr,
    ) -> FundamentalForm {
        FundamentalForm { label, vars, e11, e12, e22 }
    }

    pub fn label(&self) -> FormLabel {
        self.label
    }

    pub fn vars(&self) -> (&Indeterminate, &Indeterminate) {
        (&self.vars.0, &self.vars.1)
    }

    pub fn e11(&self) -> &Expr {
        &self.e11
    }

    pub fn e12(&self) -> &Expr {
        &self.e12
    }

    pub fn e22(&self) -> &Expr {
        &self.e22
    }

    pub fn entries(&self) -> [&Expr; 3] {
        [&self.e11, &self.e12, &self.e22]
    }

    pub fn det(&self) -> Expr {
        &self.e11 * &self.e22 - &self.e12 * &self.e12
    }

    /// Inverse entries `[e^11, e^12, e^22]`.
    pub fn inverse(&self) -> Result<[Expr; 3]> {
        let det = self.det();
        if det.is_zero() {
            return Err(CoreError::DegenerateForm);
        }
        Ok([
            self.e22.checked_div(&det)?,
            -self.e12.checked_div(&det)?,
            self.e11.checked_div(&det)?,
        ])
    }

    pub fn is_zero(&self) -> bool {
        self.e11.is_zero() && self.e12.is_zero() && self.e22.is_zero()
    }

    pub fn ensure_root_free(&self) -> Result<()> {
        for e in self.entries() {
            if !e.is_root_free() {
                return Err(CoreError::ResidualRoot(e.to_string()));
            }
        }
        Ok(())
    }

    pub fn eq_form(&self, other: &FundamentalForm) -> bool {
        self.e11 == other.e11 && self.e12 == other.e12 && self.e22 == other.e22
    }

    /// Entrywise `a*self + b*other`.
    pub fn combine(&self, a: &Expr, other: &FundamentalForm, b: &Expr) -> FundamentalForm {
        FundamentalForm {
            label: self.label,
            vars: self.vars.clone(),
            e11: a * &self.e11 + b * &other.e11,
            e12: a * &self.e12 + b * &other.e12,
            e22: a * &self.e22 + b * &other.e22,
        }
    }
}

/// All derived geometric data of a chart.
pub struct ChartGeometry {
    pub chart: SurfaceChart,
    pub first: FundamentalForm,
    pub second: FundamentalForm,
    /// `None` exactly when the Gaussian curvature vanishes identically.
    pub third: Option<FundamentalForm>,
    pub gauss: Expr,
    pub mean: Expr,
    pub normal: [Expr; 3],
    pub sqrt_det_g: Expr,
}

impl ChartGeometry {
    pub fn third_form(&self) -> Result<&FundamentalForm> {
        self.third.as_ref().ok_or(CoreError::FlatChart)
    }

    /// Checks `III = 2H II - K I` entrywise.
    pub fn weingarten_identity_holds(&self) -> Result<bool> {
        let third = self.third_form()?;
        let two_h = Expr::int(2) * &self.mean;
        let expected = self.second.combine(&two_h, &self.first, &-&self.gauss);
        Ok(third.eq_form(&expected))
    }
}

/// Derives the third form (with curvatures) from given first and second
/// forms via `K = det h/det g`, `H = g^ij h_ij/2`, `III = 2H II - K I`.
/// This is the route used when a family is described by its forms rather
/// than by concrete components.
pub fn third_from_first_second(
    first: &FundamentalForm,
    second: &FundamentalForm,
) -> Result<(FundamentalForm, Expr, Expr)> {
    let det_g = first.det();
    if det_g.is_zero() {
        return Err(CoreError::DegenerateMetric);
    }
    let gauss = second.det().checked_div(&det_g)?;
    if gauss.is_zero() {
        return Err(CoreError::FlatChart);
    }
    let ginv = first.inverse()?;
    let mean = (&ginv[0] * second.e11()
        + Expr::int(2) * &ginv[1] * second.e12()
        + &ginv[2] * second.e22())
        / Expr::int(2);
    let two_h = Expr::int(2) * &mean;
    let mut third = second.combine(&two_h, first, &-&gauss);
    third.label = FormLabel::Third;
    third.ensure_root_free()?;
    Ok((third, gauss, mean))
}

/// The second Beltrami operator
/// `c11 d2_11 + c12 d2_12 + c22 d2_22 + c1 d_1 + c2 d_2` of a form.
#[derive(Clone)]
pub struct BeltramiOperator {
    vars: (Indeterminate, Indeterminate),
    pub c11: Expr,
    pub c12: Expr,
    pub c22: Expr,
    pub c1: Expr,
    pub c2: Expr,
}

/// Expands the operator definition. The leading symbol is `-e^ij`; the
/// first-order coefficients pick up `e^ij e_j / (2e)` from the square root
/// of the form determinant, which is why no root survives. Construction
/// fails loudly if a root does remain.
pub fn beltrami_operator(
    form: &FundamentalForm,
    env: &Arc<DerivationEnv>,
) -> Result<BeltramiOperator> {
    let det = form.det();
    if det.is_zero() {
        return Err(CoreError::DegenerateForm);
    }
    let inv = form.inverse()?;
    let (u1, u2) = (form.vars.0.clone(), form.vars.1.clone());
    let det_1 = env.differentiate(&det, &u1)?;
    let det_2 = env.differentiate(&det, &u2)?;
    let half_log_1 = det_1 / (Expr::int(2) * &det);
    let half_log_2 = det_2 / (Expr::int(2) * &det);

    let c11 = -&inv[0];
    let c12 = Expr::int(-2) * &inv[1];
    let c22 = -&inv[2];
    let c1 = -(env.differentiate(&inv[0], &u1)?
        + env.differentiate(&inv[1], &u2)?
        + &inv[0] * &half_log_1
        + &inv[1] * &half_log_2);
    let c2 = -(env.differentiate(&inv[1], &u1)?
        + env.differentiate(&inv[2], &u2)?
        + &inv[1] * &half_log_1
        + &inv[2] * &half_log_2);

    let op = BeltramiOperator { vars: (u1, u2), c11, c12, c22, c1, c2 };
    for (name, c) in op.coefficients() {
        if !c.is_root_free() {
            return Err(CoreError::ResidualRoot(format!("{name}: {c}")));
        }
    }
    Ok(op)
}

impl BeltramiOperator {
    pub fn vars(&self) -> (&Indeterminate, &Indeterminate) {
        (&self.vars.0, &self.vars.1)
    }

    pub fn coefficients(&self) -> [(&'static str, &Expr); 5] {
        [
            ("c11", &self.c11),
            ("c12", &self.c12),
            ("c22", &self.c22),
            ("c1", &self.c1),
            ("c2", &self.c2),
        ]
    }

    pub fn apply(&self, f: &Expr, env: &Arc<DerivationEnv>) -> Result<Expr> {
        let (u1, u2) = (&self.vars.0, &self.vars.1);
        let f1 = env.differentiate(f, u1)?;
        let f2 = env.differentiate(f, u2)?;
        let f11 = env.differentiate(&f1, u1)?;
        let f12 = env.differentiate(&f1, u2)?;
        let f22 = env.differentiate(&f2, u2)?;
        Ok(&self.c11 * f11
            + &self.c12 * f12
            + &self.c22 * f22
            + &self.c1 * f1
            + &self.c2 * f2)
    }

    pub fn apply_vec(&self, v: &[Expr; 3], env: &Arc<DerivationEnv>) -> Result<[Expr; 3]> {
        Ok([
            self.apply(&v[0], env)?,
            self.apply(&v[1], env)?,
            self.apply(&v[2], env)?,
        ])
    }

    /// `k`-fold application; `iterate(f, 0) = f`.
    pub fn iterate(&self, f: &Expr, k: u32, env: &Arc<DerivationEnv>) -> Result<Expr> {
        let mut acc = f.clone();
        for _ in 0..k {
            acc = self.apply(&acc, env)?;
        }
        Ok(acc)
    }
}

/// The first Beltrami operator of a form: the symmetric bilinear pairing
/// `grad(f, h) = e^ij d_i f d_j h`.
pub fn first_beltrami(
    form: &FundamentalForm,
    f: &Expr,
    h: &Expr,
    env: &Arc<DerivationEnv>,
) -> Result<Expr> {
    let inv = form.inverse()?;
    let (u1, u2) = (&form.vars.0, &form.vars.1);
    let f1 = env.differentiate(f, u1)?;
    let f2 = env.differentiate(f, u2)?;
    let h1 = env.differentiate(h, u1)?;
    let h2 = env.differentiate(h, u2)?;
    Ok(&inv[0] * &f1 * &h1 + &inv[1] * (&f1 * &h2 + &f2 * &h1) + &inv[2] * &f2 * &h2)
}

/// Checks the position-vector identity
/// `Delta x = grad(2H/K, n) - (2H/K) n` exactly on the chart.
pub fn position_identity_check(geom: &ChartGeometry) -> Result<bool> {
    let third = geom.third_form()?;
    let env = geom.chart.env();
    let op = beltrami_operator(third, env)?;
    let lhs = op.apply_vec(geom.chart.components(), env)?;
    let ratio = (Expr::int(2) * &geom.mean).checked_div(&geom.gauss)?;
    for i in 0..3 {
        let grad = first_beltrami(third, &ratio, &geom.normal[i], env)?;
        let rhs = grad - &ratio * &geom.normal[i];
        if lhs[i] != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane() -> SurfaceChart {
        let env = DerivationEnv::new();
        let u = env.chart_var("u").unwrap();
        let v = env.chart_var("v").unwrap();
        SurfaceChart::new(
            "plane",
            [Expr::var(&u), Expr::var(&v), Expr::zero()],
            (u, v),
            env,
        )
    }

    fn unit_sphere() -> SurfaceChart {
        let env = DerivationEnv::new();
        let u = env.chart_var("u").unwrap();
        let v = env.chart_var("v").unwrap();
        let omega = Expr::int(1) - Expr::var(&u).pow(2).unwrap() - Expr::var(&v).pow(2).unwrap();
        let w = env.register_sqrt(&omega).unwrap();
        SurfaceChart::new("sphere", [Expr::var(&u), Expr::var(&v), w], (u, v), env)
    }

    #[test]
    fn plane_first_form_and_flat_laplacian() {
        let chart = plane();
        let first = chart.first_form().unwrap();
        assert!(first.e11().is_one());
        assert!(first.e12().is_zero());
        assert!(first.e22().is_one());
        // II = 0 and III is rejected
        let geom = chart.analyze().unwrap();
        assert!(geom.second.is_zero());
        assert!(matches!(chart.third_form(), Err(CoreError::FlatChart)));
        // the flat Laplacian carries the leading minus
        let op = beltrami_operator(&geom.first, chart.env()).unwrap();
        assert_eq!(op.c11, Expr::int(-1));
        assert_eq!(op.c22, Expr::int(-1));
        assert!(op.c12.is_zero() && op.c1.is_zero() && op.c2.is_zero());
        let (u, _) = chart.vars();
        let f = Expr::var(u).pow(2).unwrap();
        assert_eq!(op.apply(&f, chart.env()).unwrap(), Expr::int(-2));
        assert!(op.apply(&Expr::one(), chart.env()).unwrap().is_zero());
    }

    #[test]
    fn plane_first_beltrami() {
        let chart = plane();
        let first = chart.first_form().unwrap();
        let (u, v) = chart.vars();
        let fu = Expr::var(u);
        let fv = Expr::var(v);
        assert!(first_beltrami(&first, &fu, &fv, chart.env())
            .unwrap()
            .is_zero());
        assert!(first_beltrami(&first, &fu, &fu, chart.env())
            .unwrap()
            .is_one());
    }

    #[test]
    fn sphere_third_form_equals_first() {
        let chart = unit_sphere();
        let geom = chart.analyze().unwrap();
        let third = geom.third_form().unwrap();
        assert!(third.eq_form(&geom.first));
        assert!(geom.gauss.is_one());
        assert!(geom.weingarten_identity_holds().unwrap());
        // <n, n> = 1 and <n, x_i> = 0
        assert!(dot3(&geom.normal, &geom.normal).is_one());
    }

    #[test]
    fn sphere_position_eigenfunctions() {
        let chart = unit_sphere();
        let geom = chart.analyze().unwrap();
        let op = beltrami_operator(geom.third_form().unwrap(), chart.env()).unwrap();
        let applied = op.apply_vec(chart.components(), chart.env()).unwrap();
        let twice = scale3(chart.components(), &Expr::int(2));
        assert_eq!(applied, twice);
    }

    #[test]
    fn sphere_position_identity() {
        let chart = unit_sphere();
        let geom = chart.analyze().unwrap();
        assert!(position_identity_check(&geom).unwrap());
    }

    #[test]
    fn metric_inverse_contract() {
        let chart = unit_sphere();
        let first = chart.first_form().unwrap();
        let inv = first.inverse().unwrap();
        // g_i1 g^1k + g_i2 g^2k = delta_i^k
        let d11 = first.e11() * &inv[0] + first.e12() * &inv[1];
        let d12 = first.e11() * &inv[1] + first.e12() * &inv[2];
        let d22 = first.e12() * &inv[1] + first.e22() * &inv[2];
        assert!(d11.is_one());
        assert!(d12.is_zero());
        assert!(d22.is_one());
    }

    #[test]
    fn translation_invariance_of_operator_application() {
        let chart = unit_sphere();
        let geom = chart.analyze().unwrap();
        let op = beltrami_operator(geom.third_form().unwrap(), chart.env()).unwrap();
        let p = Expr::var(&chart.env().param("p").unwrap());
        let shifted = chart.translated(&[p.clone(), Expr::zero(), Expr::zero()]);
        let a = op.apply_vec(shifted.components(), chart.env()).unwrap();
        let b = op.apply_vec(chart.components(), chart.env()).unwrap();
        // constants are annihilated
        assert_eq!(a, b);
    }
}
