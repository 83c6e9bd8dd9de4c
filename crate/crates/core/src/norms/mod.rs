//! Norms and seminorms on the disc, and finite sections of operators on `A²_α`.
//!
//! Normalization: `‖f‖^p_{α,p} = (α+1) ∫_𝔻 |f|^p (1−|z|²)^α dA` with `dA`
//! the normalized area measure, so `‖1‖ = 1`; `α = −1` is `H^p`.
//! Suprema over grids are lower bounds of the true suprema.

mod quadrature;

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{Poly, Scalar, ZPoly};
use crate::expr::OperatorExpr;
use crate::rewrite::evaluate_exact;
use crate::series::{Analytic, FloatSeries};

pub use quadrature::{circle_rule, gauss_jacobi, gauss_legendre, radial_rule};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NormError {
    #[error("weight exponent alpha = {0} is below -1")]
    AlphaOutOfRange(i32),
    #[error("power iteration did not converge in {iterations} steps (last relative change {change:e})")]
    NonConvergence { iterations: usize, change: f64 },
}

/// Quadrature layout for [`bergman_norm`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadConfig {
    /// Gauss nodes per radial panel (also per angular panel when focused).
    pub radial_nodes: usize,
    /// Equispaced angular nodes when `focus_angle` is `None`.
    pub angular_nodes: usize,
    /// Number of geometric panels toward the boundary (ratio 1/4 in `1 − r²`
    /// and, when focused, in angle).
    pub refinement: usize,
    /// Angle at which the integrand concentrates, if any.
    pub focus_angle: Option<f64>,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { radial_nodes: 32, angular_nodes: 256, refinement: 4, focus_angle: None }
    }
}

impl QuadConfig {
    /// Layout for integrands peaked near `e^{iφ}` at scale `4^{−refinement}`.
    pub fn focused(angle: f64, refinement: usize) -> Self {
        QuadConfig { radial_nodes: 32, angular_nodes: 0, refinement, focus_angle: Some(angle) }
    }

    /// Same layout with twice the nodes per panel.
    pub fn doubled(self) -> Self {
        QuadConfig { radial_nodes: 2 * self.radial_nodes, angular_nodes: 2 * self.angular_nodes, ..self }
    }
}

/// `‖zⁿ‖²` in `A²_α` (`H²` for `α = −1`): `(α+1)!·n!/(n+α+1)!`.
pub fn moment(n: u32, alpha: i32) -> Result<BigRational, NormError> {
    if alpha < -1 {
        return Err(NormError::AlphaOutOfRange(alpha));
    }
    if alpha == -1 {
        return Ok(BigRational::from_integer(1.into()));
    }
    // (α+1)!·n!/(n+α+1)! = 1 / C(n+α+1, n)
    let a = alpha as u64 + 1;
    let mut binom = BigInt::from(1);
    for i in 1..=n as u64 {
        binom = binom * BigInt::from(a + i) / BigInt::from(i);
    }
    Ok(BigRational::new(1.into(), binom))
}

/// `‖zⁿ‖²` for `n < len` and real `α ≥ −1`, by `m_n = m_{n−1}·n/(n+α+1)`.
pub fn moments_f64(len: usize, alpha: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    let mut m = 1.0;
    for n in 0..len {
        if n > 0 {
            m *= n as f64 / (n as f64 + alpha + 1.0);
        }
        out.push(m);
    }
    out
}

/// `A²_α` norm (`H²` for `α = −1`) straight from the coefficients.
pub fn coefficient_norm(f: &FloatSeries, alpha: f64) -> f64 {
    let m = moments_f64(f.coeffs().len(), alpha);
    f.coeffs().iter().zip(&m).map(|(c, m)| c.norm_sqr() * m).sum::<f64>().sqrt()
}

pub fn bergman_norm<F: Analytic + Sync + ?Sized>(f: &F, alpha: f64, p: f64, cfg: &QuadConfig) -> f64 {
    assert!(alpha > -1.0, "use hardy_norm for alpha = -1");
    let radial = radial_rule(cfg.radial_nodes, alpha, cfg.refinement);
    let angular = circle_rule(cfg.angular_nodes, cfg.focus_angle, cfg.refinement, cfg.radial_nodes);
    let total: f64 = radial
        .par_iter()
        .map(|&(t, wt)| {
            let r = t.sqrt();
            let ring: f64 = angular
                .iter()
                .map(|&(th, wth)| wth * f.value(Complex64::from_polar(r, th)).norm().powf(p))
                .sum();
            wt * ring
        })
        .sum();
    ((alpha + 1.0) * total).powf(1.0 / p)
}

/// `((1/K) Σ_j |f(e^{2πij/K})|^p)^{1/p}`.
pub fn hardy_norm<F: Analytic + ?Sized>(f: &F, p: f64, k: usize) -> f64 {
    let s: f64 = (0..k)
        .map(|j| f.value(Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / k as f64)).norm().powf(p))
        .sum();
    (s / k as f64).powf(1.0 / p)
}

/// Radii `1 − 10^{−j}` for `j = 1..=jmax`.
pub fn radius_ladder(jmax: u32) -> Vec<f64> {
    (1..=jmax).map(|j| 1.0 - 10f64.powi(-(j as i32))).collect()
}

/// `n_angles` equispaced points on each circle `|z| = r`, plus the origin.
pub fn polar_grid(radii: &[f64], n_angles: usize) -> Vec<Complex64> {
    let mut pts = vec![Complex64::new(0.0, 0.0)];
    for &r in radii {
        for j in 0..n_angles {
            pts.push(Complex64::from_polar(r, 2.0 * std::f64::consts::PI * j as f64 / n_angles as f64));
        }
    }
    pts
}

/// `max (1−|z|²)|f′(z)|` over the grid.
pub fn bloch_seminorm<F: Analytic + Sync + ?Sized>(f: &F, points: &[Complex64]) -> f64 {
    points.par_iter().map(|&z| (1.0 - z.norm_sqr()) * f.deriv(z).norm()).reduce(|| 0.0, f64::max)
}

/// `max |f(z)|` over the grid.
pub fn sup_norm<F: Analytic + Sync + ?Sized>(f: &F, points: &[Complex64]) -> f64 {
    points.par_iter().map(|&z| f.value(z).norm()).reduce(|| 0.0, f64::max)
}

/// `(∫_𝕋 |f|² P_a dm − |f(a)|²)^{1/2}`, i.e. `‖f∘φ_a − f(a)‖_{H²}`.
///
/// Without a focus: `K` equispaced midpoints while `K(1−|a|)` resolves the
/// Poisson kernel, graded panels around `arg a` otherwise. A focus angle forces
/// graded panels there down to scale `~1e−12`, for `f` with a boundary
/// singularity; it should be close to `arg a` when `|a|` is near 1.
pub fn garsia_at<F: Analytic + ?Sized>(f: &F, a: Complex64, k: usize, focus: Option<f64>) -> f64 {
    let d = 1.0 - a.norm();
    let rule = if focus.is_none() && k as f64 * d >= 32.0 {
        circle_rule(k, None, 0, 0)
    } else {
        let scale = if focus.is_some() { 1e-12 } else { (d / 10.0).max(1e-14) };
        let levels = ((std::f64::consts::PI / scale).ln() / 4f64.ln()).ceil().clamp(4.0, 30.0) as usize;
        circle_rule(0, Some(focus.unwrap_or(a.arg())), levels, GARSIA_PANEL_NODES)
    };
    let pa_num = 1.0 - a.norm_sqr();
    let mean: f64 = rule
        .iter()
        .map(|&(th, w)| {
            let z = Complex64::from_polar(1.0, th);
            w * f.value(z).norm_sqr() * pa_num / (z - a).norm_sqr()
        })
        .sum();
    (mean - f.value(a).norm_sqr()).max(0.0).sqrt()
}

const GARSIA_PANEL_NODES: usize = 24;

/// Supremum of [`garsia_at`] over the given points `a`.
pub fn garsia_bmoa<F: Analytic + Sync + ?Sized>(f: &F, a_points: &[Complex64], k: usize) -> f64 {
    a_points.par_iter().map(|&a| garsia_at(f, a, k, None)).reduce(|| 0.0, f64::max)
}

/// Finite section of an operator on `A²_α` in the orthonormal basis
/// `e_n = zⁿ/√m_n`: column `j` holds the image of `e_j`.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    pub mat: DMatrix<Complex64>,
    pub alpha: i32,
    /// Number of basis vectors fed in.
    pub n: usize,
}

pub fn operator_matrix(e: &OperatorExpr, g: &ZPoly, alpha: i32, n: usize) -> Result<OperatorMatrix, NormError> {
    let bw = e.letter_count() * g.degree().unwrap_or(0).max(1) + 1;
    let rows = n + bw;
    let m: Vec<f64> = (0..rows as u32)
        .map(|k| moment(k, alpha).map(|q| q.to_f64().unwrap_or(f64::NAN).sqrt()))
        .collect::<Result<_, _>>()?;
    let columns: Vec<ZPoly> = (0..n)
        .into_par_iter()
        .map(|j| evaluate_exact(e, &Poly::monomial(Scalar::from_int(1), j), g))
        .collect();
    let rows = rows.max(columns.iter().map(|c| c.coeffs().len()).max().unwrap_or(0));
    let mut mat = DMatrix::<Complex64>::zeros(rows, n);
    for (j, col) in columns.iter().enumerate() {
        for (i, c) in col.coeffs().iter().enumerate() {
            let mi = if i < m.len() { m[i] } else { moment(i as u32, alpha)?.to_f64().unwrap_or(f64::NAN).sqrt() };
            mat[(i, j)] = c.to_c64() * (mi / m[j]);
        }
    }
    Ok(OperatorMatrix { mat, alpha, n })
}

/// Maximum number of squarings of `AᴴA` (each doubles the power-iteration count).
pub const POWER_ITERATION_CAP: usize = 64;

/// Largest singular value by power iteration on `B = AᴴA`.
///
/// Step `i` applies `B^{2^i}` to a fixed start vector, with `B^{2^i}` formed by
/// repeated squaring, and stops once the Rayleigh quotient of `B` moves by less
/// than `tol` (relative).
pub fn operator_norm_trunc(mx: &OperatorMatrix, tol: f64) -> Result<f64, NormError> {
    let a = &mx.mat;
    let n = a.ncols();
    if n == 0 || a.iter().all(|c| c.norm() == 0.0) {
        return Ok(0.0);
    }
    let b = a.adjoint() * a;
    let v0 = DVector::<Complex64>::from_iterator(
        n,
        (0..n).map(|j| Complex64::new(1.0 + 0.1 * (j as f64).sin(), 0.05 * (j as f64).cos())),
    );
    let rayleigh = |v: &DVector<Complex64>| (v.adjoint() * &b * v)[(0, 0)].re / v.norm_squared();
    let mut p = b.clone();
    let mut last = rayleigh(&v0);
    let mut change = f64::INFINITY;
    for _ in 0..POWER_ITERATION_CAP {
        let v = &p * &v0;
        if v.norm() == 0.0 {
            return Ok(last.max(0.0).sqrt());
        }
        let sigma2 = rayleigh(&v);
        change = ((sigma2 - last) / sigma2).abs();
        if change < tol {
            return Ok(sigma2.max(0.0).sqrt());
        }
        last = sigma2;
        p = &p * &p;
        let scale = p.norm();
        p /= Complex64::new(scale, 0.0);
    }
    Err(NormError::NonConvergence { iterations: POWER_ITERATION_CAP, change })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, parse_zpoly};
    use crate::series::{test_function_h, SymbolSpec};

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn moments() {
        assert_eq!(moment(2, 0).unwrap(), BigRational::new(1.into(), 3.into()));
        assert_eq!(moment(7, -1).unwrap(), BigRational::from_integer(1.into()));
        for a in 0..3 {
            assert_eq!(moment(0, a).unwrap(), BigRational::from_integer(1.into()));
        }
        assert_eq!(moment(3, 2).unwrap(), BigRational::new(1.into(), 20.into()));
        assert!(moment(1, -2).is_err());
        let f = moments_f64(6, 2.0);
        for n in 0..6 {
            assert!((f[n] - moment(n as u32, 2).unwrap().to_f64().unwrap()).abs() < 1e-15);
        }
    }

    #[test]
    fn bergman_monomials() {
        let cfg = QuadConfig::default();
        for n in [0usize, 3, 10] {
            let f = FloatSeries::monomial(n, n);
            let v = bergman_norm(&f, 0.0, 2.0, &cfg);
            assert!((v - (1.0 / (n as f64 + 1.0)).sqrt()).abs() < 1e-10);
        }
        let h = test_function_h(c(0.5), 0.0, 2.0, 200);
        assert!((bergman_norm(&h, 0.0, 2.0, &cfg) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn hardy_values() {
        let f = FloatSeries::from_coeffs(vec![c(1.0), c(1.0)], 1);
        assert!((hardy_norm(&f, 2.0, 64) - 2f64.sqrt()).abs() < 1e-10);
        let z5 = FloatSeries::monomial(5, 5);
        assert!((hardy_norm(&z5, 3.0, 64) - 1.0).abs() < 1e-12);
        let h = SymbolSpec::TestH { lambda: c(0.5), alpha: -1.0, p: 2.0 };
        assert!((hardy_norm(&h, 2.0, 512) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn bloch_and_sup() {
        let z = FloatSeries::monomial(1, 1);
        assert!((bloch_seminorm(&z, &polar_grid(&[0.5], 8)) - 1.0).abs() < 1e-15);
        let g = SymbolSpec::LogEKernel;
        let vals: Vec<f64> = (1..=6).map(|j| bloch_seminorm(&g, &[c(1.0 - 10f64.powi(-j))])).collect();
        assert!(vals.windows(2).all(|w| w[1] > w[0]) && vals[5] < 2.0);
        let inv = SymbolSpec::LogEKernel.power(-0.5);
        let sup = sup_norm(&inv, &polar_grid(&radius_ladder(6), 64));
        assert!(sup <= 1.0 / (1.0 - 2f64.ln()).sqrt());
    }

    #[test]
    fn garsia_values() {
        let k = FloatSeries::constant(c(3.0), 4);
        assert!(garsia_at(&k, c(0.3), 128, None) < 1e-6);
        let z = FloatSeries::monomial(1, 1);
        assert!((garsia_at(&z, c(0.0), 128, None) - 1.0).abs() < 1e-12);
        // z∘φ_a − a has H² norm √(1−|a|²)
        for a in [Complex64::new(0.999, 0.0), Complex64::from_polar(0.99999, 2.0)] {
            let v = garsia_at(&z, a, 128, None);
            assert!((v - (1.0 - a.norm_sqr()).sqrt()).abs() < 1e-8, "{v}");
        }
    }

    #[test]
    fn shifts_and_multipliers() {
        let z = ZPoly::x();
        let mx = operator_matrix(&OperatorExpr::t(), &z, 0, 6).unwrap();
        for n in 0..5 {
            let want = 1.0 / (((n + 1) * (n + 2)) as f64).sqrt();
            assert!((mx.mat[(n + 1, n)].re - want).abs() < 1e-15);
        }
        let cst = Poly::constant(Scalar::from_int(3));
        let m = operator_matrix(&OperatorExpr::m(), &cst, 0, 10).unwrap();
        assert!((operator_norm_trunc(&m, 1e-12).unwrap() - 3.0).abs() < 1e-12);
        let s = operator_matrix(&parse("S").unwrap(), &cst, 0, 50).unwrap();
        assert!((operator_norm_trunc(&s, 1e-12).unwrap() - 3.0).abs() < 1e-6);
        let st = operator_matrix(&parse("S*T").unwrap(), &parse_zpoly("1+z").unwrap(), 0, 60).unwrap();
        let sv = st.mat.clone().singular_values().max();
        assert!((operator_norm_trunc(&st, 1e-13).unwrap() - sv).abs() < 1e-9 * sv);
        assert_eq!(s.mat[(0, 0)], c(0.0));
    }
}
