use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};

/// Gauss rule for `∫_{−1}^{1} F(x) (1−x)^a dx` from the Jacobi matrix
/// (Golub–Welsch). `a = 0` is Gauss–Legendre.
pub fn gauss_jacobi(n: usize, a: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1 && a > -1.0);
    let b = 0.0;
    let mut j = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        let s = 2.0 * kf + a + b;
        j[(k, k)] = if k == 0 { (b - a) / (a + b + 2.0) } else { (b * b - a * a) / (s * (s + 2.0)) };
        if k + 1 < n {
            let m = kf + 1.0;
            let s = 2.0 * m + a + b;
            let num = 4.0 * m * (m + a) * (m + b) * (m + a + b);
            let den = s * s * (s + 1.0) * (s - 1.0);
            let off = (num / den).sqrt();
            j[(k, k + 1)] = off;
            j[(k + 1, k)] = off;
        }
    }
    let eig = SymmetricEigen::new(j);
    let mu0 = 2f64.powf(a + 1.0) / (a + 1.0);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| (eig.eigenvalues[i], mu0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    pairs.into_iter().unzip()
}

pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    gauss_jacobi(n, 0.0)
}

/// Nodes and weights for `∫_0^1 F(t) (1−t)^α dt`.
///
/// `refinement = 0` is one Gauss–Jacobi panel, exact for polynomial `F` of
/// degree `< 2n`. Otherwise panels `[1−4^{−i}, 1−4^{−i−1}]` use
/// Gauss–Legendre against the explicit weight and the last panel
/// `[1−4^{−R}, 1]` absorbs the endpoint with Gauss–Jacobi.
pub fn radial_rule(n: usize, alpha: f64, refinement: usize) -> Vec<(f64, f64)> {
    let (gj_x, gj_w) = gauss_jacobi(n, alpha);
    let (gl_x, gl_w) = gauss_legendre(n);
    let mut out = Vec::new();
    let mut lo = 0.0;
    for i in 1..=refinement {
        let hi = 1.0 - 0.25f64.powi(i as i32);
        let h = (hi - lo) / 2.0;
        for (x, w) in gl_x.iter().zip(&gl_w) {
            let t = lo + h * (x + 1.0);
            out.push((t, w * h * (1.0 - t).powf(alpha)));
        }
        lo = hi;
    }
    // ∫_lo^1 F(t)(1−t)^α dt with t = lo + (1−lo)(x+1)/2.
    let len = 1.0 - lo;
    let scale = (len / 2.0).powf(alpha + 1.0);
    for (x, w) in gj_x.iter().zip(&gj_w) {
        out.push((lo + len * (x + 1.0) / 2.0, w * scale));
    }
    out
}

/// Circle rule with weights summing to 1 (normalized arc length).
/// With no focus: `k` equispaced midpoints. With a focus angle: Gauss–Legendre
/// panels of `n` nodes graded geometrically (ratio 1/4, `levels` levels) on
/// both sides of the focus.
pub fn circle_rule(k: usize, focus: Option<f64>, levels: usize, n: usize) -> Vec<(f64, f64)> {
    match focus {
        None => (0..k).map(|j| (2.0 * PI * (j as f64 + 0.5) / k as f64, 1.0 / k as f64)).collect(),
        Some(phi) => {
            let (x, w) = gauss_legendre(n);
            let mut edges = vec![PI];
            for i in 1..=levels {
                edges.push(PI * 0.25f64.powi(i as i32));
            }
            edges.push(0.0);
            let mut out = Vec::new();
            for pair in edges.windows(2) {
                let (hi, lo) = (pair[0], pair[1]);
                let h = (hi - lo) / 2.0;
                for (xi, wi) in x.iter().zip(&w) {
                    let d = lo + h * (xi + 1.0);
                    let wt = wi * h / (2.0 * PI);
                    out.push((phi + d, wt));
                    out.push((phi - d, wt));
                }
            }
            out
        }
    }
}
