//! Quadrature rules: Gauss–Legendre on intervals, the trapezoid rule on
//! periodic directions, tensor grids on tori, and pulled-back integrals of
//! 2-forms over coordinate spheres.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "need at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi's initial guess, then Newton on P_n
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Legendre rule mapped onto `[a, b]`.
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    (
        x.iter().map(|t| mid + half * t).collect(),
        w.iter().map(|v| v * half).collect(),
    )
}

/// Uniform trapezoid rule on a full period `[0, period)`.
pub fn periodic_trapezoid(n: usize, period: f64) -> (Vec<f64>, Vec<f64>) {
    let h = period / n as f64;
    ((0..n).map(|i| i as f64 * h).collect(), vec![h; n])
}

/// Weighted sample points in the four-dimensional chart.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    pub points: Vec<[f64; 4]>,
    pub weights: Vec<f64>,
}

impl PointSet {
    pub fn single(point: [f64; 4]) -> Self {
        PointSet {
            points: vec![point],
            weights: vec![1.0],
        }
    }

    /// Tensor trapezoid grid on the torus `(ℝ / 2πℤ)^dims`, remaining
    /// coordinates fixed to zero. With `n` points per direction it integrates
    /// trigonometric polynomials of frequency below `n` exactly.
    pub fn torus(dims: usize, n: usize) -> Self {
        assert!((1..=4).contains(&dims));
        let (x, w) = periodic_trapezoid(n, 2.0 * PI);
        let mut points = Vec::new();
        let mut weights = Vec::new();
        let total = n.pow(dims as u32);
        for idx in 0..total {
            let mut p = [0.0; 4];
            let mut weight = 1.0;
            let mut rest = idx;
            for slot in p.iter_mut().take(dims) {
                *slot = x[rest % n];
                weight *= w[rest % n];
                rest /= n;
            }
            points.push(p);
            weights.push(weight);
        }
        PointSet { points, weights }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn integrate(&self, mut f: impl FnMut(&[f64; 4]) -> f64) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(p, w)| w * f(p))
            .sum()
    }

    pub fn try_integrate(&self, mut f: impl FnMut(&[f64; 4]) -> Result<f64>) -> Result<f64> {
        let mut acc = 0.0;
        for (p, w) in self.points.iter().zip(&self.weights) {
            acc += w * f(p)?;
        }
        Ok(acc)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphereQuadrature {
    pub theta_nodes: usize,
    pub phi_nodes: usize,
}

impl Default for SphereQuadrature {
    fn default() -> Self {
        SphereQuadrature {
            theta_nodes: 32,
            phi_nodes: 64,
        }
    }
}

impl SphereQuadrature {
    /// Integrates the `dθ∧dφ` coefficient `density(θ, φ)` over the coordinate
    /// sphere, oriented by `dθ∧dφ`.
    pub fn integrate(&self, mut density: impl FnMut(f64, f64) -> Result<f64>) -> Result<f64> {
        if self.theta_nodes == 0 || self.phi_nodes == 0 {
            return Err(Error::Domain("sphere quadrature needs positive node counts".into()));
        }
        let (th, wt) = gauss_legendre_on(self.theta_nodes, 0.0, PI);
        let (ph, wp) = periodic_trapezoid(self.phi_nodes, 2.0 * PI);
        let mut acc = 0.0;
        for (t, a) in th.iter().zip(&wt) {
            let mut row = 0.0;
            for (p, b) in ph.iter().zip(&wp) {
                let v = density(*t, *p)?;
                if !v.is_finite() {
                    return Err(Error::Domain(format!("non-finite integrand at θ={t}, φ={p}")));
                }
                row += b * v;
            }
            acc += a * row;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_weights_sum_to_two() {
        for n in [1, 2, 5, 32] {
            let (_, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
        }
    }

    #[test]
    fn legendre_exact_for_polynomials() {
        let n = 6;
        let (x, w) = gauss_legendre(n);
        for k in 0..2 * n {
            let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k as i32)).sum();
            let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            assert!((q - exact).abs() < 1e-13, "k={k}: {q} vs {exact}");
        }
    }

    #[test]
    fn sphere_area() {
        let q = SphereQuadrature::default();
        let a = q.integrate(|t, _| Ok(t.sin())).unwrap();
        assert!((a - 4.0 * PI).abs() < 1e-12);
        let r0: f64 = 3.7;
        let a = q.integrate(|t, _| Ok(r0 * r0 * t.sin())).unwrap();
        assert!((a - 4.0 * PI * r0 * r0).abs() < 1e-11);
        assert_eq!(q.integrate(|_, _| Ok(0.0)).unwrap(), 0.0);
    }

    #[test]
    fn torus_integrates_trig_products() {
        let grid = PointSet::torus(3, 5);
        let v = grid.integrate(|p| (p[0].cos() * p[1].sin()).powi(2) * (1.0 + p[2].cos()));
        let exact = (2.0 * PI).powi(3) / 4.0;
        assert!((v - exact).abs() < 1e-11);
        let v = grid.integrate(|p| (p[0] + p[1]).sin().powi(4));
        assert!((v - 3.0 / 8.0 * (2.0 * PI).powi(3)).abs() < 1e-10);
    }
}
