//! Gauss-Legendre quadrature with composite panels and refinement.

use crate::error::{Error, Result};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
///
/// Newton iteration on the Legendre recurrence; accurate to machine
/// precision for the panel sizes used here.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2, "need at least a 2-point rule");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess for the i-th root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and its derivative by upward recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 1..n {
                let kf = k as f64;
                let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        // The middle node is exactly zero; recompute its weight cleanly.
        let mut p0 = 1.0;
        let mut p1 = 0.0;
        for k in 1..n {
            let kf = k as f64;
            let p2 = (-kf * p0) / (kf + 1.0);
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (0.0 * p1 - p0) / (0.0 - 1.0);
        nodes[m - 1] = 0.0;
        weights[m - 1] = 2.0 / (dp * dp);
    }
    (nodes, weights)
}

/// Integrate `f` over [a, b] split into `panels` equal panels with an
/// n-point Gauss-Legendre rule per panel.
pub fn integrate_panels<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize, n: usize) -> f64 {
    let (nodes, weights) = gauss_legendre(n);
    let width = (b - a) / panels as f64;
    let half = 0.5 * width;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * width;
        let mut panel_sum = 0.0;
        for (x, w) in nodes.iter().zip(&weights) {
            panel_sum += w * f(mid + half * x);
        }
        total += half * panel_sum;
    }
    total
}

/// Controls for refined radial quadrature.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureConfig {
    pub r_min: f64,
    pub r_max: f64,
    pub points_per_panel: usize,
    pub initial_panels: usize,
    /// Relative agreement required between successive refinements.
    pub tol: f64,
    pub max_refinements: usize,
}

impl QuadratureConfig {
    pub fn for_range(r_min: f64, r_max: f64) -> Self {
        QuadratureConfig {
            r_min,
            r_max,
            points_per_panel: 64,
            initial_panels: 4,
            tol: 1e-11,
            max_refinements: 10,
        }
    }
}

/// Integrate with panel doubling until two successive estimates agree to
/// `cfg.tol` relative (floored at 1), or fail with a quadrature error.
pub fn integrate_refined<F: Fn(f64) -> f64>(f: &F, cfg: &QuadratureConfig) -> Result<f64> {
    let mut panels = cfg.initial_panels;
    let mut previous = integrate_panels(f, cfg.r_min, cfg.r_max, panels, cfg.points_per_panel);
    for _ in 0..cfg.max_refinements {
        panels *= 2;
        let current = integrate_panels(f, cfg.r_min, cfg.r_max, panels, cfg.points_per_panel);
        let delta = (current - previous).abs();
        if delta <= cfg.tol * current.abs().max(1.0) {
            return Ok(current);
        }
        previous = current;
    }
    let current = integrate_panels(f, cfg.r_min, cfg.r_max, panels * 2, cfg.points_per_panel);
    let delta = (current - previous).abs();
    if delta <= cfg.tol * current.abs().max(1.0) {
        Ok(current)
    } else {
        Err(Error::QuadratureNonConvergent { delta, tol: cfg.tol })
    }
}

/// Periodic trapezoid rule over [0, 2π): spectrally accurate for smooth
/// periodic integrands such as exp(i k φ).
pub fn trapezoid_periodic<F: Fn(f64) -> f64>(f: &F, n: usize) -> f64 {
    let h = 2.0 * std::f64::consts::PI / n as f64;
    (0..n).map(|j| f(j as f64 * h)).sum::<f64>() * h
}
