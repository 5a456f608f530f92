//! Brute-force reference implementations shared by the integration tests.
//!
//! Nothing here calls into the crate's geometry, metric or table code; the
//! element map is rebuilt from barycentric shape functions and integrals are
//! taken with a collapsed-cube Gauss–Legendre product rule.

#![allow(dead_code)]

use nalgebra::Matrix3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Gauss–Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for m in 2..=n {
                let p2 = ((2 * m - 1) as f64 * x * p1 - (m - 1) as f64 * p0) / m as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let step = p1 / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((0.5 * (1.0 - x), 0.5 * w));
    }
    out
}

/// Conical product rule on the reference tetrahedron. Exact for total
/// degree `2n - 3`.
pub struct ConicalRule {
    pub points: Vec<[f64; 3]>,
    pub weights: Vec<f64>,
}

impl ConicalRule {
    pub fn new(n: usize) -> Self {
        let gl = gauss_legendre(n);
        let mut points = Vec::new();
        let mut weights = Vec::new();
        for &(u, wu) in &gl {
            for &(v, wv) in &gl {
                for &(w, ww) in &gl {
                    let xi = u;
                    let eta = (1.0 - u) * v;
                    let zeta = (1.0 - u) * (1.0 - v) * w;
                    points.push([xi, eta, zeta]);
                    weights.push(wu * wv * ww * (1.0 - u).powi(2) * (1.0 - v));
                }
            }
        }
        Self { points, weights }
    }

    /// Degree 13, comfortably above the degree-7 mass integrand.
    pub fn standard() -> Self {
        Self::new(8)
    }

    pub fn integrate(&self, f: impl Fn([f64; 3]) -> f64) -> f64 {
        self.points.iter().zip(&self.weights).map(|(p, w)| f(*p) * w).sum()
    }
}

pub fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Barycentric coordinates `(1 - ξ - η - ζ, ξ, η, ζ)`.
fn bary(p: [f64; 3]) -> [f64; 4] {
    [1.0 - p[0] - p[1] - p[2], p[0], p[1], p[2]]
}

const EDGE_NODES: [(usize, usize); 6] = [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3)];

/// Derivatives of the barycentric coordinates with respect to `(ξ, η, ζ)`.
const DBARY: [[f64; 3]; 4] = [[-1.0, -1.0, -1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

pub fn shape(p: [f64; 3]) -> [f64; 10] {
    let l = bary(p);
    let mut phi = [0.0; 10];
    for k in 0..4 {
        phi[k] = l[k] * (2.0 * l[k] - 1.0);
    }
    for (e, &(a, b)) in EDGE_NODES.iter().enumerate() {
        phi[4 + e] = 4.0 * l[a] * l[b];
    }
    phi
}

pub fn shape_gradients(p: [f64; 3]) -> [[f64; 3]; 10] {
    let l = bary(p);
    let mut g = [[0.0; 3]; 10];
    for k in 0..4 {
        for d in 0..3 {
            g[k][d] = (4.0 * l[k] - 1.0) * DBARY[k][d];
        }
    }
    for (e, &(a, b)) in EDGE_NODES.iter().enumerate() {
        for d in 0..3 {
            g[4 + e][d] = 4.0 * (DBARY[a][d] * l[b] + l[a] * DBARY[b][d]);
        }
    }
    g
}

pub fn map_point(nodes: &[[f64; 3]; 10], p: [f64; 3]) -> [f64; 3] {
    let phi = shape(p);
    let mut x = [0.0; 3];
    for (n, f) in nodes.iter().zip(phi) {
        for d in 0..3 {
            x[d] += f * n[d];
        }
    }
    x
}

/// `∂x_r / ∂ξ_c` in row `r`, column `c`.
pub fn jacobian(nodes: &[[f64; 3]; 10], p: [f64; 3]) -> Matrix3<f64> {
    let g = shape_gradients(p);
    let mut j = Matrix3::zeros();
    for (n, gi) in nodes.iter().zip(g) {
        for r in 0..3 {
            for c in 0..3 {
                j[(r, c)] += n[r] * gi[c];
            }
        }
    }
    j
}

pub fn metric(nodes: &[[f64; 3]; 10], p: [f64; 3]) -> f64 {
    jacobian(nodes, p).determinant()
}

/// `∫ ρ0 g(p) φ_i φ_j` with an arbitrary weight `g` standing in for the metric.
pub fn weighted_mass(rule: &ConicalRule, density: f64, g: impl Fn([f64; 3]) -> f64) -> [[f64; 10]; 10] {
    let mut m = [[0.0; 10]; 10];
    for (p, w) in rule.points.iter().zip(&rule.weights) {
        let phi = shape(*p);
        let s = density * g(*p) * w;
        for i in 0..10 {
            for j in 0..10 {
                m[i][j] += s * phi[i] * phi[j];
            }
        }
    }
    m
}

/// Brute-force consistent mass matrix with the true cubic metric.
pub fn brute_force_mass(nodes: &[[f64; 3]; 10], density: f64) -> [[f64; 10]; 10] {
    weighted_mass(&ConicalRule::standard(), density, |p| metric(nodes, p))
}

pub fn natural_nodes() -> [[f64; 3]; 10] {
    let corners = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    straight_element(corners)
}

pub fn straight_element(corners: [[f64; 3]; 4]) -> [[f64; 3]; 10] {
    let mut nodes = [[0.0; 3]; 10];
    nodes[..4].copy_from_slice(&corners);
    for (e, &(a, b)) in EDGE_NODES.iter().enumerate() {
        for d in 0..3 {
            nodes[4 + e][d] = 0.5 * (corners[a][d] + corners[b][d]);
        }
    }
    nodes
}

/// Unit corner element with each mid-node coordinate shifted by a uniform
/// draw in `[-delta, delta]`.
pub fn perturbed_element(rng: &mut ChaCha8Rng, delta: f64) -> [[f64; 3]; 10] {
    let mut nodes = natural_nodes();
    for node in nodes.iter_mut().skip(4) {
        for c in node.iter_mut() {
            *c += rng.random_range(-delta..=delta);
        }
    }
    nodes
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn max_relative_deviation(a: &[[f64; 10]; 10], b: &[[f64; 10]; 10]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..10 {
        for j in 0..10 {
            worst = worst.max((a[i][j] - b[i][j]).abs() / b[i][j].abs());
        }
    }
    worst
}
