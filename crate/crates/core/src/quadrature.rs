//! Symmetric Gauss-type rules on the reference tetrahedron and the
//! numerically integrated mass matrix they induce.
//!
//! Weights sum to 1/6, the reference volume. Rule data:
//!
//! - 1 point: centroid, degree 1.
//! - 4 points: Hammer–Marlowe–Stroud, `a = (5 + 3√5)/20`, degree 2.
//! - 5 points: Hammer–Marlowe–Stroud, negative centroid weight, degree 3.
//! - 15 points: Keast, degree 5.
//!
//! The certification tests in this module and in the acceptance suite are
//! what establish the exactness degrees; the literals only encode them.

use std::sync::OnceLock;

use crate::element::{jacobian_decomposition, positive_metric, shape_functions, Tet10Nodes, NODE_COUNT};
use crate::error::{Error, Result, SamplePoint};
use crate::exact_poly::{monomial_integral, to_f64};
use crate::mass::{MassMatrix, Scheme};

pub const SUPPORTED_RULES: [usize; 4] = [1, 4, 5, 15];

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    /// Natural coordinates `(ξ, η, ζ)` of each point.
    pub points: Vec<[f64; 3]>,
    pub weights: Vec<f64>,
    /// Highest total degree integrated exactly.
    pub exact_degree: u32,
}

/// Distinct permutations of barycentric coordinates, in first-seen order.
fn orbit(bary: [f64; 4]) -> Vec<[f64; 4]> {
    let mut out: Vec<[f64; 4]> = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let mut idx = [a, b, c, d];
                    idx.sort_unstable();
                    if idx != [0, 1, 2, 3] {
                        continue;
                    }
                    let p = [bary[a], bary[b], bary[c], bary[d]];
                    if !out.contains(&p) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

impl QuadratureRule {
    /// Builds a rule from `(barycentric generator, weight per point)` orbits;
    /// weights are given normalised to a unit-volume simplex.
    fn from_orbits(orbits: &[([f64; 4], f64)], exact_degree: u32) -> Self {
        let mut points = Vec::new();
        let mut weights = Vec::new();
        for &(bary, w) in orbits {
            for p in orbit(bary) {
                points.push([p[1], p[2], p[3]]);
                weights.push(w / 6.0);
            }
        }
        Self {
            points,
            weights,
            exact_degree,
        }
    }

    pub fn one_point() -> Self {
        Self::from_orbits(&[([0.25; 4], 1.0)], 1)
    }

    pub fn four_point() -> Self {
        let s5 = 5f64.sqrt();
        let a = (5.0 + 3.0 * s5) / 20.0;
        let b = (5.0 - s5) / 20.0;
        Self::from_orbits(&[([a, b, b, b], 0.25)], 2)
    }

    pub fn five_point() -> Self {
        let s = 1.0 / 6.0;
        Self::from_orbits(&[([0.25; 4], -0.8), ([0.5, s, s, s], 0.45)], 3)
    }

    /// Shared instance of the 15-point rule; also backs element validity checks.
    pub fn fifteen_point() -> &'static Self {
        static RULE: OnceLock<QuadratureRule> = OnceLock::new();
        RULE.get_or_init(|| {
            let third = 1.0 / 3.0;
            let eleventh = 1.0 / 11.0;
            let half_gap = 0.5 * (7.0f64 / 52.0).sqrt();
            let (a, b) = (0.25 - half_gap, 0.25 + half_gap);
            Self::from_orbits(
                &[
                    ([0.25; 4], 6544.0 / 36015.0),
                    ([0.0, third, third, third], 81.0 / 2240.0),
                    ([8.0 / 11.0, eleventh, eleventh, eleventh], 161051.0 / 2304960.0),
                    ([a, a, b, b], 338.0 / 5145.0),
                ],
                5,
            )
        })
    }

    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    /// Largest absolute error over all monomials `ξ^a η^b ζ^c` of total degree
    /// exactly `degree`, against the exact rational integral.
    pub fn max_monomial_error(&self, degree: u32) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..=degree {
            for b in 0..=(degree - a) {
                let c = degree - a - b;
                let exact = to_f64(&monomial_integral(a, b, c, 0));
                let approx = integrate_numeric(
                    |p| p[0].powi(a as i32) * p[1].powi(b as i32) * p[2].powi(c as i32),
                    self,
                );
                worst = worst.max((approx - exact).abs());
            }
        }
        worst
    }
}

/// One of the four baseline rules, by point count.
pub fn standard_rule(n_points: usize) -> Result<QuadratureRule> {
    shared_rule(n_points).cloned()
}

/// Process-wide instance of a baseline rule.
pub fn shared_rule(n_points: usize) -> Result<&'static QuadratureRule> {
    static LOW_ORDER: OnceLock<[QuadratureRule; 3]> = OnceLock::new();
    let low = LOW_ORDER.get_or_init(|| {
        [
            QuadratureRule::one_point(),
            QuadratureRule::four_point(),
            QuadratureRule::five_point(),
        ]
    });
    match n_points {
        1 => Ok(&low[0]),
        4 => Ok(&low[1]),
        5 => Ok(&low[2]),
        15 => Ok(QuadratureRule::fifteen_point()),
        n => Err(Error::UnsupportedRule(n)),
    }
}

/// Weighted sum `Σ f(p) w_p`; the integrand must already include the metric
/// if a physical-volume integral is wanted.
pub fn integrate_numeric<F>(f: F, rule: &QuadratureRule) -> f64
where
    F: Fn([f64; 3]) -> f64,
{
    rule.points
        .iter()
        .zip(rule.weights.iter())
        .map(|(p, w)| f(*p) * w)
        .sum()
}

/// Mass matrix `ρ0 Σ_p J(p) w_p φ(p) φ(p)ᵀ`.
pub fn mass_quadrature(nodes: &Tet10Nodes, density: f64, rule: &QuadratureRule) -> Result<MassMatrix> {
    let scheme = Scheme::for_rule(rule.n_points())?;
    let pencil = jacobian_decomposition(nodes);
    let mut m = [[0.0; NODE_COUNT]; NODE_COUNT];
    for (k, (p, w)) in rule.points.iter().zip(rule.weights.iter()).enumerate() {
        let metric = positive_metric(pencil.metric_at(*p), SamplePoint::QuadraturePoint(k), *p)?;
        let phi = shape_functions(p[0], p[1], p[2]);
        let scale = density * metric * w;
        for i in 0..NODE_COUNT {
            let si = scale * phi[i];
            for j in i..NODE_COUNT {
                m[i][j] += si * phi[j];
            }
        }
    }
    for i in 0..NODE_COUNT {
        for j in 0..i {
            m[i][j] = m[j][i];
        }
    }
    Ok(MassMatrix::new(scheme, m))
}
