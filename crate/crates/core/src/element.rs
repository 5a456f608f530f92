//! Geometry of the 10-node tetrahedron.
//!
//! Natural coordinates `(ξ, η, ζ)` live in the reference tetrahedron with
//! vertices `(0,0,0)`, `(1,0,0)`, `(0,1,0)`, `(0,0,1)`. Node ordering:
//!
//! ```text
//! 1..4   vertices
//! 5      edge 1-2        8   edge 1-4
//! 6      edge 2-3        9   edge 2-4
//! 7      edge 1-3        10  edge 3-4
//! ```
//!
//! The Jacobian `∂X/∂(ξ, η, ζ)` of a quadratic map is linear in the natural
//! coordinates, so it is stored as a pencil `J⁰ + ξJ¹ + ηJ² + ζJ³`.

use nalgebra::Matrix3;

use crate::error::{Error, Result, SamplePoint};
use crate::exact_poly::TriPoly;
use crate::quadrature::QuadratureRule;

pub const NODE_COUNT: usize = 10;

/// Natural coordinates of the ten nodes.
pub const NODE_NATURAL_COORDS: [[f64; 3]; NODE_COUNT] = [
    [0.0, 0.0, 0.0],
    [1.0, 0.0, 0.0],
    [0.0, 1.0, 0.0],
    [0.0, 0.0, 1.0],
    [0.5, 0.0, 0.0],
    [0.5, 0.5, 0.0],
    [0.0, 0.5, 0.0],
    [0.0, 0.0, 0.5],
    [0.5, 0.0, 0.5],
    [0.0, 0.5, 0.5],
];

/// Vertex pairs (zero-based) spanned by mid-edge nodes 5..10.
pub const EDGES: [(usize, usize); 6] = [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3)];

pub const CENTROID: [f64; 3] = [0.25, 0.25, 0.25];

/// Gradients of the shape functions. Entry `[i][n]` holds the linear form
/// `c₀ + c₁ξ + c₂η + c₃ζ` of `∂φⁱ/∂ξₙ` as `[c₀, c₁, c₂, c₃]`.
const SHAPE_GRADIENTS: [[[f64; 4]; 3]; NODE_COUNT] = [
    [[-3.0, 4.0, 4.0, 4.0], [-3.0, 4.0, 4.0, 4.0], [-3.0, 4.0, 4.0, 4.0]],
    [[-1.0, 4.0, 0.0, 0.0], [0.0; 4], [0.0; 4]],
    [[0.0; 4], [-1.0, 0.0, 4.0, 0.0], [0.0; 4]],
    [[0.0; 4], [0.0; 4], [-1.0, 0.0, 0.0, 4.0]],
    [[4.0, -8.0, -4.0, -4.0], [0.0, -4.0, 0.0, 0.0], [0.0, -4.0, 0.0, 0.0]],
    [[0.0, 0.0, 4.0, 0.0], [0.0, 4.0, 0.0, 0.0], [0.0; 4]],
    [[0.0, 0.0, -4.0, 0.0], [4.0, -4.0, -8.0, -4.0], [0.0, 0.0, -4.0, 0.0]],
    [[0.0, 0.0, 0.0, -4.0], [0.0, 0.0, 0.0, -4.0], [4.0, -4.0, -4.0, -8.0]],
    [[0.0, 0.0, 0.0, 4.0], [0.0; 4], [0.0, 4.0, 0.0, 0.0]],
    [[0.0; 4], [0.0, 0.0, 0.0, 4.0], [0.0, 0.0, 4.0, 0.0]],
];

/// The ten quadratic shape functions at a point.
pub fn shape_functions(xi: f64, eta: f64, zeta: f64) -> [f64; NODE_COUNT] {
    let l = 1.0 - xi - eta - zeta;
    [
        l * (2.0 * l - 1.0),
        xi * (2.0 * xi - 1.0),
        eta * (2.0 * eta - 1.0),
        zeta * (2.0 * zeta - 1.0),
        4.0 * xi * l,
        4.0 * xi * eta,
        4.0 * eta * l,
        4.0 * zeta * l,
        4.0 * xi * zeta,
        4.0 * eta * zeta,
    ]
}

/// The shape functions as exact rational polynomials.
pub fn shape_functions_exact() -> [TriPoly; NODE_COUNT] {
    let one = TriPoly::from_int(1);
    let two = TriPoly::from_int(2);
    let four = TriPoly::from_int(4);
    let (x, y, z, l) = (TriPoly::xi(), TriPoly::eta(), TriPoly::zeta(), TriPoly::lambda());
    let corner = |c: &TriPoly| c * &(&(&two * c) - &one);
    let edge = |a: &TriPoly, b: &TriPoly| &(&four * a) * b;
    [
        corner(&l),
        corner(&x),
        corner(&y),
        corner(&z),
        edge(&x, &l),
        edge(&x, &y),
        edge(&y, &l),
        edge(&z, &l),
        edge(&x, &z),
        edge(&y, &z),
    ]
}

/// Determinant of a general 3×3 matrix, expanded along the first column.
pub fn det3(j: &Matrix3<f64>) -> f64 {
    j[(0, 0)] * j[(1, 1)] * j[(2, 2)]
        - j[(0, 0)] * j[(1, 2)] * j[(2, 1)]
        - j[(2, 0)] * j[(1, 1)] * j[(0, 2)]
        - j[(1, 0)] * j[(0, 1)] * j[(2, 2)]
        + j[(1, 0)] * j[(2, 1)] * j[(0, 2)]
        + j[(2, 0)] * j[(0, 1)] * j[(1, 2)]
}

/// Cartesian coordinates of the ten nodes of one element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tet10Nodes {
    coords: [[f64; 3]; NODE_COUNT],
}

impl Tet10Nodes {
    pub fn new(coords: [[f64; 3]; NODE_COUNT]) -> Self {
        Self { coords }
    }

    /// Straight-sided element with mid-edge nodes at the edge midpoints.
    pub fn from_corners(corners: [[f64; 3]; 4]) -> Self {
        let mut coords = [[0.0; 3]; NODE_COUNT];
        coords[..4].copy_from_slice(&corners);
        for (k, &(a, b)) in EDGES.iter().enumerate() {
            for d in 0..3 {
                coords[4 + k][d] = 0.5 * (corners[a][d] + corners[b][d]);
            }
        }
        Self { coords }
    }

    /// Unit corner tetrahedron whose isoparametric map is the identity.
    pub fn reference() -> Self {
        Self::new(NODE_NATURAL_COORDS)
    }

    pub fn coords(&self) -> &[[f64; 3]; NODE_COUNT] {
        &self.coords
    }

    pub fn node(&self, i: usize) -> [f64; 3] {
        self.coords[i]
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut coords = self.coords;
        coords.iter_mut().flatten().for_each(|c| *c *= factor);
        Self { coords }
    }

    /// Position of the material point at natural coordinates `p`.
    pub fn position(&self, p: [f64; 3]) -> [f64; 3] {
        let phi = shape_functions(p[0], p[1], p[2]);
        let mut x = [0.0; 3];
        for (w, node) in phi.iter().zip(self.coords.iter()) {
            for d in 0..3 {
                x[d] += w * node[d];
            }
        }
        x
    }

    /// Largest distance between two vertices.
    pub fn diameter(&self) -> f64 {
        let mut best: f64 = 0.0;
        for a in 0..4 {
            for b in (a + 1)..4 {
                best = best.max(distance(self.coords[a], self.coords[b]));
            }
        }
        best
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().flatten().all(|c| c.is_finite())
    }
}

fn distance(a: [f64; 3], b: [f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

/// Jacobian of the isoparametric map as the linear pencil
/// `J(ξ, η, ζ) = J⁰ + ξJ¹ + ηJ² + ζJ³`, with `J_mn = ∂X_m/∂ξ_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobianDecomposition {
    pub parts: [Matrix3<f64>; 4],
}

impl JacobianDecomposition {
    pub fn at(&self, p: [f64; 3]) -> Matrix3<f64> {
        self.parts[0] + self.parts[1] * p[0] + self.parts[2] * p[1] + self.parts[3] * p[2]
    }

    pub fn metric_at(&self, p: [f64; 3]) -> f64 {
        det3(&self.at(p))
    }

    pub fn is_constant(&self) -> bool {
        self.parts[1..].iter().all(|m| m.iter().all(|&v| v == 0.0))
    }
}

pub fn jacobian_decomposition(nodes: &Tet10Nodes) -> JacobianDecomposition {
    let mut parts = [Matrix3::zeros(); 4];
    for (node, grad) in nodes.coords.iter().zip(SHAPE_GRADIENTS.iter()) {
        for (n, form) in grad.iter().enumerate() {
            for (k, &c) in form.iter().enumerate() {
                if c == 0.0 {
                    continue;
                }
                for m in 0..3 {
                    parts[k][(m, n)] += c * node[m];
                }
            }
        }
    }
    JacobianDecomposition { parts }
}

/// Jacobian determinant at a point.
pub fn metric_at(nodes: &Tet10Nodes, p: [f64; 3]) -> f64 {
    jacobian_decomposition(nodes).metric_at(p)
}

/// Jacobian matrices evaluated at each of the ten nodes.
pub fn nodal_jacobians(nodes: &Tet10Nodes) -> [Matrix3<f64>; NODE_COUNT] {
    let pencil = jacobian_decomposition(nodes);
    NODE_NATURAL_COORDS.map(|p| pencil.at(p))
}

pub fn centroid_jacobian(nodes: &Tet10Nodes) -> Matrix3<f64> {
    jacobian_decomposition(nodes).at(CENTROID)
}

/// Metric values at the ten nodes.
pub fn nodal_metrics(nodes: &Tet10Nodes) -> [f64; NODE_COUNT] {
    nodal_jacobians(nodes).map(|j| det3(&j))
}

/// True when every mid-edge node sits within `tol × diameter` of its edge
/// midpoint.
pub fn is_straight_sided(nodes: &Tet10Nodes, tol: f64) -> bool {
    let limit = tol * nodes.diameter();
    EDGES.iter().enumerate().all(|(k, &(a, b))| {
        let (pa, pb) = (nodes.coords[a], nodes.coords[b]);
        let mid = [0.5 * (pa[0] + pb[0]), 0.5 * (pa[1] + pb[1]), 0.5 * (pa[2] + pb[2])];
        distance(nodes.coords[4 + k], mid) <= limit
    })
}

/// Checks the metric at the centroid, the ten nodes and the fifteen points of
/// the degree-5 rule. Returns the first non-positive sample.
pub fn check_validity(nodes: &Tet10Nodes) -> Result<()> {
    let pencil = jacobian_decomposition(nodes);
    let rule = QuadratureRule::fifteen_point();
    let samples = std::iter::once((SamplePoint::Centroid, CENTROID))
        .chain(
            NODE_NATURAL_COORDS
                .iter()
                .enumerate()
                .map(|(i, &p)| (SamplePoint::Node(i), p)),
        )
        .chain(
            rule.points
                .iter()
                .enumerate()
                .map(|(i, &p)| (SamplePoint::QuadraturePoint(i), p)),
        );
    for (location, point) in samples {
        positive_metric(pencil.metric_at(point), location, point)?;
    }
    Ok(())
}

/// Wraps a metric sample, failing on non-positive or non-finite values.
pub(crate) fn positive_metric(metric: f64, location: SamplePoint, point: [f64; 3]) -> Result<f64> {
    if metric > 0.0 && metric.is_finite() {
        Ok(metric)
    } else {
        Err(Error::InvalidElement {
            location,
            point,
            metric,
        })
    }
}
