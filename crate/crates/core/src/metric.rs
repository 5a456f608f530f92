//! The metric (Jacobian determinant) of a curved 10-node element as an
//! explicit cubic polynomial in the natural coordinates.

use crate::element::{jacobian_decomposition, Tet10Nodes};
use crate::exact_poly::Monomial;

pub const METRIC_TERMS: usize = 20;

/// Monomial order of [`MetricCoefficients`]: by degree, then
/// `ξ², ξη, η², ξζ, ηζ, ζ²` and `ξ³, ξ²η, ξη², η³, ξ²ζ, ξηζ, η²ζ, ξζ², ηζ², ζ³`.
pub const METRIC_MONOMIALS: [Monomial; METRIC_TERMS] = [
    Monomial([0, 0, 0]),
    Monomial([1, 0, 0]),
    Monomial([0, 1, 0]),
    Monomial([0, 0, 1]),
    Monomial([2, 0, 0]),
    Monomial([1, 1, 0]),
    Monomial([0, 2, 0]),
    Monomial([1, 0, 1]),
    Monomial([0, 1, 1]),
    Monomial([0, 0, 2]),
    Monomial([3, 0, 0]),
    Monomial([2, 1, 0]),
    Monomial([1, 2, 0]),
    Monomial([0, 3, 0]),
    Monomial([2, 0, 1]),
    Monomial([1, 1, 1]),
    Monomial([0, 2, 1]),
    Monomial([1, 0, 2]),
    Monomial([0, 1, 2]),
    Monomial([0, 0, 3]),
];

/// Position of `ξ^a η^b ζ^c` in [`METRIC_MONOMIALS`], if its degree is ≤ 3.
pub fn metric_index(m: Monomial) -> Option<usize> {
    METRIC_MONOMIALS.iter().position(|&x| x == m)
}

/// Monomial coefficients `J_0 … J_19` of the cubic metric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricCoefficients {
    pub j: [f64; METRIC_TERMS],
}

impl MetricCoefficients {
    pub fn eval(&self, p: [f64; 3]) -> f64 {
        METRIC_MONOMIALS
            .iter()
            .zip(self.j.iter())
            .map(|(m, c)| c * p[0].powi(m.0[0] as i32) * p[1].powi(m.0[1] as i32) * p[2].powi(m.0[2] as i32))
            .sum()
    }
}

type Linear = [f64; 4];

// Exponent of each linear basis function 1, ξ, η, ζ.
const LINEAR_BASIS: [[u32; 3]; 4] = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]];

fn triple_product(a: &Linear, b: &Linear, c: &Linear, sign: f64, out: &mut [f64; METRIC_TERMS]) {
    for (i, ea) in LINEAR_BASIS.iter().enumerate() {
        if a[i] == 0.0 {
            continue;
        }
        for (j, eb) in LINEAR_BASIS.iter().enumerate() {
            if b[j] == 0.0 {
                continue;
            }
            for (k, ec) in LINEAR_BASIS.iter().enumerate() {
                if c[k] == 0.0 {
                    continue;
                }
                let m = Monomial([ea[0] + eb[0] + ec[0], ea[1] + eb[1] + ec[1], ea[2] + eb[2] + ec[2]]);
                let idx = metric_index(m).expect("cubic monomial");
                out[idx] += sign * a[i] * b[j] * c[k];
            }
        }
    }
}

/// Expands `det(J⁰ + ξJ¹ + ηJ² + ζJ³)` into its 20 monomial coefficients.
pub fn metric_polynomial(nodes: &Tet10Nodes) -> MetricCoefficients {
    let pencil = jacobian_decomposition(nodes);
    let entry = |m: usize, n: usize| -> Linear {
        [
            pencil.parts[0][(m, n)],
            pencil.parts[1][(m, n)],
            pencil.parts[2][(m, n)],
            pencil.parts[3][(m, n)],
        ]
    };
    // Same six terms as `det3`, with (row, col) pairs per factor.
    const TERMS: [([(usize, usize); 3], f64); 6] = [
        ([(0, 0), (1, 1), (2, 2)], 1.0),
        ([(0, 0), (1, 2), (2, 1)], -1.0),
        ([(2, 0), (1, 1), (0, 2)], -1.0),
        ([(1, 0), (0, 1), (2, 2)], -1.0),
        ([(1, 0), (2, 1), (0, 2)], 1.0),
        ([(2, 0), (0, 1), (1, 2)], 1.0),
    ];
    let mut j = [0.0; METRIC_TERMS];
    for (factors, sign) in TERMS {
        let [a, b, c] = factors.map(|(m, n)| entry(m, n));
        triple_product(&a, &b, &c, sign, &mut j);
    }
    MetricCoefficients { j }
}
