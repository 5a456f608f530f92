//! Integer coefficient tables of the closed-form mass matrices, generated
//! from exact integration of shape-function products.
//!
//! With `φⁱ` the shape functions and `∫` the reference-tetrahedron integral:
//!
//! ```text
//! M0[i][j]      = 2520  ∫ φⁱ φʲ
//! LM_k[i][j]    = 5040  ∫ L_k φⁱ φʲ        L = (1−ξ−η−ζ, ξ, η, ζ)
//! QM_r[i][j]    = 45360 ∫ φʳ φⁱ φʲ
//! exact[i][j][w] = ∫ m_w φⁱ φʲ             m_w = w-th metric monomial
//! ```
//!
//! The published subsets of these tables are kept alongside as reference
//! data and checked by [`crate::validate`].

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::element::{shape_functions_exact, NODE_COUNT};
use crate::exact_poly::{Rational, TriPoly};
use crate::metric::{METRIC_MONOMIALS, METRIC_TERMS};

pub type IntTable = [[i64; NODE_COUNT]; NODE_COUNT];

pub const M0_SCALE: i64 = 2520;
pub const LM_SCALE: i64 = 5040;
pub const QM_SCALE: i64 = 45360;

/// Coefficients of `M^ij` in terms of the metric coefficients `J_w`:
/// `M^ij = ρ0 / denominator · Σ_w numerators[i][j][w] · J_w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactTensor {
    pub denominator: i64,
    pub numerators: [[[i64; METRIC_TERMS]; NODE_COUNT]; NODE_COUNT],
}

impl ExactTensor {
    pub fn coefficient(&self, i: usize, j: usize, w: usize) -> Rational {
        Rational::new(BigInt::from(self.numerators[i][j][w]), BigInt::from(self.denominator))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantTables {
    pub m0: IntTable,
    pub lm: [IntTable; 4],
    pub qm: [IntTable; NODE_COUNT],
    pub exact: ExactTensor,
}

fn scaled_integer(value: Rational, scale: i64) -> i64 {
    let scaled = value * BigInt::from(scale);
    assert!(scaled.is_integer(), "table entry {scaled} is not an integer");
    scaled.to_integer().to_i64().expect("table entry fits in i64")
}

fn symmetric_table(mut entry: impl FnMut(usize, usize) -> i64) -> IntTable {
    let mut t = [[0; NODE_COUNT]; NODE_COUNT];
    for i in 0..NODE_COUNT {
        for j in i..NODE_COUNT {
            t[i][j] = entry(i, j);
            t[j][i] = t[i][j];
        }
    }
    t
}

/// Regenerates every table from the exact oracle.
pub fn generate_constant_tables() -> ConstantTables {
    let phi = shape_functions_exact();
    let products: Vec<Vec<TriPoly>> = (0..NODE_COUNT)
        .map(|i| (0..NODE_COUNT).map(|j| &phi[i] * &phi[j]).collect())
        .collect();
    let weighted = |weight: &TriPoly, scale: i64| {
        symmetric_table(|i, j| scaled_integer((weight * &products[i][j]).integrate_over_reference(), scale))
    };

    let m0 = weighted(&TriPoly::from_int(1), M0_SCALE);
    let linear = [TriPoly::lambda(), TriPoly::xi(), TriPoly::eta(), TriPoly::zeta()];
    let lm = [0, 1, 2, 3].map(|k| weighted(&linear[k], LM_SCALE));
    let qm = std::array::from_fn(|r| weighted(&phi[r], QM_SCALE));

    let mut raw = vec![vec![Vec::new(); NODE_COUNT]; NODE_COUNT];
    let mut denominator = BigInt::one();
    for (i, row) in raw.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            for m in METRIC_MONOMIALS {
                let weight = TriPoly::term(m, Rational::one());
                let value = (&weight * &products[i][j]).integrate_over_reference();
                denominator = denominator.lcm(value.denom());
                cell.push(value);
            }
        }
    }
    let denominator = denominator.to_i64().expect("denominator fits in i64");
    let mut numerators = [[[0; METRIC_TERMS]; NODE_COUNT]; NODE_COUNT];
    for i in 0..NODE_COUNT {
        for j in 0..NODE_COUNT {
            for w in 0..METRIC_TERMS {
                numerators[i][j][w] = scaled_integer(raw[i][j][w].clone(), denominator);
            }
        }
    }

    ConstantTables {
        m0,
        lm,
        qm,
        exact: ExactTensor {
            denominator,
            numerators,
        },
    }
}

impl ConstantTables {
    /// Process-wide tables, generated on first use.
    pub fn global() -> &'static ConstantTables {
        static TABLES: OnceLock<ConstantTables> = OnceLock::new();
        TABLES.get_or_init(generate_constant_tables)
    }
}

/// Published straight-sided table, scale 2520.
pub const REFERENCE_M0: IntTable = [
    [6, 1, 1, 1, -4, -6, -4, -4, -6, -6],
    [1, 6, 1, 1, -4, -4, -6, -6, -4, -6],
    [1, 1, 6, 1, -6, -4, -4, -6, -6, -4],
    [1, 1, 1, 6, -6, -6, -6, -4, -4, -4],
    [-4, -4, -6, -6, 32, 16, 16, 16, 16, 8],
    [-6, -4, -4, -6, 16, 32, 16, 8, 16, 16],
    [-4, -6, -4, -6, 16, 16, 32, 16, 8, 16],
    [-4, -6, -6, -4, 16, 8, 16, 32, 16, 16],
    [-6, -4, -6, -4, 16, 16, 8, 16, 32, 16],
    [-6, -6, -4, -4, 8, 16, 16, 16, 16, 32],
];

/// Published linear-metric tables, scale 5040.
pub const REFERENCE_LM: [IntTable; 4] = [
    [
        [6, 0, 0, 0, 0, -2, 0, 0, -2, -2],
        [0, 2, 1, 1, -4, -2, -4, -4, -2, -2],
        [0, 1, 2, 1, -4, -2, -4, -4, -2, -2],
        [0, 1, 1, 2, -4, -2, -4, -4, -2, -2],
        [0, -4, -4, -4, 24, 8, 12, 12, 8, 4],
        [-2, -2, -2, -2, 8, 8, 8, 4, 4, 4],
        [0, -4, -4, -4, 12, 8, 24, 12, 4, 8],
        [0, -4, -4, -4, 12, 4, 12, 24, 8, 8],
        [-2, -2, -2, -2, 8, 4, 4, 8, 8, 4],
        [-2, -2, -2, -2, 4, 4, 8, 8, 4, 8],
    ],
    [
        [2, 0, 1, 1, -4, -4, -2, -2, -4, -2],
        [0, 6, 0, 0, 0, 0, -2, -2, 0, -2],
        [1, 0, 2, 1, -4, -4, -2, -2, -4, -2],
        [1, 0, 1, 2, -4, -4, -2, -2, -4, -2],
        [-4, 0, -4, -4, 24, 12, 8, 8, 12, 4],
        [-4, 0, -4, -4, 12, 24, 8, 4, 12, 8],
        [-2, -2, -2, -2, 8, 8, 8, 4, 4, 4],
        [-2, -2, -2, -2, 8, 4, 4, 8, 8, 4],
        [-4, 0, -4, -4, 12, 12, 4, 8, 24, 8],
        [-2, -2, -2, -2, 4, 8, 4, 4, 8, 8],
    ],
    [
        [2, 1, 0, 1, -2, -4, -4, -2, -2, -4],
        [1, 2, 0, 1, -2, -4, -4, -2, -2, -4],
        [0, 0, 6, 0, -2, 0, 0, -2, -2, 0],
        [1, 1, 0, 2, -2, -4, -4, -2, -2, -4],
        [-2, -2, -2, -2, 8, 8, 8, 4, 4, 4],
        [-4, -4, 0, -4, 8, 24, 12, 4, 8, 12],
        [-4, -4, 0, -4, 8, 12, 24, 8, 4, 12],
        [-2, -2, -2, -2, 4, 4, 8, 8, 4, 8],
        [-2, -2, -2, -2, 4, 8, 4, 4, 8, 8],
        [-4, -4, 0, -4, 4, 12, 12, 8, 8, 24],
    ],
    [
        [2, 1, 1, 0, -2, -2, -2, -4, -4, -4],
        [1, 2, 1, 0, -2, -2, -2, -4, -4, -4],
        [1, 1, 2, 0, -2, -2, -2, -4, -4, -4],
        [0, 0, 0, 6, -2, -2, -2, 0, 0, 0],
        [-2, -2, -2, -2, 8, 4, 4, 8, 8, 4],
        [-2, -2, -2, -2, 4, 8, 4, 4, 8, 8],
        [-2, -2, -2, -2, 4, 4, 8, 8, 4, 8],
        [-4, -4, -4, 0, 8, 4, 8, 24, 12, 12],
        [-4, -4, -4, 0, 8, 8, 4, 12, 24, 12],
        [-4, -4, -4, 0, 4, 8, 8, 12, 12, 24],
    ],
];

/// Published quadratic-metric table for node 1, scale 45360.
pub const REFERENCE_QM_FIRST: IntTable = [
    [18, -6, -6, -6, 24, 12, 24, 24, 12, 12],
    [-6, -6, -1, -1, 0, 6, 6, 6, 6, 8],
    [-6, -1, -6, -1, 6, 6, 0, 6, 8, 6],
    [-6, -1, -1, -6, 6, 8, 6, 0, 6, 6],
    [24, 0, 6, 6, -24, -24, -12, -12, -24, -12],
    [12, 6, 6, 8, -24, -40, -24, -12, -20, -20],
    [24, 6, 0, 6, -12, -24, -24, -12, -12, -24],
    [24, 6, 6, 0, -12, -12, -12, -24, -24, -24],
    [12, 6, 8, 6, -24, -20, -12, -24, -40, -20],
    [12, 8, 6, 6, -12, -20, -24, -24, -20, -40],
];

/// Published quadratic-metric table for node 10, scale 45360.
pub const REFERENCE_QM_LAST: IntTable = [
    [12, 8, 6, 6, -12, -20, -24, -24, -20, -40],
    [8, 12, 6, 6, -12, -24, -20, -20, -24, -40],
    [6, 6, 24, 0, -12, -12, -12, -24, -24, -24],
    [6, 6, 0, 24, -12, -24, -24, -12, -12, -24],
    [-12, -12, -12, -12, 32, 32, 32, 32, 32, 32],
    [-20, -24, -12, -24, 32, 96, 48, 32, 64, 96],
    [-24, -20, -12, -24, 32, 48, 96, 64, 32, 96],
    [-24, -20, -24, -12, 32, 32, 64, 96, 48, 96],
    [-20, -24, -24, -12, 32, 64, 32, 48, 96, 96],
    [-40, -40, -24, -24, 32, 96, 96, 96, 96, 288],
];

/// Published coefficients of `M^55` (node 5 with itself) against `J_0 … J_19`.
pub const REFERENCE_M55_NUMERATORS: [i64; METRIC_TERMS] = [
    720, 270, 90, 90, 120, 30, 20, 30, 10, 20, 60, 12, 6, 6, 12, 3, 2, 6, 2, 6,
];
pub const REFERENCE_M55_DENOMINATOR: i64 = 56700;
