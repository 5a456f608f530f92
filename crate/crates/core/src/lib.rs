//! Consistent mass matrices of 10-node tetrahedral elements from closed-form
//! integration.
//!
//! The crate provides
//!
//! - an exact rational polynomial oracle ([`exact_poly`]) from which every
//!   coefficient table is generated ([`tables`]),
//! - element geometry and the cubic metric polynomial ([`element`], [`metric`]),
//! - the exact, constant-, linear- and quadratic-metric mass matrices
//!   ([`mass`]) and Gauss-type baselines ([`quadrature`]),
//! - a reproducible randomised accuracy study ([`study`]),
//! - mesh file I/O, CSV output and self-validation ([`mesh`], [`report`], [`validate`]).
//!
//! ```
//! use tet10_mass::{mass_cm, mass_exact, Tet10Nodes};
//!
//! let nodes = Tet10Nodes::reference();
//! let exact = mass_exact(&nodes, 2520.0).unwrap();
//! let cm = mass_cm(&nodes, 2520.0).unwrap();
//! assert!((exact.get(0, 0) - 6.0).abs() < 1e-12);
//! assert!((cm.get(4, 4) - 32.0).abs() < 1e-12);
//! ```

#![allow(clippy::needless_range_loop)]

pub mod element;
pub mod error;
pub mod exact_poly;
pub mod mass;
pub mod mesh;
pub mod metric;
pub mod quadrature;
pub mod report;
pub mod study;
pub mod tables;
pub mod validate;

pub use element::{
    check_validity, is_straight_sided, jacobian_decomposition, metric_at, nodal_jacobians, shape_functions,
    shape_functions_exact, JacobianDecomposition, Tet10Nodes,
};
pub use error::{Error, Result, SamplePoint};
pub use exact_poly::{integrate_over_reference, monomial_integral, poly_mul, Rational, TriPoly};
pub use mass::{compute, element_volume, mass_cm, mass_exact, mass_lm, mass_qm, MassMatrix, Scheme};
pub use mesh::{parse_mesh, write_mesh, MeshElement};
pub use metric::{metric_polynomial, MetricCoefficients};
pub use quadrature::{integrate_numeric, mass_quadrature, shared_rule, standard_rule, QuadratureRule};
pub use study::{run_study, run_study_with, Execution, StudyConfig, StudyResult};
pub use tables::{generate_constant_tables, ConstantTables};
