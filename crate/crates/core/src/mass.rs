//! Closed-form consistent mass matrices: exact (cubic metric), constant
//! metric (CM), linear metric (LM) and quadratic metric (QM).
//!
//! All closed-form schemes contract integer tables from [`crate::tables`]
//! with a handful of metric values, so runtime cost is a few hundred flops.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use nalgebra::SMatrix;

use crate::element::{
    check_validity, det3, jacobian_decomposition, positive_metric, Tet10Nodes, CENTROID, NODE_COUNT,
    NODE_NATURAL_COORDS,
};
use crate::error::{Error, Result, SamplePoint};
use crate::exact_poly::{monomial_integral, to_f64};
use crate::metric::{metric_polynomial, METRIC_MONOMIALS, METRIC_TERMS};
use crate::quadrature::{mass_quadrature, shared_rule};
use crate::tables::{ConstantTables, IntTable, LM_SCALE, M0_SCALE, QM_SCALE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    Exact,
    Cm,
    Lm,
    Qm,
    G1,
    G4,
    G5,
    G15,
}

impl Scheme {
    pub const ALL: [Scheme; 8] = [
        Scheme::Exact,
        Scheme::Cm,
        Scheme::Lm,
        Scheme::Qm,
        Scheme::G1,
        Scheme::G4,
        Scheme::G5,
        Scheme::G15,
    ];

    /// Every scheme except the exact reference.
    pub const APPROXIMATE: [Scheme; 7] = [
        Scheme::Cm,
        Scheme::Lm,
        Scheme::Qm,
        Scheme::G1,
        Scheme::G4,
        Scheme::G5,
        Scheme::G15,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Exact => "exact",
            Scheme::Cm => "cm",
            Scheme::Lm => "lm",
            Scheme::Qm => "qm",
            Scheme::G1 => "g1",
            Scheme::G4 => "g4",
            Scheme::G5 => "g5",
            Scheme::G15 => "g15",
        }
    }

    pub fn for_rule(n_points: usize) -> Result<Scheme> {
        match n_points {
            1 => Ok(Scheme::G1),
            4 => Ok(Scheme::G4),
            5 => Ok(Scheme::G5),
            15 => Ok(Scheme::G15),
            n => Err(Error::UnsupportedRule(n)),
        }
    }

    /// Point count of a quadrature scheme.
    pub fn rule_points(self) -> Option<usize> {
        match self {
            Scheme::G1 => Some(1),
            Scheme::G4 => Some(4),
            Scheme::G5 => Some(5),
            Scheme::G15 => Some(15),
            _ => None,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        Scheme::ALL
            .into_iter()
            .find(|scheme| scheme.name() == lower)
            .ok_or_else(|| Error::UnknownScheme(s.to_string()))
    }
}

/// A 10×10 element mass matrix tagged with the scheme that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassMatrix {
    scheme: Scheme,
    entries: [[f64; NODE_COUNT]; NODE_COUNT],
}

impl MassMatrix {
    pub fn new(scheme: Scheme, entries: [[f64; NODE_COUNT]; NODE_COUNT]) -> Self {
        Self { scheme, entries }
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn entries(&self) -> &[[f64; NODE_COUNT]; NODE_COUNT] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j]
    }

    /// Sum of all 100 entries; equals ρ0 times the (approximated) volume.
    pub fn total(&self) -> f64 {
        self.entries.iter().flatten().sum()
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..NODE_COUNT {
            for j in 0..i {
                worst = worst.max((self.entries[i][j] - self.entries[j][i]).abs());
            }
        }
        worst
    }

    pub fn to_matrix(&self) -> SMatrix<f64, NODE_COUNT, NODE_COUNT> {
        SMatrix::from_fn(|i, j| self.entries[i][j])
    }

    /// Whether a Cholesky factorisation succeeds.
    pub fn is_positive_definite(&self) -> bool {
        self.to_matrix().cholesky().is_some()
    }
}

fn symmetric(scheme: Scheme, mut entry: impl FnMut(usize, usize) -> f64) -> MassMatrix {
    let mut m = [[0.0; NODE_COUNT]; NODE_COUNT];
    for i in 0..NODE_COUNT {
        for j in i..NODE_COUNT {
            m[i][j] = entry(i, j);
            m[j][i] = m[i][j];
        }
    }
    MassMatrix::new(scheme, m)
}

fn weighted_tables(scheme: Scheme, factor: f64, tables: &[IntTable], weights: &[f64]) -> MassMatrix {
    symmetric(scheme, |i, j| {
        let s: f64 = tables.iter().zip(weights).map(|(t, w)| t[i][j] as f64 * w).sum();
        factor * s
    })
}

/// Exact consistent mass matrix of a (possibly curved) element.
pub fn mass_exact(nodes: &Tet10Nodes, density: f64) -> Result<MassMatrix> {
    check_validity(nodes)?;
    let metric = metric_polynomial(nodes);
    let tensor = &ConstantTables::global().exact;
    let factor = density / tensor.denominator as f64;
    Ok(symmetric(Scheme::Exact, |i, j| {
        let s: f64 = tensor.numerators[i][j]
            .iter()
            .zip(metric.j.iter())
            .map(|(&n, jw)| n as f64 * jw)
            .sum();
        factor * s
    }))
}

/// Constant-metric matrix `ρ0 J_cent / 2520 · M0`, with `J_cent` the metric
/// at the centroid.
pub fn mass_cm(nodes: &Tet10Nodes, density: f64) -> Result<MassMatrix> {
    let j_cent = det3(&jacobian_decomposition(nodes).at(CENTROID));
    let j_cent = positive_metric(j_cent, SamplePoint::Centroid, CENTROID)?;
    let tables = ConstantTables::global();
    Ok(weighted_tables(
        Scheme::Cm,
        density / M0_SCALE as f64,
        std::slice::from_ref(&tables.m0),
        &[j_cent],
    ))
}

fn checked_nodal_metrics(nodes: &Tet10Nodes, count: usize) -> Result<Vec<f64>> {
    let pencil = jacobian_decomposition(nodes);
    NODE_NATURAL_COORDS[..count]
        .iter()
        .enumerate()
        .map(|(i, &p)| positive_metric(pencil.metric_at(p), SamplePoint::Node(i), p))
        .collect()
}

/// Linear-metric matrix `ρ0 / 5040 · Σ_k J̃_k LM_k` from the four corner metrics.
pub fn mass_lm(nodes: &Tet10Nodes, density: f64) -> Result<MassMatrix> {
    let corner = checked_nodal_metrics(nodes, 4)?;
    Ok(weighted_tables(
        Scheme::Lm,
        density / LM_SCALE as f64,
        &ConstantTables::global().lm,
        &corner,
    ))
}

/// Quadratic-metric matrix `ρ0 / 45360 · Σ_r J̃_r QM_r` from the ten nodal metrics.
pub fn mass_qm(nodes: &Tet10Nodes, density: f64) -> Result<MassMatrix> {
    let nodal = checked_nodal_metrics(nodes, NODE_COUNT)?;
    Ok(weighted_tables(
        Scheme::Qm,
        density / QM_SCALE as f64,
        &ConstantTables::global().qm,
        &nodal,
    ))
}

fn monomial_volumes() -> &'static [f64; METRIC_TERMS] {
    static VOLUMES: OnceLock<[f64; METRIC_TERMS]> = OnceLock::new();
    VOLUMES.get_or_init(|| METRIC_MONOMIALS.map(|m| to_f64(&monomial_integral(m.0[0], m.0[1], m.0[2], 0))))
}

/// Physical volume, the integral of the cubic metric.
pub fn element_volume(nodes: &Tet10Nodes) -> Result<f64> {
    check_validity(nodes)?;
    let metric = metric_polynomial(nodes);
    Ok(metric.j.iter().zip(monomial_volumes()).map(|(j, v)| j * v).sum())
}

/// Dispatches to the scheme's implementation.
pub fn compute(scheme: Scheme, nodes: &Tet10Nodes, density: f64) -> Result<MassMatrix> {
    match scheme {
        Scheme::Exact => mass_exact(nodes, density),
        Scheme::Cm => mass_cm(nodes, density),
        Scheme::Lm => mass_lm(nodes, density),
        Scheme::Qm => mass_qm(nodes, density),
        Scheme::G1 | Scheme::G4 | Scheme::G5 | Scheme::G15 => {
            let rule = shared_rule(scheme.rule_points().expect("quadrature scheme"))?;
            mass_quadrature(nodes, density, rule)
        }
    }
}
