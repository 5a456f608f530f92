use std::fmt;

use thiserror::Error;

/// Where a metric sample was taken when checking element validity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplePoint {
    Centroid,
    /// Zero-based node index.
    Node(usize),
    /// Zero-based point index inside a quadrature rule.
    QuadraturePoint(usize),
}

impl fmt::Display for SamplePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SamplePoint::Centroid => write!(f, "centroid"),
            SamplePoint::Node(i) => write!(f, "node {}", i + 1),
            SamplePoint::QuadraturePoint(p) => write!(f, "quadrature point {}", p + 1),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported quadrature rule with {0} points (supported: 1, 4, 5, 15)")]
    UnsupportedRule(usize),

    #[error("invalid element: non-positive metric {metric:e} at {location} (ξ, η, ζ) = {point:?}")]
    InvalidElement {
        location: SamplePoint,
        point: [f64; 3],
        metric: f64,
    },

    #[error("unknown scheme `{0}`")]
    UnknownScheme(String),

    #[error("invalid study configuration: {0}")]
    InvalidConfig(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
