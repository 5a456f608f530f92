//! Randomised accuracy study over perturbed elements.
//!
//! Each element is the unit corner tetrahedron with its 18 mid-edge node
//! coordinates shifted by independent draws from `U[−δ, δ]`. Every scheme is
//! compared against [`mass_exact`] and the mean absolute entry error is
//! aggregated per `(δ, scheme)`.
//!
//! Randomness is keyed by `(seed, δ index, element index)` so the result does
//! not depend on evaluation order; with the `parallel` feature the elements
//! are evaluated on the rayon pool and reduced in a fixed order afterwards.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::element::{check_validity, Tet10Nodes, NODE_COUNT, NODE_NATURAL_COORDS};
use crate::error::{Error, Result};
use crate::mass::{compute, mass_exact, MassMatrix, Scheme};

pub const DEFAULT_DELTAS: [f64; 8] = [0.0, 0.025, 0.05, 0.075, 0.1, 0.125, 0.15, 0.175];
pub const DEFAULT_ELEMENTS_PER_DELTA: usize = 100;
pub const DEFAULT_SEED: u64 = 42;

/// Recorded in study output so runs can be reproduced elsewhere.
pub const GENERATOR: &str =
    "ChaCha8 seed_from_u64(seed), stream=(delta_index<<32)|element_index, u=(next_u64>>11)*2^-53";

pub const PERTURBATIONS: usize = 18;

#[derive(Debug, Clone, PartialEq)]
pub struct StudyConfig {
    pub deltas: Vec<f64>,
    pub elements_per_delta: usize,
    pub schemes: Vec<Scheme>,
    pub seed: u64,
    pub density: f64,
}

impl Default for StudyConfig {
    fn default() -> Self {
        Self {
            deltas: DEFAULT_DELTAS.to_vec(),
            elements_per_delta: DEFAULT_ELEMENTS_PER_DELTA,
            schemes: Scheme::APPROXIMATE.to_vec(),
            seed: DEFAULT_SEED,
            density: 1.0,
        }
    }
}

impl StudyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.deltas.is_empty() {
            return Err(Error::InvalidConfig("no delta values".into()));
        }
        if let Some(d) = self.deltas.iter().find(|d| !(d.is_finite() && **d >= 0.0)) {
            return Err(Error::InvalidConfig(format!("delta must be finite and >= 0, got {d}")));
        }
        if self.elements_per_delta == 0 {
            return Err(Error::InvalidConfig("elements per delta must be >= 1".into()));
        }
        if self.schemes.is_empty() {
            return Err(Error::InvalidConfig("no schemes selected".into()));
        }
        if self.schemes.contains(&Scheme::Exact) {
            return Err(Error::InvalidConfig(
                "the exact scheme is the reference, not a candidate".into(),
            ));
        }
        if !(self.density.is_finite() && self.density > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "density must be positive, got {}",
                self.density
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when the `parallel` feature is disabled.
    #[default]
    Parallel,
}

/// Aggregate of per-element errors for one `(δ, scheme)` cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellStats {
    pub delta: f64,
    pub scheme: Scheme,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    /// Population standard deviation.
    pub stddev: f64,
    pub n_elements: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyResult {
    pub config: StudyConfig,
    /// Row-major over `deltas × schemes`.
    pub cells: Vec<CellStats>,
    /// Invalid elements skipped per delta.
    pub rejected: Vec<usize>,
}

impl StudyResult {
    pub fn cell(&self, delta_index: usize, scheme: Scheme) -> Option<&CellStats> {
        let k = self.config.schemes.iter().position(|&s| s == scheme)?;
        self.cells.get(delta_index * self.config.schemes.len() + k)
    }

    pub fn mean(&self, delta_index: usize, scheme: Scheme) -> Option<f64> {
        self.cell(delta_index, scheme).map(|c| c.mean)
    }
}

/// Unit corner tetrahedron with mid-edge nodes 5..10 shifted by `eps`,
/// three components per node in x, y, z order.
pub fn make_element(eps: &[f64; PERTURBATIONS]) -> Tet10Nodes {
    let mut coords = NODE_NATURAL_COORDS;
    for (k, e) in eps.iter().enumerate() {
        coords[4 + k / 3][k % 3] += e;
    }
    Tet10Nodes::new(coords)
}

/// Independent random stream for one element of the study.
pub fn element_stream(seed: u64, delta_index: usize, element_index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((delta_index as u64) << 32) | element_index as u64);
    rng
}

/// Uniform draw in `[0, 1)` from the top 53 bits of one word.
pub fn uniform_unit<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

pub fn sample_element<R: RngCore + ?Sized>(delta: f64, rng: &mut R) -> Tet10Nodes {
    let mut eps = [0.0; PERTURBATIONS];
    for e in eps.iter_mut() {
        *e = delta * (2.0 * uniform_unit(rng) - 1.0);
    }
    make_element(&eps)
}

/// Mean of `|approx − exact|` over all 100 entries.
pub fn averaged_absolute_error(approx: &MassMatrix, exact: &MassMatrix) -> f64 {
    let mut sum = 0.0;
    for i in 0..NODE_COUNT {
        for j in 0..NODE_COUNT {
            sum += (approx.get(i, j) - exact.get(i, j)).abs();
        }
    }
    sum / (NODE_COUNT * NODE_COUNT) as f64
}

/// Errors of every configured scheme on one element, or `None` when the
/// element (or any scheme's sample point) has a non-positive metric.
fn evaluate_element(config: &StudyConfig, delta_index: usize, element_index: usize) -> Option<Vec<f64>> {
    let mut rng = element_stream(config.seed, delta_index, element_index);
    let nodes = sample_element(config.deltas[delta_index], &mut rng);
    check_validity(&nodes).ok()?;
    let exact = mass_exact(&nodes, config.density).ok()?;
    config
        .schemes
        .iter()
        .map(|&s| {
            compute(s, &nodes, config.density)
                .ok()
                .map(|m| averaged_absolute_error(&m, &exact))
        })
        .collect()
}

fn summarize(delta: f64, scheme: Scheme, errors: &[f64]) -> CellStats {
    let n = errors.len();
    if n == 0 {
        return CellStats {
            delta,
            scheme,
            mean: f64::NAN,
            min: f64::NAN,
            max: f64::NAN,
            stddev: f64::NAN,
            n_elements: 0,
        };
    }
    let mean = errors.iter().sum::<f64>() / n as f64;
    let var = errors.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / n as f64;
    CellStats {
        delta,
        scheme,
        mean,
        min: errors.iter().copied().fold(f64::INFINITY, f64::min),
        max: errors.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        stddev: var.sqrt(),
        n_elements: n,
    }
}

pub fn run_study(config: &StudyConfig) -> Result<StudyResult> {
    run_study_with(config, Execution::default())
}

pub fn run_study_with(config: &StudyConfig, execution: Execution) -> Result<StudyResult> {
    config.validate()?;
    let n = config.elements_per_delta;
    let jobs: Vec<(usize, usize)> = (0..config.deltas.len())
        .flat_map(|d| (0..n).map(move |e| (d, e)))
        .collect();
    let eval = |&(d, e): &(usize, usize)| evaluate_element(config, d, e);
    let outcomes: Vec<Option<Vec<f64>>> = match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => jobs.par_iter().map(eval).collect(),
        _ => jobs.iter().map(eval).collect(),
    };

    let mut cells = Vec::with_capacity(config.deltas.len() * config.schemes.len());
    let mut rejected = Vec::with_capacity(config.deltas.len());
    for (d, chunk) in outcomes.chunks(n).enumerate() {
        let valid: Vec<&Vec<f64>> = chunk.iter().flatten().collect();
        rejected.push(chunk.len() - valid.len());
        for (k, &scheme) in config.schemes.iter().enumerate() {
            let errors: Vec<f64> = valid.iter().map(|v| v[k]).collect();
            cells.push(summarize(config.deltas[d], scheme, &errors));
        }
    }
    Ok(StudyResult {
        config: config.clone(),
        cells,
        rejected,
    })
}
