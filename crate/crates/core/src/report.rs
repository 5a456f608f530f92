//! CSV and text rendering of study results, mass matrices and constant tables.
//!
//! All CSV output starts with `#`-prefixed metadata lines followed by a
//! header row. Floating values are written with 17 significant digits.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::element::NODE_COUNT;
use crate::error::{Error, Result};
use crate::mass::MassMatrix;
use crate::metric::METRIC_TERMS;
use crate::study::{StudyResult, GENERATOR};
use crate::tables::{ConstantTables, IntTable, LM_SCALE, M0_SCALE, QM_SCALE};

pub const TOOL: &str = concat!("tet10-mass ", env!("CARGO_PKG_VERSION"));

pub const STUDY_HEADER: &str = "delta,scheme,mean_error,min,max,stddev,n_elements,n_rejected";
pub const MATRIX_HEADER: &str = "element_id,scheme,i,j,value";

/// 17 significant digits, locale independent.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn study_csv(result: &StudyResult) -> String {
    let c = &result.config;
    let mut out = String::new();
    writeln!(out, "# tool,{TOOL}").unwrap();
    writeln!(out, "# seed,{}", c.seed).unwrap();
    writeln!(out, "# generator,{GENERATOR}").unwrap();
    writeln!(out, "# elements_per_delta,{}", c.elements_per_delta).unwrap();
    writeln!(out, "# density,{}", c.density).unwrap();
    writeln!(
        out,
        "# error,mean over all 100 entries of |M_scheme - M_exact|, then mean over elements"
    )
    .unwrap();
    writeln!(out, "{STUDY_HEADER}").unwrap();
    for (d, delta) in c.deltas.iter().enumerate() {
        for (k, _) in c.schemes.iter().enumerate() {
            let cell = &result.cells[d * c.schemes.len() + k];
            writeln!(
                out,
                "{delta},{},{},{},{},{},{},{}",
                cell.scheme,
                format_value(cell.mean),
                format_value(cell.min),
                format_value(cell.max),
                format_value(cell.stddev),
                cell.n_elements,
                result.rejected[d]
            )
            .unwrap();
        }
    }
    out
}

pub fn matrix_csv_header(density: Option<f64>) -> String {
    let mut out = String::new();
    writeln!(out, "# tool,{TOOL}").unwrap();
    writeln!(out, "# seed,none").unwrap();
    if let Some(rho) = density {
        writeln!(out, "# density_override,{rho}").unwrap();
    }
    writeln!(out, "{MATRIX_HEADER}").unwrap();
    out
}

/// All 100 entries of one matrix, 1-based indices.
pub fn matrix_csv_rows(element_id: &str, m: &MassMatrix) -> String {
    let mut out = String::new();
    for i in 0..NODE_COUNT {
        for j in 0..NODE_COUNT {
            writeln!(
                out,
                "{element_id},{},{},{},{}",
                m.scheme(),
                i + 1,
                j + 1,
                format_value(m.get(i, j))
            )
            .unwrap();
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableSet {
    /// Straight-sided / constant-metric table.
    Cm,
    Lm,
    Qm,
    /// Coefficients of every `M^ij` against `J_0 … J_19`.
    Exact,
}

impl FromStr for TableSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cm" | "m0" => Ok(TableSet::Cm),
            "lm" => Ok(TableSet::Lm),
            "qm" => Ok(TableSet::Qm),
            "exact" => Ok(TableSet::Exact),
            _ => Err(Error::UnknownScheme(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableFormat {
    #[default]
    Text,
    Csv,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "text" => Ok(TableFormat::Text),
            "csv" => Ok(TableFormat::Csv),
            other => Err(Error::InvalidConfig(format!(
                "unknown format `{other}` (expected text or csv)"
            ))),
        }
    }
}

fn text_table(out: &mut String, title: &str, t: &IntTable) {
    writeln!(out, "{title}").unwrap();
    for row in t {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>5}")).collect();
        writeln!(out, "{}", cells.join("")).unwrap();
    }
    writeln!(out).unwrap();
}

fn csv_table(out: &mut String, name: &str, t: &IntTable) {
    for (i, row) in t.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            writeln!(out, "{name},{},{},{v}", i + 1, j + 1).unwrap();
        }
    }
}

/// Renders one family of constant tables as exact integers.
pub fn render_tables(tables: &ConstantTables, set: TableSet, format: TableFormat) -> String {
    let named: Vec<(String, &IntTable, i64)> = match set {
        TableSet::Cm => vec![("M0".into(), &tables.m0, M0_SCALE)],
        TableSet::Lm => tables
            .lm
            .iter()
            .enumerate()
            .map(|(k, t)| (format!("LM{}", k + 1), t, LM_SCALE))
            .collect(),
        TableSet::Qm => tables
            .qm
            .iter()
            .enumerate()
            .map(|(r, t)| (format!("QM{}", r + 1), t, QM_SCALE))
            .collect(),
        TableSet::Exact => return render_exact(tables, format),
    };
    let mut out = String::new();
    match format {
        TableFormat::Text => {
            for (name, t, scale) in named {
                text_table(&mut out, &format!("{name} (divide by {scale})"), t);
            }
        }
        TableFormat::Csv => {
            writeln!(out, "# tool,{TOOL}").unwrap();
            writeln!(out, "# scale,{}", named[0].2).unwrap();
            writeln!(out, "table,i,j,value").unwrap();
            for (name, t, _) in named {
                csv_table(&mut out, &name, t);
            }
        }
    }
    out
}

fn render_exact(tables: &ConstantTables, format: TableFormat) -> String {
    let e = &tables.exact;
    let mut out = String::new();
    match format {
        TableFormat::Text => {
            writeln!(out, "M(i,j) = rho0 / {} * sum_w c_w J_w", e.denominator).unwrap();
            for i in 0..NODE_COUNT {
                for j in i..NODE_COUNT {
                    let cells: Vec<String> = e.numerators[i][j].iter().map(|v| v.to_string()).collect();
                    writeln!(out, "({:>2},{:>2}) {}", i + 1, j + 1, cells.join(" ")).unwrap();
                }
            }
        }
        TableFormat::Csv => {
            writeln!(out, "# tool,{TOOL}").unwrap();
            writeln!(out, "# denominator,{}", e.denominator).unwrap();
            writeln!(out, "i,j,w,numerator").unwrap();
            for i in 0..NODE_COUNT {
                for j in 0..NODE_COUNT {
                    for w in 0..METRIC_TERMS {
                        writeln!(out, "{},{},{w},{}", i + 1, j + 1, e.numerators[i][j][w]).unwrap();
                    }
                }
            }
        }
    }
    out
}
