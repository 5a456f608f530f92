//! Self-checks comparing the generated tables and quadrature rules with
//! published reference data and exactness requirements.

use std::fmt;

use crate::element::NODE_COUNT;
use crate::exact_poly::ratio;
use crate::metric::METRIC_TERMS;
use crate::quadrature::{standard_rule, SUPPORTED_RULES};
use crate::tables::{
    ConstantTables, IntTable, REFERENCE_LM, REFERENCE_M0, REFERENCE_M55_DENOMINATOR, REFERENCE_M55_NUMERATORS,
    REFERENCE_QM_FIRST, REFERENCE_QM_LAST,
};

pub const QUADRATURE_EXACT_TOL: f64 = 1e-12;
pub const QUADRATURE_TIGHTNESS_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Names the first offending entry on failure.
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, failure: Option<String>) -> Self {
        let passed = failure.is_none();
        Self {
            name: name.into(),
            passed,
            detail: failure.unwrap_or_else(|| "ok".to_string()),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}: {}", self.name, self.detail)
    }
}

fn compare_table(label: &str, published: &IntTable, generated: &IntTable) -> Option<String> {
    for i in 0..NODE_COUNT {
        for j in 0..NODE_COUNT {
            if published[i][j] != generated[i][j] {
                return Some(format!(
                    "{label} entry ({}, {}): published {}, generated {}",
                    i + 1,
                    j + 1,
                    published[i][j],
                    generated[i][j]
                ));
            }
        }
    }
    None
}

fn asymmetry(label: &str, t: &IntTable) -> Option<String> {
    for i in 0..NODE_COUNT {
        for j in 0..i {
            if t[i][j] != t[j][i] {
                return Some(format!("{label} entry ({}, {}) is not symmetric", i + 1, j + 1));
            }
        }
    }
    None
}

/// Compares generated tables against the published subsets and checks the
/// structural identities they must satisfy.
pub fn validate_tables(t: &ConstantTables) -> Vec<Check> {
    let mut checks = vec![Check::new(
        "straight-sided table M0",
        compare_table("M0", &REFERENCE_M0, &t.m0),
    )];
    for k in 0..4 {
        let label = format!("LM table {}", k + 1);
        checks.push(Check::new(
            label.clone(),
            compare_table(&label, &REFERENCE_LM[k], &t.lm[k]),
        ));
    }
    checks.push(Check::new(
        "QM table 1",
        compare_table("QM table 1", &REFERENCE_QM_FIRST, &t.qm[0]),
    ));
    checks.push(Check::new(
        "QM table 10",
        compare_table("QM table 10", &REFERENCE_QM_LAST, &t.qm[9]),
    ));

    let m55 = (0..METRIC_TERMS).find_map(|w| {
        let published = ratio(REFERENCE_M55_NUMERATORS[w], REFERENCE_M55_DENOMINATOR);
        let generated = t.exact.coefficient(4, 4, w);
        (published != generated)
            .then(|| format!("M(5,5) coefficient of J_{w}: published {published}, generated {generated}"))
    });
    checks.push(Check::new("exact M(5,5) metric coefficients", m55));

    let symmetry = std::iter::once(("M0".to_string(), &t.m0))
        .chain(t.lm.iter().enumerate().map(|(k, m)| (format!("LM table {}", k + 1), m)))
        .chain(t.qm.iter().enumerate().map(|(r, m)| (format!("QM table {}", r + 1), m)))
        .find_map(|(label, m)| asymmetry(&label, m));
    checks.push(Check::new("table symmetry", symmetry));

    let sum_identity = |label: &str, tables: &[IntTable], factor: i64| {
        (0..NODE_COUNT)
            .flat_map(|i| (0..NODE_COUNT).map(move |j| (i, j)))
            .find_map(|(i, j)| {
                let s: i64 = tables.iter().map(|m| m[i][j]).sum();
                (s != factor * t.m0[i][j]).then(|| {
                    format!(
                        "{label} sum entry ({}, {}): {s} != {factor}·{}",
                        i + 1,
                        j + 1,
                        t.m0[i][j]
                    )
                })
            })
    };
    checks.push(Check::new("LM tables sum to 2·M0", sum_identity("LM", &t.lm, 2)));
    checks.push(Check::new("QM tables sum to 18·M0", sum_identity("QM", &t.qm, 18)));
    checks
}

/// Certifies each rule's exactness degree and that it is tight.
pub fn validate_quadrature() -> Vec<Check> {
    SUPPORTED_RULES
        .iter()
        .map(|&n| {
            let rule = standard_rule(n).expect("supported rule");
            let d = rule.exact_degree;
            let failure = (0..=d)
                .find_map(|k| {
                    let err = rule.max_monomial_error(k);
                    (err >= QUADRATURE_EXACT_TOL).then(|| format!("degree {k} error {err:e}"))
                })
                .or_else(|| {
                    let err = rule.max_monomial_error(d + 1);
                    (err <= QUADRATURE_TIGHTNESS_TOL)
                        .then(|| format!("degree {} unexpectedly exact (error {err:e})", d + 1))
                });
            Check::new(format!("{n}-point rule exact to degree {d}"), failure)
        })
        .collect()
}

/// Full report over the process-wide tables.
pub fn validation_report() -> Vec<Check> {
    let mut checks = validate_tables(ConstantTables::global());
    checks.extend(validate_quadrature());
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pristine_build_passes() {
        let report = validation_report();
        assert!(report.iter().all(|c| c.passed), "{report:#?}");
        assert_eq!(report.len(), 15);
    }

    #[test]
    fn perturbed_qm_table_is_named() {
        let mut t = ConstantTables::global().clone();
        t.qm[9][9][9] += 1;
        let report = validate_tables(&t);
        let failed: Vec<_> = report.iter().filter(|c| !c.passed).collect();
        assert!(
            failed.iter().any(|c| c.detail.contains("QM table 10 entry (10, 10)")),
            "{failed:#?}"
        );
        // The perturbation also breaks the sum identity.
        assert!(failed.iter().any(|c| c.name.starts_with("QM tables sum")));
    }

    #[test]
    fn perturbed_exact_row_is_named() {
        let mut t = ConstantTables::global().clone();
        t.exact.numerators[4][4][3] += 7;
        let failed: Vec<_> = validate_tables(&t).into_iter().filter(|c| !c.passed).collect();
        assert_eq!(failed.len(), 1);
        assert!(failed[0].detail.contains("J_3"));
    }

    #[test]
    fn asymmetric_table_is_caught() {
        let mut t = ConstantTables::global().clone();
        t.qm[3][1][6] += 2;
        let failed: Vec<_> = validate_tables(&t).into_iter().filter(|c| !c.passed).collect();
        assert!(failed
            .iter()
            .any(|c| c.detail == "QM table 4 entry (7, 2) is not symmetric"));
    }
}
