use serde_json::{json, Value};

use super::model::{check_r_residue, validate, CD2Model};
use super::report::ValidationReport;
use crate::blowup::{blowup, BlowupReport, ChartFinding};
use crate::rational::{format_q, frac, q};
use crate::toric::QuotientType;
use crate::{Error, Result};

/// `1/(2r)(1, 2r−1, r+4)`.
pub fn expected_quotient(r: i64) -> QuotientType {
    let n = 2 * r as u64;
    QuotientType::from_reduced(n, vec![1, n - 1, r as u64 + 4])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileReport {
    pub checks: ValidationReport,
    pub blowup: BlowupReport,
}

impl ProfileReport {
    pub fn passed(&self) -> bool {
        self.checks.passed()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "checks": self.checks.checks,
            "blowup": self.blowup.to_json(),
        })
    }

    pub fn to_table(&self) -> String {
        format!("{}\n{}", self.blowup.to_table(), self.checks.to_table())
    }
}

/// Blows up a valid model with weights `((r+1)/2, (r−1)/2, 2, 1, r)` and
/// checks discrepancy 2, `E³ = 1/r`, and a single singular chart of type
/// `1/(2r)(1, −1, r+4)`.
pub fn verify_e1_profile(r: i64, model: &CD2Model) -> Result<ProfileReport> {
    check_r_residue(r)?;
    if model.r != r {
        return Err(Error::Precondition(format!("model has r = {}, expected {r}", model.r)));
    }
    let validation = validate(model, false);
    if !validation.passed() {
        let failed: Vec<&str> = validation.failures().map(|c| c.name.as_str()).collect();
        return Err(Error::Precondition(format!("model fails {}", failed.join(", "))));
    }
    let germ = model.germ()?;
    let v = model.weight_vector()?;
    let report = blowup(&germ, &v)?;

    let mut checks = ValidationReport::default();
    checks.push(
        "discrepancy",
        report.discrepancy == q(2),
        format!("{} (expected 2)", format_q(&report.discrepancy)),
    );
    checks.push(
        "e_cubed",
        report.e_cubed == frac(1, r),
        format!("{} (expected 1/{r})", format_q(&report.e_cubed)),
    );
    let singular: Vec<String> = report
        .charts
        .iter()
        .filter(|c| c.finding != ChartFinding::Smooth)
        .map(|c| format!("chart {}: {}", c.index + 1, c.finding))
        .collect();
    checks.push(
        "single_singular_chart",
        singular.len() == 1 && report.manual_count() == 0,
        if singular.is_empty() { "all charts smooth".to_string() } else { singular.join("; ") },
    );
    let expected = expected_quotient(r);
    let found = report.quotient_findings();
    checks.push(
        "quotient_type",
        found.len() == 1 && found[0].is_equivalent(&expected),
        format!(
            "found [{}], expected {} ~ {}",
            found.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
            expected,
            expected.normalize()
        ),
    );
    Ok(ProfileReport {
        checks,
        blowup: report,
    })
}
