//! Machine-readable run reports (JSON, plus an optional CSV flat table).

use serde::Serialize;

/// One verified quantity inside a case.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub label: String,
    pub computed: Vec<f64>,
    pub reference: Vec<f64>,
    /// Where the reference value comes from (direct evaluation, closed form,
    /// point-measure identity, constraint, ...).
    pub provenance: String,
    pub abs_error: f64,
    pub rel_error: f64,
    pub pass: bool,
}

impl CheckResult {
    /// Compare a computed vector against a reference with the given
    /// tolerance; relative error is used when the reference has scale,
    /// absolute error otherwise.
    pub fn compare(
        label: impl Into<String>,
        computed: Vec<f64>,
        reference: Vec<f64>,
        provenance: impl Into<String>,
        tolerance: f64,
    ) -> Self {
        let abs_error = computed
            .iter()
            .zip(reference.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let scale = reference.iter().map(|v| v * v).sum::<f64>().sqrt();
        let rel_error = if scale > 1e-8 {
            abs_error / scale
        } else {
            abs_error
        };
        CheckResult {
            label: label.into(),
            computed,
            reference,
            provenance: provenance.into(),
            abs_error,
            rel_error,
            pass: rel_error <= tolerance,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub name: String,
    pub mode: String,
    /// Echo of the case configuration this result was produced from.
    pub inputs: serde_json::Value,
    pub status: String,
    pub tolerance: f64,
    pub max_abs_error: f64,
    pub max_rel_error: f64,
    pub checks: Vec<CheckResult>,
}

impl CaseResult {
    pub fn from_checks(
        case: &super::config::CaseConfig,
        tolerance: f64,
        checks: Vec<CheckResult>,
    ) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        let max_abs_error = checks.iter().map(|c| c.abs_error).fold(0.0, f64::max);
        let max_rel_error = checks.iter().map(|c| c.rel_error).fold(0.0, f64::max);
        CaseResult {
            name: case.name().to_owned(),
            mode: case.mode().to_owned(),
            inputs: serde_json::to_value(case).expect("case serialization"),
            status: if pass { "pass" } else { "fail" }.into(),
            tolerance,
            max_abs_error,
            max_rel_error,
            checks,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// The full run report. Serialization is deterministic for a fixed config
/// and seed: struct field order is fixed and no wall-clock data is included.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub seed: u64,
    pub cases: Vec<CaseResult>,
    pub summary: Summary,
}

impl RunReport {
    pub fn new(seed: u64, cases: Vec<CaseResult>) -> Self {
        let total = cases.len();
        let passed = cases.iter().filter(|c| c.passed()).count();
        RunReport {
            schema_version: super::config::SCHEMA_VERSION,
            seed,
            cases,
            summary: Summary {
                total,
                passed,
                failed: total - passed,
            },
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    /// Flat per-case table.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,mode,status,max_abs_error,max_rel_error,tolerance\n");
        for c in &self.cases {
            out.push_str(&format!(
                "{},{},{},{:e},{:e},{:e}\n",
                c.name, c.mode, c.status, c.max_abs_error, c.max_rel_error, c.tolerance
            ));
        }
        out
    }
}
