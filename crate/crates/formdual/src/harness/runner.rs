//! Config execution: builds the objects each case references, evaluates it,
//! and assembles the deterministic run report in config order.

use crate::error::{Error, Result};
use crate::exterior::inner;
use crate::harness::config::{CaseConfig, ExperimentConfig, ReproductionSide};
use crate::harness::report::{CaseResult, CheckResult, RunReport};

/// Execute every case in order. Evaluation failures abort the run with an
/// error (the CLI maps them to its runtime-error exit code); tolerance
/// violations are recorded as failed cases instead.
pub fn execute(config: &ExperimentConfig, seed: u64) -> Result<RunReport> {
    let mut cases = Vec::with_capacity(config.cases.len());
    for case in &config.cases {
        cases.push(run_case(case, seed)?);
    }
    Ok(RunReport::new(seed, cases))
}

fn run_case(case: &CaseConfig, seed: u64) -> Result<CaseResult> {
    match case {
        CaseConfig::Reproduce {
            name: _,
            dimension,
            field,
            surface,
            side,
            points,
            tolerance,
        } => {
            let u = field.build(*dimension)?;
            let s = surface.build()?;
            let mut checks = Vec::with_capacity(points.len());
            for (i, x) in points.iter().enumerate() {
                let rep = match side {
                    ReproductionSide::Interior => {
                        crate::cauchy_green::reproduce_interior(u.as_ref(), &s, x)?
                    }
                    ReproductionSide::Exterior => {
                        crate::cauchy_green::reproduce_exterior(u.as_ref(), &s, x)?
                    }
                };
                let exact = u.eval(x)?;
                checks.push(CheckResult::compare(
                    format!("point {i}"),
                    rep.value.coeffs().to_vec(),
                    exact.coeffs().to_vec(),
                    "direct evaluation",
                    *tolerance,
                ));
            }
            Ok(CaseResult::from_checks(case, *tolerance, checks))
        }
        CaseConfig::Pair1 {
            name: _,
            dimension,
            field,
            pair,
            surface,
            surface_b,
            tolerance,
        } => {
            let n = *dimension;
            let u = field.build(n)?;
            let w = pair.build(n)?;
            let s = surface.build()?;
            let report = crate::duality::pairing_theorem1(u.as_ref(), &w, &s)?;
            let expected = crate::duality::convention::THEOREM1_POINT_CONSTANT
                * inner(&u.eval(&pair.center)?, &pair.xi(n)?)?;
            let mut checks = vec![CheckResult::compare(
                "point-measure identity",
                vec![report.value],
                vec![expected],
                "calibrated point-measure identity",
                *tolerance,
            )];
            if let Some(spec_b) = surface_b {
                let sb = spec_b.build()?;
                let report_b = crate::duality::pairing_theorem1(u.as_ref(), &w, &sb)?;
                checks.push(CheckResult::compare(
                    "contour independence",
                    vec![report.value],
                    vec![report_b.value],
                    "two surfaces",
                    *tolerance,
                ));
            }
            Ok(CaseResult::from_checks(case, *tolerance, checks))
        }
        CaseConfig::Pair2 {
            name: _,
            dimension,
            pair,
            field,
            surface,
            tolerance,
        } => {
            let n = *dimension;
            let u = field.build(n)?;
            let w = pair.build(n)?;
            let s = surface.build()?;
            let report = crate::duality::pairing_theorem2(&w, u.as_ref(), &s)?;
            let r = w.central_degree();
            let expected = crate::duality::convention::theorem2_point_sign(n, r)
                * inner(&u.eval(&pair.center)?, &pair.xi(n)?)?;
            let checks = vec![CheckResult::compare(
                "point-measure identity",
                vec![report.value],
                vec![expected],
                "calibrated point-measure identity",
                *tolerance,
            )];
            Ok(CaseResult::from_checks(case, *tolerance, checks))
        }
        CaseConfig::Decompose {
            name: _,
            dimension,
            field,
            surface,
            points,
            tolerance,
        } => {
            let u = field.build(*dimension)?;
            let s = surface.build()?;
            let parts = crate::cauchy_green::decompose_exterior(u.as_ref(), &s)?;
            let res = crate::cauchy_green::decomposition_residuals(u.as_ref(), &parts, points)?;
            let scale = res.u_scale.max(1e-30);
            let checks = vec![
                CheckResult::compare(
                    "reconstruction",
                    vec![res.reconstruction / scale],
                    vec![0.0],
                    "constraint",
                    *tolerance,
                ),
                CheckResult::compare(
                    "delta u1",
                    vec![res.delta_u1 / scale],
                    vec![0.0],
                    "constraint",
                    *tolerance,
                ),
                CheckResult::compare(
                    "d u2",
                    vec![res.d_u2 / scale],
                    vec![0.0],
                    "constraint",
                    *tolerance,
                ),
            ];
            Ok(CaseResult::from_checks(case, *tolerance, checks))
        }
        CaseConfig::Periods {
            name: _,
            pair,
            cycle,
            surface,
            tolerance,
        } => {
            let w = pair.build(3)?;
            let s = surface.build()?;
            let c = crate::geometry::circle_cycle(
                &cycle.center,
                cycle.radius,
                &cycle.axis,
                cycle.order,
            )?;
            let (lhs, rhs) = crate::duality::period_identity(&c, &w, &s)?;
            let checks = vec![CheckResult::compare(
                "period identity",
                vec![lhs],
                vec![rhs],
                "pairing route",
                *tolerance,
            )];
            Ok(CaseResult::from_checks(case, *tolerance, checks))
        }
        CaseConfig::Identities { name, suites } => {
            let mut checks = Vec::new();
            for suite in suites {
                let mut suite_checks = crate::harness::suites::run_suite(suite, seed)?;
                for c in suite_checks.iter_mut() {
                    c.label = format!("{suite}: {}", c.label);
                }
                checks.append(&mut suite_checks);
            }
            if checks.is_empty() {
                return Err(Error::InvalidArgument(format!(
                    "identities case '{name}' names no suites"
                )));
            }
            Ok(CaseResult::from_checks(case, 0.0, checks))
        }
    }
}
