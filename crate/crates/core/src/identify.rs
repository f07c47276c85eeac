//! Sequential identification: walk the plan step by step, and at each step
//! fit the single parameter its set was designed to isolate, holding every
//! previously identified value and leaving the rest at zero.

use serde::Serialize;

use crate::design::CalibrationPlan;
use crate::encoder::CampaignLog;
use crate::error::CalError;
use crate::minimize::minimize_scalar;
use crate::model::RobotModel;
use crate::params::{ErrorModel, ErrorVector};
use crate::sensitivity::predicted_distance;

#[derive(Debug, Clone, Copy)]
pub struct IdentifyOptions {
    /// Absolute tolerance of the scalar search, in the parameter's unit.
    pub tol: f64,
    /// Evaluation budget per scalar search.
    pub max_evals: usize,
    /// Extra full passes over all steps after the first.
    pub refine_passes: usize,
}

impl Default for IdentifyOptions {
    fn default() -> Self {
        IdentifyOptions {
            tol: 1e-6,
            max_evals: 200,
            refine_passes: 0,
        }
    }
}

/// Outcome of fitting one parameter.
#[derive(Debug, Clone, Serialize)]
pub struct StepResult {
    pub step: usize,
    pub param: String,
    pub value: f64,
    pub unit: String,
    pub cost_before: f64,
    pub cost_after: f64,
    pub evaluations: usize,
    /// The estimate landed on the edge of its search interval; the true
    /// value probably lies outside the assumed bound.
    pub boundary_hit: bool,
    pub residual_rms_mm: f64,
}

/// Full identification result.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    /// Parameter names in identification order.
    pub order: Vec<String>,
    /// Total passes over the plan (1 plus any refinement passes).
    pub passes: usize,
    /// Per-step outcomes of the final pass, in identification order.
    pub steps: Vec<StepResult>,
    /// Parameter names in error-model order, paired with `values`.
    pub names: Vec<String>,
    /// Identified offsets in error-model order.
    pub values: Vec<f64>,
}

/// Sum of squared differences between the distances the model predicts with
/// `values` applied and the measured readings, millimetres squared.
fn step_cost(
    nominal: &RobotModel,
    errors: &ErrorModel,
    values: &[f64],
    anchor_deg: &[f64],
    points: &[Vec<f64>],
    measured: &[f64],
) -> Result<f64, CalError> {
    let mut cost = 0.0;
    for (p, &m) in points.iter().zip(measured) {
        let d = predicted_distance(nominal, p, anchor_deg, errors, values)?;
        cost += (d - m) * (d - m);
    }
    Ok(cost)
}

/// Fit one parameter against one measurement set, holding all other entries
/// of `current` fixed. Returns the updated value and the step diagnostics.
#[allow(clippy::too_many_arguments)]
pub fn identify_parameter(
    nominal: &RobotModel,
    errors: &ErrorModel,
    current: &mut ErrorVector,
    param_index: usize,
    step: usize,
    anchor_deg: &[f64],
    points: &[Vec<f64>],
    measured: &[f64],
    options: &IdentifyOptions,
) -> Result<StepResult, CalError> {
    let p = errors.params[param_index];
    let bound = p.bound;

    let cost_of = |x: f64| -> Result<f64, CalError> {
        let mut trial = current.clone();
        trial[param_index] = x;
        step_cost(nominal, errors, &trial, anchor_deg, points, measured)
    };

    let cost_before = cost_of(current[param_index])?;
    let mut failure: Option<CalError> = None;
    let result = minimize_scalar(
        |x| match cost_of(x) {
            Ok(v) => v,
            Err(e) => {
                failure = Some(e);
                f64::NAN
            }
        },
        -bound,
        bound,
        options.tol,
        options.max_evals,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let r = result?;

    // Never accept a step that makes the fit worse than where it started;
    // with quantized readings the cost is a staircase and the parabola can
    // land on the wrong tread.
    let (value, cost_after) = if r.fx <= cost_before {
        (r.x, r.fx)
    } else {
        (current[param_index], cost_before)
    };
    current[param_index] = value;

    let boundary_hit = bound - value.abs() <= 10.0 * options.tol;
    Ok(StepResult {
        step,
        param: p.name(),
        value,
        unit: p.kind.unit().to_string(),
        cost_before,
        cost_after,
        evaluations: r.evaluations,
        boundary_hit,
        residual_rms_mm: (cost_after / points.len() as f64).sqrt(),
    })
}

fn matching_log_step<'a>(
    log: &'a CampaignLog,
    step: usize,
    param: &str,
    points: &[Vec<f64>],
) -> Result<&'a crate::encoder::StepLog, CalError> {
    let entry = log
        .steps
        .iter()
        .find(|s| s.step == step && s.param == param)
        .ok_or_else(|| CalError::LogMismatch(format!("no measurements for step {step} ({param})")))?;
    if entry.points_deg.len() != points.len() || entry.measured_mm.len() != points.len() {
        return Err(CalError::LogMismatch(format!(
            "step {step} ({param}): plan has {} points, log has {} with {} readings",
            points.len(),
            entry.points_deg.len(),
            entry.measured_mm.len()
        )));
    }
    for (i, (a, b)) in points.iter().zip(&entry.points_deg).enumerate() {
        let same = a.len() == b.len()
            && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-9);
        if !same {
            return Err(CalError::LogMismatch(format!(
                "step {step} ({param}) point {}: logged configuration differs from the plan",
                i + 1
            )));
        }
    }
    Ok(entry)
}

/// Identify every parameter in plan order from a measurement log.
///
/// The log must cover the plan exactly: every set present under the same
/// step number and parameter, with the same points in the same order. Extra
/// logged steps are ignored. With `refine_passes > 0` the whole sequence is
/// repeated, re-fitting each parameter with all later ones at their latest
/// estimates.
pub fn run_calibration(
    nominal: &RobotModel,
    errors: &ErrorModel,
    plan: &CalibrationPlan,
    log: &CampaignLog,
    options: &IdentifyOptions,
) -> Result<Report, CalError> {
    nominal.validate()?;
    errors.validate(nominal)?;

    // Structural check first: fail before any optimization if coverage is off.
    for set in &plan.sets {
        matching_log_step(log, set.step, &set.param, &set.points_deg)?;
    }

    let param_indices: Vec<usize> = plan
        .sets
        .iter()
        .map(|set| {
            errors.index_of(&set.param).ok_or_else(|| {
                CalError::format(
                    "identification",
                    format!("plan parameter {} not in the error model", set.param),
                )
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut current = errors.zeros();
    let mut steps: Vec<StepResult> = Vec::new();
    let passes = 1 + options.refine_passes;
    for _ in 0..passes {
        steps.clear();
        for (set, &idx) in plan.sets.iter().zip(&param_indices) {
            let entry = matching_log_step(log, set.step, &set.param, &set.points_deg)?;
            steps.push(identify_parameter(
                nominal,
                errors,
                &mut current,
                idx,
                set.step,
                &plan.anchor_deg,
                &set.points_deg,
                &entry.measured_mm,
                options,
            )?);
        }
    }

    Ok(Report {
        order: plan.sets.iter().map(|s| s.param.clone()).collect(),
        passes,
        steps,
        names: errors.names(),
        values: current,
    })
}
