//! Calibration design: in which order the error parameters can be identified
//! from single-wire readings, and which measurement configurations isolate
//! each one.
//!
//! Both searches rest on the same observation: a measurement configuration
//! `theta_i` contributes one row of sensitivities, and a parameter is
//! identifiable in isolation when some configuration makes its own entry
//! large while every entry of the parameters still waiting is negligible.
//! Varying only the most distal joints keeps proximal cells' frames frozen
//! between the anchor and the measurement, which nulls their entries exactly,
//! so isolation is searched distal-first over growing joint suffixes.

use std::collections::BTreeMap;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::CalError;
use crate::minimize::minimize_scalar;
use crate::model::RobotModel;
use crate::params::{ErrorModel, ParamKind};
use crate::sensitivity::{partial_columns_cached, EPS_WIRE_MM};

const PRIMES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Radical-inverse (van der Corput) sequence member `i` in base `b`.
pub(crate) fn halton(mut i: u64, b: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= b as f64;
        r += f * (i % b) as f64;
        i /= b;
    }
    r
}

/// Sensitivity rows against a fixed anchor, with the anchor-side frames
/// computed once.
struct RowEvaluator<'a> {
    model: &'a RobotModel,
    errors: &'a ErrorModel,
    anchor_point: Vector3<f64>,
    anchor_cols: Vec<Vector3<f64>>,
}

impl<'a> RowEvaluator<'a> {
    fn new(model: &'a RobotModel, errors: &'a ErrorModel, anchor_deg: &[f64]) -> Self {
        let frames = model.frames(anchor_deg);
        let anchor_cols = partial_columns_cached(&frames, errors);
        RowEvaluator {
            model,
            errors,
            anchor_point: frames.tool_point,
            anchor_cols,
        }
    }

    /// Sensitivity row and wire length at `point`, or None when the wire
    /// direction is degenerate.
    fn row(&self, point_deg: &[f64]) -> Option<(Vec<f64>, f64)> {
        let frames = self.model.frames(point_deg);
        let vector = frames.tool_point - self.anchor_point;
        let length = vector.norm();
        if length <= EPS_WIRE_MM {
            return None;
        }
        let unit = vector / length;
        let cols = partial_columns_cached(&frames, self.errors);
        let values = cols
            .iter()
            .zip(&self.anchor_cols)
            .map(|(ci, c0)| (ci - c0).dot(&unit))
            .collect();
        Some((values, length))
    }
}

/// A permutation of the error parameters giving the sequence in which they
/// are identified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentificationOrder {
    indices: Vec<usize>,
    names: Vec<String>,
}

impl IdentificationOrder {
    /// Build from indices into `errors`; must be a permutation of all of them.
    pub fn new(errors: &ErrorModel, indices: Vec<usize>) -> Result<Self, CalError> {
        let m = errors.len();
        let mut seen = vec![false; m];
        for &i in &indices {
            if i >= m || seen[i] {
                return Err(CalError::format(
                    "identification order",
                    format!("indices must be a permutation of 0..{m}"),
                ));
            }
            seen[i] = true;
        }
        if indices.len() != m {
            return Err(CalError::format(
                "identification order",
                format!("expected {m} entries, got {}", indices.len()),
            ));
        }
        let names = indices
            .iter()
            .map(|&i| errors.params[i].name())
            .collect();
        Ok(IdentificationOrder { indices, names })
    }

    /// Build from parameter names such as `dtheta6`.
    pub fn from_names(errors: &ErrorModel, names: &[String]) -> Result<Self, CalError> {
        let indices = names
            .iter()
            .map(|n| {
                errors
                    .index_of(n)
                    .ok_or_else(|| CalError::format("identification order", format!("unknown parameter {n}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        IdentificationOrder::new(errors, indices)
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Indices into the error model, identification-first.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Reorder a row from error-model order into identification order.
    pub fn permute(&self, raw: &[f64]) -> Vec<f64> {
        self.indices.iter().map(|&i| raw[i]).collect()
    }
}

// Order-search constants. The sweep is seeded and therefore reproducible.
const ORDER_PSI_MIN: f64 = 0.2;
const ORDER_EPS_NULL: f64 = 0.05;
const ORDER_EPS_EXACT: f64 = 1e-6;
const ORDER_SWEEP_PER_K: usize = 4000;
const ORDER_PROBE_STEPS: usize = 721;
const ORDER_SEED: u64 = 0;
const ORDER_MAX_WIRE_MM: f64 = 1250.0;

fn kind_rank(kind: ParamKind) -> u8 {
    // Angular offsets reach the wire through the full distal lever arm and
    // dominate the error budget at equal chain depth, so they go first;
    // in-plane link lengths before axis offsets.
    match kind {
        ParamKind::JointOffset => 0,
        ParamKind::Twist => 1,
        ParamKind::LinkLength => 2,
        ParamKind::LinkOffset => 3,
    }
}

fn sweep_rows(
    eval: &RowEvaluator,
    anchor: &[f64],
    limits: &[[f64; 2]],
    k: usize,
    seed: u64,
) -> Vec<Vec<f64>> {
    let n = anchor.len();
    let start = seed * 7919 + 1;
    let mut rows = Vec::new();
    for s in 0..ORDER_SWEEP_PER_K as u64 {
        let mut q = anchor.to_vec();
        for (idx, joint) in (n - k..n).enumerate() {
            let [lo, hi] = limits[joint];
            q[joint] = lo + halton(start + s, PRIMES[idx]) * (hi - lo);
        }
        if let Some((row, len)) = eval.row(&q) {
            if len <= ORDER_MAX_WIRE_MM {
                rows.push(row);
            }
        }
    }
    rows
}

fn probe_rows(
    eval: &RowEvaluator,
    model: &RobotModel,
    anchor: &[f64],
    limits: &[[f64; 2]],
    k: usize,
) -> Vec<Vec<f64>> {
    let n = anchor.len();
    let mut rows = Vec::new();
    // Consecutive joints j, j+1 (0-based) share parallel axes when the twist
    // between them is zero; moving them oppositely translates the distal
    // chain without rotating it, which isolates the link length between them.
    for j in n - k..n.saturating_sub(1) {
        if model.rows[j + 1].alpha_deg.abs() > 1e-9 {
            continue;
        }
        let lo = (limits[j][0] - anchor[j]).max(anchor[j + 1] - limits[j + 1][1]);
        let hi = (limits[j][1] - anchor[j]).min(anchor[j + 1] - limits[j + 1][0]);
        let (lo, hi) = (lo.max(-180.0), hi.min(180.0));
        if hi <= lo {
            continue;
        }
        for i in 0..ORDER_PROBE_STEPS {
            let s = lo + (hi - lo) * i as f64 / (ORDER_PROBE_STEPS - 1) as f64;
            if s.abs() < 1e-12 {
                continue;
            }
            let mut q = anchor.to_vec();
            q[j] += s;
            q[j + 1] -= s;
            if let Some((row, len)) = eval.row(&q) {
                if len <= ORDER_MAX_WIRE_MM {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

fn isolates(row: &[f64], candidate: usize, others: &[usize], eps: f64) -> bool {
    row[candidate].abs() >= ORDER_PSI_MIN && others.iter().all(|&o| row[o].abs() <= eps)
}

/// Decide the identification order by greedy distal-first isolation.
///
/// For each stage the search grows a suffix of moving joints until some
/// remaining parameter has a configuration whose row clears `0.2` on the
/// candidate while every other remaining entry stays under `0.05`; among
/// qualifiers it prefers one an exact parallel-axis translation probe
/// isolates, then angular before length parameters, then the more distal
/// joint. The final remaining parameter needs no isolation evidence: every
/// other has been identified by then, so it is appended as the last step.
pub fn determine_order(
    model: &RobotModel,
    anchor_deg: &[f64],
    errors: &ErrorModel,
) -> Result<IdentificationOrder, CalError> {
    model.validate()?;
    errors.validate(model)?;
    let n = model.joint_count();
    assert_eq!(anchor_deg.len(), n, "anchor must have one value per joint");
    if n > PRIMES.len() {
        return Err(CalError::InvalidModel(format!(
            "order search supports up to {} joints, model has {n}",
            PRIMES.len()
        )));
    }

    let eval = RowEvaluator::new(model, errors, anchor_deg);
    let limits = &model.joint_limits_deg;
    let mut cache: Vec<Option<(Vec<Vec<f64>>, Vec<Vec<f64>>)>> = vec![None; n + 1];

    let mut remaining: Vec<usize> = (0..errors.len()).collect();
    let mut picked = Vec::with_capacity(errors.len());

    while !remaining.is_empty() {
        if remaining.len() == 1 {
            picked.push(remaining[0]);
            break;
        }
        let mut pick = None;
        'tiers: for k in 1..=n {
            if cache[k].is_none() {
                cache[k] = Some((
                    sweep_rows(&eval, anchor_deg, limits, k, ORDER_SEED),
                    probe_rows(&eval, model, anchor_deg, limits, k),
                ));
            }
            let (sweep, probes) = cache[k].as_ref().unwrap();
            let mut qualifiers: Vec<(u8, u8, i64, usize)> = Vec::new();
            for &c in &remaining {
                let others: Vec<usize> =
                    remaining.iter().copied().filter(|&o| o != c).collect();
                let qualifies = sweep
                    .iter()
                    .chain(probes.iter())
                    .any(|row| isolates(row, c, &others, ORDER_EPS_NULL));
                if !qualifies {
                    continue;
                }
                let exact = probes
                    .iter()
                    .any(|row| isolates(row, c, &others, ORDER_EPS_EXACT));
                let p = &errors.params[c];
                qualifiers.push((u8::from(!exact), kind_rank(p.kind), -(p.joint as i64), c));
            }
            if !qualifiers.is_empty() {
                qualifiers.sort();
                pick = Some(qualifiers[0].3);
                break 'tiers;
            }
        }
        match pick {
            Some(c) => {
                picked.push(c);
                remaining.retain(|&r| r != c);
            }
            None => {
                return Err(CalError::OrderingFailed {
                    stuck: remaining.iter().map(|&c| errors.params[c].name()).collect(),
                });
            }
        }
    }
    IdentificationOrder::new(errors, picked)
}

/// Options for the per-step configuration search and for plan validation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Points per calibration set.
    pub set_size: usize,
    /// Minimum joint-space distance between points of a set, degrees.
    pub min_separation_deg: f64,
    /// Number of seeded starting configurations refined per set.
    pub multistarts: usize,
    /// Coordinate-descent passes per start.
    pub coordinate_passes: usize,
    /// Weight of the squared not-yet-identified couplings in the objective.
    pub lambda: f64,
    /// Minimum acceptable magnitude of the target entry.
    pub psi_min: f64,
    /// Maximum acceptable coupling to a not-yet-identified parameter.
    pub eps_null: f64,
    /// Per-step relaxations of `eps_null` (1-based step index).
    pub eps_null_per_step: BTreeMap<usize, f64>,
    /// Longest usable wire, millimetres.
    pub max_wire_mm: f64,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            set_size: 6,
            min_separation_deg: 1.0,
            multistarts: 64,
            coordinate_passes: 3,
            lambda: 100.0,
            psi_min: 0.2,
            eps_null: 0.05,
            eps_null_per_step: BTreeMap::new(),
            max_wire_mm: 1250.0,
            seed: 0,
        }
    }
}

impl SearchOptions {
    pub fn eps_for_step(&self, step: usize) -> f64 {
        self.eps_null_per_step
            .get(&step)
            .copied()
            .unwrap_or(self.eps_null)
    }
}

/// The measurement configurations for one identification step, with the full
/// sensitivity row of each point in identification order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationSet {
    pub step: usize,
    pub param: String,
    pub points_deg: Vec<Vec<f64>>,
    pub psi: Vec<Vec<f64>>,
    /// True when the search could not push every point past the quality
    /// thresholds and returned its best effort instead.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub sub_quality: bool,
}

/// A complete measurement plan: anchor posture, identification order, one
/// set per parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationPlan {
    pub anchor_deg: Vec<f64>,
    pub order: Vec<String>,
    pub sets: Vec<CalibrationSet>,
}

fn separation(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Find measurement configurations isolating step `step` of `order`.
///
/// Starting from seeded low-discrepancy configurations of the joints at and
/// distal to the target parameter's joint (plus one proximal joint, which
/// proximal parameters need for leverage), coordinate descent minimizes
/// `-|psi_target| + lambda * sum(psi_later^2)`; the best separated minima
/// become the set. If fewer than `set_size` points meet the thresholds the
/// set is returned with `sub_quality` set rather than failing, so a caller
/// can widen the search or accept the degraded design deliberately.
pub fn find_calibration_set(
    model: &RobotModel,
    anchor_deg: &[f64],
    errors: &ErrorModel,
    order: &IdentificationOrder,
    step: usize,
    options: &SearchOptions,
) -> Result<CalibrationSet, CalError> {
    model.validate()?;
    errors.validate(model)?;
    if step == 0 || step > order.len() {
        return Err(CalError::format(
            "calibration set search",
            format!("step {step} outside 1..={}", order.len()),
        ));
    }
    let n = model.joint_count();
    assert_eq!(anchor_deg.len(), n);
    if n > PRIMES.len() {
        return Err(CalError::InvalidModel(format!(
            "set search supports up to {} joints, model has {n}",
            PRIMES.len()
        )));
    }

    let target = order.indices()[step - 1];
    let later: Vec<usize> = order.indices()[step..].to_vec();
    let target_joint = errors.params[target].joint;
    // 0-based first moving joint: the parameter's own joint minus one,
    // clamped into the chain.
    let move_lo = target_joint.saturating_sub(2).min(n - 1);

    let eval = RowEvaluator::new(model, errors, anchor_deg);
    let limits = &model.joint_limits_deg;

    const INFEASIBLE: f64 = 1e9;
    let objective = |q: &[f64]| -> f64 {
        match eval.row(q) {
            Some((row, len)) if len <= options.max_wire_mm => {
                let coupling: f64 = later.iter().map(|&t| row[t] * row[t]).sum();
                -row[target].abs() + options.lambda * coupling
            }
            _ => INFEASIBLE,
        }
    };

    // Refine one start by coordinate descent over the moving joints.
    let refine = |mut q: Vec<f64>| -> Result<(Vec<f64>, f64), CalError> {
        let mut score = objective(&q);
        for _ in 0..options.coordinate_passes {
            for joint in move_lo..n {
                let [lo, hi] = limits[joint];
                let r = minimize_scalar(
                    |x| {
                        let mut trial = q.clone();
                        trial[joint] = x;
                        objective(&trial)
                    },
                    lo,
                    hi,
                    1e-4,
                    120,
                )?;
                // Strict improvement only: along a flat valley (a parameter
                // the wire cannot see from this posture) every start would
                // otherwise collapse onto the same scalar-minimizer output,
                // and the pool would lose the diversity the separation
                // filter needs.
                if r.fx < score {
                    q[joint] = r.x;
                    score = r.fx;
                }
            }
        }
        Ok((q, score))
    };

    let start = options.seed * 7919 + 1;
    let mut pool: Vec<(Vec<f64>, f64)> = Vec::with_capacity(options.multistarts);
    for s in 0..options.multistarts as u64 {
        let mut q = anchor_deg.to_vec();
        for (idx, joint) in (move_lo..n).enumerate() {
            let [lo, hi] = limits[joint];
            q[joint] = lo + halton(start + s, PRIMES[idx]) * (hi - lo);
        }
        pool.push(refine(q)?);
    }
    // Deterministic order: best score first, start index breaks ties.
    let mut scored: Vec<(usize, &(Vec<f64>, f64))> = pool.iter().enumerate().collect();
    scored.sort_by(|a, b| a.1 .1.total_cmp(&b.1 .1).then(a.0.cmp(&b.0)));

    let mut accepted: Vec<Vec<f64>> = Vec::with_capacity(options.set_size);
    let mut sep = options.min_separation_deg;
    while accepted.len() < options.set_size && sep > 1e-6 {
        for (_, (q, score)) in &scored {
            if accepted.len() >= options.set_size {
                break;
            }
            if *score >= INFEASIBLE {
                continue;
            }
            if accepted.iter().all(|a| separation(a, q) >= sep) {
                accepted.push(q.clone());
            }
        }
        sep /= 2.0;
    }
    if accepted.is_empty() {
        return Err(CalError::format(
            "calibration set search",
            format!(
                "no wire-feasible configuration found for step {step} ({})",
                errors.params[target].name()
            ),
        ));
    }

    let eps = options.eps_for_step(step);
    let mut sub_quality = accepted.len() < options.set_size;
    let mut psi = Vec::with_capacity(accepted.len());
    for q in &accepted {
        let (row, _) = eval.row(q).expect("accepted points are wire-feasible");
        if row[target].abs() < options.psi_min
            || later.iter().any(|&t| row[t].abs() > eps)
        {
            sub_quality = true;
        }
        psi.push(order.permute(&row));
    }

    Ok(CalibrationSet {
        step,
        param: errors.params[target].name(),
        points_deg: accepted,
        psi,
        sub_quality,
    })
}

/// Design a complete plan: order first, then one set per step.
pub fn design_plan(
    model: &RobotModel,
    anchor_deg: &[f64],
    errors: &ErrorModel,
    options: &SearchOptions,
) -> Result<CalibrationPlan, CalError> {
    let order = determine_order(model, anchor_deg, errors)?;
    let mut sets = Vec::with_capacity(order.len());
    for step in 1..=order.len() {
        sets.push(find_calibration_set(
            model, anchor_deg, errors, &order, step, options,
        )?);
    }
    Ok(CalibrationPlan {
        anchor_deg: anchor_deg.to_vec(),
        order: order.names().to_vec(),
        sets,
    })
}

/// Findings of a plan validation: `errors` make the plan unusable,
/// `warnings` flag quality shortfalls worth reviewing.
#[derive(Debug, Clone, Default, Serialize)]
pub struct PlanCheck {
    pub errors: Vec<String>,
    pub warnings: Vec<String>,
}

impl PlanCheck {
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Check a plan against a model and error set: structure, limits, wire
/// feasibility, point separation, stored-row consistency, isolation quality.
pub fn validate_plan(
    model: &RobotModel,
    errors: &ErrorModel,
    plan: &CalibrationPlan,
    options: &SearchOptions,
) -> Result<PlanCheck, CalError> {
    model.validate()?;
    errors.validate(model)?;
    let n = model.joint_count();
    let m = errors.len();
    let mut check = PlanCheck::default();

    if plan.anchor_deg.len() != n {
        check
            .errors
            .push(format!("anchor has {} joints, model has {n}", plan.anchor_deg.len()));
        return Ok(check);
    }
    if !model.within_limits(&plan.anchor_deg) {
        check.errors.push("anchor violates joint limits".into());
    }

    let order = match IdentificationOrder::from_names(errors, &plan.order) {
        Ok(o) => o,
        Err(e) => {
            check.errors.push(format!("order: {e}"));
            return Ok(check);
        }
    };

    // Every parameter needs its set.
    for (i, name) in order.names().iter().enumerate() {
        if !plan
            .sets
            .iter()
            .any(|s| s.step == i + 1 && s.param == *name)
        {
            check
                .errors
                .push(format!("no set for step {} ({name})", i + 1));
        }
    }
    if plan.sets.len() > m {
        check
            .errors
            .push(format!("{} sets for {m} parameters", plan.sets.len()));
    }

    let eval = RowEvaluator::new(model, errors, &plan.anchor_deg);
    for set in &plan.sets {
        let label = format!("step {} ({})", set.step, set.param);
        if set.step == 0 || set.step > order.len() {
            check.errors.push(format!("{label}: step out of range"));
            continue;
        }
        if order.names()[set.step - 1] != set.param {
            check.errors.push(format!(
                "{label}: order says step {} identifies {}",
                set.step,
                order.names()[set.step - 1]
            ));
        }
        if set.points_deg.len() != set.psi.len() {
            check.errors.push(format!(
                "{label}: {} points but {} stored rows",
                set.points_deg.len(),
                set.psi.len()
            ));
            continue;
        }
        if set.points_deg.is_empty() {
            check.errors.push(format!("{label}: empty set"));
            continue;
        }
        if set.sub_quality {
            check.warnings.push(format!(
                "{label}: best-effort set with {} of {} points",
                set.points_deg.len(),
                options.set_size
            ));
        }
        let eps = options.eps_for_step(set.step);
        for (i, (point, stored)) in set.points_deg.iter().zip(&set.psi).enumerate() {
            if point.len() != n {
                check
                    .errors
                    .push(format!("{label} point {}: wrong joint count", i + 1));
                continue;
            }
            if !model.within_limits(point) {
                check
                    .errors
                    .push(format!("{label} point {}: violates joint limits", i + 1));
                continue;
            }
            match eval.row(point) {
                None => {
                    check.errors.push(format!(
                        "{label} point {}: wire direction degenerate at the anchor",
                        i + 1
                    ));
                    continue;
                }
                Some((row, len)) => {
                    if len > options.max_wire_mm {
                        check.errors.push(format!(
                            "{label} point {}: wire length {len:.1} mm exceeds {} mm",
                            i + 1,
                            options.max_wire_mm
                        ));
                    }
                    let expected = order.permute(&row);
                    if stored.len() != expected.len() {
                        check
                            .errors
                            .push(format!("{label} point {}: stored row has wrong width", i + 1));
                    } else {
                        let diff = stored
                            .iter()
                            .zip(&expected)
                            .map(|(a, b)| (a - b).abs())
                            .fold(0.0f64, f64::max);
                        if diff > 1e-9 {
                            check.errors.push(format!(
                                "{label} point {}: stored sensitivities differ by {diff:.2e}",
                                i + 1
                            ));
                        }
                    }
                    let t = set.step - 1;
                    if row[order.indices()[t]].abs() < options.psi_min {
                        check.warnings.push(format!(
                            "{label} point {}: target sensitivity {:.3} below {}",
                            i + 1,
                            row[order.indices()[t]],
                            options.psi_min
                        ));
                    }
                    for &ti in &order.indices()[set.step..] {
                        if row[ti].abs() > eps {
                            check.warnings.push(format!(
                                "{label} point {}: residual coupling {:.3} to {} exceeds {eps}",
                                i + 1,
                                row[ti],
                                errors.params[ti].name()
                            ));
                        }
                    }
                }
            }
        }
        for i in 0..set.points_deg.len() {
            for j in i + 1..set.points_deg.len() {
                let d = separation(&set.points_deg[i], &set.points_deg[j]);
                if d < options.min_separation_deg {
                    check.errors.push(format!(
                        "{label}: points {} and {} only {d:.3} deg apart",
                        i + 1,
                        j + 1
                    ));
                }
            }
        }
    }
    Ok(check)
}
