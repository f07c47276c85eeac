//! Report artifacts: metadata embedding, validation bundles, histogram CSVs
//! and the human-readable summary.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use wirecal::{BranchReport, CalError, PlaneFit, PlateSpec, ProbeGrid, Report};

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in digest {
        let _ = write!(out, "{b:02x}");
    }
    out
}

/// Provenance block embedded in every JSON artifact: tool version, the run
/// seed when one was used, and content digests of every input.
pub fn meta_value(seed: Option<u64>, inputs: &BTreeMap<String, String>) -> Value {
    let mut map = serde_json::Map::new();
    map.insert(
        "tool".into(),
        Value::String(format!("wirecal {}", env!("CARGO_PKG_VERSION"))),
    );
    if let Some(s) = seed {
        map.insert("seed".into(), Value::from(s));
    }
    let digests: serde_json::Map<String, Value> = inputs
        .iter()
        .map(|(k, v)| (k.clone(), Value::String(v.clone())))
        .collect();
    map.insert("inputs".into(), Value::Object(digests));
    Value::Object(map)
}

/// Serialize `value` with the meta block spliced in as a top-level key. The
/// typed loaders ignore unknown keys, so files written this way stay loadable
/// as their plain type.
pub fn json_with_meta<T: Serialize>(value: &T, meta: &Value) -> Result<String, CalError> {
    let mut v = serde_json::to_value(value)
        .map_err(|e| CalError::format("json serialize", e.to_string()))?;
    match &mut v {
        Value::Object(map) => {
            map.insert("meta".into(), meta.clone());
        }
        other => {
            let mut map = serde_json::Map::new();
            map.insert("meta".into(), meta.clone());
            map.insert("data".into(), other.take());
            v = Value::Object(map);
        }
    }
    let mut s = serde_json::to_string_pretty(&v)
        .map_err(|e| CalError::format("json serialize", e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Percentage reduction of an error statistic, and whether it clears the
/// threshold. A below-noise baseline makes the ratio meaningless; then the
/// check only asks that the calibrated figure is also below noise.
pub fn reduction(before: f64, after: f64, threshold_percent: f64) -> (Option<f64>, bool) {
    if before > 1e-9 {
        let r = 100.0 * (1.0 - after / before);
        (Some(r), r >= threshold_percent)
    } else {
        // Nothing to reduce: the uncompensated model is already perfect.
        // Compensation then carries identification round-off of the order of
        // the search tolerance, so hold it to a micron instead of a ratio.
        (None, after <= 1e-3)
    }
}

#[derive(Serialize)]
pub struct BranchValidation {
    pub poses: usize,
    pub before: BranchReport,
    pub after: BranchReport,
    pub reduction_percent: Option<f64>,
    pub threshold_percent: f64,
    pub passed: bool,
}

impl BranchValidation {
    pub fn new(poses: usize, before: BranchReport, after: BranchReport, threshold: f64) -> Self {
        let (reduction_percent, passed) = reduction(before.mean_mm, after.mean_mm, threshold);
        BranchValidation {
            poses,
            before,
            after,
            reduction_percent,
            threshold_percent: threshold,
            passed,
        }
    }
}

/// One side (before or after compensation) of the plate-probing record.
#[derive(Serialize)]
pub struct PlateSide {
    pub attempted: usize,
    pub reached: usize,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub mean_abs_mm: f64,
    pub std_mm: f64,
    pub max_abs_mm: f64,
    pub points_mm: Vec<[f64; 3]>,
    pub residuals_mm: Vec<f64>,
}

impl PlateSide {
    pub fn new(grid: ProbeGrid, fit: PlaneFit) -> Self {
        PlateSide {
            attempted: grid.attempted,
            reached: grid.points_mm.len(),
            a: fit.a,
            b: fit.b,
            c: fit.c,
            mean_abs_mm: fit.mean_abs_mm,
            std_mm: fit.std_mm,
            max_abs_mm: fit.max_abs_mm,
            points_mm: grid.points_mm,
            residuals_mm: fit.residuals_mm,
        }
    }
}

#[derive(Serialize)]
pub struct PlateValidation {
    pub plate: PlateSpec,
    pub before: PlateSide,
    pub after: PlateSide,
    pub reduction_percent: Option<f64>,
    pub threshold_percent: f64,
    pub passed: bool,
}

impl PlateValidation {
    pub fn new(plate: PlateSpec, before: PlateSide, after: PlateSide, threshold: f64) -> Self {
        let (reduction_percent, passed) = reduction(before.mean_abs_mm, after.mean_abs_mm, threshold);
        PlateValidation {
            plate,
            before,
            after,
            reduction_percent,
            threshold_percent: threshold,
            passed,
        }
    }
}

/// Histogram of `before` and `after` samples on a shared binning, as CSV.
/// Bin edges are multiples of `width`, covering both data sets.
pub fn histogram_csv(width: f64, decimals: usize, before: &[f64], after: &[f64]) -> String {
    let all = before.iter().chain(after);
    let mut lo = 0.0_f64;
    let mut hi = 0.0_f64;
    for v in all {
        lo = lo.min(*v);
        hi = hi.max(*v);
    }
    let first = (lo / width).floor() as i64;
    let mut last = (hi / width).floor() as i64;
    if last - first > 10_000 {
        last = first + 10_000;
    }
    let mut out = String::from("bin_lo_mm,bin_hi_mm,before,after\n");
    for bin in first..=last {
        let bin_lo = bin as f64 * width;
        let bin_hi = (bin + 1) as f64 * width;
        let count = |data: &[f64]| {
            data.iter()
                .filter(|v| {
                    let k = ((**v / width).floor() as i64).min(last);
                    k == bin
                })
                .count()
        };
        let _ = writeln!(
            out,
            "{bin_lo:.decimals$},{bin_hi:.decimals$},{},{}",
            count(before),
            count(after)
        );
    }
    out
}

pub struct SummaryInputs<'a> {
    pub seed: u64,
    pub sigma_mm: f64,
    pub resolution_mm: f64,
    pub report: &'a Report,
    /// True injected offsets in error-model order, when the run simulated them.
    pub truth: Option<&'a [f64]>,
    pub units: &'a [&'static str],
    pub branch: Option<&'a BranchValidation>,
    pub plate: Option<&'a PlateValidation>,
    pub validations_skipped: Option<&'a str>,
}

pub fn summary_text(s: &SummaryInputs) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "wirecal calibration summary");
    let _ = writeln!(out, "===========================");
    let _ = writeln!(
        out,
        "seed {}  sigma {} mm  resolution {} mm  passes {}",
        s.seed, s.sigma_mm, s.resolution_mm, s.report.passes
    );
    let _ = writeln!(out);
    let _ = writeln!(out, "identified offsets (identification order):");
    for step in &s.report.steps {
        let flag = if step.boundary_hit { "  AT BOUND" } else { "" };
        let _ = writeln!(
            out,
            "  step {:>2}  {:<8} {:>9.4} {:<3}  residual rms {:.4} mm{flag}",
            step.step, step.param, step.value, step.unit, step.residual_rms_mm
        );
    }
    if let Some(truth) = s.truth {
        let _ = writeln!(out);
        let _ = writeln!(out, "identified vs injected (error-model order):");
        let mut worst = 0.0_f64;
        for (i, name) in s.report.names.iter().enumerate() {
            let err = s.report.values[i] - truth[i];
            worst = worst.max(err.abs());
            let _ = writeln!(
                out,
                "  {:<8} {:>9.4}  vs {:>7.3} {:<3}  err {:>8.4}",
                name, s.report.values[i], truth[i], s.units[i], err
            );
        }
        let _ = writeln!(out, "  worst absolute error {worst:.4}");
    }
    let _ = writeln!(out);
    match (s.branch, s.plate, s.validations_skipped) {
        (Some(b), Some(p), _) => {
            let _ = writeln!(
                out,
                "branch consistency ({} poses, tool-point distance spread, mm):",
                b.poses
            );
            let _ = writeln!(
                out,
                "  before  mean {:.3}  std {:.3}  max {:.3}",
                b.before.mean_mm, b.before.std_mm, b.before.max_mm
            );
            let _ = writeln!(
                out,
                "  after   mean {:.3}  std {:.3}  max {:.3}",
                b.after.mean_mm, b.after.std_mm, b.after.max_mm
            );
            let _ = writeln!(out, "  {}", verdict_line(b.reduction_percent, b.threshold_percent, b.passed));
            let _ = writeln!(out);
            let _ = writeln!(
                out,
                "plate probing ({}/{} grid points, plane-fit residuals, mm):",
                p.after.reached, p.after.attempted
            );
            let _ = writeln!(
                out,
                "  before  mean|res| {:.4}  std {:.4}  max {:.4}",
                p.before.mean_abs_mm, p.before.std_mm, p.before.max_abs_mm
            );
            let _ = writeln!(
                out,
                "  after   mean|res| {:.4}  std {:.4}  max {:.4}",
                p.after.mean_abs_mm, p.after.std_mm, p.after.max_abs_mm
            );
            let _ = writeln!(out, "  {}", verdict_line(p.reduction_percent, p.threshold_percent, p.passed));
        }
        (_, _, Some(reason)) => {
            let _ = writeln!(out, "validations skipped: {reason}");
        }
        _ => {}
    }
    out
}

fn verdict_line(reduction: Option<f64>, threshold: f64, passed: bool) -> String {
    let verdict = if passed { "PASS" } else { "FAIL" };
    match reduction {
        Some(r) => format!("reduction {r:.1}%  (threshold {threshold:.0}%)  {verdict}"),
        None => format!("baseline already at noise floor  {verdict}"),
    }
}
