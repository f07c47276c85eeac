//! Calibration quality checks that need no extra metrology hardware.
//!
//! Two procedures are provided. The first commands the same tool pose through
//! several inverse-kinematics branches and measures how far apart the
//! resulting tool points land relative to a fixed external point: on a
//! perfectly known robot every branch lands in one spot. The second probes a
//! flat plate along the tool axis on a grid and fits a plane through the
//! commanded touch points: model errors bend the recorded surface.

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::CalError;
use crate::ik::{BranchFlags, Shoulder, SphericalWristIk};
use crate::model::RobotModel;

/// Joint-space sampling box for branch-consistency poses, degrees. Kept well
/// inside the work envelope so most poses are reachable on all four branches.
const POSE_BOX_LO: [f64; 6] = [-60.0, -110.0, 120.0, -140.0, -100.0, -170.0];
const POSE_BOX_HI: [f64; 6] = [60.0, -20.0, 240.0, 140.0, 100.0, 170.0];

/// Result of the branch-consistency procedure.
#[derive(Debug, Clone, Serialize)]
pub struct BranchReport {
    /// Largest pairwise tool-point distance discrepancy per pose, mm.
    pub spreads_mm: Vec<f64>,
    pub mean_mm: f64,
    pub std_mm: f64,
    pub max_mm: f64,
    /// Poses discarded because fewer than two branches were reachable.
    pub skipped: usize,
}

fn summarize(values: &[f64]) -> (f64, f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    let max = values.iter().cloned().fold(0.0_f64, f64::max);
    (mean, var.sqrt(), max)
}

/// Command `poses` random tool poses through the four elbow/wrist branches of
/// `commanded` and report how far the branch tool points of `actual` spread,
/// each measured as a distance to `anchor_mm`. A calibrated controller model
/// drives the spread toward zero.
pub fn branch_consistency(
    commanded: &RobotModel,
    actual: &RobotModel,
    anchor_mm: &Vector3<f64>,
    poses: usize,
    seed: u64,
) -> Result<BranchReport, CalError> {
    let ik = SphericalWristIk::new(commanded)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spreads = Vec::with_capacity(poses);
    let mut skipped = 0usize;
    let mut attempts = 0usize;
    let budget = poses.saturating_mul(20).max(64);
    while spreads.len() < poses {
        attempts += 1;
        if attempts > budget {
            return Err(CalError::format(
                "branch consistency",
                format!(
                    "only {} of {poses} poses had two reachable branches",
                    spreads.len()
                ),
            ));
        }
        let q: Vec<f64> = POSE_BOX_LO
            .iter()
            .zip(&POSE_BOX_HI)
            .map(|(l, h)| rng.random_range(*l..*h))
            .collect();
        let (p, r) = commanded.tool_pose(&q);
        let mut dists = Vec::with_capacity(4);
        for flags in BranchFlags::elbow_wrist_square(Shoulder::Front) {
            if let Some(sol) = ik.solve(&r, &p, flags) {
                let tip = actual.tool_point(&sol.joints_deg);
                dists.push((tip - anchor_mm).norm());
            }
        }
        if dists.len() < 2 {
            skipped += 1;
            continue;
        }
        let mut spread = 0.0_f64;
        for i in 0..dists.len() {
            for j in i + 1..dists.len() {
                spread = spread.max((dists[i] - dists[j]).abs());
            }
        }
        spreads.push(spread);
    }
    let (mean_mm, std_mm, max_mm) = summarize(&spreads);
    Ok(BranchReport {
        spreads_mm: spreads,
        mean_mm,
        std_mm,
        max_mm,
        skipped,
    })
}

/// Flat plate z = a x + b y + c in base-frame mm.
#[derive(Debug, Clone, Copy, Serialize, serde::Deserialize)]
pub struct PlateSpec {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl PlateSpec {
    pub fn z(&self, x: f64, y: f64) -> f64 {
        self.a * x + self.b * y + self.c
    }
}

impl Default for PlateSpec {
    /// Gently tilted plate used by the standard probing scenario.
    fn default() -> Self {
        PlateSpec {
            a: 0.0005,
            b: -0.0003,
            c: -150.0,
        }
    }
}

/// Probe grid extents, mm: 19 columns across x, 11 rows across y.
const GRID_X: (f64, f64, usize) = (250.0, 650.0, 19);
const GRID_Y: (f64, f64, usize) = (-125.0, 125.0, 11);
/// Commanded-z search bracket around the nominal plate height, mm.
const TOUCH_BRACKET_MM: f64 = 30.0;
const TOUCH_ITERS: usize = 80;

/// Tool orientation while probing: tool z pointing straight down.
fn probe_rotation() -> Matrix3<f64> {
    Matrix3::new(1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, -1.0)
}

/// Commanded touch points recorded while probing the plate.
#[derive(Debug, Clone, Serialize)]
pub struct ProbeGrid {
    /// Commanded (x, y, z) at the instant the physical tip touches, mm.
    pub points_mm: Vec<[f64; 3]>,
    /// Grid locations attempted, including unreachable ones.
    pub attempted: usize,
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = if n > 1 { (hi - lo) / (n - 1) as f64 } else { 0.0 };
    (0..n).map(move |i| lo + step * i as f64)
}

/// Commanded z at which the tip of `actual` contacts the plate when the
/// controller runs `commanded`. None when the approach is unreachable or the
/// bracket does not straddle the plate.
fn touch_z(
    ik: &SphericalWristIk,
    actual: &RobotModel,
    plate: &PlateSpec,
    x: f64,
    y: f64,
) -> Option<f64> {
    let r = probe_rotation();
    let branch = BranchFlags::new(Shoulder::Front, crate::ik::Elbow::Up, crate::ik::Wrist::NoFlip);
    let gap = |zc: f64| -> Option<f64> {
        let sol = ik.solve(&r, &Vector3::new(x, y, zc), branch)?;
        let tip = actual.tool_point(&sol.joints_deg);
        Some(tip.z - plate.z(tip.x, tip.y))
    };
    let mut z0 = plate.z(x, y) + TOUCH_BRACKET_MM;
    let mut z1 = plate.z(x, y) - TOUCH_BRACKET_MM;
    let mut g0 = gap(z0)?;
    let g1 = gap(z1)?;
    if g0 * g1 > 0.0 {
        return None;
    }
    for _ in 0..TOUCH_ITERS {
        let zm = 0.5 * (z0 + z1);
        let gm = gap(zm)?;
        if gm.abs() < 1e-10 {
            return Some(zm);
        }
        if g0 * gm <= 0.0 {
            z1 = zm;
        } else {
            z0 = zm;
            g0 = gm;
        }
    }
    Some(0.5 * (z0 + z1))
}

/// Probe the plate over the standard grid. The controller believes
/// `commanded`; the tool tip obeys `actual`.
pub fn simulate_probe_grid(
    commanded: &RobotModel,
    actual: &RobotModel,
    plate: &PlateSpec,
) -> Result<ProbeGrid, CalError> {
    let ik = SphericalWristIk::new(commanded)?;
    let mut points = Vec::new();
    let mut attempted = 0usize;
    for x in linspace(GRID_X.0, GRID_X.1, GRID_X.2) {
        for y in linspace(GRID_Y.0, GRID_Y.1, GRID_Y.2) {
            attempted += 1;
            if let Some(z) = touch_z(&ik, actual, plate, x, y) {
                points.push([x, y, z]);
            }
        }
    }
    if points.len() < 3 {
        return Err(CalError::format(
            "plate probing",
            format!("only {} of {attempted} grid points reachable", points.len()),
        ));
    }
    Ok(ProbeGrid {
        points_mm: points,
        attempted,
    })
}

/// Least-squares plane through 3D points.
#[derive(Debug, Clone, Serialize)]
pub struct PlaneFit {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Signed residuals a x + b y + c - z per point, mm.
    pub residuals_mm: Vec<f64>,
    pub mean_abs_mm: f64,
    pub std_mm: f64,
    pub max_abs_mm: f64,
}

/// Fit z = a x + b y + c by least squares.
pub fn fit_plane(points_mm: &[[f64; 3]]) -> Result<PlaneFit, CalError> {
    let n = points_mm.len();
    if n < 3 {
        return Err(CalError::RankDeficient);
    }
    let design = DMatrix::from_fn(n, 3, |i, j| match j {
        0 => points_mm[i][0],
        1 => points_mm[i][1],
        _ => 1.0,
    });
    let z = DVector::from_fn(n, |i, _| points_mm[i][2]);
    let svd = design.clone().svd(true, true);
    let smax = svd.singular_values.max();
    if svd.singular_values.iter().any(|s| *s <= smax * 1e-12) {
        return Err(CalError::RankDeficient);
    }
    let coef = svd
        .solve(&z, smax * 1e-12)
        .map_err(|m| CalError::format("plane fit", m))?;
    let residuals: Vec<f64> = (0..n)
        .map(|i| design.row(i).transpose().dot(&coef) - z[i])
        .collect();
    let mean_abs = residuals.iter().map(|r| r.abs()).sum::<f64>() / n as f64;
    let mean = residuals.iter().sum::<f64>() / n as f64;
    let var = residuals.iter().map(|r| (r - mean) * (r - mean)).sum::<f64>() / n as f64;
    let max_abs = residuals.iter().map(|r| r.abs()).fold(0.0_f64, f64::max);
    Ok(PlaneFit {
        a: coef[0],
        b: coef[1],
        c: coef[2],
        residuals_mm: residuals,
        mean_abs_mm: mean_abs,
        std_mm: var.sqrt(),
        max_abs_mm: max_abs,
    })
}

/// Flat-file summary of one probing run: grid coverage plus the plane fit.
#[derive(Debug, Clone, Serialize)]
pub struct PlaneReport {
    pub attempted: usize,
    pub reached: usize,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub mean_abs_mm: f64,
    pub std_mm: f64,
    pub max_abs_mm: f64,
}

impl PlaneReport {
    pub fn new(grid: &ProbeGrid, fit: &PlaneFit) -> Self {
        PlaneReport {
            attempted: grid.attempted,
            reached: grid.points_mm.len(),
            a: fit.a,
            b: fit.b,
            c: fit.c,
            mean_abs_mm: fit.mean_abs_mm,
            std_mm: fit.std_mm,
            max_abs_mm: fit.max_abs_mm,
        }
    }
}
