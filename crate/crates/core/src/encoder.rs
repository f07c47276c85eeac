//! Draw-wire encoder simulation: Gaussian reading noise followed by
//! quantization to the instrument's count resolution.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::design::CalibrationPlan;
use crate::error::CalError;
use crate::model::RobotModel;
use crate::params::ErrorModel;

/// Instrument parameters of the simulated draw-wire encoder.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EncoderSpec {
    /// Size of one count, millimetres.
    pub resolution_mm: f64,
    /// Maximum wire extension, millimetres.
    pub max_length_mm: f64,
    /// Standard deviation of the reading noise, millimetres.
    pub sigma_mm: f64,
}

impl Default for EncoderSpec {
    fn default() -> Self {
        EncoderSpec {
            resolution_mm: 0.025488,
            max_length_mm: 1250.0,
            sigma_mm: 0.02,
        }
    }
}

/// Round a length to the nearest whole count.
pub fn quantize(length_mm: f64, resolution_mm: f64) -> f64 {
    if resolution_mm > 0.0 {
        (length_mm / resolution_mm).round() * resolution_mm
    } else {
        length_mm
    }
}

/// Simulate one reading of the wire length between `point_deg` and
/// `anchor_deg` under `true_model`. `index` only labels the point in error
/// reports. Fails when the commanded point could run the wire off its spool
/// even before noise is considered.
pub fn simulate_measurement(
    true_model: &RobotModel,
    point_deg: &[f64],
    anchor_deg: &[f64],
    spec: &EncoderSpec,
    rng: &mut ChaCha8Rng,
    index: usize,
) -> Result<f64, CalError> {
    let true_length =
        (true_model.tool_point(point_deg) - true_model.tool_point(anchor_deg)).norm();
    if true_length + 4.0 * spec.sigma_mm > spec.max_length_mm {
        return Err(CalError::WireRange {
            index,
            length: true_length,
            max: spec.max_length_mm,
        });
    }
    let noisy = if spec.sigma_mm > 0.0 {
        let normal = Normal::new(0.0, spec.sigma_mm)
            .map_err(|e| CalError::format("encoder noise model", e))?;
        true_length + normal.sample(rng)
    } else {
        true_length
    };
    Ok(quantize(noisy, spec.resolution_mm))
}

/// Measurements taken for one step of the plan: the commanded points, the
/// encoder readings, and the wire reading back at the anchor posture before
/// moving on (identically zero in simulation because the wire is re-zeroed
/// there).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StepLog {
    pub step: usize,
    pub param: String,
    pub points_deg: Vec<Vec<f64>>,
    pub measured_mm: Vec<f64>,
    pub anchor_recheck_mm: f64,
}

/// A full virtual measurement campaign over a calibration plan.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CampaignLog {
    pub seed: u64,
    pub sigma_mm: f64,
    pub resolution_mm: f64,
    pub steps: Vec<StepLog>,
}

/// Run the whole campaign: visit every plan point in order, read the encoder
/// under the true (perturbed) model, re-zero at the anchor between steps.
/// A fixed seed reproduces the log bit for bit.
pub fn run_campaign(
    nominal: &RobotModel,
    errors: &ErrorModel,
    true_values: &[f64],
    plan: &CalibrationPlan,
    spec: &EncoderSpec,
    seed: u64,
) -> Result<CampaignLog, CalError> {
    let true_model = errors.apply(nominal, true_values)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut steps = Vec::with_capacity(plan.sets.len());
    for set in &plan.sets {
        let mut measured = Vec::with_capacity(set.points_deg.len());
        for (i, point) in set.points_deg.iter().enumerate() {
            measured.push(simulate_measurement(
                &true_model,
                point,
                &plan.anchor_deg,
                spec,
                &mut rng,
                i,
            )?);
        }
        steps.push(StepLog {
            step: set.step,
            param: set.param.clone(),
            points_deg: set.points_deg.clone(),
            measured_mm: measured,
            anchor_recheck_mm: 0.0,
        });
    }
    Ok(CampaignLog {
        seed,
        sigma_mm: spec.sigma_mm,
        resolution_mm: spec.resolution_mm,
        steps,
    })
}
