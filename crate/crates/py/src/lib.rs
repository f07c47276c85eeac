//! Python bindings: robot models, error parameter sets, calibration plans,
//! virtual campaigns, sequential identification and the validation
//! procedures. Scalar data crosses the boundary as native Python types;
//! structured reports cross as JSON strings.

use nalgebra::{Matrix3, Vector3};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use wirecal::robots;
use wirecal::{
    branch_consistency, fit_plane, run_calibration, run_campaign, simulate_probe_grid,
    BranchFlags, CalError, CalibrationPlan, CampaignLog, Elbow, EncoderSpec, ErrorModel,
    IdentifyOptions, PlaneReport, PlateSpec, RobotModel, Shoulder, SphericalWristIk, Wrist,
};

fn err(e: CalError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_err(e: serde_json::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rows_of(m: &Matrix3<f64>) -> Vec<Vec<f64>> {
    (0..3)
        .map(|i| (0..3).map(|j| m[(i, j)]).collect())
        .collect()
}

fn matrix_of(rows: &[Vec<f64>]) -> PyResult<Matrix3<f64>> {
    if rows.len() != 3 || rows.iter().any(|r| r.len() != 3) {
        return Err(PyValueError::new_err("rotation must be 3 rows of 3"));
    }
    Ok(Matrix3::from_fn(|i, j| rows[i][j]))
}

/// Serial robot model with modified DH rows. Degrees and millimetres.
#[pyclass(name = "RobotModel", module = "wirecal_py")]
struct PyRobotModel {
    inner: RobotModel,
}

#[pymethods]
impl PyRobotModel {
    /// The built-in Viper s650 model with its wire-measurement tool.
    #[staticmethod]
    fn viper() -> Self {
        PyRobotModel {
            inner: robots::viper_s650(),
        }
    }

    /// A planar two-joint arm, handy for analytic cross-checks.
    #[staticmethod]
    fn planar(l1_mm: f64, l2_mm: f64) -> Self {
        PyRobotModel {
            inner: robots::planar_two_link(l1_mm, l2_mm),
        }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner: RobotModel = serde_json::from_str(text).map_err(json_err)?;
        inner.validate().map_err(err)?;
        Ok(PyRobotModel { inner })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&self.inner).map_err(json_err)
    }

    #[getter]
    fn name(&self) -> &str {
        &self.inner.name
    }

    fn joint_count(&self) -> usize {
        self.inner.joint_count()
    }

    fn within_limits(&self, joints_deg: Vec<f64>) -> bool {
        self.inner.within_limits(&joints_deg)
    }

    /// Tool point in base-frame millimetres.
    fn tool_point(&self, joints_deg: Vec<f64>) -> (f64, f64, f64) {
        let p = self.inner.tool_point(&joints_deg);
        (p.x, p.y, p.z)
    }

    /// Tool position and flange rotation (three rows of three).
    fn tool_pose(&self, joints_deg: Vec<f64>) -> ((f64, f64, f64), Vec<Vec<f64>>) {
        let (p, r) = self.inner.tool_pose(&joints_deg);
        ((p.x, p.y, p.z), rows_of(&r))
    }

    /// The anchor posture the Viper plan re-zeroes the wire at.
    #[staticmethod]
    fn viper_anchor_deg() -> Vec<f64> {
        robots::VIPER_ANCHOR_DEG.to_vec()
    }

    fn __repr__(&self) -> String {
        format!(
            "RobotModel(name={:?}, joints={})",
            self.inner.name,
            self.inner.joint_count()
        )
    }
}

/// Set of kinematic error parameters to identify.
#[pyclass(name = "ErrorModel", module = "wirecal_py")]
struct PyErrorModel {
    inner: ErrorModel,
}

#[pymethods]
impl PyErrorModel {
    /// The built-in ten-parameter set for the Viper s650.
    #[staticmethod]
    fn viper() -> Self {
        PyErrorModel {
            inner: robots::viper_error_model(),
        }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyErrorModel {
            inner: serde_json::from_str(text).map_err(json_err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&self.inner).map_err(json_err)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn names(&self) -> Vec<String> {
        self.inner.names()
    }

    fn units(&self) -> Vec<&'static str> {
        self.inner.params.iter().map(|p| p.kind.unit()).collect()
    }

    fn bounds(&self) -> Vec<f64> {
        self.inner.params.iter().map(|p| p.bound).collect()
    }

    /// The benchmark offset set used by the simulated experiments.
    #[staticmethod]
    fn viper_benchmark_offsets() -> Vec<f64> {
        robots::viper_benchmark_offsets()
    }

    /// Apply offsets (one per parameter) to a model, returning the
    /// perturbed model.
    fn apply(&self, model: &PyRobotModel, values: Vec<f64>) -> PyResult<PyRobotModel> {
        Ok(PyRobotModel {
            inner: self.inner.apply(&model.inner, &values).map_err(err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("ErrorModel({:?})", self.inner.names())
    }
}

/// Measurement plan: anchor posture, identification order, one point set
/// per parameter.
#[pyclass(name = "CalibrationPlan", module = "wirecal_py")]
struct PyCalibrationPlan {
    inner: CalibrationPlan,
}

#[pymethods]
impl PyCalibrationPlan {
    /// The built-in plan for the Viper s650.
    #[staticmethod]
    fn viper() -> Self {
        PyCalibrationPlan {
            inner: robots::viper_plan(),
        }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyCalibrationPlan {
            inner: serde_json::from_str(text).map_err(json_err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&self.inner).map_err(json_err)
    }

    #[getter]
    fn order(&self) -> Vec<String> {
        self.inner.order.clone()
    }

    #[getter]
    fn anchor_deg(&self) -> Vec<f64> {
        self.inner.anchor_deg.clone()
    }

    fn set_count(&self) -> usize {
        self.inner.sets.len()
    }

    /// Joint configurations of one set, by 1-based step number.
    fn points(&self, step: usize) -> PyResult<Vec<Vec<f64>>> {
        self.inner
            .sets
            .iter()
            .find(|s| s.step == step)
            .map(|s| s.points_deg.clone())
            .ok_or_else(|| PyValueError::new_err(format!("no set for step {step}")))
    }

    fn __repr__(&self) -> String {
        format!(
            "CalibrationPlan(steps={}, order={:?})",
            self.inner.sets.len(),
            self.inner.order
        )
    }
}

/// Recorded (or simulated) measurement campaign.
#[pyclass(name = "CampaignLog", module = "wirecal_py")]
struct PyCampaignLog {
    inner: CampaignLog,
}

#[pymethods]
impl PyCampaignLog {
    fn to_csv(&self) -> PyResult<String> {
        wirecal::io::campaign_to_csv(&self.inner).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (text, seed = 0, sigma_mm = 0.0, resolution_mm = 0.0))]
    fn from_csv(text: &str, seed: u64, sigma_mm: f64, resolution_mm: f64) -> PyResult<Self> {
        Ok(PyCampaignLog {
            inner: CampaignLog {
                seed,
                sigma_mm,
                resolution_mm,
                steps: wirecal::io::campaign_from_csv(text).map_err(err)?,
            },
        })
    }

    #[getter]
    fn seed(&self) -> u64 {
        self.inner.seed
    }

    fn measurements(&self, step: usize) -> PyResult<Vec<f64>> {
        self.inner
            .steps
            .iter()
            .find(|s| s.step == step)
            .map(|s| s.measured_mm.clone())
            .ok_or_else(|| PyValueError::new_err(format!("no step {step} in the log")))
    }

    fn __repr__(&self) -> String {
        format!("CampaignLog(seed={}, steps={})", self.inner.seed, self.inner.steps.len())
    }
}

/// Sensitivity of the wire reading to each error parameter at one joint
/// configuration: returns (row, wire_length_mm). Angular entries are mm per
/// degree, length entries mm per mm, in error-model order.
#[pyfunction]
fn sensitivity_row(
    model: &PyRobotModel,
    joints_deg: Vec<f64>,
    anchor_posture_deg: Vec<f64>,
    errors: &PyErrorModel,
) -> PyResult<(Vec<f64>, f64)> {
    let row =
        wirecal::sensitivity_row(&model.inner, &joints_deg, &anchor_posture_deg, &errors.inner)
            .map_err(err)?;
    Ok((row.values, row.wire_length_mm))
}

/// Wire length the perturbed model predicts at one configuration.
#[pyfunction]
fn predicted_distance(
    model: &PyRobotModel,
    joints_deg: Vec<f64>,
    anchor_posture_deg: Vec<f64>,
    errors: &PyErrorModel,
    values: Vec<f64>,
) -> PyResult<f64> {
    wirecal::predicted_distance(
        &model.inner,
        &joints_deg,
        &anchor_posture_deg,
        &errors.inner,
        &values,
    )
    .map_err(err)
}

/// Greedy identification order for an error set, as parameter names.
#[pyfunction]
fn determine_order(
    model: &PyRobotModel,
    anchor_posture_deg: Vec<f64>,
    errors: &PyErrorModel,
) -> PyResult<Vec<String>> {
    let order =
        wirecal::determine_order(&model.inner, &anchor_posture_deg, &errors.inner).map_err(err)?;
    Ok(order.names().to_vec())
}

/// Simulate the whole campaign on a quantized, noisy encoder.
#[pyfunction]
#[pyo3(signature = (model, errors, truth, plan, sigma_mm = 0.02, resolution_mm = 0.025488, seed = 0))]
fn simulate_campaign(
    model: &PyRobotModel,
    errors: &PyErrorModel,
    truth: Vec<f64>,
    plan: &PyCalibrationPlan,
    sigma_mm: f64,
    resolution_mm: f64,
    seed: u64,
) -> PyResult<PyCampaignLog> {
    let spec = EncoderSpec {
        sigma_mm,
        resolution_mm,
        ..EncoderSpec::default()
    };
    Ok(PyCampaignLog {
        inner: run_campaign(&model.inner, &errors.inner, &truth, &plan.inner, &spec, seed)
            .map_err(err)?,
    })
}

/// Identify every parameter sequentially. Returns the full report as a JSON
/// string with `names` and `values` in error-model order.
#[pyfunction]
#[pyo3(signature = (model, errors, plan, log, refine = 0))]
fn calibrate(
    model: &PyRobotModel,
    errors: &PyErrorModel,
    plan: &PyCalibrationPlan,
    log: &PyCampaignLog,
    refine: usize,
) -> PyResult<String> {
    let options = IdentifyOptions {
        refine_passes: refine,
        ..IdentifyOptions::default()
    };
    let report = run_calibration(&model.inner, &errors.inner, &plan.inner, &log.inner, &options)
        .map_err(err)?;
    serde_json::to_string_pretty(&report).map_err(json_err)
}

/// Closed-form inverse kinematics. Branch flags are strings: shoulder
/// "front"/"back", elbow "up"/"down", wrist "noflip"/"flip". Returns
/// (joints_deg, wrist_singular) or None when unreachable.
#[pyfunction]
#[pyo3(signature = (model, rotation, tool_point, shoulder = "front", elbow = "up", wrist = "noflip"))]
fn solve_ik(
    model: &PyRobotModel,
    rotation: Vec<Vec<f64>>,
    tool_point: (f64, f64, f64),
    shoulder: &str,
    elbow: &str,
    wrist: &str,
) -> PyResult<Option<(Vec<f64>, bool)>> {
    let ik = SphericalWristIk::new(&model.inner).map_err(err)?;
    let flags = BranchFlags::new(
        match shoulder {
            "front" => Shoulder::Front,
            "back" => Shoulder::Back,
            other => return Err(PyValueError::new_err(format!("unknown shoulder {other:?}"))),
        },
        match elbow {
            "up" => Elbow::Up,
            "down" => Elbow::Down,
            other => return Err(PyValueError::new_err(format!("unknown elbow {other:?}"))),
        },
        match wrist {
            "noflip" => Wrist::NoFlip,
            "flip" => Wrist::Flip,
            other => return Err(PyValueError::new_err(format!("unknown wrist {other:?}"))),
        },
    );
    let r = matrix_of(&rotation)?;
    let p = Vector3::new(tool_point.0, tool_point.1, tool_point.2);
    Ok(ik.solve(&r, &p, flags).map(|s| (s.joints_deg, s.wrist_singular)))
}

/// Branch-consistency validation. Commands poses through four branches of
/// `commanded` and reports the spread of tool-point distances of `actual`
/// to the given external point, as a JSON report.
#[pyfunction]
#[pyo3(signature = (commanded, actual, anchor_mm, poses = 50, seed = 0))]
fn branch_consistency_report(
    commanded: &PyRobotModel,
    actual: &PyRobotModel,
    anchor_mm: (f64, f64, f64),
    poses: usize,
    seed: u64,
) -> PyResult<String> {
    let anchor = Vector3::new(anchor_mm.0, anchor_mm.1, anchor_mm.2);
    let report =
        branch_consistency(&commanded.inner, &actual.inner, &anchor, poses, seed).map_err(err)?;
    serde_json::to_string_pretty(&report).map_err(json_err)
}

/// Plate-probing validation over the standard grid and plate, as a JSON
/// report of grid coverage and plane-fit residual statistics.
#[pyfunction]
fn plate_probe_report(commanded: &PyRobotModel, actual: &PyRobotModel) -> PyResult<String> {
    let plate = PlateSpec::default();
    let grid = simulate_probe_grid(&commanded.inner, &actual.inner, &plate).map_err(err)?;
    let fit = fit_plane(&grid.points_mm).map_err(err)?;
    serde_json::to_string_pretty(&PlaneReport::new(&grid, &fit)).map_err(json_err)
}

#[pymodule]
fn wirecal_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRobotModel>()?;
    m.add_class::<PyErrorModel>()?;
    m.add_class::<PyCalibrationPlan>()?;
    m.add_class::<PyCampaignLog>()?;
    m.add_function(wrap_pyfunction!(sensitivity_row, m)?)?;
    m.add_function(wrap_pyfunction!(predicted_distance, m)?)?;
    m.add_function(wrap_pyfunction!(determine_order, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_campaign, m)?)?;
    m.add_function(wrap_pyfunction!(calibrate, m)?)?;
    m.add_function(wrap_pyfunction!(solve_ik, m)?)?;
    m.add_function(wrap_pyfunction!(branch_consistency_report, m)?)?;
    m.add_function(wrap_pyfunction!(plate_probe_report, m)?)?;
    Ok(())
}
