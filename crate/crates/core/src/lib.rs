//! Simulation workbench for step-by-step kinematic calibration of serial
//! robots using a single draw-wire encoder.
//!
//! The crate models a serial arm with modified DH rows, computes the
//! sensitivity of the wire-length reading to small kinematic errors, designs
//! measurement configurations that isolate one error parameter at a time,
//! simulates a measurement campaign on a quantized noisy encoder, identifies
//! the injected errors sequentially with a bounded scalar minimizer, and
//! scores the result with two independent validation procedures.
//!
//! Public interfaces take degrees and millimetres; radians never cross an
//! API boundary.

pub mod design;
pub mod encoder;
pub mod error;
pub mod identify;
pub mod ik;
pub mod io;
pub mod minimize;
pub mod model;
pub mod params;
pub mod robots;
pub mod sensitivity;
pub mod validate;

pub use design::{
    design_plan, determine_order, find_calibration_set, validate_plan, CalibrationPlan,
    CalibrationSet, IdentificationOrder, PlanCheck, SearchOptions,
};
pub use encoder::{run_campaign, simulate_measurement, CampaignLog, EncoderSpec, StepLog};
pub use error::CalError;
pub use identify::{identify_parameter, run_calibration, IdentifyOptions, Report, StepResult};
pub use ik::{BranchFlags, Elbow, IkSolution, Shoulder, SphericalWristIk, Wrist};
pub use io::{
    atomic_write, load_error_model, load_model, load_plan, read_campaign_csv, save_error_model,
    save_json, save_model, save_plan, write_campaign_csv,
};
pub use minimize::minimize_scalar;
pub use model::{DhRow, JointConfig, RobotModel};
pub use params::{ErrorModel, ErrorParam, ErrorVector, ParamKind};
pub use robots::{
    planar_error_model, planar_two_link, viper_benchmark_offsets, viper_error_model, viper_plan,
    viper_s650, viper_search_options, VIPER_ANCHOR_DEG,
};
pub use sensitivity::{
    position_partials, predicted_distance, sensitivity_row, wire_geometry, WireGeometry,
};
pub use validate::{
    branch_consistency, fit_plane, simulate_probe_grid, BranchReport, PlaneFit, PlaneReport,
    PlateSpec, ProbeGrid,
};
