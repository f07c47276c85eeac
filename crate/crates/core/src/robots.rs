//! Built-in robot definitions and their calibration artifacts.

use crate::design::{CalibrationPlan, CalibrationSet, IdentificationOrder};
use crate::model::{DhRow, RobotModel};
use crate::params::{ErrorModel, ErrorParam, ParamKind};
use crate::sensitivity::sensitivity_row;

/// Anchor posture for the Viper workbench: the wire stays attached while the
/// arm returns here between measurement sets, so the encoder can be re-zeroed.
pub const VIPER_ANCHOR_DEG: [f64; 6] = [0.0, -90.0, 210.0, -90.0, 0.0, -90.0];

/// Adept Viper s650 with the draw-wire attachment point on the tool flange.
pub fn viper_s650() -> RobotModel {
    let row = |alpha_deg: f64, a_mm: f64, d_mm: f64| DhRow {
        alpha_deg,
        a_mm,
        theta_offset_deg: 0.0,
        d_mm,
    };
    RobotModel {
        name: "Adept Viper s650".into(),
        rows: vec![
            row(0.0, 0.0, 0.0),
            row(-90.0, 75.0, 0.0),
            row(0.0, 270.0, 0.0),
            row(90.0, -90.0, 295.0),
            row(-90.0, 0.0, 0.0),
            row(90.0, 0.0, 80.0),
        ],
        joint_limits_deg: vec![
            [-170.0, 170.0],
            [-190.0, 45.0],
            [-29.0, 256.0],
            [-190.0, 190.0],
            [-120.0, 120.0],
            [-360.0, 360.0],
        ],
        tool_mm: [-60.0, 0.0, 50.0],
        // Row 3 carries the zero twist that keeps joints 2 and 3 parallel; a
        // twist offset there would both break the closed-form elbow and be
        // indistinguishable from joint offsets over short lever arms.
        continuity_protected_rows: vec![3],
    }
}

/// The ten error parameters identified for the Viper, each searched over
/// +/- 1.5 of its unit. The base joint offset is excluded: rotating the whole
/// arm about the base axis moves the tool point on a sphere around the anchor
/// direction only in ways a single wire length cannot see at first order when
/// the anchor sits on that axis' sphere of symmetry, and in practice it is
/// absorbed by workcell placement.
pub fn viper_error_model() -> ErrorModel {
    let p = |kind, joint| ErrorParam::new(kind, joint, 1.5);
    ErrorModel::new(vec![
        p(ParamKind::JointOffset, 2),
        p(ParamKind::JointOffset, 3),
        p(ParamKind::JointOffset, 4),
        p(ParamKind::JointOffset, 5),
        p(ParamKind::JointOffset, 6),
        p(ParamKind::LinkLength, 1),
        p(ParamKind::LinkLength, 2),
        p(ParamKind::LinkLength, 3),
        p(ParamKind::LinkOffset, 4),
        p(ParamKind::LinkOffset, 6),
    ])
}

/// A benchmark set of injected offsets used by tests and the `table4` truth
/// preset, in the order of [`viper_error_model`]. Degrees for joint offsets,
/// millimetres for lengths.
pub fn viper_benchmark_offsets() -> Vec<f64> {
    vec![
        0.675, -0.485, 0.245, -0.575, -1.215, // dtheta2..dtheta6
        -0.005, 0.105, 0.025, // da1..da3
        -0.105, 0.115, // dd4, dd6
    ]
}

include!("viper_plan_points.rs");

/// The shipped measurement plan for the Viper: ten single-parameter sets, 69
/// points total, with sensitivity rows computed from the nominal model.
pub fn viper_plan() -> CalibrationPlan {
    let model = viper_s650();
    let em = viper_error_model();
    let order_names: Vec<String> = VIPER_PLAN_POINTS
        .iter()
        .map(|(name, _)| name.to_string())
        .collect();
    let order = IdentificationOrder::from_names(&em, &order_names)
        .expect("built-in order matches built-in error model");
    let anchor = VIPER_ANCHOR_DEG.to_vec();
    let sets = VIPER_PLAN_POINTS
        .iter()
        .enumerate()
        .map(|(i, (name, points))| {
            let points: Vec<Vec<f64>> = points.iter().map(|p| p.to_vec()).collect();
            let psi = points
                .iter()
                .map(|p| {
                    let row = sensitivity_row(&model, p, &anchor, &em)
                        .expect("built-in plan points are wire-feasible");
                    order.permute(&row.values)
                })
                .collect();
            CalibrationSet {
                step: i + 1,
                param: name.to_string(),
                points_deg: points,
                psi,
                sub_quality: false,
            }
        })
        .collect();
    CalibrationPlan {
        anchor_deg: anchor,
        order: order_names,
        sets,
    }
}

/// Search options tuned for the Viper plan: steps 4 and 5 identify the two
/// row-4 length errors, whose sets cannot push the couplings of the other
/// row-4 parameters below the default threshold, so those steps accept
/// residual couplings up to 0.4.
pub fn viper_search_options() -> crate::design::SearchOptions {
    let mut opts = crate::design::SearchOptions::default();
    opts.eps_null_per_step.insert(4, 0.4);
    opts.eps_null_per_step.insert(5, 0.4);
    opts
}

/// A planar two-link arm (both axes vertical, links `l1` then `l2`): the
/// smallest model that exercises every interface. The second link is the
/// tool offset, so the tip is `tool_point`.
pub fn planar_two_link(l1_mm: f64, l2_mm: f64) -> RobotModel {
    let row = |a_mm: f64| DhRow {
        alpha_deg: 0.0,
        a_mm,
        theta_offset_deg: 0.0,
        d_mm: 0.0,
    };
    RobotModel {
        name: "planar-2r".into(),
        rows: vec![row(0.0), row(l1_mm)],
        joint_limits_deg: vec![[-180.0, 180.0], [-180.0, 180.0]],
        tool_mm: [l2_mm, 0.0, 0.0],
        continuity_protected_rows: vec![],
    }
}

/// Joint-offset error model for the planar arm.
pub fn planar_error_model() -> ErrorModel {
    ErrorModel::new(vec![
        ErrorParam::new(ParamKind::JointOffset, 1, 1.5),
        ErrorParam::new(ParamKind::JointOffset, 2, 1.5),
    ])
}
