//! First-order sensitivity of the wire-length reading to kinematic errors.
//!
//! The draw-wire encoder sits where the tool point rests in the anchor
//! posture; a measurement at configuration `theta_i` reads the straight-line
//! distance between the tool point there and the tool point at the anchor.
//! The sensitivity of that distance to an error parameter is the projection
//! of the differenced position partials onto the wire direction.

use nalgebra::Vector3;

use crate::error::CalError;
use crate::model::{Frames, RobotModel};
use crate::params::{ErrorModel, ParamKind};

/// Wire lengths at or below this are degenerate: the direction of the wire,
/// and with it every projection, is numerically meaningless.
pub const EPS_WIRE_MM: f64 = 1.0;

const DEG: f64 = std::f64::consts::PI / 180.0;

/// The wire seen as a vector from the anchor-posture tool point to the tool
/// point at the measured configuration.
#[derive(Debug, Clone, Copy)]
pub struct WireGeometry {
    pub vector: Vector3<f64>,
    pub unit: Vector3<f64>,
    pub length_mm: f64,
}

/// Wire vector between two configurations of `model`. Fails when the tool
/// point has not moved far enough from the anchor to define a direction.
pub fn wire_geometry(
    model: &RobotModel,
    point_deg: &[f64],
    anchor_deg: &[f64],
) -> Result<WireGeometry, CalError> {
    let vector = model.tool_point(point_deg) - model.tool_point(anchor_deg);
    let length_mm = vector.norm();
    if length_mm <= EPS_WIRE_MM {
        return Err(CalError::DegenerateWire { length: length_mm });
    }
    Ok(WireGeometry {
        vector,
        unit: vector / length_mm,
        length_mm,
    })
}

pub(crate) fn partial_columns_cached(
    frames: &Frames,
    errors: &ErrorModel,
) -> Vec<Vector3<f64>> {
    let pt = frames.tool_point;
    errors
        .params
        .iter()
        .map(|p| {
            let j = p.joint;
            match p.kind {
                // Rotating joint j sweeps the tool point around the joint
                // axis; degrees scale the radian partial.
                ParamKind::JointOffset => {
                    frames.axis_dir[j - 1].cross(&(pt - frames.axis_point[j - 1])) * DEG
                }
                // Sliding along the joint axis moves everything distal with it.
                ParamKind::LinkOffset => frames.axis_dir[j - 1],
                // Link a_j stretches along the x axis of the frame after row j.
                ParamKind::LinkLength => frames.rotation[j - 1].column(0).into(),
                // Twist alpha_j rotates the distal chain about that same x
                // axis through the origin of frame j.
                ParamKind::Twist => {
                    let x_axis: Vector3<f64> = frames.rotation[j - 1].column(0).into();
                    x_axis.cross(&(pt - frames.origin[j - 1])) * DEG
                }
            }
        })
        .collect()
}

/// Partial derivatives of the tool-point position with respect to each error
/// parameter, evaluated at `joints_deg`. Columns are millimetres per degree
/// for angular parameters and millimetres per millimetre for lengths.
pub fn position_partials(
    model: &RobotModel,
    joints_deg: &[f64],
    errors: &ErrorModel,
) -> Vec<Vector3<f64>> {
    partial_columns_cached(&model.frames(joints_deg), errors)
}

/// One row of the sensitivity table: the derivative of the wire reading at
/// `point_deg` with respect to each error parameter, in the order of
/// `errors`.
#[derive(Debug, Clone)]
pub struct SensitivityRow {
    pub values: Vec<f64>,
    pub wire_length_mm: f64,
}

pub fn sensitivity_row(
    model: &RobotModel,
    point_deg: &[f64],
    anchor_deg: &[f64],
    errors: &ErrorModel,
) -> Result<SensitivityRow, CalError> {
    let frames_point = model.frames(point_deg);
    let frames_anchor = model.frames(anchor_deg);
    let vector = frames_point.tool_point - frames_anchor.tool_point;
    let length_mm = vector.norm();
    if length_mm <= EPS_WIRE_MM {
        return Err(CalError::DegenerateWire { length: length_mm });
    }
    let unit = vector / length_mm;
    let cols_point = partial_columns_cached(&frames_point, errors);
    let cols_anchor = partial_columns_cached(&frames_anchor, errors);
    let values = cols_point
        .iter()
        .zip(&cols_anchor)
        .map(|(ci, c0)| (ci - c0).dot(&unit))
        .collect();
    Ok(SensitivityRow {
        values,
        wire_length_mm: length_mm,
    })
}

/// Wire reading predicted by `model` with the offsets in `values` applied:
/// the distance between the tool point at `point_deg` and the tool point at
/// `anchor_deg`, both under the perturbed model.
pub fn predicted_distance(
    model: &RobotModel,
    point_deg: &[f64],
    anchor_deg: &[f64],
    errors: &ErrorModel,
    values: &[f64],
) -> Result<f64, CalError> {
    let perturbed = errors.apply(model, values)?;
    let v = perturbed.tool_point(point_deg) - perturbed.tool_point(anchor_deg);
    Ok(v.norm())
}
