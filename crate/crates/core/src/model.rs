use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::CalError;

/// One row of a modified Denavit-Hartenberg table.
///
/// The row transform is `RotX(alpha) * TransX(a) * RotZ(theta + offset) * TransZ(d)`,
/// so `alpha` and `a` describe the link *preceding* the joint of this row.
/// Angles in degrees, lengths in millimetres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DhRow {
    pub alpha_deg: f64,
    pub a_mm: f64,
    pub theta_offset_deg: f64,
    pub d_mm: f64,
}

/// Joint values in degrees, one entry per DH row.
pub type JointConfig = Vec<f64>;

/// A serial robot: DH rows, joint limits, and a fixed tool point expressed in
/// the last joint frame (where the wire of a draw-wire encoder attaches, or a
/// probe tip is mounted).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobotModel {
    pub name: String,
    pub rows: Vec<DhRow>,
    pub joint_limits_deg: Vec<[f64; 2]>,
    /// Tool point in the flange frame; defaults to the flange origin.
    #[serde(default)]
    pub tool_mm: [f64; 3],
    /// 1-based DH row indices whose twist angle keeps a parallel-axis pair
    /// exact and must never receive a twist offset.
    #[serde(default)]
    pub continuity_protected_rows: Vec<usize>,
}

/// Per-joint frame data produced by a forward-kinematics sweep. Everything a
/// first-order sensitivity computation needs, in one pass.
#[derive(Debug, Clone)]
pub struct Frames {
    /// A point on each joint axis (after the preceding link translation).
    pub axis_point: Vec<Vector3<f64>>,
    /// Each joint axis direction (unit z of the frame the joint spins in).
    pub axis_dir: Vec<Vector3<f64>>,
    /// Origin of the frame after each complete row.
    pub origin: Vec<Vector3<f64>>,
    /// Orientation after each complete row.
    pub rotation: Vec<Matrix3<f64>>,
    /// The tool point in base coordinates.
    pub tool_point: Vector3<f64>,
}

fn rot_x(angle_rad: f64) -> Matrix3<f64> {
    let (s, c) = angle_rad.sin_cos();
    Matrix3::new(1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c)
}

fn rot_z(angle_rad: f64) -> Matrix3<f64> {
    let (s, c) = angle_rad.sin_cos();
    Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0)
}

impl RobotModel {
    /// Number of joints.
    pub fn joint_count(&self) -> usize {
        self.rows.len()
    }

    /// Structural sanity: at least one row, matching limit count, finite
    /// numbers, ordered limits, protected rows in range.
    pub fn validate(&self) -> Result<(), CalError> {
        if self.rows.is_empty() {
            return Err(CalError::InvalidModel("no DH rows".into()));
        }
        if self.joint_limits_deg.len() != self.rows.len() {
            return Err(CalError::InvalidModel(format!(
                "{} DH rows but {} joint limit pairs",
                self.rows.len(),
                self.joint_limits_deg.len()
            )));
        }
        for (i, row) in self.rows.iter().enumerate() {
            let vals = [row.alpha_deg, row.a_mm, row.theta_offset_deg, row.d_mm];
            if vals.iter().any(|v| !v.is_finite()) {
                return Err(CalError::InvalidModel(format!(
                    "non-finite entry in DH row {}",
                    i + 1
                )));
            }
        }
        for (i, lim) in self.joint_limits_deg.iter().enumerate() {
            if !lim[0].is_finite() || !lim[1].is_finite() || lim[0] > lim[1] {
                return Err(CalError::InvalidModel(format!(
                    "bad limits for joint {}: [{}, {}]",
                    i + 1,
                    lim[0],
                    lim[1]
                )));
            }
        }
        if !self.tool_mm.iter().all(|v| v.is_finite()) {
            return Err(CalError::InvalidModel("non-finite tool point".into()));
        }
        for &row in &self.continuity_protected_rows {
            if row == 0 || row > self.rows.len() {
                return Err(CalError::InvalidModel(format!(
                    "protected row {} out of range",
                    row
                )));
            }
        }
        Ok(())
    }

    /// Whether a configuration respects the joint limits.
    pub fn within_limits(&self, joints_deg: &[f64]) -> bool {
        joints_deg.len() == self.rows.len()
            && joints_deg
                .iter()
                .zip(&self.joint_limits_deg)
                .all(|(q, lim)| *q >= lim[0] && *q <= lim[1])
    }

    /// Forward kinematics with all intermediate frames retained.
    ///
    /// Panics if `joints_deg` does not have one value per row.
    pub fn frames(&self, joints_deg: &[f64]) -> Frames {
        assert_eq!(
            joints_deg.len(),
            self.rows.len(),
            "joint configuration length must match DH row count"
        );
        let n = self.rows.len();
        let mut axis_point = Vec::with_capacity(n);
        let mut axis_dir = Vec::with_capacity(n);
        let mut origin = Vec::with_capacity(n);
        let mut rotation = Vec::with_capacity(n);

        let mut rot = Matrix3::identity();
        let mut pos = Vector3::zeros();
        for (row, &q) in self.rows.iter().zip(joints_deg) {
            let r_link = rot * rot_x(row.alpha_deg.to_radians());
            let o = pos + r_link * Vector3::new(row.a_mm, 0.0, 0.0);
            let z = r_link * Vector3::z();
            let r_joint = r_link * rot_z((q + row.theta_offset_deg).to_radians());
            pos = o + r_joint * Vector3::new(0.0, 0.0, row.d_mm);
            rot = r_joint;
            axis_point.push(o);
            axis_dir.push(z);
            origin.push(pos);
            rotation.push(rot);
        }
        let tool_point = pos + rot * Vector3::from(self.tool_mm);
        Frames {
            axis_point,
            axis_dir,
            origin,
            rotation,
            tool_point,
        }
    }

    /// Pose of the tool frame: tool point and flange orientation.
    pub fn tool_pose(&self, joints_deg: &[f64]) -> (Vector3<f64>, Matrix3<f64>) {
        let f = self.frames(joints_deg);
        (f.tool_point, *f.rotation.last().unwrap())
    }

    /// Base-frame coordinates of the tool point.
    pub fn tool_point(&self, joints_deg: &[f64]) -> Vector3<f64> {
        self.frames(joints_deg).tool_point
    }
}
