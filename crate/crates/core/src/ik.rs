//! Closed-form inverse kinematics for six-joint arms with the Viper
//! structure: two offset links in a vertical arm plane and a spherical
//! wrist. All eight solution branches are reachable through explicit flags,
//! which the validation procedures use to command the same pose in several
//! self-consistent ways.

use nalgebra::{Matrix3, Vector3};

use crate::error::CalError;
use crate::model::RobotModel;

/// Which side of the base axis the arm plane faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shoulder {
    Front,
    Back,
}

/// Sign of the interior elbow angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elbow {
    Up,
    Down,
}

/// Wrist flip branch: the spherical wrist reaches every orientation twice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Wrist {
    NoFlip,
    Flip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BranchFlags {
    pub shoulder: Shoulder,
    pub elbow: Elbow,
    pub wrist: Wrist,
}

impl BranchFlags {
    pub const fn new(shoulder: Shoulder, elbow: Elbow, wrist: Wrist) -> Self {
        BranchFlags {
            shoulder,
            elbow,
            wrist,
        }
    }

    /// All eight branches, front shoulder first.
    pub fn all() -> [BranchFlags; 8] {
        let mut out = [BranchFlags::new(Shoulder::Front, Elbow::Up, Wrist::NoFlip); 8];
        let mut i = 0;
        for shoulder in [Shoulder::Front, Shoulder::Back] {
            for elbow in [Elbow::Up, Elbow::Down] {
                for wrist in [Wrist::NoFlip, Wrist::Flip] {
                    out[i] = BranchFlags::new(shoulder, elbow, wrist);
                    i += 1;
                }
            }
        }
        out
    }

    /// The four elbow/wrist combinations with a fixed shoulder: the branches
    /// a physical cell can usually reach without re-cabling the workspace.
    pub fn elbow_wrist_square(shoulder: Shoulder) -> [BranchFlags; 4] {
        [
            BranchFlags::new(shoulder, Elbow::Up, Wrist::NoFlip),
            BranchFlags::new(shoulder, Elbow::Up, Wrist::Flip),
            BranchFlags::new(shoulder, Elbow::Down, Wrist::NoFlip),
            BranchFlags::new(shoulder, Elbow::Down, Wrist::Flip),
        ]
    }
}

/// One inverse-kinematics solution.
#[derive(Debug, Clone)]
pub struct IkSolution {
    /// Joint values in degrees, wrapped to (-180, 180].
    pub joints_deg: Vec<f64>,
    /// The wrist passed through its singularity; joint 4 was pinned to zero.
    pub wrist_singular: bool,
}

/// Closed-form solver bound to one model. Construction checks the model has
/// the required structure; the solve itself is then pure arithmetic.
#[derive(Debug, Clone)]
pub struct SphericalWristIk {
    a1: f64,
    a2: f64,
    a3: f64,
    d1: f64,
    d4: f64,
    d6: f64,
    offsets_deg: [f64; 6],
    tool: Vector3<f64>,
}

const ALPHA_PATTERN: [f64; 6] = [0.0, -90.0, 0.0, 90.0, -90.0, 90.0];

fn wrap_rad(t: f64) -> f64 {
    use std::f64::consts::PI;
    (t + PI).rem_euclid(2.0 * PI) - PI
}

/// Wrap degrees into (-180, 180].
pub fn wrap_deg(t: f64) -> f64 {
    let w = (t + 180.0).rem_euclid(360.0) - 180.0;
    if w == -180.0 {
        180.0
    } else {
        w
    }
}

fn rot_x(a: f64) -> Matrix3<f64> {
    let (s, c) = a.sin_cos();
    Matrix3::new(1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c)
}

fn rot_z(a: f64) -> Matrix3<f64> {
    let (s, c) = a.sin_cos();
    Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0)
}

impl SphericalWristIk {
    /// Bind to `model`, verifying the structural pattern the closed form
    /// needs: six joints, twists (0, -90, 0, 90, -90, 90), no link length on
    /// rows 1, 5, 6, no axis offset on rows 2, 3, 5.
    pub fn new(model: &RobotModel) -> Result<Self, CalError> {
        model.validate()?;
        if model.joint_count() != 6 {
            return Err(CalError::InvalidModel(format!(
                "closed-form solver needs 6 joints, model has {}",
                model.joint_count()
            )));
        }
        for (i, (row, want)) in model.rows.iter().zip(ALPHA_PATTERN).enumerate() {
            if (row.alpha_deg - want).abs() > 1e-9 {
                return Err(CalError::InvalidModel(format!(
                    "row {} twist is {}, solver needs {want}",
                    i + 1,
                    row.alpha_deg
                )));
            }
        }
        let zero_cells = [
            (model.rows[0].a_mm, "row 1 link length"),
            (model.rows[4].a_mm, "row 5 link length"),
            (model.rows[5].a_mm, "row 6 link length"),
            (model.rows[1].d_mm, "row 2 axis offset"),
            (model.rows[2].d_mm, "row 3 axis offset"),
            (model.rows[4].d_mm, "row 5 axis offset"),
        ];
        for (v, what) in zero_cells {
            if v.abs() > 1e-9 {
                return Err(CalError::InvalidModel(format!(
                    "{what} must be zero for the closed form, found {v}"
                )));
            }
        }
        let mut offsets_deg = [0.0; 6];
        for (o, row) in offsets_deg.iter_mut().zip(&model.rows) {
            *o = row.theta_offset_deg;
        }
        Ok(SphericalWristIk {
            a1: model.rows[1].a_mm,
            a2: model.rows[2].a_mm,
            a3: model.rows[3].a_mm,
            d1: model.rows[0].d_mm,
            d4: model.rows[3].d_mm,
            d6: model.rows[5].d_mm,
            offsets_deg,
            tool: Vector3::from(model.tool_mm),
        })
    }

    /// Joint values reaching the given tool pose on the requested branch, or
    /// None when the wrist center falls outside the arm's annulus.
    pub fn solve(
        &self,
        rotation: &Matrix3<f64>,
        tool_point: &Vector3<f64>,
        flags: BranchFlags,
    ) -> Option<IkSolution> {
        // The last three axes meet where the flange axis pierces the wrist.
        let w = tool_point - rotation * (self.tool + Vector3::new(0.0, 0.0, self.d6));

        let base = w.y.atan2(w.x);
        let t1 = match flags.shoulder {
            Shoulder::Front => base,
            Shoulder::Back => wrap_rad(base + std::f64::consts::PI),
        };
        // Signed radius in the arm plane; negative when the shoulder faces away.
        let rho = t1.cos() * w.x + t1.sin() * w.y;
        let u = rho - self.a1;
        let v = -(w.z - self.d1);

        let l1 = self.a2;
        let l2 = self.a3.hypot(self.d4);
        let psi = (-self.d4).atan2(self.a3);
        let c = (u * u + v * v - l1 * l1 - l2 * l2) / (2.0 * l1 * l2);
        if c.abs() > 1.0 + 1e-12 {
            return None;
        }
        let g = match flags.elbow {
            Elbow::Up => c.clamp(-1.0, 1.0).acos(),
            Elbow::Down => -c.clamp(-1.0, 1.0).acos(),
        };
        let t3 = g - psi;
        let t2 = v.atan2(u) - (l2 * g.sin()).atan2(l1 + l2 * g.cos());

        // Remaining rotation for the wrist: B = Rz(t4) * Ry(t5)-like product
        // in the frame after row 4's twist.
        let mut arm_rot = Matrix3::identity();
        for (i, t) in [t1, t2, t3].iter().enumerate() {
            arm_rot = arm_rot * rot_x(ALPHA_PATTERN[i].to_radians()) * rot_z(*t);
        }
        let b = rot_x(ALPHA_PATTERN[3].to_radians()).transpose() * arm_rot.transpose() * rotation;

        let s5 = b[(0, 2)].hypot(b[(1, 2)]);
        let (t4, t5, t6, singular) = if s5 < 1e-10 {
            let t5 = if b[(2, 2)] > 0.0 {
                0.0
            } else {
                std::f64::consts::PI
            };
            let t6 = if b[(2, 2)] > 0.0 {
                b[(1, 0)].atan2(b[(0, 0)])
            } else {
                (-b[(1, 0)]).atan2(b[(0, 0)])
            };
            (0.0, t5, t6, true)
        } else {
            let t5 = s5.atan2(b[(2, 2)]);
            let t4 = b[(1, 2)].atan2(b[(0, 2)]);
            let t6 = b[(2, 1)].atan2(-b[(2, 0)]);
            match flags.wrist {
                Wrist::NoFlip => (t4, t5, t6, false),
                Wrist::Flip => (
                    wrap_rad(t4 + std::f64::consts::PI),
                    -t5,
                    wrap_rad(t6 + std::f64::consts::PI),
                    false,
                ),
            }
        };

        let totals = [t1, t2, t3, t4, t5, t6];
        let joints_deg = totals
            .iter()
            .zip(&self.offsets_deg)
            .map(|(t, off)| wrap_deg(t.to_degrees() - off))
            .collect();
        Some(IkSolution {
            joints_deg,
            wrist_singular: singular,
        })
    }
}
